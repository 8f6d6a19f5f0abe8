//! Equalizing strategies: strategies that make the opponent's payoff the
//! same against every one of its pure strategies, found by solving
//! `sum_i z_i a_ij = eta (all j), sum_i z_i = 1` and its column analogue.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{ComplexGame, Side};
use crate::numerics::{
    c, conj_vec, solve_complex_linear, Complex, ComplexMatrix, LinearSolution, Tolerances,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EqualizingSolution {
    pub side: Side,
    /// Solution of the linear system itself (before conjugation).
    pub system_solution: Vec<Complex>,
    /// Strategy to play in the game; for the row player this is the
    /// coordinatewise conjugate of the system solution.
    pub strategy: Vec<Complex>,
    /// `eta` (row side) or `theta` (column side).
    pub constant: Complex,
    /// Whether the strategy satisfies the argument bound of its player.
    pub feasible: bool,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum EqualizingOutcome {
    Solved(EqualizingSolution),
    /// The system has no solution, so no equalizing strategy exists on this side.
    Inconsistent {
        rank: usize,
        residual: f64,
    },
}

impl EqualizingOutcome {
    pub fn solution(&self) -> Option<&EqualizingSolution> {
        match self {
            EqualizingOutcome::Solved(s) => Some(s),
            EqualizingOutcome::Inconsistent { .. } => None,
        }
    }
}

/// Unknowns `(z_1..z_m, eta)` for the row side, `(w_1..w_n, theta)` for the
/// column side; one equalization row per opponent pure strategy and one
/// normalization row.
pub fn equalizing_system(g: &ComplexGame, side: Side) -> (ComplexMatrix, Vec<Complex>) {
    let a = g.matrix();
    let (k, eqs) = match side {
        Side::Row => (g.rows(), g.cols()),
        Side::Column => (g.cols(), g.rows()),
    };
    let coef = |r: usize, u: usize| -> Complex {
        if r == eqs {
            return if u < k { c(1.0, 0.0) } else { c(0.0, 0.0) };
        }
        if u == k {
            return c(-1.0, 0.0);
        }
        match side {
            Side::Row => a.get(u, r),
            Side::Column => a.get(r, u),
        }
    };
    let b = ComplexMatrix::from_fn(eqs + 1, k + 1, coef).expect("nonempty system");
    let mut rhs = vec![c(0.0, 0.0); eqs + 1];
    rhs[eqs] = c(1.0, 0.0);
    (b, rhs)
}

pub fn solve_equalizing_system(g: &ComplexGame, side: Side, tol: &Tolerances) -> Result<EqualizingOutcome> {
    let (b, rhs) = equalizing_system(g, side);
    match solve_complex_linear(&b, &rhs, tol)? {
        LinearSolution::Inconsistent { rank, residual } => {
            Ok(EqualizingOutcome::Inconsistent { rank, residual })
        }
        LinearSolution::Solved { x, rank, .. } => {
            let k = x.len() - 1;
            let system_solution = x[..k].to_vec();
            let strategy = match side {
                Side::Row => conj_vec(&system_solution),
                Side::Column => system_solution.clone(),
            };
            let feasible = g.polytope(side).contains(&strategy, tol)?;
            Ok(EqualizingOutcome::Solved(EqualizingSolution {
                side,
                system_solution,
                strategy,
                constant: x[k],
                feasible,
                rank,
            }))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EqualizingEquilibrium {
    pub row: EqualizingSolution,
    pub column: EqualizingSolution,
    /// `Re(eta)`, which equals `Re(theta)`.
    pub value: f64,
}

impl EqualizingEquilibrium {
    pub fn z(&self) -> &[Complex] {
        &self.row.strategy
    }

    pub fn w(&self) -> &[Complex] {
        &self.column.strategy
    }
}

/// Both sides' equalizing strategies when both exist and both respect their
/// argument bounds.
pub fn equalizing_equilibrium(g: &ComplexGame, tol: &Tolerances) -> Result<Option<EqualizingEquilibrium>> {
    let row = solve_equalizing_system(g, Side::Row, tol)?;
    let col = solve_equalizing_system(g, Side::Column, tol)?;
    let (Some(row), Some(column)) = (row.solution(), col.solution()) else {
        return Ok(None);
    };
    if !(row.feasible && column.feasible) {
        return Ok(None);
    }
    let (eta, theta) = (row.constant.re, column.constant.re);
    if (eta - theta).abs() > tol.eps_val {
        return Err(Error::Inconsistent(format!(
            "equalizing constants disagree: Re(eta) = {eta}, Re(theta) = {theta}"
        )));
    }
    Ok(Some(EqualizingEquilibrium {
        row: row.clone(),
        column: column.clone(),
        value: eta,
    }))
}

/// Bracket around the smallest common argument at which the equalizing
/// systems are arg-feasible and no pure saddle exists.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmallestArgument {
    /// Lower endpoint of the final bracket; the reported argument.
    pub gamma: f64,
    /// Upper endpoint, a probed feasible argument.
    pub upper: f64,
    /// `true` when the bracket never left zero (infimum not attained).
    pub at_zero: bool,
}

fn sea_feasible(a: &ComplexMatrix, gamma: f64, tol: &Tolerances) -> Result<bool> {
    let g = ComplexGame::new(a.clone(), gamma, gamma)?;
    let sec = g.pure_security();
    if sec.h_low >= sec.h_high - tol.eps_val {
        return Ok(false);
    }
    for side in [Side::Row, Side::Column] {
        match solve_equalizing_system(&g, side, tol)? {
            EqualizingOutcome::Solved(s) if s.feasible => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Bisection for the smallest equalizing argument at resolution `delta`,
/// assuming feasibility is monotone in the argument. Returns `None` if the
/// systems are not feasible at `pi/2 - delta`.
pub fn smallest_equalizing_argument(
    a: &ComplexMatrix,
    delta: f64,
    tol: &Tolerances,
) -> Result<Option<SmallestArgument>> {
    if !(delta.is_finite() && delta > 0.0 && delta < FRAC_PI_2) {
        return Err(Error::InvalidParameter(format!(
            "resolution must lie in (0, pi/2), got {delta}"
        )));
    }
    let top = FRAC_PI_2 - delta;
    if !sea_feasible(a, top, tol)? {
        return Ok(None);
    }
    let (mut lo, mut hi) = (0.0, top);
    while hi - lo > delta {
        let mid = 0.5 * (lo + hi);
        if sea_feasible(a, mid, tol)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    const PROBES: usize = 8;
    for k in 1..=PROBES {
        let gamma = hi + (top - hi) * k as f64 / PROBES as f64;
        if !sea_feasible(a, gamma, tol)? {
            return Err(Error::NonMonotoneBracket {
                feasible_at: hi,
                infeasible_at: gamma,
            });
        }
    }
    Ok(Some(SmallestArgument {
        gamma: lo,
        upper: hi,
        at_zero: lo == 0.0,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn reduced() -> ComplexGame {
        let a = ComplexMatrix::from_rows(vec![
            vec![c(2.0, 0.0), c(1.0, 1.0)],
            vec![c(3.0, 1.0), c(3.0, 0.0)],
        ])
        .unwrap();
        ComplexGame::new(a, PI / 4.0, 5.0 * PI / 12.0).unwrap()
    }

    fn close(a: &[Complex], b: &[Complex], eps: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= eps)
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn row_side_of_reduced_example() {
        let out = solve_equalizing_system(&reduced(), Side::Row, &tol()).unwrap();
        let s = out.solution().unwrap();
        assert!(close(&s.system_solution, &[c(0.4, -0.2), c(0.6, 0.2)], 1e-12));
        assert!(close(&s.strategy, &[c(0.4, 0.2), c(0.6, -0.2)], 1e-12));
        assert!((s.constant - c(2.4, 0.8)).norm() < 1e-12);
        assert!(s.feasible);
    }

    #[test]
    fn column_side_of_reduced_example() {
        let out = solve_equalizing_system(&reduced(), Side::Column, &tol()).unwrap();
        let s = out.solution().unwrap();
        assert!(close(&s.strategy, &[c(0.8, 0.6), c(0.2, -0.6)], 1e-12));
        assert!((s.constant - c(2.4, 0.8)).norm() < 1e-12);
        assert!(s.feasible);
    }

    #[test]
    fn single_row_with_unequal_entries_is_inconsistent() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0]]).unwrap();
        let g = ComplexGame::new(a, 0.5, 0.5).unwrap();
        let out = solve_equalizing_system(&g, Side::Row, &tol()).unwrap();
        assert!(matches!(out, EqualizingOutcome::Inconsistent { .. }));
        assert_eq!(equalizing_equilibrium(&g, &tol()).unwrap(), None);
    }

    #[test]
    fn equilibrium_of_reduced_example() {
        let eq = equalizing_equilibrium(&reduced(), &tol()).unwrap().unwrap();
        assert!((eq.value - 2.4).abs() < 1e-12);
    }

    #[test]
    fn equilibrium_of_real_two_by_two() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[1.0, 0.0]]).unwrap();
        for (al, be) in [(0.2, 0.3), (PI / 4.0, PI / 3.0), (1.4, 0.1)] {
            let g = ComplexGame::new(a.clone(), al, be).unwrap();
            let eq = equalizing_equilibrium(&g, &tol()).unwrap().unwrap();
            assert!(close(eq.z(), &[c(1.0 / 3.0, 0.0), c(2.0 / 3.0, 0.0)], 1e-12));
            assert!(close(eq.w(), &[c(2.0 / 3.0, 0.0), c(1.0 / 3.0, 0.0)], 1e-12));
            assert!((eq.value - 2.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sea_never_feasible() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0]]).unwrap();
        assert_eq!(smallest_equalizing_argument(&a, 1e-3, &tol()).unwrap(), None);
        assert!(smallest_equalizing_argument(&a, 0.0, &tol()).is_err());
    }

    #[test]
    fn sea_real_solution_reaches_zero() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[1.0, 0.0]]).unwrap();
        let r = smallest_equalizing_argument(&a, 1e-4, &tol()).unwrap().unwrap();
        assert!(r.gamma <= 1e-4);
    }

    #[test]
    fn sea_matches_argument_of_equalizing_strategy() {
        // Oracle: the system solution does not depend on the argument, so the
        // threshold is the largest |arg| over both equalizing strategies.
        let a = ComplexMatrix::from_rows(vec![
            vec![c(2.0, 0.0), c(1.0, 1.0)],
            vec![c(3.0, 1.0), c(3.0, 0.0)],
        ])
        .unwrap();
        let g = ComplexGame::new(a.clone(), 1.0, 1.0).unwrap();
        let phi = [Side::Row, Side::Column]
            .iter()
            .flat_map(|&s| {
                solve_equalizing_system(&g, s, &tol())
                    .unwrap()
                    .solution()
                    .unwrap()
                    .strategy
                    .clone()
            })
            .map(|z| z.arg().abs())
            .fold(0.0, f64::max);
        let delta = 1e-6;
        let r = smallest_equalizing_argument(&a, delta, &tol()).unwrap().unwrap();
        assert!((r.gamma - phi).abs() <= delta + 1e-8, "{} vs {phi}", r.gamma);
    }
}
