//! Dominated pure strategies, iterated elimination and the imaginary-part
//! condition under which an elimination preserves equilibria.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{ComplexGame, Side};
use crate::lp::embed::{add_strategy_variables, conj_left_terms, plain_terms};
use crate::lp::simplex::{simplex_solve, LinearProgram, LpOutcome, Relation, Sense, VarBound};
use crate::numerics::{inner, Complex, Tolerances};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Dominator {
    Single {
        index: usize,
    },
    Pair {
        first: usize,
        second: usize,
        lambda: f64,
    },
    Mixed {
        strategy: Vec<Complex>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominationClaim {
    pub axis: Side,
    pub target: usize,
    pub dominator: Dominator,
    pub strict: bool,
}

/// Payoffs of every pure strategy on `axis` against each opponent extreme
/// point, in canonical order. Row `i`: `Re((e^i)* A d^j)`; column `k`:
/// `Re((d^i)* A e^k)`.
pub fn pure_payoff_vectors(g: &ComplexGame, axis: Side) -> Vec<Vec<f64>> {
    let a = g.matrix();
    match axis {
        Side::Row => {
            let images: Vec<Vec<Complex>> = g
                .polytope(Side::Column)
                .extreme_points()
                .into_iter()
                .map(|(_, d)| a.mul_vec(&d).expect("dimensions agree"))
                .collect();
            (0..g.rows())
                .map(|i| images.iter().map(|ad| ad[i].re).collect())
                .collect()
        }
        Side::Column => {
            let images: Vec<Vec<Complex>> = g
                .polytope(Side::Row)
                .extreme_points()
                .into_iter()
                .map(|(_, d)| a.left_mul_conj(&d).expect("dimensions agree"))
                .collect();
            (0..g.cols())
                .map(|k| images.iter().map(|da| da[k].re).collect())
                .collect()
        }
    }
}

/// Orientation: the row player prefers larger payoffs, the column player smaller.
fn orient(axis: Side) -> f64 {
    match axis {
        Side::Row => 1.0,
        Side::Column => -1.0,
    }
}

fn axis_len(g: &ComplexGame, axis: Side) -> usize {
    match axis {
        Side::Row => g.rows(),
        Side::Column => g.cols(),
    }
}

fn check_index(g: &ComplexGame, axis: Side, index: usize) -> Result<()> {
    let len = axis_len(g, axis);
    if index < len {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index, len })
    }
}

/// Verdict on an advantage vector (positive = dominator is better).
fn verdict(advantage: impl Iterator<Item = f64> + Clone, strict: bool, eps: f64) -> bool {
    if !advantage.clone().all(|a| a >= -eps) {
        return false;
    }
    if strict {
        advantage.clone().all(|a| a > eps)
    } else {
        advantage.clone().any(|a| a > eps)
    }
}

fn single_on(
    payoffs: &[Vec<f64>],
    axis: Side,
    target: usize,
    candidate: usize,
    strict: bool,
    eps: f64,
) -> bool {
    if target == candidate {
        return false;
    }
    let s = orient(axis);
    let adv = payoffs[candidate]
        .iter()
        .zip(&payoffs[target])
        .map(move |(c, t)| s * (c - t));
    verdict(adv, strict, eps)
}

/// Whether pure strategy `target` is dominated by pure strategy `candidate`
/// (weakly unless `strict`), compared over all opponent extreme points.
pub fn dominates_single(
    g: &ComplexGame,
    axis: Side,
    target: usize,
    candidate: usize,
    strict: bool,
    tol: &Tolerances,
) -> Result<bool> {
    check_index(g, axis, target)?;
    check_index(g, axis, candidate)?;
    let payoffs = pure_payoff_vectors(g, axis);
    Ok(single_on(&payoffs, axis, target, candidate, strict, tol.eps_val))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairDomination {
    pub first: usize,
    pub second: usize,
    pub lambda: f64,
    /// Admissible interval of `lambda` (intersected with `[0, 1]`).
    pub interval: (f64, f64),
    pub strict: bool,
}

fn pair_on(payoffs: &[Vec<f64>], axis: Side, target: usize, eps: f64) -> Option<PairDomination> {
    let k = payoffs.len();
    let s = orient(axis);
    for first in 0..k {
        for second in first + 1..k {
            if first == target || second == target {
                continue;
            }
            // lambda * a1 + (1 - lambda) * a2 >= 0, i.e. lambda * (a1 - a2) >= -a2.
            let (mut lo, mut hi) = (0.0f64, 1.0f64);
            let mut feasible = true;
            let columns = payoffs[first].iter().zip(&payoffs[second]).zip(&payoffs[target]);
            for ((p1, p2), pt) in columns {
                let a1 = s * (p1 - pt);
                let a2 = s * (p2 - pt);
                let slope = a1 - a2;
                if slope > 0.0 {
                    lo = lo.max(-a2 / slope);
                } else if slope < 0.0 {
                    hi = hi.min(-a2 / slope);
                } else if a2 < -eps {
                    feasible = false;
                    break;
                }
            }
            if !feasible || lo > hi {
                continue;
            }
            let lambda = 0.5 * (lo + hi);
            if lambda <= 0.0 || lambda >= 1.0 {
                continue;
            }
            let adv = (0..payoffs[target].len()).map(|j| {
                s * (lambda * payoffs[first][j] + (1.0 - lambda) * payoffs[second][j] - payoffs[target][j])
            });
            if verdict(adv.clone(), false, eps) {
                return Some(PairDomination {
                    first,
                    second,
                    lambda,
                    interval: (lo, hi),
                    strict: verdict(adv, true, eps),
                });
            }
        }
    }
    None
}

/// First pair of other pure strategies whose convex mix dominates `target`.
/// Pairs are scanned in lexicographic order and `lambda` is the midpoint of
/// the admissible interval.
pub fn find_pair_domination(
    g: &ComplexGame,
    axis: Side,
    target: usize,
    tol: &Tolerances,
) -> Result<Option<PairDomination>> {
    check_index(g, axis, target)?;
    let payoffs = pure_payoff_vectors(g, axis);
    Ok(pair_on(&payoffs, axis, target, tol.eps_val))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixedDomination {
    pub strategy: Vec<Complex>,
    pub strict: bool,
    /// Optimal uniform slack.
    pub min_slack: f64,
    /// Optimal total slack of the weak-domination program.
    pub total_slack: f64,
}

/// Builds the slack program for a mixed dominator. `uniform` selects the
/// single free slack `s` (maximize the worst margin); otherwise one
/// nonnegative slack per opponent extreme point, maximizing their sum.
fn mixed_program(
    g: &ComplexGame,
    axis: Side,
    target: usize,
    uniform: bool,
) -> (LinearProgram, crate::lp::embed::EmbeddingLayout) {
    let a = g.matrix();
    let mut lp = LinearProgram::new(Sense::Maximize);
    let target_payoffs = &pure_payoff_vectors(g, axis)[target];
    let (layout, rows): (_, Vec<Vec<(usize, f64)>>) = match axis {
        Side::Row => {
            let layout = add_strategy_variables(&mut lp, "z", g.rows(), g.alpha());
            let rows = g
                .polytope(Side::Column)
                .extreme_points()
                .into_iter()
                .map(|(_, d)| conj_left_terms(&layout, &a.mul_vec(&d).expect("dims")))
                .collect();
            (layout, rows)
        }
        Side::Column => {
            let layout = add_strategy_variables(&mut lp, "w", g.cols(), g.beta());
            // Column player: -Re(d* A w) >= -Re(d* A e^target) + s.
            let rows = g
                .polytope(Side::Row)
                .extreme_points()
                .into_iter()
                .map(|(_, d)| {
                    plain_terms(&layout, &a.left_mul_conj(&d).expect("dims"))
                        .into_iter()
                        .map(|(v, coef)| (v, -coef))
                        .collect()
                })
                .collect();
            (layout, rows)
        }
    };
    let s = orient(axis);
    if uniform {
        let slack = lp.add_var("s", VarBound::Free, 1.0);
        for (mut terms, t) in rows.into_iter().zip(target_payoffs) {
            terms.push((slack, -1.0));
            lp.add_constraint(&terms, Relation::Ge, s * t);
        }
    } else {
        for (j, (mut terms, t)) in rows.into_iter().zip(target_payoffs).enumerate() {
            let slack = lp.add_var(format!("s{}", j + 1), VarBound::NonNegative, 1.0);
            terms.push((slack, -1.0));
            lp.add_constraint(&terms, Relation::Eq, s * t);
        }
    }
    (lp, layout)
}

fn run(lp: &LinearProgram, tol: &Tolerances) -> Result<crate::lp::LpSolution> {
    match simplex_solve(lp, tol)? {
        LpOutcome::Optimal(sol) => Ok(sol),
        LpOutcome::Infeasible => Err(Error::LpInfeasible("mixed domination program".into())),
        LpOutcome::Unbounded => Err(Error::LpUnbounded("mixed domination program".into())),
    }
}

/// Oriented margins of `strategy` over pure `target` at each opponent extreme point.
fn margins(g: &ComplexGame, axis: Side, target: usize, strategy: &[Complex]) -> Vec<f64> {
    let s = orient(axis);
    let t = &pure_payoff_vectors(g, axis)[target];
    let values: Vec<f64> = match axis {
        Side::Row => g
            .polytope(Side::Column)
            .extreme_points()
            .iter()
            .map(|(_, d)| g.payoff(strategy, d).expect("dims"))
            .collect(),
        Side::Column => g
            .polytope(Side::Row)
            .extreme_points()
            .iter()
            .map(|(_, d)| g.payoff(d, strategy).expect("dims"))
            .collect(),
    };
    values.iter().zip(t).map(|(v, t)| s * (v - t)).collect()
}

/// Searches for a mixed strategy of the same player dominating `target`.
pub fn find_mixed_domination(
    g: &ComplexGame,
    axis: Side,
    target: usize,
    tol: &Tolerances,
) -> Result<Option<MixedDomination>> {
    check_index(g, axis, target)?;
    let (lp, layout) = mixed_program(g, axis, target, true);
    let sol = run(&lp, tol)?;
    let min_slack = sol.value;
    if min_slack > tol.eps_val {
        let strategy = layout.strategy(&sol.x);
        let total_slack = margins(g, axis, target, &strategy).iter().sum();
        return Ok(Some(MixedDomination {
            strategy,
            strict: true,
            min_slack,
            total_slack,
        }));
    }
    if min_slack < -tol.eps_val {
        return Ok(None);
    }
    let (lp, layout) = mixed_program(g, axis, target, false);
    let sol = run(&lp, tol)?;
    if sol.value > tol.eps_val {
        Ok(Some(MixedDomination {
            strategy: layout.strategy(&sol.x),
            strict: false,
            min_slack,
            total_slack: sol.value,
        }))
    } else {
        Ok(None)
    }
}

/// Ordered record of eliminations with the surviving original indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EliminationTrace {
    pub claims: Vec<DominationClaim>,
    pub surviving_rows: Vec<usize>,
    pub surviving_cols: Vec<usize>,
    pub original_rows: usize,
    pub original_cols: usize,
}

impl EliminationTrace {
    pub fn identity(g: &ComplexGame) -> Self {
        Self {
            claims: Vec::new(),
            surviving_rows: (0..g.rows()).collect(),
            surviving_cols: (0..g.cols()).collect(),
            original_rows: g.rows(),
            original_cols: g.cols(),
        }
    }

    /// Replays the claims on `original` and returns the reduced game.
    pub fn reduce(&self, original: &ComplexGame) -> Result<ComplexGame> {
        if original.rows() != self.original_rows || original.cols() != self.original_cols {
            return Err(Error::DimensionMismatch {
                expected: self.original_rows * self.original_cols,
                found: original.rows() * original.cols(),
            });
        }
        let mut rows: Vec<usize> = (0..self.original_rows).collect();
        let mut cols: Vec<usize> = (0..self.original_cols).collect();
        for claim in &self.claims {
            let set = match claim.axis {
                Side::Row => &mut rows,
                Side::Column => &mut cols,
            };
            set.retain(|&k| k != claim.target);
        }
        let m = original.matrix().select(&rows, &cols)?;
        Ok(original.with_matrix(m))
    }

    fn pad(keep: &[usize], len: usize, v: &[Complex]) -> Result<Vec<Complex>> {
        if v.len() != keep.len() {
            return Err(Error::DimensionMismatch {
                expected: keep.len(),
                found: v.len(),
            });
        }
        let mut out = vec![Complex::new(0.0, 0.0); len];
        for (&k, &x) in keep.iter().zip(v) {
            out[k] = x;
        }
        Ok(out)
    }

    /// Lifts a reduced-game row strategy to the original dimension.
    pub fn pad_row(&self, z: &[Complex]) -> Result<Vec<Complex>> {
        Self::pad(&self.surviving_rows, self.original_rows, z)
    }

    pub fn pad_col(&self, w: &[Complex]) -> Result<Vec<Complex>> {
        Self::pad(&self.surviving_cols, self.original_cols, w)
    }
}

/// Repeatedly removes dominated pure strategies: rows by a single row, then
/// columns by a single column, then rows by a pair, then columns by a pair,
/// taking the lowest-index hit each pass. Never shrinks an axis below one.
pub fn iterated_eliminate(g: &ComplexGame, tol: &Tolerances) -> Result<(ComplexGame, EliminationTrace)> {
    let mut trace = EliminationTrace::identity(g);
    let eps = tol.eps_val;
    loop {
        let current = g.with_matrix(g.matrix().select(&trace.surviving_rows, &trace.surviving_cols)?);
        let found = find_elimination(&current, eps);
        let Some((axis, target, dominator, strict)) = found else {
            return Ok((current, trace));
        };
        let map = match axis {
            Side::Row => &trace.surviving_rows,
            Side::Column => &trace.surviving_cols,
        };
        let dominator = match dominator {
            Dominator::Single { index } => Dominator::Single { index: map[index] },
            Dominator::Pair {
                first,
                second,
                lambda,
            } => Dominator::Pair {
                first: map[first],
                second: map[second],
                lambda,
            },
            Dominator::Mixed { .. } => unreachable!("mixed dominations are not used for elimination"),
        };
        let original_target = map[target];
        trace.claims.push(DominationClaim {
            axis,
            target: original_target,
            dominator,
            strict,
        });
        match axis {
            Side::Row => trace.surviving_rows.remove(target),
            Side::Column => trace.surviving_cols.remove(target),
        };
    }
}

fn find_elimination(g: &ComplexGame, eps: f64) -> Option<(Side, usize, Dominator, bool)> {
    let rows = pure_payoff_vectors(g, Side::Row);
    let cols = pure_payoff_vectors(g, Side::Column);
    for (axis, payoffs) in [(Side::Row, &rows), (Side::Column, &cols)] {
        let k = payoffs.len();
        if k < 2 {
            continue;
        }
        for target in 0..k {
            for candidate in 0..k {
                if single_on(payoffs, axis, target, candidate, false, eps) {
                    let strict = single_on(payoffs, axis, target, candidate, true, eps);
                    return Some((axis, target, Dominator::Single { index: candidate }, strict));
                }
            }
        }
    }
    for (axis, payoffs) in [(Side::Row, &rows), (Side::Column, &cols)] {
        if payoffs.len() < 3 {
            continue;
        }
        for target in 0..payoffs.len() {
            if let Some(p) = pair_on(payoffs, axis, target, eps) {
                let dom = Dominator::Pair {
                    first: p.first,
                    second: p.second,
                    lambda: p.lambda,
                };
                return Some((axis, target, dom, p.strict));
            }
        }
    }
    None
}

/// Imaginary-part comparison for one claim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionVerdict {
    pub claim: usize,
    /// Imaginary part for the eliminated strategy.
    pub target_im: f64,
    /// Imaginary part for the dominator (lambda-mixed for pairs).
    pub dominator_im: f64,
    pub met: bool,
}

/// Evaluates the condition of elimination for every claim of `trace` at the
/// candidate `(z, w)`, given in original coordinates. Row claims compare
/// `Im((e^i)* A w)`, column claims `Im(z* A e^j)`.
pub fn check_elimination_condition(
    original: &ComplexGame,
    trace: &EliminationTrace,
    z: &[Complex],
    w: &[Complex],
    tol: &Tolerances,
) -> Result<Vec<ConditionVerdict>> {
    if original.rows() != trace.original_rows || original.cols() != trace.original_cols {
        return Err(Error::DimensionMismatch {
            expected: trace.original_rows * trace.original_cols,
            found: original.rows() * original.cols(),
        });
    }
    let aw = original.matrix().mul_vec(w)?;
    let za = original.matrix().left_mul_conj(z)?;
    let mut out = Vec::with_capacity(trace.claims.len());
    for (k, claim) in trace.claims.iter().enumerate() {
        let image = match claim.axis {
            Side::Row => &aw,
            Side::Column => &za,
        };
        let target_im = image[claim.target].im;
        let dominator_im = match &claim.dominator {
            Dominator::Single { index } => image[*index].im,
            Dominator::Pair {
                first,
                second,
                lambda,
            } => lambda * image[*first].im + (1.0 - lambda) * image[*second].im,
            Dominator::Mixed { strategy } => match claim.axis {
                Side::Row => inner(strategy, &aw).im,
                Side::Column => za.iter().zip(strategy).map(|(a, b)| a * b).sum::<Complex>().im,
            },
        };
        out.push(ConditionVerdict {
            claim: k,
            target_im,
            dominator_im,
            met: (target_im - dominator_im).abs() <= tol.eps_val,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{c, ComplexMatrix};
    use std::f64::consts::PI;

    fn example() -> ComplexGame {
        let a = ComplexMatrix::from_rows(vec![
            vec![c(2.0, 0.0), c(1.0, 1.0), c(5.0, 2.0)],
            vec![c(3.0, 1.0), c(3.0, 0.0), c(4.0, -1.0)],
        ])
        .unwrap();
        ComplexGame::new(a, PI / 4.0, 5.0 * PI / 12.0).unwrap()
    }

    fn real(rows: &[&[f64]]) -> ComplexGame {
        ComplexGame::new(ComplexMatrix::from_real_rows(rows).unwrap(), PI / 4.0, PI / 4.0).unwrap()
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn column_payoff_vectors_of_example() {
        let p = pure_payoff_vectors(&example(), Side::Column);
        let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12);
        assert!(close(&p[2], &[5.0, 4.0, 6.0, 3.0]));
        assert!(close(&p[0], &[2.0, 3.0, 2.0, 3.0]));
    }

    #[test]
    fn single_domination_examples() {
        let g = example();
        assert!(dominates_single(&g, Side::Column, 2, 0, false, &tol()).unwrap());
        assert!(!dominates_single(&g, Side::Column, 2, 0, true, &tol()).unwrap());
        assert!(!dominates_single(&g, Side::Column, 0, 2, false, &tol()).unwrap());
        assert!(!dominates_single(&g, Side::Row, 1, 1, true, &tol()).unwrap());
        assert!(dominates_single(&g, Side::Row, 5, 0, false, &tol()).is_err());
    }

    #[test]
    fn pair_domination_examples() {
        let g = real(&[&[0.0], &[2.0], &[0.5]]);
        let p = find_pair_domination(&g, Side::Row, 2, &tol()).unwrap().unwrap();
        assert_eq!((p.first, p.second), (0, 1));
        assert_eq!(p.interval, (0.0, 0.75));
        assert_eq!(p.lambda, 0.375);
        assert!(p.strict);

        let g2 = real(&[&[0.0, 1.0], &[2.0, 0.0]]);
        assert_eq!(find_pair_domination(&g2, Side::Row, 0, &tol()).unwrap(), None);

        let g3 = real(&[&[3.0, 3.0], &[3.0, 3.0], &[1.0, 1.0]]);
        let p = find_pair_domination(&g3, Side::Row, 2, &tol()).unwrap().unwrap();
        assert_eq!(p.interval, (0.0, 1.0));
        assert_eq!(p.lambda, 0.5);
    }

    #[test]
    fn mixed_domination_examples() {
        let g = real(&[&[0.0], &[2.0], &[0.9]]);
        let d = find_mixed_domination(&g, Side::Row, 2, &tol()).unwrap().unwrap();
        assert!(d.strict);
        let payoffs = pure_payoff_vectors(&g, Side::Row);
        let col = ComplexGame::polytope(&g, Side::Column).extreme_points();
        for (k, (_, dj)) in col.iter().enumerate() {
            assert!(g.payoff(&d.strategy, dj).unwrap() > payoffs[2][k]);
        }
        // Row 2 is the maximin row; nothing beats it.
        assert_eq!(find_mixed_domination(&g, Side::Row, 1, &tol()).unwrap(), None);
        let single = real(&[&[1.0, -1.0]]);
        assert_eq!(
            find_mixed_domination(&single, Side::Row, 0, &tol()).unwrap(),
            None
        );
    }

    #[test]
    fn eliminate_example() {
        let (reduced, trace) = iterated_eliminate(&example(), &tol()).unwrap();
        assert_eq!(trace.claims.len(), 1);
        let claim = &trace.claims[0];
        assert_eq!(claim.axis, Side::Column);
        assert_eq!(claim.target, 2);
        assert_eq!(claim.dominator, Dominator::Single { index: 0 });
        assert!(!claim.strict);
        assert_eq!(
            reduced.matrix().to_rows(),
            vec![vec![c(2.0, 0.0), c(1.0, 1.0)], vec![c(3.0, 1.0), c(3.0, 0.0)]]
        );
        assert_eq!(trace.reduce(&example()).unwrap(), reduced);
    }

    #[test]
    fn eliminate_constant_game_does_nothing() {
        let g = ComplexGame::new(ComplexMatrix::ones(3, 3).unwrap(), 0.4, 0.8).unwrap();
        let (_, trace) = iterated_eliminate(&g, &tol()).unwrap();
        assert!(trace.claims.is_empty());
    }

    #[test]
    fn eliminate_by_pair() {
        let g = real(&[&[0.0], &[2.0], &[0.5]]);
        let (reduced, trace) = iterated_eliminate(&g, &tol()).unwrap();
        // Row 1 is dominated by row 2 first; then row 3 by row 2.
        assert_eq!(reduced.rows(), 1);
        assert!(trace.claims.len() <= 2);
        let g = real(&[&[0.0, 3.0], &[3.0, 0.0], &[1.0, 1.0]]);
        let (reduced, trace) = iterated_eliminate(&g, &tol()).unwrap();
        assert_eq!(trace.claims.len(), 1);
        assert!(matches!(
            trace.claims[0].dominator,
            Dominator::Pair {
                first: 0,
                second: 1,
                ..
            }
        ));
        assert_eq!(reduced.rows(), 2);
    }

    #[test]
    fn condition_for_example_fails() {
        let g = example();
        let (_, trace) = iterated_eliminate(&g, &tol()).unwrap();
        let z = [c(0.4, 0.2), c(0.6, -0.2)];
        let w = [c(0.8, 0.6), c(0.2, -0.6), c(0.0, 0.0)];
        let v = check_elimination_condition(&g, &trace, &z, &w, &tol()).unwrap();
        assert_eq!(v.len(), 1);
        assert!(v[0].target_im.abs() < 1e-12);
        assert!((v[0].dominator_im - 0.8).abs() < 1e-12);
        assert!(!v[0].met);
    }

    #[test]
    fn condition_for_real_game_holds() {
        let g = real(&[&[0.0, 3.0], &[3.0, 0.0], &[1.0, 1.0]]);
        let (_, trace) = iterated_eliminate(&g, &tol()).unwrap();
        let z = [c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.0)];
        let w = [c(0.5, 0.0), c(0.5, 0.0)];
        let v = check_elimination_condition(&g, &trace, &z, &w, &tol()).unwrap();
        assert!(v.iter().all(|x| x.met));
    }
}
