//! Complex linear complementarity instances: find `x` with `y = q + Mx`,
//! `|arg x| <= gamma`, `|arg y| <= pi/2 - gamma` and `Re(x* y) = 0`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::ComplexGame;
use crate::lp::embed::MinimaxResult;
use crate::numerics::{c, closed_sector_contains, inner, Complex, ComplexMatrix, Tolerances};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexLcpInstance {
    pub m: ComplexMatrix,
    pub q: Vec<Complex>,
    pub gamma: Vec<f64>,
}

impl ComplexLcpInstance {
    pub fn new(m: ComplexMatrix, q: Vec<Complex>, gamma: Vec<f64>) -> Result<Self> {
        let p = m.rows();
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: p,
                found: m.cols(),
            });
        }
        for len in [q.len(), gamma.len()] {
            if len != p {
                return Err(Error::DimensionMismatch {
                    expected: p,
                    found: len,
                });
            }
        }
        if let Some(g) = gamma.iter().find(|g| !(0.0..=FRAC_PI_2).contains(*g)) {
            return Err(Error::InvalidParameter(format!(
                "argument bound {g} outside [0, pi/2]"
            )));
        }
        Ok(Self { m, q, gamma })
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }
}

/// Block instance of a game with the two all-ones blocks realized as vectors:
///
/// ```text
///     [  0   -A   -1_m   0   ]        [  1_m ]          [ alpha 1_m ]
/// M = [  A*   0    0   -1_n  ]    q = [ -1_n ]  gamma = [ beta  1_n ]
///     [ 1_m^T 0    0     0   ]        [  0   ]          [  pi/2     ]
///     [  0  1_n^T  0     0   ]        [  0   ]          [  pi/2     ]
/// ```
pub fn build_lcp(g: &ComplexGame) -> ComplexLcpInstance {
    let (m, n) = (g.rows(), g.cols());
    let a = g.matrix();
    let p = m + n + 2;
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    let block = |i: usize, j: usize| -> Complex {
        match (i, j) {
            (i, j) if i < m && (m..m + n).contains(&j) => -a.get(i, j - m),
            (i, j) if i < m && j == m + n => -one,
            (i, j) if (m..m + n).contains(&i) && j < m => a.get(j, i - m).conj(),
            (i, j) if (m..m + n).contains(&i) && j == m + n + 1 => -one,
            (i, j) if i == m + n && j < m => one,
            (i, j) if i == m + n + 1 && (m..m + n).contains(&j) => one,
            _ => zero,
        }
    };
    let mat = ComplexMatrix::from_fn(p, p, block).expect("block matrix is nonempty");
    let q = (0..p)
        .map(|k| match k {
            k if k < m => one,
            k if k < m + n => -one,
            _ => zero,
        })
        .collect();
    let gamma = (0..p)
        .map(|k| match k {
            k if k < m => g.alpha(),
            k if k < m + n => g.beta(),
            _ => FRAC_PI_2,
        })
        .collect();
    ComplexLcpInstance { m: mat, q, gamma }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LcpReport {
    pub passed: bool,
    pub y: Vec<Complex>,
    /// Coordinates of `x` outside their sector.
    pub x_violations: Vec<usize>,
    /// Coordinates of `y` outside their dual sector.
    pub y_violations: Vec<usize>,
    /// `|Re(x* y)|`.
    pub complementarity: f64,
}

pub fn verify_lcp(inst: &ComplexLcpInstance, x: &[Complex], tol: &Tolerances) -> Result<LcpReport> {
    let mx = inst.m.mul_vec(x)?;
    let y: Vec<Complex> = inst.q.iter().zip(&mx).map(|(a, b)| a + b).collect();
    let x_violations: Vec<usize> = (0..inst.dim())
        .filter(|&k| !closed_sector_contains(x[k], inst.gamma[k], tol.eps_feas))
        .collect();
    let y_violations: Vec<usize> = (0..inst.dim())
        .filter(|&k| !closed_sector_contains(y[k], FRAC_PI_2 - inst.gamma[k], tol.eps_feas))
        .collect();
    let complementarity = inner(x, &y).re.abs();
    Ok(LcpReport {
        passed: x_violations.is_empty() && y_violations.is_empty() && complementarity <= tol.eps_feas,
        y,
        x_violations,
        y_violations,
        complementarity,
    })
}

/// Imaginary multiplier `r` making every `u_k - i r` lie in the sector of
/// half-angle `angle`: the midpoint of the intersection of the admissible
/// intervals, or the best compromise if they do not intersect.
fn imaginary_multiplier(u: &[Complex], angle: f64) -> f64 {
    let width = |uk: &Complex| angle.tan() * uk.re.max(0.0);
    let lo = u
        .iter()
        .map(|uk| uk.im - width(uk))
        .fold(f64::NEG_INFINITY, f64::max);
    let hi = u.iter().map(|uk| uk.im + width(uk)).fold(f64::INFINITY, f64::min);
    0.5 * (lo + hi)
}

/// Candidate LCP solution from a minimax solution of a game with positive
/// value `v`: `z' = z / v`, `w' = w / v`, and purely imaginary multipliers
/// for the two summation rows.
pub fn lcp_candidate(g: &ComplexGame, result: &MinimaxResult, tol: &Tolerances) -> Result<Vec<Complex>> {
    let v = result.value();
    if v <= tol.eps_val {
        return Err(Error::InvalidParameter(format!(
            "game value {v} is not positive; shift the game with an affine transform first"
        )));
    }
    let zs: Vec<Complex> = result.z_opt.iter().map(|z| z / v).collect();
    let ws: Vec<Complex> = result.w_opt.iter().map(|w| w / v).collect();
    let a = g.matrix();

    // Row block: y1 = 1 - A w' - s, needs the dual sector of alpha.
    let aw = a.mul_vec(&ws)?;
    let u1: Vec<Complex> = aw.iter().map(|t| c(1.0, 0.0) - t).collect();
    let s = c(0.0, imaginary_multiplier(&u1, FRAC_PI_2 - g.alpha()));
    // Column block: y2 = A* z' - 1 - t, needs the dual sector of beta.
    let az = a.conj_transpose().mul_vec(&zs)?;
    let u2: Vec<Complex> = az.iter().map(|t| t - c(1.0, 0.0)).collect();
    let t = c(0.0, imaginary_multiplier(&u2, FRAC_PI_2 - g.beta()));

    Ok(zs.into_iter().chain(ws).chain([s, t]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::embed::minimax;
    use std::f64::consts::PI;

    fn reduced() -> ComplexGame {
        let a = ComplexMatrix::from_rows(vec![
            vec![c(2.0, 0.0), c(1.0, 1.0)],
            vec![c(3.0, 1.0), c(3.0, 0.0)],
        ])
        .unwrap();
        ComplexGame::new(a, PI / 4.0, 5.0 * PI / 12.0).unwrap()
    }

    #[test]
    fn block_layout() {
        let g = reduced();
        let inst = build_lcp(&g);
        assert_eq!(inst.dim(), 6);
        assert_eq!(
            inst.q,
            vec![
                c(1.0, 0.0),
                c(1.0, 0.0),
                c(-1.0, 0.0),
                c(-1.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0)
            ]
        );
        assert_eq!(
            inst.gamma,
            vec![
                PI / 4.0,
                PI / 4.0,
                5.0 * PI / 12.0,
                5.0 * PI / 12.0,
                PI / 2.0,
                PI / 2.0
            ]
        );
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(inst.m.get(i, 2 + j), -g.matrix().get(i, j));
                assert_eq!(inst.m.get(2 + j, i), g.matrix().get(i, j).conj());
            }
        }
    }

    #[test]
    fn zero_is_trivially_complementary() {
        let g = reduced();
        let inst = build_lcp(&g);
        let r = verify_lcp(&inst, &[c(0.0, 0.0); 6], &Tolerances::default()).unwrap();
        assert_eq!(r.complementarity, 0.0);
        // q has -1 entries, which leave the dual cone of beta.
        assert_eq!(r.y_violations, vec![2, 3]);
    }

    #[test]
    fn zero_passes_when_q_is_in_the_cone() {
        let inst = ComplexLcpInstance::new(
            ComplexMatrix::identity(2).unwrap(),
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![0.3, 0.6],
        )
        .unwrap();
        let r = verify_lcp(&inst, &[c(0.0, 0.0), c(0.0, 0.0)], &Tolerances::default()).unwrap();
        assert!(r.passed);
        assert_eq!(r.complementarity, 0.0);
    }

    #[test]
    fn gamma_violation_is_located() {
        let inst = ComplexLcpInstance::new(
            ComplexMatrix::identity(2).unwrap(),
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![0.3, 0.6],
        )
        .unwrap();
        let r = verify_lcp(&inst, &[c(1.0, 1.0), c(0.0, 0.0)], &Tolerances::default()).unwrap();
        assert!(!r.passed);
        assert_eq!(r.x_violations, vec![0]);
    }

    #[test]
    fn lp_candidate_solves_the_lcp() {
        let g = reduced();
        let tol = Tolerances::default();
        let res = minimax(&g, &tol).unwrap();
        let x = lcp_candidate(&g, &res, &tol).unwrap();
        let r = verify_lcp(&build_lcp(&g), &x, &tol).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.complementarity <= tol.eps_feas);
    }

    #[test]
    fn invalid_instances() {
        let id = ComplexMatrix::identity(2).unwrap();
        assert!(ComplexLcpInstance::new(id.clone(), vec![c(0.0, 0.0)], vec![0.1, 0.1]).is_err());
        assert!(ComplexLcpInstance::new(id, vec![c(0.0, 0.0); 2], vec![0.1, 2.0]).is_err());
    }
}
