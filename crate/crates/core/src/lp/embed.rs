//! Minimax programs of a complex game written over `2m + 1` real variables
//! (`x = Re z`, `y = Im z`, `t` the guaranteed value), with the opponent
//! quantified over its extreme points only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{ComplexGame, Side};
use crate::lp::simplex::{simplex_solve, LinearProgram, LpOutcome, Relation, Sense, VarBound};
use crate::numerics::{c, Complex, Tolerances};

/// Column positions of the embedded variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingLayout {
    pub re: Vec<usize>,
    pub im: Vec<usize>,
}

impl EmbeddingLayout {
    pub fn strategy(&self, x: &[f64]) -> Vec<Complex> {
        self.re
            .iter()
            .zip(&self.im)
            .map(|(&r, &i)| c(x[r], x[i]))
            .collect()
    }
}

/// Adds `dim` real/imaginary variable pairs constrained to the strategy
/// polytope of half-angle `a0`:
/// `x >= 0`, `-tan(a0) x <= y <= tan(a0) x`, `sum x = 1`, `sum y = 0`.
pub fn add_strategy_variables(lp: &mut LinearProgram, prefix: &str, dim: usize, a0: f64) -> EmbeddingLayout {
    let re: Vec<usize> = (0..dim)
        .map(|i| lp.add_var(format!("{prefix}_re{}", i + 1), VarBound::NonNegative, 0.0))
        .collect();
    let im: Vec<usize> = (0..dim)
        .map(|i| lp.add_var(format!("{prefix}_im{}", i + 1), VarBound::Free, 0.0))
        .collect();
    let slope = a0.tan();
    for (&r, &i) in re.iter().zip(&im) {
        lp.add_constraint(&[(i, 1.0), (r, -slope)], Relation::Le, 0.0);
        lp.add_constraint(&[(i, -1.0), (r, -slope)], Relation::Le, 0.0);
    }
    let sum_re: Vec<_> = re.iter().map(|&r| (r, 1.0)).collect();
    let sum_im: Vec<_> = im.iter().map(|&i| (i, 1.0)).collect();
    lp.add_constraint(&sum_re, Relation::Eq, 1.0);
    lp.add_constraint(&sum_im, Relation::Eq, 0.0);
    EmbeddingLayout { re, im }
}

/// Real coefficients of `Re(z* v)` in `(x, y)`: `Re v` and `Im v`.
pub fn conj_left_terms(layout: &EmbeddingLayout, v: &[Complex]) -> Vec<(usize, f64)> {
    layout
        .re
        .iter()
        .zip(v)
        .map(|(&r, vi)| (r, vi.re))
        .chain(layout.im.iter().zip(v).map(|(&i, vi)| (i, vi.im)))
        .collect()
}

/// Real coefficients of `Re(u w)` in `(x, y)` for `w = x + iy`: `Re u` and `-Im u`.
pub fn plain_terms(layout: &EmbeddingLayout, u: &[Complex]) -> Vec<(usize, f64)> {
    layout
        .re
        .iter()
        .zip(u)
        .map(|(&r, ui)| (r, ui.re))
        .chain(layout.im.iter().zip(u).map(|(&i, ui)| (i, -ui.im)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealEmbeddedLP {
    pub side: Side,
    pub program: LinearProgram,
    pub layout: EmbeddingLayout,
    /// Column of the value variable `t`.
    pub value_var: usize,
}

/// Row side: maximize `t` with `Re(z* A d^j) >= t` for every column extreme
/// point. Column side: minimize `t` with `Re((d^i)* A w) <= t` for every row
/// extreme point.
pub fn embed_player(g: &ComplexGame, side: Side) -> RealEmbeddedLP {
    let a = g.matrix();
    match side {
        Side::Row => {
            let mut lp = LinearProgram::new(Sense::Maximize);
            let layout = add_strategy_variables(&mut lp, "z", g.rows(), g.alpha());
            let t = lp.add_var("t", VarBound::Free, 1.0);
            for (_, d) in g.polytope(Side::Column).extreme_points() {
                let ad = a.mul_vec(&d).expect("dimensions agree");
                let mut terms = conj_left_terms(&layout, &ad);
                terms.push((t, -1.0));
                lp.add_constraint(&terms, Relation::Ge, 0.0);
            }
            RealEmbeddedLP {
                side,
                program: lp,
                layout,
                value_var: t,
            }
        }
        Side::Column => {
            let mut lp = LinearProgram::new(Sense::Minimize);
            let layout = add_strategy_variables(&mut lp, "w", g.cols(), g.beta());
            let t = lp.add_var("t", VarBound::Free, 1.0);
            for (_, d) in g.polytope(Side::Row).extreme_points() {
                let da = a.left_mul_conj(&d).expect("dimensions agree");
                let mut terms = plain_terms(&layout, &da);
                terms.push((t, -1.0));
                lp.add_constraint(&terms, Relation::Le, 0.0);
            }
            RealEmbeddedLP {
                side,
                program: lp,
                layout,
                value_var: t,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimaxResult {
    pub v_low: f64,
    pub v_high: f64,
    pub z_opt: Vec<Complex>,
    pub w_opt: Vec<Complex>,
    pub gap: f64,
    pub iterations: (usize, usize),
}

impl MinimaxResult {
    pub fn value(&self) -> f64 {
        0.5 * (self.v_low + self.v_high)
    }
}

fn solve_side(g: &ComplexGame, side: Side, tol: &Tolerances) -> Result<(f64, Vec<Complex>, usize)> {
    let emb = embed_player(g, side);
    match simplex_solve(&emb.program, tol)? {
        LpOutcome::Optimal(sol) => Ok((sol.x[emb.value_var], emb.layout.strategy(&sol.x), sol.iterations)),
        LpOutcome::Infeasible => Err(Error::LpInfeasible(format!("{side:?} embedding"))),
        LpOutcome::Unbounded => Err(Error::LpUnbounded(format!("{side:?} embedding"))),
    }
}

/// Solves both embedded programs. The reconstructed `z_opt = x + iy` is the
/// game-side strategy (the payoff conjugates it).
pub fn minimax(g: &ComplexGame, tol: &Tolerances) -> Result<MinimaxResult> {
    let (v_low, z_opt, it_row) = solve_side(g, Side::Row, tol)?;
    let (v_high, w_opt, it_col) = solve_side(g, Side::Column, tol)?;
    let gap = v_high - v_low;
    if gap.is_nan() || gap.abs() > tol.eps_val {
        return Err(Error::DualityGap { v_low, v_high, gap });
    }
    Ok(MinimaxResult {
        v_low,
        v_high,
        z_opt,
        w_opt,
        gap,
        iterations: (it_row, it_col),
    })
}
