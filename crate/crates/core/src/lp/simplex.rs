//! Two-phase dense-tableau primal simplex: lowest-index entering column,
//! two-pass ratio test for the leaving row.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarBound {
    NonNegative,
    Free,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<VarBound>,
    pub names: Vec<String>,
}

impl LinearProgram {
    pub fn new(sense: Sense) -> Self {
        Self {
            sense,
            objective: Vec::new(),
            constraints: Vec::new(),
            bounds: Vec::new(),
            names: Vec::new(),
        }
    }

    /// Adds a variable and returns its column.
    pub fn add_var(&mut self, name: impl Into<String>, bound: VarBound, cost: f64) -> usize {
        self.objective.push(cost);
        self.bounds.push(bound);
        self.names.push(name.into());
        for c in &mut self.constraints {
            c.coeffs.push(0.0);
        }
        self.objective.len() - 1
    }

    /// Adds `sum coeff * var  rel  rhs` from sparse `(column, coeff)` terms.
    pub fn add_constraint(&mut self, terms: &[(usize, f64)], relation: Relation, rhs: f64) {
        let mut coeffs = vec![0.0; self.num_vars()];
        for &(j, a) in terms {
            coeffs[j] += a;
        }
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.bounds.len() != n || self.names.len() != n {
            return Err(Error::InvalidParameter(
                "variable metadata length mismatch".into(),
            ));
        }
        if !self.objective.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("objective"));
        }
        for c in &self.constraints {
            if c.coeffs.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.coeffs.len(),
                });
            }
            if !c.rhs.is_finite() || !c.coeffs.iter().all(|v| v.is_finite()) {
                return Err(Error::NonFinite("constraint"));
            }
        }
        Ok(())
    }

    /// Largest violation of the constraints and bounds at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for c in &self.constraints {
            let lhs: f64 = c.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
            let v = match c.relation {
                Relation::Le => lhs - c.rhs,
                Relation::Ge => c.rhs - lhs,
                Relation::Eq => (lhs - c.rhs).abs(),
            };
            worst = worst.max(v);
        }
        for (b, &xi) in self.bounds.iter().zip(x) {
            if *b == VarBound::NonNegative {
                worst = worst.max(-xi);
            }
        }
        worst
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub value: f64,
    pub x: Vec<f64>,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

struct Tableau {
    /// Row-major, `rows x (cols + 1)`; last entry of each row is the rhs.
    a: Vec<Vec<f64>>,
    basis: Vec<usize>,
    cols: usize,
    eps: f64,
    relax: f64,
    iterations: usize,
    max_iterations: usize,
}

enum Phase {
    Optimal,
    Unbounded,
    Stalled,
}

impl Tableau {
    fn rhs(&self, r: usize) -> f64 {
        self.a[r][self.cols]
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.a[r][col];
        for v in self.a[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.a[r].clone();
        for (k, row) in self.a.iter_mut().enumerate() {
            if k == r {
                continue;
            }
            let f = row[col];
            if f == 0.0 {
                continue;
            }
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
            row[col] = 0.0;
        }
        for row in self.a.iter_mut() {
            let last = row.len() - 1;
            if row[last] < 0.0 && row[last] > -self.eps {
                row[last] = 0.0;
            }
        }
        self.basis[r] = col;
        self.iterations += 1;
    }

    /// Maximizes `cost . x` over columns `< allowed`.
    fn optimize(&mut self, cost: &[f64], allowed: usize) -> Phase {
        loop {
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let reduced = cost[j]
                    - self
                        .basis
                        .iter()
                        .zip(&self.a)
                        .map(|(&b, row)| cost[b] * row[j])
                        .sum::<f64>();
                if reduced > self.eps {
                    entering = Some(j);
                    break;
                }
            }
            let Some(col) = entering else {
                return Phase::Optimal;
            };
            // Two-pass ratio test: bound the step with a relaxed rhs, then
            // take the largest pivot among rows within that bound.
            let eligible = |r: usize| self.a[r][col] > self.eps;
            let bound = (0..self.a.len())
                .filter(|&r| eligible(r))
                .map(|r| (self.rhs(r).max(0.0) + self.relax) / self.a[r][col])
                .fold(f64::INFINITY, f64::min);
            let mut leave: Option<usize> = None;
            for r in (0..self.a.len()).filter(|&r| eligible(r)) {
                let coef = self.a[r][col];
                if self.rhs(r).max(0.0) / coef > bound {
                    continue;
                }
                leave = match leave {
                    Some(br) if self.a[br][col] > coef => Some(br),
                    Some(br) if self.a[br][col] == coef && self.basis[br] < self.basis[r] => Some(br),
                    _ => Some(r),
                };
            }
            match leave {
                Some(r) => self.pivot(r, col),
                None => return Phase::Unbounded,
            }
            if self.iterations >= self.max_iterations {
                return Phase::Stalled;
            }
        }
    }
}

/// Solves `lp` exactly as posed. Free variables are split into positive and
/// negative parts; the pivot sequence depends only on the input.
pub fn simplex_solve(lp: &LinearProgram, tol: &Tolerances) -> Result<LpOutcome> {
    lp.validate()?;
    let n = lp.num_vars();

    // Column layout: split originals, then slack/surplus, then artificials.
    let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(n);
    let mut next = 0;
    for b in &lp.bounds {
        match b {
            VarBound::NonNegative => {
                col_of.push((next, None));
                next += 1;
            }
            VarBound::Free => {
                col_of.push((next, Some(next + 1)));
                next += 2;
            }
        }
    }
    let structural = next;
    let slack_count = lp
        .constraints
        .iter()
        .filter(|c| c.relation != Relation::Eq)
        .count();
    let mut art_rows = Vec::new();
    for (r, c) in lp.constraints.iter().enumerate() {
        let flipped = c.rhs < 0.0;
        let rel = match (c.relation, flipped) {
            (Relation::Le, true) => Relation::Ge,
            (Relation::Ge, true) => Relation::Le,
            (rel, _) => rel,
        };
        if rel != Relation::Le {
            art_rows.push(r);
        }
    }
    let cols = structural + slack_count + art_rows.len();
    let art_start = structural + slack_count;
    let scale = lp.constraints.iter().map(|c| c.rhs.abs()).fold(1.0, f64::max);
    let eps = tol.eps_rank;

    let mut a = Vec::with_capacity(lp.constraints.len());
    let mut basis = Vec::with_capacity(lp.constraints.len());
    let mut slack = structural;
    let mut art = art_start;
    for c in &lp.constraints {
        let sign = if c.rhs < 0.0 { -1.0 } else { 1.0 };
        let rel = match (c.relation, sign < 0.0) {
            (Relation::Le, true) => Relation::Ge,
            (Relation::Ge, true) => Relation::Le,
            (rel, _) => rel,
        };
        let mut row = vec![0.0; cols + 1];
        for (j, &coef) in c.coeffs.iter().enumerate() {
            let (pos, neg) = col_of[j];
            row[pos] += sign * coef;
            if let Some(neg) = neg {
                row[neg] -= sign * coef;
            }
        }
        row[cols] = sign * c.rhs;
        match rel {
            Relation::Le => {
                row[slack] = 1.0;
                basis.push(slack);
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = -1.0;
                slack += 1;
                row[art] = 1.0;
                basis.push(art);
                art += 1;
            }
            Relation::Eq => {
                row[art] = 1.0;
                basis.push(art);
                art += 1;
            }
        }
        a.push(row);
    }

    let mut t = Tableau {
        a,
        basis,
        cols,
        eps,
        relax: tol.eps_feas,
        iterations: 0,
        max_iterations: 50 * (cols + lp.constraints.len()).max(100),
    };

    if art_start < cols {
        let mut phase1 = vec![0.0; cols];
        for v in &mut phase1[art_start..] {
            *v = -1.0;
        }
        // Phase 1 is bounded above by zero.
        if let Phase::Stalled = t.optimize(&phase1, cols) {
            return Err(Error::Inconsistent(
                "simplex iteration limit reached in phase 1".into(),
            ));
        }
        let infeasibility: f64 = t
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| b >= art_start)
            .map(|(r, _)| t.rhs(r))
            .sum();
        if infeasibility > tol.eps_feas * scale {
            return Ok(LpOutcome::Infeasible);
        }
        // Drive remaining zero-level artificials out, dropping redundant rows.
        let mut r = 0;
        while r < t.a.len() {
            if t.basis[r] >= art_start {
                match (0..art_start).find(|&j| t.a[r][j].abs() > eps) {
                    Some(j) => {
                        t.pivot(r, j);
                        r += 1;
                    }
                    None => {
                        t.a.remove(r);
                        t.basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
    }

    let sign = match lp.sense {
        Sense::Maximize => 1.0,
        Sense::Minimize => -1.0,
    };
    let mut cost = vec![0.0; cols];
    for (j, &cj) in lp.objective.iter().enumerate() {
        let (pos, neg) = col_of[j];
        cost[pos] = sign * cj;
        if let Some(neg) = neg {
            cost[neg] = -sign * cj;
        }
    }
    match t.optimize(&cost, art_start) {
        Phase::Optimal => {}
        Phase::Unbounded => return Ok(LpOutcome::Unbounded),
        Phase::Stalled => {
            return Err(Error::Inconsistent(
                "simplex iteration limit reached in phase 2".into(),
            ));
        }
    }

    let mut values = vec![0.0; cols];
    for (r, &b) in t.basis.iter().enumerate() {
        values[b] = t.rhs(r);
    }
    let x: Vec<f64> = col_of
        .iter()
        .map(|&(pos, neg)| values[pos] - neg.map_or(0.0, |k| values[k]))
        .collect();
    let drift = lp.max_violation(&x);
    if drift > tol.eps_feas * scale.max(1e3) {
        return Err(Error::Inconsistent(format!(
            "simplex solution violates constraints by {drift:e}"
        )));
    }
    let value = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok(LpOutcome::Optimal(LpSolution {
        value,
        x,
        iterations: t.iterations,
    }))
}
