//! Complex scalars, dense complex matrices, sector-cone tests and a
//! deterministic Gaussian-elimination solver for `Bz = b`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Complex = Complex64;

/// Shorthand constructor.
#[inline]
pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Slack admitted in feasibility and membership tests.
    pub eps_feas: f64,
    /// Slack admitted when comparing payoffs and values.
    pub eps_val: f64,
    /// Pivot threshold for elimination and simplex.
    pub eps_rank: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eps_feas: 1e-9,
            eps_val: 1e-7,
            eps_rank: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn new(eps_feas: f64, eps_val: f64, eps_rank: f64) -> Result<Self> {
        let tol = Self {
            eps_feas,
            eps_val,
            eps_rank,
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eps_feas", self.eps_feas),
            ("eps_val", self.eps_val),
            ("eps_rank", self.eps_rank),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite and strictly positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Same tolerances with `eps_val` replaced.
    pub fn with_eps_val(self, eps_val: f64) -> Result<Self> {
        Self::new(self.eps_feas, eps_val, self.eps_rank)
    }
}

/// Rejects strategy arguments outside the open interval (0, pi/2).
pub fn check_argument(a0: f64) -> Result<f64> {
    if a0.is_finite() && a0 > 0.0 && a0 < FRAC_PI_2 {
        Ok(a0)
    } else {
        Err(Error::UnsupportedArgument(a0))
    }
}

/// Membership of `c` in the sector `|arg c| <= a0`, tested through the
/// half-plane inequalities so that `arg(0)` is never needed.
pub fn sector_contains(c: Complex, a0: f64, tol: &Tolerances) -> Result<bool> {
    check_argument(a0)?;
    let eps = tol.eps_feas;
    Ok(c.re >= -eps && c.im.abs() <= a0.tan() * c.re.max(0.0) + eps)
}

/// Closed sector membership for any half-angle in `[0, pi/2]`. At `pi/2` this
/// is the closed right half-plane, at `0` the nonnegative real axis.
pub fn closed_sector_contains(c: Complex, angle: f64, eps: f64) -> bool {
    let angle = angle.clamp(0.0, FRAC_PI_2);
    let (sin, cos) = angle.sin_cos();
    c.re >= -eps && c.im.abs() * cos <= c.re.max(0.0) * sin + eps
}

pub fn ensure_finite(values: &[Complex], what: &'static str) -> Result<()> {
    if values.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

pub fn norm_inf(v: &[Complex]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn conj_vec(v: &[Complex]) -> Vec<Complex> {
    v.iter().map(|z| z.conj()).collect()
}

/// `u* v` with conjugation on the left argument.
pub fn inner(u: &[Complex], v: &[Complex]) -> Complex {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Dense row-major complex matrix with at least one row and one column.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl ComplexMatrix {
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty("matrix"));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        ensure_finite(&data, "matrix")?;
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Complex>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(m * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Self::from_row_major(m, n, data)
    }

    /// Real-valued convenience constructor.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| c(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, n, |i, j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) })
    }

    pub fn ones(rows: usize, cols: usize) -> Result<Self> {
        Self::from_fn(rows, cols, |_, _| c(1.0, 0.0))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex) -> Result<Self> {
        let data = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        Self::from_row_major(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Complex] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn conj_transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            data: (0..self.cols)
                .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
                .map(|(i, j)| self.get(i, j).conj())
                .collect(),
        }
    }

    /// `A v`.
    pub fn mul_vec(&self, v: &[Complex]) -> Result<Vec<Complex>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `u* A` as a row vector.
    pub fn left_mul_conj(&self, u: &[Complex]) -> Result<Vec<Complex>> {
        if u.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: u.len(),
            });
        }
        Ok((0..self.cols)
            .map(|j| (0..self.rows).map(|i| u[i].conj() * self.get(i, j)).sum())
            .collect())
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    pub fn map(&self, f: impl Fn(Complex) -> Complex) -> Result<Self> {
        Self::from_row_major(self.rows, self.cols, self.data.iter().map(|&z| f(z)).collect())
    }

    pub fn max_abs(&self) -> f64 {
        norm_inf(&self.data)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Complex>>::deserialize(deserializer)?;
        Self::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Outcome of [`solve_complex_linear`]. Inconsistency is data, not an error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LinearSolution {
    Solved {
        x: Vec<Complex>,
        rank: usize,
        residual: f64,
    },
    Inconsistent {
        rank: usize,
        residual: f64,
    },
}

impl LinearSolution {
    pub fn solution(&self) -> Option<&[Complex]> {
        match self {
            LinearSolution::Solved { x, .. } => Some(x),
            LinearSolution::Inconsistent { .. } => None,
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            LinearSolution::Solved { rank, .. } | LinearSolution::Inconsistent { rank, .. } => *rank,
        }
    }
}

/// Gaussian elimination with partial pivoting by modulus (lowest row index on
/// ties) to row echelon form, then back substitution with free variables set
/// to zero. Works for rectangular systems.
pub fn solve_complex_linear(
    b_mat: &ComplexMatrix,
    rhs: &[Complex],
    tol: &Tolerances,
) -> Result<LinearSolution> {
    let (p, q) = (b_mat.rows(), b_mat.cols());
    if rhs.len() != p {
        return Err(Error::DimensionMismatch {
            expected: p,
            found: rhs.len(),
        });
    }
    ensure_finite(rhs, "right-hand side")?;

    let mut a: Vec<Vec<Complex>> = b_mat.to_rows();
    let mut r = rhs.to_vec();
    let threshold = tol.eps_rank * b_mat.max_abs().max(1.0);

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..q {
        if row == p {
            break;
        }
        let mut best = row;
        let mut best_mod = a[row][col].norm();
        for (k, a_k) in a.iter().enumerate().skip(row + 1) {
            let m = a_k[col].norm();
            if m > best_mod {
                best = k;
                best_mod = m;
            }
        }
        if best_mod <= threshold {
            continue;
        }
        a.swap(row, best);
        r.swap(row, best);
        let piv = a[row][col];
        let pivot_row = a[row].clone();
        for k in row + 1..p {
            let factor = a[k][col] / piv;
            if factor == Complex::new(0.0, 0.0) {
                continue;
            }
            for (x, t) in a[k][col..q].iter_mut().zip(&pivot_row[col..q]) {
                *x -= factor * t;
            }
            let t = r[row];
            r[k] -= factor * t;
        }
        pivots.push((row, col));
        row += 1;
    }

    let mut x = vec![Complex::new(0.0, 0.0); q];
    for &(pr, pc) in pivots.iter().rev() {
        let s: Complex = (pc + 1..q).map(|j| a[pr][j] * x[j]).sum();
        x[pc] = (r[pr] - s) / a[pr][pc];
    }

    let bx = b_mat.mul_vec(&x)?;
    let residual = bx
        .iter()
        .zip(rhs)
        .map(|(u, v)| (u - v).norm())
        .fold(0.0, f64::max);
    let rank = pivots.len();
    if residual <= tol.eps_feas * (1.0 + norm_inf(rhs)) {
        Ok(LinearSolution::Solved { x, rank, residual })
    } else {
        Ok(LinearSolution::Inconsistent { rank, residual })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn sector_examples() {
        assert!(sector_contains(c(0.5, 0.5), PI / 4.0, &tol()).unwrap());
        assert!(sector_contains(c(1.0, 0.0), PI / 6.0, &tol()).unwrap());
        assert!(!sector_contains(c(-0.1, 0.0), PI / 4.0, &tol()).unwrap());
        assert!(sector_contains(c(0.0, 0.0), PI / 6.0, &tol()).unwrap());
    }

    #[test]
    fn sector_rejects_bad_argument() {
        for a0 in [0.0, PI / 2.0, -0.3, 2.0, f64::NAN] {
            assert!(matches!(
                sector_contains(c(1.0, 0.0), a0, &tol()),
                Err(Error::UnsupportedArgument(_))
            ));
        }
    }

    #[test]
    fn closed_sector_extremes() {
        assert!(closed_sector_contains(c(0.0, 5.0), FRAC_PI_2, 1e-12));
        assert!(!closed_sector_contains(c(-1.0, 0.0), FRAC_PI_2, 1e-12));
        assert!(closed_sector_contains(c(3.0, 0.0), 0.0, 1e-12));
        assert!(!closed_sector_contains(c(3.0, 0.1), 0.0, 1e-12));
    }

    #[test]
    fn tolerances_must_be_positive() {
        assert!(Tolerances::new(0.0, 1e-7, 1e-10).is_err());
        assert!(Tolerances::new(1e-9, -1.0, 1e-10).is_err());
        assert!(Tolerances::new(1e-9, 1e-7, 1e-10).is_ok());
    }

    #[test]
    fn identity_system() {
        let b = ComplexMatrix::identity(2).unwrap();
        let sol = solve_complex_linear(&b, &[c(1.0, 1.0), c(2.0, 0.0)], &tol()).unwrap();
        assert_eq!(sol.solution().unwrap(), &[c(1.0, 1.0), c(2.0, 0.0)]);
        assert_eq!(sol.rank(), 2);
    }

    #[test]
    fn equalizing_system_of_reduced_example() {
        let b = ComplexMatrix::from_rows(vec![
            vec![c(2.0, 0.0), c(3.0, 1.0), c(-1.0, 0.0)],
            vec![c(1.0, 1.0), c(3.0, 0.0), c(-1.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let rhs = [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let sol = solve_complex_linear(&b, &rhs, &tol()).unwrap();
        let x = sol.solution().unwrap();
        let expected = [c(0.4, -0.2), c(0.6, 0.2), c(2.4, 0.8)];
        for (got, want) in x.iter().zip(expected) {
            assert!((got - want).norm() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn contradictory_equations_are_reported() {
        let b = ComplexMatrix::from_real_rows(&[&[1.0], &[1.0]]).unwrap();
        let sol = solve_complex_linear(&b, &[c(1.0, 0.0), c(2.0, 0.0)], &tol()).unwrap();
        assert!(matches!(sol, LinearSolution::Inconsistent { rank: 1, .. }));
    }

    #[test]
    fn underdetermined_sets_free_variables_to_zero() {
        let b = ComplexMatrix::from_real_rows(&[&[1.0, 1.0, 1.0]]).unwrap();
        let sol = solve_complex_linear(&b, &[c(3.0, 0.0)], &tol()).unwrap();
        assert_eq!(sol.solution().unwrap(), &[c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(sol.rank(), 1);
    }

    #[test]
    fn pivot_tie_prefers_lowest_row() {
        // Both rows have modulus 1 in column 0; row 0 must stay the pivot.
        let b = ComplexMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 1.0), c(2.0, 0.0)],
        ])
        .unwrap();
        let rhs = [c(1.0, 0.0), c(0.0, 0.0)];
        let a = solve_complex_linear(&b, &rhs, &tol()).unwrap();
        let b2 = solve_complex_linear(&b, &rhs, &tol()).unwrap();
        assert_eq!(a, b2);
    }

    #[test]
    fn dimension_mismatch() {
        let b = ComplexMatrix::identity(2).unwrap();
        assert!(solve_complex_linear(&b, &[c(1.0, 0.0)], &tol()).is_err());
    }

    #[test]
    fn matrix_rejects_nan_and_empty() {
        assert!(ComplexMatrix::from_rows(vec![vec![c(f64::NAN, 0.0)]]).is_err());
        assert!(ComplexMatrix::from_rows(vec![]).is_err());
        assert!(ComplexMatrix::from_rows(vec![vec![c(1.0, 0.0)], vec![]]).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn sector_monotone_in_argument(re in -1e-8f64..3.0, im in -3.0f64..3.0,
                                           a in 0.01f64..1.5, da in 0.0f64..0.05) {
                let a2 = (a + da).min(1.56);
                let z = c(re, im);
                if sector_contains(z, a, &tol()).unwrap() {
                    prop_assert!(sector_contains(z, a2, &tol()).unwrap());
                }
            }

            #[test]
            fn solved_systems_meet_residual_bound(
                entries in proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 12),
                rhs in proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 3),
            ) {
                let data = entries.iter().map(|&(r, i)| c(r, i)).collect();
                let b = ComplexMatrix::from_row_major(3, 4, data).unwrap();
                let rhs: Vec<Complex> = rhs.iter().map(|&(r, i)| c(r, i)).collect();
                let t = tol();
                let first = solve_complex_linear(&b, &rhs, &t).unwrap();
                if let LinearSolution::Solved { x, residual, .. } = &first {
                    prop_assert!(*residual <= t.eps_feas * (1.0 + norm_inf(&rhs)));
                    let bx = b.mul_vec(x).unwrap();
                    let worst = bx.iter().zip(&rhs).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max);
                    prop_assert_eq!(worst, *residual);
                }
                let again = solve_complex_linear(&b, &rhs, &t).unwrap();
                prop_assert_eq!(first, again);
            }
        }
    }
}
