#![allow(clippy::needless_range_loop)]
#![allow(dead_code)]

use std::f64::consts::PI;

use cxgame::{c, Complex, ComplexGame, ComplexMatrix, StrategyPolytope};
use rand::rngs::StdRng;
use rand::Rng;

pub const ARGS: [f64; 3] = [PI / 6.0, PI / 4.0, PI / 3.0];

pub fn full_example() -> ComplexGame {
    let a = ComplexMatrix::from_rows(vec![
        vec![c(2.0, 0.0), c(1.0, 1.0), c(5.0, 2.0)],
        vec![c(3.0, 1.0), c(3.0, 0.0), c(4.0, -1.0)],
    ])
    .unwrap();
    ComplexGame::new(a, PI / 4.0, 5.0 * PI / 12.0).unwrap()
}

pub fn reduced_example() -> ComplexGame {
    let a = ComplexMatrix::from_rows(vec![
        vec![c(2.0, 0.0), c(1.0, 1.0)],
        vec![c(3.0, 1.0), c(3.0, 0.0)],
    ])
    .unwrap();
    ComplexGame::new(a, PI / 4.0, 5.0 * PI / 12.0).unwrap()
}

pub fn random_matrix(rng: &mut StdRng, m: usize, n: usize, bound: f64) -> ComplexMatrix {
    let data = (0..m * n)
        .map(|_| c(rng.random_range(-bound..=bound), rng.random_range(-bound..=bound)))
        .collect();
    ComplexMatrix::from_row_major(m, n, data).unwrap()
}

/// Dimensions in `1..=max_dim`, entries with `|re|, |im| <= 5`, arguments from [`ARGS`].
pub fn random_game(rng: &mut StdRng, max_dim: usize) -> ComplexGame {
    let m = rng.random_range(1..=max_dim);
    let n = rng.random_range(1..=max_dim);
    let a = random_matrix(rng, m, n, 5.0);
    let alpha = ARGS[rng.random_range(0..3)];
    let beta = ARGS[rng.random_range(0..3)];
    ComplexGame::new(a, alpha, beta).unwrap()
}

/// Square skew-hermitian matrix with a common argument.
pub fn random_symmetric_game(rng: &mut StdRng, max_dim: usize) -> ComplexGame {
    let m = rng.random_range(2..=max_dim);
    let mut rows = vec![vec![c(0.0, 0.0); m]; m];
    for i in 0..m {
        rows[i][i] = c(0.0, rng.random_range(-5.0..=5.0));
        for j in i + 1..m {
            let a = c(rng.random_range(-5.0..=5.0), rng.random_range(-5.0..=5.0));
            rows[i][j] = a;
            rows[j][i] = -a.conj();
        }
    }
    let arg = ARGS[rng.random_range(0..3)];
    ComplexGame::new(ComplexMatrix::from_rows(rows).unwrap(), arg, arg).unwrap()
}

/// Extreme points built directly from their closed form, independent of the
/// library's enumeration.
pub fn oracle_extreme_points(m: usize, a0: f64) -> Vec<Vec<Complex>> {
    let b = a0.tan() / 2.0;
    let mut out = Vec::new();
    for i in 0..m {
        let mut v = vec![c(0.0, 0.0); m];
        v[i] = c(1.0, 0.0);
        out.push(v);
    }
    for p in 0..m {
        for q in 0..m {
            if p != q {
                let mut v = vec![c(0.0, 0.0); m];
                v[p] = c(0.5, b);
                v[q] = c(0.5, -b);
                out.push(v);
            }
        }
    }
    out
}

/// `Re(z* A w)` by explicit double sum.
pub fn oracle_payoff(a: &ComplexMatrix, z: &[Complex], w: &[Complex]) -> f64 {
    let mut s = c(0.0, 0.0);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            s += z[i].conj() * a.get(i, j) * w[j];
        }
    }
    s.re
}

/// Random member of the polytope as a Dirichlet(1) combination of its
/// extreme points.
pub fn random_member(rng: &mut StdRng, poly: &StrategyPolytope) -> Vec<Complex> {
    let pts = oracle_extreme_points(poly.dim(), poly.argument());
    let raw: Vec<f64> = pts.iter().map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let total: f64 = raw.iter().sum();
    let mut z = vec![c(0.0, 0.0); poly.dim()];
    for (w, p) in raw.iter().zip(&pts) {
        for (zi, pi) in z.iter_mut().zip(p) {
            *zi += pi * (w / total);
        }
    }
    z
}

/// Brute-force pure security levels over extreme points.
pub fn oracle_pure_security(g: &ComplexGame) -> (f64, f64) {
    let rows = oracle_extreme_points(g.rows(), g.alpha());
    let cols = oracle_extreme_points(g.cols(), g.beta());
    let table: Vec<Vec<f64>> = rows
        .iter()
        .map(|d| cols.iter().map(|e| oracle_payoff(g.matrix(), d, e)).collect())
        .collect();
    let low = table
        .iter()
        .map(|r| r.iter().copied().fold(f64::INFINITY, f64::min))
        .fold(f64::NEG_INFINITY, f64::max);
    let high = (0..cols.len())
        .map(|j| table.iter().map(|r| r[j]).fold(f64::NEG_INFINITY, f64::max))
        .fold(f64::INFINITY, f64::min);
    (low, high)
}
