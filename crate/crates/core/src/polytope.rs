//! The strategy polytope `S = {z in C^m : |arg z_i| <= a0, sum z_i = 1}`,
//! its `m^2` extreme points and the constructive convex decomposition of its
//! members.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{c, check_argument, sector_contains, Complex, Tolerances};

/// Half the tangent of the strategy argument: `1/2 + b i` has argument `a0`.
pub fn offset_b(a0: f64) -> Result<f64> {
    Ok(check_argument(a0)?.tan() / 2.0)
}

/// Index of an extreme point. Indices are zero-based; `Display` prints them
/// one-based. The derived ordering is the canonical one: every `Trivial` by
/// coordinate, then every `Pair` lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremePointIndex {
    /// Unit coordinate vector.
    Trivial(usize),
    /// `1/2 + b i` at `plus`, `1/2 - b i` at `minus`.
    Pair { plus: usize, minus: usize },
}

impl ExtremePointIndex {
    fn check(&self, m: usize) -> Result<()> {
        let bad = |index| Err(Error::IndexOutOfRange { index, len: m });
        match *self {
            ExtremePointIndex::Trivial(i) if i >= m => bad(i),
            ExtremePointIndex::Pair { plus, .. } if plus >= m => bad(plus),
            ExtremePointIndex::Pair { minus, .. } if minus >= m => bad(minus),
            ExtremePointIndex::Pair { plus, minus } if plus == minus => Err(Error::InvalidParameter(
                format!("pair extreme point needs distinct coordinates, got ({plus}, {minus})"),
            )),
            _ => Ok(()),
        }
    }

    /// Position in the canonical order of an `m`-dimensional polytope.
    pub fn ordinal(&self, m: usize) -> usize {
        match *self {
            ExtremePointIndex::Trivial(i) => i,
            ExtremePointIndex::Pair { plus, minus } => {
                m + plus * (m - 1) + if minus > plus { minus - 1 } else { minus }
            }
        }
    }

    pub fn from_ordinal(k: usize, m: usize) -> Result<Self> {
        if k >= m * m {
            return Err(Error::IndexOutOfRange { index: k, len: m * m });
        }
        if k < m {
            return Ok(ExtremePointIndex::Trivial(k));
        }
        let r = k - m;
        let plus = r / (m - 1);
        let off = r % (m - 1);
        let minus = if off >= plus { off + 1 } else { off };
        Ok(ExtremePointIndex::Pair { plus, minus })
    }
}

impl fmt::Display for ExtremePointIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtremePointIndex::Trivial(i) => write!(f, "e{}", i + 1),
            ExtremePointIndex::Pair { plus, minus } => write!(f, "eta({},{})", plus + 1, minus + 1),
        }
    }
}

/// All extreme-point indices of dimension `m` in canonical order.
pub fn canonical_indices(m: usize) -> impl Iterator<Item = ExtremePointIndex> {
    let trivial = (0..m).map(ExtremePointIndex::Trivial);
    let pairs = (0..m).flat_map(move |p| {
        (0..m)
            .filter(move |&q| q != p)
            .map(move |q| ExtremePointIndex::Pair { plus: p, minus: q })
    });
    trivial.chain(pairs)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrategyPolytope {
    m: usize,
    a0: f64,
}

impl StrategyPolytope {
    pub fn new(m: usize, a0: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Empty("strategy polytope"));
        }
        check_argument(a0)?;
        Ok(Self { m, a0 })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn argument(&self) -> f64 {
        self.a0
    }

    pub fn b(&self) -> f64 {
        self.a0.tan() / 2.0
    }

    pub fn extreme_point(&self, idx: ExtremePointIndex) -> Result<Vec<Complex>> {
        idx.check(self.m)?;
        let mut v = vec![c(0.0, 0.0); self.m];
        match idx {
            ExtremePointIndex::Trivial(i) => v[i] = c(1.0, 0.0),
            ExtremePointIndex::Pair { plus, minus } => {
                let b = self.b();
                v[plus] = c(0.5, b);
                v[minus] = c(0.5, -b);
            }
        }
        Ok(v)
    }

    /// All `m^2` extreme points paired with their indices, canonical order.
    pub fn extreme_points(&self) -> Vec<(ExtremePointIndex, Vec<Complex>)> {
        canonical_indices(self.m)
            .map(|idx| {
                let point = self.extreme_point(idx).expect("canonical index is valid");
                (idx, point)
            })
            .collect()
    }

    pub fn contains(&self, z: &[Complex], tol: &Tolerances) -> Result<bool> {
        if z.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: z.len(),
            });
        }
        for &zi in z {
            if !sector_contains(zi, self.a0, tol)? {
                return Ok(false);
            }
        }
        let s: Complex = z.iter().sum();
        Ok((s.re - 1.0).abs() <= tol.eps_feas && s.im.abs() <= tol.eps_feas)
    }

    /// Writes `z` as a convex combination of extreme points.
    ///
    /// Each coordinate splits as `z_i = lambda_i (1/2 + b i) + mu_i (1/2 - b i) + kappa_i`
    /// with at most one of `lambda_i`, `mu_i` nonzero. The positive-imaginary
    /// coefficients are then paired off against the negative ones, head to
    /// head, each step emitting a `Pair` weight equal to the smaller head.
    pub fn decompose(&self, z: &[Complex], tol: &Tolerances) -> Result<ConvexWeights> {
        if !self.contains(z, tol)? {
            return Err(Error::NotInPolytope);
        }
        let b = self.b();
        let mut weights = BTreeMap::new();
        let mut plus: Vec<(usize, f64)> = Vec::new();
        let mut minus: Vec<(usize, f64)> = Vec::new();

        for (i, zi) in z.iter().enumerate() {
            let coeff = zi.im.abs() / b;
            if zi.im > 0.0 {
                plus.push((i, coeff));
            } else if zi.im < 0.0 {
                minus.push((i, coeff));
            }
            let mut kappa = if zi.im == 0.0 { zi.re } else { zi.re - coeff / 2.0 };
            if kappa < 0.0 && kappa > -tol.eps_feas {
                kappa = 0.0;
            }
            if kappa < 0.0 {
                return Err(Error::NotInPolytope);
            }
            if kappa > 0.0 {
                weights.insert(ExtremePointIndex::Trivial(i), kappa);
            }
        }

        let (mut pi, mut qi) = (0, 0);
        while pi < plus.len() && qi < minus.len() {
            let (p, lp) = plus[pi];
            let (q, lq) = minus[qi];
            let w = lp.min(lq);
            *weights
                .entry(ExtremePointIndex::Pair { plus: p, minus: q })
                .or_insert(0.0) += w;
            if lp > lq {
                plus[pi].1 = lp - lq;
                qi += 1;
            } else if lq > lp {
                minus[qi].1 = lq - lp;
                pi += 1;
            } else {
                pi += 1;
                qi += 1;
            }
        }
        let leftover = plus[pi.min(plus.len())..]
            .iter()
            .chain(&minus[qi.min(minus.len())..])
            .map(|&(_, v)| v)
            .fold(0.0, f64::max);
        if leftover > tol.eps_feas {
            return Err(Error::Inconsistent(format!(
                "imaginary parts do not cancel: unpaired coefficient {leftover:e}"
            )));
        }
        Ok(ConvexWeights { weights })
    }
}

/// Sparse convex weights over extreme points.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ConvexWeights {
    weights: BTreeMap<ExtremePointIndex, f64>,
}

impl ConvexWeights {
    pub fn iter(&self) -> impl Iterator<Item = (ExtremePointIndex, f64)> + '_ {
        self.weights.iter().map(|(&k, &v)| (k, v))
    }

    pub fn get(&self, idx: ExtremePointIndex) -> f64 {
        self.weights.get(&idx).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.weights.values().sum()
    }

    pub fn pair_count(&self) -> usize {
        self.weights
            .keys()
            .filter(|k| matches!(k, ExtremePointIndex::Pair { .. }))
            .count()
    }

    /// `sum_k w_k d^k`.
    pub fn reconstruct(&self, poly: &StrategyPolytope) -> Result<Vec<Complex>> {
        let mut out = vec![c(0.0, 0.0); poly.dim()];
        for (idx, w) in self.iter() {
            for (o, d) in out.iter_mut().zip(poly.extreme_point(idx)?) {
                *o += d * w;
            }
        }
        Ok(out)
    }
}
