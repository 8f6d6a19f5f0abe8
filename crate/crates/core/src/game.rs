//! Two-player zero-sum complex games `G(A)` with payoff `Re(z* A w)` to the
//! row player.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{check_argument, inner, Complex, ComplexMatrix, Tolerances};
use crate::polytope::{ExtremePointIndex, StrategyPolytope};

/// Which player: `Row` is player I (maximizer), `Column` is player II.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Row,
    Column,
}

impl Side {
    pub fn opponent(self) -> Side {
        match self {
            Side::Row => Side::Column,
            Side::Column => Side::Row,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexGame {
    matrix: ComplexMatrix,
    alpha: f64,
    beta: f64,
}

impl ComplexGame {
    pub fn new(matrix: ComplexMatrix, alpha: f64, beta: f64) -> Result<Self> {
        check_argument(alpha)?;
        check_argument(beta)?;
        Ok(Self { matrix, alpha, beta })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn polytope(&self, side: Side) -> StrategyPolytope {
        let built = match side {
            Side::Row => StrategyPolytope::new(self.rows(), self.alpha),
            Side::Column => StrategyPolytope::new(self.cols(), self.beta),
        };
        built.expect("game invariants guarantee a valid polytope")
    }

    /// Same arguments, different matrix.
    pub fn with_matrix(&self, matrix: ComplexMatrix) -> Self {
        Self {
            matrix,
            alpha: self.alpha,
            beta: self.beta,
        }
    }

    /// `Re(z* A w)`.
    pub fn payoff(&self, z: &[Complex], w: &[Complex]) -> Result<f64> {
        let aw = self.matrix.mul_vec(w)?;
        if z.len() != self.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.rows(),
                found: z.len(),
            });
        }
        Ok(inner(z, &aw).re)
    }

    /// Payoffs between every pair of extreme points: `table[i][j]` for the
    /// `i`-th row and `j`-th column extreme point in canonical order.
    pub fn pure_payoff_table(&self) -> PayoffTable {
        let rows = self.polytope(Side::Row).extreme_points();
        let cols = self.polytope(Side::Column).extreme_points();
        let a_cols: Vec<Vec<Complex>> = cols
            .iter()
            .map(|(_, d)| self.matrix.mul_vec(d).expect("dimensions agree"))
            .collect();
        let values = rows
            .iter()
            .map(|(_, di)| a_cols.iter().map(|ad| inner(di, ad).re).collect())
            .collect();
        PayoffTable {
            row_index: rows.into_iter().map(|(i, _)| i).collect(),
            col_index: cols.into_iter().map(|(j, _)| j).collect(),
            values,
        }
    }

    pub fn pure_security(&self) -> PureSecurityReport {
        self.pure_payoff_table().security()
    }

    /// Every extreme-point pair satisfying the saddle inequalities.
    pub fn pure_equilibria(&self, tol: &Tolerances) -> Vec<(ExtremePointIndex, ExtremePointIndex)> {
        let table = self.pure_payoff_table();
        let col_max: Vec<f64> = (0..table.col_index.len())
            .map(|j| {
                table
                    .values
                    .iter()
                    .map(|r| r[j])
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect();
        let mut out = Vec::new();
        for (i, row) in table.values.iter().enumerate() {
            let row_min = row.iter().copied().fold(f64::INFINITY, f64::min);
            for (j, &v) in row.iter().enumerate() {
                if v >= col_max[j] - tol.eps_val && v <= row_min + tol.eps_val {
                    out.push((table.row_index[i], table.col_index[j]));
                }
            }
        }
        out
    }

    /// Exact best-response value against `s` over the opponent's extreme
    /// points: for `Side::Row`, `s` is a row strategy and the result is the
    /// minimum over columns; for `Side::Column` the maximum over rows.
    pub fn best_response_envelope(&self, side: Side, s: &[Complex], tol: &Tolerances) -> Result<Envelope> {
        if !self.polytope(side).contains(s, tol)? {
            return Err(Error::NotInPolytope);
        }
        Ok(self.envelope_unchecked(side, s))
    }

    fn envelope_unchecked(&self, side: Side, s: &[Complex]) -> Envelope {
        match side {
            Side::Row => {
                let za = self.matrix.left_mul_conj(s).expect("dimension checked");
                let mut best = Envelope {
                    value: f64::INFINITY,
                    witness: ExtremePointIndex::Trivial(0),
                };
                for (j, d) in self.polytope(Side::Column).extreme_points() {
                    let v: f64 = za.iter().zip(&d).map(|(a, b)| a * b).sum::<Complex>().re;
                    if v < best.value {
                        best = Envelope { value: v, witness: j };
                    }
                }
                best
            }
            Side::Column => {
                let aw = self.matrix.mul_vec(s).expect("dimension checked");
                let mut best = Envelope {
                    value: f64::NEG_INFINITY,
                    witness: ExtremePointIndex::Trivial(0),
                };
                for (i, d) in self.polytope(Side::Row).extreme_points() {
                    let v = inner(&d, &aw).re;
                    if v > best.value {
                        best = Envelope { value: v, witness: i };
                    }
                }
                best
            }
        }
    }

    /// Checks the saddle inequalities of a candidate, reduced to extreme
    /// points on both sides.
    pub fn verify_equilibrium(
        &self,
        z: &[Complex],
        w: &[Complex],
        tol: &Tolerances,
    ) -> Result<VerificationReport> {
        if z.len() != self.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.rows(),
                found: z.len(),
            });
        }
        if w.len() != self.cols() {
            return Err(Error::DimensionMismatch {
                expected: self.cols(),
                found: w.len(),
            });
        }
        let z_member = self.polytope(Side::Row).contains(z, tol)?;
        let w_member = self.polytope(Side::Column).contains(w, tol)?;
        let value = self.payoff(z, w)?;
        let row = self.envelope_unchecked(Side::Row, z);
        let col = self.envelope_unchecked(Side::Column, w);

        let violation = if !z_member {
            Some(Violation::RowNotInPolytope)
        } else if !w_member {
            Some(Violation::ColumnNotInPolytope)
        } else if row.value < value - tol.eps_val {
            Some(Violation::ColumnDeviation {
                witness: row.witness,
                payoff: row.value,
            })
        } else if col.value > value + tol.eps_val {
            Some(Violation::RowDeviation {
                witness: col.witness,
                payoff: col.value,
            })
        } else {
            None
        };
        Ok(VerificationReport {
            passed: violation.is_none(),
            value,
            z_member,
            w_member,
            row_guarantee: row,
            column_cap: col,
            violation,
        })
    }

    /// The game with matrix `kA + cE`.
    pub fn affine_transform(&self, k: f64, shift: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::InvalidParameter(format!("scale k must be > 0, got {k}")));
        }
        if !shift.is_finite() {
            return Err(Error::NonFinite("shift"));
        }
        Ok(self.with_matrix(self.matrix.map(|a| a * k + shift)?))
    }

    pub fn classify(&self, tol: &Tolerances) -> Classification {
        let square = self.matrix.is_square();
        let skew_hermitian = square
            && (0..self.rows()).all(|i| {
                (0..self.cols())
                    .all(|j| (self.matrix.get(i, j) + self.matrix.get(j, i).conj()).norm() <= tol.eps_feas)
            });
        let common_argument = self.alpha == self.beta;
        Classification {
            square,
            skew_hermitian,
            common_argument,
            symmetric: skew_hermitian && common_argument,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PayoffTable {
    pub row_index: Vec<ExtremePointIndex>,
    pub col_index: Vec<ExtremePointIndex>,
    pub values: Vec<Vec<f64>>,
}

impl PayoffTable {
    /// Strict comparisons keep the first (canonical) index on ties.
    pub fn security(&self) -> PureSecurityReport {
        let mut h_low = f64::NEG_INFINITY;
        let mut maximin = 0;
        for (i, row) in self.values.iter().enumerate() {
            let worst = row.iter().copied().fold(f64::INFINITY, f64::min);
            if worst > h_low {
                h_low = worst;
                maximin = i;
            }
        }
        let mut h_high = f64::INFINITY;
        let mut minimax = 0;
        for j in 0..self.col_index.len() {
            let best = self.values.iter().map(|r| r[j]).fold(f64::NEG_INFINITY, f64::max);
            if best < h_high {
                h_high = best;
                minimax = j;
            }
        }
        PureSecurityReport {
            h_low,
            h_high,
            maximin_index: self.row_index[maximin],
            minimax_index: self.col_index[minimax],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PureSecurityReport {
    pub h_low: f64,
    pub h_high: f64,
    pub maximin_index: ExtremePointIndex,
    pub minimax_index: ExtremePointIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub value: f64,
    pub witness: ExtremePointIndex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    RowNotInPolytope,
    ColumnNotInPolytope,
    /// The column player can push the payoff below the candidate value.
    ColumnDeviation {
        witness: ExtremePointIndex,
        payoff: f64,
    },
    /// The row player can raise the payoff above the candidate value.
    RowDeviation {
        witness: ExtremePointIndex,
        payoff: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub value: f64,
    pub z_member: bool,
    pub w_member: bool,
    /// `min_j Re(z* A d^j)`.
    pub row_guarantee: Envelope,
    /// `max_i Re((d^i)* A w)`.
    pub column_cap: Envelope,
    pub violation: Option<Violation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub square: bool,
    pub skew_hermitian: bool,
    pub common_argument: bool,
    pub symmetric: bool,
}
