//! The full solution pipeline: pure saddle check, iterated elimination,
//! equalizing strategies on the reduced game, and a full-matrix LP fallback.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::domination::{
    check_elimination_condition, iterated_eliminate, ConditionVerdict, EliminationTrace,
};
use crate::equalizing::{
    equalizing_equilibrium, solve_equalizing_system, EqualizingEquilibrium, EqualizingOutcome,
};
use crate::error::{Error, Result};
use crate::game::{Classification, ComplexGame, PureSecurityReport, Side, VerificationReport};
use crate::lp::embed::{minimax, MinimaxResult};
use crate::numerics::{Complex, ComplexMatrix, Tolerances};
use crate::polytope::ExtremePointIndex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    #[default]
    Auto,
    Equalizing,
    Lp,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Method::Auto),
            "equalizing" => Ok(Method::Equalizing),
            "lp" => Ok(Method::Lp),
            other => Err(Error::InvalidParameter(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SolveOptions {
    pub method: Method,
    pub tol: Tolerances,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateMethod {
    Pure,
    Equalizing,
    Lp,
}

impl fmt::Display for CertificateMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateMethod::Pure => "pure",
            CertificateMethod::Equalizing => "equalizing",
            CertificateMethod::Lp => "lp",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub value: f64,
    pub z: Vec<Complex>,
    pub w: Vec<Complex>,
    pub method: CertificateMethod,
    pub verified: bool,
    pub fair: bool,
    pub verification: VerificationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedStage {
    pub matrix: ComplexMatrix,
    pub row: EqualizingOutcome,
    pub column: EqualizingOutcome,
    pub equilibrium: Option<EqualizingEquilibrium>,
    /// Reduced-game candidate zero-padded to the original dimensions.
    pub padded: Option<(Vec<Complex>, Vec<Complex>)>,
    /// Verification of the padded candidate against the original game.
    pub original_verification: Option<VerificationReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub classification: Classification,
    pub pure: PureSecurityReport,
    pub pure_equilibria: Vec<(ExtremePointIndex, ExtremePointIndex)>,
    pub trace: Option<EliminationTrace>,
    pub equalizing: Option<ReducedStage>,
    pub elimination_conditions: Vec<ConditionVerdict>,
    pub lp: Option<MinimaxResult>,
    pub certificate: Option<Certificate>,
}

fn certify(
    g: &ComplexGame,
    z: Vec<Complex>,
    w: Vec<Complex>,
    method: CertificateMethod,
    tol: &Tolerances,
) -> Result<Certificate> {
    let verification = g.verify_equilibrium(&z, &w, tol)?;
    Ok(Certificate {
        value: verification.value,
        fair: verification.value.abs() <= tol.eps_val,
        verified: verification.passed,
        z,
        w,
        method,
        verification,
    })
}

/// Runs the pipeline on `g`. Every returned report carries a certificate
/// verified against the original game; failures to verify are errors.
pub fn solve(g: &ComplexGame, options: &SolveOptions) -> Result<SolveReport> {
    let tol = &options.tol;
    tol.validate()?;
    let mut report = SolveReport {
        classification: g.classify(tol),
        pure: g.pure_security(),
        pure_equilibria: g.pure_equilibria(tol),
        trace: None,
        equalizing: None,
        elimination_conditions: Vec::new(),
        lp: None,
        certificate: None,
    };

    if options.method == Method::Auto && report.pure.h_high - report.pure.h_low <= tol.eps_val {
        if let Some(&(i, j)) = report.pure_equilibria.first() {
            let z = g.polytope(Side::Row).extreme_point(i)?;
            let w = g.polytope(Side::Column).extreme_point(j)?;
            let cert = certify(g, z, w, CertificateMethod::Pure, tol)?;
            if cert.verified {
                return report.finish(cert, tol);
            }
        }
    }

    if options.method != Method::Lp {
        let (reduced, trace) = iterated_eliminate(g, tol)?;
        let row = solve_equalizing_system(&reduced, Side::Row, tol)?;
        let column = solve_equalizing_system(&reduced, Side::Column, tol)?;
        let equilibrium = equalizing_equilibrium(&reduced, tol)?;
        let mut stage = ReducedStage {
            matrix: reduced.matrix().clone(),
            row,
            column,
            equilibrium: equilibrium.clone(),
            padded: None,
            original_verification: None,
        };
        let mut accepted = None;
        if let Some(eq) = &equilibrium {
            let z = trace.pad_row(eq.z())?;
            let w = trace.pad_col(eq.w())?;
            let verdicts = check_elimination_condition(g, &trace, &z, &w, tol)?;
            let conditions_met = verdicts.iter().all(|v| v.met);
            let cert = certify(g, z.clone(), w.clone(), CertificateMethod::Equalizing, tol)?;
            stage.padded = Some((z, w));
            stage.original_verification = Some(cert.verification.clone());
            report.elimination_conditions = verdicts;
            if conditions_met && cert.verified {
                accepted = Some(cert);
            }
        }
        report.trace = Some(trace);
        report.equalizing = Some(stage);
        if let Some(cert) = accepted {
            return report.finish(cert, tol);
        }
        if options.method == Method::Equalizing {
            return Err(Error::NoCertificate("equalizing"));
        }
    }

    let lp = minimax(g, tol)?;
    let cert = certify(g, lp.z_opt.clone(), lp.w_opt.clone(), CertificateMethod::Lp, tol)?;
    report.lp = Some(lp);
    if !cert.verified {
        return Err(Error::Inconsistent(format!(
            "LP strategies failed verification: {:?}",
            cert.verification.violation
        )));
    }
    report.finish(cert, tol)
}

impl SolveReport {
    fn finish(mut self, cert: Certificate, tol: &Tolerances) -> Result<Self> {
        let v = cert.value;
        if v < self.pure.h_low - tol.eps_val || v > self.pure.h_high + tol.eps_val {
            return Err(Error::Inconsistent(format!(
                "value {v} outside the pure security interval [{}, {}]",
                self.pure.h_low, self.pure.h_high
            )));
        }
        self.certificate = Some(cert);
        Ok(self)
    }

    /// The accepted certificate. Always present on reports returned by [`solve`].
    pub fn final_certificate(&self) -> &Certificate {
        self.certificate
            .as_ref()
            .expect("solve always attaches a certificate")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::c;
    use std::f64::consts::PI;

    fn example() -> ComplexGame {
        let a = ComplexMatrix::from_rows(vec![
            vec![c(2.0, 0.0), c(1.0, 1.0), c(5.0, 2.0)],
            vec![c(3.0, 1.0), c(3.0, 0.0), c(4.0, -1.0)],
        ])
        .unwrap();
        ComplexGame::new(a, PI / 4.0, 5.0 * PI / 12.0).unwrap()
    }

    #[test]
    fn example_falls_back_to_lp() {
        let r = solve(&example(), &SolveOptions::default()).unwrap();
        assert_eq!(r.final_certificate().method, CertificateMethod::Lp);
        assert!(r.final_certificate().verified);
        assert_eq!(r.trace.as_ref().unwrap().claims.len(), 1);
        let eq = r.equalizing.as_ref().unwrap().equilibrium.as_ref().unwrap();
        assert!((eq.value - 2.4).abs() < 1e-12);
        assert_eq!(r.elimination_conditions.len(), 1);
        assert!(!r.elimination_conditions[0].met);
        let h = (7.0 - 3f64.sqrt()) / 4.0;
        assert!(r.final_certificate().value >= h - 1e-7 && r.final_certificate().value <= 3.0 + 1e-7);
    }

    #[test]
    fn constant_game_is_pure() {
        let g = ComplexGame::new(ComplexMatrix::ones(2, 2).unwrap(), 0.5, 0.5).unwrap();
        let r = solve(&g, &SolveOptions::default()).unwrap();
        assert_eq!(r.final_certificate().method, CertificateMethod::Pure);
        assert_eq!(r.final_certificate().value, 1.0);
    }

    #[test]
    fn real_two_by_two_is_equalizing() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[1.0, 0.0]]).unwrap();
        let g = ComplexGame::new(a, PI / 4.0, PI / 4.0).unwrap();
        let r = solve(&g, &SolveOptions::default()).unwrap();
        assert_eq!(r.final_certificate().method, CertificateMethod::Equalizing);
        assert!((r.final_certificate().value - 2.0 / 3.0).abs() < 1e-12);
        assert!(r.elimination_conditions.is_empty());
    }

    #[test]
    fn forced_methods() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[1.0, 0.0]]).unwrap();
        let g = ComplexGame::new(a, PI / 4.0, PI / 4.0).unwrap();
        let lp = solve(
            &g,
            &SolveOptions {
                method: Method::Lp,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(lp.final_certificate().method, CertificateMethod::Lp);
        assert!(lp.trace.is_none());
        let forced = solve(
            &example(),
            &SolveOptions {
                method: Method::Equalizing,
                ..Default::default()
            },
        );
        assert_eq!(forced, Err(Error::NoCertificate("equalizing")));
        assert_eq!("lp".parse::<Method>().unwrap(), Method::Lp);
        assert!("simplex".parse::<Method>().is_err());
    }
}
