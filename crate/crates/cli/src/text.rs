//! Human-readable rendering. Reals use 12 significant digits.

use std::fmt::Write;

use cxgame::domination::{DominationClaim, Dominator, EliminationTrace};
use cxgame::equalizing::EqualizingOutcome;
use cxgame::game::{Classification, PureSecurityReport, VerificationReport, Violation};
use cxgame::lp::{ComplexLcpInstance, LcpReport};
use cxgame::{Complex, ComplexMatrix, ExtremePointIndex, Side, SolveReport};

pub fn real(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{}", if x == 0.0 { 0.0 } else { x });
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    } else {
        let s = format!("{x:.11e}");
        let (mant, e) = s.split_once('e').unwrap();
        let mant = mant.trim_end_matches('0').trim_end_matches('.');
        format!("{mant}e{e}")
    }
}

pub fn complex(z: Complex) -> String {
    let im = if z.im.abs() == 1.0 {
        String::new()
    } else {
        real(z.im.abs())
    };
    match (z.re == 0.0, z.im == 0.0) {
        (_, true) => real(z.re),
        (true, false) => format!("{}{im}i", if z.im < 0.0 { "-" } else { "" }),
        _ => format!("{}{}{im}i", real(z.re), if z.im < 0.0 { "-" } else { "+" }),
    }
}

pub fn vector(v: &[Complex]) -> String {
    let parts: Vec<String> = v.iter().map(|&z| complex(z)).collect();
    format!("({})", parts.join(", "))
}

pub fn matrix(a: &ComplexMatrix) -> String {
    let rows: Vec<String> = (0..a.rows())
        .map(|i| {
            let r: Vec<String> = a.row(i).iter().map(|&z| complex(z)).collect();
            format!("[{}]", r.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn axis_name(side: Side) -> &'static str {
    match side {
        Side::Row => "row",
        Side::Column => "column",
    }
}

pub fn classification(out: &mut String, c: &Classification) {
    let yn = |b: bool| if b { "yes" } else { "no" };
    writeln!(out, "square: {}", yn(c.square)).unwrap();
    writeln!(out, "skew-hermitian: {}", yn(c.skew_hermitian)).unwrap();
    writeln!(out, "common argument: {}", yn(c.common_argument)).unwrap();
    writeln!(out, "symmetric: {}", yn(c.symmetric)).unwrap();
}

pub fn security(out: &mut String, s: &PureSecurityReport) {
    writeln!(
        out,
        "h_low = {} (row strategy {})",
        real(s.h_low),
        s.maximin_index
    )
    .unwrap();
    writeln!(
        out,
        "h_high = {} (column strategy {})",
        real(s.h_high),
        s.minimax_index
    )
    .unwrap();
}

pub fn pure_equilibria(out: &mut String, eqs: &[(ExtremePointIndex, ExtremePointIndex)]) {
    if eqs.is_empty() {
        writeln!(out, "pure equilibria: none").unwrap();
    } else {
        let list: Vec<String> = eqs.iter().map(|(i, j)| format!("({i}, {j})")).collect();
        writeln!(out, "pure equilibria: {}", list.join(", ")).unwrap();
    }
}

fn claim(c: &DominationClaim) -> String {
    let axis = axis_name(c.axis);
    let kind = if c.strict { "strictly" } else { "weakly" };
    let by = match &c.dominator {
        Dominator::Single { index } => format!("{axis} {}", index + 1),
        Dominator::Pair {
            first,
            second,
            lambda,
        } => format!(
            "{}*{axis} {} + {}*{axis} {}",
            real(*lambda),
            first + 1,
            real(1.0 - lambda),
            second + 1
        ),
        Dominator::Mixed { strategy } => format!("mixed {axis} strategy {}", vector(strategy)),
    };
    format!("eliminated {axis} {} ({kind} dominated by {by})", c.target + 1)
}

pub fn trace(out: &mut String, t: &EliminationTrace) {
    if t.claims.is_empty() {
        writeln!(out, "no dominated strategies").unwrap();
    }
    for c in &t.claims {
        writeln!(out, "{}", claim(c)).unwrap();
    }
    let one_based = |v: &[usize]| {
        v.iter()
            .map(|k| (k + 1).to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    writeln!(out, "surviving rows: {}", one_based(&t.surviving_rows)).unwrap();
    writeln!(out, "surviving columns: {}", one_based(&t.surviving_cols)).unwrap();
}

pub fn equalizing(out: &mut String, label: &str, o: &EqualizingOutcome) {
    match o {
        EqualizingOutcome::Solved(s) => {
            let name = match s.side {
                Side::Row => "eta",
                Side::Column => "theta",
            };
            writeln!(
                out,
                "{label}: strategy {}, {name} = {}, rank {}, {}",
                vector(&s.strategy),
                complex(s.constant),
                s.rank,
                if s.feasible {
                    "within the argument bound"
                } else {
                    "outside the argument bound"
                }
            )
            .unwrap();
        }
        EqualizingOutcome::Inconsistent { rank, residual } => {
            writeln!(
                out,
                "{label}: inconsistent (rank {rank}, residual {})",
                real(*residual)
            )
            .unwrap();
        }
    }
}

pub fn verification(out: &mut String, v: &VerificationReport) {
    writeln!(out, "verdict: {}", if v.passed { "pass" } else { "fail" }).unwrap();
    writeln!(out, "payoff = {}", real(v.value)).unwrap();
    writeln!(
        out,
        "row guarantee = {} (column reply {})",
        real(v.row_guarantee.value),
        v.row_guarantee.witness
    )
    .unwrap();
    writeln!(
        out,
        "column cap = {} (row reply {})",
        real(v.column_cap.value),
        v.column_cap.witness
    )
    .unwrap();
    match &v.violation {
        None => {}
        Some(Violation::RowNotInPolytope) => {
            writeln!(out, "violation: z is not in the row polytope").unwrap()
        }
        Some(Violation::ColumnNotInPolytope) => {
            writeln!(out, "violation: w is not in the column polytope").unwrap()
        }
        Some(Violation::ColumnDeviation { witness, payoff }) => writeln!(
            out,
            "violation: column reply {witness} lowers the payoff to {}",
            real(*payoff)
        )
        .unwrap(),
        Some(Violation::RowDeviation { witness, payoff }) => writeln!(
            out,
            "violation: row reply {witness} raises the payoff to {}",
            real(*payoff)
        )
        .unwrap(),
    }
}

pub fn solve(out: &mut String, r: &SolveReport) {
    security(out, &r.pure);
    pure_equilibria(out, &r.pure_equilibria);
    if let Some(t) = &r.trace {
        trace(out, t);
    }
    if let Some(stage) = &r.equalizing {
        writeln!(out, "reduced matrix: {}", matrix(&stage.matrix)).unwrap();
        equalizing(out, "row equalizing", &stage.row);
        equalizing(out, "column equalizing", &stage.column);
        match &stage.equilibrium {
            Some(eq) => writeln!(out, "reduced-game value = {}", real(eq.value)).unwrap(),
            None => writeln!(out, "reduced game: no equalizing equilibrium").unwrap(),
        }
        if let Some(v) = &stage.original_verification {
            writeln!(
                out,
                "padded reduced solution on the full game: {}",
                if v.passed { "pass" } else { "fail" }
            )
            .unwrap();
        }
    }
    for v in &r.elimination_conditions {
        writeln!(
            out,
            "condition of elimination for claim {}: Im {} (eliminated) vs {} (dominator): {}",
            v.claim + 1,
            real(v.target_im),
            real(v.dominator_im),
            if v.met { "met" } else { "not met" }
        )
        .unwrap();
    }
    if let Some(lp) = &r.lp {
        writeln!(
            out,
            "LP: v_low = {}, v_high = {}, gap = {}",
            real(lp.v_low),
            real(lp.v_high),
            real(lp.gap)
        )
        .unwrap();
    }
    let c = r.final_certificate();
    writeln!(out, "value = {} (certified by {})", real(c.value), c.method).unwrap();
    writeln!(out, "z = {}", vector(&c.z)).unwrap();
    writeln!(out, "w = {}", vector(&c.w)).unwrap();
    writeln!(out, "fair: {}", if c.fair { "yes" } else { "no" }).unwrap();
}

pub fn lcp(out: &mut String, inst: &ComplexLcpInstance) {
    writeln!(out, "dimension: {}", inst.dim()).unwrap();
    writeln!(out, "M = {}", matrix(&inst.m)).unwrap();
    writeln!(out, "q = {}", vector(&inst.q)).unwrap();
    let g: Vec<String> = inst.gamma.iter().map(|&x| real(x)).collect();
    writeln!(out, "gamma = ({})", g.join(", ")).unwrap();
}

pub fn lcp_report(out: &mut String, x: &[Complex], r: &LcpReport) {
    writeln!(out, "x = {}", vector(x)).unwrap();
    writeln!(out, "y = {}", vector(&r.y)).unwrap();
    writeln!(out, "complementarity residual = {}", real(r.complementarity)).unwrap();
    let one_based = |v: &[usize]| {
        v.iter()
            .map(|k| (k + 1).to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    if !r.x_violations.is_empty() {
        writeln!(out, "x outside its cone at: {}", one_based(&r.x_violations)).unwrap();
    }
    if !r.y_violations.is_empty() {
        writeln!(out, "y outside its cone at: {}", one_based(&r.y_violations)).unwrap();
    }
    writeln!(out, "verdict: {}", if r.passed { "pass" } else { "fail" }).unwrap();
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(real(2.4), "2.4");
        assert_eq!(real((7.0 - 3f64.sqrt()) / 4.0), "1.31698729811");
        assert_eq!(real(1.0 / 3.0), "0.333333333333");
        assert_eq!(real(-1234.5), "-1234.5");
        assert_eq!(real(1e-9), "1e-9");
        assert_eq!(real(0.0), "0");
        assert_eq!(real(-1e-20), "-1e-20");
    }

    #[test]
    fn complex_forms() {
        assert_eq!(complex(Complex::new(0.4, 0.2)), "0.4+0.2i");
        assert_eq!(complex(Complex::new(0.6, -0.2)), "0.6-0.2i");
        assert_eq!(complex(Complex::new(0.0, -1.0)), "-i");
        assert_eq!(complex(Complex::new(1.0, 1.0)), "1+i");
        assert_eq!(complex(Complex::new(3.0, 0.0)), "3");
    }
}
