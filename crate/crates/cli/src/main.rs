//! `cxgame`: load a game file and run one solver stage on it.

mod text;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cxgame::equalizing::{equalizing_equilibrium, solve_equalizing_system};
use cxgame::io::{GameFile, GameFileError};
use cxgame::lp::{build_lcp, lcp_candidate, minimax, verify_lcp};
use cxgame::{domination, solve, Complex, ComplexGame, Method, Side, SolveOptions, Tolerances};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "cxgame",
    version,
    about = "Zero-sum games over complex sector polytopes"
)]
struct Cli {
    /// Value tolerance for verification and comparisons.
    #[arg(long, global = true, value_name = "REAL")]
    tol: Option<f64>,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Solution method for `solve`.
    #[arg(long, global = true, value_parser = ["auto", "equalizing", "lp"], default_value = "auto")]
    method: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions, arguments and classification.
    Info { file: PathBuf },
    /// Pure security levels.
    Security { file: PathBuf },
    /// Pure-strategy equilibria.
    PureNe { file: PathBuf },
    /// Iterated elimination of dominated strategies.
    Eliminate { file: PathBuf },
    /// Equalizing systems of both players.
    Equalize { file: PathBuf },
    /// Full pipeline with a verified certificate.
    Solve { file: PathBuf },
    /// Check a candidate equilibrium.
    Verify {
        file: PathBuf,
        /// Row strategy as a JSON array of [re, im] pairs.
        #[arg(long)]
        z: String,
        /// Column strategy as a JSON array of [re, im] pairs.
        #[arg(long)]
        w: String,
    },
    /// Complementarity form of the game.
    Lcp {
        file: PathBuf,
        /// Verify the candidate built from the LP solution.
        #[arg(long)]
        verify: bool,
        /// Verify this candidate instead, as a JSON array of [re, im] pairs.
        #[arg(long)]
        x: Option<String>,
    },
}

enum Failure {
    Input(String),
    Numeric(String),
}

impl From<GameFileError> for Failure {
    fn from(e: GameFileError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<cxgame::Error> for Failure {
    fn from(e: cxgame::Error) -> Self {
        use cxgame::Error::*;
        match e {
            UnsupportedArgument(_)
            | DimensionMismatch { .. }
            | NonFinite(_)
            | Empty(_)
            | IndexOutOfRange { .. }
            | InvalidParameter(_)
            | NotInPolytope => Failure::Input(e.to_string()),
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

fn load(path: &PathBuf) -> Result<ComplexGame, Failure> {
    Ok(GameFile::load(path)?.to_game()?)
}

fn parse_vector(flag: &str, s: &str) -> Result<Vec<Complex>, Failure> {
    let pairs: Vec<[f64; 2]> =
        serde_json::from_str(s).map_err(|e| Failure::Input(format!("--{flag}: {e}")))?;
    Ok(pairs.into_iter().map(|[re, im]| Complex::new(re, im)).collect())
}

fn emit<T: Serialize>(json: bool, value: &T, render: impl FnOnce(&mut String)) -> String {
    if json {
        serde_json::to_string_pretty(value).expect("reports always serialize")
    } else {
        let mut s = String::new();
        render(&mut s);
        s.trim_end().to_string()
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let mut tol = Tolerances::default();
    if let Some(t) = cli.tol {
        tol = tol.with_eps_val(t)?;
    }
    let method: Method = cli.method.parse()?;
    let j = cli.json;
    Ok(match &cli.command {
        Command::Info { file } => {
            let g = load(file)?;
            let c = g.classify(&tol);
            let value = json!({
                "m": g.rows(),
                "n": g.cols(),
                "alpha": g.alpha(),
                "beta": g.beta(),
                "classification": c,
            });
            emit(j, &value, |out| {
                out.push_str(&format!("m = {}, n = {}\n", g.rows(), g.cols()));
                out.push_str(&format!(
                    "alpha = {}\nbeta = {}\n",
                    text::real(g.alpha()),
                    text::real(g.beta())
                ));
                text::classification(out, &c);
            })
        }
        Command::Security { file } => {
            let g = load(file)?;
            let s = g.pure_security();
            let eqs = g.pure_equilibria(&tol);
            let value = json!({ "security": s, "pure_equilibria": eqs });
            emit(j, &value, |out| {
                text::security(out, &s);
                text::pure_equilibria(out, &eqs);
            })
        }
        Command::PureNe { file } => {
            let g = load(file)?;
            let eqs = g.pure_equilibria(&tol);
            emit(j, &eqs, |out| text::pure_equilibria(out, &eqs))
        }
        Command::Eliminate { file } => {
            let g = load(file)?;
            let (reduced, trace) = domination::iterated_eliminate(&g, &tol)?;
            let value = json!({ "trace": trace, "reduced": reduced.matrix() });
            emit(j, &value, |out| {
                text::trace(out, &trace);
                out.push_str(&format!("reduced matrix: {}\n", text::matrix(reduced.matrix())));
            })
        }
        Command::Equalize { file } => {
            let g = load(file)?;
            let row = solve_equalizing_system(&g, Side::Row, &tol)?;
            let column = solve_equalizing_system(&g, Side::Column, &tol)?;
            let eq = equalizing_equilibrium(&g, &tol)?;
            let value = json!({ "row": row, "column": column, "equilibrium": eq });
            emit(j, &value, |out| {
                text::equalizing(out, "row equalizing", &row);
                text::equalizing(out, "column equalizing", &column);
                match &eq {
                    Some(e) => out.push_str(&format!(
                        "equalizing equilibrium value = {}\n",
                        text::real(e.value)
                    )),
                    None => out.push_str("no equalizing equilibrium\n"),
                }
            })
        }
        Command::Solve { file } => {
            let g = load(file)?;
            let report = solve(&g, &SolveOptions { method, tol })?;
            emit(j, &report, |out| text::solve(out, &report))
        }
        Command::Verify { file, z, w } => {
            let g = load(file)?;
            let z = parse_vector("z", z)?;
            let w = parse_vector("w", w)?;
            let report = g.verify_equilibrium(&z, &w, &tol)?;
            emit(j, &report, |out| text::verification(out, &report))
        }
        Command::Lcp { file, verify, x } => {
            let g = load(file)?;
            let inst = build_lcp(&g);
            let candidate = match (x, verify) {
                (Some(x), _) => Some(parse_vector("x", x)?),
                (None, true) => Some(lcp_candidate(&g, &minimax(&g, &tol)?, &tol)?),
                (None, false) => None,
            };
            let check = match &candidate {
                Some(x) => Some(verify_lcp(&inst, x, &tol)?),
                None => None,
            };
            let value = json!({ "instance": inst, "candidate": candidate, "report": check });
            emit(j, &value, |out| {
                text::lcp(out, &inst);
                if let (Some(x), Some(r)) = (&candidate, &check) {
                    text::lcp_report(out, x, r);
                }
            })
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("numeric failure: {msg}");
            ExitCode::from(2)
        }
    }
}
