//! Command-line frontend. [`run`] is the whole program minus process I/O, so
//! tests can drive it directly.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::catalog::{projective_poincare, Catalog};
use crate::identities::{blowup_delta, check_names, CheckKind, CheckResult, Suite, CHECKS};
use crate::poly::format::PolyJson;
use crate::series::{hilb_poincare_with_max, DEFAULT_MAX_POINTS};
use crate::{emit_json, emit_latex, emit_plain, parse_poly, IntPoly};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Plain,
    Latex,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "simpson-betti",
    version,
    about = "Exact Poincaré polynomials of moduli spaces"
)]
struct Args {
    /// Output format for polynomials and reports.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,
    /// Largest number of points for Hilbert-scheme computations.
    #[arg(long = "max-hilb", global = true, default_value_t = DEFAULT_MAX_POINTS)]
    max_hilb: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Poincaré polynomial of projective space P_N.
    Projective { n: usize },
    /// Poincaré polynomial of the Hilbert scheme of L points on P2.
    Hilb { l: usize },
    /// Poincaré polynomial of the Kronecker moduli N(3; M, N).
    Kron { m: usize, n: usize },
    /// Poincaré polynomial of the Simpson moduli space M_{Dm+1}(P2), D <= 6.
    Simpson { d: u32 },
    /// P_M(D) divided by the Poincaré polynomial of P_{3D-1}.
    Quotient { d: u32 },
    /// P(Hilb^l) - P(N(3; D-2, D-1)) with l = (D-2)(D-1)/2.
    Diff { d: u32 },
    /// POLY * (P(P_{CODIM-1}) - 1).
    BlowupDelta {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        codim: usize,
    },
    /// Whether POLY_A divides POLY_B over the rationals.
    Divides {
        #[arg(allow_hyphen_values = true)]
        poly_a: String,
        #[arg(allow_hyphen_values = true)]
        poly_b: String,
    },
    /// Run identity checks; exits 1 if any selected check fails.
    Verify {
        /// Run only this check (repeatable).
        #[arg(long = "check", value_name = "NAME")]
        checks: Vec<String>,
        /// List check names and exit.
        #[arg(long)]
        list: bool,
    },
}

/// Exit code and captured output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let fmt = args.format;
    let poly_out = |p: IntPoly| Outcome::ok(format!("{}\n", render(&p, fmt)));
    let parse = |s: &str| parse_poly::<num_bigint::BigInt>(s).map_err(|e| format!("{s:?}: {e}"));

    match args.command {
        Command::Projective { n } => poly_out(projective_poincare(n)),
        Command::Hilb { l } => match hilb_poincare_with_max(l, args.max_hilb) {
            Ok(p) => poly_out(p),
            Err(e) => Outcome::usage(e),
        },
        Command::Kron { m, n } => match Suite::new(Catalog::builtin()).kron(m, n) {
            Ok(p) => poly_out(p),
            Err(e) => Outcome::usage(e),
        },
        Command::Simpson { d } => match Catalog::builtin().simpson_poincare(d) {
            Ok(p) => poly_out(p),
            Err(e) => Outcome::usage(e),
        },
        Command::Quotient { d } => match Catalog::builtin().simpson_quotient(d) {
            Ok(p) => poly_out(p),
            Err(e) => Outcome::usage(e),
        },
        Command::Diff { d } => {
            match Suite::new(Catalog::builtin())
                .with_max_hilb(args.max_hilb)
                .difference(d)
            {
                Ok(p) => poly_out(p),
                Err(e) => Outcome::usage(e),
            }
        }
        Command::BlowupDelta { poly, codim } => {
            match parse(&poly)
                .map_err(|e| e.to_string())
                .and_then(|p| blowup_delta(&p, codim).map_err(|e| e.to_string()))
            {
                Ok(p) => poly_out(p),
                Err(e) => Outcome::usage(e),
            }
        }
        Command::Divides { poly_a, poly_b } => {
            let result = parse(&poly_a).and_then(|a| {
                let b = parse(&poly_b)?;
                a.divides(&b).map_err(|e| e.to_string())
            });
            match result {
                Ok(v) => Outcome::ok(format!("{v}\n")),
                Err(e) => Outcome::usage(e),
            }
        }
        Command::Verify { checks, list } => verify(&checks, list, fmt, args.max_hilb),
    }
}

fn render(p: &IntPoly, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Plain => emit_plain(p),
        OutputFormat::Latex => emit_latex(p),
        OutputFormat::Json => emit_json(p),
    }
}

#[derive(Serialize)]
struct CheckJson<'a> {
    name: &'a str,
    passed: bool,
    kind: &'static str,
    anchor: &'a str,
    lhs: PolyJson,
    rhs: PolyJson,
    residual: PolyJson,
    detail: Option<&'a str>,
}

impl<'a> From<&'a CheckResult> for CheckJson<'a> {
    fn from(r: &'a CheckResult) -> Self {
        CheckJson {
            name: &r.name,
            passed: r.passed,
            kind: match r.kind {
                CheckKind::Identity => "identity",
                CheckKind::Predicate => "predicate",
            },
            anchor: &r.anchor,
            lhs: (&r.lhs).into(),
            rhs: (&r.rhs).into(),
            residual: (&r.residual).into(),
            detail: r.detail.as_deref(),
        }
    }
}

fn verify(selected: &[String], list: bool, fmt: OutputFormat, max_hilb: usize) -> Outcome {
    if list {
        let out = match fmt {
            OutputFormat::Json => {
                let names: Vec<_> = check_names().collect();
                serde_json::to_string(&names).expect("plain data") + "\n"
            }
            _ => CHECKS
                .iter()
                .map(|(n, a)| format!("{n:<18} {a}\n"))
                .collect(),
        };
        return Outcome::ok(out);
    }
    let suite = Suite::new(Catalog::builtin()).with_max_hilb(max_hilb);
    let results: Vec<CheckResult> = if selected.is_empty() {
        suite.run_all()
    } else {
        let mut v = Vec::new();
        for name in selected {
            match suite.run_check(name) {
                Ok(r) => v.push(r),
                Err(e) => return Outcome::usage(e),
            }
        }
        v
    };
    let passed = results.iter().filter(|r| r.passed).count();
    let stdout = match fmt {
        OutputFormat::Json => {
            let rows: Vec<CheckJson> = results.iter().map(CheckJson::from).collect();
            serde_json::to_string(&rows).expect("plain data") + "\n"
        }
        _ => {
            let mut s: String = results.iter().map(|r| r.report() + "\n").collect();
            s.push_str(&format!("{passed}/{} checks passed\n", results.len()));
            s
        }
    };
    Outcome {
        code: if passed == results.len() { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    }
}
