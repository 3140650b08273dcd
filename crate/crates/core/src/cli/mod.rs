//! The `quasinv` command line. Data goes to stdout, diagnostics to stderr.
//! Exit codes: 0 on success or pass, 1 on a failed verification, 2 on a
//! usage error.

pub mod emit;
pub mod verify;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bipoly::parse_rational_poly;
use crate::dihedral::DihedralSystem;
use crate::error::Error;
use crate::generators::{full_basis, GeneratorSet, Provenance};
use crate::modstruct::freeness_check;
use crate::poincare::{hilbert_from_poincare, poincare};
use crate::quasi::{check_per_line, quasi_dimension};

pub use emit::{emit_latex, emit_text, latex_poly, GeneratorSetJson, SCHEMA_VERSION};
pub use verify::{default_max_degree, verify, CheckResult, Status, VerifyOptions, VerifyReport};

pub const DEFAULT_SEED: u64 = 20240917;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "quasinv", version, about = "Quasi-invariants of dihedral reflection systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Solve,
    Det,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    /// Number of mirror lines M.
    #[arg(long)]
    pub mirrors: u32,
    /// Multiplicity on even-index lines (even M).
    #[arg(long)]
    pub mult_even: Option<u32>,
    /// Multiplicity on odd-index lines (even M).
    #[arg(long)]
    pub mult_odd: Option<u32>,
    /// Single multiplicity (odd M, or both orbits of an even M).
    #[arg(long, conflicts_with_all = ["mult_even", "mult_odd"])]
    pub mult: Option<u32>,
}

impl SystemArgs {
    pub fn system(&self) -> Result<DihedralSystem, String> {
        if self.mirrors == 0 {
            return Err("--mirrors must be at least 1".into());
        }
        let (m, n) = match (self.mult, self.mult_even, self.mult_odd) {
            (Some(m), _, _) => (m, m),
            (None, Some(m), Some(n)) if self.mirrors.is_multiple_of(2) => (m, n),
            (None, _, _) if !self.mirrors.is_multiple_of(2) => {
                return Err(format!("odd --mirrors {} takes a single --mult", self.mirrors))
            }
            _ => return Err("even --mirrors needs --mult-even and --mult-odd (or --mult)".into()),
        };
        DihedralSystem::new(self.mirrors, m, n).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Poincare polynomial of the m-harmonics.
    Poincare {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Hilbert series of the quasi-invariants up to a degree.
    Hilbert {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        max_degree: u32,
        /// Also solve the quasi-invariance system in each degree and compare.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Dimension of the homogeneous quasi-invariants of one degree.
    Dim {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Checks quasi-invariance of a polynomial given in canonical text form.
    Check {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Free basis of the quasi-invariants over the invariants (even M).
    Generators {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_enum, default_value = "solve")]
        method: Method,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Runs every applicable check and emits a JSON report.
    Verify {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Degree bound (default: top Poincare degree plus 2M).
        #[arg(long)]
        max_degree: Option<u32>,
        /// Random polynomials for the checker crosscheck.
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Degree-by-degree freeness of the generators over the invariants (even M).
    Freeness {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

/// How a subcommand ended, before it becomes an exit code.
enum Outcome {
    Pass(String),
    Fail(String),
    Usage(String),
}

fn error_outcome(e: Error) -> Outcome {
    match e {
        Error::InvalidSystem(_)
        | Error::Parse(_)
        | Error::EvenMirrorCount(_)
        | Error::OddMirrorCount(_)
        | Error::InvalidIndex { .. } => Outcome::Usage(e.to_string()),
        other => Outcome::Fail(other.to_string()),
    }
}

fn with_schema(mut v: serde_json::Value, sys: &DihedralSystem) -> String {
    let obj = v.as_object_mut().expect("reports are JSON objects");
    let mut out = serde_json::Map::new();
    out.insert("schema_version".into(), json!(SCHEMA_VERSION));
    out.insert("system".into(), json!(sys));
    for (k, val) in std::mem::take(obj) {
        out.insert(k, val);
    }
    emit::to_json(&serde_json::Value::Object(out))
}

fn render_generators(gens: &GeneratorSet, format: Format) -> String {
    match format {
        Format::Text => emit_text(gens),
        Format::Json => emit::to_json(&GeneratorSetJson::from_set(gens)),
        Format::Latex => emit_latex(gens),
    }
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Poincare { system, format } => {
            let sys = match system.system() {
                Ok(s) => s,
                Err(e) => return Outcome::Usage(e),
            };
            let p = poincare(&sys);
            Outcome::Pass(match format {
                Format::Text => format!("{}\n", p.to_text()),
                Format::Latex => format!("{}\n", p.to_latex()),
                Format::Json => with_schema(
                    json!({"poincare": p.to_text(), "coefficients": p.dense(p.top_degree().unwrap_or(0))}),
                    &sys,
                ),
            })
        }
        Command::Hilbert { system, max_degree, oracle, format } => {
            let sys = match system.system() {
                Ok(s) => s,
                Err(e) => return Outcome::Usage(e),
            };
            let h = hilbert_from_poincare(&poincare(&sys), sys.mirrors, max_degree).dense(max_degree);
            let oracle_dims: Option<Vec<u64>> =
                oracle.then(|| (0..=max_degree).map(|d| quasi_dimension(&sys, d) as u64).collect());
            let mismatches: Vec<u32> = match &oracle_dims {
                Some(o) => (0..=max_degree).filter(|&d| o[d as usize] != h[d as usize]).collect(),
                None => Vec::new(),
            };
            let out = match format {
                Format::Json => with_schema(
                    json!({"max_degree": max_degree, "hilbert": h, "oracle": oracle_dims, "mismatches": mismatches}),
                    &sys,
                ),
                Format::Text | Format::Latex => {
                    let mut s = String::new();
                    for d in 0..=max_degree as usize {
                        match &oracle_dims {
                            Some(o) => s.push_str(&format!("{d} {} {}\n", h[d], o[d])),
                            None => s.push_str(&format!("{d} {}\n", h[d])),
                        }
                    }
                    s
                }
            };
            if mismatches.is_empty() {
                Outcome::Pass(out)
            } else {
                Outcome::Fail(out)
            }
        }
        Command::Dim { system, degree, format } => {
            let sys = match system.system() {
                Ok(s) => s,
                Err(e) => return Outcome::Usage(e),
            };
            let dim = quasi_dimension(&sys, degree);
            Outcome::Pass(match format {
                Format::Json => with_schema(json!({"degree": degree, "dim": dim}), &sys),
                _ => format!("{dim}\n"),
            })
        }
        Command::Check { system, poly, format } => {
            let sys = match system.system() {
                Ok(s) => s,
                Err(e) => return Outcome::Usage(e),
            };
            let p = match parse_rational_poly(&poly) {
                Ok(p) => p,
                Err(e) => return Outcome::Usage(e.to_string()),
            };
            let report = check_per_line(&sys, &p);
            let out = match format {
                Format::Json => with_schema(serde_json::to_value(&report).expect("serializable"), &sys),
                _ => {
                    let mut s = String::from(if report.ok { "pass\n" } else { "fail\n" });
                    for v in &report.violations {
                        s.push_str(&format!(
                            "line {} order {} degree {}: {}\n",
                            v.line, v.order, v.degree, v.residual
                        ));
                    }
                    s
                }
            };
            if report.ok {
                Outcome::Pass(out)
            } else {
                Outcome::Fail(out)
            }
        }
        Command::Generators { system, method, format } => {
            let sys = match system.system() {
                Ok(s) => s,
                Err(e) => return Outcome::Usage(e),
            };
            let provenance = match method {
                Method::Det => Provenance::Determinant,
                _ => Provenance::Solver,
            };
            let gens = match full_basis(&sys, provenance) {
                Ok(g) => g,
                Err(e) => return error_outcome(e),
            };
            if method == Method::Both {
                let det = match full_basis(&sys, Provenance::Determinant) {
                    Ok(g) => g,
                    Err(e) => return error_outcome(e),
                };
                if det.entries != gens.entries {
                    let differing: Vec<String> = gens
                        .entries
                        .iter()
                        .zip(&det.entries)
                        .filter(|(a, b)| a != b)
                        .map(|(a, _)| a.name())
                        .collect();
                    return Outcome::Fail(format!(
                        "{}solver and determinant disagree on {}\n",
                        render_generators(&gens, format),
                        differing.join(", ")
                    ));
                }
            }
            Outcome::Pass(render_generators(&gens, format))
        }
        Command::Verify { system, seed, max_degree, trials } => {
            let sys = match system.system() {
                Ok(s) => s,
                Err(e) => return Outcome::Usage(e),
            };
            let opts = VerifyOptions { seed, max_degree, trials, ..VerifyOptions::default() };
            match verify(&sys, opts) {
                Ok(report) => {
                    let out = emit::to_json(&report);
                    if report.passed() {
                        Outcome::Pass(out)
                    } else {
                        Outcome::Fail(out)
                    }
                }
                Err(e) => error_outcome(e),
            }
        }
        Command::Freeness { system, max_degree, format } => {
            let sys = match system.system() {
                Ok(s) => s,
                Err(e) => return Outcome::Usage(e),
            };
            let gens = match full_basis(&sys, Provenance::Solver) {
                Ok(g) => g,
                Err(e) => return error_outcome(e),
            };
            let d_max = max_degree.unwrap_or_else(|| default_max_degree(&sys));
            let report = freeness_check(&sys, &gens, d_max);
            let out = match format {
                Format::Json => with_schema(serde_json::to_value(&report).expect("serializable"), &sys),
                _ => {
                    let mut s = String::new();
                    for c in &report.degrees {
                        s.push_str(&format!(
                            "{} expected {} oracle {} products {} rank {} {}\n",
                            c.degree,
                            c.expected_dim,
                            c.oracle_dim,
                            c.products,
                            c.span_rank,
                            if c.ok { "ok" } else { "FAIL" }
                        ));
                    }
                    s
                }
            };
            if report.ok {
                Outcome::Pass(out)
            } else {
                Outcome::Fail(out)
            }
        }
    }
}

/// Parses `argv` (program name first), runs the subcommand and writes its
/// output. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let (text, code) = match dispatch(cli.command) {
        Outcome::Pass(s) => (s, EXIT_OK),
        Outcome::Fail(s) => (s, EXIT_FAIL),
        Outcome::Usage(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let _ = out.write_all(text.as_bytes());
    code
}

pub fn main_entry() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
