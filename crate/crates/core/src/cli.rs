//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::actdim::action_dimension_report;
use crate::builtin::generate_example;
use crate::coxmatrix::{parse_coxeter_matrix, CoxeterMatrix};
use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::homology::betti_profile;
use crate::rootsys::positive_roots;
use crate::simcomplex::{nerve, octahedralize, subdivide, SimplicialComplex};
use crate::verify::{run_suite, suite_matrices, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_LEMMA_VIOLATION: i32 = 2;

/// Generator count above which random matrices are not drawn by `verify`.
pub const VERIFY_RANDOM_GENERATORS: usize = 6;

#[derive(Debug, Parser)]
#[command(
    name = "actdim",
    version,
    about = "Nerves, nested-set subdivisions and action-dimension bounds for Artin groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Coxeter matrix document (JSON).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Treat the K(pi,1) conjecture as holding when no proof applies.
    #[arg(long, global = true)]
    pub assume_kpi1: bool,

    /// Reject inputs with more generators than this.
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_generators: u64,

    /// Seed for the randomized part of `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComplexChoice {
    Nerve,
    Subdivision,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The nerve L: simplices are the nonempty spherical subsets.
    Nerve,
    /// The nested-set subdivision L_⊘.
    Subdivide,
    /// The octahedralization of the nerve or of its subdivision.
    Octahedralize {
        #[arg(long, value_enum, default_value_t = ComplexChoice::Nerve)]
        complex: ComplexChoice,
    },
    /// Reduced mod-2 Betti numbers and top integral cohomology of L and L_⊘.
    Homology,
    /// Positive roots of a spherical subset (all generators by default).
    Roots {
        /// Comma-separated generator names.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<String>>,
    },
    /// Action-dimension bounds.
    Report,
    /// Run the structural checks on the input (if any), the built-in corpus and seeded
    /// random matrices.
    Verify {
        /// Number of random matrices.
        #[arg(long, default_value_t = 100)]
        random: usize,
    },
    /// Print a built-in example document.
    Example {
        /// One of a_N, b_N, d_N, e6, e7, e8, f4, h3, h4, i2_P, raag-cycle-N, pentagon-3,
        /// two-points-inf, rp2-nerve.
        name: String,
    },
}

/// The output document and the exit status it implies.
#[derive(Debug)]
pub struct Outcome {
    pub document: Value,
    pub status: i32,
}

fn read_input(cli: &Cli) -> Result<CoxeterMatrix> {
    let path = cli.input.as_ref().ok_or_else(|| {
        Error::Io(std::io::Error::new(
            std::io::ErrorKind::InvalidInput,
            "this command requires --input",
        ))
    })?;
    let text = std::fs::read_to_string(path)?;
    let m = parse_coxeter_matrix(&text)?;
    check_guard(cli, &m)?;
    Ok(m)
}

fn check_guard(cli: &Cli, m: &CoxeterMatrix) -> Result<()> {
    let limit = usize::try_from(cli.max_generators).unwrap_or(usize::MAX);
    if m.rank() > limit {
        return Err(Error::TooManyGenerators {
            what: "input",
            count: m.rank(),
            limit,
        });
    }
    Ok(())
}

fn names_value(m: &CoxeterMatrix, t: GenSet) -> Value {
    json!(m.subset_names(t))
}

fn complex_document<V>(k: &SimplicialComplex<V>, label: impl FnMut(&V) -> Value) -> Result<Value> {
    let mut doc = k.to_document(label);
    doc["f_vector"] = json!(k.f_vector());
    doc["euler_characteristic"] = json!(k.euler_characteristic());
    Ok(doc)
}

fn round9(x: f64) -> f64 {
    let r = (x * 1e9).round() / 1e9;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Dispatches a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let ok = |document| {
        Ok(Outcome {
            document,
            status: EXIT_OK,
        })
    };
    match &cli.command {
        Command::Example { name } => ok(serde_json::to_value(generate_example(name)?)?),
        Command::Nerve => {
            let m = read_input(cli)?;
            ok(complex_document(&nerve(&m)?, |v| json!(v))?)
        }
        Command::Subdivide => {
            let m = read_input(cli)?;
            ok(complex_document(&subdivide(&m)?, |&t| names_value(&m, t))?)
        }
        Command::Octahedralize { complex } => {
            let m = read_input(cli)?;
            let doc = match complex {
                ComplexChoice::Nerve => complex_document(
                    &octahedralize(&nerve(&m)?),
                    |v| json!({"base": v.base, "sign": v.sign}),
                )?,
                ComplexChoice::Subdivision => complex_document(
                    &octahedralize(&subdivide(&m)?),
                    |v| json!({"base": names_value(&m, v.base), "sign": v.sign}),
                )?,
            };
            ok(doc)
        }
        Command::Homology => {
            let m = read_input(cli)?;
            ok(json!({
                "nerve": betti_profile(&nerve(&m)?)?,
                "subdivision": betti_profile(&subdivide(&m)?)?,
            }))
        }
        Command::Roots { subset } => {
            let m = read_input(cli)?;
            let t = match subset {
                Some(names) => m.subset(names.iter().map(String::as_str))?,
                None => m.all(),
            };
            let roots: Vec<Value> = positive_roots(&m, t)?
                .iter()
                .map(|r| {
                    json!({
                        "coeffs": r.coeffs.iter().map(|&c| round9(c)).collect::<Vec<_>>(),
                        "word": r.word.iter().map(|&s| m.name(s)).collect::<Vec<_>>(),
                        "support": names_value(&m, r.support),
                    })
                })
                .collect();
            ok(json!(roots))
        }
        Command::Report => {
            let m = read_input(cli)?;
            ok(serde_json::to_value(action_dimension_report(
                &m,
                cli.assume_kpi1,
            )?)?)
        }
        Command::Verify { random } => {
            let input = match &cli.input {
                Some(_) => Some(read_input(cli)?),
                None => None,
            };
            let max = VERIFY_RANDOM_GENERATORS
                .min(usize::try_from(cli.max_generators).unwrap_or(usize::MAX));
            let matrices = suite_matrices(input.as_ref(), cli.seed, *random, max);
            let report = run_suite(&matrices, cli.seed, &VerifyOptions::default());
            let status = if report.all_passed {
                EXIT_OK
            } else {
                EXIT_LEMMA_VIOLATION
            };
            Ok(Outcome {
                document: serde_json::to_value(report)?,
                status,
            })
        }
    }
}

pub fn exit_status(error: &Error) -> i32 {
    match error {
        Error::LemmaViolation(_) => EXIT_LEMMA_VIOLATION,
        _ => EXIT_INVALID,
    }
}

fn emit(cli: &Cli, document: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(document)?;
    text.push('\n');
    match &cli.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses `std::env::args`, runs the command and returns the process exit status.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
        }
    };
    let result = run(&cli).and_then(|outcome| {
        emit(&cli, &outcome.document)?;
        Ok(outcome.status)
    });
    match result {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            exit_status(&e)
        }
    }
}
