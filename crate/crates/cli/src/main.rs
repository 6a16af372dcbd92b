//! Command-line front end: generator families, basis-change matrices,
//! membership certificates, decompositions, shape reports and the
//! verification suite, all with exact rational I/O.
//!
//! Exit status: 0 for success / in-cone / all checks passed, 1 for
//! out-of-cone or verification failure, 2 for usage or parse errors.

mod output;
mod vector;
mod verify;

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};

use shapecones::decompose::{decompose_convex_canonical, decompose_via_matrix, membership};
use shapecones::error::Error;
use shapecones::exactnum::{parse_rational, rat, RMatrix};
use shapecones::generators::generators;
use shapecones::matrices::{
    matrix_m, matrix_m_inverse, matrix_n, matrix_n_inverse, matrix_z, matrix_z_inverse,
};
use shapecones::oracle::DEFAULT_EXTREME_RAY_LIMIT;
use shapecones::shapes::classify_with_eps;
use shapecones::{ConeKind, ShapeVector};

#[derive(Parser)]
#[command(
    name = "shapecones",
    version,
    about = "Exact polyhedral cones of positive, monotone, convex and concave vectors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the generator family of a cone
    Gen {
        /// Cone name, e.g. positive_concave or increasing_convex
        #[arg(long)]
        cone: String,
        /// Dimension (n >= 1)
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Factor out the least common denominator and print integer entries
        #[arg(long)]
        common_denominator: bool,
    },
    /// Emit a basis-change matrix or its inverse
    Matrix {
        /// One of M, Minv, N, Ninv, Z, Zinv
        #[arg(long)]
        which: String,
        /// Dimension (n >= 1)
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Factor out the least common denominator and print integer entries
        #[arg(long)]
        common_denominator: bool,
    },
    /// Print a membership certificate for a vector
    Check {
        #[arg(long)]
        cone: String,
        /// Comma-separated entries (integers, p/q fractions or finite
        /// decimals); "-" reads from stdin
        #[arg(long)]
        vector: String,
    },
    /// Print the cone coordinates of a vector with generator labels
    Decompose {
        #[arg(long)]
        cone: String,
        /// Comma-separated entries; "-" reads from stdin
        #[arg(long)]
        vector: String,
    },
    /// Print which shape predicates a vector satisfies
    Predicates {
        /// Comma-separated entries; "-" reads from stdin
        #[arg(long)]
        vector: String,
        /// Relax every defining inequality to >= -eps (exact rational)
        #[arg(long)]
        eps: Option<String>,
    },
    /// Run the structural and extreme-ray verification suite
    Verify {
        /// Largest dimension for the structural checks
        #[arg(long)]
        n: usize,
        /// Dimension cap for extreme-ray certification
        #[arg(long, default_value_t = DEFAULT_EXTREME_RAY_LIMIT)]
        max_extreme_n: usize,
    },
}

/// Usage or parse failure, reported on stderr with exit status 2.
struct UsageError(String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

fn parse_cone(text: &str) -> Result<ConeKind, UsageError> {
    ConeKind::parse(text).ok_or_else(|| {
        let names: Vec<&str> = ConeKind::ALL.iter().map(|k| k.name()).collect();
        UsageError(format!(
            "unknown cone {text:?}; expected one of {}",
            names.join(", ")
        ))
    })
}

fn read_vector(argument: &str) -> Result<ShapeVector, UsageError> {
    let text = if argument == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|e| UsageError(format!("reading stdin: {e}")))?;
        buffer.trim().to_string()
    } else {
        argument.to_string()
    };
    vector::parse_vector(&text).map_err(|e| UsageError(e.to_string()))
}

fn require_dimension(n: usize) -> Result<(), UsageError> {
    if n == 0 {
        return Err(UsageError("--n must be at least 1".into()));
    }
    Ok(())
}

fn matrix_by_name(which: &str, n: usize) -> Result<RMatrix, UsageError> {
    match which {
        "M" => Ok(matrix_m(n)),
        "Minv" => Ok(matrix_m_inverse(n)),
        "N" => Ok(matrix_n(n)),
        "Ninv" => Ok(matrix_n_inverse(n)?),
        "Z" => Ok(matrix_z(n)),
        "Zinv" => Ok(matrix_z_inverse(n)?),
        other => Err(UsageError(format!(
            "unknown matrix {other:?}; expected one of M, Minv, N, Ninv, Z, Zinv"
        ))),
    }
}

fn run(cli: Cli) -> Result<i32, UsageError> {
    match cli.command {
        Command::Gen {
            cone,
            n,
            format,
            common_denominator,
        } => {
            require_dimension(n)?;
            let kind = parse_cone(&cone)?;
            let gens = generators(kind, n)?;
            let rendered = match format {
                Format::Json => output::generator_set_json(&gens, common_denominator),
                Format::Csv => output::generator_set_csv(&gens, common_denominator),
            };
            print!("{rendered}");
            if format == Format::Json {
                println!();
            }
            Ok(0)
        }
        Command::Matrix {
            which,
            n,
            format,
            common_denominator,
        } => {
            require_dimension(n)?;
            let matrix = matrix_by_name(&which, n)?;
            let rendered = match format {
                Format::Json => output::matrix_json(&matrix, common_denominator),
                Format::Csv => output::matrix_csv(&matrix, common_denominator),
            };
            print!("{rendered}");
            if format == Format::Json {
                println!();
            }
            Ok(0)
        }
        Command::Check { cone, vector } => {
            let kind = parse_cone(&cone)?;
            let v = read_vector(&vector)?;
            let certificate = membership(&v, kind);
            println!("{}", output::certificate_json(&certificate));
            Ok(if certificate.is_in_cone() { 0 } else { 1 })
        }
        Command::Decompose { cone, vector } => {
            let kind = parse_cone(&cone)?;
            let v = read_vector(&vector)?;
            if kind.is_simplicial() {
                match decompose_via_matrix(&v, kind) {
                    Ok(d) => {
                        print!(
                            "{}",
                            output::labelled_coefficients(
                                &d.generator_set().labels,
                                &d.coefficients
                            )
                        );
                        Ok(0)
                    }
                    Err(e @ Error::NotInCone { .. }) => {
                        eprintln!("{e}");
                        Ok(1)
                    }
                    Err(e) => Err(e.into()),
                }
            } else {
                match decompose_convex_canonical(&v) {
                    Ok(form) => {
                        print!("{}", output::canonical_text(&form));
                        Ok(0)
                    }
                    Err(e @ Error::NotInCone { .. }) => {
                        eprintln!("{e}");
                        Ok(1)
                    }
                    Err(e) => Err(e.into()),
                }
            }
        }
        Command::Predicates { vector, eps } => {
            let v = read_vector(&vector)?;
            let eps = match eps {
                None => rat(0),
                Some(text) => {
                    let value = parse_rational(&text)
                        .map_err(|e| UsageError(format!("--eps: {e}")))?;
                    if value < rat(0) {
                        return Err(UsageError("--eps must be nonnegative".into()));
                    }
                    value
                }
            };
            let report = classify_with_eps(&v, &eps);
            println!("{}", output::report_json(v.len(), &report));
            Ok(0)
        }
        Command::Verify { n, max_extreme_n } => {
            require_dimension(n)?;
            let mut stdout = std::io::stdout().lock();
            let all_passed = verify::run(n, max_extreme_n, &mut stdout)
                .map_err(|e| UsageError(format!("writing report: {e}")))?;
            Ok(if all_passed { 0 } else { 1 })
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // clap exits 2 on usage errors and 0 for --help/--version.
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(UsageError(message)) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
    }
}
