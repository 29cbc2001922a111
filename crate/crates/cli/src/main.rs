use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use curvewind::invariants::canonical_reference;
use curvewind::{
    build_w_k_curve, compute_invariant, invariance_suite, perturb, validate_generic,
    CurveOnSurface, DeckElement, Error, GroupKind, Tolerance,
};

mod render;

#[derive(Parser)]
#[command(
    name = "curvewind",
    version,
    about = "Winding numbers of closed curves on flat and hyperbolic surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a curve is generic (transverse double points only).
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Compute the winding number for the case of the curve's holonomy.
    Invariants {
        file: PathBuf,
        /// Reference holonomy for non-reversible Klein classes, or `canonical`.
        #[arg(long = "ref")]
        reference: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Build a generic curve with the given holonomy and winding number.
    Construct {
        #[arg(long)]
        surface: GroupKind,
        #[arg(long, allow_hyphen_values = true)]
        holonomy: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        kinks: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Displace every vertex by a bounded pseudo-random amount.
    Perturb {
        file: PathBuf,
        #[arg(long)]
        magnitude: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply random regular-homotopy moves and check the invariant never changes.
    Fuzz {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw the fundamental domain, the projected curve and its double points.
    Render {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        translates: usize,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::MalformedCurve(_) | Error::Parse(_) => 2,
            Error::NonGeneric(_) => 3,
            Error::WrongCase(_)
            | Error::NotReversible
            | Error::ReversibleClass
            | Error::NotConjugate(_)
            | Error::NullHomotopic
            | Error::NotNullHomotopic
            | Error::IdentityHolonomy
            | Error::OrientationReversingHolonomy
            | Error::NonOrientable
            | Error::NonTrivialDifferential
            | Error::ParabolicHolonomy
            | Error::NotParabolic
            | Error::MixedGroups
            | Error::MixedKernels => 4,
            _ => 5,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn read_curve(path: &Path) -> Result<CurveOnSurface, Failure> {
    let text = fs::read_to_string(path).map_err(|e| fail(2, format!("{}: {e}", path.display())))?;
    CurveOnSurface::from_json(&text).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => {
            fs::write(p, format!("{text}\n")).map_err(|e| fail(5, format!("{}: {e}", p.display())))
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli, tol: &Tolerance) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { file, format } => {
            let c = read_curve(&file)?;
            let report = validate_generic(&c, tol)?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                ),
                Format::Text if report.ok => println!("generic"),
                Format::Text => {
                    for v in &report.violations {
                        println!(
                            "{:?} at ({}, {}): {}",
                            v.kind, v.location.x, v.location.y, v.detail
                        );
                    }
                }
            }
            if !report.ok {
                return Err(fail(3, format!("{} violation(s)", report.violations.len())));
            }
        }
        Command::Invariants {
            file,
            reference,
            format,
        } => {
            let c = read_curve(&file)?;
            let reference = match reference.as_deref() {
                None => None,
                Some("canonical") => Some(canonical_reference(c.holonomy())),
                Some(s) => Some(
                    DeckElement::parse(c.group(), s).map_err(|e| fail(4, format!("--ref: {e}")))?,
                ),
            };
            let report = compute_invariant(&c, reference.as_ref(), tol)?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string(&report).expect("report serializes")
                ),
                Format::Text => print!("{report}"),
            }
        }
        Command::Construct {
            surface,
            holonomy,
            kinks,
            seed,
            out,
        } => {
            let t0 = DeckElement::parse(surface, &holonomy)
                .map_err(|e| fail(4, format!("--holonomy: {e}")))?;
            let c = build_w_k_curve(&t0, kinks, seed, tol)?;
            emit(&c.to_json_pretty(), out.as_deref())?;
        }
        Command::Perturb {
            file,
            magnitude,
            seed,
            out,
        } => {
            let c = read_curve(&file)?;
            validate_generic(&c, tol)?;
            let p = perturb(&c, magnitude, seed, tol)?;
            emit(&p.to_json_pretty(), out.as_deref())?;
        }
        Command::Fuzz { file, trials, seed } => {
            let c = read_curve(&file)?;
            let report = invariance_suite(&c, trials, seed, tol)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            if !report.passed() {
                return Err(fail(5, "invariant changed under a regular homotopy"));
            }
        }
        Command::Render {
            file,
            out,
            translates,
        } => {
            let c = read_curve(&file)?;
            let svg = render::svg(&c, translates, tol)?;
            fs::write(&out, svg).map_err(|e| fail(5, format!("{}: {e}", out.display())))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = match Tolerance::from_env() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("curvewind: {e}");
            return ExitCode::from(4);
        }
    };
    match run(cli, &tol) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("curvewind: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
