//! `expcone`: command-line front end. Reports go to stdout as JSON.
//! Exit status: 0 success, 1 domain error (or a failed check), 2 parse,
//! usage or I/O error.

use std::fmt::Debug;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use expcone_core::catalog;
use expcone_core::covering::shift_quotient_example;
use expcone_core::distortion::{build_model, cayley_ball, classify_growth, distortion_curve};
use expcone_core::exactmath::parse_rational;
use expcone_core::exprad::dyadic_scales;
use expcone_core::formats::{
    parse_algebra, parse_fibered, parse_matrices, parse_metric_space, parse_split_torus, AlgebraInputError,
    InputError, ParseError,
};
use expcone_core::liealg::LieAlgebra;
use expcone_core::padic::{property_harness_parallel, PadicContext};
use expcone_core::report::{self, Report};

#[derive(Parser)]
#[command(name = "expcone", version, about = "Cone dimensions, exponential radicals and metric checks for Lie groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an algebra file and check the Jacobi identity.
    Validate { file: String },
    /// Series, radicals, Cartan subalgebra, growth class, triangulability.
    Analyze { file: String },
    /// Exponential radical and the quotient by it.
    Exprad { file: String },
    /// Dimension of the asymptotic cone.
    Conedim { file: String },
    /// Whether the group quasi-isometrically embeds into a CAT(0) space.
    Cat0 { file: String },
    /// Cartan section data and its BCH correction term.
    Section { file: String },
    /// Probe the lift estimate of the Cartan section at dyadic scales.
    Liftprobe {
        file: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Scales 2^0..=2^K.
        #[arg(long, default_value_t = 12)]
        scales: u32,
        #[arg(long, default_value_t = 16)]
        samples: usize,
    },
    /// p-adic triangular groups.
    Padic {
        #[command(subcommand)]
        command: PadicCommand,
    },
    /// Distortion curve of the designated subgroup of a group model.
    Distortion {
        #[arg(long)]
        model: String,
        #[arg(long)]
        radius: u32,
        /// CSV destination; without it the CSV goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ball growth of a group model.
    Growth {
        #[arg(long)]
        model: String,
        #[arg(long)]
        radius: u32,
    },
    /// Minimal covering multiplicity of a finite metric space at a scale.
    Covdim {
        file: String,
        #[arg(long)]
        scale: String,
    },
    /// Fiberwise refinement of base coverings.
    Burillo { file: String },
    /// Parallel-fiber slack of a truncated group quotient onto its shift.
    Quotient {
        #[arg(long)]
        model: String,
        #[arg(long)]
        radius: u32,
    },
    /// Built-in algebras.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Subcommand)]
enum PadicCommand {
    /// Exact property checks on random triangular matrices.
    Check {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (the report does not depend on it).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Norms and length of the matrices in a file.
    Length {
        #[arg(long)]
        prime: u64,
        file: String,
    },
    /// Cone dimension from split-torus data.
    Conedim { file: String },
}

#[derive(Subcommand)]
enum CatalogCommand {
    List,
    Emit { name: String },
}

enum Failure {
    /// Exit 1.
    Domain(String),
    /// Exit 2.
    Input(String),
}

/// `Kind: message`, the kind being the error variant name.
fn domain<E: Debug + std::fmt::Display>(e: E) -> Failure {
    let dbg = format!("{e:?}");
    let kind: String = dbg.chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect();
    Failure::Domain(format!("{kind}: {e}"))
}

fn parse_failure(source: &str, e: ParseError) -> Failure {
    Failure::Input(format!("{source}:{}:{}: {}", e.line, e.column, e.message))
}

fn input_failure<E: Debug + std::fmt::Display + std::error::Error>(source: &str, e: InputError<E>) -> Failure {
    match e {
        InputError::Parse(p) => parse_failure(source, p),
        InputError::Domain(d) => domain(d),
    }
}

/// File contents, or the embedded text for `catalog:<name>`.
fn read_input(source: &str) -> Result<String, Failure> {
    if let Some(name) = source.strip_prefix("catalog:") {
        return catalog::entry(name)
            .map(|e| e.text.to_string())
            .ok_or_else(|| Failure::Input(format!("unknown catalog algebra `{name}`")));
    }
    std::fs::read_to_string(source).map_err(|e| Failure::Input(format!("{source}: {e}")))
}

fn load_algebra(source: &str) -> Result<(String, LieAlgebra), Failure> {
    let text = read_input(source)?;
    match parse_algebra(&text) {
        Ok(g) => Ok((text, g)),
        Err(AlgebraInputError::Parse(e)) => Err(parse_failure(source, e)),
        Err(AlgebraInputError::Lie(e)) => Err(domain(e)),
    }
}

enum Output {
    Report(Report),
    /// Report whose checks failed: printed, exit 1.
    Failed(Report),
    Text(String),
}

fn run(cli: Cli) -> Result<Output, Failure> {
    use Command::*;
    let out = match cli.command {
        Validate { file } => {
            let (text, g) = load_algebra(&file)?;
            report::validate_report_for(&format!("validate {file}"), text.as_bytes(), &g)
        }
        Analyze { file } => {
            let (text, g) = load_algebra(&file)?;
            report::analyze_report(&format!("analyze {file}"), text.as_bytes(), &g).map_err(domain)?
        }
        Exprad { file } => {
            let (text, g) = load_algebra(&file)?;
            report::exprad_report(&format!("exprad {file}"), text.as_bytes(), &g).map_err(domain)?
        }
        Conedim { file } => {
            let (text, g) = load_algebra(&file)?;
            report::conedim_report(&format!("conedim {file}"), text.as_bytes(), &g).map_err(domain)?
        }
        Cat0 { file } => {
            let (text, g) = load_algebra(&file)?;
            report::cat0_report(&format!("cat0 {file}"), text.as_bytes(), &g).map_err(domain)?
        }
        Section { file } => {
            let (text, g) = load_algebra(&file)?;
            report::section_report(&format!("section {file}"), text.as_bytes(), &g).map_err(domain)?
        }
        Liftprobe {
            file,
            seed,
            scales,
            samples,
        } => {
            if scales > 40 {
                return Err(Failure::Input("--scales must be at most 40".into()));
            }
            let (text, g) = load_algebra(&file)?;
            let cmd = format!("liftprobe {file} --seed {seed} --scales {scales} --samples {samples}");
            report::liftprobe_report(&cmd, text.as_bytes(), &g, seed, &dyadic_scales(scales), samples)
                .map_err(domain)?
        }
        Padic { command } => return run_padic(command),
        Distortion { model, radius, out } => {
            let m = build_model(&model).map_err(domain)?;
            let table = cayley_ball(&m, radius).map_err(domain)?;
            let curve = distortion_curve(&m, &table);
            let cmd = format!("distortion --model {model} --radius {radius}");
            match out {
                None => return Ok(Output::Text(curve.to_csv())),
                Some(path) => {
                    std::fs::write(&path, curve.to_csv())
                        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    report::distortion_report(&cmd, &curve).map_err(domain)?
                }
            }
        }
        Growth { model, radius } => {
            let m = build_model(&model).map_err(domain)?;
            let table = cayley_ball(&m, radius).map_err(domain)?;
            let g = classify_growth(&table);
            report::growth_report(&format!("growth --model {model} --radius {radius}"), &model, radius, &g)
        }
        Covdim { file, scale } => {
            let text = read_input(&file)?;
            let space = parse_metric_space(&text).map_err(|e| input_failure(&file, e))?;
            let r = parse_rational(&scale).ok_or_else(|| Failure::Input(format!("invalid scale `{scale}`")))?;
            report::covdim_report(&format!("covdim {file} --scale {scale}"), text.as_bytes(), &space, &r)
                .map_err(domain)?
        }
        Burillo { file } => {
            let text = read_input(&file)?;
            let fibered = parse_fibered(&text).map_err(|e| input_failure(&file, e))?;
            let r = report::burillo_report(&format!("burillo {file}"), text.as_bytes(), &fibered).map_err(domain)?;
            if r.results()["passed"] != true {
                return Ok(Output::Failed(r));
            }
            r
        }
        Quotient { model, radius } => {
            let e = shift_quotient_example(&model, radius).map_err(domain)?;
            report::quotient_report(&format!("quotient --model {model} --radius {radius}"), &model, radius, &e)
        }
        Catalog { command } => {
            return Ok(Output::Text(match command {
                CatalogCommand::List => catalog::CATALOG
                    .iter()
                    .map(|e| format!("{:<22}{}\n", e.name, e.summary))
                    .collect(),
                CatalogCommand::Emit { name } => catalog::entry(&name)
                    .ok_or_else(|| Failure::Input(format!("unknown catalog algebra `{name}`")))?
                    .text
                    .to_string(),
            }))
        }
    };
    Ok(Output::Report(out))
}

fn run_padic(command: PadicCommand) -> Result<Output, Failure> {
    Ok(match command {
        PadicCommand::Check {
            prime,
            size,
            samples,
            seed,
            threads,
        } => {
            let ctx = PadicContext::new(prime, size).map_err(domain)?;
            let workers = threads
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
                .max(1);
            let rep = property_harness_parallel(ctx, samples, seed, workers);
            let cmd = format!("padic check --prime {prime} --size {size} --samples {samples} --seed {seed}");
            let r = report::padic_check_report(&cmd, &rep);
            if rep.passed() {
                Output::Report(r)
            } else {
                Output::Failed(r)
            }
        }
        PadicCommand::Length { prime, file } => {
            let text = read_input(&file)?;
            let mats = parse_matrices(&text).map_err(|e| parse_failure(&file, e))?;
            Output::Report(
                report::padic_length_report(&format!("padic length --prime {prime} {file}"), text.as_bytes(), prime, &mats)
                    .map_err(domain)?,
            )
        }
        PadicCommand::Conedim { file } => {
            let text = read_input(&file)?;
            let data = parse_split_torus(&text).map_err(|e| parse_failure(&file, e))?;
            Output::Report(
                report::padic_conedim_report(&format!("padic conedim {file}"), text.as_bytes(), &data).map_err(domain)?,
            )
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Output::Report(r)) => {
            print!("{}", r.to_json());
            ExitCode::SUCCESS
        }
        Ok(Output::Failed(r)) => {
            print!("{}", r.to_json());
            ExitCode::from(1)
        }
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
