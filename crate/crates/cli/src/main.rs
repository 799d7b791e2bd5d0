//! `halfderiv`: command-line front end for the verifier.

mod report;
mod source;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use halfderiv::algebra::{check_grading, check_jacobi, check_skew, Window};
use halfderiv::deriv::solve_derivations;
use halfderiv::dsl::{parse_product, render_algebra};
use halfderiv::tpa::{check_tpa, theorem_product, SupportSeq};
use halfderiv::{Error, Rational};

use crate::report::Rendered;
use crate::source::{load_algebra, parse_params};

#[derive(Parser, Debug)]
#[command(name = "halfderiv", version, about = "Exact verification of half-derivations and transposed Poisson structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List catalog entries and their parameters.
    List,
    /// Check skew-symmetry, grading and the Jacobi identity on a window.
    Validate {
        /// `builtin:NAME?lambda=..,mu=..` or a .liealg file.
        src: String,
        #[command(flatten)]
        params: ParamsArg,
        /// Largest displayed index checked.
        #[arg(long, default_value_t = 5)]
        neq: i64,
    },
    /// Solve for delta-derivations degree by degree.
    SolveDeriv {
        src: String,
        #[command(flatten)]
        params: ParamsArg,
        /// Displayed degree range `a..b`, inclusive.
        #[arg(long, allow_hyphen_values = true)]
        degrees: String,
        #[arg(long, value_enum, default_value_t = Step::Half)]
        step: Step,
        /// Largest displayed index used for equations.
        #[arg(long, default_value_t = 8)]
        neq: i64,
        /// Largest displayed index of the reported interior.
        #[arg(long, default_value_t = 3)]
        ncore: i64,
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        delta: String,
        /// Expected dimensions, e.g. `0:1,1/2:0`. Any mismatch exits with 1.
        #[arg(long, allow_hyphen_values = true)]
        expect: Option<String>,
    },
    /// Check a commutative product for the transposed Poisson identities.
    CheckTpa {
        src: String,
        #[command(flatten)]
        params: ParamsArg,
        /// A product file or `builtin:theorem`.
        #[arg(long)]
        product: String,
        /// Support sequence `t:c,..` for the M part of L*L.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        alpha: String,
        /// Support sequence `t:c,..` for the Y part of L*L and for L*Y.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        beta: String,
        #[arg(long, default_value_t = 4)]
        neq: i64,
    },
    /// Print the canonical .liealg text of an algebra.
    Render {
        src: String,
        #[command(flatten)]
        params: ParamsArg,
    },
}

#[derive(clap::Args, Debug)]
struct ParamsArg {
    /// Parameters for a .liealg file, e.g. `lambda=1,mu=1/4`.
    #[arg(long = "params", default_value = "", allow_hyphen_values = true)]
    raw: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Step {
    Half,
    Integer,
}

/// Failure of a command. Usage and parse problems exit with 2, case-guard
/// problems with 3.
fn error_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::CaseViolation { .. } | Error::WrongBase { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rendered) => {
            let body = match cli.format {
                Format::Text => rendered.text,
                Format::Json => rendered.json_string(),
            };
            if let Err(e) = emit(cli.out.as_ref(), &body) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            for line in &rendered.diagnostics {
                eprintln!("{line}");
            }
            ExitCode::from(if rendered.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_code(&e))
        }
    }
}

fn emit(out: Option<&PathBuf>, body: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Rendered> {
    match &cli.command {
        Command::List => Ok(report::list()),
        Command::Validate { src, params, neq } => {
            let spec = load_algebra(src, &parse_params(&params.raw)?)?;
            if *neq < 0 {
                bail!("--neq must be nonnegative");
            }
            let w = Window::checks(*neq);
            let checks = [check_skew(&spec, &w), check_grading(&spec, &w), check_jacobi(&spec, &w)];
            Ok(report::validation(&spec, *neq, &checks))
        }
        Command::SolveDeriv { src, params, degrees, step, neq, ncore, delta, expect } => {
            let spec = load_algebra(src, &parse_params(&params.raw)?)?;
            let twice = parse_degrees(degrees, *step)?;
            let delta: Rational = delta.parse().context("--delta")?;
            let expect = expect.as_deref().map(parse_expect).transpose()?;
            if *neq < 0 || *ncore < 0 {
                bail!("--neq and --ncore must be nonnegative");
            }
            let max_degree = twice.iter().map(|g| g.abs()).max().unwrap_or(0);
            let window = Window::for_solving(&spec, *neq, *ncore, max_degree);
            for &g in &twice {
                window.validate(&spec, g)?;
            }
            let r = solve_derivations(&spec, &twice, &window, &delta)?;
            Ok(report::derivations(&spec, &r, expect.as_ref()))
        }
        Command::CheckTpa { src, params, product, alpha, beta, neq } => {
            let params = parse_params(&params.raw)?;
            let spec = load_algebra(src, &params)?;
            let p = if product == "builtin:theorem" {
                let alpha: SupportSeq = alpha.parse().context("--alpha")?;
                let beta: SupportSeq = beta.parse().context("--beta")?;
                theorem_product(&spec, &alpha, &beta)?
            } else if let Some(name) = product.strip_prefix("builtin:") {
                bail!("unknown built-in product {name:?} (only builtin:theorem exists)");
            } else {
                if !alpha.is_empty() || !beta.is_empty() {
                    bail!("--alpha and --beta only apply to builtin:theorem");
                }
                let text = std::fs::read_to_string(product).with_context(|| format!("reading {product}"))?;
                parse_product(&text, &spec, &params).with_context(|| format!("in {product}"))?
            };
            if *neq < 0 {
                bail!("--neq must be nonnegative");
            }
            let r = check_tpa(&spec, &p, &Window::checks(*neq))?;
            Ok(report::tpa(&spec, &p, *neq, &r))
        }
        Command::Render { src, params } => {
            let spec = load_algebra(src, &parse_params(&params.raw)?)?;
            Ok(Rendered::plain(render_algebra(&spec)))
        }
    }
}

/// `a..b` in displayed units to a list of doubled degrees.
fn parse_degrees(s: &str, step: Step) -> Result<Vec<i64>> {
    let (a, b) = s.split_once("..").ok_or_else(|| anyhow!("--degrees expects a..b, got {s:?}"))?;
    let to_twice = |t: &str| -> Result<i64> {
        let r: Rational = t.trim().parse().with_context(|| format!("--degrees bound {t:?}"))?;
        let twice = &r * &Rational::from_int(2);
        twice.to_i64().ok_or_else(|| anyhow!("--degrees bound {t} is not a multiple of 1/2"))
    };
    let (lo, hi) = (to_twice(a)?, to_twice(b)?);
    if lo > hi {
        bail!("--degrees range {s} is empty");
    }
    let stride = match step {
        Step::Half => 1,
        Step::Integer => {
            if lo % 2 != 0 {
                bail!("--degrees {s}: integer steps need an integer start");
            }
            2
        }
    };
    if (hi - lo) / stride > 10_000 {
        bail!("--degrees range {s} is too long");
    }
    Ok((lo..=hi).step_by(stride as usize).collect())
}

/// `0:1,1/2:0` to a map from doubled degree to dimension.
fn parse_expect(s: &str) -> Result<BTreeMap<i64, usize>> {
    let mut out = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (d, n) = part.split_once(':').ok_or_else(|| anyhow!("--expect entry {part:?} is not degree:dim"))?;
        let d: Rational = d.trim().parse().with_context(|| format!("--expect degree {d:?}"))?;
        let twice = (&d * &Rational::from_int(2))
            .to_i64()
            .ok_or_else(|| anyhow!("--expect degree {d} is not a multiple of 1/2"))?;
        let n: usize = n.trim().parse().with_context(|| format!("--expect dimension {n:?}"))?;
        if out.insert(twice, n).is_some() {
            bail!("--expect lists degree {d} twice");
        }
    }
    Ok(out)
}
