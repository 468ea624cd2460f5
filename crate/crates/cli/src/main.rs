//! `symins`: verify symmetric insertion sums symbolically, evaluate multiple
//! zeta values, and check rational evaluations numerically.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use symins_core::numerics::checks::{
    bbbl_sweep, bowman_bradley_sweep, check_bbbl_family, check_bowman_bradley, check_cyclic_insertion,
    check_symmetric_sum, cyclic_sweep, symmetric_sweep,
};
use symins_core::numerics::{eval_mzv_fast_capped, eval_mzv_series, Family, NumericConfig, NumericReport, NumericsError};
use symins_core::verifier::{build_instance, verify_instance, CancellationCertificate};
use symins_core::{BlockVector, Composition, VerifyError};

/// Terms of the nested-sum oracle used by `eval`.
const ORACLE_TERMS: u64 = 20_000;

#[derive(Parser)]
#[command(name = "symins", version, about = "Symmetric insertion sums of multiple zeta values")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunConfig {
    /// Decimal digits of precision (at least 20).
    #[arg(long, global = true, env = "SYMINS_DIGITS", default_value_t = 60)]
    digits: u32,
    /// Largest denominator accepted by rational reconstruction.
    #[arg(long, global = true, default_value_t = 1_000_000_000_000)]
    max_den: u128,
    /// Largest weight evaluated numerically (at least 4).
    #[arg(long, global = true, env = "SYMINS_WEIGHT_CAP", default_value_t = 14)]
    weight_cap: u32,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Certify that D_r kills the symmetric sum for a block vector.
    Verify {
        /// Block vector b_0,...,b_2n (odd count of non-negative integers).
        #[arg(long)]
        a: BlockVector,
    },
    /// Evaluate a multiple zeta value.
    Eval {
        /// Composition n_1,...,n_r with n_r >= 2.
        #[arg(long)]
        zeta: Composition,
    },
    /// Numeric check of a family against its predicted rational multiple of π^wt.
    Check {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        a: Option<BlockVector>,
        /// Run every parameter choice up to the weight cap.
        #[arg(long)]
        sweep: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Bbbl,
    BowmanBradley,
    Cyclic,
    Symmetric,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Bbbl => Family::Bbbl,
            FamilyArg::BowmanBradley => Family::BowmanBradley,
            FamilyArg::Cyclic => Family::Cyclic,
            FamilyArg::Symmetric => Family::Symmetric,
        }
    }
}

struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn usage(error: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 2, error: error.into() }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure { code: 1, error }
    }
}

fn numerics_failure(e: NumericsError) -> Failure {
    match e {
        NumericsError::Word(_)
        | NumericsError::WeightCap { .. }
        | NumericsError::PrecisionCap { .. }
        | NumericsError::TooFewTrustedDigits(_)
        | NumericsError::BadParameters(_)
        | NumericsError::Verify(VerifyError::Word(_) | VerifyError::TooManyBlocks(..)) => usage(e),
        other => anyhow::Error::from(other).into(),
    }
}

impl RunConfig {
    fn validate(&self) -> Result<NumericConfig, Failure> {
        if self.digits < 20 {
            return Err(usage(anyhow!("--digits must be at least 20, got {}", self.digits)));
        }
        if self.weight_cap < 4 {
            return Err(usage(anyhow!("--weight-cap must be at least 4, got {}", self.weight_cap)));
        }
        if self.jobs == Some(0) {
            return Err(usage(anyhow!("--jobs must be positive")));
        }
        Ok(NumericConfig {
            digits: self.digits,
            max_denominator: self.max_den.into(),
            weight_cap: self.weight_cap,
            ..NumericConfig::default()
        })
    }

    fn emit(&self, body: &str) -> Result<(), Failure> {
        match &self.output {
            Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display()))?,
            None => std::io::stdout().write_all(body.as_bytes()).context("writing stdout")?,
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    let cfg = cli.config.validate()?;
    if let Some(jobs) = cli.config.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("starting worker pool")?;
    }
    match &cli.command {
        Command::Verify { a } => cmd_verify(a, &cli.config),
        Command::Eval { zeta } => cmd_eval(zeta, &cfg, &cli.config),
        Command::Check { family, n, m, a, sweep } => {
            let reports = if *sweep {
                run_sweep((*family).into(), &cfg)?
            } else {
                vec![run_single((*family).into(), *n, *m, a.as_ref(), &cfg)?]
            };
            cli.config.emit(&render_reports(&reports, cli.config.format, *sweep)?)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cmd_verify(a: &BlockVector, out: &RunConfig) -> Result<ExitCode, Failure> {
    let inst = build_instance(a.entries()).map_err(usage)?;
    let cert = verify_instance(&inst);
    out.emit(&render_certificate(&cert, out.format)?)?;
    if cert.is_verified() {
        return Ok(ExitCode::SUCCESS);
    }
    eprintln!("verification failed for {a}");
    for failure in &cert.failures {
        eprintln!("D_{}: {} residual terms", failure.r, failure.residual_terms.len());
        for term in &failure.residual_terms {
            eprintln!("  {:+} I({}) ⊗ I({})", term.coefficient, term.left, term.right);
        }
        for problem in &failure.problems {
            eprintln!("  {problem}");
        }
    }
    Ok(ExitCode::from(1))
}

fn render_certificate(cert: &CancellationCertificate, format: Format) -> anyhow::Result<String> {
    Ok(match format {
        Format::Json => cert.to_json() + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["a", "weight", "r", "windows", "encodings", "orbits", "residual", "encodings_sha256", "verdict"])?;
            for c in &cert.checks {
                w.write_record([
                    cert.a.to_string(),
                    cert.weight.to_string(),
                    c.r.to_string(),
                    c.windows.to_string(),
                    c.encodings.to_string(),
                    c.orbits.to_string(),
                    c.residual.to_string(),
                    c.encodings_sha256.clone(),
                    verdict_label(cert).to_string(),
                ])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Text => {
            let mut s = format!(
                "a = {}  weight {}  |C| = {}  lambda = {}\n",
                cert.a, cert.weight, cert.word_count, cert.lambda
            );
            for c in &cert.checks {
                s += &format!(
                    "D_{:<2} windows {:>6}  encodings {:>6}  orbits {:>6}  residual {}\n",
                    c.r, c.windows, c.encodings, c.orbits, c.residual
                );
            }
            s += &format!("verdict: {}\n{}\n", verdict_label(cert), cert.conclusion);
            s
        }
    })
}

fn verdict_label(cert: &CancellationCertificate) -> &'static str {
    if cert.is_verified() {
        "verified"
    } else {
        "failed"
    }
}

#[derive(Serialize)]
struct EvalOutput {
    composition: String,
    weight: u32,
    digits: u32,
    value: String,
    oracle_terms: u64,
    /// Decimal digits on which the fast engine and the nested-sum oracle agree.
    engine_agreement_digits: u32,
}

fn cmd_eval(zeta: &Composition, cfg: &NumericConfig, out: &RunConfig) -> Result<ExitCode, Failure> {
    let fast = eval_mzv_fast_capped(zeta, cfg.digits, cfg.max_digits).map_err(numerics_failure)?;
    let series = eval_mzv_series(zeta, ORACLE_TERMS).map_err(numerics_failure)?;
    let agreement = fast.agreement_digits(&series).floor().clamp(0.0, cfg.digits as f64) as u32;
    let result = EvalOutput {
        composition: zeta.to_string(),
        weight: zeta.weight(),
        digits: cfg.digits,
        value: fast.to_decimal(cfg.digits),
        oracle_terms: ORACLE_TERMS,
        engine_agreement_digits: agreement,
    };
    let body = match out.format {
        Format::Json => serde_json::to_string_pretty(&result).context("serialising")? + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.serialize(&result).context("writing csv")?;
            String::from_utf8(w.into_inner().context("writing csv")?).context("writing csv")?
        }
        Format::Text => format!(
            "ζ({}) = {}\nengine agreement: {} digits against {} terms of the nested sum\n",
            result.composition, result.value, agreement, ORACLE_TERMS
        ),
    };
    out.emit(&body)?;
    Ok(ExitCode::SUCCESS)
}

fn require<T>(value: Option<T>, flag: &str, family: Family) -> Result<T, Failure> {
    value.ok_or_else(|| usage(anyhow!("--family {family} needs {flag} (or --sweep)")))
}

fn run_single(
    family: Family,
    n: Option<usize>,
    m: Option<u32>,
    a: Option<&BlockVector>,
    cfg: &NumericConfig,
) -> Result<NumericReport, Failure> {
    let report = match family {
        Family::Bbbl => check_bbbl_family(require(n, "--n", family)?, require(m, "--m", family)?, cfg),
        Family::BowmanBradley => check_bowman_bradley(require(n, "--n", family)?, require(m, "--m", family)?, cfg),
        Family::Cyclic => check_cyclic_insertion(require(a, "--a", family)?, cfg),
        Family::Symmetric => check_symmetric_sum(require(a, "--a", family)?, cfg),
    };
    report.map_err(numerics_failure)
}

fn run_sweep(family: Family, cfg: &NumericConfig) -> Result<Vec<NumericReport>, Failure> {
    let cap = cfg.weight_cap;
    let results: Vec<Result<NumericReport, NumericsError>> = match family {
        Family::Bbbl => bbbl_sweep(cap).into_par_iter().map(|(n, m)| check_bbbl_family(n, m, cfg)).collect(),
        Family::BowmanBradley => {
            bowman_bradley_sweep(cap).into_par_iter().map(|(n, m)| check_bowman_bradley(n, m, cfg)).collect()
        }
        Family::Cyclic => cyclic_sweep(cap).par_iter().map(|a| check_cyclic_insertion(a, cfg)).collect(),
        Family::Symmetric => symmetric_sweep(cap).par_iter().map(|a| check_symmetric_sum(a, cfg)).collect(),
    };
    results.into_iter().collect::<Result<_, _>>().map_err(numerics_failure)
}

fn rational_label(q: &Option<impl std::fmt::Display>) -> String {
    q.as_ref().map(|q| q.to_string()).unwrap_or_default()
}

fn render_reports(reports: &[NumericReport], format: Format, as_list: bool) -> anyhow::Result<String> {
    Ok(match format {
        Format::Json if as_list => serde_json::to_string_pretty(reports)? + "\n",
        Format::Json => reports.iter().map(|r| r.to_json() + "\n").collect(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "family", "params", "weight", "digits", "ratio", "reconstructed", "target", "target_kind",
                "target_match", "status",
            ])?;
            for r in reports {
                let json = serde_json::to_value(r)?;
                let field = |k: &str| json[k].as_str().map(str::to_string).unwrap_or_default();
                w.write_record([
                    r.family.to_string(),
                    r.params_label(),
                    r.weight.to_string(),
                    r.digits.to_string(),
                    r.ratio.clone(),
                    rational_label(&r.reconstructed),
                    rational_label(&r.target),
                    field("target_kind"),
                    r.target_match.map(|b| b.to_string()).unwrap_or_default(),
                    r.status.to_string(),
                ])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Text => reports
            .iter()
            .map(|r| {
                format!(
                    "{:<14} {:<40} wt {:>2}  q = {:<24} target {:<24} {}\n",
                    r.family.to_string(),
                    r.params_label(),
                    r.weight,
                    rational_label(&r.reconstructed),
                    rational_label(&r.target),
                    r.status
                )
            })
            .collect(),
    })
}
