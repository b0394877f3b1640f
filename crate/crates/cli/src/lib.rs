//! Command-line front end for `gapprob-core`.
//!
//! Exit codes: 0 success, 1 numeric failure, 2 usage error.

pub mod acceptance;
pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::{Scalar, Settings};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numeric(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

macro_rules! numeric_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Numeric(e.to_string())
            }
        }
    )*};
}

numeric_from!(
    gapprob_core::specfun::SpecfunError,
    gapprob_core::kernel::KernelError,
    gapprob_core::fredholm::FredholmError,
    gapprob_core::asympt::AsymptError,
    gapprob_core::exactalg::ExactError,
    gapprob_core::hierarchy::HierarchyError
);

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "gapprob", version, about = "Gap probabilities, the Painleve II hierarchy and large gap asymptotics")]
pub struct Cli {
    /// JSON settings file; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write output here instead of stdout (relative paths go under $GAPPROB_OUT_DIR).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a member of the hierarchy.
    Hierarchy(HierarchyArgs),
    /// Tabulate the generalized Airy function or a derivative.
    Aigen(AigenArgs),
    /// Evaluate the kernel by the factored and contour formulas.
    Kernel(KernelArgs),
    /// Gap probability profile: log F, its derivative, q^2 and q.
    Fredholm(FredholmArgs),
    /// Print an asymptotic expansion with exact coefficients.
    Asympt(AsymptArgs),
    /// Run acceptance criteria.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Default)]
pub struct ModelArgs {
    /// Member of the hierarchy, 1..=6.
    #[arg(long)]
    pub n: Option<usize>,
    /// Deformation parameter, repeated n - 1 times (rational, e.g. -1/2).
    #[arg(long = "tau", allow_hyphen_values = true)]
    pub tau: Vec<String>,
}

impl ModelArgs {
    fn settings(&self) -> Settings {
        Settings {
            n: self.n,
            taus: (!self.tau.is_empty()).then(|| self.tau.iter().cloned().map(Scalar::Text).collect()),
            ..Settings::default()
        }
    }
}

#[derive(Args, Debug)]
pub struct HierarchyArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Constant term; symbolic when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// text, latex or json.
    #[arg(long)]
    pub format: Option<String>,
}

#[derive(Args, Debug)]
pub struct AigenArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Grid a:b:step.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long)]
    pub deriv: Option<u32>,
    /// csv or json.
    #[arg(long)]
    pub format: Option<String>,
}

#[derive(Args, Debug)]
pub struct KernelArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<f64>,
    /// text or json.
    #[arg(long)]
    pub format: Option<String>,
}

#[derive(Args, Debug)]
pub struct FredholmArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Thinning parameter in [0, 1] (default 1).
    #[arg(long)]
    pub rho: Option<String>,
    /// Grid a:b:step.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Quadrature nodes, 10..=400 (default 60).
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Finite difference accuracy: 4, 6 or 8 (default 6).
    #[arg(long)]
    pub fd_order: Option<usize>,
    /// csv or json.
    #[arg(long)]
    pub format: Option<String>,
}

#[derive(Args, Debug)]
pub struct AsymptArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// largegap, q, zeta0 or g1.
    #[arg(long)]
    pub series: Option<String>,
    #[arg(long)]
    pub depth: Option<usize>,
    /// Also print coefficients as floats.
    #[arg(long)]
    pub float: bool,
    /// displayed or hierarchy.
    #[arg(long)]
    pub log_coefficient: Option<String>,
    /// text or json.
    #[arg(long)]
    pub format: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// exact, asympt, numeric or all.
    #[arg(long)]
    pub suite: Option<String>,
}

impl Command {
    /// Flags as settings; unset flags stay `None`.
    pub fn settings(&self) -> Settings {
        match self {
            Command::Hierarchy(a) => {
                Settings { alpha: a.alpha.clone().map(Scalar::Text), format: a.format.clone(), ..a.model.settings() }
            }
            Command::Aigen(a) => {
                Settings { x_range: a.x.clone(), deriv: a.deriv, format: a.format.clone(), ..a.model.settings() }
            }
            Command::Kernel(a) => Settings { x: a.x, y: a.y, format: a.format.clone(), ..a.model.settings() },
            Command::Fredholm(a) => Settings {
                rho: a.rho.clone().map(Scalar::Text),
                s_range: a.s.clone(),
                nodes: a.nodes,
                fd_order: a.fd_order,
                format: a.format.clone(),
                ..a.model.settings()
            },
            Command::Asympt(a) => Settings {
                series: a.series.clone(),
                depth: a.depth,
                float: a.float.then_some(true),
                log_coefficient: a.log_coefficient.clone(),
                format: a.format.clone(),
                ..a.model.settings()
            },
            Command::Verify(a) => Settings { suite: a.suite.clone(), ..Settings::default() },
        }
    }
}

fn dispatch(cli: &Cli) -> Result<bool, CliError> {
    let mut settings = cli.command.settings();
    settings.output = cli.out.clone();
    if let Some(path) = &cli.config {
        settings = settings.over(Settings::load(path)?);
    }
    let report = match &cli.command {
        Command::Hierarchy(_) => commands::hierarchy(&settings)?,
        Command::Aigen(_) => commands::aigen(&settings)?,
        Command::Kernel(_) => commands::kernel(&settings)?,
        Command::Fredholm(_) => commands::fredholm(&settings)?,
        Command::Asympt(_) => commands::asympt(&settings)?,
        Command::Verify(_) => commands::verify(&settings)?,
    };
    output::emit(&report.text, settings.output.as_deref())?;
    Ok(report.passed)
}

/// Parses `argv` (program name first) and runs; returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
