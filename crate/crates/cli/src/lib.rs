//! Command layer for the `idemres` binary.
//!
//! [`run_command`] takes a fully resolved [`RunConfig`] and returns the exit
//! status together with the rendered report, so the binary only has to do
//! argument parsing and file reading.
//!
//! Exit statuses: 0 when every asserted invariant passed or a verdict was
//! computed, 1 when a verdict fails (the report carries the witness), 2 on
//! input errors, 3 when the answer is unknown at the bound.

mod commands;
pub mod report;

use idemres::{AlgebraFile, FieldSpec, Fp, Scalar, F2, F3, F5, F7, Q};

pub use report::{OutputFormat, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Resolve,
    Construct,
    Ext,
    Tor,
    MTable,
    ExtQuiver,
    CheckIp,
    CheckSandwich,
    Yoneda,
    OracleCompare,
    Gldim,
    /// Prints generated algebra files.
    Corpus,
    /// Oracle comparison over a generated corpus.
    Sweep,
}

impl Command {
    pub fn needs_algebra(self) -> bool {
        !matches!(self, Command::Corpus | Command::Sweep)
    }
}

pub const DEFAULT_BOUND: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    /// Source text of the algebra file.
    pub algebra: Option<String>,
    /// Overrides the declared field; F_5 when neither is given.
    pub field: Option<FieldSpec>,
    /// Names of the selected vertices.
    pub e: Vec<String>,
    /// `e_vR`, `S_v`, `R`, or a sum of these joined by `+` or `⊕`.
    pub module: Option<String>,
    /// Second argument of `ext`.
    pub target: Option<String>,
    pub bound: usize,
    pub format: OutputFormat,
    pub seed: u64,
    pub count: usize,
    pub jobs: usize,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            algebra: None,
            field: None,
            e: Vec::new(),
            module: None,
            target: None,
            bound: DEFAULT_BOUND,
            format: OutputFormat::Text,
            seed: 1,
            count: 1,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: i32,
    pub report: Report,
    /// Diagnostics for input errors.
    pub error: Option<String>,
}

impl Outcome {
    fn input_error(message: String) -> Self {
        Outcome { status: 2, report: Report::new(), error: Some(message) }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        self.report.render(format)
    }
}

/// The fields the CLI can compute over.
pub const SUPPORTED_FIELDS: &str = "F2, F3, F5, F7, F11, F13, Q";

pub fn run_command(config: &RunConfig) -> Outcome {
    if config.bound == 0 {
        return Outcome::input_error("bound must be at least 1".into());
    }
    if !config.command.needs_algebra() {
        let field = config.field.unwrap_or(FieldSpec::Prime(5));
        return match commands::corpus_command(config, field) {
            Ok((report, status)) => Outcome { status, report, error: None },
            Err(e) => Outcome::input_error(e),
        };
    }
    let Some(text) = &config.algebra else {
        return Outcome::input_error("no algebra file given".into());
    };
    let file = match AlgebraFile::parse(text) {
        Ok(f) => f,
        Err(e) => return Outcome::input_error(e.to_string()),
    };
    let field = config.field.unwrap_or_else(|| file.field_or(FieldSpec::Prime(5)));
    let result = match field {
        FieldSpec::Prime(2) => run_over::<F2>(config, &file),
        FieldSpec::Prime(3) => run_over::<F3>(config, &file),
        FieldSpec::Prime(5) => run_over::<F5>(config, &file),
        FieldSpec::Prime(7) => run_over::<F7>(config, &file),
        FieldSpec::Prime(11) => run_over::<Fp<11>>(config, &file),
        FieldSpec::Prime(13) => run_over::<Fp<13>>(config, &file),
        FieldSpec::Rationals => run_over::<Q>(config, &file),
        other => Err(format!("field {other} is not supported; use one of {SUPPORTED_FIELDS}")),
    };
    match result {
        Ok((report, status)) => Outcome { status, report, error: None },
        Err(e) => Outcome::input_error(e),
    }
}

fn run_over<T: Scalar>(config: &RunConfig, file: &AlgebraFile) -> Result<(Report, i32), String> {
    let algebra = file.build::<T>().map_err(|e| e.to_string())?;
    commands::run(config, algebra)
}

/// Parses a field name such as `F5` or `Q`.
pub fn parse_field(s: &str) -> Result<FieldSpec, String> {
    if s == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    s.strip_prefix('F')
        .and_then(|p| p.parse::<u64>().ok())
        .and_then(FieldSpec::prime)
        .ok_or_else(|| format!("unknown field `{s}`"))
}
