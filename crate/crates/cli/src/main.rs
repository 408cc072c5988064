use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use idemres_cli::{parse_field, run_command, Command, OutputFormat, RunConfig, DEFAULT_BOUND};

#[derive(Parser)]
#[command(name = "idemres", version, about = "Minimal projective resolutions over idempotent subrings")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Minimal resolution of a module over R, or of F_e(M) over Gamma_e when -e is given.
    Resolve(AlgebraArgs),
    /// Run the construction from Omega_0 and verify the induced resolution.
    Construct(AlgebraArgs),
    /// dim Ext^k(M, N), with the multiplicity shortcut when N is semisimple.
    Ext(AlgebraArgs),
    /// Tor over Gamma_e, cross-checked against the construction trace.
    Tor(AlgebraArgs),
    /// The m-table of the simples in E and the m-property.
    MTable(AlgebraArgs),
    /// Ext quiver on the simples in E.
    ExtQuiver(AlgebraArgs),
    /// Self-orthogonality checker for a primitive e.
    CheckIp(AlgebraArgs),
    /// Directedness checker for the sandwiched idempotents of e.
    CheckSandwich(AlgebraArgs),
    /// Directedness of the Yoneda algebra of S_e.
    Yoneda(AlgebraArgs),
    /// Construction against a direct resolution over Gamma_e.
    OracleCompare(AlgebraArgs),
    /// Global dimension, up to the bound.
    Gldim(AlgebraArgs),
    /// Print generated algebra files.
    Corpus(CorpusArgs),
    /// Oracle comparison over a generated corpus.
    Sweep(CorpusArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Largest degree computed.
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    bound: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Field to compute over (F2, F3, F5, F7, F11, F13, Q); defaults to the file's, then F5.
    #[arg(long)]
    field: Option<String>,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Algebra file, or `-` for standard input.
    file: PathBuf,
    /// Selected vertices, comma separated.
    #[arg(short = 'e', long = "idempotent", value_delimiter = ',')]
    e: Vec<String>,
    /// Module: e_<v>R, S_<v>, R, or a sum joined by `+`.
    #[arg(short, long)]
    module: Option<String>,
    /// Second module for `ext`.
    #[arg(short, long)]
    target: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Worker threads for independent cases.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    common: Common,
}

fn read_input(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn config(sub: Sub) -> Result<RunConfig, String> {
    let (command, algebra_args, corpus_args) = match sub {
        Sub::Resolve(a) => (Command::Resolve, Some(a), None),
        Sub::Construct(a) => (Command::Construct, Some(a), None),
        Sub::Ext(a) => (Command::Ext, Some(a), None),
        Sub::Tor(a) => (Command::Tor, Some(a), None),
        Sub::MTable(a) => (Command::MTable, Some(a), None),
        Sub::ExtQuiver(a) => (Command::ExtQuiver, Some(a), None),
        Sub::CheckIp(a) => (Command::CheckIp, Some(a), None),
        Sub::CheckSandwich(a) => (Command::CheckSandwich, Some(a), None),
        Sub::Yoneda(a) => (Command::Yoneda, Some(a), None),
        Sub::OracleCompare(a) => (Command::OracleCompare, Some(a), None),
        Sub::Gldim(a) => (Command::Gldim, Some(a), None),
        Sub::Corpus(c) => (Command::Corpus, None, Some(c)),
        Sub::Sweep(c) => (Command::Sweep, None, Some(c)),
    };
    let mut cfg = RunConfig::new(command);
    let common = if let Some(a) = algebra_args {
        cfg.algebra = Some(read_input(&a.file)?);
        cfg.e = a.e;
        cfg.module = a.module;
        cfg.target = a.target;
        a.common
    } else {
        let c = corpus_args.expect("one of the two argument sets");
        cfg.seed = c.seed;
        cfg.count = c.count;
        cfg.jobs = c.jobs;
        c.common
    };
    cfg.bound = common.bound;
    cfg.format = match common.format {
        Format::Text => OutputFormat::Text,
        Format::Json => OutputFormat::Json,
    };
    cfg.field = common.field.as_deref().map(parse_field).transpose()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match config(cli.command) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = run_command(&cfg);
    let mut stdout = std::io::stdout().lock();
    if cfg.command == Command::Corpus && cfg.format == OutputFormat::Text {
        for (_, fields) in outcome.report.records() {
            let _ = writeln!(stdout, "# case {}", fields["index"]);
            let _ = write!(stdout, "{}", fields["text"].as_str().unwrap_or_default());
        }
    } else {
        let _ = write!(stdout, "{}", outcome.render(cfg.format));
    }
    if let Some(e) = &outcome.error {
        eprintln!("error: {e}");
    }
    ExitCode::from(outcome.status as u8)
}
