//! `grw`: weight hierarchies, duals, checks and sweeps from the command line.
//!
//! Exit status: 0 on success, 1 when a check fails or two computations that
//! must agree do not, 2 on bad input (including budget overruns).

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use grw::report::{self, Algorithm, DualReport, Emit, WeightsReport};
use grw::sweep::{self, Mode, SweepConfig};
use grw::theorems::{self, CheckKind, Scope, Verdict};
use grw::zoo::{self, CodeDescriptor};
use grw::{io, Error, Execution, LinearCode, Settings, DEFAULT_BUDGET};

#[derive(Parser)]
#[command(name = "grw", version, about = "Generalized rank weights of codes over F_{q^m}/F_q")]
struct Cli {
    /// Do not print the version banner on stderr.
    #[arg(long, global = true)]
    no_banner: bool,

    /// Cap on items visited by any single enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    /// Run on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weight hierarchy of one code.
    Weights {
        #[command(flatten)]
        code: CodeArgs,
        /// `all` or a single r.
        #[arg(long, default_value = "all")]
        r: String,
        #[arg(long, value_enum, default_value_t = AlgorithmArg::Gamma)]
        algorithm: AlgorithmArg,
        #[arg(long, value_enum, default_value_t = EmitArg::Table)]
        emit: EmitArg,
    },
    /// Dual code, both hierarchies and the duality verdict.
    Dual {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value_t = EmitArg::Table)]
        emit: EmitArg,
    },
    /// Run checks on one code.
    Verify {
        #[command(flatten)]
        code: CodeArgs,
        /// Comma-separated check names, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, value_enum, default_value_t = EmitArg::Table)]
        emit: EmitArg,
    },
    /// Run checks over every code, or seeded random codes, of given parameters.
    Sweep {
        /// Prime field size.
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// `all` or a single k.
        #[arg(long, default_value = "all")]
        k: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// Number of random codes.
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated check names, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, value_enum, default_value_t = SweepEmit::Csv)]
        emit: SweepEmit,
    },
    /// Write the pinned random-code fixtures.
    Golden {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct CodeArgs {
    /// JSON code file.
    #[arg(long, conflicts_with_all = ["family", "field"], required_unless_present = "family")]
    code: Option<PathBuf>,
    /// Named family, e.g. `gabidulin:n=4,k=2` or `random:n=3,k=2,seed=7`.
    #[arg(long, requires = "field")]
    family: Option<String>,
    /// Prime-field shorthand `q=2,m=3`.
    #[arg(long)]
    field: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Gamma,
    Subspace,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitArg {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepEmit {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
}

impl From<EmitArg> for Emit {
    fn from(e: EmitArg) -> Emit {
        match e {
            EmitArg::Json => Emit::Json,
            EmitArg::Csv => Emit::Csv,
            EmitArg::Table => Emit::Table,
        }
    }
}

/// Why a command did not succeed, mapped onto the exit status.
enum Failure {
    Input(String),
    Inconsistent(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Internal(_) => Failure::Inconsistent(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<bool, Failure>;

fn load_code(args: &CodeArgs) -> Result<LinearCode, Failure> {
    match (&args.code, &args.family) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            io::parse_code_file(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
        }
        (None, Some(desc)) => {
            let field = args.field.as_deref().expect("clap requires --field with --family");
            let t = io::parse_field_shorthand(field)?;
            let d: CodeDescriptor = desc.parse()?;
            Ok(d.build(&t)?)
        }
        (None, None) => Err(Failure::Input("one of --code or --family is required".into())),
    }
}

fn parse_all_or(s: &str, what: &str) -> Result<Option<usize>, Failure> {
    if s == "all" {
        return Ok(None);
    }
    s.parse()
        .map(Some)
        .map_err(|_| Failure::Input(format!("--{what} must be `all` or a positive integer, got {s:?}")))
}

fn print(out: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
}

fn run(cli: Cli) -> Outcome {
    let settings = Settings {
        budget: cli.budget,
        exec: if cli.sequential { Execution::Sequential } else { Execution::default() },
    };
    match cli.command {
        Command::Weights { code, r, algorithm, emit } => {
            let c = load_code(&code)?;
            let rs = match parse_all_or(&r, "r")? {
                None => (1..=c.k()).collect(),
                Some(r) if r == 0 || r > c.k() => return Err(Error::RankOutOfRange { r, max: c.k() }.into()),
                Some(r) => vec![r],
            };
            let algorithm = match algorithm {
                AlgorithmArg::Gamma => Algorithm::Gamma,
                AlgorithmArg::Subspace => Algorithm::Subspace,
                AlgorithmArg::Both => Algorithm::Both,
            };
            let rep = WeightsReport::compute(&c, &rs, algorithm, &settings)?;
            print(&rep.render(emit.into())?);
            if rep.agreement == Some(false) {
                return Err(Failure::Inconsistent(format!(
                    "invariant-subspace values {:?} disagree with subcode values {:?}",
                    rep.hierarchy, rep.subcode_hierarchy
                )));
            }
            Ok(true)
        }
        Command::Dual { code, emit } => {
            let c = load_code(&code)?;
            let rep = DualReport::compute(&c, &settings)?;
            print(&rep.render(emit.into())?);
            Ok(rep.duality.verdict != Verdict::Fail)
        }
        Command::Verify { code, checks, emit } => {
            let c = load_code(&code)?;
            let kinds = CheckKind::parse_list(&checks)?;
            let reports: Vec<_> = kinds
                .iter()
                .map(|&k| match k.scope() {
                    Scope::Code => theorems::run_code_check(k, &c, &settings),
                    Scope::Parameters => theorems::run_parameter_check(k, c.tower(), c.n(), &settings),
                })
                .collect::<grw::Result<_>>()?;
            print(&report::check_reports(&reports, emit.into())?);
            let mut summary = sweep::Summary::default();
            reports.iter().for_each(|r| summary.add(r.verdict));
            eprintln!("{summary}");
            Ok(summary.failed == 0)
        }
        Command::Sweep { q, m, n, k, mode, count, seed, checks, emit } => {
            let tower = io::parse_field_shorthand(&format!("q={q},m={m}"))?;
            let cfg = SweepConfig {
                tower,
                n,
                k: parse_all_or(&k, "k")?,
                mode: match mode {
                    ModeArg::Exhaustive => Mode::Exhaustive,
                    ModeArg::Random => Mode::Random { count, seed },
                },
                checks: CheckKind::parse_list(&checks)?,
                settings,
            };
            let res = sweep::run(&cfg)?;
            print(&match emit {
                SweepEmit::Csv => report::sweep_csv(&res)?,
                SweepEmit::Json => report::sweep_json(&res)?,
            });
            eprintln!("{}", res.summary);
            Ok(res.summary.failed == 0)
        }
        Command::Golden { out } => {
            let fixtures = zoo::golden_fixtures()?;
            let mut text = serde_json::to_string_pretty(&fixtures).map_err(|e| Failure::Inconsistent(e.to_string()))?;
            text.push('\n');
            fs::write(&out, text).map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !cli.no_banner {
        eprintln!("grw {}", env!("CARGO_PKG_VERSION"));
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Inconsistent(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
