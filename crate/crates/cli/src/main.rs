//! Command-line front end: coefficient tables, partition enumeration,
//! statistic tables and theorem verification with stable machine-readable
//! output.
//!
//! Exit codes: 0 success/pass, 1 verification failure, 2 usage error,
//! 3 resource-cap refusal.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use prefab_core::identities::{
    mutation_smoke, verify, verify_all, IdentityReport, TheoremId, VerifyMode, VerifyOptions,
};
use prefab_core::partitions::enumerate;
use prefab_core::series::FactorSpec;
use prefab_core::stats::{StatKind, StatTable};
use prefab_core::Error as CoreError;
use prefab_core::DEFAULT_ORACLE_CAP;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    fn as_str(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Parser)]
#[command(
    name = "prefab",
    version,
    about = "Colored-partition counting sequences, statistics and identity verification"
)]
struct Cli {
    /// Output format for the primary output
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the primary output to this file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Print the resolved run configuration as JSON and exit
    #[arg(long, global = true)]
    dump_config: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficient table h(0..=N) of a spec
    Count {
        /// Spec selector: uniform:b, kcolors, odd:b, distinct:b,
        /// overpartition:r,s, oddoverlined:r,s
        #[arg(long)]
        spec: String,
        /// Largest weight to expand to
        #[arg(long, default_value_t = 100, allow_negative_numbers = true)]
        max_n: i64,
    },
    /// Tabulate one statistic over n = 0..=N
    Stats {
        /// Statistic: F, G, H, Fodd, Godd, Fdistinct, Fkcolors, Gkcolors,
        /// Obar, Ooverlined, Tbar, Fbar1, Gbar1, Gbar3, Fgeneral
        #[arg(long)]
        kind: String,
        /// Spec selector (must pair with the statistic)
        #[arg(long)]
        spec: String,
        /// Part value k, or the value m for the overline statistics
        #[arg(long)]
        k: Option<u64>,
        /// Largest weight to tabulate
        #[arg(long, default_value_t = 100, allow_negative_numbers = true)]
        max_n: i64,
    },
    /// Stream every colored partition of one weight
    Enumerate {
        /// Spec selector
        #[arg(long)]
        spec: String,
        /// The weight to enumerate
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        /// Print only the number of partitions
        #[arg(long)]
        count_only: bool,
        /// Enumerate past the cap
        #[arg(long)]
        force: bool,
        /// Enumeration cap
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: u64,
    },
    /// Check one theorem, or all of them, over a range
    Verify {
        /// Theorem name (sef-classic, sef-bcolored, andrews-merca-h,
        /// odd-sum, distinct-diff, kcolors, overpartition-combined,
        /// overline13, euler-odd-distinct)
        #[arg(long, conflicts_with = "all")]
        theorem: Option<String>,
        /// Check every theorem
        #[arg(long)]
        all: bool,
        /// Largest weight to check
        #[arg(long, default_value_t = 100, allow_negative_numbers = true)]
        max_n: i64,
        /// fast: closed forms only; oracle: enumeration only;
        /// both: closed forms cross-checked against enumeration
        #[arg(long, default_value = "fast")]
        mode: String,
        /// Color counts for the b-parameterized theorems
        #[arg(long, default_value = "1,2,3")]
        b: String,
        /// Color pairs r,s for the combined theorem, separated by ';'
        #[arg(long, default_value = "1,1;2,1;1,2")]
        rs: String,
        /// Enumeration cap for oracle checks
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: u64,
        /// Run the theorem's registered mutation instead: the sweep must
        /// find counterexamples, proving the checker is not vacuous
        #[arg(long, requires = "theorem")]
        mutate: bool,
        /// Report per-theorem timings on stderr
        #[arg(long)]
        timings: bool,
    },
}

/// The resolved configuration of one invocation. Round-trips through JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct RunConfig {
    command: String,
    format: String,
    output: Option<String>,
    spec: Option<String>,
    kind: Option<String>,
    theorem: Option<String>,
    all: bool,
    max_n: u64,
    n: u64,
    k: Option<u64>,
    mode: String,
    b_values: Vec<u64>,
    rs_values: Vec<(u64, u64)>,
    cap: u64,
    force: bool,
    count_only: bool,
    mutate: bool,
    timings: bool,
}

#[derive(Debug)]
enum CliError {
    Core(CoreError),
    Usage(String),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn exit_code_for(err: &CliError) -> i32 {
    match err {
        CliError::Core(CoreError::CapExceeded { .. }) => 3,
        _ => 2,
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            process::exit(exit_code_for(&err));
        }
    }
}

fn non_negative(value: i64, flag: &str) -> Result<u64, CliError> {
    u64::try_from(value)
        .map_err(|_| CliError::Usage(format!("{flag} must be non-negative, got {value}")))
}

fn parse_b_list(input: &str) -> Result<Vec<u64>, CliError> {
    input
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Usage(format!("cannot parse color count `{p}` in --b")))
        })
        .collect()
}

fn parse_rs_list(input: &str) -> Result<Vec<(u64, u64)>, CliError> {
    input
        .split(';')
        .map(|pair| {
            let mut parts = pair.split(',');
            let r = parts.next().and_then(|x| x.trim().parse::<u64>().ok());
            let s = parts.next().and_then(|x| x.trim().parse::<u64>().ok());
            match (r, s, parts.next()) {
                (Some(r), Some(s), None) => Ok((r, s)),
                _ => Err(CliError::Usage(format!(
                    "cannot parse color pair `{pair}` in --rs; expected r,s"
                ))),
            }
        })
        .collect()
}

fn resolve_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig {
        command: String::new(),
        format: cli.format.as_str().to_string(),
        output: cli.output.as_ref().map(|p| p.display().to_string()),
        spec: None,
        kind: None,
        theorem: None,
        all: false,
        max_n: 0,
        n: 0,
        k: None,
        mode: "fast".to_string(),
        b_values: Vec::new(),
        rs_values: Vec::new(),
        cap: DEFAULT_ORACLE_CAP,
        force: false,
        count_only: false,
        mutate: false,
        timings: false,
    };
    match &cli.command {
        Command::Count { spec, max_n } => {
            cfg.command = "count".to_string();
            cfg.max_n = non_negative(*max_n, "--max-n")?;
            cfg.spec = Some(spec.clone());
        }
        Command::Stats {
            kind,
            spec,
            k,
            max_n,
        } => {
            cfg.command = "stats".to_string();
            cfg.max_n = non_negative(*max_n, "--max-n")?;
            cfg.spec = Some(spec.clone());
            cfg.kind = Some(kind.clone());
            cfg.k = *k;
        }
        Command::Enumerate {
            spec,
            n,
            count_only,
            force,
            cap,
        } => {
            cfg.command = "enumerate".to_string();
            cfg.n = non_negative(*n, "--n")?;
            cfg.spec = Some(spec.clone());
            cfg.count_only = *count_only;
            cfg.force = *force;
            cfg.cap = *cap;
        }
        Command::Verify {
            theorem,
            all,
            max_n,
            mode,
            b,
            rs,
            cap,
            mutate,
            timings,
        } => {
            cfg.command = "verify".to_string();
            cfg.max_n = non_negative(*max_n, "--max-n")?;
            cfg.theorem = theorem.clone();
            cfg.all = *all;
            cfg.mode = mode.clone();
            cfg.b_values = parse_b_list(b)?;
            cfg.rs_values = parse_rs_list(rs)?;
            cfg.cap = *cap;
            cfg.mutate = *mutate;
            cfg.timings = *timings;
            if !all && theorem.is_none() {
                return Err(CliError::Usage(
                    "verify needs either --all or --theorem <name>".to_string(),
                ));
            }
        }
    }
    // reject bad selectors and statistic names before any computation
    if let Some(spec) = &cfg.spec {
        FactorSpec::parse(spec, 1)?;
    }
    if let Some(kind) = &cfg.kind {
        StatKind::parse(kind)?;
    }
    if let Some(theorem) = &cfg.theorem {
        TheoremId::parse(theorem)?;
    }
    if cfg.command == "verify" && VerifyMode::parse(&cfg.mode).is_none() {
        return Err(CliError::Usage(format!(
            "unknown mode `{}`; known: fast, oracle, both",
            cfg.mode
        )));
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let cfg = resolve_config(&cli)?;
    let round_trip: RunConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap())
        .expect("run configuration must round-trip through JSON");
    assert_eq!(round_trip, cfg);
    if cli.dump_config {
        emit(&cli, &serde_json::to_string_pretty(&cfg).unwrap())?;
        return Ok(0);
    }
    match cfg.command.as_str() {
        "count" => cmd_count(&cli, &cfg),
        "stats" => cmd_stats(&cli, &cfg),
        "enumerate" => cmd_enumerate(&cli, &cfg),
        "verify" => cmd_verify(&cli, &cfg),
        _ => unreachable!("resolve_config sets the command"),
    }
}

/// Write the primary output to the configured sink.
fn emit(cli: &Cli, content: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            file.write_all(content.as_bytes())?;
            if !content.ends_with('\n') {
                file.write_all(b"\n")?;
            }
            file.flush()?;
        }
        None => {
            if content.ends_with('\n') {
                print!("{content}");
            } else {
                println!("{content}");
            }
        }
    }
    Ok(())
}

fn cmd_count(cli: &Cli, cfg: &RunConfig) -> Result<i32, CliError> {
    let selector = cfg.spec.as_deref().expect("count has a spec");
    let spec = FactorSpec::parse(selector, cfg.max_n)?;
    let series = spec.expand(cfg.max_n)?;
    let out = match cli.format {
        Format::Json => series.to_json(),
        Format::Csv => {
            let mut s = String::from("n,value\n");
            for (n, c) in series.coeffs().iter().enumerate() {
                s.push_str(&format!("{n},{c}\n"));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for (n, c) in series.coeffs().iter().enumerate() {
                s.push_str(&format!("{n}\t{c}\n"));
            }
            s
        }
    };
    emit(cli, &out)?;
    Ok(0)
}

fn cmd_stats(cli: &Cli, cfg: &RunConfig) -> Result<i32, CliError> {
    let kind = StatKind::parse(cfg.kind.as_deref().expect("stats has a kind"))?;
    let selector = cfg.spec.as_deref().expect("stats has a spec");
    let spec = FactorSpec::parse(selector, cfg.max_n)?;
    let series = spec.expand(cfg.max_n)?;
    let k = match (kind.takes_k(), cfg.k) {
        (true, Some(k)) => k,
        (true, None) => {
            return Err(CliError::Usage(format!(
                "statistic {} needs --k",
                kind.as_str()
            )))
        }
        (false, _) => 0,
    };
    let table = StatTable::build(&series, kind, &[k], cfg.max_n, true)?;
    let out = match cli.format {
        Format::Json => table.to_json(),
        Format::Csv => table.to_csv(),
        Format::Text => {
            let mut s = String::new();
            for (_, n, v) in table.rows() {
                s.push_str(&format!("{n}\t{v}\n"));
            }
            s
        }
    };
    emit(cli, &out)?;
    Ok(0)
}

fn cmd_enumerate(cli: &Cli, cfg: &RunConfig) -> Result<i32, CliError> {
    let selector = cfg.spec.as_deref().expect("enumerate has a spec");
    let spec = FactorSpec::parse(selector, cfg.n)?;
    if cfg.n > cfg.cap && !cfg.force {
        return Err(CoreError::CapExceeded {
            n: cfg.n,
            cap: cfg.cap,
        }
        .into());
    }
    if cfg.count_only {
        let count = enumerate(cfg.n, &spec).count();
        emit(cli, &count.to_string())?;
        return Ok(0);
    }
    if cli.format == Format::Csv {
        return Err(CliError::Usage(
            "enumerate supports --format text or json".to_string(),
        ));
    }
    // stream rather than buffering the whole enumeration
    let mut sink: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(std::io::stdout())),
    };
    for partition in enumerate(cfg.n, &spec) {
        let line = match cli.format {
            Format::Json => partition.to_json_line(),
            _ => partition.canonical_string(&spec),
        };
        writeln!(sink, "{line}")?;
    }
    sink.flush()?;
    Ok(0)
}

fn verify_options(cfg: &RunConfig) -> VerifyOptions {
    VerifyOptions {
        max_n: cfg.max_n,
        mode: VerifyMode::parse(&cfg.mode).expect("mode validated at resolve time"),
        b_values: cfg.b_values.clone(),
        rs_values: cfg.rs_values.clone(),
        oracle_cap: cfg.cap,
    }
}

fn report_text(report: &IdentityReport) -> String {
    format!(
        "{} {} params=[{}] checked={} oracle_checked={} failures={}",
        if report.passed() { "PASS" } else { "FAIL" },
        report.theorem.as_str(),
        report.params.join(" "),
        report.checked,
        report.oracle_checked,
        report.total_failures
    )
}

fn cmd_verify(cli: &Cli, cfg: &RunConfig) -> Result<i32, CliError> {
    let opts = verify_options(cfg);
    let outcomes: Vec<(TheoremId, prefab_core::Result<IdentityReport>)> = if cfg.all {
        verify_all(&opts)
    } else {
        let theorem = TheoremId::parse(cfg.theorem.as_deref().expect("validated"))?;
        // single-theorem errors propagate with their own exit class
        let report = if cfg.mutate {
            mutation_smoke(theorem, cfg.max_n)?
        } else {
            verify(theorem, &opts)?
        };
        vec![(theorem, Ok(report))]
    };
    if cfg.timings {
        for (theorem, outcome) in &outcomes {
            if let Ok(report) = outcome {
                eprintln!(
                    "timing: {} {} ms",
                    theorem.as_str(),
                    report.elapsed.as_millis()
                );
            }
        }
    }
    let out = match cli.format {
        Format::Json => {
            let values: Vec<serde_json::Value> = outcomes
                .iter()
                .map(|(theorem, outcome)| match outcome {
                    Ok(report) => report.to_json_value(false),
                    Err(e) => serde_json::json!({
                        "theorem": theorem.as_str(),
                        "error": e.to_string(),
                    }),
                })
                .collect();
            serde_json::to_string_pretty(&values).unwrap()
        }
        Format::Csv => {
            let mut s = String::from("theorem,passed,checked,oracle_checked,total_failures\n");
            for (theorem, outcome) in &outcomes {
                match outcome {
                    Ok(r) => s.push_str(&format!(
                        "{},{},{},{},{}\n",
                        theorem.as_str(),
                        r.passed(),
                        r.checked,
                        r.oracle_checked,
                        r.total_failures
                    )),
                    Err(e) => s.push_str(&format!("{},error: {e},,,\n", theorem.as_str())),
                }
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for (theorem, outcome) in &outcomes {
                match outcome {
                    Ok(report) => s.push_str(&format!("{}\n", report_text(report))),
                    Err(e) => s.push_str(&format!("ERROR {} {e}\n", theorem.as_str())),
                }
            }
            s
        }
    };
    emit(cli, &out)?;
    let any_cap = outcomes
        .iter()
        .any(|(_, o)| matches!(o, Err(CoreError::CapExceeded { .. })));
    let any_error = outcomes.iter().any(|(_, o)| o.is_err());
    let any_failure = outcomes
        .iter()
        .any(|(_, o)| o.as_ref().map(|r| !r.passed()).unwrap_or(false));
    if any_cap {
        return Ok(3);
    }
    if any_error {
        return Ok(2);
    }
    if any_failure {
        return Ok(1);
    }
    Ok(0)
}
