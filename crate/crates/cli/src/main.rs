use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use confh_core::homology::BettiTable;
use confh_core::presentation::{describe, list_presets, preset_from_spec};
use confh_core::quasipoly::{verify_extremal_degree, Verdict};
use confh_core::selftest::{self, SelftestConfig};
use confh_core::{
    CheckReport, CohomologyPresentation, ComplexKind, Engine, EngineConfig, EngineError, RankMode, SignFault,
    VerdictKind,
};
use serde_json::json;

const EXIT_VERDICT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

/// Rational Betti numbers of unordered configuration spaces of manifolds.
#[derive(Parser, Debug)]
#[command(name = "confh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti numbers of B_n(M) as `n,degree,betti,method` rows.
    Betti {
        #[command(flatten)]
        manifold: ManifoldArgs,
        /// Number of points: `n` or an inclusive range `a..b`.
        #[arg(long = "n", value_name = "RANGE")]
        n: PointRange,
        /// Complex to take (co)homology of; `dual` needs a closed manifold.
        #[arg(long, value_enum, default_value_t = ComplexArg::Boundary)]
        complex: ComplexArg,
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Fit the extremal Betti sequence and compare its degree with k - 1.
    Extremal {
        #[command(flatten)]
        manifold: ManifoldArgs,
        /// Distance below ν_n; repeat for several offsets.
        #[arg(long = "offset", default_values_t = [0usize])]
        offsets: Vec<usize>,
        /// Largest n in the sequence (it starts at n = 2).
        #[arg(long = "n-max", default_value_t = 16)]
        n_max: usize,
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the structural check battery over the standard presets.
    Selftest {
        /// Largest number of points checked.
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        /// Corrupt the differential on purpose; the battery must then fail.
        #[arg(long = "inject-sign-fault")]
        inject_sign_fault: bool,
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the built-in manifolds.
    Presets,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ManifoldArgs {
    /// Built-in manifold, `name[:p1[,p2]]` (see `confh presets`).
    #[arg(long)]
    manifold: Option<String>,
    /// JSON manifold description.
    #[arg(long = "manifold-file", value_name = "PATH")]
    manifold_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EngineArgs {
    #[arg(long = "rank-mode", value_enum, default_value_t = RankArg::Hybrid)]
    rank_mode: RankArg,
    /// Only compute degrees within `t` of ν_n.
    #[arg(long, value_name = "T")]
    window: Option<usize>,
    /// Use the reduced complex (`auto`: when the manifold is closed).
    #[arg(long, value_enum, default_value_t = Toggle::Auto)]
    reduced: Toggle,
    /// Seed for prime selection; CONFH_SEED overrides it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker thread cap.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RankArg {
    Exact,
    Modular,
    Hybrid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Toggle {
    Auto,
    On,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ComplexArg {
    Boundary,
    Dual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Debug)]
struct PointRange(RangeInclusive<usize>);

impl FromStr for PointRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("`{t}` is not a point count"));
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let n = parse(s)?;
                (n, n)
            }
        };
        if a == 0 || a > b {
            return Err(format!("range `{s}` must be nonempty and start at 1 or more"));
        }
        Ok(PointRange(a..=b))
    }
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        let code = match e {
            EngineError::Internal(_) => EXIT_INTERNAL,
            EngineError::Config(_) | EngineError::Complex(_) => EXIT_USAGE,
        };
        Self { code, message: e.to_string() }
    }
}

fn load_manifold(args: &ManifoldArgs) -> Result<CohomologyPresentation, Failure> {
    match (&args.manifold, &args.manifold_file) {
        (Some(spec), None) => preset_from_spec(spec).map_err(|e| Failure::usage(e.to_string())),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            CohomologyPresentation::from_json(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
        }
        _ => Err(Failure::usage("give exactly one of --manifold or --manifold-file")),
    }
}

fn seed(flag: u64) -> Result<u64, Failure> {
    match std::env::var("CONFH_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::usage(format!("CONFH_SEED=`{v}` is not an unsigned integer"))),
        Err(_) => Ok(flag),
    }
}

fn engine_config(args: &EngineArgs, pres: Option<&CohomologyPresentation>) -> Result<EngineConfig, Failure> {
    let closed = pres.is_some_and(CohomologyPresentation::is_closed);
    Ok(EngineConfig {
        complex: ComplexKind::Boundary,
        reduced: match args.reduced {
            Toggle::Auto => closed,
            Toggle::On => true,
            Toggle::Off => false,
        },
        rank_mode: match args.rank_mode {
            RankArg::Exact => RankMode::Exact,
            RankArg::Modular => RankMode::Modular,
            RankArg::Hybrid => RankMode::Hybrid,
        },
        window: args.window,
        n_range: 1..=1,
        jobs: args.jobs,
        seed: seed(args.seed)?,
    })
}

fn render_table(table: &BettiTable, summary: &str, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => {
            let rows: Vec<_> = table
                .rows()
                .map(|(n, degree, e)| json!({"n": n, "degree": degree, "betti": e.betti, "method": e.method}))
                .collect();
            let doc = json!({"manifold": table.manifold, "dim": table.dim, "rows": rows});
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        Format::Text => {
            let mut out = format!("{} {summary}\n", table.manifold);
            for (n, column) in &table.columns {
                let cells: Vec<String> = column.entries.iter().map(|(d, e)| format!("b{d}={}", e.betti)).collect();
                let _ = writeln!(out, "n={n:<3} nu={:<4} {}", table.nu(*n), cells.join(" "));
            }
            out
        }
    }
}

fn run_betti(
    manifold: &ManifoldArgs,
    n: &PointRange,
    complex: ComplexArg,
    engine: &EngineArgs,
    format: Format,
) -> Result<u8, Failure> {
    let pres = load_manifold(manifold)?;
    let mut config = engine_config(engine, Some(&pres))?;
    config.complex = match complex {
        ComplexArg::Boundary => ComplexKind::Boundary,
        ComplexArg::Dual => ComplexKind::Dual,
    };
    config.n_range = n.0.clone();
    let table = Engine::new(&pres, config)?.betti_range()?;
    print!("{}", render_table(&table, &describe(&pres), format));
    Ok(0)
}

fn render_verdict(v: &Verdict, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", v.to_json()),
        Format::Csv => format!(
            "{},{},{},{},{},{},{}\n",
            v.manifold,
            v.offset,
            v.k,
            v.expected_degree.map_or(String::new(), |d| d.to_string()),
            v.fitted_degree.map_or(String::new(), |d| d.to_string()),
            v.onset.map_or(String::new(), |d| d.to_string()),
            v.verdict
        ),
        Format::Text => {
            let values: Vec<String> = v.sequence.iter().map(|(n, b)| format!("{n}:{b}")).collect();
            let mut out = format!(
                "{} offset {}: {} (k={}, expected degree {}, fitted {}, onset {})\n",
                v.manifold,
                v.offset,
                v.verdict,
                v.k,
                v.expected_degree.map_or("none".into(), |d| d.to_string()),
                v.fitted_degree.map_or("none".into(), |d| d.to_string()),
                v.onset.map_or("-".into(), |d| d.to_string()),
            );
            let _ = writeln!(out, "  values {}", values.join(" "));
            if let Some(q) = v.fit.as_ref().and_then(|f| f.quasi_polynomial.as_ref()) {
                let _ = writeln!(out, "  even n: {}\n  odd n:  {}", q.p_even, q.q_odd);
            }
            out
        }
    }
}

fn run_extremal(
    manifold: &ManifoldArgs,
    offsets: &[usize],
    n_max: usize,
    engine: &EngineArgs,
    format: Format,
) -> Result<u8, Failure> {
    let pres = load_manifold(manifold)?;
    let config = engine_config(engine, Some(&pres))?;
    if n_max < 2 {
        return Err(Failure::usage("--n-max must be at least 2"));
    }
    if format == Format::Csv {
        println!("manifold,offset,k,expected_degree,fitted_degree,onset,verdict");
    }
    let mut code = 0;
    for &offset in offsets {
        if config.window.is_some_and(|t| t < offset + 1) {
            return Err(Failure::usage(format!("--window must be at least offset + 1 = {}", offset + 1)));
        }
        let verdict = verify_extremal_degree(&pres, offset, n_max, &config)?;
        print!("{}", render_verdict(&verdict, format));
        if verdict.verdict == VerdictKind::Fail {
            code = EXIT_VERDICT_FAIL;
        }
    }
    Ok(code)
}

fn render_reports(reports: &[CheckReport], format: Format) -> String {
    match format {
        Format::Json => reports.iter().map(|r| format!("{}\n", serde_json::to_string(r).expect("json"))).collect(),
        Format::Csv => {
            let mut out = String::from("check,manifold,n,pass\n");
            for r in reports {
                let _ = writeln!(out, "{},{},{},{}", r.check, r.details["manifold"].as_str().unwrap_or(""), r.details["n"], r.pass);
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                let _ = writeln!(
                    out,
                    "{} {:<22} {:<14} n={}",
                    if r.pass { "ok  " } else { "FAIL" },
                    r.check,
                    r.details["manifold"].as_str().unwrap_or(""),
                    r.details["n"]
                );
            }
            let failed = reports.iter().filter(|r| !r.pass).count();
            let _ = writeln!(out, "{} checks, {failed} failed", reports.len());
            out
        }
    }
}

fn run_selftest(nmax: usize, fault: bool, engine: &EngineArgs, format: Format) -> Result<u8, Failure> {
    let config = SelftestConfig {
        n_max: nmax,
        engine: engine_config(engine, None)?,
        fault: fault.then_some(SignFault::DropPairKoszulSign),
    };
    let reports = selftest::run(&config)?;
    print!("{}", render_reports(&reports, format));
    Ok(if reports.iter().all(|r| r.pass) { 0 } else { EXIT_INTERNAL })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Betti { manifold, n, complex, engine, format } => run_betti(manifold, n, *complex, engine, *format),
        Command::Extremal { manifold, offsets, n_max, engine, format } => {
            run_extremal(manifold, offsets, *n_max, engine, *format)
        }
        Command::Selftest { nmax, inject_sign_fault, engine, format } => {
            run_selftest(*nmax, *inject_sign_fault, engine, *format)
        }
        Command::Presets => {
            print!("{}", list_presets());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors.
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("confh: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
