use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use maitred::dyadic::decimal;
use maitred::emit::{self, exact_with_decimal, DistributionRecord, FigureRow};
use maitred::montecarlo::{mc_random_seating, mc_strategy, Estimate, RNG_NAME};
use maitred::optimizer::{optimal_value_oracle, ClassShape, PolicyProbe, SegmentClass};
use maitred::recurrence::{bounds_scan, e_s_table, e_s_table_float, e_stilde_table, e_w, Arithmetic, BoundsWindow};
use maitred::verify::{verify, Group, VerifyConfig};
use maitred::{Dyadic, Enumerator, Execution, PreferenceOrder, StrategyId};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "maitred", version, about = "Adaptive seating strategies for the malicious maitre d' problem")]
struct Cli {
    /// Worker threads (defaults to MAITRED_THREADS, then the number of CPUs).
    #[arg(long, global = true, env = "MAITRED_THREADS", value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Seat one preference order and draw the table.
    Simulate(SimulateArgs),
    /// Exact napkinless distribution over all 2^n preference orders.
    Enumerate(EnumerateArgs),
    /// Expected napkinless count from the recurrences.
    Expect(ExpectArgs),
    /// Window bounds on the shunning proportion.
    Bounds(BoundsArgs),
    /// Optimal expected napkinless count over all adaptive strategies.
    Optimal(OptimalArgs),
    /// Write figure1.csv and figure5.csv.
    Figures(FiguresArgs),
    /// Monte Carlo estimates for random seating or a strategy.
    Baseline(BaselineArgs),
    /// Run the self-verification report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Strategy {
    W,
    S,
    Stilde,
}

impl From<Strategy> for StrategyId {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::W => StrategyId::W,
            Strategy::S => StrategyId::S,
            Strategy::Stilde => StrategyId::STilde,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Mode {
    #[default]
    Exact,
    Float,
}

impl From<Mode> for Arithmetic {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exact => Arithmetic::Exact,
            Mode::Float => Arithmetic::Float,
        }
    }
}

/// `A..B` or `A..=B`, inclusive either way.
fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

#[derive(Args, Debug)]
struct Sizes {
    /// Table size.
    #[arg(long, conflicts_with = "n_range")]
    n: Option<usize>,
    /// Inclusive range of table sizes, `A..B`.
    #[arg(long, value_parser = parse_range)]
    n_range: Option<RangeInclusive<usize>>,
}

impl Sizes {
    fn resolve(&self, default: RangeInclusive<usize>) -> RangeInclusive<usize> {
        match (&self.n, &self.n_range) {
            (Some(n), _) => *n..=*n,
            (None, Some(r)) => r.clone(),
            (None, None) => default,
        }
    }
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    strategy: Strategy,
    /// Table size; defaults to the length of --sigma.
    #[arg(long)]
    n: Option<usize>,
    /// Preferences as R/L letters or a comma-separated list of +1/-1.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "seed", conflicts_with = "seed")]
    sigma: Option<String>,
    /// Draw a random preference order instead.
    #[arg(long, requires = "n")]
    seed: Option<u64>,
    /// Draw the table after every diner.
    #[arg(long)]
    steps: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long, value_enum)]
    strategy: Strategy,
    #[command(flatten)]
    sizes: Sizes,
    /// Largest n allowed for brute force.
    #[arg(long, default_value_t = maitred::enumerate::DEFAULT_MAX_N)]
    max_n: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct ExpectArgs {
    #[arg(long, value_enum)]
    strategy: Strategy,
    #[command(flatten)]
    sizes: Sizes,
    #[arg(long, value_enum, default_value_t)]
    mode: Mode,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    /// Window start k; the window covers n = k..2k-2.
    #[arg(long, conflicts_with = "k_range")]
    k: Option<usize>,
    /// Inclusive range of window starts, `A..B`.
    #[arg(long, value_parser = parse_range)]
    k_range: Option<RangeInclusive<usize>>,
    #[arg(long, value_enum, default_value_t)]
    mode: Mode,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct OptimalArgs {
    #[command(flatten)]
    sizes: Sizes,
    /// Also solve each table with the full-state oracle (n <= 12).
    #[arg(long)]
    oracle: bool,
    /// Report optimal positions for a segment class, e.g. `I:7`, `RL:4`, `O:5`.
    #[arg(long)]
    probe: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct FiguresArgs {
    #[arg(long, value_parser = parse_range, default_value = "3..100")]
    n_range: RangeInclusive<usize>,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct BaselineArgs {
    /// Estimate a strategy instead of uniformly random seating.
    #[arg(long, value_enum)]
    strategy: Option<Strategy>,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Comma-separated check groups to run.
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    #[arg(long, default_value_t = VerifyConfig::default().seed)]
    seed: u64,
    /// Trials for the strategy Monte Carlo check.
    #[arg(long, default_value_t = VerifyConfig::default().mc_trials)]
    trials: u64,
    /// Largest window start in the bounds scan.
    #[arg(long, default_value_t = VerifyConfig::default().bounds_k)]
    bounds_k: usize,
    #[command(flatten)]
    output: Output,
}

enum Failure {
    Usage(String),
    Io(String),
    Verify(String),
}

impl From<maitred::Error> for Failure {
    fn from(e: maitred::Error) -> Self {
        match e {
            maitred::Error::Io(m) => Failure::Io(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn emit_to(output: &Output, body: &[u8]) -> CmdResult {
    match &output.out {
        Some(path) => fs::write(path, body).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => io::stdout().write_all(body).map_err(|e| Failure::Io(e.to_string())),
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

#[derive(Serialize)]
struct SimulationRecord<'a> {
    strategy: &'static str,
    n: usize,
    sigma: String,
    seed: Option<u64>,
    rng: Option<&'static str>,
    arrangement: Vec<usize>,
    napkinless: Vec<usize>,
    trace: &'a [maitred::table::TraceStep],
}

fn cmd_simulate(a: &SimulateArgs) -> CmdResult {
    let sigma: PreferenceOrder = match (&a.sigma, a.seed) {
        (Some(s), _) => s.parse()?,
        (None, Some(seed)) => {
            let n = a.n.expect("clap requires --n with --seed");
            if n == 0 {
                return Err(maitred::Error::EmptyTable.into());
            }
            maitred::montecarlo::random_order(&mut maitred::montecarlo::chunk_rng(seed, 0), n)
        }
        (None, None) => unreachable!("clap requires --sigma or --seed"),
    };
    let n = a.n.unwrap_or(sigma.len());
    let strategy = StrategyId::from(a.strategy);
    let out = maitred::run(strategy, n, &sigma)?;
    let body = match a.output.format {
        Format::Json => json_line(&SimulationRecord {
            strategy: strategy.name(),
            n,
            sigma: sigma.to_string(),
            seed: a.seed,
            rng: a.seed.map(|_| RNG_NAME),
            arrangement: out.arrangement(),
            napkinless: out.napkinless(),
            trace: out.trace(),
        }),
        Format::Csv => csv_table(
            &["step", "label", "diner", "seat", "take"],
            out.trace().iter().enumerate().map(|(i, s)| {
                vec![
                    (i + 1).to_string(),
                    s.label.to_string(),
                    s.diner.to_string(),
                    s.seat.to_string(),
                    serde_json::to_value(s.take).expect("enum").as_str().unwrap_or("").to_string(),
                ]
            }),
        ),
        Format::Text => {
            let mut s = format!("strategy {strategy}, n = {n}, sigma = {sigma}\n");
            if let Some(seed) = a.seed {
                s.push_str(&format!("seed {seed}, rng {RNG_NAME}\n"));
            }
            for (i, step) in out.trace().iter().enumerate() {
                s.push_str(&format!(
                    "{:>8} diner {:>3} -> seat {:>3}, takes {:?}\n",
                    step.label.to_string(),
                    step.diner,
                    step.seat,
                    step.take
                ));
                if a.steps {
                    s.push_str(&out.state_after(i + 1).render());
                    s.push_str("\n\n");
                }
            }
            if !a.steps {
                s.push('\n');
                s.push_str(&out.table().render());
                s.push_str("\n\n");
            }
            s.push_str(&format!("napkinless: {:?} (count {})\n", out.napkinless(), out.napkinless_count()));
            s
        }
    };
    emit_to(&a.output, body.as_bytes())
}

fn cmd_enumerate(a: &EnumerateArgs, exec: Execution) -> CmdResult {
    let strategy = StrategyId::from(a.strategy);
    let en = Enumerator::new().with_max_n(a.max_n).with_execution(exec);
    let polys = a
        .sizes
        .resolve(1..=12)
        .map(|n| en.distribution(strategy, n))
        .collect::<Result<Vec<_>, _>>()?;
    let body = match a.output.format {
        Format::Csv => {
            let mut buf = Vec::new();
            emit::write_distribution_csv(&mut buf, &polys)?;
            String::from_utf8(buf).expect("ascii")
        }
        Format::Json => {
            let records: Vec<_> = polys.iter().map(|p| DistributionRecord::new(strategy.name(), p)).collect();
            if records.len() == 1 {
                json_line(&records[0])
            } else {
                json_line(&records)
            }
        }
        Format::Text => polys
            .iter()
            .map(|p| format!("n = {:>2}: {}    E = {}\n", p.n, p, exact_with_decimal(&p.expectation())))
            .collect(),
    };
    emit_to(&a.output, body.as_bytes())
}

#[derive(Serialize)]
struct ExpectRecord {
    n: usize,
    strategy: &'static str,
    expectation: Option<Dyadic>,
    decimal: String,
    proportion: String,
}

fn cmd_expect(a: &ExpectArgs) -> CmdResult {
    let strategy = StrategyId::from(a.strategy);
    let range = a.sizes.resolve(3..=20);
    if *range.start() == 0 {
        return Err(maitred::Error::EmptyTable.into());
    }
    let hi = *range.end();
    let values: Vec<(usize, Option<Dyadic>, f64)> = match (strategy, a.mode) {
        (StrategyId::W, Mode::Exact) => range.map(|n| (n, Some(e_w(n)), e_w(n).to_f64())).collect(),
        (StrategyId::W, Mode::Float) => range.map(|n| (n, None, e_w(n).to_f64())).collect(),
        (StrategyId::S, Mode::Exact) => {
            let t = e_s_table(hi);
            range.map(|n| (n, Some(t[n].clone()), t[n].to_f64())).collect()
        }
        (StrategyId::S, Mode::Float) => {
            let t = e_s_table_float(hi);
            range.map(|n| (n, None, t[n])).collect()
        }
        (StrategyId::STilde, mode) => {
            let t = e_stilde_table(hi)?;
            let exact = matches!(mode, Mode::Exact);
            range.map(|n| (n, exact.then(|| t[n].clone()), t[n].to_f64())).collect()
        }
    };
    let records: Vec<ExpectRecord> = values
        .into_iter()
        .map(|(n, exact, x)| ExpectRecord {
            n,
            strategy: strategy.name(),
            expectation: exact,
            decimal: decimal(x, emit::DECIMAL_DIGITS),
            proportion: decimal(x / n as f64, emit::DECIMAL_DIGITS),
        })
        .collect();
    let body = match a.output.format {
        Format::Json => json_line(&records),
        Format::Csv => csv_table(
            &["n", "strategy", "expectation", "decimal", "proportion"],
            records.iter().map(|r| {
                vec![
                    r.n.to_string(),
                    r.strategy.to_string(),
                    r.expectation.as_ref().map(|e| e.to_string()).unwrap_or_default(),
                    r.decimal.clone(),
                    r.proportion.clone(),
                ]
            }),
        ),
        Format::Text => records
            .iter()
            .map(|r| {
                let exact = r.expectation.as_ref().map(|e| format!("{e}  ")).unwrap_or_default();
                format!("E^{}_{} = {exact}{}  (per diner {})\n", r.strategy, r.n, r.decimal, r.proportion)
            })
            .collect(),
    };
    emit_to(&a.output, body.as_bytes())
}

fn cmd_bounds(a: &BoundsArgs) -> CmdResult {
    let range = match (a.k, &a.k_range) {
        (Some(k), _) => k..=k,
        (None, Some(r)) => r.clone(),
        (None, None) => 3..=3,
    };
    let scan = bounds_scan(*range.end(), a.mode.into())?;
    let windows: Vec<&BoundsWindow> = scan.iter().filter(|w| range.contains(&w.k)).collect();
    if windows.is_empty() {
        return Err(Failure::Usage("window start must be at least 2".into()));
    }
    let body = match a.output.format {
        Format::Json => json_line(&windows),
        Format::Csv => csv_table(
            &["k", "alpha_n", "alpha", "beta_n", "beta"],
            windows.iter().map(|w| {
                vec![
                    w.k.to_string(),
                    w.alpha.n.to_string(),
                    decimal(w.alpha.ratio, emit::DECIMAL_DIGITS),
                    w.beta.n.to_string(),
                    decimal(w.beta.ratio, emit::DECIMAL_DIGITS),
                ]
            }),
        ),
        Format::Text => windows
            .iter()
            .map(|w| {
                format!(
                    "k = {}: alpha = E_{}/{} = {}, beta = E_{}/{} = {}\n",
                    w.k,
                    w.alpha.n,
                    w.alpha.n,
                    decimal(w.alpha.ratio, emit::DECIMAL_DIGITS),
                    w.beta.n,
                    w.beta.n,
                    decimal(w.beta.ratio, emit::DECIMAL_DIGITS)
                )
            })
            .collect(),
    };
    emit_to(&a.output, body.as_bytes())
}

fn parse_probe(s: &str) -> Result<SegmentClass, Failure> {
    let (shape, size) = s
        .split_once(':')
        .ok_or_else(|| Failure::Usage(format!("probe must look like I:7, got {s:?}")))?;
    let shape: ClassShape = shape.parse()?;
    let size: usize = size.trim().parse().map_err(|_| Failure::Usage(format!("bad segment size in {s:?}")))?;
    Ok(SegmentClass::new(shape, size))
}

fn cmd_optimal(a: &OptimalArgs) -> CmdResult {
    if let Some(p) = &a.probe {
        let class = parse_probe(p)?;
        let argmax = maitred::optimal_policy_probe(class)?;
        let probe = PolicyProbe { shape: class.shape, size: class.size, argmax };
        let body = match a.output.format {
            Format::Json | Format::Csv => serde_json::to_string(&probe).expect("plain data") + "\n",
            Format::Text => format!("{}_{}: optimal positions {:?}\n", probe.shape.name(), probe.size, probe.argmax),
        };
        return emit_to(&a.output, body.as_bytes());
    }
    let range = a.sizes.resolve(3..=20);
    if *range.start() == 0 {
        return Err(maitred::Error::EmptyTable.into());
    }
    let oracle: Vec<Option<Dyadic>> = if a.oracle {
        range.clone().map(|n| optimal_value_oracle(n).map(Some)).collect::<Result<_, _>>()?
    } else {
        vec![None; range.clone().count()]
    };
    let rows = emit::figure_rows(range)?;
    let body = match a.output.format {
        Format::Csv => {
            let mut buf = Vec::new();
            emit::write_optimal(&mut buf, &rows)?;
            String::from_utf8(buf).expect("ascii")
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Rec<'a> {
                #[serde(flatten)]
                row: &'a FigureRow,
                oracle: &'a Option<Dyadic>,
            }
            let recs: Vec<_> = rows.iter().zip(&oracle).map(|(row, oracle)| Rec { row, oracle }).collect();
            json_line(&recs)
        }
        Format::Text => rows
            .iter()
            .zip(&oracle)
            .map(|(r, o)| {
                let check = o.as_ref().map(|o| format!("  oracle {o}")).unwrap_or_default();
                format!(
                    "n = {:>3}: V = {}  per diner {}{check}\n",
                    r.n,
                    exact_with_decimal(&r.v_opt),
                    emit::ratio_decimal(&r.v_opt, r.n)
                )
            })
            .collect(),
    };
    emit_to(&a.output, body.as_bytes())
}

fn write_file(path: &Path, f: impl FnOnce(&mut Vec<u8>) -> maitred::Result<()>) -> CmdResult {
    let mut buf = Vec::new();
    f(&mut buf)?;
    fs::write(path, buf).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn cmd_figures(a: &FiguresArgs) -> CmdResult {
    let rows = emit::figure_rows(a.n_range.clone())?;
    write_file(&a.out.join("figure1.csv"), |b| emit::write_figure1(b, &rows))?;
    write_file(&a.out.join("figure5.csv"), |b| emit::write_figure5(b, &rows))?;
    println!("wrote {} rows to {}", rows.len(), a.out.display());
    Ok(())
}

#[derive(Serialize)]
struct BaselineRecord {
    target: String,
    n: usize,
    #[serde(flatten)]
    estimate: Estimate,
    threads: usize,
}

fn cmd_baseline(a: &BaselineArgs, exec: Execution) -> CmdResult {
    let (target, est) = match a.strategy {
        Some(s) => {
            let id = StrategyId::from(s);
            (format!("strategy {id}"), mc_strategy(id, a.n, a.trials, a.seed, exec)?)
        }
        None => ("random seating proportion".to_string(), mc_random_seating(a.n, a.trials, a.seed, exec)?),
    };
    let rec = BaselineRecord { target, n: a.n, estimate: est, threads: rayon::current_num_threads() };
    let body = match a.output.format {
        Format::Json => json_line(&rec),
        Format::Csv => csv_table(
            &["target", "n", "trials", "seed", "rng", "mean", "std_error"],
            [vec![
                rec.target.clone(),
                rec.n.to_string(),
                rec.estimate.trials.to_string(),
                rec.estimate.seed.to_string(),
                rec.estimate.rng.clone(),
                format!("{}", rec.estimate.mean),
                format!("{}", rec.estimate.std_error),
            ]],
        ),
        Format::Text => format!(
            "{} at n = {}: mean {:.8}, standard error {:.2e}\ntrials {}, seed {}, rng {}, threads {}\n",
            rec.target,
            rec.n,
            rec.estimate.mean,
            rec.estimate.std_error,
            rec.estimate.trials,
            rec.estimate.seed,
            rec.estimate.rng,
            rec.threads
        ),
    };
    emit_to(&a.output, body.as_bytes())
}

fn cmd_verify(a: &VerifyArgs, exec: Execution) -> CmdResult {
    let only = a
        .only
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<Group>())
        .collect::<Result<Vec<_>, _>>()?;
    let config = VerifyConfig {
        seed: a.seed,
        mc_trials: a.trials,
        bounds_k: a.bounds_k,
        execution: exec,
        ..VerifyConfig::default()
    };
    let report = verify(&config, &only);
    let body = match a.output.format {
        Format::Json => report.to_json() + "\n",
        Format::Text | Format::Csv => report.to_text(),
    };
    emit_to(&a.output, body.as_bytes())?;
    match report.failures().map(|c| c.name.clone()).collect::<Vec<_>>() {
        failed if failed.is_empty() => Ok(()),
        failed => Err(Failure::Verify(format!("failed checks: {}", failed.join("; ")))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t as usize).build_global() {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(2);
        }
    }
    let exec = Execution::default();
    let result = match &cli.command {
        Command::Simulate(a) => cmd_simulate(a),
        Command::Enumerate(a) => cmd_enumerate(a, exec),
        Command::Expect(a) => cmd_expect(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Optimal(a) => cmd_optimal(a),
        Command::Figures(a) => cmd_figures(a),
        Command::Baseline(a) => cmd_baseline(a, exec),
        Command::Verify(a) => cmd_verify(a, exec),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
