//! Command-line front end: argument types, subcommand handlers, and the
//! plain-text output formats.
//!
//! The `gfpm` binary is a thin wrapper over [`run`]. Every handler writes to
//! a caller-supplied stream, so the full pipeline is unit-testable without a
//! process boundary. Output is byte-deterministic for a fixed invocation:
//! row orders are fully specified, floats are printed with a fixed number of
//! significant digits, and wall-clock times never appear in `--stats` lines
//! (benchmark rows carry them in a dedicated column instead).
//!
//! Exit codes: `0` success, `1` runtime failure (bad file, unknown class,
//! engine disagreement, ...), `2` invocation error (unknown flags, values
//! outside their domain, ...).

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::benchgen::{generate, run_benchmark, BenchComparison, SynthConfig, GENERATOR_ALGORITHM};
use crate::fpgrowth::fp_growth;
use crate::fptree::build_fp_tree;
use crate::fraction::Fraction;
use crate::gfpgrowth::gfp_growth;
use crate::minority_report::{minority_report, MraConfig};
use crate::oracle::bf_frequent;
use crate::stats::MiningStats;
use crate::tistree::build_tis_from_target_list;
use crate::transactions::{
    item_counts, load_token_lines, load_transactions, support_descending_order, Item, TransactionDb,
};
use crate::Error;

/// Seed used when neither `--seed` nor `GFPM_SEED` is given.
pub const DEFAULT_SEED: u64 = 0;

/// Environment variable consulted for the seed when `--seed` is absent.
pub const SEED_ENV_VAR: &str = "GFPM_SEED";

/// Frequent-pattern and rare-class rule mining over basket files.
#[derive(Debug, Parser)]
#[command(name = "gfpm", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mine all frequent itemsets of a basket file.
    Mine(MineArgs),
    /// Count how often each listed target itemset occurs in a basket file.
    CountTargets(CountTargetsArgs),
    /// Mine rules predicting a rare class, with exact counts on both sides.
    Mra(MraArgs),
    /// Write a reproducible synthetic basket file.
    Gen(GenArgs),
    /// Compare the guided engine against the full FP-growth baseline.
    Bench(BenchArgs),
}

/// Exactly one of the two threshold spellings.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct ThresholdArgs {
    /// Minimum support as a fraction of the database size, e.g. 0.05
    #[arg(long, value_name = "FRACTION", value_parser = parse_fraction_arg)]
    pub min_support: Option<Fraction>,
    /// Minimum absolute transaction count, e.g. 25
    #[arg(long, value_name = "N")]
    pub min_count: Option<u64>,
}

impl ThresholdArgs {
    /// The absolute count this threshold means over `db_size` transactions.
    /// A fractional support is converted with an exact ceiling (and floored
    /// at 1 so that an empty database mines cleanly to an empty result).
    pub fn resolve(&self, db_size: u64) -> Result<u64, CliError> {
        match (self.min_support, self.min_count) {
            (Some(f), None) => {
                if f.is_zero() || !f.leq_ratio(1, 1) {
                    return Err(CliError::Usage(format!(
                        "minimum support must lie in (0, 1], got {f}"
                    )));
                }
                Ok(f.ceil_mul(db_size).max(1))
            }
            (None, Some(0)) => Err(CliError::Usage(
                "minimum count must be at least 1".to_string(),
            )),
            (None, Some(c)) => Ok(c),
            _ => unreachable!("the argument group admits exactly one threshold"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MineEngine {
    /// FP-tree pattern growth.
    Fp,
    /// Level-wise enumeration with linear-scan counting. Refuses databases
    /// with more than 20 distinct items; meant for cross-checking.
    BruteForce,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RuleFormat {
    /// One CSV row per rule (with a header row).
    Csv,
    /// One JSON object per rule per line.
    Jsonl,
}

#[derive(Args, Debug)]
pub struct MineArgs {
    /// Basket file: one transaction per line, items separated by spaces or
    /// commas, `#` lines ignored.
    #[arg(value_name = "FILE")]
    pub input: PathBuf,
    #[command(flatten)]
    pub threshold: ThresholdArgs,
    /// Mining engine. Both engines print identical rows.
    #[arg(long, value_enum, default_value = "fp")]
    pub engine: MineEngine,
    /// Append `# key=value` instrumentation lines after the rows.
    #[arg(long)]
    pub stats: bool,
    /// Write here instead of stdout.
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CountTargetsArgs {
    /// Basket file to count against.
    #[arg(value_name = "FILE")]
    pub input: PathBuf,
    /// File of target itemsets, one per line, same syntax as basket files.
    #[arg(long, value_name = "FILE")]
    pub targets: PathBuf,
    /// Append `# key=value` instrumentation lines after the rows.
    #[arg(long)]
    pub stats: bool,
    /// Write here instead of stdout.
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MraArgs {
    /// Basket file with one class token per transaction.
    #[arg(value_name = "FILE")]
    pub input: PathBuf,
    /// Class token the rules must predict.
    #[arg(long, value_name = "TOKEN", default_value = "1")]
    pub class: String,
    /// Minimum rule support as a fraction of the database size, in (0, 1).
    #[arg(long, value_name = "FRACTION", value_parser = parse_fraction_arg)]
    pub min_support: Fraction,
    /// Minimum rule confidence, in [0, 1].
    #[arg(long, value_name = "FRACTION", value_parser = parse_fraction_arg, default_value = "0")]
    pub min_confidence: Fraction,
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: RuleFormat,
    /// Append `# key=value` instrumentation lines after the rows.
    #[arg(long)]
    pub stats: bool,
    /// Write here instead of stdout.
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// Number of transactions to draw.
    #[arg(long, value_name = "N", default_value_t = 1000)]
    pub transactions: u64,
    /// Number of distinct non-class items ("i1".."iN").
    #[arg(long, value_name = "N", default_value_t = 20)]
    pub items: u32,
    /// Probability that each item appears in a transaction.
    #[arg(long, value_name = "P", default_value_t = 0.1)]
    pub p_item: f64,
    /// Probability that a transaction carries class "1" instead of "0".
    #[arg(long, value_name = "P", default_value_t = 0.05)]
    pub p_class: f64,
    /// RNG seed; falls back to the GFPM_SEED variable, then to 0.
    #[arg(long, value_name = "SEED")]
    pub seed: Option<u64>,
    /// Write here instead of stdout.
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Benchmark this basket file instead of generating synthetic data.
    #[arg(
        long,
        value_name = "FILE",
        conflicts_with_all = ["transactions", "items", "p_item", "p_class", "seed", "seeds", "jobs"]
    )]
    pub input: Option<PathBuf>,
    /// Synthetic mode: transactions per database.
    #[arg(long, value_name = "N", default_value_t = 2000)]
    pub transactions: u64,
    /// Synthetic mode: number of distinct non-class items.
    #[arg(long, value_name = "N", default_value_t = 16)]
    pub items: u32,
    /// Synthetic mode: per-item inclusion probability.
    #[arg(long, value_name = "P", default_value_t = 0.25)]
    pub p_item: f64,
    /// Synthetic mode: class-"1" probability.
    #[arg(long, value_name = "P", default_value_t = 0.02)]
    pub p_class: f64,
    /// Base RNG seed; falls back to the GFPM_SEED variable, then to 0.
    #[arg(long, value_name = "SEED")]
    pub seed: Option<u64>,
    /// How many consecutive seeds to benchmark, starting from the base seed.
    #[arg(long, value_name = "N", default_value_t = 1)]
    pub seeds: u64,
    /// Worker threads for independent seeds.
    #[arg(long, value_name = "N", default_value_t = 1)]
    pub jobs: usize,
    /// Class token the rules must predict.
    #[arg(long, value_name = "TOKEN", default_value = "1")]
    pub class: String,
    /// Minimum rule support as a fraction of the database size, in (0, 1).
    #[arg(long, value_name = "FRACTION", value_parser = parse_fraction_arg)]
    pub min_support: Fraction,
    /// Minimum rule confidence, in [0, 1].
    #[arg(long, value_name = "FRACTION", value_parser = parse_fraction_arg, default_value = "0")]
    pub min_confidence: Fraction,
    /// Write here instead of stdout.
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

/// A failed invocation, split by who got it wrong.
#[derive(Debug)]
pub enum CliError {
    /// The invocation itself is invalid; exits with status 2.
    Usage(String),
    /// A valid invocation failed while running; exits with status 1.
    Run(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Run(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Run(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Run(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Run(Error::Io(e))
    }
}

fn parse_fraction_arg(s: &str) -> Result<Fraction, String> {
    Fraction::parse(s).map_err(|e| e.to_string())
}

/// `x` with six significant digits and no exponent. The zero float prints
/// as a bare `0`.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Executes a parsed invocation and maps the outcome to an exit code,
/// reporting failures on stderr.
pub fn run(cli: Cli) -> i32 {
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("gfpm: {e}");
            e.exit_code()
        }
    }
}

/// Executes a parsed invocation against stdout or the chosen output file.
pub fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Mine(args) => with_output(args.output.clone(), |out| cmd_mine(&args, out)),
        Command::CountTargets(args) => {
            with_output(args.output.clone(), |out| cmd_count_targets(&args, out))
        }
        Command::Mra(args) => with_output(args.output.clone(), |out| cmd_mra(&args, out)),
        Command::Gen(args) => with_output(args.output.clone(), |out| cmd_gen(&args, out)),
        Command::Bench(args) => with_output(args.output.clone(), |out| cmd_bench(&args, out)),
    }
}

fn with_output(
    path: Option<PathBuf>,
    f: impl FnOnce(&mut dyn Write) -> Result<(), CliError>,
) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let file = File::create(&p).map_err(|e| io_with_path(e, &p))?;
            let mut out = io::BufWriter::new(file);
            f(&mut out)?;
            out.flush().map_err(|e| io_with_path(e, &p))?;
            Ok(())
        }
        None => {
            let stdout = io::stdout();
            let mut out = io::BufWriter::new(stdout.lock());
            f(&mut out)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn io_with_path(e: io::Error, path: &Path) -> CliError {
    CliError::Run(Error::Io(io::Error::new(
        e.kind(),
        format!("{}: {e}", path.display()),
    )))
}

fn load_db(path: &Path) -> Result<TransactionDb, CliError> {
    let file = File::open(path).map_err(|e| io_with_path(e, path))?;
    load_transactions(file).map_err(CliError::Run)
}

fn join_tokens(db: &TransactionDb, items: &[Item]) -> String {
    items
        .iter()
        .map(|&i| db.symbols().token(i))
        .collect::<Vec<_>>()
        .join(";")
}

fn write_stats(out: &mut dyn Write, stats: &MiningStats) -> io::Result<()> {
    // wall time is deliberately absent: `--stats` output stays byte-stable
    writeln!(
        out,
        "# conditional_trees_built={}",
        stats.conditional_trees_built
    )?;
    writeln!(out, "# nodes_allocated={}", stats.nodes_allocated)?;
    writeln!(out, "# header_probes={}", stats.header_probes)
}

/// Resolves the effective seed: an explicit flag wins, then the
/// [`SEED_ENV_VAR`] variable, then [`DEFAULT_SEED`].
pub fn resolve_seed(explicit: Option<u64>) -> Result<u64, CliError> {
    if let Some(seed) = explicit {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "{SEED_ENV_VAR} must be an unsigned integer, got {v:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_SEED),
        Err(std::env::VarError::NotUnicode(_)) => Err(CliError::Usage(format!(
            "{SEED_ENV_VAR} is not valid UTF-8"
        ))),
    }
}

pub fn cmd_mine(args: &MineArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let db = load_db(&args.input)?;
    let n = db.len() as u64;
    let min_count = args.threshold.resolve(n)?;
    let counts = item_counts(&db);
    let eligible: Vec<Item> = db
        .symbols()
        .items()
        .filter(|i| counts[i.index()] >= min_count)
        .collect();
    let order = support_descending_order(&db, &eligible);
    let mut stats = MiningStats::new();
    let mut rows: Vec<(u64, String)> = match args.engine {
        MineEngine::Fp => {
            let tree = build_fp_tree(&db, &order);
            stats.nodes_allocated += tree.node_count();
            let tis = fp_growth(&tree, min_count, &mut stats)?;
            let mut rows = Vec::with_capacity(tis.node_count());
            tis.visit(|items, node| rows.push((node.count(), join_tokens(&db, items))));
            rows
        }
        MineEngine::BruteForce => {
            // render in the same pattern-growth item order as the fp engine,
            // so both engines emit identical bytes
            let pg = order.reversed();
            bf_frequent(&db, min_count, usize::MAX)?
                .into_iter()
                .map(|(mut items, count)| {
                    items.sort_by_key(|&i| pg.rank(i).expect("frequent items are ranked"));
                    (count, join_tokens(&db, &items))
                })
                .collect()
        }
    };
    rows.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    writeln!(out, "itemset,count,support")?;
    for (count, itemset) in &rows {
        writeln!(
            out,
            "{itemset},{count},{}",
            fmt_sig(*count as f64 / n as f64)
        )?;
    }
    if args.stats {
        write_stats(out, &stats)?;
    }
    Ok(())
}

pub fn cmd_count_targets(args: &CountTargetsArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let db = load_db(&args.input)?;
    let target_file = File::open(&args.targets).map_err(|e| io_with_path(e, &args.targets))?;
    let lines = load_token_lines(target_file).map_err(CliError::Run)?;
    // a target stays unresolved if any of its tokens never occurs in the data
    let resolved: Vec<Option<Vec<Item>>> = lines
        .iter()
        .map(|tokens| tokens.iter().map(|t| db.symbols().get(t)).collect())
        .collect();
    let known: Vec<Vec<Item>> = resolved.iter().flatten().cloned().collect();
    let all_items: Vec<Item> = db.symbols().items().collect();
    let order = support_descending_order(&db, &all_items);
    let (mut tis, dropped) =
        build_tis_from_target_list(&known, &order.reversed(), &all_items).map_err(CliError::Run)?;
    debug_assert!(dropped.is_empty(), "the order covers every interned item");
    let tree = build_fp_tree(&db, &order);
    let mut stats = MiningStats::new();
    stats.nodes_allocated += tree.node_count();
    gfp_growth(&mut tis, &tree, &mut stats).map_err(CliError::Run)?;
    writeln!(out, "itemset,count")?;
    for (tokens, items) in lines.iter().zip(&resolved) {
        if items.is_none() {
            log::warn!(
                "target \"{}\" contains items absent from the data; counting it as 0",
                tokens.join(";")
            );
        }
        let count = items
            .as_ref()
            .and_then(|items| tis.find_node(items))
            .map_or(0, |id| tis.node(id).g_count());
        writeln!(out, "{},{count}", tokens.join(";"))?;
    }
    if args.stats {
        write_stats(out, &stats)?;
    }
    Ok(())
}

#[derive(serde::Serialize)]
struct RuleRow<'a> {
    antecedent: Vec<&'a str>,
    consequent: &'a str,
    support: f64,
    confidence: f64,
    count1: u64,
    count0: u64,
}

pub fn cmd_mra(args: &MraArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let db = load_db(&args.input)?;
    let class = db
        .symbols()
        .get(&args.class)
        .ok_or_else(|| CliError::Run(Error::UnknownItem(args.class.clone())))?;
    let cfg = MraConfig::new(class, args.min_support, args.min_confidence)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut stats = MiningStats::new();
    let rules = minority_report(&db, &cfg, &mut stats).map_err(CliError::Run)?;
    match args.format {
        RuleFormat::Csv => {
            writeln!(
                out,
                "antecedent,consequent,support,confidence,count1,count0"
            )?;
            for r in &rules {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    join_tokens(&db, &r.antecedent),
                    db.symbols().token(r.consequent),
                    fmt_sig(r.support),
                    fmt_sig(r.confidence),
                    r.count1,
                    r.count0
                )?;
            }
        }
        RuleFormat::Jsonl => {
            for r in &rules {
                let row = RuleRow {
                    antecedent: r
                        .antecedent
                        .iter()
                        .map(|&i| db.symbols().token(i))
                        .collect(),
                    consequent: db.symbols().token(r.consequent),
                    support: r.support,
                    confidence: r.confidence,
                    count1: r.count1,
                    count0: r.count0,
                };
                let line = serde_json::to_string(&row).expect("rule rows serialize");
                writeln!(out, "{line}")?;
            }
        }
    }
    if args.stats {
        write_stats(out, &stats)?;
    }
    Ok(())
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let seed = resolve_seed(args.seed)?;
    let cfg = SynthConfig::new(
        args.transactions,
        args.items,
        args.p_item,
        args.p_class,
        seed,
    )
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let db = generate(&cfg);
    writeln!(
        out,
        "# synthetic basket: transactions={} items={} p_item={} p_class={} rng={} seed={}",
        cfg.transactions, cfg.items, cfg.p_item, cfg.p_class, GENERATOR_ALGORITHM, cfg.seed
    )?;
    for t in db.transactions() {
        let tokens: Vec<&str> = t.items().iter().map(|&i| db.symbols().token(i)).collect();
        writeln!(out, "{}", tokens.join(" "))?;
    }
    Ok(())
}

pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    writeln!(
        out,
        "scenario,seed,engine,rules,cond_trees,nodes,header_probes,wall_ms"
    )?;
    if let Some(input) = &args.input {
        let db = load_db(input)?;
        let class = db
            .symbols()
            .get(&args.class)
            .ok_or_else(|| CliError::Run(Error::UnknownItem(args.class.clone())))?;
        let cfg = MraConfig::new(class, args.min_support, args.min_confidence)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let cmp = run_benchmark(&db, &cfg).map_err(CliError::Run)?;
        let scenario = input
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "file".to_string());
        write_bench_rows(out, &scenario, "-", &cmp)?;
        return Ok(());
    }
    if args.seeds == 0 {
        return Err(CliError::Usage("--seeds must be at least 1".to_string()));
    }
    if args.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".to_string()));
    }
    let base = resolve_seed(args.seed)?;
    let shape = SynthConfig::new(
        args.transactions,
        args.items,
        args.p_item,
        args.p_class,
        base,
    )
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let scenario = format!(
        "synth-n{}-m{}-pi{}-pc{}",
        shape.transactions, shape.items, shape.p_item, shape.p_class
    );
    let runs = run_seeded_benchmarks(
        shape,
        args.seeds,
        args.jobs,
        args.min_support,
        args.min_confidence,
    )?;
    for (seed, cmp) in &runs {
        write_bench_rows(out, &scenario, &seed.to_string(), cmp)?;
    }
    Ok(())
}

fn write_bench_rows(
    out: &mut dyn Write,
    scenario: &str,
    seed: &str,
    cmp: &BenchComparison,
) -> io::Result<()> {
    for (engine, run) in [("fpgrowth", &cmp.baseline), ("mra", &cmp.guided)] {
        writeln!(
            out,
            "{scenario},{seed},{engine},{},{},{},{},{:.3}",
            run.rules.len(),
            run.stats.conditional_trees_built,
            run.stats.nodes_allocated,
            run.stats.header_probes,
            run.stats.wall_time.as_secs_f64() * 1000.0
        )?;
    }
    Ok(())
}

/// Benchmarks `count` consecutive seeds starting at `shape.seed`, spread
/// over up to `jobs` threads; results come back in seed order regardless of
/// completion order.
fn run_seeded_benchmarks(
    shape: SynthConfig,
    count: u64,
    jobs: usize,
    min_support: Fraction,
    min_confidence: Fraction,
) -> Result<Vec<(u64, BenchComparison)>, CliError> {
    let seeds: Vec<u64> = (0..count).map(|i| shape.seed.wrapping_add(i)).collect();
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<crate::Result<BenchComparison>>>> =
        seeds.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(seeds.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= seeds.len() {
                    break;
                }
                let synth = SynthConfig {
                    seed: seeds[i],
                    ..shape
                };
                let db = generate(&synth);
                let result = db
                    .symbols()
                    .get("1")
                    .ok_or_else(|| Error::UnknownItem("1".to_string()))
                    .and_then(|class| MraConfig::new(class, min_support, min_confidence))
                    .and_then(|cfg| run_benchmark(&db, &cfg));
                *slots[i].lock().expect("benchmark workers do not panic") = Some(result);
            });
        }
    });
    let mut runs = Vec::with_capacity(seeds.len());
    for (&seed, slot) in seeds.iter().zip(slots) {
        match slot.into_inner().expect("benchmark workers do not panic") {
            Some(Ok(cmp)) => runs.push((seed, cmp)),
            // domain errors can only stem from the threshold values
            Some(Err(Error::InvalidConfig(m))) => return Err(CliError::Usage(m)),
            Some(Err(e)) => return Err(CliError::Run(e)),
            None => unreachable!("every seed slot gets claimed"),
        }
    }
    Ok(runs)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FOUR_ITEMS: &str = "f c m\nb c f m\nb f\nb c\nf c m\n";

    fn frac(s: &str) -> Fraction {
        Fraction::parse(s).unwrap()
    }

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f.flush().unwrap();
        f
    }

    fn mine_args(input: &Path, threshold: ThresholdArgs, engine: MineEngine) -> MineArgs {
        MineArgs {
            input: input.to_path_buf(),
            threshold,
            engine,
            stats: false,
            output: None,
        }
    }

    fn count_threshold(c: u64) -> ThresholdArgs {
        ThresholdArgs {
            min_support: None,
            min_count: Some(c),
        }
    }

    fn support_threshold(s: &str) -> ThresholdArgs {
        ThresholdArgs {
            min_support: Some(frac(s)),
            min_count: None,
        }
    }

    #[test]
    fn six_significant_digits() {
        assert_eq!(fmt_sig(0.125), "0.125000");
        assert_eq!(fmt_sig(0.25), "0.250000");
        assert_eq!(fmt_sig(0.2), "0.200000");
        assert_eq!(fmt_sig(1.0), "1.00000");
        assert_eq!(fmt_sig(12.5), "12.5000");
        assert_eq!(fmt_sig(123456.0), "123456");
        assert_eq!(fmt_sig(0.000002), "0.00000200000");
        assert_eq!(fmt_sig(0.0), "0");
    }

    #[test]
    fn threshold_resolution() {
        assert_eq!(support_threshold("0.125").resolve(8).unwrap(), 1);
        assert_eq!(support_threshold("5e-5").resolve(25000).unwrap(), 2);
        assert_eq!(support_threshold("1").resolve(6).unwrap(), 6);
        // floor at one transaction, so an empty file still mines cleanly
        assert_eq!(support_threshold("0.5").resolve(0).unwrap(), 1);
        assert_eq!(count_threshold(3).resolve(8).unwrap(), 3);
        assert!(matches!(
            support_threshold("1.5").resolve(8),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            support_threshold("0").resolve(8),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            count_threshold(0).resolve(8),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn invocations_parse_and_bad_ones_do_not() {
        assert!(Cli::try_parse_from(["gfpm", "mine", "db.basket", "--min-support", "0.1"]).is_ok());
        assert!(Cli::try_parse_from(["gfpm", "mine", "db.basket", "--min-count", "3"]).is_ok());
        // the two threshold spellings are mutually exclusive and required
        assert!(Cli::try_parse_from(["gfpm", "mine", "db.basket"]).is_err());
        assert!(Cli::try_parse_from([
            "gfpm",
            "mine",
            "db.basket",
            "--min-support",
            "0.1",
            "--min-count",
            "3"
        ])
        .is_err());
        assert!(
            Cli::try_parse_from(["gfpm", "mine", "db.basket", "--min-support", "abc"]).is_err()
        );
        assert!(
            Cli::try_parse_from(["gfpm", "count-targets", "db.basket", "--targets", "t.txt"])
                .is_ok()
        );
        assert!(Cli::try_parse_from([
            "gfpm",
            "mra",
            "db.basket",
            "--min-support",
            "0.05",
            "--min-confidence",
            "0.3",
            "--format",
            "jsonl"
        ])
        .is_ok());
        assert!(Cli::try_parse_from(["gfpm", "gen", "--seed", "7"]).is_ok());
        assert!(Cli::try_parse_from(["gfpm", "bench", "--min-support", "0.01"]).is_ok());
        // file mode conflicts with the synthetic shape
        assert!(Cli::try_parse_from([
            "gfpm",
            "bench",
            "--input",
            "db.basket",
            "--seeds",
            "4",
            "--min-support",
            "0.01"
        ])
        .is_err());
        assert!(Cli::try_parse_from(["gfpm", "nonsense"]).is_err());
    }

    #[test]
    fn mine_engines_emit_identical_golden_rows() {
        let input = write_temp(FOUR_ITEMS);
        let expected = "\
itemset,count,support
c,4,0.800000
f,4,0.800000
b,3,0.600000
c;f,3,0.600000
m,3,0.600000
m;c,3,0.600000
m;c;f,3,0.600000
m;f,3,0.600000
";
        for engine in [MineEngine::Fp, MineEngine::BruteForce] {
            let mut buf = Vec::new();
            cmd_mine(
                &mine_args(input.path(), count_threshold(3), engine),
                &mut buf,
            )
            .unwrap();
            assert_eq!(String::from_utf8(buf).unwrap(), expected, "{engine:?}");
        }
    }

    #[test]
    fn mine_stats_lines_have_no_wall_time() {
        let input = write_temp(FOUR_ITEMS);
        let mut args = mine_args(input.path(), count_threshold(3), MineEngine::Fp);
        args.stats = true;
        let mut buf = Vec::new();
        cmd_mine(&args, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let stat_lines: Vec<&str> = text.lines().filter(|l| l.starts_with('#')).collect();
        assert_eq!(stat_lines.len(), 3);
        assert!(stat_lines[0].starts_with("# conditional_trees_built="));
        assert!(stat_lines[1].starts_with("# nodes_allocated="));
        assert!(stat_lines[2].starts_with("# header_probes="));
        assert!(!text.contains("wall"));
    }

    #[test]
    fn count_targets_keeps_input_order_and_zeroes_unknowns() {
        let input = write_temp(FOUR_ITEMS);
        let targets = write_temp("f\nc\nb\nm\nf m\nzz\nf m\n");
        let args = CountTargetsArgs {
            input: input.path().to_path_buf(),
            targets: targets.path().to_path_buf(),
            stats: false,
            output: None,
        };
        let mut buf = Vec::new();
        cmd_count_targets(&args, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "itemset,count\nf,4\nc,4\nb,3\nm,3\nf;m,3\nzz,0\nf;m,3\n"
        );
    }

    #[test]
    fn mra_csv_golden_on_the_worked_dataset() {
        let input = write_temp(crate::transactions::tests::WORKED_BASKET);
        let args = MraArgs {
            input: input.path().to_path_buf(),
            class: "1".to_string(),
            min_support: frac("0.125"),
            min_confidence: frac("0.2"),
            format: RuleFormat::Csv,
            stats: false,
            output: None,
        };
        let mut buf = Vec::new();
        cmd_mra(&args, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "\
antecedent,consequent,support,confidence,count1,count0
b,1,0.125000,0.250000,1,3
m,1,0.125000,0.250000,1,3
m;f,1,0.125000,0.250000,1,3
c,1,0.125000,0.200000,1,4
f,1,0.125000,0.200000,1,4
"
        );
    }

    #[test]
    fn mra_jsonl_rows_parse_back() {
        let input = write_temp(crate::transactions::tests::WORKED_BASKET);
        let args = MraArgs {
            input: input.path().to_path_buf(),
            class: "1".to_string(),
            min_support: frac("0.125"),
            min_confidence: frac("0.2"),
            format: RuleFormat::Jsonl,
            stats: false,
            output: None,
        };
        let mut buf = Vec::new();
        cmd_mra(&args, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let rows: Vec<serde_json::Value> = text
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[0]["antecedent"], serde_json::json!(["b"]));
        assert_eq!(rows[0]["consequent"], "1");
        assert_eq!(rows[0]["support"], 0.125);
        assert_eq!(rows[0]["confidence"], 0.25);
        assert_eq!(rows[2]["antecedent"], serde_json::json!(["m", "f"]));
        assert_eq!(rows[2]["count0"], 3);
    }

    #[test]
    fn mra_rejects_unknown_class_and_bad_domains() {
        let input = write_temp(FOUR_ITEMS);
        let mut args = MraArgs {
            input: input.path().to_path_buf(),
            class: "1".to_string(),
            min_support: frac("0.125"),
            min_confidence: frac("0.2"),
            format: RuleFormat::Csv,
            stats: false,
            output: None,
        };
        let err = cmd_mra(&args, &mut Vec::new()).unwrap_err();
        assert_eq!(err.exit_code(), 1, "class token absent from the data");
        args.class = "f".to_string();
        args.min_support = frac("1");
        let err = cmd_mra(&args, &mut Vec::new()).unwrap_err();
        assert_eq!(err.exit_code(), 2, "support outside (0, 1)");
    }

    #[test]
    fn gen_output_reloads_to_the_same_database() {
        let args = GenArgs {
            transactions: 60,
            items: 6,
            p_item: 0.3,
            p_class: 0.2,
            seed: Some(5),
            output: None,
        };
        let mut buf = Vec::new();
        cmd_gen(&args, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let header = text.lines().next().unwrap();
        assert!(header.starts_with("# synthetic basket:"));
        assert!(header.contains("rng=ChaCha12"));
        assert!(header.contains("seed=5"));
        let reloaded = load_transactions(std::io::Cursor::new(&text)).unwrap();
        let direct = generate(&SynthConfig::new(60, 6, 0.3, 0.2, 5).unwrap());
        assert_eq!(reloaded.len(), direct.len());
        // token-level comparison; the two symbol tables intern in different orders
        let rows = |db: &TransactionDb| -> Vec<Vec<String>> {
            db.transactions()
                .iter()
                .map(|t| {
                    let mut toks: Vec<String> = t
                        .items()
                        .iter()
                        .map(|&i| db.symbols().token(i).to_string())
                        .collect();
                    toks.sort();
                    toks
                })
                .collect()
        };
        assert_eq!(rows(&reloaded), rows(&direct));
    }

    #[test]
    fn bench_file_mode_reports_both_engines() {
        let input = write_temp(crate::transactions::tests::WORKED_BASKET);
        let args = BenchArgs {
            input: Some(input.path().to_path_buf()),
            transactions: 2000,
            items: 16,
            p_item: 0.25,
            p_class: 0.02,
            seed: None,
            seeds: 1,
            jobs: 1,
            class: "1".to_string(),
            min_support: frac("0.125"),
            min_confidence: frac("0.2"),
            output: None,
        };
        let mut buf = Vec::new();
        cmd_bench(&args, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(
            lines[0],
            "scenario,seed,engine,rules,cond_trees,nodes,header_probes,wall_ms"
        );
        let fp: Vec<&str> = lines[1].split(',').collect();
        let mra: Vec<&str> = lines[2].split(',').collect();
        assert_eq!(fp[1..4], ["-", "fpgrowth", "5"]);
        assert_eq!(mra[1..4], ["-", "mra", "5"]);
    }

    #[test]
    fn bench_synth_rows_are_seed_ordered_and_stable_across_jobs() {
        let args = |jobs: usize| BenchArgs {
            input: None,
            transactions: 250,
            items: 10,
            p_item: 0.3,
            p_class: 0.1,
            seed: Some(40),
            seeds: 3,
            jobs,
            class: "1".to_string(),
            min_support: frac("0.02"),
            min_confidence: frac("0"),
            output: None,
        };
        let masked = |args: &BenchArgs| -> Vec<String> {
            let mut buf = Vec::new();
            cmd_bench(args, &mut buf).unwrap();
            String::from_utf8(buf)
                .unwrap()
                .lines()
                .map(|l| {
                    let mut cols: Vec<&str> = l.split(',').collect();
                    *cols.last_mut().unwrap() = "_";
                    cols.join(",")
                })
                .collect()
        };
        let serial = masked(&args(1));
        assert_eq!(serial.len(), 7);
        let seed_cols: Vec<&str> = serial[1..]
            .iter()
            .map(|l| l.split(',').nth(1).unwrap())
            .collect();
        assert_eq!(seed_cols, ["40", "40", "41", "41", "42", "42"]);
        assert_eq!(
            serial,
            masked(&args(3)),
            "results must not depend on --jobs"
        );
    }
}
