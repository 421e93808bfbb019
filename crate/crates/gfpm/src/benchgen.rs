//! Synthetic imbalanced databases and an engine-versus-engine benchmark.
//!
//! The generator draws independent Bernoulli bits from a seeded ChaCha12
//! stream, so a `(config, seed)` pair names one exact database on every
//! platform. The benchmark runs the classical engine (mine *every* frequent
//! itemset of the full database, then keep the class-bearing ones) and the
//! guided engine against the same database, checks they produce the same
//! rule set, and reports both instrumentation counters and wall times.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::fpgrowth::fp_growth;
use crate::fptree::build_fp_tree;
use crate::minority_report::{minority_report, MraConfig, Rule};
use crate::stats::MiningStats;
use crate::transactions::{
    item_counts, support_descending_order, Item, SymbolTable, Transaction, TransactionDb,
};
use crate::{Error, Result};

/// Name of the random stream behind [`generate`], recorded in generated
/// file headers so a dataset can be reproduced later.
pub const GENERATOR_ALGORITHM: &str = "ChaCha12";

/// Shape of a synthetic database: every transaction carries exactly one
/// class token ("1" with probability `p_class`, else "0") plus each of
/// `items` candidate items independently with probability `p_item`.
#[derive(Clone, Copy, Debug)]
pub struct SynthConfig {
    pub transactions: u64,
    pub items: u32,
    pub p_item: f64,
    pub p_class: f64,
    pub seed: u64,
}

impl SynthConfig {
    pub fn new(
        transactions: u64,
        items: u32,
        p_item: f64,
        p_class: f64,
        seed: u64,
    ) -> Result<Self> {
        if transactions == 0 {
            return Err(Error::InvalidConfig(
                "transaction count must be positive".into(),
            ));
        }
        if items == 0 {
            return Err(Error::InvalidConfig("item count must be positive".into()));
        }
        for (name, p) in [("item probability", p_item), ("class probability", p_class)] {
            if !p.is_finite() || !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must lie in [0, 1], got {p}"
                )));
            }
        }
        Ok(SynthConfig {
            transactions,
            items,
            p_item,
            p_class,
            seed,
        })
    }
}

/// Draws a database from `cfg`. Tokens are interned in a fixed order —
/// "0", "1", then "i1".."iN" — and per transaction the class bit is drawn
/// first, then the item bits in index order, so output depends only on
/// `cfg` (including its seed).
pub fn generate(cfg: &SynthConfig) -> TransactionDb {
    let mut symbols = SymbolTable::new();
    let class0 = symbols.intern("0");
    let class1 = symbols.intern("1");
    let item_ids: Vec<Item> = (1..=cfg.items)
        .map(|i| symbols.intern(&format!("i{i}")))
        .collect();
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    let mut rows = Vec::with_capacity(cfg.transactions as usize);
    for _ in 0..cfg.transactions {
        let mut row = Vec::with_capacity(1 + cfg.items as usize / 4);
        row.push(if rng.gen_bool(cfg.p_class) {
            class1
        } else {
            class0
        });
        for &item in &item_ids {
            if rng.gen_bool(cfg.p_item) {
                row.push(item);
            }
        }
        rows.push(Transaction::new(row));
    }
    TransactionDb::new(symbols, rows)
}

/// Classical comparator: one FP-tree over the whole database, a complete
/// frequent-itemset mine at the same absolute threshold, then rules read off
/// the class-bearing itemsets. The count of an antecedent on the other
/// classes falls out of the same mine: every subset of a frequent itemset is
/// itself frequent, so its total count is already in the result tree.
pub fn baseline_class_rules(
    db: &TransactionDb,
    cfg: &MraConfig,
    stats: &mut MiningStats,
) -> Result<Vec<Rule>> {
    if cfg.target_class.index() >= db.symbols().len() {
        return Err(Error::UnknownItem(format!("#{}", cfg.target_class.index())));
    }
    let n = db.len() as u64;
    let min_count = cfg.min_count(n);
    let eligible: Vec<Item> = db
        .symbols()
        .items()
        .zip(item_counts(db))
        .filter(|&(_, c)| c >= min_count)
        .map(|(item, _)| item)
        .collect();
    let order = support_descending_order(db, &eligible);
    let tree = build_fp_tree(db, &order);
    stats.nodes_allocated += tree.node_count();
    let tis = fp_growth(&tree, min_count, stats)?;
    let class = cfg.target_class;
    let mut rules = Vec::new();
    tis.visit(|items, node| {
        if !node.target() || node.count() == 0 {
            return;
        }
        let Some(pos) = items.iter().position(|&i| i == class) else {
            return;
        };
        if items.len() == 1 {
            // the bare class itemset has an empty antecedent; not a rule
            return;
        }
        let mut antecedent = items.to_vec();
        antecedent.remove(pos);
        let count1 = node.count();
        let total = tis
            .find_node(&antecedent)
            .map(|id| tis.node(id).count())
            .expect("every subset of a frequent itemset is frequent");
        let count0 = total - count1;
        if !cfg.min_confidence.leq_ratio(count1, count1 + count0) {
            return;
        }
        rules.push(Rule {
            antecedent,
            consequent: class,
            support: count1 as f64 / n as f64,
            confidence: count1 as f64 / (count1 + count0) as f64,
            count1,
            count0,
        });
    });
    Ok(rules)
}

/// One engine's output: the rules it found and the work it booked.
#[derive(Clone, Debug)]
pub struct EngineRun {
    pub rules: Vec<Rule>,
    pub stats: MiningStats,
}

/// Paired runs over the same database and thresholds.
#[derive(Clone, Debug)]
pub struct BenchComparison {
    pub baseline: EngineRun,
    pub guided: EngineRun,
}

fn time_engine(f: impl FnOnce(&mut MiningStats) -> Result<Vec<Rule>>) -> Result<EngineRun> {
    let mut stats = MiningStats::new();
    let start = Instant::now();
    let rules = f(&mut stats)?;
    stats.wall_time = start.elapsed();
    Ok(EngineRun { rules, stats })
}

/// Canonical view of a rule set: id-sorted antecedent mapped to its counts.
/// (Support and confidence are functions of the counts.)
fn canonical_rules(rules: &[Rule]) -> std::collections::BTreeMap<Vec<Item>, (u64, u64)> {
    rules
        .iter()
        .map(|r| {
            let mut ant = r.antecedent.clone();
            ant.sort_unstable();
            (ant, (r.count1, r.count0))
        })
        .collect()
}

/// Errors unless both engines produced exactly the same rule set.
pub fn ensure_same_rules(baseline: &[Rule], guided: &[Rule]) -> Result<()> {
    let b = canonical_rules(baseline);
    let g = canonical_rules(guided);
    if b == g {
        return Ok(());
    }
    let describe = |ant: &[Item]| {
        let ids: Vec<String> = ant.iter().map(|i| format!("#{}", i.index())).collect();
        format!("{{{}}}", ids.join(","))
    };
    for (ant, counts) in &b {
        match g.get(ant) {
            None => {
                return Err(Error::RuleSetMismatch(format!(
                    "baseline rule with antecedent {} is missing from the guided result",
                    describe(ant)
                )))
            }
            Some(other) if other != counts => {
                return Err(Error::RuleSetMismatch(format!(
                    "antecedent {} counted as {:?} by baseline but {:?} by guided",
                    describe(ant),
                    counts,
                    other
                )))
            }
            Some(_) => {}
        }
    }
    let extra = g
        .keys()
        .find(|ant| !b.contains_key(*ant))
        .expect("maps differ");
    Err(Error::RuleSetMismatch(format!(
        "guided rule with antecedent {} is missing from the baseline result",
        describe(extra)
    )))
}

/// Runs both engines on `db`, verifies they agree, and returns the paired
/// measurements (baseline first).
pub fn run_benchmark(db: &TransactionDb, cfg: &MraConfig) -> Result<BenchComparison> {
    let baseline = time_engine(|stats| baseline_class_rules(db, cfg, stats))?;
    let guided = time_engine(|stats| minority_report(db, cfg, stats))?;
    ensure_same_rules(&baseline.rules, &guided.rules)?;
    Ok(BenchComparison { baseline, guided })
}
