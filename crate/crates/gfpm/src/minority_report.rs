//! End-to-end mining of rare-class association rules.
//!
//! The pipeline splits the database on the class item, keeps only items that
//! are frequent *on the rare side* (anti-monotonicity: no rule antecedent can
//! use any other item), builds one FP-tree per side under a single shared
//! item order, mines the small rare side classically, and then counts the
//! surviving candidates on the majority side with one guided walk. Rule
//! confidence needs nothing further: the rare-side count and the guided
//! count are the two halves of the denominator.

use crate::fpgrowth::fp_growth;
use crate::fptree::build_fp_tree;
use crate::fraction::Fraction;
use crate::gfpgrowth::gfp_growth;
use crate::stats::MiningStats;
use crate::tistree::TisTree;
use crate::transactions::{
    filter_items, item_counts, split_by_class, support_descending_order, Item, TransactionDb,
};
use crate::{Error, Result};

/// Thresholds and class choice for a mining run.
#[derive(Clone, Copy, Debug)]
pub struct MraConfig {
    /// The class item rules predict.
    pub target_class: Item,
    /// Minimum rule support as a fraction of the whole database, in (0, 1).
    pub min_support: Fraction,
    /// Minimum rule confidence, in [0, 1].
    pub min_confidence: Fraction,
}

impl MraConfig {
    pub fn new(
        target_class: Item,
        min_support: Fraction,
        min_confidence: Fraction,
    ) -> Result<Self> {
        if min_support.is_zero() || min_support.geq_ratio(1, 1) {
            return Err(Error::InvalidConfig(format!(
                "minimum support must be in (0, 1), got {min_support}"
            )));
        }
        if !min_confidence.leq_ratio(1, 1) {
            return Err(Error::InvalidConfig(format!(
                "minimum confidence must be in [0, 1], got {min_confidence}"
            )));
        }
        Ok(MraConfig {
            target_class,
            min_support,
            min_confidence,
        })
    }

    /// The support threshold as an absolute transaction count over a database
    /// of `db_size` transactions: `ceil(min_support * db_size)`, exactly.
    pub fn min_count(&self, db_size: u64) -> u64 {
        self.min_support.ceil_mul(db_size)
    }
}

/// An association rule `antecedent -> consequent` with its exact counts on
/// both sides of the class split.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    /// Antecedent items in pattern-growth order (as mined).
    pub antecedent: Vec<Item>,
    pub consequent: Item,
    /// `count1 / |db|`.
    pub support: f64,
    /// `count1 / (count1 + count0)`.
    pub confidence: f64,
    /// Transactions of the target class containing the antecedent.
    pub count1: u64,
    /// Transactions of other classes containing the antecedent.
    pub count0: u64,
}

/// Items whose count on the rare side reaches `min_count`, ascending by id.
/// Only these can appear in any frequent rare-side itemset.
pub fn select_rare_frequent_items(db1: &TransactionDb, min_count: u64) -> Vec<Item> {
    db1.symbols()
        .items()
        .zip(item_counts(db1))
        .filter(|&(_, c)| c >= min_count)
        .map(|(item, _)| item)
        .collect()
}

/// Converts a counted target tree into rules against `target_class`,
/// keeping those whose confidence reaches `min_confidence` (compared in
/// exact integer arithmetic). Targets with a zero mined count cannot arise
/// from a valid mining run and are skipped with a warning.
pub fn prune_to_rules(
    tis: &TisTree,
    db_size: u64,
    target_class: Item,
    min_confidence: Fraction,
) -> Vec<Rule> {
    let mut rules = Vec::new();
    tis.visit(|items, node| {
        if !node.target() {
            return;
        }
        let count1 = node.count();
        if count1 == 0 {
            log::warn!("target itemset mined with zero count; skipping");
            return;
        }
        let count0 = node.g_count();
        if !min_confidence.leq_ratio(count1, count1 + count0) {
            return;
        }
        rules.push(Rule {
            antecedent: items.to_vec(),
            consequent: target_class,
            support: count1 as f64 / db_size as f64,
            confidence: count1 as f64 / (count1 + count0) as f64,
            count1,
            count0,
        });
    });
    rules
}

/// Mines all rules `antecedent -> target_class` meeting `cfg`'s support and
/// confidence thresholds. Returns rules in pattern-growth enumeration order.
pub fn minority_report(
    db: &TransactionDb,
    cfg: &MraConfig,
    stats: &mut MiningStats,
) -> Result<Vec<Rule>> {
    if cfg.target_class.index() >= db.symbols().len() {
        return Err(Error::UnknownItem(format!("#{}", cfg.target_class.index())));
    }
    let n = db.len() as u64;
    let (db1, db0) = split_by_class(db, cfg.target_class);
    if db1.is_empty() {
        log::warn!(
            "no transaction contains class {:?}; no rules to mine",
            db.symbols().token(cfg.target_class)
        );
        return Ok(Vec::new());
    }
    if cfg.min_support.geq_ratio(db1.len() as u64, n) {
        log::warn!(
            "minimum support {} is not below the class frequency {}/{}; only all-class itemsets can qualify",
            cfg.min_support,
            db1.len(),
            n
        );
    }
    let min_count = cfg.min_count(n);
    let rare_items = select_rare_frequent_items(&db1, min_count);
    let db1 = filter_items(&db1, &rare_items);
    let db0 = filter_items(&db0, &rare_items);
    // one order for both trees, computed over the full database restricted
    // to the kept items (identical counts to the filtered union of sides)
    let order = support_descending_order(db, &rare_items);
    let fp1 = build_fp_tree(&db1, &order);
    let fp0 = build_fp_tree(&db0, &order);
    stats.nodes_allocated += fp1.node_count() + fp0.node_count();
    let mut tis = fp_growth(&fp1, min_count, stats)?;
    gfp_growth(&mut tis, &fp0, stats)?;
    Ok(prune_to_rules(
        &tis,
        n,
        cfg.target_class,
        cfg.min_confidence,
    ))
}
