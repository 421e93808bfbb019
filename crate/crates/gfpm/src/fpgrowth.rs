//! Classical FP-growth.
//!
//! Recursively mines every itemset whose count reaches `min_count`, emitting
//! each into a [`TisTree`] keyed by the reverse (pattern-growth) order of the
//! input tree. Header items are processed from the rarest up, so each
//! emitted itemset's pattern-growth prefixes are emitted before it; the
//! conditional tree built for an item keeps only items that stay frequent in
//! the projection (classical minimum-count pruning).

use crate::fptree::FpTree;
use crate::stats::MiningStats;
use crate::tistree::TisTree;
use crate::transactions::Item;
use crate::{Error, Result};

/// Mines all itemsets with count >= `min_count` from `tree` into a fresh
/// target tree. Every emitted node is flagged as a target with its exact
/// count. `min_count` must be at least 1.
pub fn fp_growth(tree: &FpTree, min_count: u64, stats: &mut MiningStats) -> Result<TisTree> {
    if min_count == 0 {
        return Err(Error::InvalidMinCount);
    }
    let mut tis = TisTree::new(tree.order().reversed())?;
    let mut prefix: Vec<Item> = Vec::new();
    mine(tree, min_count, &mut prefix, &mut tis, stats)?;
    Ok(tis)
}

fn mine(
    tree: &FpTree,
    min_count: u64,
    prefix: &mut Vec<Item>,
    tis: &mut TisTree,
    stats: &mut MiningStats,
) -> Result<()> {
    // rarest-first: walk the shared rank axis from the bottom up
    for rank in (0..tree.order().len()).rev() {
        let item = tree.order().item_at(rank);
        if !tree.contains_item(item) {
            continue;
        }
        stats.header_probes += 1;
        let total = tree.item_total(item)?;
        if total < min_count {
            continue;
        }
        prefix.push(item);
        tis.insert_itemset(prefix, total, true)?;
        // keep only items that remain frequent in the projection
        let mut allowed: Vec<Item> = tree
            .conditional_item_totals(item)?
            .into_iter()
            .filter(|&(_, c)| c >= min_count)
            .map(|(i, _)| i)
            .collect();
        if !allowed.is_empty() {
            allowed.sort_unstable();
            let cond = tree.conditional_tree(item, Some(&allowed), stats)?;
            if !cond.is_empty() {
                mine(&cond, min_count, prefix, tis, stats)?;
            }
        }
        prefix.pop();
    }
    Ok(())
}
