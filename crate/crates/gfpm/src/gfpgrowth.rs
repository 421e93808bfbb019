//! Guided FP-growth: count target itemsets without enumerating patterns.
//!
//! The walk visits a [`TisTree`] and an [`FpTree`] in lockstep. For each
//! target-tree child it makes one header probe; on a hit it reads the
//! header total into `g_count` if the node is a flagged target (non-targets
//! skip the read), and descends only if the node has children, projecting
//! the FP-tree restricted to the items that actually occur below the node.
//! Leaves and header misses therefore cost O(1), and no conditional tree is
//! ever built for a subtree the targets do not reach.

use crate::fptree::FpTree;
use crate::stats::MiningStats;
use crate::tistree::{TisNodeId, TisTree};
use crate::transactions::OrderDirection;
use crate::{Error, Result};

/// Fills `g_count` on every reachable target node of `tis` with its exact
/// count in the database `tree` represents. Requires `tis` to be keyed by
/// the exact reverse of `tree`'s order (checked before any mutation) and all
/// `g_count` fields to be zero, as freshly built trees are.
pub fn gfp_growth(tis: &mut TisTree, tree: &FpTree, stats: &mut MiningStats) -> Result<()> {
    if tis.order().direction() != OrderDirection::PatternGrowth
        || tree.order().direction() != OrderDirection::TreeBuild
        || !tis.order().is_reverse_of(tree.order())
    {
        return Err(Error::OrderMismatch);
    }
    walk(tis, tis.root(), tree, stats)
}

fn walk(tis: &mut TisTree, at: TisNodeId, tree: &FpTree, stats: &mut MiningStats) -> Result<()> {
    for i in 0..tis.node(at).children().len() {
        let child = tis.node(at).children()[i];
        let item = tis.node(child).item().expect("non-root nodes carry items");
        stats.header_probes += 1;
        if !tree.contains_item(item) {
            // nothing below can occur either: every deeper itemset contains `item`
            continue;
        }
        if tis.node(child).target() {
            let total = tree.item_total(item)?;
            tis.set_g_count(child, total);
        }
        if tis.node(child).is_leaf() {
            continue;
        }
        let cond = tree.conditional_tree(item, Some(tis.node(child).subtree_items()), stats)?;
        if !cond.is_empty() {
            walk(tis, child, &cond, stats)?;
        }
    }
    Ok(())
}
