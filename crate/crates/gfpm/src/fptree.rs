//! Compressed prefix-tree representation of a transaction database.
//!
//! Transactions are inserted with their items sorted by a shared `ItemOrder`
//! rank, so common prefixes collapse into shared paths. A header table keyed
//! by rank gives each item's total count and the head of the linked chain
//! threading all of that item's nodes, which is what conditional projection
//! walks.

use std::sync::Arc;

use crate::stats::MiningStats;
use crate::transactions::{Item, ItemOrder, SymbolTable, TransactionDb};
use crate::{Error, Result};

const ROOT: u32 = 0;

#[derive(Debug)]
struct FpNode {
    item: Option<Item>,
    count: u64,
    parent: Option<u32>,
    /// Child node indices, kept sorted by the child's item rank.
    children: Vec<u32>,
    next_same_item: Option<u32>,
}

#[derive(Clone, Copy, Debug)]
struct HeaderEntry {
    total: u64,
    first: u32,
}

/// An FP-tree plus its header table and the order its paths follow.
#[derive(Debug)]
pub struct FpTree {
    nodes: Vec<FpNode>,
    /// Indexed by rank; `None` where the item does not occur.
    header: Vec<Option<HeaderEntry>>,
    order: Arc<ItemOrder>,
    db_size: u64,
}

impl FpTree {
    fn new(order: Arc<ItemOrder>, db_size: u64) -> Self {
        let header = vec![None; order.len()];
        FpTree {
            nodes: vec![FpNode {
                item: None,
                count: 0,
                parent: None,
                children: Vec::new(),
                next_same_item: None,
            }],
            header,
            order,
            db_size,
        }
    }

    /// The order paths are ranked by (shared with conditional trees).
    pub fn order(&self) -> &ItemOrder {
        &self.order
    }

    /// Transactions represented (for conditional trees: total path weight).
    pub fn db_size(&self) -> u64 {
        self.db_size
    }

    /// Item nodes in the tree (the root does not count).
    pub fn node_count(&self) -> u64 {
        (self.nodes.len() - 1) as u64
    }

    /// True when the tree holds no item nodes at all.
    pub fn is_empty(&self) -> bool {
        self.nodes.len() == 1
    }

    /// True iff `item` occurs in the tree (header entry with positive total).
    pub fn contains_item(&self, item: Item) -> bool {
        self.order
            .rank(item)
            .and_then(|r| self.header[r])
            .map(|e| e.total > 0)
            .unwrap_or(false)
    }

    /// Total count of `item` across its node chain.
    pub fn item_total(&self, item: Item) -> Result<u64> {
        self.order
            .rank(item)
            .and_then(|r| self.header[r])
            .map(|e| e.total)
            .ok_or(Error::ItemNotInTree(item))
    }

    /// Items present in the tree, most frequent rank first.
    pub fn header_items(&self) -> impl Iterator<Item = Item> + '_ {
        self.header
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_some())
            .map(|(rank, _)| self.order.item_at(rank))
    }

    /// Inserts one rank-sorted path with the given weight, creating nodes and
    /// maintaining header chains/totals as needed.
    fn insert_path(&mut self, ranked: &[(usize, Item)], weight: u64) {
        let mut cur = ROOT;
        for &(rank, item) in ranked {
            cur = self.child_or_insert(cur, item, rank);
            self.nodes[cur as usize].count += weight;
            self.header[rank]
                .as_mut()
                .expect("entry created with node")
                .total += weight;
        }
    }

    fn child_or_insert(&mut self, parent: u32, item: Item, rank: usize) -> u32 {
        let pos = {
            let children = &self.nodes[parent as usize].children;
            match children.binary_search_by_key(&rank, |&c| {
                let it = self.nodes[c as usize].item.expect("child has an item");
                self.order.rank(it).expect("tree items are ranked")
            }) {
                Ok(i) => return children[i],
                Err(i) => i,
            }
        };
        let idx = self.nodes.len() as u32;
        let next = self.header[rank].map(|e| e.first);
        self.nodes.push(FpNode {
            item: Some(item),
            count: 0,
            parent: Some(parent),
            children: Vec::new(),
            next_same_item: next,
        });
        // new chain heads are prepended
        match &mut self.header[rank] {
            Some(e) => e.first = idx,
            e @ None => {
                *e = Some(HeaderEntry {
                    total: 0,
                    first: idx,
                })
            }
        }
        self.nodes[parent as usize].children.insert(pos, idx);
        idx
    }

    /// Projects the tree onto the paths above `item`'s nodes, weighting each
    /// by the node's count. Items not in `allowed` (a set sorted by id) are
    /// left out of the projected paths; items whose projected total is zero
    /// get no header entry. The conditional tree shares this tree's order.
    pub fn conditional_tree(
        &self,
        item: Item,
        allowed: Option<&[Item]>,
        stats: &mut MiningStats,
    ) -> Result<FpTree> {
        let rank = self.order.rank(item).ok_or(Error::ItemNotInTree(item))?;
        let entry = self.header[rank].ok_or(Error::ItemNotInTree(item))?;
        let mut cond = FpTree::new(self.order.clone(), 0);
        stats.conditional_trees_built += 1;
        let mut path: Vec<(usize, Item)> = Vec::new();
        let mut chain = Some(entry.first);
        while let Some(idx) = chain {
            let node = &self.nodes[idx as usize];
            let weight = node.count;
            path.clear();
            let mut up = node.parent;
            while let Some(p) = up {
                let pn = &self.nodes[p as usize];
                if let Some(it) = pn.item {
                    if allowed.is_none_or(|set| set.binary_search(&it).is_ok()) {
                        path.push((self.order.rank(it).expect("tree items are ranked"), it));
                    }
                }
                up = pn.parent;
            }
            // climbed leaf-to-root; insertion wants root-to-leaf
            path.reverse();
            cond.insert_path(&path, weight);
            cond.db_size += weight;
            chain = node.next_same_item;
        }
        stats.nodes_allocated += cond.node_count();
        Ok(cond)
    }

    /// Per-item totals of the paths above `item`'s nodes (the projection's
    /// item counts before any filtering), in ascending rank order.
    pub fn conditional_item_totals(&self, item: Item) -> Result<Vec<(Item, u64)>> {
        let rank = self.order.rank(item).ok_or(Error::ItemNotInTree(item))?;
        let entry = self.header[rank].ok_or(Error::ItemNotInTree(item))?;
        let mut totals = vec![0u64; self.order.len()];
        let mut chain = Some(entry.first);
        while let Some(idx) = chain {
            let node = &self.nodes[idx as usize];
            let mut up = node.parent;
            while let Some(p) = up {
                let pn = &self.nodes[p as usize];
                if let Some(it) = pn.item {
                    totals[self.order.rank(it).expect("tree items are ranked")] += node.count;
                }
                up = pn.parent;
            }
            chain = node.next_same_item;
        }
        Ok(totals
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(r, c)| (self.order.item_at(r), c))
            .collect())
    }

    /// Deterministic text rendering: one `item:count` line per node, indented
    /// two spaces per depth, children in rank order.
    pub fn render(&self, symbols: &SymbolTable) -> String {
        let mut out = String::new();
        self.render_subtree(ROOT, 0, symbols, &mut out);
        out
    }

    fn render_subtree(&self, node: u32, depth: usize, symbols: &SymbolTable, out: &mut String) {
        for &child in &self.nodes[node as usize].children {
            let n = &self.nodes[child as usize];
            let item = n.item.expect("non-root nodes carry items");
            out.push_str(&"  ".repeat(depth));
            out.push_str(symbols.token(item));
            out.push(':');
            out.push_str(&n.count.to_string());
            out.push('\n');
            self.render_subtree(child, depth + 1, symbols, out);
        }
    }

    /// Walks `item`'s chain summing node counts (test support: the header
    /// total must equal this sum).
    #[cfg(test)]
    fn chain_sum(&self, item: Item) -> u64 {
        let rank = self.order.rank(item).unwrap();
        let mut sum = 0;
        let mut chain = self.header[rank].map(|e| e.first);
        while let Some(idx) = chain {
            sum += self.nodes[idx as usize].count;
            chain = self.nodes[idx as usize].next_same_item;
        }
        sum
    }
}

/// Builds an FP-tree from `db` following `order`. Items without a rank are
/// silently dropped from every transaction; empty transactions still count
/// toward `db_size`.
pub fn build_fp_tree(db: &TransactionDb, order: &ItemOrder) -> FpTree {
    let mut tree = FpTree::new(Arc::new(order.clone()), db.len() as u64);
    let mut ranked: Vec<(usize, Item)> = Vec::new();
    for t in db.transactions() {
        ranked.clear();
        for &item in t.items() {
            if let Some(rank) = order.rank(item) {
                ranked.push((rank, item));
            }
        }
        ranked.sort_unstable();
        tree.insert_path(&ranked, 1);
    }
    tree
}
