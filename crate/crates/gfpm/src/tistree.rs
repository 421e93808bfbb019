//! Target-itemset trees.
//!
//! A `TisTree` stores a set of itemsets as a prefix tree in *pattern-growth*
//! order — the exact reverse of the FP-tree building order. Along any
//! root-to-node path, item ranks strictly ascend, which is what lets a guided
//! walk visit the tree and an FP-tree's conditional projections in lockstep.
//! Each node carries the itemset's count on the side it was mined from, a
//! `g_count` slot (zero until a guided walk fills it), and the set of items
//! appearing anywhere below it, which bounds what a conditional projection
//! needs to keep.

use crate::transactions::{Item, ItemOrder, OrderDirection};
use crate::{Error, Result};

/// Handle to a node inside one `TisTree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TisNodeId(u32);

#[derive(Debug)]
pub struct TisNode {
    item: Option<Item>,
    target: bool,
    count: u64,
    g_count: u64,
    /// Child ids sorted by the child item's pattern-growth rank.
    children: Vec<TisNodeId>,
    /// Items of strict descendants, sorted by id.
    subtree_items: Vec<Item>,
}

impl TisNode {
    /// The node's item; `None` only for the root.
    pub fn item(&self) -> Option<Item> {
        self.item
    }

    /// Whether the node's itemset is itself a counting target (interior
    /// nodes inserted only as prefixes of targets are not).
    pub fn target(&self) -> bool {
        self.target
    }

    /// The count recorded at insertion (the mined side's count).
    pub fn count(&self) -> u64 {
        self.count
    }

    /// The count filled in by a guided walk; zero until one runs.
    pub fn g_count(&self) -> u64 {
        self.g_count
    }

    pub fn children(&self) -> &[TisNodeId] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Items appearing in descendants (id-sorted; excludes the node's own item).
    pub fn subtree_items(&self) -> &[Item] {
        &self.subtree_items
    }
}

/// One entry of [`TisTree::enumerate`]: a node's full itemset (root-to-node
/// path, so in pattern-growth order) plus its fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TisEntry {
    pub items: Vec<Item>,
    pub count: u64,
    pub g_count: u64,
    pub target: bool,
}

#[derive(Debug)]
pub struct TisTree {
    nodes: Vec<TisNode>,
    order: ItemOrder,
}

const ROOT: TisNodeId = TisNodeId(0);

impl TisTree {
    /// Creates an empty tree over a pattern-growth order.
    pub fn new(order: ItemOrder) -> Result<Self> {
        if order.direction() != OrderDirection::PatternGrowth {
            return Err(Error::InvalidConfig(
                "target trees require a pattern-growth order".into(),
            ));
        }
        Ok(TisTree {
            nodes: vec![TisNode {
                item: None,
                target: false,
                count: 0,
                g_count: 0,
                children: Vec::new(),
                subtree_items: Vec::new(),
            }],
            order,
        })
    }

    pub fn order(&self) -> &ItemOrder {
        &self.order
    }

    pub fn root(&self) -> TisNodeId {
        ROOT
    }

    pub fn node(&self, id: TisNodeId) -> &TisNode {
        &self.nodes[id.0 as usize]
    }

    /// Nodes excluding the root.
    pub fn node_count(&self) -> usize {
        self.nodes.len() - 1
    }

    pub(crate) fn set_g_count(&mut self, id: TisNodeId, value: u64) {
        self.nodes[id.0 as usize].g_count = value;
    }

    /// Inserts `items` as one itemset with the given count and target flag,
    /// returning the terminal node. Re-insertion updates the count and may
    /// set — never clear — the target flag. Interior nodes created along the
    /// way start as non-targets with count 0. The empty itemset is a no-op
    /// returning the root. Fails on items the order does not rank.
    pub fn insert_itemset(
        &mut self,
        items: &[Item],
        count: u64,
        target: bool,
    ) -> Result<TisNodeId> {
        let mut ranked: Vec<(usize, Item)> = Vec::with_capacity(items.len());
        for &item in items {
            let rank = self.order.rank(item).ok_or(Error::UnrankedItem(item))?;
            ranked.push((rank, item));
        }
        ranked.sort_unstable();
        ranked.dedup();
        if ranked.is_empty() {
            return Ok(ROOT);
        }
        let mut cur = ROOT;
        for (step, &(rank, item)) in ranked.iter().enumerate() {
            // everything below `cur` on this path belongs in its subtree set
            for &(_, below) in &ranked[step..] {
                let set = &mut self.nodes[cur.0 as usize].subtree_items;
                if let Err(pos) = set.binary_search(&below) {
                    set.insert(pos, below);
                }
            }
            cur = self.child_or_insert(cur, item, rank);
        }
        let terminal = &mut self.nodes[cur.0 as usize];
        terminal.count = count;
        terminal.target |= target;
        Ok(cur)
    }

    fn child_or_insert(&mut self, parent: TisNodeId, item: Item, rank: usize) -> TisNodeId {
        let pos = {
            let children = &self.nodes[parent.0 as usize].children;
            match children.binary_search_by_key(&rank, |c| {
                let it = self.nodes[c.0 as usize].item.expect("child has an item");
                self.order.rank(it).expect("tree items are ranked")
            }) {
                Ok(i) => return children[i],
                Err(i) => i,
            }
        };
        let id = TisNodeId(self.nodes.len() as u32);
        self.nodes.push(TisNode {
            item: Some(item),
            target: false,
            count: 0,
            g_count: 0,
            children: Vec::new(),
            subtree_items: Vec::new(),
        });
        self.nodes[parent.0 as usize].children.insert(pos, id);
        id
    }

    /// The node holding exactly `items`, if present.
    pub fn find_node(&self, items: &[Item]) -> Option<TisNodeId> {
        let mut ranked: Vec<(usize, Item)> = items
            .iter()
            .map(|&item| self.order.rank(item).map(|r| (r, item)))
            .collect::<Option<_>>()?;
        ranked.sort_unstable();
        ranked.dedup();
        let mut cur = ROOT;
        for (rank, _) in ranked {
            let children = &self.nodes[cur.0 as usize].children;
            cur = *children
                .binary_search_by_key(&rank, |c| {
                    let it = self.nodes[c.0 as usize].item.expect("child has an item");
                    self.order.rank(it).expect("tree items are ranked")
                })
                .ok()
                .map(|i| &children[i])?;
        }
        Some(cur)
    }

    /// Depth-first visit of every node below the root (children in
    /// pattern-growth rank order), with the node's full itemset.
    pub fn visit<F: FnMut(&[Item], &TisNode)>(&self, mut f: F) {
        let mut path = Vec::new();
        self.visit_below(ROOT, &mut path, &mut f);
    }

    fn visit_below<F: FnMut(&[Item], &TisNode)>(
        &self,
        id: TisNodeId,
        path: &mut Vec<Item>,
        f: &mut F,
    ) {
        for &child in &self.nodes[id.0 as usize].children {
            let node = &self.nodes[child.0 as usize];
            path.push(node.item.expect("non-root nodes carry items"));
            f(path, node);
            self.visit_below(child, path, f);
            path.pop();
        }
    }

    /// Materialized [`TisTree::visit`]: one entry per non-root node.
    pub fn enumerate(&self) -> Vec<TisEntry> {
        let mut out = Vec::with_capacity(self.node_count());
        self.visit(|items, node| {
            out.push(TisEntry {
                items: items.to_vec(),
                count: node.count,
                g_count: node.g_count,
                target: node.target,
            });
        });
        out
    }
}

/// Builds a target tree from explicit itemsets, all inserted with count 0 and
/// target set. Itemsets containing an item outside `known_items` (or outside
/// the order) are not inserted and come back in `dropped`, in input order.
pub fn build_tis_from_target_list(
    targets: &[Vec<Item>],
    order: &ItemOrder,
    known_items: &[Item],
) -> Result<(TisTree, Vec<Vec<Item>>)> {
    let mut known = known_items.to_vec();
    known.sort_unstable();
    known.dedup();
    let mut tree = TisTree::new(order.clone())?;
    let mut dropped = Vec::new();
    for target in targets {
        let ok = target
            .iter()
            .all(|i| known.binary_search(i).is_ok() && order.rank(*i).is_some());
        if ok {
            tree.insert_itemset(target, 0, true)?;
        } else {
            dropped.push(target.clone());
        }
    }
    Ok((tree, dropped))
}
