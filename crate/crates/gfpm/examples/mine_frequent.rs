//! Mine every frequent itemset of a small basket database.
//!
//! Run with: `cargo run --example mine_frequent`

use std::io::Cursor;

use gfpm::{
    build_fp_tree, fp_growth, item_counts, load_transactions, support_descending_order, MiningStats,
};

const BASKET: &str = "\
f c m
b c f m
b f
b c
f c m
";

fn main() -> Result<(), gfpm::Error> {
    let db = load_transactions(Cursor::new(BASKET))?;
    let min_count = 3;

    // Items below the threshold can never be part of a frequent itemset,
    // so the tree is built over the frequent ones only, most frequent first.
    let counts = item_counts(&db);
    let eligible: Vec<_> = db
        .symbols()
        .items()
        .filter(|item| counts[item.index()] >= min_count)
        .collect();
    let order = support_descending_order(&db, &eligible);
    let tree = build_fp_tree(&db, &order);

    let mut stats = MiningStats::new();
    let result = fp_growth(&tree, min_count, &mut stats)?;

    println!("{} transactions, minimum count {min_count}", db.len());
    println!("itemset -> count");
    for entry in result.enumerate() {
        let tokens: Vec<&str> = entry
            .items
            .iter()
            .map(|&item| db.symbols().token(item))
            .collect();
        println!("  {{{}}} -> {}", tokens.join(", "), entry.count);
    }
    println!(
        "mining built {} conditional trees ({} nodes) beyond the {}-node initial tree",
        stats.conditional_trees_built,
        stats.nodes_allocated,
        tree.node_count()
    );
    Ok(())
}
