//! Count a fixed list of target itemsets with one guided pass.
//!
//! Unlike full mining, the guided walk only descends into the parts of the
//! database that can still complete one of the requested itemsets.
//!
//! Run with: `cargo run --example count_targets`

use std::io::Cursor;

use gfpm::{
    build_fp_tree, build_tis_from_target_list, gfp_growth, load_transactions,
    support_descending_order, MiningStats,
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

    // The itemsets whose occurrence counts we want.
    let wanted = [vec!["f"], vec!["c"], vec!["b"], vec!["m"], vec!["f", "m"]];
    let targets: Vec<Vec<_>> = wanted
        .iter()
        .map(|tokens| {
            tokens
                .iter()
                .map(|t| db.symbols().get(t).expect("token occurs in the basket"))
                .collect()
        })
        .collect();

    let all_items: Vec<_> = db.symbols().items().collect();
    let order = support_descending_order(&db, &all_items);
    let tree = build_fp_tree(&db, &order);

    // The target tree shares the tree's item order, read back to front.
    let (mut tis, dropped) = build_tis_from_target_list(&targets, &order.reversed(), &all_items)?;
    assert!(dropped.is_empty());

    let mut stats = MiningStats::new();
    gfp_growth(&mut tis, &tree, &mut stats)?;

    println!("target -> count");
    for (tokens, items) in wanted.iter().zip(&targets) {
        let node = tis.find_node(items).expect("target was inserted");
        println!(
            "  {{{}}} -> {}",
            tokens.join(", "),
            tis.node(node).g_count()
        );
    }
    println!(
        "work: header probes={}, conditional trees={}",
        stats.header_probes, stats.conditional_trees_built
    );
    Ok(())
}
