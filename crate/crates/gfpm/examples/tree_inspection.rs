//! Render FP-tree structure as indented text, including a conditional tree.
//!
//! Run with: `cargo run --example tree_inspection`

use std::io::Cursor;

use gfpm::{build_fp_tree, load_transactions, support_descending_order, Item, MiningStats};

const BASKET: &str = "\
f c m
b c f m
b f
b c
f c m
";

fn main() -> Result<(), gfpm::Error> {
    let db = load_transactions(Cursor::new(BASKET))?;
    let all_items: Vec<Item> = db.symbols().items().collect();
    let order = support_descending_order(&db, &all_items);

    let ordered: Vec<&str> = order
        .items()
        .iter()
        .map(|&item| db.symbols().token(item))
        .collect();
    println!("item order (most frequent first): {}", ordered.join(" "));

    let tree = build_fp_tree(&db, &order);
    println!(
        "\nfull tree ({} nodes, {} transactions):",
        tree.node_count(),
        tree.db_size()
    );
    print!("{}", tree.render(db.symbols()));

    // The conditional tree of an item summarizes what co-occurs with it.
    let m = db.symbols().get("m").expect("token occurs");
    let mut stats = MiningStats::new();
    let cond = tree.conditional_tree(m, None, &mut stats)?;
    println!(
        "\nconditional tree of m ({} supporting transactions):",
        cond.db_size()
    );
    print!("{}", cond.render(db.symbols()));
    Ok(())
}
