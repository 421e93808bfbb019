//! Mine association rules predicting a rare class, end to end.
//!
//! Every transaction carries a class token ("0" or "1" here). The pipeline
//! mines frequent itemsets on the rare side only, then counts those exact
//! candidates on the majority side with one guided pass, which yields exact
//! confidences without ever mining the majority side.
//!
//! Run with: `cargo run --example minority_rules`

use std::io::Cursor;

use gfpm::{load_transactions, minority_report, Fraction, MiningStats, MraConfig};

const BASKET: &str = "\
f a c d g i m p 0
a b c f l m o 0
b f h j o 0
b c k s p 0
a f c e l p m n 0
f m 1
c 1
b 1
";

fn main() -> Result<(), gfpm::Error> {
    let db = load_transactions(Cursor::new(BASKET))?;
    let cfg = MraConfig::new(
        db.symbols().get("1").expect("class token occurs"),
        Fraction::parse("0.125")?, // support over the whole database
        Fraction::parse("0.2")?,   // minimum confidence
    )?;

    let mut stats = MiningStats::new();
    let rules = minority_report(&db, &cfg, &mut stats)?;

    println!(
        "{} rules at support >= 0.125, confidence >= 0.2:",
        rules.len()
    );
    for rule in &rules {
        let antecedent: Vec<&str> = rule
            .antecedent
            .iter()
            .map(|&item| db.symbols().token(item))
            .collect();
        println!(
            "  {{{}}} -> {}  support {:.3}  confidence {:.2}  ({} rare, {} majority)",
            antecedent.join(", "),
            db.symbols().token(rule.consequent),
            rule.support,
            rule.confidence,
            rule.count1,
            rule.count0
        );
    }
    println!(
        "work: {} conditional trees, {} nodes, {} header probes",
        stats.conditional_trees_built, stats.nodes_allocated, stats.header_probes
    );
    Ok(())
}
