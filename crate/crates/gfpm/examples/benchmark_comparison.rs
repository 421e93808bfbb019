//! Compare guided rare-class mining against the full FP-growth baseline.
//!
//! Both engines mine exactly the same rules; the point of the guided engine
//! is to get them while building far fewer conditional trees and nodes when
//! the class of interest is rare.
//!
//! Run with: `cargo run --example benchmark_comparison`

use gfpm::{generate, run_benchmark, EngineRun, Fraction, MraConfig, SynthConfig};

fn describe(name: &str, run: &EngineRun) {
    println!(
        "  {name:<8} {} rules, {:>6} conditional trees, {:>8} nodes, {:>6} probes, {:>8.2} ms",
        run.rules.len(),
        run.stats.conditional_trees_built,
        run.stats.nodes_allocated,
        run.stats.header_probes,
        run.stats.wall_time.as_secs_f64() * 1000.0
    );
}

fn main() -> Result<(), gfpm::Error> {
    // a moderately dense database where only 2% of transactions carry the class
    let synth = SynthConfig::new(5000, 14, 0.3, 0.02, 9)?;
    let db = generate(&synth);
    // no confidence cutoff: the comparison is about the work, not rule quality
    let cfg = MraConfig::new(
        db.symbols().get("1").expect("always interned"),
        Fraction::parse("0.004")?,
        Fraction::parse("0")?,
    )?;

    let cmp = run_benchmark(&db, &cfg)?;
    println!(
        "{} transactions, support threshold {} -> both engines found {} rules",
        db.len(),
        cfg.min_count(db.len() as u64),
        cmp.guided.rules.len()
    );
    describe("baseline", &cmp.baseline);
    describe("guided", &cmp.guided);

    let b = &cmp.baseline.stats;
    let g = &cmp.guided.stats;
    let nodes_ratio = b.nodes_allocated as f64 / g.nodes_allocated as f64;
    if g.conditional_trees_built == 0 {
        println!(
            "guided needed no conditional trees at all (baseline built {}) and touched {nodes_ratio:.1}x fewer nodes",
            b.conditional_trees_built
        );
    } else {
        println!(
            "guided built {:.1}x fewer conditional trees and touched {nodes_ratio:.1}x fewer nodes",
            b.conditional_trees_built as f64 / g.conditional_trees_built as f64
        );
    }
    Ok(())
}
