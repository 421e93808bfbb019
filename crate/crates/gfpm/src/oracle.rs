//! Brute-force reference implementations.
//!
//! Everything here recomputes results by direct definition — linear scans and
//! level-wise lattice enumeration — sharing nothing with the tree-based
//! miners beyond the `TransactionDb` type. The miners' test suites treat
//! these as ground truth on small inputs.

use crate::fraction::Fraction;
use crate::minority_report::{MraConfig, Rule};
use crate::transactions::{split_by_class, Item, TransactionDb};
use crate::{Error, Result};

/// Largest item universe `bf_frequent` will enumerate over.
pub const MAX_ORACLE_ITEMS: usize = 20;

/// Number of transactions containing every item of `itemset`, by linear scan.
/// The empty itemset is contained in every transaction.
pub fn bf_count(db: &TransactionDb, itemset: &[Item]) -> u64 {
    let mut wanted = itemset.to_vec();
    wanted.sort_unstable();
    wanted.dedup();
    db.transactions()
        .iter()
        .filter(|t| wanted.iter().all(|&i| t.contains(i)))
        .count() as u64
}

/// All itemsets of size 1..=`max_len` with count >= `min_count`, found by
/// level-wise enumeration with anti-monotone pruning and counted by
/// `bf_count`. Itemsets come out sorted by ascending id; refuses databases
/// with more than [`MAX_ORACLE_ITEMS`] distinct occurring items.
pub fn bf_frequent(
    db: &TransactionDb,
    min_count: u64,
    max_len: usize,
) -> Result<Vec<(Vec<Item>, u64)>> {
    if min_count == 0 {
        return Err(Error::InvalidMinCount);
    }
    let occurring: Vec<Item> = {
        let mut seen = vec![false; db.symbols().len()];
        for t in db.transactions() {
            for item in t.items() {
                seen[item.index()] = true;
            }
        }
        db.symbols().items().filter(|i| seen[i.index()]).collect()
    };
    if occurring.len() > MAX_ORACLE_ITEMS {
        return Err(Error::UniverseTooLarge {
            items: occurring.len(),
            limit: MAX_ORACLE_ITEMS,
        });
    }

    let mut result: Vec<(Vec<Item>, u64)> = Vec::new();
    let mut level: Vec<Vec<Item>> = occurring
        .iter()
        .filter(|&&i| bf_count(db, &[i]) >= min_count)
        .map(|&i| vec![i])
        .collect();
    let mut size = 1;
    while !level.is_empty() && size <= max_len {
        for itemset in &level {
            result.push((itemset.clone(), bf_count(db, itemset)));
        }
        if size == max_len {
            break;
        }
        // join step: two frequent k-sets sharing their first k-1 items form
        // a candidate; its count check subsumes the subset-pruning test on
        // these tiny universes, but pruning keeps the candidate list short.
        let mut next: Vec<Vec<Item>> = Vec::new();
        for i in 0..level.len() {
            for j in (i + 1)..level.len() {
                let (a, b) = (&level[i], &level[j]);
                if a[..size - 1] != b[..size - 1] {
                    continue;
                }
                let mut candidate = a.clone();
                candidate.push(b[size - 1]);
                if all_subsets_frequent(&candidate, &level) && bf_count(db, &candidate) >= min_count
                {
                    next.push(candidate);
                }
            }
        }
        next.sort();
        level = next;
        size += 1;
    }
    Ok(result)
}

fn all_subsets_frequent(candidate: &[Item], level: &[Vec<Item>]) -> bool {
    (0..candidate.len()).all(|skip| {
        let subset: Vec<Item> = candidate
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &it)| it)
            .collect();
        level.binary_search(&subset).is_ok()
    })
}

/// Rare-class rules by direct definition: enumerate the itemsets frequent on
/// the class side at the ceiling of `min_support * |db|`, count each on the
/// other side with a linear scan, and keep those whose confidence reaches
/// `min_confidence` (compared exactly). Antecedents come out id-sorted.
pub fn bf_rules(db: &TransactionDb, cfg: &MraConfig) -> Result<Vec<Rule>> {
    let n = db.len() as u64;
    let (db1, db0) = split_by_class(db, cfg.target_class);
    if db1.is_empty() {
        return Ok(Vec::new());
    }
    let min_count = cfg.min_support.ceil_mul(n);
    let frequent = bf_frequent(&db1, min_count, db1.symbols().len().max(1))?;
    let mut rules = Vec::new();
    for (antecedent, count1) in frequent {
        let count0 = bf_count(&db0, &antecedent);
        if !cfg.min_confidence.leq_ratio(count1, count1 + count0) {
            continue;
        }
        rules.push(Rule {
            antecedent,
            consequent: cfg.target_class,
            support: count1 as f64 / n as f64,
            confidence: count1 as f64 / (count1 + count0) as f64,
            count1,
            count0,
        });
    }
    Ok(rules)
}

/// Exhaustive check that `min_confidence <= count1/(count1+count0)` done on
/// plain integers (test support for the exact-comparison code path).
pub fn bf_confidence_at_least(min_confidence: Fraction, count1: u64, count0: u64) -> bool {
    min_confidence.leq_ratio(count1, count1 + count0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transactions::load_transactions;
    use proptest::prelude::*;
    use std::io::Cursor;

    fn worked_db() -> TransactionDb {
        load_transactions(Cursor::new(crate::transactions::tests::WORKED_BASKET)).unwrap()
    }

    fn items_of(db: &TransactionDb, tokens: &[&str]) -> Vec<Item> {
        tokens
            .iter()
            .map(|t| db.symbols().get(t).unwrap())
            .collect()
    }

    #[test]
    fn counts_by_scan() {
        let db = worked_db();
        assert_eq!(bf_count(&db, &items_of(&db, &["m", "f", "0"])), 3);
        assert_eq!(bf_count(&db, &items_of(&db, &["f"])), 5);
        assert_eq!(bf_count(&db, &items_of(&db, &["f", "f"])), 5);
        assert_eq!(bf_count(&db, &items_of(&db, &["s", "1"])), 0);
        assert_eq!(bf_count(&db, &[]), 8);
    }

    #[test]
    fn frequent_itemsets_of_rare_side() {
        let db = worked_db();
        let one = db.symbols().get("1").unwrap();
        let (db1, _) = split_by_class(&db, one);
        let got = bf_frequent(&db1, 1, 19).unwrap();
        let rendered: Vec<(Vec<&str>, u64)> = got
            .iter()
            .map(|(set, c)| (set.iter().map(|&i| db.symbols().token(i)).collect(), *c))
            .collect();
        // {f}, {c}, {m}, {b}, {f,m} in id order, every count 1
        assert_eq!(
            rendered,
            vec![
                (vec!["f"], 1),
                (vec!["c"], 1),
                (vec!["m"], 1),
                (vec!["b"], 1),
                (vec!["f", "m"], 1),
            ]
        );
    }

    #[test]
    fn min_count_above_db_size_finds_nothing() {
        let db = worked_db();
        assert!(bf_frequent(&db, 9, 19).unwrap().is_empty());
        assert!(bf_frequent(&db, 0, 19).is_err());
    }

    #[test]
    fn single_pair_db() {
        let db = load_transactions(Cursor::new("x y\nx y\nx y\n")).unwrap();
        let got = bf_frequent(&db, 3, 2).unwrap();
        assert_eq!(got.len(), 3);
        assert!(got.iter().all(|&(_, c)| c == 3));
    }

    #[test]
    fn max_len_truncates_enumeration() {
        let db = load_transactions(Cursor::new("x y z\nx y z\n")).unwrap();
        let got = bf_frequent(&db, 2, 2).unwrap();
        assert!(got.iter().all(|(set, _)| set.len() <= 2));
        assert_eq!(got.len(), 6); // 3 singles + 3 pairs
    }

    #[test]
    fn refuses_large_universes() {
        let line: Vec<String> = (0..21).map(|i| format!("i{i}")).collect();
        let db = load_transactions(Cursor::new(line.join(" "))).unwrap();
        match bf_frequent(&db, 1, 3) {
            Err(Error::UniverseTooLarge { items, limit }) => {
                assert_eq!(items, 21);
                assert_eq!(limit, MAX_ORACLE_ITEMS);
            }
            other => panic!("expected universe guard, got {other:?}"),
        }
    }

    #[test]
    fn rules_of_worked_example() {
        let db = worked_db();
        let one = db.symbols().get("1").unwrap();
        let cfg = MraConfig::new(
            one,
            Fraction::parse("0.125").unwrap(),
            Fraction::parse("0.2").unwrap(),
        )
        .unwrap();
        let rules = bf_rules(&db, &cfg).unwrap();
        assert_eq!(rules.len(), 5);
        let find = |tokens: &[&str]| {
            let ant = items_of(&db, tokens);
            rules
                .iter()
                .find(|r| r.antecedent == ant)
                .unwrap_or_else(|| panic!("missing rule for {tokens:?}"))
        };
        assert_eq!(find(&["m"]).count0, 3);
        assert_eq!(find(&["m"]).confidence, 0.25);
        assert_eq!(find(&["b"]).confidence, 0.25);
        assert_eq!(find(&["c"]).confidence, 0.2);
        assert_eq!(find(&["f"]).confidence, 0.2);
        // the two-item rule: 1 on the rare side, 3 on the majority side
        let fm = find(&["f", "m"]);
        assert_eq!((fm.count1, fm.count0), (1, 3));
        assert_eq!(fm.confidence, 0.25);
        assert_eq!(fm.support, 0.125);
        // confidence cutoff is inclusive: raising it just past 0.2 drops f and c
        let stricter = MraConfig::new(
            one,
            Fraction::parse("0.125").unwrap(),
            Fraction::parse("0.21").unwrap(),
        )
        .unwrap();
        assert_eq!(bf_rules(&db, &stricter).unwrap().len(), 3);
    }

    #[test]
    fn no_rare_transactions_no_rules() {
        let db = load_transactions(Cursor::new("a b 0\nb c 0\n1\n")).unwrap();
        // "1" occurs alone, so after the split the rare side has one empty
        // transaction: no itemsets, no rules.
        let one = db.symbols().get("1").unwrap();
        let cfg = MraConfig::new(
            one,
            Fraction::parse("0.25").unwrap(),
            Fraction::parse("0").unwrap(),
        )
        .unwrap();
        assert!(bf_rules(&db, &cfg).unwrap().is_empty());
        // and a class that never occurs at all
        let zero = db.symbols().get("0").unwrap();
        let db_no0 = load_transactions(Cursor::new("a b\nb c\n")).unwrap();
        let _ = (zero, db_no0);
    }

    proptest! {
        /// Anti-monotonicity: every subset of a frequent itemset is frequent
        /// with at least the same count.
        #[test]
        fn frequency_is_anti_monotone(
            raw in prop::collection::vec(prop::collection::vec(0u8..8, 0..6), 0..24),
            min_count in 1u64..4,
        ) {
            let mut text = String::new();
            for t in &raw {
                if t.is_empty() { continue; }
                let line: Vec<String> = t.iter().map(|i| format!("i{i}")).collect();
                text.push_str(&line.join(" "));
                text.push('\n');
            }
            let db = load_transactions(Cursor::new(text)).unwrap();
            let frequent = bf_frequent(&db, min_count, 8).unwrap();
            for (set, count) in &frequent {
                prop_assert_eq!(*count, bf_count(&db, set));
                for skip in 0..set.len() {
                    let subset: Vec<Item> = set
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &it)| it)
                        .collect();
                    if subset.is_empty() { continue; }
                    let sub_count = bf_count(&db, &subset);
                    prop_assert!(sub_count >= *count);
                    prop_assert!(frequent.iter().any(|(s, _)| s == &subset));
                }
            }
        }
    }
}
