//! Transaction databases over interned items.
//!
//! Items are short strings interned to dense ids in first-seen order; all
//! mining code works on ids. Class labels are ordinary items, so one basket
//! file format serves every command: one transaction per line, tokens split
//! on whitespace or commas, `#` lines and blank lines skipped.

use std::cmp::Reverse;
use std::collections::HashMap;
use std::io::{BufRead, BufReader, Read};

use crate::{Error, Result};

/// An interned item id. Ids are dense and ordered by first appearance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Item(u32);

impl Item {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[cfg(test)]
    pub(crate) fn from_index(index: u32) -> Item {
        Item(index)
    }
}

/// Bijective token <-> id map.
#[derive(Clone, Debug, Default)]
pub struct SymbolTable {
    tokens: Vec<String>,
    index: HashMap<String, Item>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id for `token`, interning it on first sight.
    pub fn intern(&mut self, token: &str) -> Item {
        if let Some(&item) = self.index.get(token) {
            return item;
        }
        let item = Item(self.tokens.len() as u32);
        self.tokens.push(token.to_string());
        self.index.insert(token.to_string(), item);
        item
    }

    pub fn get(&self, token: &str) -> Option<Item> {
        self.index.get(token).copied()
    }

    /// The token for an interned id. Panics on ids from another table.
    pub fn token(&self, item: Item) -> &str {
        &self.tokens[item.index()]
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// All interned items in id order.
    pub fn items(&self) -> impl Iterator<Item = Item> + '_ {
        (0..self.tokens.len() as u32).map(Item)
    }
}

/// An item *set*: ids stored strictly ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transaction {
    items: Vec<Item>,
}

impl Transaction {
    /// Sorts and deduplicates; duplicate mentions of an item collapse.
    pub fn new(mut items: Vec<Item>) -> Self {
        items.sort_unstable();
        items.dedup();
        Transaction { items }
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn contains(&self, item: Item) -> bool {
        self.items.binary_search(&item).is_ok()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// An ordered multiset of transactions plus the symbol table they intern into.
#[derive(Clone, Debug, Default)]
pub struct TransactionDb {
    symbols: SymbolTable,
    transactions: Vec<Transaction>,
}

impl TransactionDb {
    pub fn new(symbols: SymbolTable, transactions: Vec<Transaction>) -> Self {
        TransactionDb {
            symbols,
            transactions,
        }
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn transactions(&self) -> &[Transaction] {
        &self.transactions
    }

    /// Number of transactions, including ones that are empty item sets.
    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }
}

/// Reads the token lines of basket-format text without interning: one token
/// list per content line, in file order. `#` lines are comments, blank lines
/// (and lines with separators but no tokens) yield nothing, and tokens are
/// separated by whitespace or commas. Lines must be UTF-8; a bad line fails
/// with its 1-based number.
pub fn load_token_lines<R: Read>(reader: R) -> Result<Vec<Vec<String>>> {
    let mut reader = BufReader::new(reader);
    let mut lines = Vec::new();
    let mut buf = Vec::new();
    let mut line_no = 0usize;
    loop {
        buf.clear();
        if reader.read_until(b'\n', &mut buf)? == 0 {
            break;
        }
        line_no += 1;
        let line = std::str::from_utf8(&buf).map_err(|e| Error::Parse {
            line: line_no,
            message: format!("line is not valid UTF-8 ({e})"),
        })?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<String> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::to_string)
            .collect();
        if !tokens.is_empty() {
            lines.push(tokens);
        }
    }
    Ok(lines)
}

/// Reads basket-format text (the [`load_token_lines`] syntax) into a
/// database, interning tokens by first appearance. Duplicate items within a
/// line collapse to one.
pub fn load_transactions<R: Read>(reader: R) -> Result<TransactionDb> {
    let mut symbols = SymbolTable::new();
    let mut transactions = Vec::new();
    for tokens in load_token_lines(reader)? {
        let items = tokens.iter().map(|t| symbols.intern(t)).collect();
        transactions.push(Transaction::new(items));
    }
    Ok(TransactionDb::new(symbols, transactions))
}

/// Per-item occurrence counts, indexed by item id.
pub fn item_counts(db: &TransactionDb) -> Vec<u64> {
    let mut counts = vec![0u64; db.symbols.len()];
    for t in &db.transactions {
        for item in t.items() {
            counts[item.index()] += 1;
        }
    }
    counts
}

/// Splits `db` on `class_item`: the first database holds the transactions
/// that contained it (with the class item removed from each), the second
/// holds the rest, unchanged. Both share `db`'s symbol table.
pub fn split_by_class(db: &TransactionDb, class_item: Item) -> (TransactionDb, TransactionDb) {
    let mut with = Vec::new();
    let mut without = Vec::new();
    for t in &db.transactions {
        if t.contains(class_item) {
            let items = t
                .items()
                .iter()
                .copied()
                .filter(|&i| i != class_item)
                .collect();
            // already sorted and unique; Transaction::new just re-checks
            with.push(Transaction::new(items));
        } else {
            without.push(t.clone());
        }
    }
    (
        TransactionDb::new(db.symbols.clone(), with),
        TransactionDb::new(db.symbols.clone(), without),
    )
}

/// Restricts every transaction to the `keep` set. Transactions that become
/// empty are *retained*, so the database size (the support denominator) is
/// unchanged.
pub fn filter_items(db: &TransactionDb, keep: &[Item]) -> TransactionDb {
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    let transactions = db
        .transactions
        .iter()
        .map(|t| {
            Transaction::new(
                t.items()
                    .iter()
                    .copied()
                    .filter(|i| keep.binary_search(i).is_ok())
                    .collect(),
            )
        })
        .collect();
    TransactionDb::new(db.symbols.clone(), transactions)
}

/// Whether ranks run in tree-building direction (most frequent first) or in
/// pattern-growth direction (its exact reverse).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderDirection {
    TreeBuild,
    PatternGrowth,
}

/// A total order over a subset of items: rank 0 comes first. Items outside
/// the covered subset have no rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ItemOrder {
    items: Vec<Item>,
    ranks: Vec<Option<u32>>,
    direction: OrderDirection,
}

impl ItemOrder {
    /// Builds an order from an explicit item sequence (rank 0 first).
    /// The sequence must not repeat an item.
    pub fn new(items: Vec<Item>, direction: OrderDirection) -> Result<Self> {
        let universe = items.iter().map(|i| i.index() + 1).max().unwrap_or(0);
        let mut ranks = vec![None; universe];
        for (rank, item) in items.iter().enumerate() {
            if ranks[item.index()].is_some() {
                return Err(Error::InvalidConfig(format!(
                    "item #{} listed twice in item order",
                    item.index()
                )));
            }
            ranks[item.index()] = Some(rank as u32);
        }
        Ok(ItemOrder {
            items,
            ranks,
            direction,
        })
    }

    pub fn rank(&self, item: Item) -> Option<usize> {
        self.ranks
            .get(item.index())
            .copied()
            .flatten()
            .map(|r| r as usize)
    }

    /// The item at `rank`. Panics if out of range.
    pub fn item_at(&self, rank: usize) -> Item {
        self.items[rank]
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn direction(&self) -> OrderDirection {
        self.direction
    }

    /// The same items ranked back to front, with the direction flipped.
    pub fn reversed(&self) -> ItemOrder {
        let mut items = self.items.clone();
        items.reverse();
        let direction = match self.direction {
            OrderDirection::TreeBuild => OrderDirection::PatternGrowth,
            OrderDirection::PatternGrowth => OrderDirection::TreeBuild,
        };
        ItemOrder::new(items, direction).expect("reversal preserves uniqueness")
    }

    /// True iff `other` ranks exactly the same items in exactly the opposite
    /// sequence. Directions are not compared.
    pub fn is_reverse_of(&self, other: &ItemOrder) -> bool {
        self.items.len() == other.items.len()
            && self
                .items
                .iter()
                .zip(other.items.iter().rev())
                .all(|(a, b)| a == b)
    }
}

/// Ranks `eligible` items by descending count in `db`, breaking ties by
/// ascending item id. The result has tree-building direction. `eligible`
/// must be interned in `db`'s symbol table; duplicates are ignored.
pub fn support_descending_order(db: &TransactionDb, eligible: &[Item]) -> ItemOrder {
    let counts = item_counts(db);
    let mut items = eligible.to_vec();
    items.sort_unstable();
    items.dedup();
    items.sort_by_key(|&item| (Reverse(counts[item.index()]), item));
    ItemOrder::new(items, OrderDirection::TreeBuild).expect("deduplicated items are unique")
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use std::io::Cursor;

    /// Eight transactions, five majority-class ("0") and three rare-class
    /// ("1"); the small worked dataset used throughout the test suites.
    pub(crate) const WORKED_BASKET: &str = "\
f a c d g i m p 0
a b c f l m o 0
b f h j o 0
b c k s p 0
a f c e l p m n 0
f m 1
c 1
b 1
";

    pub(crate) fn worked_db() -> TransactionDb {
        load_transactions(Cursor::new(WORKED_BASKET)).unwrap()
    }

    fn items_of(db: &TransactionDb, tokens: &[&str]) -> Vec<Item> {
        tokens
            .iter()
            .map(|t| db.symbols().get(t).unwrap())
            .collect()
    }

    #[test]
    fn loads_worked_basket() {
        let db = worked_db();
        assert_eq!(db.len(), 8);
        // 17 letter items plus the two class labels.
        assert_eq!(db.symbols().len(), 19);
        let t0 = &db.transactions()[0];
        assert_eq!(t0.len(), 9);
        assert!(t0.contains(db.symbols().get("f").unwrap()));
        assert!(t0.contains(db.symbols().get("0").unwrap()));
        // round-trip: token -> id -> token
        for tok in ["f", "s", "0", "1"] {
            let item = db.symbols().get(tok).unwrap();
            assert_eq!(db.symbols().token(item), tok);
        }
        assert_eq!(db.symbols().get("zz"), None);
    }

    #[test]
    fn duplicate_items_in_a_line_collapse() {
        let db = load_transactions(Cursor::new("f f c\n")).unwrap();
        assert_eq!(db.len(), 1);
        assert_eq!(db.transactions()[0].len(), 2);
    }

    #[test]
    fn separators_comments_and_blanks() {
        let text = "# header comment\n\na,b\tc\n   \nd, ,e\n#tail\n";
        let db = load_transactions(Cursor::new(text)).unwrap();
        assert_eq!(db.len(), 2);
        assert_eq!(db.transactions()[0].len(), 3);
        assert_eq!(db.transactions()[1].len(), 2);
        // line of separators only contributes nothing
        let db = load_transactions(Cursor::new(",,,\n")).unwrap();
        assert_eq!(db.len(), 0);
    }

    #[test]
    fn token_lines_preserve_order_and_spelling() {
        let text = "# note\nm f\nzz m\n\nq,q\n";
        let lines = load_token_lines(Cursor::new(text)).unwrap();
        assert_eq!(
            lines,
            vec![
                vec!["m".to_string(), "f".to_string()],
                vec!["zz".to_string(), "m".to_string()],
                vec!["q".to_string(), "q".to_string()],
            ]
        );
    }

    #[test]
    fn empty_input_loads_empty_db() {
        let db = load_transactions(Cursor::new("")).unwrap();
        assert_eq!(db.len(), 0);
        assert_eq!(db.symbols().len(), 0);
        assert_eq!(item_counts(&db), Vec::<u64>::new());
    }

    #[test]
    fn non_utf8_line_reports_line_number() {
        let bytes = b"ok line\n\xff\xfe broken\n".to_vec();
        match load_transactions(Cursor::new(bytes)) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn interning_is_first_seen_order() {
        let db = worked_db();
        let f = db.symbols().get("f").unwrap();
        let a = db.symbols().get("a").unwrap();
        let m = db.symbols().get("m").unwrap();
        let b = db.symbols().get("b").unwrap();
        assert_eq!(f.index(), 0);
        assert_eq!(a.index(), 1);
        // m appears on the first line, b only on the second
        assert!(m < b);
    }

    #[test]
    fn counts_worked_basket() {
        let db = worked_db();
        let counts = item_counts(&db);
        let count_of = |tok: &str| counts[db.symbols().get(tok).unwrap().index()];
        assert_eq!(count_of("f"), 5);
        assert_eq!(count_of("c"), 5);
        assert_eq!(count_of("b"), 4);
        assert_eq!(count_of("m"), 4);
        assert_eq!(count_of("0"), 5);
        assert_eq!(count_of("1"), 3);
        assert_eq!(count_of("s"), 1);
    }

    #[test]
    fn split_on_rare_class() {
        let db = worked_db();
        let one = db.symbols().get("1").unwrap();
        let (db1, db0) = split_by_class(&db, one);
        assert_eq!(db1.len(), 3);
        assert_eq!(db0.len(), 5);
        // class item removed from the rare side
        let sides: Vec<Vec<&str>> = db1
            .transactions()
            .iter()
            .map(|t| t.items().iter().map(|&i| db.symbols().token(i)).collect())
            .collect();
        assert_eq!(sides, vec![vec!["f", "m"], vec!["c"], vec!["b"]]);
        // majority side unchanged: still contains its own class label
        let zero = db.symbols().get("0").unwrap();
        assert!(db0.transactions().iter().all(|t| t.contains(zero)));
        // degenerate splits
        let (all, none) = split_by_class(&db, zero);
        assert_eq!(all.len(), 5);
        assert_eq!(none.len(), 3);
        let s = db.symbols().get("s").unwrap();
        let (just_one, rest) = split_by_class(&db, s);
        assert_eq!(just_one.len(), 1);
        assert_eq!(rest.len(), 7);
    }

    #[test]
    fn filter_keeps_emptied_transactions() {
        let db = worked_db();
        let one = db.symbols().get("1").unwrap();
        let (_, db0) = split_by_class(&db, one);
        let keep = items_of(&db, &["f", "c", "b", "m"]);
        let filtered = filter_items(&db0, &keep);
        assert_eq!(filtered.len(), db0.len());
        let as_tokens = |t: &Transaction| -> Vec<&str> {
            t.items().iter().map(|&i| db.symbols().token(i)).collect()
        };
        assert_eq!(as_tokens(&filtered.transactions()[2]), vec!["f", "b"]);
        assert_eq!(as_tokens(&filtered.transactions()[3]), vec!["c", "b"]);
        // filtering to nothing keeps every (now empty) transaction
        let none = filter_items(&db0, &[]);
        assert_eq!(none.len(), db0.len());
        assert!(none.transactions().iter().all(Transaction::is_empty));
        // idempotence
        let twice = filter_items(&filtered, &keep);
        assert_eq!(twice.transactions(), filtered.transactions());
    }

    #[test]
    fn support_descending_order_breaks_ties_by_id() {
        let db = worked_db();
        let eligible = items_of(&db, &["f", "c", "b", "m"]);
        let order = support_descending_order(&db, &eligible);
        // counts: f=5, c=5, b=4, m=4. f precedes c and m precedes b because
        // ties fall back to ascending interned id, and m appears on the first
        // line of the basket while b first appears on the second.
        let ranked: Vec<&str> = order
            .items()
            .iter()
            .map(|&i| db.symbols().token(i))
            .collect();
        assert_eq!(ranked, vec!["f", "c", "m", "b"]);
        assert_eq!(order.direction(), OrderDirection::TreeBuild);
        // items outside the order have no rank
        assert_eq!(order.rank(db.symbols().get("a").unwrap()), None);
    }

    #[test]
    fn order_reversal_round_trips() {
        let db = worked_db();
        let order = support_descending_order(&db, &items_of(&db, &["f", "c", "b", "m"]));
        let rev = order.reversed();
        assert_eq!(rev.direction(), OrderDirection::PatternGrowth);
        assert!(rev.is_reverse_of(&order));
        assert!(order.is_reverse_of(&rev));
        assert_eq!(rev.reversed(), order);
        // ranks flip end for end
        let f = db.symbols().get("f").unwrap();
        assert_eq!(order.rank(f), Some(0));
        assert_eq!(rev.rank(f), Some(3));
    }

    #[test]
    fn explicit_order_rejects_duplicates() {
        let db = worked_db();
        let f = db.symbols().get("f").unwrap();
        assert!(ItemOrder::new(vec![f, f], OrderDirection::TreeBuild).is_err());
    }

    #[test]
    fn singleton_db_orders_single_item() {
        let db = load_transactions(Cursor::new("x\n")).unwrap();
        let x = db.symbols().get("x").unwrap();
        let order = support_descending_order(&db, &[x]);
        assert_eq!(order.len(), 1);
        assert_eq!(order.rank(x), Some(0));
        assert_eq!(order.item_at(0), x);
    }
}
