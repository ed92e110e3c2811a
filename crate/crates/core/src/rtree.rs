//! Append-only R-tree over `STBox` entries with quadratic split.
//!
//! Internal entries carry the hull of their child. Nodes are chosen and split
//! by x/y area; the time span, when every child has one, is kept in the hull
//! and used for pruning.

use std::fmt::Write as _;
use std::sync::Mutex;

use crate::boxes::STBox;
use crate::error::{check_srid, Error, Result};

pub type RowId = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RTreeConfig {
    pub max_entries: usize,
    pub min_entries: usize,
}

impl RTreeConfig {
    /// Capacity `max_entries`, minimum fill `ceil(0.4 * max_entries)`.
    pub fn with_capacity(max_entries: usize) -> Self {
        assert!(max_entries >= 4, "node capacity must be at least 4");
        RTreeConfig {
            max_entries,
            min_entries: (max_entries * 2).div_ceil(5),
        }
    }
}

impl Default for RTreeConfig {
    fn default() -> Self {
        RTreeConfig::with_capacity(64)
    }
}

#[derive(Debug, Clone)]
enum Child {
    Row(RowId),
    Node(Box<Node>),
}

#[derive(Debug, Clone)]
struct Entry {
    mbr: STBox,
    child: Child,
}

#[derive(Debug, Clone)]
struct Node {
    /// 0 for leaves.
    level: usize,
    entries: Vec<Entry>,
}

impl Node {
    fn hull(&self) -> STBox {
        let mut it = self.entries.iter();
        let first = it.next().expect("nodes are never empty").mbr;
        it.fold(first, |acc, e| acc.union_unchecked(&e.mbr))
    }
}

fn area(b: &STBox) -> f64 {
    b.area()
}

fn enlargement(base: &STBox, add: &STBox) -> f64 {
    area(&base.union_unchecked(add)) - area(base)
}

#[derive(Debug, Clone)]
pub struct RTree {
    config: RTreeConfig,
    root: Option<Node>,
    /// Fixed by the first insert.
    srid: Option<Option<i32>>,
    len: usize,
}

impl Default for RTree {
    fn default() -> Self {
        RTree::new(RTreeConfig::default())
    }
}

impl RTree {
    pub fn new(config: RTreeConfig) -> Self {
        RTree {
            config,
            root: None,
            srid: None,
            len: 0,
        }
    }

    pub fn config(&self) -> RTreeConfig {
        self.config
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of levels; 0 when empty.
    pub fn depth(&self) -> usize {
        self.root.as_ref().map_or(0, |r| r.level + 1)
    }

    pub fn srid(&self) -> Option<i32> {
        self.srid.flatten()
    }

    pub fn insert(&mut self, b: STBox, row: RowId) -> Result<()> {
        if !b.has_xy() {
            return Err(Error::MissingSpatialDimension);
        }
        match self.srid {
            Some(srid) => check_srid(srid, b.srid())?,
            None => self.srid = Some(b.srid()),
        }
        let entry = Entry {
            mbr: b,
            child: Child::Row(row),
        };
        self.len += 1;
        let Some(root) = self.root.as_mut() else {
            self.root = Some(Node {
                level: 0,
                entries: vec![entry],
            });
            return Ok(());
        };
        if let Some(sibling) = insert_into(root, entry, &self.config) {
            let old = self.root.take().expect("root present");
            let level = old.level + 1;
            self.root = Some(Node {
                level,
                entries: vec![
                    Entry {
                        mbr: old.hull(),
                        child: Child::Node(Box::new(old)),
                    },
                    Entry {
                        mbr: sibling.hull(),
                        child: Child::Node(Box::new(sibling)),
                    },
                ],
            });
        }
        Ok(())
    }

    /// Row ids of all entries whose box overlaps `query`, in tree order.
    pub fn search(&self, query: &STBox) -> Result<Vec<RowId>> {
        if !query.has_xy() {
            return Err(Error::MissingSpatialDimension);
        }
        let mut out = Vec::new();
        let Some(root) = self.root.as_ref() else {
            return Ok(out);
        };
        if let Some(srid) = self.srid {
            check_srid(srid, query.srid())?;
        }
        let mut stack = vec![root];
        while let Some(node) = stack.pop() {
            for e in &node.entries {
                if !e.mbr.overlaps_unchecked(query) {
                    continue;
                }
                match &e.child {
                    Child::Row(id) => out.push(*id),
                    Child::Node(n) => stack.push(n),
                }
            }
        }
        Ok(out)
    }

    /// Checks fill bounds, hull tightness and uniform leaf depth.
    pub fn audit(&self) -> std::result::Result<(), String> {
        let Some(root) = self.root.as_ref() else {
            return if self.len == 0 {
                Ok(())
            } else {
                Err(format!("empty tree reports {} entries", self.len))
            };
        };
        let mut rows = 0;
        audit_node(root, true, &self.config, &mut rows)?;
        if rows != self.len {
            return Err(format!("tree holds {rows} rows, expected {}", self.len));
        }
        Ok(())
    }

    /// Indented text rendering of the tree, one line per node or row.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        if let Some(root) = &self.root {
            dump_node(root, 0, &mut out);
        }
        out
    }
}

fn insert_into(node: &mut Node, entry: Entry, config: &RTreeConfig) -> Option<Node> {
    if node.level == 0 {
        node.entries.push(entry);
    } else {
        let idx = choose_subtree(node, &entry.mbr);
        let target = &mut node.entries[idx];
        let Child::Node(child) = &mut target.child else {
            unreachable!("internal entries point to nodes");
        };
        target.mbr = target.mbr.union_unchecked(&entry.mbr);
        if let Some(sibling) = insert_into(child, entry, config) {
            target.mbr = child.hull();
            node.entries.push(Entry {
                mbr: sibling.hull(),
                child: Child::Node(Box::new(sibling)),
            });
        }
    }
    (node.entries.len() > config.max_entries).then(|| quadratic_split(node, config))
}

fn choose_subtree(node: &Node, b: &STBox) -> usize {
    let mut best = 0;
    let mut best_key = (f64::INFINITY, f64::INFINITY);
    for (i, e) in node.entries.iter().enumerate() {
        let key = (enlargement(&e.mbr, b), area(&e.mbr));
        if key < best_key {
            best_key = key;
            best = i;
        }
    }
    best
}

/// Splits an overflowing node in place; returns the new sibling.
fn quadratic_split(node: &mut Node, config: &RTreeConfig) -> Node {
    let mut rest = std::mem::take(&mut node.entries);
    let (s1, s2) = pick_seeds(&rest);
    // Remove the higher index first so the lower one stays valid.
    let e2 = rest.swap_remove(s2.max(s1));
    let e1 = rest.swap_remove(s2.min(s1));
    let (mut g1, mut g2) = (vec![e1], vec![e2]);
    let (mut b1, mut b2) = (g1[0].mbr, g2[0].mbr);
    while !rest.is_empty() {
        if g1.len() + rest.len() == config.min_entries {
            g1.append(&mut rest);
            break;
        }
        if g2.len() + rest.len() == config.min_entries {
            g2.append(&mut rest);
            break;
        }
        let mut pick = 0;
        let mut pick_diff = f64::NEG_INFINITY;
        for (i, e) in rest.iter().enumerate() {
            let diff = (enlargement(&b1, &e.mbr) - enlargement(&b2, &e.mbr)).abs();
            if diff > pick_diff {
                pick_diff = diff;
                pick = i;
            }
        }
        let e = rest.swap_remove(pick);
        let d1 = enlargement(&b1, &e.mbr);
        let d2 = enlargement(&b2, &e.mbr);
        let to_first = (d1, area(&b1), g1.len()) <= (d2, area(&b2), g2.len());
        if to_first {
            b1 = b1.union_unchecked(&e.mbr);
            g1.push(e);
        } else {
            b2 = b2.union_unchecked(&e.mbr);
            g2.push(e);
        }
    }
    node.entries = g1;
    Node {
        level: node.level,
        entries: g2,
    }
}

fn pick_seeds(entries: &[Entry]) -> (usize, usize) {
    let mut best = (0, 1);
    let mut worst = f64::NEG_INFINITY;
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let (a, b) = (&entries[i].mbr, &entries[j].mbr);
            let waste = area(&a.union_unchecked(b)) - area(a) - area(b);
            if waste > worst {
                worst = waste;
                best = (i, j);
            }
        }
    }
    best
}

fn audit_node(node: &Node, is_root: bool, config: &RTreeConfig, rows: &mut usize) -> std::result::Result<(), String> {
    let n = node.entries.len();
    if n > config.max_entries {
        return Err(format!("node at level {} has {n} > {} entries", node.level, config.max_entries));
    }
    if is_root {
        if n == 0 || (node.level > 0 && n < 2) {
            return Err(format!("root at level {} has {n} entries", node.level));
        }
    } else if n < config.min_entries {
        return Err(format!("node at level {} has {n} < {} entries", node.level, config.min_entries));
    }
    for e in &node.entries {
        match (&e.child, node.level) {
            (Child::Row(_), 0) => *rows += 1,
            (Child::Node(child), level) if level > 0 => {
                if child.level + 1 != level {
                    return Err(format!("child at level {} under level {level}", child.level));
                }
                if child.hull() != e.mbr {
                    return Err(format!("entry box at level {level} is not the hull of its child"));
                }
                audit_node(child, false, config, rows)?;
            }
            _ => return Err(format!("mixed leaf and internal entries at level {}", node.level)),
        }
    }
    Ok(())
}

fn dump_node(node: &Node, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    let _ = writeln!(out, "{pad}node level={} entries={}", node.level, node.entries.len());
    for e in &node.entries {
        match &e.child {
            Child::Row(id) => {
                let _ = writeln!(out, "{pad}  row {id} {}", e.mbr);
            }
            Child::Node(child) => {
                let _ = writeln!(out, "{pad}  box {}", e.mbr);
                dump_node(child, indent + 2, out);
            }
        }
    }
}

/// Worker-local collection buffer for [`BulkBuilder`].
#[derive(Debug, Default)]
pub struct LocalBuffer {
    entries: Vec<(STBox, RowId)>,
}

impl LocalBuffer {
    pub fn push(&mut self, b: STBox, row: RowId) {
        self.entries.push((b, row));
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Three-phase construction: workers fill local buffers, buffers are combined
/// under a mutex, then every entry is inserted.
#[derive(Debug)]
pub struct BulkBuilder {
    config: RTreeConfig,
    global: Mutex<Vec<(STBox, RowId)>>,
}

impl BulkBuilder {
    pub fn new(config: RTreeConfig) -> Self {
        BulkBuilder {
            config,
            global: Mutex::new(Vec::new()),
        }
    }

    pub fn local(&self) -> LocalBuffer {
        LocalBuffer::default()
    }

    pub fn combine(&self, local: LocalBuffer) {
        let mut global = self.global.lock().unwrap_or_else(|e| e.into_inner());
        global.extend(local.entries);
    }

    /// Inserts the combined entries in row-id order, so the tree shape does not
    /// depend on worker scheduling.
    pub fn finish(self) -> Result<RTree> {
        let mut entries = self.global.into_inner().unwrap_or_else(|e| e.into_inner());
        entries.sort_by_key(|(_, row)| *row);
        let mut tree = RTree::new(self.config);
        for (b, row) in entries {
            tree.insert(b, row)?;
        }
        Ok(tree)
    }
}

/// Builds an index with `workers` collection threads.
pub fn bulk_build(entries: &[(STBox, RowId)], workers: usize, config: RTreeConfig) -> Result<RTree> {
    let builder = BulkBuilder::new(config);
    let workers = workers.max(1);
    let chunk = entries.len().div_ceil(workers).max(1);
    std::thread::scope(|scope| {
        for part in entries.chunks(chunk) {
            let builder = &builder;
            scope.spawn(move || {
                let mut local = builder.local();
                for (b, row) in part {
                    local.push(*b, *row);
                }
                builder.combine(local);
            });
        }
    });
    builder.finish()
}

/// Operand of a predicate as seen by the planner.
#[derive(Debug, Clone, PartialEq)]
pub enum ScanOperand {
    Column(String),
    Constant(STBox),
    Other,
}

/// An index scan that replaces a sequential filter.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexScan {
    pub column: String,
    pub query: STBox,
}

/// Binds `lhs op rhs` to an index scan when `op` is `&&` and the operands are
/// the indexed column and a constant box, in either order.
pub fn scan_plan(op: &str, lhs: &ScanOperand, rhs: &ScanOperand, indexed_column: &str) -> Option<IndexScan> {
    if op != "&&" {
        return None;
    }
    match (lhs, rhs) {
        (ScanOperand::Column(c), ScanOperand::Constant(b))
        | (ScanOperand::Constant(b), ScanOperand::Column(c))
            if c.eq_ignore_ascii_case(indexed_column) && b.has_xy() =>
        {
            Some(IndexScan {
                column: c.clone(),
                query: *b,
            })
        }
        _ => None,
    }
}
