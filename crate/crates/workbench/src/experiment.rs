//! The index experiment table: one box per row from [`test_geo`], queried with
//! `box && <constant>`.

use mobdb_core::rtree::{bulk_build, scan_plan, RowId, ScanOperand};
use mobdb_core::{LiteralType, RTree, RTreeConfig, STBox, TimestampTz};

use crate::error::{Result, WorkbenchError};
use crate::synth::test_geo;

pub const BOX_COLUMN: &str = "box";

#[derive(Debug, Clone, Default)]
pub struct BoxTable {
    /// Row `i` has id `i + 1`.
    pub rows: Vec<(TimestampTz, STBox)>,
    index: Option<RTree>,
}

impl BoxTable {
    pub fn generate(rows: u64) -> Self {
        BoxTable {
            rows: test_geo(rows),
            index: None,
        }
    }

    pub fn build_index(&mut self, workers: usize) -> Result<()> {
        let entries: Vec<(STBox, RowId)> = self.rows.iter().enumerate().map(|(i, r)| (r.1, i as RowId + 1)).collect();
        self.index = Some(bulk_build(&entries, workers.max(1), RTreeConfig::default())?);
        Ok(())
    }

    pub fn index(&self) -> Option<&RTree> {
        self.index.as_ref()
    }

    /// Ids of rows whose box overlaps `query`, ascending.
    pub fn scan(&self, query: &STBox, use_index: bool) -> Result<Vec<RowId>> {
        let plan = scan_plan(
            "&&",
            &ScanOperand::Column(BOX_COLUMN.into()),
            &ScanOperand::Constant(*query),
            BOX_COLUMN,
        );
        match (use_index, plan) {
            (true, Some(scan)) => {
                let index = self.index.as_ref().ok_or(WorkbenchError::MissingIndex)?;
                let mut ids = index.search(&scan.query)?;
                ids.sort_unstable();
                Ok(ids)
            }
            _ => {
                let mut ids = Vec::new();
                for (i, (_, b)) in self.rows.iter().enumerate() {
                    if b.overlaps(query)? {
                        ids.push(i as RowId + 1);
                    }
                }
                Ok(ids)
            }
        }
    }

    /// Parses an STBox literal and scans with it.
    pub fn scan_literal(&self, literal: &str, use_index: bool) -> Result<Vec<RowId>> {
        let query = match mobdb_core::parse(literal, LiteralType::STBox)? {
            mobdb_core::Literal::STBox(b) => b,
            _ => unreachable!("parsed as stbox"),
        };
        self.scan(&query, use_index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexed_and_sequential_agree() {
        let mut t = BoxTable::generate(2000);
        t.build_index(2).unwrap();
        let q = "STBOX X((1000.0,1000.0),(1100.0,1100.0))";
        let seq = t.scan_literal(q, false).unwrap();
        assert_eq!(seq, (1000..=1100).collect::<Vec<_>>());
        assert_eq!(t.scan_literal(q, true).unwrap(), seq);
    }

    #[test]
    fn time_only_query_falls_back_to_sequential() {
        let t = BoxTable::generate(10);
        let ids = t.scan_literal("STBOX T([2025-08-11 12:00, 2025-08-11 13:00])", true).unwrap();
        assert_eq!(ids.len(), 10);
    }
}
