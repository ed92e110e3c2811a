//! Timing harness: every query variant `repeat` times, one report per
//! (query, variant, scale).

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Result, WorkbenchError};
use crate::experiment::BoxTable;
use crate::queries::{run_query, QueryId};
use crate::table::Database;

/// Reference query for the box table.
pub const BOX_QUERY: &str = "STBOX X((1000.0,1000.0),(1100.0,1100.0))";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub query_id: String,
    pub variant: &'static str,
    pub scale: String,
    pub workers: usize,
    pub repeat: usize,
    pub wall_ns_min: u128,
    pub wall_ns_mean: u128,
    pub rows: usize,
}

/// Runs `f` `repeat` times; returns (min, mean) nanoseconds and the row count
/// of the last run.
pub fn time_runs(repeat: usize, mut f: impl FnMut() -> Result<usize>) -> Result<(u128, u128, usize)> {
    let repeat = repeat.max(1);
    let (mut min, mut total, mut rows) = (u128::MAX, 0u128, 0);
    for _ in 0..repeat {
        let start = Instant::now();
        rows = f()?;
        let ns = start.elapsed().as_nanos();
        min = min.min(ns);
        total += ns;
    }
    Ok((min, total / repeat as u128, rows))
}

fn variants(id: QueryId, indexed: bool) -> Vec<(&'static str, bool)> {
    match id {
        QueryId::Q5 => vec![("naive", false)],
        QueryId::Q5Opt => vec![("optimized", false)],
        QueryId::Q3 => vec![("seq", false)],
        QueryId::Q7 | QueryId::Q10 if indexed => vec![("seq", false), ("indexed", true)],
        QueryId::Q7 | QueryId::Q10 => vec![("seq", false)],
    }
}

/// Benchmarks the trip queries and, when present, the box-table scan; `only`
/// restricts the run to one query. Variants of one query must agree on their
/// row count.
pub fn run_all(db: &Database, boxes: Option<&BoxTable>, repeat: usize, only: Option<QueryId>) -> Result<Vec<BenchReport>> {
    let mut out: Vec<BenchReport> = Vec::new();
    let scale = format!("trips={}", db.trips.len());
    let indexed = db.trip_index().is_some();
    for id in QueryId::ALL.into_iter().filter(|id| only.is_none_or(|o| o == *id)) {
        for (variant, use_index) in variants(id, indexed) {
            let (min, mean, rows) = time_runs(repeat, || Ok(run_query(db, id, use_index)?.len()))?;
            out.push(BenchReport {
                query_id: id.name().to_string(),
                variant,
                scale: scale.clone(),
                workers: 1,
                repeat,
                wall_ns_min: min,
                wall_ns_mean: mean,
                rows,
            });
        }
    }
    if let (Some(boxes), None) = (boxes, only) {
        let scale = format!("rows={}", boxes.rows.len());
        let mut modes = vec![("seq", false)];
        if boxes.index().is_some() {
            modes.push(("indexed", true));
        }
        for (variant, use_index) in modes {
            let (min, mean, rows) = time_runs(repeat, || Ok(boxes.scan_literal(BOX_QUERY, use_index)?.len()))?;
            out.push(BenchReport {
                query_id: "scan".into(),
                variant,
                scale: scale.clone(),
                workers: 1,
                repeat,
                wall_ns_min: min,
                wall_ns_mean: mean,
                rows,
            });
        }
    }
    check_row_counts(&out)?;
    Ok(out)
}

fn check_row_counts(reports: &[BenchReport]) -> Result<()> {
    let base = |q: &str| q.trim_end_matches("opt").to_string();
    for a in reports {
        for b in reports {
            if base(&a.query_id) == base(&b.query_id) && a.scale == b.scale && a.rows != b.rows {
                return Err(WorkbenchError::Data(format!(
                    "{} {} returned {} rows but {} {} returned {}",
                    a.query_id, a.variant, a.rows, b.query_id, b.variant, b.rows
                )));
            }
        }
    }
    Ok(())
}

pub fn write_csv(writer: impl Write, reports: &[BenchReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for r in reports {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn human_table(reports: &[BenchReport]) -> String {
    let mut s = format!(
        "{:<6} {:<10} {:<12} {:>12} {:>12} {:>8}\n",
        "query", "variant", "scale", "min ms", "mean ms", "rows"
    );
    for r in reports {
        s.push_str(&format!(
            "{:<6} {:<10} {:<12} {:>12.3} {:>12.3} {:>8}\n",
            r.query_id,
            r.variant,
            r.scale,
            r.wall_ns_min as f64 / 1e6,
            r.wall_ns_mean as f64 / 1e6,
            r.rows
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{generate, SynthConfig};

    #[test]
    fn reports_every_variant() {
        let mut db = generate(SynthConfig::default());
        db.build_index(2).unwrap();
        let mut boxes = BoxTable::generate(1000);
        boxes.build_index(1).unwrap();
        let reports = run_all(&db, Some(&boxes), 1, None).unwrap();
        let keys: Vec<(&str, &str)> = reports.iter().map(|r| (r.query_id.as_str(), r.variant)).collect();
        assert_eq!(
            keys,
            [
                ("Q3", "seq"),
                ("Q5", "naive"),
                ("Q5opt", "optimized"),
                ("Q7", "seq"),
                ("Q7", "indexed"),
                ("Q10", "seq"),
                ("Q10", "indexed"),
                ("scan", "seq"),
                ("scan", "indexed"),
            ]
        );
        assert_eq!(reports.last().unwrap().rows, 1);
        let mut buf = Vec::new();
        write_csv(&mut buf, &reports).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 10);
    }
}
