//! The benchmark queries over a [`Database`], each with a sequential and an
//! index-backed variant of its `&&` pre-filter.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use mobdb_core::geom::{self, collect};
use mobdb_core::rtree::{scan_plan, ScanOperand};
use mobdb_core::tgeo::{geometry_to_stbox, t_dwithin};
use mobdb_core::{Geometry, STBox, SpanSet, TimestampTz};

use crate::error::{Result, WorkbenchError};
use crate::table::Database;

/// Distance threshold of Q10.
pub const MEET_DISTANCE: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QueryId {
    Q3,
    Q5,
    Q5Opt,
    Q7,
    Q10,
}

impl QueryId {
    pub const ALL: [QueryId; 5] = [QueryId::Q3, QueryId::Q5, QueryId::Q5Opt, QueryId::Q7, QueryId::Q10];

    pub fn name(self) -> &'static str {
        match self {
            QueryId::Q3 => "Q3",
            QueryId::Q5 => "Q5",
            QueryId::Q5Opt => "Q5opt",
            QueryId::Q7 => "Q7",
            QueryId::Q10 => "Q10",
        }
    }
}

impl fmt::Display for QueryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QueryId {
    type Err = WorkbenchError;

    fn from_str(s: &str) -> Result<Self> {
        QueryId::ALL
            .into_iter()
            .find(|q| q.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| WorkbenchError::Usage(format!("unknown query '{s}' (expected Q3, Q5, Q5opt, Q7 or Q10)")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Q3Row {
    pub license: String,
    pub instant_id: i64,
    pub instant: TimestampTz,
    pub pos: Option<Geometry>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Q5Row {
    pub license1: String,
    pub license2: String,
    pub min_dist: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Q7Row {
    pub license: String,
    pub point_id: i64,
    pub geom: Geometry,
    pub instant: TimestampTz,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Q10Row {
    pub license1: String,
    pub car2_id: i64,
    pub periods: SpanSet<TimestampTz>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum QueryResult {
    Q3(Vec<Q3Row>),
    Q5(Vec<Q5Row>),
    Q7(Vec<Q7Row>),
    Q10(Vec<Q10Row>),
}

impl QueryResult {
    pub fn len(&self) -> usize {
        match self {
            QueryResult::Q3(r) => r.len(),
            QueryResult::Q5(r) => r.len(),
            QueryResult::Q7(r) => r.len(),
            QueryResult::Q10(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The geometry column of each row, if the query has one.
    pub fn geometries(&self) -> Vec<Option<Geometry>> {
        match self {
            QueryResult::Q3(rows) => rows.iter().map(|r| r.pos.clone()).collect(),
            QueryResult::Q7(rows) => rows.iter().map(|r| Some(r.geom.clone())).collect(),
            _ => vec![None; self.len()],
        }
    }

    /// Column names and stringified rows, for CSV output.
    pub fn table(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let opt = |g: &Option<Geometry>| g.as_ref().map_or(String::new(), |g| g.to_string());
        match self {
            QueryResult::Q3(rows) => (
                vec!["license", "instant_id", "instant", "pos"],
                rows.iter()
                    .map(|r| vec![r.license.clone(), r.instant_id.to_string(), r.instant.to_string(), opt(&r.pos)])
                    .collect(),
            ),
            QueryResult::Q5(rows) => (
                vec!["license1", "license2", "min_dist"],
                rows.iter()
                    .map(|r| vec![r.license1.clone(), r.license2.clone(), r.min_dist.to_string()])
                    .collect(),
            ),
            QueryResult::Q7(rows) => (
                vec!["license", "point_id", "geom", "instant"],
                rows.iter()
                    .map(|r| vec![r.license.clone(), r.point_id.to_string(), r.geom.to_string(), r.instant.to_string()])
                    .collect(),
            ),
            QueryResult::Q10(rows) => (
                vec!["license1", "car2_id", "periods"],
                rows.iter()
                    .map(|r| vec![r.license1.clone(), r.car2_id.to_string(), r.periods.to_string()])
                    .collect(),
            ),
        }
    }
}

pub fn run_query(db: &Database, id: QueryId, use_index: bool) -> Result<QueryResult> {
    if use_index && db.trip_index().is_none() {
        return Err(WorkbenchError::MissingIndex);
    }
    Ok(match id {
        QueryId::Q3 => QueryResult::Q3(q3(db)?),
        QueryId::Q5 => QueryResult::Q5(q5(db, false)?),
        QueryId::Q5Opt => QueryResult::Q5(q5(db, true)?),
        QueryId::Q7 => QueryResult::Q7(q7(db, use_index)?),
        QueryId::Q10 => QueryResult::Q10(q10(db, use_index)?),
    })
}

fn require<T>(rows: &[T], name: &'static str) -> Result<()> {
    if rows.is_empty() {
        Err(WorkbenchError::MissingTable(name))
    } else {
        Ok(())
    }
}

/// Positions of trips whose box overlaps `query`, via the index when the
/// planner binds the predicate and `use_index` is set.
fn overlapping_trips(db: &Database, query: &STBox, use_index: bool) -> Result<Vec<usize>> {
    let plan = scan_plan(
        "&&",
        &ScanOperand::Column("trip".into()),
        &ScanOperand::Constant(*query),
        "trip",
    );
    match (use_index, plan, db.trip_index()) {
        (true, Some(scan), Some(index)) => {
            let mut rows: Vec<usize> = index.search(&scan.query)?.into_iter().map(|r| r as usize).collect();
            rows.sort_unstable();
            Ok(rows)
        }
        (true, Some(_), None) => Err(WorkbenchError::MissingIndex),
        _ => {
            let mut rows = Vec::new();
            for (i, t) in db.trips.iter().enumerate() {
                if t.trip.overlaps_box(query)? {
                    rows.push(i);
                }
            }
            Ok(rows)
        }
    }
}

/// Where have the Licenses1 vehicles been at each Instants1 instant.
pub fn q3(db: &Database) -> Result<Vec<Q3Row>> {
    require(&db.trips, "Trips")?;
    require(&db.licenses1, "Licenses1")?;
    require(&db.instants1, "Instants1")?;
    let mut rows = Vec::new();
    for t in &db.trips {
        let span = t.trip.temporal().to_tstzspan();
        for l in db.licenses1.iter().filter(|l| l.vehicle_id == t.vehicle_id) {
            for i in db.instants1.iter().filter(|i| span.contains_value(i.instant)) {
                rows.push(Q3Row {
                    license: l.license.clone(),
                    instant_id: i.instant_id,
                    instant: i.instant,
                    pos: t.trip.value_at_timestamp(i.instant),
                });
            }
        }
    }
    rows.sort_by(|a, b| {
        (&a.license, a.instant_id)
            .cmp(&(&b.license, b.instant_id))
            .then_with(|| a.pos.as_ref().map(|g| g.to_string()).cmp(&b.pos.as_ref().map(|g| g.to_string())))
    });
    rows.dedup();
    Ok(rows)
}

fn wkt_round_trip(g: &Geometry) -> Result<Geometry> {
    Ok(g.to_ewkt().parse()?)
}

/// Collected trajectories per license, in license order; licenses without
/// trips form no group.
fn collected(db: &Database, licenses: &[crate::table::License], naive: bool) -> Result<Vec<(String, Geometry)>> {
    let mut groups: BTreeMap<String, Vec<Geometry>> = BTreeMap::new();
    for t in &db.trips {
        for l in licenses.iter().filter(|l| l.vehicle_id == t.vehicle_id) {
            let traj = t.trip.trajectory();
            let traj = if naive { wkt_round_trip(&traj)? } else { traj };
            groups.entry(l.license.clone()).or_default().push(traj);
        }
    }
    groups
        .into_iter()
        .map(|(license, trajs)| Ok((license, collect(&trajs)?)))
        .collect()
}

/// Minimum distance between where each Licenses1 and each Licenses2 vehicle
/// has been. The naive variant passes every geometry through WKT text on its
/// way into `collect` and `distance`.
pub fn q5(db: &Database, optimized: bool) -> Result<Vec<Q5Row>> {
    require(&db.trips, "Trips")?;
    require(&db.licenses1, "Licenses1")?;
    require(&db.licenses2, "Licenses2")?;
    let naive = !optimized;
    let temp1 = collected(db, &db.licenses1, naive)?;
    let temp2 = collected(db, &db.licenses2, naive)?;
    let mut rows = Vec::with_capacity(temp1.len() * temp2.len());
    for (l1, g1) in &temp1 {
        for (l2, g2) in &temp2 {
            let min_dist = if naive {
                geom::distance(&wkt_round_trip(g1)?, &wkt_round_trip(g2)?)?
            } else {
                geom::distance(g1, g2)?
            };
            rows.push(Q5Row {
                license1: l1.clone(),
                license2: l2.clone(),
                min_dist,
            });
        }
    }
    Ok(rows)
}

/// Passenger cars that reached each Points1 point first.
pub fn q7(db: &Database, use_index: bool) -> Result<Vec<Q7Row>> {
    require(&db.trips, "Trips")?;
    require(&db.vehicles, "Vehicles")?;
    require(&db.points1, "Points1")?;
    // (license, point_id) -> MIN(startTimestamp(atValues(..))), NULL when every value is NULL
    let mut groups: BTreeMap<(String, i64), (Geometry, Option<TimestampTz>)> = BTreeMap::new();
    for p in &db.points1 {
        let query = geometry_to_stbox(&p.geom);
        for row in overlapping_trips(db, &query, use_index)? {
            let t = &db.trips[row];
            let Some(v) = db.vehicle(t.vehicle_id) else { continue };
            if v.vehicle_type != "passenger" || !geom::intersects(&t.traj, &p.geom)? {
                continue;
            }
            let start = t.trip.at_value(&p.geom)?.map(|r| r.temporal().start_timestamp());
            let entry = groups
                .entry((v.license.clone(), p.point_id))
                .or_insert_with(|| (p.geom.clone(), None));
            entry.1 = match (entry.1, start) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
        }
    }
    let mut rows = Vec::new();
    for ((license, point_id), (geom, instant)) in &groups {
        let Some(instant) = *instant else { continue };
        // `instant <= ALL (...)`: any NULL or smaller instant for the point disqualifies
        let first = groups
            .iter()
            .filter(|((_, p), _)| p == point_id)
            .all(|(_, (_, other))| other.is_some_and(|o| instant <= o));
        if first {
            rows.push(Q7Row {
                license: license.clone(),
                point_id: *point_id,
                geom: geom.clone(),
                instant,
            });
        }
    }
    rows.sort_by(|a, b| (a.point_id, &a.license).cmp(&(b.point_id, &b.license)));
    Ok(rows)
}

/// When Licenses1 vehicles came within [`MEET_DISTANCE`] of other vehicles.
pub fn q10(db: &Database, use_index: bool) -> Result<Vec<Q10Row>> {
    require(&db.trips, "Trips")?;
    require(&db.licenses1, "Licenses1")?;
    require(&db.vehicles, "Vehicles")?;
    let mut rows = Vec::new();
    for t1 in &db.trips {
        for l1 in db.licenses1.iter().filter(|l| l.vehicle_id == t1.vehicle_id) {
            let query = t1.trip.to_stbox().expand_space(MEET_DISTANCE)?;
            for row in overlapping_trips(db, &query, use_index)? {
                let t2 = &db.trips[row];
                if t2.vehicle_id == t1.vehicle_id || db.vehicle(t2.vehicle_id).is_none() {
                    continue;
                }
                let periods = t_dwithin(&t1.trip, &t2.trip, MEET_DISTANCE)?.and_then(|tb| tb.when_true());
                if let Some(periods) = periods {
                    rows.push(Q10Row {
                        license1: l1.license.clone(),
                        car2_id: t2.vehicle_id,
                        periods,
                    });
                }
            }
        }
    }
    Ok(rows)
}

/// Kilometres driven inside each region, rounded to metres; regions nobody
/// entered are omitted.
pub fn region_report(db: &Database) -> Result<Vec<(String, f64)>> {
    require(&db.regions, "Regions")?;
    let mut out = Vec::new();
    for region in &db.regions {
        let mut total = 0.0;
        for t in &db.trips {
            if !geom::intersects(&t.traj, &region.polygon)? {
                continue;
            }
            if let Some(inside) = t.trip.at_geometry(&region.polygon)? {
                total += inside.length();
            }
        }
        let km = total.round() / 1000.0;
        if km != 0.0 {
            out.push((region.name.clone(), km));
        }
    }
    Ok(out)
}
