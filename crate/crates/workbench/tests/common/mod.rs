//! Brute-force reimplementations used as oracles. They read trips as raw
//! (point, micros) vertex lists and share no code with the query layer.
#![allow(dead_code)]

pub mod golden;

use mobdb_core::{Point, Shape, TGeomPoint};
use mobdb_workbench::table::Database;

pub type Vertex = (f64, f64, i64);

/// (license1, car2_id, periods in micros)
pub type Meeting = (String, i64, Vec<(f64, f64)>);

pub fn vertices(trip: &TGeomPoint) -> Vec<Vertex> {
    trip.temporal().instants().into_iter().map(|i| (i.value.x, i.value.y, i.t.0)).collect()
}

/// Linear position at `t`, or None outside the closed time range.
pub fn position(v: &[Vertex], t: i64) -> Option<(f64, f64)> {
    if v.is_empty() || t < v[0].2 || t > v[v.len() - 1].2 {
        return None;
    }
    for w in v.windows(2) {
        let (a, b) = (w[0], w[1]);
        if t >= a.2 && t <= b.2 {
            let f = (t - a.2) as f64 / (b.2 - a.2) as f64;
            return Some((a.0 + (b.0 - a.0) * f, a.1 + (b.1 - a.1) * f));
        }
    }
    Some((v[0].0, v[0].1))
}

fn point_segment(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let f = if len2 == 0.0 {
        0.0
    } else {
        (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0)
    };
    ((a.0 + f * dx - p.0).powi(2) + (a.1 + f * dy - p.1).powi(2)).sqrt()
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

pub fn segment_distance(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> f64 {
    let (d1, d2, d3, d4) = (cross(c, d, a), cross(c, d, b), cross(a, b, c), cross(a, b, d));
    if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
        return 0.0;
    }
    point_segment(a, c, d)
        .min(point_segment(b, c, d))
        .min(point_segment(c, a, b))
        .min(point_segment(d, a, b))
}

/// Path pieces of a trip, a lone vertex as a degenerate segment.
fn pieces(v: &[Vertex]) -> Vec<((f64, f64), (f64, f64))> {
    if v.len() == 1 {
        return vec![((v[0].0, v[0].1), (v[0].0, v[0].1))];
    }
    v.windows(2).map(|w| ((w[0].0, w[0].1), (w[1].0, w[1].1))).collect()
}

pub fn path_distance(a: &[Vertex], b: &[Vertex]) -> f64 {
    let (pa, pb) = (pieces(a), pieces(b));
    let mut best = f64::INFINITY;
    for &(p, q) in &pa {
        for &(r, s) in &pb {
            best = best.min(segment_distance(p, q, r, s));
        }
    }
    best
}

fn license_of(vehicle_id: i64, licenses: &[mobdb_workbench::table::License]) -> Vec<String> {
    licenses.iter().filter(|l| l.vehicle_id == vehicle_id).map(|l| l.license.clone()).collect()
}

/// (license, instant_id, x, y) for every Licenses1 vehicle trip defined at an instant.
pub fn q3_oracle(db: &Database) -> Vec<(String, i64, f64, f64)> {
    let mut rows = Vec::new();
    for l in &db.licenses1 {
        for i in &db.instants1 {
            for t in db.trips.iter().filter(|t| t.vehicle_id == l.vehicle_id) {
                if let Some((x, y)) = position(&vertices(&t.trip), i.instant.0) {
                    rows.push((l.license.clone(), i.instant_id, x, y));
                }
            }
        }
    }
    rows.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)).then(a.2.total_cmp(&b.2)));
    rows
}

/// (license1, license2, min distance) over all trips of both vehicles.
pub fn q5_oracle(db: &Database) -> Vec<(String, String, f64)> {
    let mut rows = Vec::new();
    for l1 in &db.licenses1 {
        for l2 in &db.licenses2 {
            let mut best = f64::INFINITY;
            for t1 in db.trips.iter().filter(|t| t.vehicle_id == l1.vehicle_id) {
                for t2 in db.trips.iter().filter(|t| t.vehicle_id == l2.vehicle_id) {
                    best = best.min(path_distance(&vertices(&t1.trip), &vertices(&t2.trip)));
                }
            }
            if best.is_finite() {
                rows.push((l1.license.clone(), l2.license.clone(), best));
            }
        }
    }
    rows.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    rows
}

/// First time a trip is at `p`, to the microsecond.
pub fn first_visit(v: &[Vertex], p: (f64, f64)) -> Option<i64> {
    const EPS: f64 = 1e-9;
    if v.len() == 1 {
        return (((v[0].0 - p.0).powi(2) + (v[0].1 - p.1).powi(2)).sqrt() <= EPS).then_some(v[0].2);
    }
    for w in v.windows(2) {
        let (a, b) = (w[0], w[1]);
        if point_segment(p, (a.0, a.1), (b.0, b.1)) > EPS {
            continue;
        }
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let len2 = dx * dx + dy * dy;
        if len2 == 0.0 {
            return Some(a.2);
        }
        let f = (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0);
        return Some(a.2 + (f * (b.2 - a.2) as f64).round() as i64);
    }
    None
}

/// (point_id, license, instant): passenger vehicles that reached each point first.
pub fn q7_oracle(db: &Database) -> Vec<(i64, String, i64)> {
    let mut rows = Vec::new();
    for p in &db.points1 {
        let Shape::Point(pt) = p.geom.shape() else { panic!("Points1 holds points") };
        let target = (pt.x, pt.y);
        let mut firsts: Vec<(String, i64)> = Vec::new();
        for v in db.vehicles.iter().filter(|v| v.vehicle_type == "passenger") {
            let best = db
                .trips
                .iter()
                .filter(|t| t.vehicle_id == v.vehicle_id)
                .filter_map(|t| first_visit(&vertices(&t.trip), target))
                .min();
            if let Some(b) = best {
                firsts.push((v.license.clone(), b));
            }
        }
        if let Some(earliest) = firsts.iter().map(|f| f.1).min() {
            for (license, t) in firsts {
                if t == earliest {
                    rows.push((p.point_id, license, t));
                }
            }
        }
    }
    rows.sort();
    rows
}

/// Closed intervals (micros, as f64) where two trips are within `d`, found by
/// solving the distance quadratic on every synchronized piece.
pub fn within_periods(a: &[Vertex], b: &[Vertex], d: f64) -> Vec<(f64, f64)> {
    let lo = a[0].2.max(b[0].2);
    let hi = a[a.len() - 1].2.min(b[b.len() - 1].2);
    if lo > hi {
        return Vec::new();
    }
    let mut cuts: Vec<i64> = a.iter().chain(b).map(|v| v.2).filter(|&t| t >= lo && t <= hi).collect();
    cuts.push(lo);
    cuts.push(hi);
    cuts.sort_unstable();
    cuts.dedup();
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut push = |s: f64, e: f64| {
        if let Some(last) = out.last_mut() {
            if s <= last.1 + 1e-6 {
                last.1 = last.1.max(e);
                return;
            }
        }
        out.push((s, e));
    };
    if cuts.len() == 1 {
        let (pa, pb) = (position(a, lo).unwrap(), position(b, lo).unwrap());
        if ((pa.0 - pb.0).powi(2) + (pa.1 - pb.1).powi(2)).sqrt() <= d {
            push(lo as f64, lo as f64);
        }
        return out;
    }
    for w in cuts.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let (a0, a1) = (position(a, t0).unwrap(), position(a, t1).unwrap());
        let (b0, b1) = (position(b, t0).unwrap(), position(b, t1).unwrap());
        // relative offset r(s) = p + q s, s in [0, 1]
        let p = (a0.0 - b0.0, a0.1 - b0.1);
        let q = (a1.0 - b1.0 - p.0, a1.1 - b1.1 - p.1);
        let qa = q.0 * q.0 + q.1 * q.1;
        let qb = 2.0 * (p.0 * q.0 + p.1 * q.1);
        let qc = p.0 * p.0 + p.1 * p.1 - d * d;
        let span = (t1 - t0) as f64;
        let at = |s: f64| t0 as f64 + s * span;
        if qa < 1e-18 {
            if qc <= 0.0 {
                push(at(0.0), at(1.0));
            }
            continue;
        }
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            continue;
        }
        let r = disc.sqrt();
        let (s0, s1) = ((-qb - r) / (2.0 * qa), (-qb + r) / (2.0 * qa));
        let (s0, s1) = (s0.max(0.0), s1.min(1.0));
        if s0 <= s1 {
            push(at(s0), at(s1));
        }
    }
    out
}

/// (license1, car2_id, periods) over every trip pair, no pre-filters.
pub fn q10_oracle(db: &Database, d: f64) -> Vec<Meeting> {
    let mut rows = Vec::new();
    for t1 in &db.trips {
        for license in license_of(t1.vehicle_id, &db.licenses1) {
            for t2 in &db.trips {
                if t2.vehicle_id == t1.vehicle_id || db.vehicle(t2.vehicle_id).is_none() {
                    continue;
                }
                let periods = within_periods(&vertices(&t1.trip), &vertices(&t2.trip), d);
                if !periods.is_empty() {
                    rows.push((license.clone(), t2.vehicle_id, periods));
                }
            }
        }
    }
    rows
}

/// Length of the part of segment a-b inside a closed axis-aligned rectangle.
pub fn clipped_length(a: (f64, f64), b: (f64, f64), min: (f64, f64), max: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    for (p, q) in [(-dx, a.0 - min.0), (dx, max.0 - a.0), (-dy, a.1 - min.1), (dy, max.1 - a.1)] {
        if p == 0.0 {
            if q < 0.0 {
                return 0.0;
            }
        } else {
            let r = q / p;
            if p < 0.0 {
                t0 = t0.max(r);
            } else {
                t1 = t1.min(r);
            }
        }
    }
    if t0 >= t1 {
        0.0
    } else {
        (t1 - t0) * (dx * dx + dy * dy).sqrt()
    }
}

pub fn dist(a: Point, b: Point) -> f64 {
    a.distance(&b)
}
