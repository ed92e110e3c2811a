//! Deterministic synthetic datasets: grid-road trips for the benchmark
//! queries and the box generator of the index experiment.

use mobdb_core::time::USECS_PER_SEC;
use mobdb_core::{Geometry, Interval, Point, Polygon, Rect, STBox, TimestampTz};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ingest::{build_trips, Observation};
use crate::table::{Database, InstantRow, PointRow, Region, Vehicle};

/// Grid spacing and node count per axis of the road network.
const BLOCK: f64 = 100.0;
const NODES: i32 = 21;
pub const EXTENT: f64 = BLOCK * (NODES - 1) as f64;

#[derive(Debug, Clone, Copy)]
pub struct SynthConfig {
    pub vehicles: usize,
    pub trips: usize,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            vehicles: 20,
            trips: 50,
            seed: 42,
        }
    }
}

fn day_start() -> TimestampTz {
    TimestampTz::from_ymd_hms(2025, 1, 6, 7, 0, 0).expect("valid date")
}

fn node(rng: &mut impl Rng) -> (i32, i32) {
    (rng.gen_range(0..NODES), rng.gen_range(0..NODES))
}

fn node_point(n: (i32, i32)) -> Point {
    Point::new(f64::from(n.0) * BLOCK, f64::from(n.1) * BLOCK)
}

/// Manhattan route between two nodes, every node on the way included.
fn route(rng: &mut impl Rng, from: (i32, i32), to: (i32, i32)) -> Vec<(i32, i32)> {
    let mut path = vec![from];
    let mut cur = from;
    let x_first = rng.gen_bool(0.5);
    let step = |a: i32, b: i32| (b - a).signum();
    for phase in 0..2 {
        let along_x = (phase == 0) == x_first;
        loop {
            let next = if along_x {
                (cur.0 + step(cur.0, to.0), cur.1)
            } else {
                (cur.0, cur.1 + step(cur.1, to.1))
            };
            if next == cur {
                break;
            }
            path.push(next);
            cur = next;
        }
    }
    path
}

/// Drives a route from `start`, emitting (position, time) samples: every node,
/// random points along edges and the occasional stop.
fn drive(rng: &mut impl Rng, path: &[(i32, i32)], start: TimestampTz) -> Vec<(Point, TimestampTz)> {
    let mut out = vec![(node_point(path[0]), start)];
    let mut t = start.0;
    let speed = rng.gen_range(8.0..16.0);
    for w in path.windows(2) {
        let (a, b) = (node_point(w[0]), node_point(w[1]));
        let mut fractions: Vec<f64> = (0..rng.gen_range(0..3)).map(|_| rng.gen_range(0.05..0.95)).collect();
        fractions.sort_by(f64::total_cmp);
        fractions.dedup();
        fractions.push(1.0);
        let mut prev = 0.0;
        for f in fractions {
            let secs = (f - prev) * BLOCK / speed;
            t += (secs * USECS_PER_SEC as f64).round() as i64;
            let p = Point::new(a.x + (b.x - a.x) * f, a.y + (b.y - a.y) * f);
            out.push((p, TimestampTz(t)));
            prev = f;
        }
        if rng.gen_bool(0.05) {
            t += rng.gen_range(5..60) * USECS_PER_SEC;
            out.push((b, TimestampTz(t)));
        }
    }
    out
}

/// The benchmark dataset: vehicles on a grid road network, trips alternating
/// between home and work anchors, and a share of trips that shadow another
/// vehicle's trip closely so that meetings occur.
pub fn generate(config: SynthConfig) -> Database {
    assert!(config.vehicles >= 2, "at least two vehicles");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut db = Database::default();
    let anchors: Vec<((i32, i32), (i32, i32))> = (0..config.vehicles).map(|_| (node(&mut rng), node(&mut rng))).collect();
    for v in 0..config.vehicles {
        let vehicle_type = match rng.gen_range(0..10) {
            0 => "truck",
            1 => "bus",
            _ => "passenger",
        };
        db.vehicles.push(Vehicle {
            vehicle_id: v as i64 + 1,
            license: format!("B-{:04}", 1000 + v * 37 % 1000),
            vehicle_type: vehicle_type.to_string(),
        });
    }

    let mut obs = Vec::new();
    let mut samples_by_trip: Vec<Vec<(Point, TimestampTz)>> = Vec::new();
    let mut position: Vec<(i32, i32)> = anchors.iter().map(|a| a.0).collect();
    let mut trips_of_vehicle = vec![0i64; config.vehicles];
    for k in 0..config.trips {
        let v = k % config.vehicles;
        let j = trips_of_vehicle[v];
        trips_of_vehicle[v] += 1;
        let start = day_start() + Interval::hours(3 * j) + Interval::seconds(rng.gen_range(0..1800));
        let shadow = k % 5 == 4 && k > 0;
        let samples = if shadow {
            // follow the previous trip with a small offset, either all the way
            // or for its first half before heading to an own target
            let leader = &samples_by_trip[k - 1];
            let offset = Point::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
            let lag = rng.gen_range(0..3) * USECS_PER_SEC;
            let keep = if rng.gen_bool(0.5) { leader.len() } else { leader.len().div_ceil(2) };
            let mut s: Vec<(Point, TimestampTz)> = leader[..keep]
                .iter()
                .map(|(p, t)| (Point::new(p.x + offset.x, p.y + offset.y), TimestampTz(t.0 + lag)))
                .collect();
            if keep < leader.len() {
                let (last_p, last_t) = *s.last().expect("non-empty");
                let here = ((last_p.x / BLOCK).round() as i32, (last_p.y / BLOCK).round() as i32);
                let target = node(&mut rng);
                let path = route(&mut rng, here, target);
                let tail = drive(&mut rng, &path, last_t + Interval::seconds(5));
                s.extend(tail);
            }
            position[v] = nearest_node(s.last().expect("non-empty").0);
            s
        } else {
            let target = if j % 2 == 0 { anchors[v].1 } else { anchors[v].0 };
            let target = if target == position[v] { node(&mut rng) } else { target };
            let path = route(&mut rng, position[v], target);
            position[v] = *path.last().expect("non-empty");
            drive(&mut rng, &path, start)
        };
        for &(point, t) in &samples {
            obs.push(Observation {
                vehicle_id: v as i64 + 1,
                trip_id: k as i64 + 1,
                point,
                t,
            });
        }
        samples_by_trip.push(samples);
    }
    db.trips = build_trips(obs, None).expect("generated trips are valid");

    db.sample_licenses();

    // mostly inside some trip, so that positions exist; the rest anywhere in the day
    let (lo, hi) = db.trips.iter().fold((i64::MAX, i64::MIN), |(lo, hi), t| {
        (lo.min(t.trip.temporal().start_timestamp().0), hi.max(t.trip.temporal().end_timestamp().0))
    });
    db.instants1 = (1..=10)
        .map(|i| {
            let (from, to) = if i <= 7 {
                let t = db.trips.choose(&mut rng).expect("trips exist").trip.temporal();
                (t.start_timestamp().0, t.end_timestamp().0)
            } else {
                (lo - 600 * USECS_PER_SEC, hi)
            };
            InstantRow {
                instant_id: i,
                instant: TimestampTz(rng.gen_range(from..=to)),
            }
        })
        .collect();

    // mostly visited road nodes, plus a few arbitrary ones
    let visited: Vec<Point> = samples_by_trip
        .iter()
        .flatten()
        .map(|(p, _)| *p)
        .filter(|p| p.x % BLOCK == 0.0 && p.y % BLOCK == 0.0)
        .collect();
    db.points1 = (1..=10)
        .map(|i| {
            let p = if i <= 7 {
                *visited.choose(&mut rng).expect("trips visit nodes")
            } else {
                node_point(node(&mut rng))
            };
            PointRow {
                point_id: i,
                geom: Geometry::from_point(p, None),
            }
        })
        .collect();

    let third = EXTENT / 3.0;
    for i in 0..3 {
        for j in 0..3 {
            let r = Rect::new(
                f64::from(i) * third,
                f64::from(j) * third,
                f64::from(i + 1) * third,
                f64::from(j + 1) * third,
            )
            .expect("ordered");
            db.regions.push(Region {
                name: format!("R{}{}", i + 1, j + 1),
                polygon: Geometry::polygon(Polygon::rectangle(r), None),
            });
        }
    }
    db
}

fn nearest_node(p: Point) -> (i32, i32) {
    let clamp = |v: f64| ((v / BLOCK).round() as i32).clamp(0, NODES - 1);
    (clamp(p.x), clamp(p.y))
}

/// Row `i` of the index experiment table: a half-unit box at (i, i), timestamped
/// `i` minutes after 2025-08-11 12:00.
pub fn test_geo_row(i: u64) -> (TimestampTz, STBox) {
    let base = TimestampTz::from_ymd_hms(2025, 8, 11, 12, 0, 0).expect("valid date");
    let v = i as f64;
    let rect = Rect::new(v, v, v + 0.5, v + 0.5).expect("ordered");
    (base + Interval::minutes(i as i64), STBox::xy(rect, None))
}

pub fn test_geo(rows: u64) -> Vec<(TimestampTz, STBox)> {
    (1..=rows).map(test_geo_row).collect()
}
