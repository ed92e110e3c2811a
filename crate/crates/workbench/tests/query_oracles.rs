mod common;

use common::*;
use mobdb_core::{Geometry, Shape};
use mobdb_workbench::queries::{q3, q5, q7, q10, region_report, run_query, QueryId, MEET_DISTANCE};
use mobdb_workbench::synth::{generate, SynthConfig};
use mobdb_workbench::table::Database;
use mobdb_workbench::WorkbenchError;

fn dataset(seed: u64) -> Database {
    let mut db = generate(SynthConfig {
        vehicles: 20,
        trips: 50,
        seed,
    });
    db.build_index(4).unwrap();
    db
}

fn xy(g: &Geometry) -> (f64, f64) {
    match g.shape() {
        Shape::Point(p) => (p.x, p.y),
        other => panic!("not a point: {other:?}"),
    }
}

const SEEDS: [u64; 4] = [42, 7, 1234, 99];

#[test]
fn q3_matches_brute_force() {
    for seed in SEEDS {
        let db = dataset(seed);
        let got = q3(&db).unwrap();
        let want = q3_oracle(&db);
        assert_eq!(got.len(), want.len(), "seed {seed}");
        for (g, w) in got.iter().zip(&want) {
            assert_eq!((&g.license, g.instant_id), (&w.0, w.1));
            let (x, y) = xy(g.pos.as_ref().expect("defined at instant"));
            assert!((x - w.2).abs() < 1e-6 && (y - w.3).abs() < 1e-6, "{g:?} vs {w:?}");
        }
    }
    assert!(!q3(&dataset(42)).unwrap().is_empty(), "the default dataset exercises Q3");
}

#[test]
fn q5_matches_brute_force_and_variants_agree() {
    for seed in SEEDS {
        let db = dataset(seed);
        let naive = q5(&db, false).unwrap();
        let opt = q5(&db, true).unwrap();
        let want = q5_oracle(&db);
        assert_eq!(naive.len(), want.len());
        assert_eq!(opt.len(), want.len());
        for ((n, o), w) in naive.iter().zip(&opt).zip(&want) {
            assert_eq!((&n.license1, &n.license2), (&w.0, &w.1));
            assert_eq!((&o.license1, &o.license2), (&w.0, &w.1));
            assert!((n.min_dist - o.min_dist).abs() <= 1e-9, "{n:?} vs {o:?}");
            assert!((o.min_dist - w.2).abs() <= 1e-9 * w.2.max(1.0), "{o:?} vs {w:?}");
        }
    }
}

#[test]
fn q7_matches_brute_force() {
    for seed in SEEDS {
        let db = dataset(seed);
        for use_index in [false, true] {
            let got: Vec<(i64, String, i64)> = q7(&db, use_index)
                .unwrap()
                .into_iter()
                .map(|r| (r.point_id, r.license, r.instant.0))
                .collect();
            assert_eq!(got, q7_oracle(&db), "seed {seed}, index {use_index}");
        }
    }
    assert!(!q7(&dataset(42), false).unwrap().is_empty());
}

#[test]
fn q10_matches_brute_force() {
    for seed in SEEDS {
        let db = dataset(seed);
        let mut want = q10_oracle(&db, MEET_DISTANCE);
        want.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)).then(a.2[0].0.total_cmp(&b.2[0].0)));
        for use_index in [false, true] {
            let mut got: Vec<Meeting> = q10(&db, use_index)
                .unwrap()
                .into_iter()
                .map(|r| {
                    let spans = r.periods.spans().iter().map(|s| (s.lower().0 as f64, s.upper().0 as f64)).collect();
                    (r.license1, r.car2_id, spans)
                })
                .collect();
            got.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)).then(a.2[0].0.total_cmp(&b.2[0].0)));
            assert_eq!(got.len(), want.len(), "seed {seed}, index {use_index}");
            for (g, w) in got.iter().zip(&want) {
                assert_eq!((&g.0, g.1, g.2.len()), (&w.0, w.1, w.2.len()), "{g:?} vs {w:?}");
                for (gs, ws) in g.2.iter().zip(&w.2) {
                    // the library rounds crossings to whole microseconds
                    assert!((gs.0 - ws.0).abs() <= 1.0 && (gs.1 - ws.1).abs() <= 1.0, "{g:?} vs {w:?}");
                }
            }
        }
    }
    assert!(!q10(&dataset(42), false).unwrap().is_empty());
}

#[test]
fn sequential_and_indexed_runs_are_identical() {
    for seed in SEEDS {
        let db = dataset(seed);
        for id in QueryId::ALL {
            assert_eq!(run_query(&db, id, false).unwrap(), run_query(&db, id, true).unwrap(), "{id} seed {seed}");
        }
    }
}

#[test]
fn repeated_runs_are_identical() {
    let (a, b) = (dataset(5), dataset(5));
    for id in QueryId::ALL {
        assert_eq!(run_query(&a, id, true).unwrap(), run_query(&b, id, true).unwrap());
    }
}

#[test]
fn index_required_for_indexed_runs() {
    let mut db = dataset(42);
    db.drop_index();
    assert!(matches!(run_query(&db, QueryId::Q7, true), Err(WorkbenchError::MissingIndex)));
}

#[test]
fn missing_tables_are_reported() {
    let mut db = dataset(42);
    db.instants1.clear();
    assert!(matches!(q3(&db), Err(WorkbenchError::MissingTable("Instants1"))));
    db.licenses2.clear();
    assert!(matches!(q5(&db, true), Err(WorkbenchError::MissingTable("Licenses2"))));
}

#[test]
fn identical_trips_meet_for_their_whole_duration() {
    let mut db = dataset(42);
    let mut twin = db.trips[0].clone();
    let other = db.vehicles.iter().find(|v| v.vehicle_id != twin.vehicle_id).unwrap().vehicle_id;
    db.trips.retain(|t| t.vehicle_id != other);
    twin.vehicle_id = other;
    twin.trip_id = 10_000;
    let span = twin.trip.temporal().to_tstzspan();
    db.trips.push(twin);
    db.build_index(1).unwrap();
    let rows = q10(&db, true).unwrap();
    let hit = rows.iter().find(|r| r.car2_id == other).expect("twin is reported");
    assert_eq!(hit.periods.spans(), [span]);
}

#[test]
fn region_report_matches_exact_clipping() {
    for seed in SEEDS {
        let db = dataset(seed);
        let report = region_report(&db).unwrap();
        for region in &db.regions {
            let b = region.polygon.bounds();
            let mut total = 0.0;
            for t in &db.trips {
                for w in vertices(&t.trip).windows(2) {
                    total += clipped_length((w[0].0, w[0].1), (w[1].0, w[1].1), (b.xmin, b.ymin), (b.xmax, b.ymax));
                }
            }
            let want = total / 1000.0;
            let got = report.iter().find(|r| r.0 == region.name).map_or(0.0, |r| r.1);
            assert!(
                (got - want).abs() <= 0.005 * want + 0.0005,
                "{} seed {seed}: {got} vs {want}",
                region.name
            );
        }
    }
}
