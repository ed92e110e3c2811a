use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn mobdb(data: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mobdb"))
        .arg("--data")
        .arg(data)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

#[test]
fn eval_prints_result() {
    let dir = tempfile::tempdir().unwrap();
    let o = mobdb(dir.path(), &["eval", "duration('{1@2025-01-01, 2@2025-01-02, 1@2025-01-03}'::TINT, true)"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "2 days");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&mobdb(dir.path(), &["frobnicate"])), 1);
    assert_eq!(code(&mobdb(dir.path(), &["query"])), 1);
    assert_eq!(code(&mobdb(dir.path(), &["query", "--id", "Q4"])), 1);
    assert_eq!(code(&mobdb(dir.path(), &["bench", "--repeat", "1"])), 1);
    assert_eq!(code(&mobdb(dir.path(), &["--help"])), 0);
    // no dataset yet
    assert_eq!(code(&mobdb(dir.path(), &["query", "--id", "Q3"])), 2);
    assert_eq!(code(&mobdb(dir.path(), &["eval", "stbox 'STBOX X((1,2)'"])), 2);
}

#[test]
fn synth_query_bench_export() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data");
    assert_eq!(code(&mobdb(&data, &["synth", "--vehicles", "20", "--trips", "50", "--seed", "42"])), 0);
    assert_eq!(code(&mobdb(&data, &["synth", "--rows", "1000"])), 0);
    // indexed run before the index exists
    assert_eq!(code(&mobdb(&data, &["query", "--id", "Q7", "--use-index"])), 2);
    assert_eq!(code(&mobdb(&data, &["index", "build", "--workers", "4"])), 0);

    for id in ["Q3", "Q5", "Q5opt", "Q7", "Q10"] {
        let seq = stdout(&mobdb(&data, &["query", "--id", id]));
        let idx = stdout(&mobdb(&data, &["query", "--id", id, "--use-index"]));
        assert_eq!(seq, idx, "{id}");
        assert!(seq.lines().count() > 1, "{id} has rows");
    }
    let out = dir.path().join("q10.csv");
    let o = mobdb(&data, &["query", "--id", "Q10", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("license1,car2_id,periods\n"));

    let scan = stdout(&mobdb(&data, &["scan", "--stbox", "STBOX X((1000.0,1000.0),(1100.0,1100.0))", "--use-index"]));
    assert!(scan.starts_with("1 rows"), "{scan}");
    assert_eq!(scan.lines().nth(1), Some("1000"));

    let bench = dir.path().join("bench.csv");
    let o = mobdb(&data, &["bench", "--all", "--repeat", "1", "--out", bench.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&bench).unwrap();
    assert!(text.starts_with("query_id,variant,scale,workers,repeat,wall_ns_min,wall_ns_mean,rows"));
    assert_eq!(text.lines().count(), 10);

    let gj = dir.path().join("q7.geojson");
    assert_eq!(code(&mobdb(&data, &["export", "geojson", "--query", "Q7", "--out", gj.to_str().unwrap()])), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&gj).unwrap()).unwrap();
    validate_feature_collection(&v);
    assert!(!v["features"].as_array().unwrap().is_empty());
}

/// Structural checks from RFC 7946.
fn validate_feature_collection(v: &Value) {
    assert_eq!(v["type"], "FeatureCollection");
    for f in v["features"].as_array().expect("features array") {
        assert_eq!(f["type"], "Feature");
        assert!(f["properties"].is_object() || f["properties"].is_null());
        let g = &f["geometry"];
        if g.is_null() {
            continue;
        }
        validate_geometry(g);
    }
}

fn validate_position(p: &Value) {
    let a = p.as_array().expect("position");
    assert!(a.len() >= 2 && a.iter().all(|c| c.as_f64().is_some_and(f64::is_finite)));
}

fn validate_geometry(g: &Value) {
    let coords = &g["coordinates"];
    match g["type"].as_str().expect("type") {
        "Point" => validate_position(coords),
        "LineString" => {
            let a = coords.as_array().unwrap();
            assert!(a.len() >= 2);
            a.iter().for_each(validate_position);
        }
        "Polygon" => {
            for ring in coords.as_array().unwrap() {
                let r = ring.as_array().unwrap();
                assert!(r.len() >= 4);
                assert_eq!(r.first(), r.last(), "closed ring");
                r.iter().for_each(validate_position);
            }
        }
        "GeometryCollection" => g["geometries"].as_array().unwrap().iter().for_each(validate_geometry),
        other => panic!("unexpected type {other}"),
    }
}

#[test]
fn ingest_reports_bad_rows_and_accepts_unsorted_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "vehicle_id,trip_id,x,y,t\n1,1,0,0,2025-01-01 00:00:00\n1,1,zero,0,2025-01-01 00:01:00\n").unwrap();
    let o = mobdb(&dir.path().join("d1"), &["ingest", "--trips", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"), "{}", String::from_utf8_lossy(&o.stderr));

    let dup = dir.path().join("dup.csv");
    std::fs::write(&dup, "vehicle_id,trip_id,x,y,t\n1,1,0,0,2025-01-01 00:00:00\n1,1,1,0,2025-01-01 00:00:00\n").unwrap();
    assert_eq!(code(&mobdb(&dir.path().join("d2"), &["ingest", "--trips", dup.to_str().unwrap()])), 2);

    let trips = dir.path().join("trips.csv");
    std::fs::write(
        &trips,
        "vehicle_id,trip_id,x,y,t\n\
         2,1,5,5,2025-01-01 00:10:00\n\
         1,1,3,4,2025-01-01 00:01:00\n\
         1,1,0,0,2025-01-01 00:00:00\n",
    )
    .unwrap();
    let vehicles = dir.path().join("vehicles.csv");
    std::fs::write(&vehicles, "vehicle_id,license,vehicle_type\n1,A-1,passenger\n2,A-2,truck\n").unwrap();
    let data = dir.path().join("d3");
    let o = mobdb(&data, &["ingest", "--trips", trips.to_str().unwrap(), "--vehicles", vehicles.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("ingested 2 trips"));
    // no Instants1 table was given
    assert_eq!(code(&mobdb(&data, &["query", "--id", "Q3"])), 2);
    // two vehicles fill Licenses1 only
    let o = mobdb(&data, &["query", "--id", "Q5opt"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Licenses2"));
}
