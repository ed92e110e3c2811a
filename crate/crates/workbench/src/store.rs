//! A dataset directory: one CSV per table plus `meta.json`. Indexes are not
//! serialized; `meta.json` records which ones exist and loading rebuilds them.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use mobdb_core::{Geometry, TimestampTz};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WorkbenchError};
use crate::experiment::BoxTable;
use crate::ingest::{build_trips, read_observations, trips_to_observations, write_observations};
use crate::table::{Database, InstantRow, License, PointRow, Region, Vehicle};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub srid: Option<i32>,
    /// Row count of the box experiment table, if generated.
    pub box_rows: Option<u64>,
    pub indexed: bool,
    pub index_workers: usize,
}

/// Everything a dataset directory holds.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub db: Database,
    pub boxes: Option<BoxTable>,
    pub meta: Meta,
}

#[derive(Serialize, Deserialize)]
struct VehicleRecord {
    vehicle_id: i64,
    license: String,
    vehicle_type: String,
}

#[derive(Serialize, Deserialize)]
struct LicenseRecord {
    license_id: i64,
    license: String,
    vehicle_id: i64,
}

#[derive(Serialize, Deserialize)]
struct InstantRecord {
    instant_id: i64,
    instant: String,
}

#[derive(Serialize, Deserialize)]
struct PointRecord {
    point_id: i64,
    geom: String,
}

#[derive(Serialize, Deserialize)]
struct RegionRecord {
    name: String,
    polygon: String,
}

fn row_error(path: &Path, line: u64, message: impl std::fmt::Display) -> WorkbenchError {
    WorkbenchError::Data(format!("{}: line {line}: {message}", path.display()))
}

/// Reads `path` if it exists; a missing file is an empty table.
fn read_table<R: DeserializeOwned, T>(path: &Path, mut convert: impl FnMut(R) -> std::result::Result<T, String>) -> Result<Vec<T>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path)?;
    let mut out = Vec::new();
    for (i, rec) in rdr.deserialize::<R>().enumerate() {
        let line = i as u64 + 2;
        let rec = rec.map_err(|e| row_error(path, line, e))?;
        out.push(convert(rec).map_err(|e| row_error(path, line, e))?);
    }
    Ok(out)
}

fn write_table<R: Serialize>(path: &Path, rows: impl IntoIterator<Item = R>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_vehicles(path: &Path) -> Result<Vec<Vehicle>> {
    read_table(path, |r: VehicleRecord| {
        Ok(Vehicle {
            vehicle_id: r.vehicle_id,
            license: r.license,
            vehicle_type: r.vehicle_type,
        })
    })
}

pub fn read_instants(path: &Path) -> Result<Vec<InstantRow>> {
    read_table(path, |r: InstantRecord| {
        let instant: TimestampTz = r.instant.parse().map_err(|e| format!("bad instant: {e}"))?;
        Ok(InstantRow {
            instant_id: r.instant_id,
            instant,
        })
    })
}

pub fn read_points(path: &Path) -> Result<Vec<PointRow>> {
    read_table(path, |r: PointRecord| {
        let geom: Geometry = r.geom.parse().map_err(|e| format!("bad geometry: {e}"))?;
        Ok(PointRow {
            point_id: r.point_id,
            geom,
        })
    })
}

pub fn read_regions(path: &Path) -> Result<Vec<Region>> {
    read_table(path, |r: RegionRecord| {
        let polygon: Geometry = r.polygon.parse().map_err(|e| format!("bad polygon: {e}"))?;
        Ok(Region { name: r.name, polygon })
    })
}

fn read_licenses(path: &Path) -> Result<Vec<License>> {
    read_table(path, |r: LicenseRecord| {
        Ok(License {
            license_id: r.license_id,
            license: r.license,
            vehicle_id: r.vehicle_id,
        })
    })
}

struct Paths(PathBuf);

impl Paths {
    fn file(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

pub fn save(dir: &Path, ws: &Workspace) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let p = Paths(dir.to_path_buf());
    let db = &ws.db;
    write_observations(BufWriter::new(File::create(p.file("trips.csv"))?), &trips_to_observations(&db.trips))?;
    write_table(
        &p.file("vehicles.csv"),
        db.vehicles.iter().map(|v| VehicleRecord {
            vehicle_id: v.vehicle_id,
            license: v.license.clone(),
            vehicle_type: v.vehicle_type.clone(),
        }),
    )?;
    for (name, rows) in [("licenses1.csv", &db.licenses1), ("licenses2.csv", &db.licenses2)] {
        write_table(
            &p.file(name),
            rows.iter().map(|l| LicenseRecord {
                license_id: l.license_id,
                license: l.license.clone(),
                vehicle_id: l.vehicle_id,
            }),
        )?;
    }
    write_table(
        &p.file("instants1.csv"),
        db.instants1.iter().map(|i| InstantRecord {
            instant_id: i.instant_id,
            instant: i.instant.to_string(),
        }),
    )?;
    write_table(
        &p.file("points1.csv"),
        db.points1.iter().map(|r| PointRecord {
            point_id: r.point_id,
            geom: r.geom.to_ewkt(),
        }),
    )?;
    write_table(
        &p.file("regions.csv"),
        db.regions.iter().map(|r| RegionRecord {
            name: r.name.clone(),
            polygon: r.polygon.to_ewkt(),
        }),
    )?;
    serde_json::to_writer_pretty(BufWriter::new(File::create(p.file("meta.json"))?), &ws.meta)?;
    Ok(())
}

pub fn load(dir: &Path) -> Result<Workspace> {
    let p = Paths(dir.to_path_buf());
    let meta_path = p.file("meta.json");
    if !meta_path.exists() {
        return Err(WorkbenchError::Data(format!(
            "{} is not a dataset directory; run `synth` or `ingest` first",
            dir.display()
        )));
    }
    let meta: Meta = serde_json::from_reader(BufReader::new(File::open(&meta_path)?))?;
    let mut db = Database::default();
    let trips = p.file("trips.csv");
    if trips.exists() {
        let obs = read_observations(BufReader::new(File::open(&trips)?)).map_err(|e| match e {
            WorkbenchError::Row { line, message } => row_error(&trips, line, message),
            other => other,
        })?;
        db.trips = build_trips(obs, meta.srid)?;
    }
    db.vehicles = read_vehicles(&p.file("vehicles.csv"))?;
    db.licenses1 = read_licenses(&p.file("licenses1.csv"))?;
    db.licenses2 = read_licenses(&p.file("licenses2.csv"))?;
    db.instants1 = read_instants(&p.file("instants1.csv"))?;
    db.points1 = read_points(&p.file("points1.csv"))?;
    db.regions = read_regions(&p.file("regions.csv"))?;
    let mut boxes = meta.box_rows.map(BoxTable::generate);
    if meta.indexed {
        let workers = meta.index_workers.max(1);
        db.build_index(workers)?;
        if let Some(b) = boxes.as_mut() {
            b.build_index(workers)?;
        }
    }
    Ok(Workspace { db, boxes, meta })
}
