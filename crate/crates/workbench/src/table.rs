//! In-memory tables for the benchmark queries.

use mobdb_core::rtree::{bulk_build, RowId};
use mobdb_core::{Geometry, RTree, RTreeConfig, STBox, TGeomPoint, TimestampTz};

use crate::error::{Result, WorkbenchError};

#[derive(Debug, Clone, PartialEq)]
pub struct TripRow {
    pub vehicle_id: i64,
    pub trip_id: i64,
    pub trip: TGeomPoint,
    /// Cached `trajectory(trip)`.
    pub traj: Geometry,
}

impl TripRow {
    pub fn new(vehicle_id: i64, trip_id: i64, trip: TGeomPoint) -> Self {
        let traj = trip.trajectory();
        TripRow {
            vehicle_id,
            trip_id,
            trip,
            traj,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vehicle {
    pub vehicle_id: i64,
    pub license: String,
    pub vehicle_type: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct License {
    pub license_id: i64,
    pub license: String,
    pub vehicle_id: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstantRow {
    pub instant_id: i64,
    pub instant: TimestampTz,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointRow {
    pub point_id: i64,
    pub geom: Geometry,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub name: String,
    pub polygon: Geometry,
}

/// All tables of a loaded dataset plus the optional R-tree over trip boxes.
#[derive(Debug, Clone, Default)]
pub struct Database {
    pub trips: Vec<TripRow>,
    pub vehicles: Vec<Vehicle>,
    pub licenses1: Vec<License>,
    pub licenses2: Vec<License>,
    pub instants1: Vec<InstantRow>,
    pub points1: Vec<PointRow>,
    pub regions: Vec<Region>,
    trip_index: Option<RTree>,
}

impl Database {
    /// Builds the R-tree over `to_stbox(trip)`; row ids are positions in `trips`.
    pub fn build_index(&mut self, workers: usize) -> Result<()> {
        let entries: Vec<(STBox, RowId)> = self
            .trips
            .iter()
            .enumerate()
            .map(|(i, t)| (t.trip.to_stbox(), i as RowId))
            .collect();
        self.trip_index = Some(bulk_build(&entries, workers.max(1), RTreeConfig::default())?);
        Ok(())
    }

    pub fn trip_index(&self) -> Option<&RTree> {
        self.trip_index.as_ref()
    }

    pub fn drop_index(&mut self) {
        self.trip_index = None;
    }

    pub fn vehicle(&self, vehicle_id: i64) -> Option<&Vehicle> {
        self.vehicles.iter().find(|v| v.vehicle_id == vehicle_id)
    }

    /// Licenses1 is the first 10 vehicles by id, Licenses2 the next 10.
    pub fn sample_licenses(&mut self) {
        let mut vehicles: Vec<&Vehicle> = self.vehicles.iter().collect();
        vehicles.sort_by_key(|v| v.vehicle_id);
        let sample = |rows: &[&Vehicle]| -> Vec<License> {
            rows.iter()
                .map(|v| License {
                    license_id: v.vehicle_id,
                    license: v.license.clone(),
                    vehicle_id: v.vehicle_id,
                })
                .collect()
        };
        let split = vehicles.len().min(10);
        self.licenses1 = sample(&vehicles[..split]);
        self.licenses2 = sample(&vehicles[split..vehicles.len().min(20)]);
    }

    /// Rejects duplicate (vehicle, trip) keys.
    pub fn check_trip_keys(&self) -> Result<()> {
        let mut keys: Vec<(i64, i64)> = self.trips.iter().map(|t| (t.vehicle_id, t.trip_id)).collect();
        keys.sort_unstable();
        if let Some(w) = keys.windows(2).find(|w| w[0] == w[1]) {
            return Err(WorkbenchError::Data(format!(
                "duplicate trip (vehicle {}, trip {})",
                w[0].0, w[0].1
            )));
        }
        Ok(())
    }
}
