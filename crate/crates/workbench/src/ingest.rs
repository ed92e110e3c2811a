//! Point-observation CSV (`vehicle_id,trip_id,x,y,t`) to trip rows.

use std::io::{Read, Write};

use mobdb_core::{Interp, Point, TGeomPoint, TInstant, TSequence, Temporal, TimestampTz};
use serde::{Deserialize, Serialize};

use crate::error::{Result, WorkbenchError};
use crate::table::TripRow;

#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub vehicle_id: i64,
    pub trip_id: i64,
    pub point: Point,
    pub t: TimestampTz,
}

#[derive(Debug, Deserialize, Serialize)]
struct Record {
    vehicle_id: i64,
    trip_id: i64,
    x: f64,
    y: f64,
    t: String,
}

pub fn read_observations(reader: impl Read) -> Result<Vec<Observation>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let mut out = Vec::new();
    for rec in rdr.deserialize::<Record>() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            WorkbenchError::Row {
                line,
                message: e.to_string(),
            }
        })?;
        // header is line 1
        let line = out.len() as u64 + 2;
        let t: TimestampTz = rec.t.parse().map_err(|e| WorkbenchError::Row {
            line,
            message: format!("bad timestamp '{}': {e}", rec.t),
        })?;
        if !rec.x.is_finite() || !rec.y.is_finite() {
            return Err(WorkbenchError::Row {
                line,
                message: "non-finite coordinate".into(),
            });
        }
        out.push(Observation {
            vehicle_id: rec.vehicle_id,
            trip_id: rec.trip_id,
            point: Point::new(rec.x, rec.y),
            t,
        });
    }
    Ok(out)
}

pub fn write_observations(writer: impl Write, obs: &[Observation]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for o in obs {
        w.serialize(Record {
            vehicle_id: o.vehicle_id,
            trip_id: o.trip_id,
            x: o.point.x,
            y: o.point.y,
            t: o.t.to_string(),
        })?;
    }
    w.flush()?;
    Ok(())
}

/// Groups observations by (vehicle, trip) into linear sequences. Input order
/// does not matter; a repeated timestamp within one trip is an error.
pub fn build_trips(mut obs: Vec<Observation>, srid: Option<i32>) -> Result<Vec<TripRow>> {
    obs.sort_by_key(|o| (o.vehicle_id, o.trip_id, o.t));
    let mut trips = Vec::new();
    let mut start = 0;
    while start < obs.len() {
        let key = (obs[start].vehicle_id, obs[start].trip_id);
        let end = obs[start..]
            .iter()
            .position(|o| (o.vehicle_id, o.trip_id) != key)
            .map_or(obs.len(), |n| start + n);
        let group = &obs[start..end];
        if let Some(w) = group.windows(2).find(|w| w[0].t == w[1].t) {
            return Err(WorkbenchError::Data(format!(
                "duplicate timestamp {} in vehicle {} trip {}",
                w[0].t, key.0, key.1
            )));
        }
        let instants: Vec<_> = group.iter().map(|o| TInstant::new(o.point, o.t)).collect();
        let temporal = if instants.len() == 1 {
            Temporal::Instant(instants.into_iter().next().expect("one instant"))
        } else {
            Temporal::Sequence(TSequence::continuous(instants, Interp::Linear)?)
        };
        trips.push(TripRow::new(key.0, key.1, TGeomPoint::new(temporal, srid)));
        start = end;
    }
    Ok(trips)
}

/// Inverse of [`build_trips`] for storage.
pub fn trips_to_observations(trips: &[TripRow]) -> Vec<Observation> {
    trips
        .iter()
        .flat_map(|row| {
            row.trip.temporal().instants().into_iter().map(move |i| Observation {
                vehicle_id: row.vehicle_id,
                trip_id: row.trip_id,
                point: i.value,
                t: i.t,
            })
        })
        .collect()
}
