//! RFC 7946 FeatureCollection output for query results.

use std::io::Write;

use mobdb_core::{Geometry, Point, Shape};
use serde_json::{json, Map, Value};

use crate::error::Result;
use crate::queries::QueryResult;

fn position(p: &Point) -> Value {
    json!([p.x, p.y])
}

fn line(points: &[Point]) -> Value {
    Value::Array(points.iter().map(position).collect())
}

fn shape_json(shape: &Shape) -> Value {
    match shape {
        Shape::Point(p) => json!({"type": "Point", "coordinates": position(p)}),
        Shape::LineString(ps) => json!({"type": "LineString", "coordinates": line(ps)}),
        Shape::Polygon(poly) => {
            // exterior counterclockwise, holes clockwise
            let rings: Vec<Value> = poly
                .rings()
                .iter()
                .enumerate()
                .map(|(i, ring)| {
                    let mut ring = ring.clone();
                    if (signed_area(&ring) < 0.0) == (i == 0) {
                        ring.reverse();
                    }
                    line(&ring)
                })
                .collect();
            json!({"type": "Polygon", "coordinates": rings})
        }
        Shape::Collection(parts) => {
            json!({"type": "GeometryCollection", "geometries": parts.iter().map(shape_json).collect::<Vec<_>>()})
        }
    }
}

fn signed_area(ring: &[Point]) -> f64 {
    ring.windows(2).map(|w| w[0].x * w[1].y - w[1].x * w[0].y).sum::<f64>() / 2.0
}

pub fn geometry_json(g: &Geometry) -> Value {
    shape_json(g.shape())
}

/// One feature per row. The row's geometry column becomes the feature
/// geometry (null for queries without one); every column is a property.
pub fn feature_collection(result: &QueryResult) -> Value {
    let geoms = result.geometries();
    let (headers, rows) = result.table();
    let features: Vec<Value> = rows
        .into_iter()
        .zip(geoms)
        .map(|(row, g)| {
            let props: Map<String, Value> = headers
                .iter()
                .zip(row)
                .map(|(h, v)| (h.to_string(), Value::String(v)))
                .collect();
            json!({
                "type": "Feature",
                "geometry": g.as_ref().map_or(Value::Null, geometry_json),
                "properties": props,
            })
        })
        .collect();
    json!({"type": "FeatureCollection", "features": features})
}

pub fn write_geojson(writer: impl Write, result: &QueryResult) -> Result<()> {
    serde_json::to_writer_pretty(writer, &feature_collection(result))?;
    Ok(())
}
