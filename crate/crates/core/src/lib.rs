//! Moving-object data types: spans, sets, temporal values, temporal points,
//! bounding boxes, an R-tree over boxes and the literal text formats.

pub mod boxes;
pub mod error;
pub mod geom;
pub mod rtree;
pub mod set;
pub mod span;
pub mod temporal;
pub mod text;
pub mod tgeo;
pub mod time;

pub use boxes::{STBox, TBox, TBoxValue};
pub use error::{Error, ParseError, Result};
pub use geom::{Geometry, Point, Polygon, Rect, Shape};
pub use rtree::{RTree, RTreeConfig};
pub use set::{GeomSet, Set};
pub use span::{Span, SpanSet};
pub use temporal::{Interp, TInstant, TSequence, TSequenceSet, Temporal};
pub use text::{parse, serialize, serialize_ewkt, Literal, LiteralKind, LiteralType};
pub use tgeo::TGeomPoint;
pub use time::{Date, Interval, TimestampTz};
