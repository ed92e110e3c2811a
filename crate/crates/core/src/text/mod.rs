//! Literal text formats: parsing into typed values and canonical output.
//!
//! See `docs/literal-grammar.md` for the grammar.

mod cursor;
mod format;
mod parse;
mod value;

use std::fmt;

use cursor::Cursor;
pub use value::TextValue;
use value::ReadText;

use crate::boxes::{STBox, TBox};
use crate::error::{Error, Result};
use crate::geom::{Geometry, Point};
use crate::set::{GeomSet, Set};
use crate::span::{Span, SpanSet};
use crate::temporal::{Interp, Temporal, TemporalBase};
use crate::tgeo::{GeoFlavor, TGeomPoint};
use crate::time::{Date, Interval, TimestampTz};

/// Coarse literal kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LiteralKind {
    Set,
    Span,
    SpanSet,
    Temporal,
    STBox,
    TBox,
    Geometry,
    Interval,
    TimestampTz,
    Scalar,
}

impl LiteralKind {
    pub fn name(self) -> &'static str {
        match self {
            LiteralKind::Set => "set",
            LiteralKind::Span => "span",
            LiteralKind::SpanSet => "spanset",
            LiteralKind::Temporal => "temporal",
            LiteralKind::STBox => "stbox",
            LiteralKind::TBox => "tbox",
            LiteralKind::Geometry => "geometry",
            LiteralKind::Interval => "interval",
            LiteralKind::TimestampTz => "timestamptz",
            LiteralKind::Scalar => "scalar",
        }
    }
}

macro_rules! literal_types {
    ($($variant:ident => $tag:literal, $kind:ident $(| $alias:literal)*;)*) => {
        /// SQL type of a literal.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum LiteralType {
            $($variant,)*
        }

        impl LiteralType {
            pub const ALL: &'static [LiteralType] = &[$(LiteralType::$variant,)*];

            pub fn tag(self) -> &'static str {
                match self {
                    $(LiteralType::$variant => $tag,)*
                }
            }

            pub fn kind(self) -> LiteralKind {
                match self {
                    $(LiteralType::$variant => LiteralKind::$kind,)*
                }
            }

            /// Case-insensitive lookup by type name.
            pub fn from_tag(tag: &str) -> Option<LiteralType> {
                let tag = tag.trim().to_ascii_lowercase();
                match tag.as_str() {
                    $($tag $(| $alias)* => Some(LiteralType::$variant),)*
                    _ => None,
                }
            }
        }
    };
}

literal_types! {
    IntSet => "intset", Set;
    BigIntSet => "bigintset", Set;
    FloatSet => "floatset", Set;
    TextSet => "textset", Set;
    DateSet => "dateset", Set;
    TstzSet => "tstzset", Set;
    GeomSet => "geomset", Set;
    IntSpan => "intspan", Span;
    BigIntSpan => "bigintspan", Span;
    FloatSpan => "floatspan", Span;
    DateSpan => "datespan", Span;
    TstzSpan => "tstzspan", Span;
    IntSpanSet => "intspanset", SpanSet;
    BigIntSpanSet => "bigintspanset", SpanSet;
    FloatSpanSet => "floatspanset", SpanSet;
    DateSpanSet => "datespanset", SpanSet;
    TstzSpanSet => "tstzspanset", SpanSet;
    TBool => "tbool", Temporal;
    TInt => "tint", Temporal;
    TFloat => "tfloat", Temporal;
    TText => "ttext", Temporal;
    TGeomPoint => "tgeompoint", Temporal;
    TGeometry => "tgeometry", Temporal;
    STBox => "stbox", STBox;
    TBox => "tbox", TBox;
    Geometry => "geometry", Geometry;
    Interval => "interval", Interval;
    TimestampTz => "timestamptz", TimestampTz | "timestamp";
    Bool => "boolean", Scalar | "bool";
    Int => "integer", Scalar | "int" | "int4";
    BigInt => "bigint", Scalar | "int8";
    Float => "float", Scalar | "double" | "float8" | "decimal" | "numeric";
    Text => "text", Scalar | "varchar";
    Date => "date", Scalar;
}

#[derive(Debug, Clone, PartialEq)]
pub enum SetValue {
    Int(Set<i32>),
    BigInt(Set<i64>),
    Float(Set<f64>),
    Text(Set<String>),
    Date(Set<Date>),
    Tstz(Set<TimestampTz>),
    Geom(GeomSet),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpanValue {
    Int(Span<i32>),
    BigInt(Span<i64>),
    Float(Span<f64>),
    Date(Span<Date>),
    Tstz(Span<TimestampTz>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpanSetValue {
    Int(SpanSet<i32>),
    BigInt(SpanSet<i64>),
    Float(SpanSet<f64>),
    Date(SpanSet<Date>),
    Tstz(SpanSet<TimestampTz>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum TemporalValue {
    Bool(Temporal<bool>),
    Int(Temporal<i32>),
    Float(Temporal<f64>),
    Text(Temporal<String>),
    /// Both `tgeompoint` and `tgeometry`; the flavor tells them apart.
    Geo(TGeomPoint),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Bool(bool),
    Int(i32),
    BigInt(i64),
    Float(f64),
    Text(String),
    Date(Date),
}

/// A parsed literal of any supported type.
#[derive(Debug, Clone, PartialEq)]
pub enum Literal {
    Set(SetValue),
    Span(SpanValue),
    SpanSet(SpanSetValue),
    Temporal(TemporalValue),
    STBox(STBox),
    TBox(TBox),
    Geometry(Geometry),
    Interval(Interval),
    TimestampTz(TimestampTz),
    Scalar(Scalar),
}

impl Literal {
    pub fn kind(&self) -> LiteralKind {
        self.literal_type().kind()
    }

    pub fn literal_type(&self) -> LiteralType {
        use LiteralType as L;
        match self {
            Literal::Set(s) => match s {
                SetValue::Int(_) => L::IntSet,
                SetValue::BigInt(_) => L::BigIntSet,
                SetValue::Float(_) => L::FloatSet,
                SetValue::Text(_) => L::TextSet,
                SetValue::Date(_) => L::DateSet,
                SetValue::Tstz(_) => L::TstzSet,
                SetValue::Geom(_) => L::GeomSet,
            },
            Literal::Span(s) => match s {
                SpanValue::Int(_) => L::IntSpan,
                SpanValue::BigInt(_) => L::BigIntSpan,
                SpanValue::Float(_) => L::FloatSpan,
                SpanValue::Date(_) => L::DateSpan,
                SpanValue::Tstz(_) => L::TstzSpan,
            },
            Literal::SpanSet(s) => match s {
                SpanSetValue::Int(_) => L::IntSpanSet,
                SpanSetValue::BigInt(_) => L::BigIntSpanSet,
                SpanSetValue::Float(_) => L::FloatSpanSet,
                SpanSetValue::Date(_) => L::DateSpanSet,
                SpanSetValue::Tstz(_) => L::TstzSpanSet,
            },
            Literal::Temporal(t) => match t {
                TemporalValue::Bool(_) => L::TBool,
                TemporalValue::Int(_) => L::TInt,
                TemporalValue::Float(_) => L::TFloat,
                TemporalValue::Text(_) => L::TText,
                TemporalValue::Geo(g) => match g.flavor() {
                    GeoFlavor::GeomPoint => L::TGeomPoint,
                    GeoFlavor::Geometry => L::TGeometry,
                },
            },
            Literal::STBox(_) => L::STBox,
            Literal::TBox(_) => L::TBox,
            Literal::Geometry(_) => L::Geometry,
            Literal::Interval(_) => L::Interval,
            Literal::TimestampTz(_) => L::TimestampTz,
            Literal::Scalar(s) => match s {
                Scalar::Bool(_) => L::Bool,
                Scalar::Int(_) => L::Int,
                Scalar::BigInt(_) => L::BigInt,
                Scalar::Float(_) => L::Float,
                Scalar::Text(_) => L::Text,
                Scalar::Date(_) => L::Date,
            },
        }
    }
}

/// Guesses the kind of a literal from its shape, when the shape is decisive.
fn sniff(text: &str) -> Option<LiteralKind> {
    let upper = text.trim_start().to_ascii_uppercase();
    let body = match upper.strip_prefix("SRID=") {
        Some(rest) => rest.split_once(';').map_or(rest, |(_, b)| b).trim_start(),
        None => upper.as_str(),
    };
    let body = body.strip_prefix("INTERP=").map_or(body, |rest| {
        rest.split_once(';').map_or(rest, |(_, b)| b).trim_start()
    });
    if body.starts_with("STBOX") {
        return Some(LiteralKind::STBox);
    }
    if body.starts_with("TBOX") {
        return Some(LiteralKind::TBox);
    }
    let geometry_words = [
        "POINT", "LINESTRING", "POLYGON", "MULTIPOINT", "MULTILINESTRING", "MULTIPOLYGON",
        "GEOMETRYCOLLECTION",
    ];
    let is_geometry = geometry_words.iter().any(|w| body.starts_with(w));
    let outside_quotes: String = {
        let mut in_quote = false;
        let mut escaped = false;
        body.chars()
            .filter(|&c| {
                if escaped {
                    escaped = false;
                    return false;
                }
                if in_quote && c == '\\' {
                    escaped = true;
                    return false;
                }
                if c == '"' {
                    in_quote = !in_quote;
                    return false;
                }
                !in_quote
            })
            .collect()
    };
    if outside_quotes.contains('@') {
        return Some(LiteralKind::Temporal);
    }
    if is_geometry {
        return Some(LiteralKind::Geometry);
    }
    let trimmed = outside_quotes.trim_start();
    if let Some(rest) = trimmed.strip_prefix('{') {
        return Some(if rest.trim_start().starts_with(['[', '(']) {
            LiteralKind::SpanSet
        } else {
            LiteralKind::Set
        });
    }
    if trimmed.starts_with(['[', '(']) {
        return Some(LiteralKind::Span);
    }
    None
}

fn parse_text<T: ReadText>(cur: &mut Cursor<'_>) -> Result<T> {
    T::read_text(cur)
}

/// Parses `text` as a literal of type `ty`.
pub fn parse(text: &str, ty: LiteralType) -> Result<Literal> {
    // Any string is a valid text scalar.
    let sniffed = if ty == LiteralType::Text { None } else { sniff(text) };
    if let Some(found) = sniffed {
        let expected = ty.kind();
        let compatible = found == expected
            // `{v@t}` is a set of instants only to the sniffer.
            || (expected == LiteralKind::Temporal && found == LiteralKind::Set);
        if !compatible {
            return Err(Error::KindMismatch {
                expected: expected.name(),
                found: found.name(),
            });
        }
    }
    let mut cur = Cursor::new(text);
    let lit = parse_typed(&mut cur, ty)?;
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input").into());
    }
    Ok(lit)
}

fn parse_typed(cur: &mut Cursor<'_>, ty: LiteralType) -> Result<Literal> {
    use parse::*;
    use LiteralType as L;
    Ok(match ty {
        L::IntSet => Literal::Set(SetValue::Int(parse_set(cur)?)),
        L::BigIntSet => Literal::Set(SetValue::BigInt(parse_set(cur)?)),
        L::FloatSet => Literal::Set(SetValue::Float(parse_set(cur)?)),
        L::TextSet => Literal::Set(SetValue::Text(parse_set(cur)?)),
        L::DateSet => Literal::Set(SetValue::Date(parse_set(cur)?)),
        L::TstzSet => Literal::Set(SetValue::Tstz(parse_set(cur)?)),
        L::GeomSet => {
            let srid = parse_srid_prefix(cur)?;
            Literal::Set(SetValue::Geom(GeomSet::new(parse_set::<Point>(cur)?, srid)))
        }
        L::IntSpan => Literal::Span(SpanValue::Int(parse_span(cur)?)),
        L::BigIntSpan => Literal::Span(SpanValue::BigInt(parse_span(cur)?)),
        L::FloatSpan => Literal::Span(SpanValue::Float(parse_span(cur)?)),
        L::DateSpan => Literal::Span(SpanValue::Date(parse_span(cur)?)),
        L::TstzSpan => Literal::Span(SpanValue::Tstz(parse_span(cur)?)),
        L::IntSpanSet => Literal::SpanSet(SpanSetValue::Int(parse_spanset(cur)?)),
        L::BigIntSpanSet => Literal::SpanSet(SpanSetValue::BigInt(parse_spanset(cur)?)),
        L::FloatSpanSet => Literal::SpanSet(SpanSetValue::Float(parse_spanset(cur)?)),
        L::DateSpanSet => Literal::SpanSet(SpanSetValue::Date(parse_spanset(cur)?)),
        L::TstzSpanSet => Literal::SpanSet(SpanSetValue::Tstz(parse_spanset(cur)?)),
        L::TBool => Literal::Temporal(TemporalValue::Bool(parse_temporal(cur, bool::DEFAULT_INTERP)?)),
        L::TInt => Literal::Temporal(TemporalValue::Int(parse_temporal(cur, i32::DEFAULT_INTERP)?)),
        L::TFloat => Literal::Temporal(TemporalValue::Float(parse_temporal(cur, f64::DEFAULT_INTERP)?)),
        L::TText => Literal::Temporal(TemporalValue::Text(parse_temporal(cur, String::DEFAULT_INTERP)?)),
        L::TGeomPoint | L::TGeometry => {
            let flavor = if ty == L::TGeomPoint {
                GeoFlavor::GeomPoint
            } else {
                GeoFlavor::Geometry
            };
            let srid = parse_srid_prefix(cur)?;
            let t = parse_temporal::<Point>(cur, flavor.default_interp())?;
            Literal::Temporal(TemporalValue::Geo(TGeomPoint::new(t, srid).with_flavor(flavor)))
        }
        L::STBox => Literal::STBox(parse_stbox(cur)?),
        L::TBox => Literal::TBox(parse_tbox(cur)?),
        L::Geometry => Literal::Geometry(parse_geometry(cur)?),
        L::Interval => Literal::Interval(parse_interval(cur)?),
        L::TimestampTz => Literal::TimestampTz(parse_text(cur)?),
        L::Bool => Literal::Scalar(Scalar::Bool(parse_text(cur)?)),
        L::Int => Literal::Scalar(Scalar::Int(parse_text(cur)?)),
        L::BigInt => Literal::Scalar(Scalar::BigInt(parse_text(cur)?)),
        L::Float => Literal::Scalar(Scalar::Float(parse_text(cur)?)),
        L::Text => {
            let s = cur.rest().trim().to_string();
            cur.set_pos(cur.pos() + cur.rest().len());
            Literal::Scalar(Scalar::Text(s))
        }
        L::Date => Literal::Scalar(Scalar::Date(parse_text(cur)?)),
    })
}

/// Canonical text (`asText`): SRIDs of geometries and temporal points are omitted.
pub fn serialize(lit: &Literal) -> String {
    lit.to_string()
}

/// Like [`serialize`], with an `SRID=n;` prefix when an SRID is set.
pub fn serialize_ewkt(lit: &Literal) -> String {
    match lit {
        Literal::Geometry(g) => g.to_ewkt(),
        Literal::Set(SetValue::Geom(s)) => s.to_ewkt(),
        Literal::Temporal(TemporalValue::Geo(t)) => t.to_ewkt(),
        other => other.to_string(),
    }
}

fn write_temporal_default<B: TemporalBase + TextValue>(t: &Temporal<B>) -> String {
    let mut s = String::new();
    format::write_temporal(t, B::DEFAULT_INTERP, &mut s);
    s
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Set(s) => match s {
                SetValue::Int(v) => v.fmt(f),
                SetValue::BigInt(v) => v.fmt(f),
                SetValue::Float(v) => v.fmt(f),
                SetValue::Text(v) => v.fmt(f),
                SetValue::Date(v) => v.fmt(f),
                SetValue::Tstz(v) => v.fmt(f),
                SetValue::Geom(v) => v.fmt(f),
            },
            Literal::Span(s) => match s {
                SpanValue::Int(v) => v.fmt(f),
                SpanValue::BigInt(v) => v.fmt(f),
                SpanValue::Float(v) => v.fmt(f),
                SpanValue::Date(v) => v.fmt(f),
                SpanValue::Tstz(v) => v.fmt(f),
            },
            Literal::SpanSet(s) => match s {
                SpanSetValue::Int(v) => v.fmt(f),
                SpanSetValue::BigInt(v) => v.fmt(f),
                SpanSetValue::Float(v) => v.fmt(f),
                SpanSetValue::Date(v) => v.fmt(f),
                SpanSetValue::Tstz(v) => v.fmt(f),
            },
            Literal::Temporal(t) => match t {
                TemporalValue::Bool(v) => f.write_str(&write_temporal_default(v)),
                TemporalValue::Int(v) => f.write_str(&write_temporal_default(v)),
                TemporalValue::Float(v) => f.write_str(&write_temporal_default(v)),
                TemporalValue::Text(v) => f.write_str(&write_temporal_default(v)),
                TemporalValue::Geo(v) => v.fmt(f),
            },
            Literal::STBox(b) => b.fmt(f),
            Literal::TBox(b) => b.fmt(f),
            Literal::Geometry(g) => g.fmt(f),
            Literal::Interval(i) => i.fmt(f),
            Literal::TimestampTz(t) => t.fmt(f),
            Literal::Scalar(s) => match s {
                Scalar::Bool(b) => f.write_str(if *b { "true" } else { "false" }),
                Scalar::Int(v) => v.fmt(f),
                Scalar::BigInt(v) => v.fmt(f),
                Scalar::Float(v) => v.fmt(f),
                Scalar::Text(v) => f.write_str(v),
                Scalar::Date(v) => v.fmt(f),
            },
        }
    }
}

/// Interpolation named in a literal suffix or function argument.
pub fn parse_interp(name: &str) -> Result<Interp> {
    Interp::from_name(name.trim())
        .ok_or_else(|| Error::InvalidInterpolation(format!("unknown interpolation '{name}'")))
}


macro_rules! from_str_via_parse {
    ($($t:ty => $ty:ident, $pat:pat => $out:expr;)*) => {$(
        impl std::str::FromStr for $t {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match parse(s, LiteralType::$ty)? {
                    $pat => Ok($out),
                    _ => unreachable!("parse returns the requested type"),
                }
            }
        }
    )*};
}

from_str_via_parse! {
    TimestampTz => TimestampTz, Literal::TimestampTz(t) => t;
    Interval => Interval, Literal::Interval(i) => i;
    Geometry => Geometry, Literal::Geometry(g) => g;
    STBox => STBox, Literal::STBox(b) => b;
    TBox => TBox, Literal::TBox(b) => b;
    TGeomPoint => TGeomPoint, Literal::Temporal(TemporalValue::Geo(t)) => t;
}
