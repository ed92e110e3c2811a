//! Canonical text output.

use std::fmt;

use super::value::{write_coord, write_element, TextValue};
use crate::boxes::{STBox, TBox, TBoxValue};
use crate::geom::{Geometry, Point, Shape};
use crate::set::{GeomSet, Set, SetElement};
use crate::span::{Span, SpanSet, SpanValue};
use crate::temporal::{Interp, TInstant, TSequence, Temporal, TemporalBase};
use crate::tgeo::TGeomPoint;
use crate::time::TimestampTz;

pub(crate) fn write_span<T: SpanValue + TextValue>(s: &Span<T>, out: &mut String) {
    out.push(if s.lower_inc() { '[' } else { '(' });
    s.lower().write_text(out);
    out.push_str(", ");
    let (upper, upper_inc) = s.display_upper();
    upper.write_text(out);
    out.push(if upper_inc { ']' } else { ')' });
}

impl<T: SpanValue + TextValue> fmt::Display for Span<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_span(self, &mut s);
        f.write_str(&s)
    }
}

impl<T: SpanValue + TextValue> fmt::Display for SpanSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::from("{");
        for (i, span) in self.spans().iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            write_span(span, &mut s);
        }
        s.push('}');
        f.write_str(&s)
    }
}

fn write_set<T: SetElement + TextValue>(set: &Set<T>, out: &mut String) {
    out.push('{');
    for (i, e) in set.elements().iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_element(e, T::QUOTE_IN_SET, out);
    }
    out.push('}');
}

impl<T: SetElement + TextValue> fmt::Display for Set<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_set(self, &mut s);
        f.write_str(&s)
    }
}

impl fmt::Display for GeomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.points.fmt(f)
    }
}

impl GeomSet {
    pub fn to_ewkt(&self) -> String {
        with_srid(self.srid, self.to_string())
    }
}

fn with_srid(srid: Option<i32>, body: String) -> String {
    match srid {
        Some(srid) => format!("SRID={srid};{body}"),
        None => body,
    }
}

fn write_instant<B: TextValue>(inst: &TInstant<B>, out: &mut String) {
    write_element(&inst.value, B::QUOTE_IN_TEMPORAL, out);
    out.push('@');
    inst.t.write_text(out);
}

fn write_sequence_body<B: TextValue + TemporalBase>(seq: &TSequence<B>, out: &mut String) {
    let discrete = seq.interp() == Interp::Discrete;
    out.push(if discrete {
        '{'
    } else if seq.lower_inc() {
        '['
    } else {
        '('
    });
    for (i, inst) in seq.instants().iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_instant(inst, out);
    }
    out.push(if discrete {
        '}'
    } else if seq.upper_inc() {
        ']'
    } else {
        ')'
    });
}

/// Writes a temporal value, prefixing `Interp=...;` when its interpolation
/// differs from `default_interp`.
pub(crate) fn write_temporal<B: TemporalBase + TextValue>(t: &Temporal<B>, default_interp: Interp, out: &mut String) {
    let interp = t.interp();
    if interp != Interp::Discrete && interp != default_interp {
        out.push_str("Interp=");
        out.push_str(match interp {
            Interp::Step => "Step",
            Interp::Linear => "Linear",
            Interp::Discrete => unreachable!(),
        });
        out.push(';');
    }
    match t {
        Temporal::Instant(inst) => write_instant(inst, out),
        Temporal::Sequence(seq) => write_sequence_body(seq, out),
        Temporal::SequenceSet(ss) => {
            out.push('{');
            for (i, seq) in ss.sequences().iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_sequence_body(seq, out);
            }
            out.push('}');
        }
    }
}

impl<B: TemporalBase + TextValue> fmt::Display for Temporal<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_temporal(self, B::DEFAULT_INTERP, &mut s);
        f.write_str(&s)
    }
}

impl fmt::Display for TGeomPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_temporal(self.temporal(), self.flavor().default_interp(), &mut s);
        f.write_str(&s)
    }
}

impl TGeomPoint {
    pub fn to_ewkt(&self) -> String {
        with_srid(self.srid(), self.to_string())
    }
}

fn write_xy(x: f64, y: f64, out: &mut String) {
    out.push('(');
    x.write_text(out);
    out.push(',');
    y.write_text(out);
    out.push(')');
}

impl fmt::Display for STBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        if let (Some(srid), true) = (self.srid(), self.has_xy()) {
            s.push_str(&format!("SRID={srid};"));
        }
        let rect = |s: &mut String| {
            if let Some(r) = self.rect() {
                s.push('(');
                write_xy(r.xmin, r.ymin, s);
                s.push(',');
                write_xy(r.xmax, r.ymax, s);
                s.push(')');
            }
        };
        match (self.rect(), self.period()) {
            (Some(_), Some(p)) => {
                s.push_str("STBOX XT(");
                rect(&mut s);
                s.push(',');
                write_span(p, &mut s);
                s.push(')');
            }
            (Some(_), None) => {
                s.push_str("STBOX X");
                rect(&mut s);
            }
            (None, Some(p)) => {
                s.push_str("STBOX T(");
                write_span(p, &mut s);
                s.push(')');
            }
            (None, None) => unreachable!("boxes have at least one dimension"),
        }
        f.write_str(&s)
    }
}

impl fmt::Display for TBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        let tag = match self.value() {
            Some(TBoxValue::Int(_)) => "TBOXINT",
            Some(TBoxValue::Float(_)) => "TBOXFLOAT",
            None => "TBOX",
        };
        s.push_str(tag);
        s.push_str(match (self.value().is_some(), self.period().is_some()) {
            (true, true) => " XT(",
            (true, false) => " X(",
            _ => " T(",
        });
        match self.value() {
            Some(TBoxValue::Int(v)) => write_span(v, &mut s),
            Some(TBoxValue::Float(v)) => write_span(v, &mut s),
            None => {}
        }
        if let Some(p) = self.period() {
            if self.value().is_some() {
                s.push(',');
            }
            write_span::<TimestampTz>(p, &mut s);
        }
        s.push(')');
        f.write_str(&s)
    }
}

fn write_points(points: &[Point], out: &mut String) {
    out.push('(');
    for (i, p) in points.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_coord(*p, out);
    }
    out.push(')');
}

fn write_shape(shape: &Shape, out: &mut String) {
    out.push_str(shape.type_name());
    match shape {
        Shape::Point(p) => {
            out.push('(');
            write_coord(*p, out);
            out.push(')');
        }
        Shape::LineString(points) => write_points(points, out),
        Shape::Polygon(poly) => {
            out.push('(');
            for (i, ring) in poly.rings().iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_points(ring, out);
            }
            out.push(')');
        }
        Shape::Collection(items) => {
            out.push('(');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_shape(item, out);
            }
            out.push(')');
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_shape(self.shape(), &mut s);
        f.write_str(&s)
    }
}

impl Geometry {
    pub fn to_ewkt(&self) -> String {
        with_srid(self.srid(), self.to_string())
    }
}
