//! Parsers for composite literals.

use super::cursor::Cursor;
use super::value::{read_coord, read_element, ReadText};
use crate::boxes::{STBox, TBox, TBoxValue};
use crate::error::{Error, Result};
use crate::geom::{Geometry, Point, Polygon, Rect, Shape};
use crate::set::{SetElement, Set};
use crate::span::{Span, SpanSet, SpanValue};
use crate::temporal::{Interp, TInstant, TSequence, TSequenceSet, Temporal, TemporalBase};
use crate::time::{Interval, TimestampTz, USECS_PER_DAY, USECS_PER_HOUR, USECS_PER_MINUTE, USECS_PER_SEC};

pub(crate) fn parse_set<T: ReadText + SetElement>(cur: &mut Cursor<'_>) -> Result<Set<T>> {
    cur.expect('{')?;
    if cur.eat('}') {
        return Err(Error::Empty("set literal"));
    }
    let mut elems = vec![read_element::<T>(cur)?];
    while cur.eat(',') {
        elems.push(read_element::<T>(cur)?);
    }
    cur.expect('}')?;
    Set::new(elems)
}

pub(crate) fn parse_span<T: ReadText + SpanValue>(cur: &mut Cursor<'_>) -> Result<Span<T>> {
    let lower_inc = match cur.peek() {
        Some('[') => true,
        Some('(') => false,
        _ => return Err(cur.error("expected '[' or '('").into()),
    };
    cur.bump();
    let lower = read_element::<T>(cur)?;
    cur.expect(',')?;
    let upper = read_element::<T>(cur)?;
    let upper_inc = match cur.peek() {
        Some(']') => true,
        Some(')') => false,
        _ => return Err(cur.error("expected ']' or ')'").into()),
    };
    cur.bump();
    Span::new(lower, upper, lower_inc, upper_inc)
}

pub(crate) fn parse_spanset<T: ReadText + SpanValue>(cur: &mut Cursor<'_>) -> Result<SpanSet<T>> {
    cur.expect('{')?;
    if cur.eat('}') {
        return Err(Error::Empty("span set literal"));
    }
    let mut spans = vec![parse_span(cur)?];
    while cur.eat(',') {
        spans.push(parse_span(cur)?);
    }
    cur.expect('}')?;
    SpanSet::new(spans)
}

pub(crate) fn parse_srid_prefix(cur: &mut Cursor<'_>) -> Result<Option<i32>> {
    if !cur.eat_prefix("SRID=") {
        return Ok(None);
    }
    let srid = i32::read_text(cur)?;
    cur.expect(';')?;
    Ok(Some(srid))
}

fn parse_interp_prefix(cur: &mut Cursor<'_>) -> Result<Option<Interp>> {
    if !cur.eat_prefix("Interp=") {
        return Ok(None);
    }
    let start = cur.pos();
    let name = cur.take_while(|c| c.is_ascii_alphabetic());
    let interp = Interp::from_name(name)
        .ok_or_else(|| cur.error_at(start, format!("unknown interpolation '{name}'")))?;
    cur.expect(';')?;
    Ok(Some(interp))
}

fn parse_instant<B: ReadText>(cur: &mut Cursor<'_>) -> Result<TInstant<B>> {
    let value = read_element::<B>(cur)?;
    cur.expect('@')?;
    let t = TimestampTz::read_text(cur)?;
    Ok(TInstant::new(value, t))
}

fn parse_instants<B: ReadText>(cur: &mut Cursor<'_>) -> Result<Vec<TInstant<B>>> {
    let mut out = vec![parse_instant(cur)?];
    while cur.eat(',') {
        out.push(parse_instant(cur)?);
    }
    Ok(out)
}

fn parse_sequence<B: ReadText + TemporalBase>(cur: &mut Cursor<'_>, interp: Interp) -> Result<TSequence<B>> {
    let lower_inc = match cur.peek() {
        Some('[') => true,
        Some('(') => false,
        _ => return Err(cur.error("expected '[' or '('").into()),
    };
    cur.bump();
    let instants = parse_instants(cur)?;
    let upper_inc = match cur.peek() {
        Some(']') => true,
        Some(')') => false,
        _ => return Err(cur.error("expected ']' or ')'").into()),
    };
    cur.bump();
    TSequence::new(instants, lower_inc, upper_inc, interp)
}

/// Temporal literal: instant, `{...}` discrete sequence, `[...]` continuous
/// sequence or `{[...], ...}` sequence set, with an optional `Interp=...;`
/// prefix or `;interp=...` suffix.
pub(crate) fn parse_temporal<B: ReadText + TemporalBase>(cur: &mut Cursor<'_>, default_interp: Interp) -> Result<Temporal<B>> {
    let prefix = parse_interp_prefix(cur)?;
    let body_start = cur.pos();
    // The suffix can only be read after the body, so parse the body twice when needed.
    let parsed = parse_temporal_body::<B>(cur, prefix.unwrap_or(default_interp));
    let mut suffix = None;
    if cur.eat(';') {
        if !cur.eat_prefix("interp=") {
            return Err(cur.error("expected 'interp='").into());
        }
        let start = cur.pos();
        let name = cur.take_while(|c| c.is_ascii_alphabetic());
        suffix = Some(
            Interp::from_name(name)
                .ok_or_else(|| cur.error_at(start, format!("unknown interpolation '{name}'")))?,
        );
    }
    match (prefix, suffix) {
        (_, None) => parsed,
        (Some(p), Some(s)) if p != s => Err(cur.error("conflicting interpolations").into()),
        (_, Some(s)) => {
            let end = cur.pos();
            cur.set_pos(body_start);
            let reparsed = parse_temporal_body::<B>(cur, s);
            cur.set_pos(end);
            reparsed
        }
    }
}

fn parse_temporal_body<B: ReadText + TemporalBase>(cur: &mut Cursor<'_>, interp: Interp) -> Result<Temporal<B>> {
    match cur.peek() {
        Some('{') => {
            cur.bump();
            if matches!(cur.peek(), Some('[' | '(')) {
                let mut seqs = vec![parse_sequence(cur, interp)?];
                while cur.eat(',') {
                    seqs.push(parse_sequence(cur, interp)?);
                }
                cur.expect('}')?;
                Ok(Temporal::SequenceSet(TSequenceSet::new(seqs)?))
            } else {
                let instants = parse_instants(cur)?;
                cur.expect('}')?;
                Ok(Temporal::Sequence(TSequence::discrete(instants)?))
            }
        }
        Some('[' | '(') => Ok(Temporal::Sequence(parse_sequence(cur, interp)?)),
        _ => Ok(Temporal::Instant(parse_instant(cur)?)),
    }
}

fn parse_rect(cur: &mut Cursor<'_>) -> Result<Rect> {
    cur.expect('(')?;
    cur.expect('(')?;
    let xmin = f64::read_text(cur)?;
    cur.expect(',')?;
    let ymin = f64::read_text(cur)?;
    cur.expect(')')?;
    cur.expect(',')?;
    cur.expect('(')?;
    let xmax = f64::read_text(cur)?;
    cur.expect(',')?;
    let ymax = f64::read_text(cur)?;
    cur.expect(')')?;
    cur.expect(')')?;
    Rect::new(xmin, ymin, xmax, ymax)
}

/// `[SRID=n;]STBOX X(...)`, `STBOX T(...)` or `STBOX XT(...)`.
pub(crate) fn parse_stbox(cur: &mut Cursor<'_>) -> Result<STBox> {
    let srid = parse_srid_prefix(cur)?;
    if !cur.eat_keyword("STBOX") {
        return Err(cur.error("expected STBOX").into());
    }
    if cur.eat_keyword("XT") {
        cur.expect('(')?;
        let rect = parse_rect(cur)?;
        cur.expect(',')?;
        let period = parse_span::<TimestampTz>(cur)?;
        cur.expect(')')?;
        Ok(STBox::xyt(rect, period, srid))
    } else if cur.eat_keyword("X") {
        let rect = parse_rect(cur)?;
        Ok(STBox::xy(rect, srid))
    } else if cur.eat_keyword("T") {
        cur.expect('(')?;
        let period = parse_span::<TimestampTz>(cur)?;
        cur.expect(')')?;
        if srid.is_some() {
            return Err(cur.error("SRID on a box without spatial dimensions").into());
        }
        Ok(STBox::t(period))
    } else {
        Err(cur.error("expected X, T or XT").into())
    }
}

/// `TBOXINT X(...)`, `TBOXFLOAT XT(...)`, `TBOX T(...)`.
pub(crate) fn parse_tbox(cur: &mut Cursor<'_>) -> Result<TBox> {
    let float = if cur.eat_keyword("TBOXINT") {
        Some(false)
    } else if cur.eat_keyword("TBOXFLOAT") {
        Some(true)
    } else if cur.eat_keyword("TBOX") {
        None
    } else {
        return Err(cur.error("expected TBOXINT, TBOXFLOAT or TBOX").into());
    };
    let value_span = |cur: &mut Cursor<'_>, float: bool| -> Result<TBoxValue> {
        Ok(if float {
            TBoxValue::Float(parse_span::<f64>(cur)?)
        } else {
            TBoxValue::Int(parse_span::<i32>(cur)?)
        })
    };
    match float {
        Some(float) if cur.eat_keyword("XT") => {
            cur.expect('(')?;
            let v = value_span(cur, float)?;
            cur.expect(',')?;
            let t = parse_span::<TimestampTz>(cur)?;
            cur.expect(')')?;
            TBox::new(Some(v), Some(t))
        }
        Some(float) if cur.eat_keyword("X") => {
            cur.expect('(')?;
            let v = value_span(cur, float)?;
            cur.expect(')')?;
            TBox::new(Some(v), None)
        }
        _ if cur.eat_keyword("T") => {
            cur.expect('(')?;
            let t = parse_span::<TimestampTz>(cur)?;
            cur.expect(')')?;
            TBox::new(None, Some(t))
        }
        _ => Err(cur.error("expected X, T or XT").into()),
    }
}

fn parse_coords(cur: &mut Cursor<'_>) -> Result<Vec<Point>> {
    cur.expect('(')?;
    let mut pts = vec![read_coord(cur)?];
    while cur.eat(',') {
        pts.push(read_coord(cur)?);
    }
    cur.expect(')')?;
    Ok(pts)
}

fn parse_polygon_body(cur: &mut Cursor<'_>) -> Result<Polygon> {
    cur.expect('(')?;
    let mut rings = vec![parse_coords(cur)?];
    while cur.eat(',') {
        rings.push(parse_coords(cur)?);
    }
    cur.expect(')')?;
    Polygon::new(rings)
}

fn parse_list<T>(cur: &mut Cursor<'_>, mut item: impl FnMut(&mut Cursor<'_>) -> Result<T>) -> Result<Vec<T>> {
    cur.expect('(')?;
    let mut out = vec![item(cur)?];
    while cur.eat(',') {
        out.push(item(cur)?);
    }
    cur.expect(')')?;
    Ok(out)
}

fn parse_shape(cur: &mut Cursor<'_>) -> Result<Shape> {
    if cur.eat_keyword("POINT") {
        cur.expect('(')?;
        let p = read_coord(cur)?;
        cur.expect(')')?;
        Ok(Shape::Point(p))
    } else if cur.eat_keyword("LINESTRING") {
        Ok(Shape::LineString(parse_coords(cur)?))
    } else if cur.eat_keyword("POLYGON") {
        Ok(Shape::Polygon(parse_polygon_body(cur)?))
    } else if cur.eat_keyword("MULTIPOINT") {
        let pts = parse_list(cur, |cur| {
            if cur.eat('(') {
                let p = read_coord(cur)?;
                cur.expect(')')?;
                Ok(Shape::Point(p))
            } else {
                Ok(Shape::Point(read_coord(cur)?))
            }
        })?;
        Ok(Shape::Collection(pts))
    } else if cur.eat_keyword("MULTILINESTRING") {
        Ok(Shape::Collection(parse_list(cur, |cur| Ok(Shape::LineString(parse_coords(cur)?)))?))
    } else if cur.eat_keyword("MULTIPOLYGON") {
        Ok(Shape::Collection(parse_list(cur, |cur| Ok(Shape::Polygon(parse_polygon_body(cur)?)))?))
    } else if cur.eat_keyword("GEOMETRYCOLLECTION") {
        Ok(Shape::Collection(parse_list(cur, parse_shape)?))
    } else {
        Err(cur.error("expected a geometry type").into())
    }
}

/// `[SRID=n;]` followed by WKT.
pub(crate) fn parse_geometry(cur: &mut Cursor<'_>) -> Result<Geometry> {
    let srid = parse_srid_prefix(cur)?;
    let shape = parse_shape(cur)?;
    Geometry::new(shape, srid)
}

/// PostgreSQL-style interval: `N days`, `N hours`, `HH:MM:SS`, or a mix.
pub(crate) fn parse_interval(cur: &mut Cursor<'_>) -> Result<Interval> {
    let mut total: i64 = 0;
    let mut parts = 0;
    loop {
        match cur.peek() {
            Some(c) if c.is_ascii_digit() || c == '-' || c == '+' || c == '.' => {}
            _ => break,
        }
        let start = cur.pos();
        let negative = cur.eat('-');
        if !negative {
            cur.eat('+');
        }
        let sign = if negative { -1 } else { 1 };
        let int = cur.take_while(|c| c.is_ascii_digit());
        if cur.peek_raw() == Some(':') {
            let h: i64 = int.parse().map_err(|_| cur.error_at(start, "expected hours"))?;
            cur.bump();
            let m = cur.digits(2)? as i64;
            let mut micros = (h * 3600 + m * 60) * USECS_PER_SEC;
            if cur.peek_raw() == Some(':') {
                cur.bump();
                micros += cur.digits(2)? as i64 * USECS_PER_SEC;
                if cur.peek_raw() == Some('.') {
                    cur.bump();
                    let frac = cur.take_while(|c| c.is_ascii_digit());
                    if frac.is_empty() || frac.len() > 6 {
                        return Err(cur.error("expected 1 to 6 fractional digits").into());
                    }
                    micros += format!("{frac:0<6}").parse::<i64>().expect("digits");
                }
            }
            total += sign * micros;
        } else {
            cur.set_pos(start);
            let tok = cur.number_token()?;
            let n: f64 = tok.parse().map_err(|_| cur.error_at(start, "invalid number"))?;
            cur.skip_ws();
            let unit_start = cur.pos();
            let unit = cur.take_while(|c| c.is_ascii_alphabetic()).to_ascii_lowercase();
            let scale = match unit.as_str() {
                "" | "s" | "sec" | "secs" | "second" | "seconds" => USECS_PER_SEC,
                "d" | "day" | "days" => USECS_PER_DAY,
                "h" | "hr" | "hrs" | "hour" | "hours" => USECS_PER_HOUR,
                "m" | "min" | "mins" | "minute" | "minutes" => USECS_PER_MINUTE,
                "ms" | "millisecond" | "milliseconds" => 1000,
                "us" | "microsecond" | "microseconds" => 1,
                "w" | "week" | "weeks" => 7 * USECS_PER_DAY,
                other => {
                    return Err(cur
                        .error_at(unit_start, format!("unsupported interval unit '{other}'"))
                        .into())
                }
            };
            total += (n * scale as f64).round() as i64;
        }
        parts += 1;
    }
    if parts == 0 {
        return Err(cur.error("expected an interval").into());
    }
    Ok(Interval::from_micros(total))
}
