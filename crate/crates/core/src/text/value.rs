//! Text form of base values.

use chrono::NaiveDate;

use super::cursor::Cursor;
use crate::error::{Error, ParseError, Result};
use crate::geom::Point;
use crate::time::{Date, TimestampTz, USECS_PER_SEC};

/// A base value with a canonical text form.
pub trait TextValue {
    /// Elements are double-quoted inside set literals.
    const QUOTE_IN_SET: bool = false;
    /// Values are double-quoted before `@` in temporal literals.
    const QUOTE_IN_TEMPORAL: bool = false;

    fn write_text(&self, out: &mut String);
}

pub(crate) trait ReadText: TextValue + Sized {
    fn read_text(cur: &mut Cursor<'_>) -> Result<Self>;

    /// Parses the contents of a double-quoted element starting at byte `base`.
    fn from_quoted(s: &str, base: usize) -> Result<Self> {
        let mut sub = Cursor::new(s);
        let v = Self::read_text(&mut sub).map_err(|e| shift(e, base))?;
        if !sub.at_end() {
            return Err(shift(sub.error("unexpected characters in quoted value").into(), base));
        }
        Ok(v)
    }
}

fn shift(e: Error, base: usize) -> Error {
    match e {
        Error::Parse(p) => Error::Parse(ParseError::new(p.offset + base, p.message)),
        other => other,
    }
}

/// Reads an element that may be double-quoted.
pub(crate) fn read_element<T: ReadText>(cur: &mut Cursor<'_>) -> Result<T> {
    if cur.peek() == Some('"') {
        let base = cur.pos() + 1;
        let s = read_quoted(cur)?;
        T::from_quoted(&s, base)
    } else {
        T::read_text(cur)
    }
}

pub(crate) fn read_quoted(cur: &mut Cursor<'_>) -> Result<String> {
    cur.expect('"')?;
    let mut s = String::new();
    loop {
        match cur.bump() {
            Some('"') => return Ok(s),
            Some('\\') => match cur.bump() {
                Some(c) => s.push(c),
                None => break,
            },
            Some(c) => s.push(c),
            None => break,
        }
    }
    Err(cur.error("unterminated quoted string").into())
}

pub(crate) fn write_quoted(s: &str, out: &mut String) {
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
}

/// Writes `v`, quoted when `quote` is set.
pub(crate) fn write_element<T: TextValue>(v: &T, quote: bool, out: &mut String) {
    if quote {
        let mut s = String::new();
        v.write_text(&mut s);
        write_quoted(&s, out);
    } else {
        v.write_text(out);
    }
}

impl TextValue for bool {
    fn write_text(&self, out: &mut String) {
        out.push(if *self { 't' } else { 'f' });
    }
}

impl ReadText for bool {
    fn read_text(cur: &mut Cursor<'_>) -> Result<bool> {
        for (kw, v) in [("true", true), ("false", false), ("t", true), ("f", false)] {
            if cur.eat_keyword(kw) {
                return Ok(v);
            }
        }
        Err(cur.error("expected a boolean").into())
    }
}

macro_rules! int_text {
    ($($t:ty),*) => {$(
        impl TextValue for $t {
            fn write_text(&self, out: &mut String) {
                out.push_str(&self.to_string());
            }
        }

        impl ReadText for $t {
            fn read_text(cur: &mut Cursor<'_>) -> Result<$t> {
                cur.skip_ws();
                let start = cur.pos();
                let tok = cur.number_token()?;
                tok.parse::<$t>().map_err(|_| {
                    cur.error_at(start, format!("invalid integer '{tok}'")).into()
                })
            }
        }
    )*};
}

int_text!(i32, i64);

impl TextValue for f64 {
    fn write_text(&self, out: &mut String) {
        out.push_str(&self.to_string());
    }
}

impl ReadText for f64 {
    fn read_text(cur: &mut Cursor<'_>) -> Result<f64> {
        cur.skip_ws();
        let start = cur.pos();
        let tok = cur.number_token()?;
        tok.parse::<f64>()
            .map_err(|_| cur.error_at(start, format!("invalid number '{tok}'")).into())
    }
}

impl TextValue for String {
    const QUOTE_IN_SET: bool = true;
    const QUOTE_IN_TEMPORAL: bool = true;

    fn write_text(&self, out: &mut String) {
        out.push_str(self);
    }
}

impl ReadText for String {
    /// Unquoted text runs up to the next delimiter.
    fn read_text(cur: &mut Cursor<'_>) -> Result<String> {
        cur.skip_ws();
        let s = cur.take_while(|c| !matches!(c, ',' | '{' | '}' | '[' | ']' | '(' | ')' | '@' | '"' | ';'));
        let s = s.trim_end();
        if s.is_empty() {
            return Err(cur.error("expected text").into());
        }
        Ok(s.to_string())
    }

    fn from_quoted(s: &str, _base: usize) -> Result<String> {
        Ok(s.to_string())
    }
}

fn read_date_fields(cur: &mut Cursor<'_>) -> Result<(NaiveDate, usize)> {
    cur.skip_ws();
    let start = cur.pos();
    let y = cur.digits(4)?;
    cur.expect('-')?;
    let m = cur.digits(2)?;
    cur.expect('-')?;
    let d = cur.digits(2)?;
    let date = NaiveDate::from_ymd_opt(y as i32, m, d)
        .ok_or_else(|| cur.error_at(start, format!("invalid date {y:04}-{m:02}-{d:02}")))?;
    Ok((date, start))
}

impl TextValue for Date {
    fn write_text(&self, out: &mut String) {
        out.push_str(&self.to_string());
    }
}

impl ReadText for Date {
    fn read_text(cur: &mut Cursor<'_>) -> Result<Date> {
        let (date, _) = read_date_fields(cur)?;
        let epoch = NaiveDate::from_ymd_opt(1970, 1, 1).expect("valid epoch");
        Ok(Date((date - epoch).num_days() as i32))
    }
}

impl TextValue for TimestampTz {
    const QUOTE_IN_SET: bool = true;

    fn write_text(&self, out: &mut String) {
        out.push_str(&self.to_string());
    }
}

impl ReadText for TimestampTz {
    /// `YYYY-MM-DD[( |T)HH:MM[:SS[.ffffff]]][Z|±HH[[:]MM]]`, normalized to UTC.
    fn read_text(cur: &mut Cursor<'_>) -> Result<TimestampTz> {
        let (date, start) = read_date_fields(cur)?;
        let (mut h, mut mi, mut s, mut micros) = (0, 0, 0, 0i64);
        let mut offset_secs = 0i64;
        let save = cur.pos();
        if matches!(cur.peek_raw(), Some(' ' | 'T' | 't')) {
            cur.bump();
            if cur.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
                h = cur.digits(2)?;
                if cur.bump() != Some(':') {
                    return Err(cur.error("expected ':' in time").into());
                }
                mi = cur.digits(2)?;
                if cur.peek_raw() == Some(':') {
                    cur.bump();
                    s = cur.digits(2)?;
                    if cur.peek_raw() == Some('.') {
                        cur.bump();
                        let frac_start = cur.pos();
                        let frac = cur.take_while(|c| c.is_ascii_digit());
                        if frac.is_empty() || frac.len() > 6 {
                            return Err(cur
                                .error_at(frac_start, "expected 1 to 6 fractional digits")
                                .into());
                        }
                        micros = format!("{frac:0<6}").parse().expect("digits");
                    }
                }
                match cur.peek_raw() {
                    Some('Z' | 'z') => {
                        cur.bump();
                    }
                    Some(sign @ ('+' | '-')) => {
                        cur.bump();
                        let oh = cur.digits(2)? as i64;
                        if cur.peek_raw() == Some(':') {
                            cur.bump();
                        }
                        let om = if cur.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
                            cur.digits(2)? as i64
                        } else {
                            0
                        };
                        offset_secs = (oh * 3600 + om * 60) * if sign == '-' { -1 } else { 1 };
                    }
                    _ => {}
                }
            } else {
                // Not a time part; leave the separator to the caller.
                cur.set_pos(save);
            }
        }
        let dt = date
            .and_hms_opt(h, mi, s)
            .ok_or_else(|| cur.error_at(start, format!("invalid time {h:02}:{mi:02}:{s:02}")))?;
        let local = dt.and_utc().timestamp() - offset_secs;
        Ok(TimestampTz(local * USECS_PER_SEC + micros))
    }
}

impl TextValue for Point {
    const QUOTE_IN_SET: bool = true;

    fn write_text(&self, out: &mut String) {
        out.push_str("POINT(");
        write_coord(*self, out);
        out.push(')');
    }
}

impl ReadText for Point {
    fn read_text(cur: &mut Cursor<'_>) -> Result<Point> {
        if !cur.eat_keyword("POINT") {
            return Err(cur.error("expected POINT").into());
        }
        cur.expect('(')?;
        let p = read_coord(cur)?;
        cur.expect(')')?;
        Ok(p)
    }
}

pub(crate) fn write_coord(p: Point, out: &mut String) {
    p.x.write_text(out);
    out.push(' ');
    p.y.write_text(out);
}

pub(crate) fn read_coord(cur: &mut Cursor<'_>) -> Result<Point> {
    let x = f64::read_text(cur)?;
    let y = f64::read_text(cur)?;
    if !(x.is_finite() && y.is_finite()) {
        return Err(cur.error("non-finite coordinate").into());
    }
    Ok(Point::new(x, y))
}
