//! A small expression language over the library's functions:
//!
//! ```text
//! expr    := unary { ('&&' | '@>') unary }
//! unary   := primary { '::' tag }
//! primary := name '(' [expr {',' expr}] ')' | tag string | string | number
//!          | true | false | null | '(' expr ')'
//! ```
//!
//! An optional leading `SELECT` and trailing `;` are ignored. Untyped strings
//! take the type their position calls for.

use std::fmt;

use mobdb_core::geom;
use mobdb_core::text::{Scalar, SetValue, SpanSetValue, SpanValue, TemporalValue};
use mobdb_core::tgeo::{self, geometry_to_stbox, GeoFlavor};
use mobdb_core::{
    parse, serialize, serialize_ewkt, Error, Geometry, Interval, Literal, LiteralType, STBox, Set, Span,
    SpanSet, TGeomPoint, Temporal, TimestampTz,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown function {0}")]
    UnknownFunction(String),
    #[error("{function}: expected {expected} arguments, got {got}")]
    Arity {
        function: String,
        expected: &'static str,
        got: usize,
    },
    #[error("{0}")]
    Type(String),
    #[error(transparent)]
    Core(#[from] Error),
}

type EResult<T> = std::result::Result<T, EvalError>;

fn type_error<T>(msg: impl Into<String>) -> EResult<T> {
    Err(EvalError::Type(msg.into()))
}

/// Result of evaluating an expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Lit(Literal),
    /// A quoted string whose type is not known yet; `offset` locates its text.
    Untyped { text: String, offset: usize },
    Number(f64),
    Bool(bool),
    Null,
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Lit(l) => f.write_str(&serialize(l)),
            Value::Untyped { text, .. } => f.write_str(text),
            Value::Number(n) => n.fmt(f),
            Value::Bool(b) => b.fmt(f),
            Value::Null => f.write_str("NULL"),
        }
    }
}

/// Evaluates `expr` and renders the result as text.
pub fn eval_expression(expr: &str) -> EResult<String> {
    Ok(evaluate(expr)?.to_string())
}

pub fn evaluate(expr: &str) -> EResult<Value> {
    let mut p = Parser::new(expr);
    p.skip_ws();
    if p.peek_word().is_some_and(|w| w.eq_ignore_ascii_case("select")) {
        p.word();
    }
    let v = p.expr()?;
    p.skip_ws();
    if p.eat(";") {
        p.skip_ws();
    }
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn error(&self, message: impl Into<String>) -> EvalError {
        EvalError::Syntax {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> EResult<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{token}'")))
        }
    }

    fn peek_word(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        let word = &rest[..len];
        (!word.is_empty() && !word.starts_with(|c: char| c.is_ascii_digit())).then_some(word)
    }

    fn word(&mut self) -> Option<&'a str> {
        let w = self.peek_word()?;
        self.pos += w.len();
        Some(w)
    }

    /// A single-quoted string; `''` stands for one quote.
    fn string(&mut self) -> EResult<Value> {
        self.skip_ws();
        let start = self.pos;
        if !self.eat("'") {
            return Err(self.error("expected a quoted string"));
        }
        let offset = self.pos;
        let mut text = String::new();
        loop {
            let Some(c) = self.rest().chars().next() else {
                self.pos = start;
                return Err(self.error("unterminated string"));
            };
            self.pos += c.len_utf8();
            if c == '\'' {
                if self.rest().starts_with('\'') {
                    self.pos += 1;
                    text.push('\'');
                } else {
                    break;
                }
            } else {
                text.push(c);
            }
        }
        Ok(Value::Untyped { text, offset })
    }

    fn expr(&mut self) -> EResult<Value> {
        let mut lhs = self.unary()?;
        loop {
            let op_pos = {
                self.skip_ws();
                self.pos
            };
            let op = if self.eat("&&") {
                "&&"
            } else if self.eat("@>") {
                "@>"
            } else {
                break;
            };
            let rhs = self.unary()?;
            lhs = binary(op, lhs, rhs).map_err(|e| match e {
                EvalError::Type(m) => EvalError::Type(format!("{m} (operator at offset {op_pos})")),
                other => other,
            })?;
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> EResult<Value> {
        let mut v = self.primary()?;
        while self.eat("::") {
            let tag_pos = self.pos;
            let tag = self.word().ok_or_else(|| self.error("expected a type name after '::'"))?;
            v = cast(v, tag).map_err(|e| match e {
                EvalError::Type(m) => EvalError::Syntax {
                    offset: tag_pos,
                    message: m,
                },
                other => other,
            })?;
        }
        Ok(v)
    }

    fn primary(&mut self) -> EResult<Value> {
        self.skip_ws();
        let rest = self.rest();
        if rest.starts_with('\'') {
            return self.string();
        }
        if self.eat("(") {
            let v = self.expr()?;
            self.expect(")")?;
            return Ok(v);
        }
        if rest.starts_with(|c: char| c.is_ascii_digit() || c == '-' || c == '+' || c == '.') {
            let len = rest
                .char_indices()
                .skip(1)
                .find(|&(i, c)| {
                    !(c.is_ascii_digit()
                        || c == '.'
                        || ((c == '-' || c == '+') && rest[..i].ends_with(['e', 'E']))
                        || c == 'e'
                        || c == 'E')
                })
                .map_or(rest.len(), |(i, _)| i);
            let token = &rest[..len];
            let n: f64 = token.parse().map_err(|_| self.error(format!("bad number '{token}'")))?;
            self.pos += len;
            return Ok(Value::Number(n));
        }
        let start = self.pos;
        let Some(name) = self.word() else {
            return Err(self.error("expected an expression"));
        };
        match name.to_ascii_lowercase().as_str() {
            "true" => return Ok(Value::Bool(true)),
            "false" => return Ok(Value::Bool(false)),
            "null" => return Ok(Value::Null),
            _ => {}
        }
        if self.eat("(") {
            let mut args = Vec::new();
            if !self.eat(")") {
                loop {
                    args.push(self.expr()?);
                    if self.eat(")") {
                        break;
                    }
                    self.expect(",")?;
                }
            }
            return call(name, args);
        }
        self.skip_ws();
        if self.rest().starts_with('\'') {
            let s = self.string()?;
            return cast(s, name).map_err(|e| match e {
                EvalError::Type(m) => EvalError::Syntax { offset: start, message: m },
                other => other,
            });
        }
        self.pos = start;
        Err(self.error(format!("unexpected '{name}'")))
    }
}

/// Parses an untyped string as `ty`, shifting parse offsets to the expression.
fn parse_at(text: &str, offset: usize, ty: LiteralType) -> EResult<Literal> {
    parse(text, ty).map_err(|e| match e {
        Error::Parse(pe) => EvalError::Syntax {
            offset: offset + pe.offset,
            message: pe.message,
        },
        other => EvalError::Core(other),
    })
}

fn cast(v: Value, tag: &str) -> EResult<Value> {
    let Some(ty) = LiteralType::from_tag(tag) else {
        return type_error(format!("unknown type '{tag}'"));
    };
    match v {
        Value::Untyped { text, offset } => Ok(Value::Lit(parse_at(&text, offset, ty)?)),
        Value::Null => Ok(Value::Null),
        Value::Lit(lit) if lit.literal_type() == ty => Ok(Value::Lit(lit)),
        Value::Lit(Literal::Temporal(TemporalValue::Geo(tp))) if ty == LiteralType::STBox => {
            Ok(Value::Lit(Literal::STBox(tp.to_stbox())))
        }
        Value::Lit(Literal::Temporal(TemporalValue::Geo(tp))) if ty == LiteralType::TGeometry => {
            Ok(Value::Lit(Literal::Temporal(TemporalValue::Geo(tp.with_flavor(GeoFlavor::Geometry)))))
        }
        Value::Lit(Literal::Temporal(TemporalValue::Geo(tp))) if ty == LiteralType::TGeomPoint => {
            Ok(Value::Lit(Literal::Temporal(TemporalValue::Geo(tp.with_flavor(GeoFlavor::GeomPoint)))))
        }
        Value::Lit(Literal::Temporal(t)) if ty == LiteralType::TstzSpan => {
            Ok(Value::Lit(Literal::Span(SpanValue::Tstz(temporal_span(&t)))))
        }
        Value::Lit(Literal::Geometry(g)) if ty == LiteralType::STBox => Ok(Value::Lit(Literal::STBox(geometry_to_stbox(&g)))),
        Value::Number(n) if ty == LiteralType::Float => Ok(Value::Number(n)),
        Value::Number(n) if ty == LiteralType::Int && n.fract() == 0.0 => Ok(Value::Number(n)),
        Value::Bool(b) if ty == LiteralType::Bool => Ok(Value::Bool(b)),
        other => type_error(format!("cannot cast {} to {}", describe(&other), ty.tag())),
    }
}

fn describe(v: &Value) -> String {
    match v {
        Value::Lit(l) => l.literal_type().tag().to_string(),
        Value::Untyped { .. } => "unknown".into(),
        Value::Number(_) => "number".into(),
        Value::Bool(_) => "boolean".into(),
        Value::Null => "NULL".into(),
    }
}

macro_rules! with_temporal {
    ($tv:expr, $t:ident => $body:expr) => {
        match $tv {
            TemporalValue::Bool($t) => $body,
            TemporalValue::Int($t) => $body,
            TemporalValue::Float($t) => $body,
            TemporalValue::Text($t) => $body,
            TemporalValue::Geo(g) => {
                let $t = g.temporal();
                $body
            }
        }
    };
}

fn temporal_span(t: &TemporalValue) -> Span<TimestampTz> {
    with_temporal!(t, x => x.to_tstzspan())
}

fn arity(function: &str, args: &[Value], min: usize, max: usize, expected: &'static str) -> EResult<()> {
    if args.len() < min || args.len() > max {
        return Err(EvalError::Arity {
            function: function.to_string(),
            expected,
            got: args.len(),
        });
    }
    Ok(())
}

fn as_literal(v: &Value, ty: LiteralType) -> EResult<Literal> {
    match v {
        Value::Untyped { text, offset } => parse_at(text, *offset, ty),
        Value::Lit(l) => Ok(l.clone()),
        other => type_error(format!("expected {}, got {}", ty.tag(), describe(other))),
    }
}

fn as_temporal(v: &Value) -> EResult<TemporalValue> {
    match v {
        Value::Lit(Literal::Temporal(t)) => Ok(t.clone()),
        Value::Untyped { .. } => type_error("an untyped string cannot be a temporal value; add a type, as in '...'::tint"),
        other => type_error(format!("expected a temporal value, got {}", describe(other))),
    }
}

fn as_tgeo(v: &Value) -> EResult<TGeomPoint> {
    match v {
        Value::Untyped { text, offset } => match parse_at(text, *offset, LiteralType::TGeomPoint)? {
            Literal::Temporal(TemporalValue::Geo(t)) => Ok(t),
            _ => unreachable!(),
        },
        Value::Lit(Literal::Temporal(TemporalValue::Geo(t))) => Ok(t.clone()),
        other => type_error(format!("expected a temporal point, got {}", describe(other))),
    }
}

fn as_geometry(v: &Value) -> EResult<Geometry> {
    match as_literal(v, LiteralType::Geometry)? {
        Literal::Geometry(g) => Ok(g),
        other => type_error(format!("expected geometry, got {}", other.literal_type().tag())),
    }
}

fn as_float(v: &Value) -> EResult<f64> {
    match v {
        Value::Number(n) => Ok(*n),
        Value::Untyped { text, .. } => text
            .trim()
            .parse()
            .or_else(|_| type_error(format!("expected a number, got '{text}'"))),
        Value::Lit(Literal::Scalar(Scalar::Float(f))) => Ok(*f),
        Value::Lit(Literal::Scalar(Scalar::Int(i))) => Ok(f64::from(*i)),
        other => type_error(format!("expected a number, got {}", describe(other))),
    }
}

fn as_int<T: TryFrom<i64>>(v: &Value) -> EResult<T> {
    let f = as_float(v)?;
    if f.fract() != 0.0 {
        return type_error(format!("expected an integer, got {f}"));
    }
    T::try_from(f as i64).or_else(|_| type_error(format!("{f} is out of range")))
}

fn as_bool(v: &Value) -> EResult<bool> {
    match v {
        Value::Bool(b) => Ok(*b),
        Value::Lit(Literal::Scalar(Scalar::Bool(b))) => Ok(*b),
        Value::Untyped { text, offset } => match parse_at(text, *offset, LiteralType::Bool)? {
            Literal::Scalar(Scalar::Bool(b)) => Ok(b),
            _ => unreachable!(),
        },
        other => type_error(format!("expected a boolean, got {}", describe(other))),
    }
}

fn as_text(v: &Value) -> EResult<String> {
    match v {
        Value::Untyped { text, .. } => Ok(text.clone()),
        Value::Lit(Literal::Scalar(Scalar::Text(s))) => Ok(s.clone()),
        other => type_error(format!("expected text, got {}", describe(other))),
    }
}

fn as_interval(v: &Value) -> EResult<Interval> {
    match as_literal(v, LiteralType::Interval)? {
        Literal::Interval(i) => Ok(i),
        other => type_error(format!("expected interval, got {}", other.literal_type().tag())),
    }
}

fn as_timestamp(v: &Value) -> EResult<TimestampTz> {
    match as_literal(v, LiteralType::TimestampTz)? {
        Literal::TimestampTz(t) => Ok(t),
        other => type_error(format!("expected timestamptz, got {}", other.literal_type().tag())),
    }
}

/// Anything with a spatiotemporal box: stbox, geometry or temporal point.
fn as_stbox(v: &Value) -> EResult<STBox> {
    match as_literal(v, LiteralType::STBox)? {
        Literal::STBox(b) => Ok(b),
        Literal::Geometry(g) => Ok(geometry_to_stbox(&g)),
        Literal::Temporal(TemporalValue::Geo(t)) => Ok(t.to_stbox()),
        other => type_error(format!("expected stbox, got {}", other.literal_type().tag())),
    }
}

fn lit(l: Literal) -> Value {
    Value::Lit(l)
}

fn opt_lit<T>(v: Option<T>, f: impl FnOnce(T) -> Literal) -> Value {
    v.map_or(Value::Null, |x| Value::Lit(f(x)))
}

fn geo(t: TGeomPoint) -> Literal {
    Literal::Temporal(TemporalValue::Geo(t))
}

/// A time restriction argument: span, span set or timestamp.
fn as_time(v: &Value) -> EResult<SpanSet<TimestampTz>> {
    let l = match v {
        Value::Untyped { text, offset } => {
            let t = text.trim_start();
            let ty = if t.starts_with('{') {
                LiteralType::TstzSpanSet
            } else if t.starts_with(['[', '(']) {
                LiteralType::TstzSpan
            } else {
                LiteralType::TimestampTz
            };
            parse_at(text, *offset, ty)?
        }
        Value::Lit(l) => l.clone(),
        other => return type_error(format!("expected a time value, got {}", describe(other))),
    };
    match l {
        Literal::Span(SpanValue::Tstz(s)) => Ok(SpanSet::from_span(s)),
        Literal::SpanSet(SpanSetValue::Tstz(s)) => Ok(s),
        Literal::TimestampTz(t) => Ok(SpanSet::from_span(Span::singleton(t))),
        Literal::Set(SetValue::Tstz(s)) => Ok(SpanSet::new(s.elements().iter().map(|&t| Span::singleton(t)).collect())?),
        other => type_error(format!("expected a time value, got {}", other.literal_type().tag())),
    }
}

fn shift_scale_set<T: mobdb_core::set::ShiftScale>(
    set: &Set<T>,
    shift: &Value,
    width: &Value,
    delta: impl Fn(&Value) -> EResult<T::Delta>,
) -> EResult<Set<T>> {
    let shift = if *shift == Value::Null { None } else { Some(delta(shift)?) };
    let width = if *width == Value::Null { None } else { Some(delta(width)?) };
    Ok(set.shift_scale(shift, width)?)
}

fn call(name: &str, args: Vec<Value>) -> EResult<Value> {
    let lname = name.to_ascii_lowercase();
    let a = &args;
    Ok(match lname.as_str() {
        "duration" => {
            arity(name, a, 1, 2, "1 or 2")?;
            let bound = a.get(1).map(as_bool).transpose()?.unwrap_or(false);
            let t = as_temporal(&a[0])?;
            lit(Literal::Interval(with_temporal!(&t, x => x.duration(bound))))
        }
        "shiftscale" => {
            arity(name, a, 3, 3, "3")?;
            let set = match &a[0] {
                Value::Lit(Literal::Set(s)) => s.clone(),
                other => return type_error(format!("shiftScale expects a set, got {}", describe(other))),
            };
            let out = match &set {
                SetValue::Int(s) => SetValue::Int(shift_scale_set(s, &a[1], &a[2], as_int::<i32>)?),
                SetValue::BigInt(s) => SetValue::BigInt(shift_scale_set(s, &a[1], &a[2], as_int::<i64>)?),
                SetValue::Float(s) => SetValue::Float(shift_scale_set(s, &a[1], &a[2], as_float)?),
                SetValue::Tstz(s) => SetValue::Tstz(shift_scale_set(s, &a[1], &a[2], as_interval)?),
                _ => return type_error("shiftScale expects an int, bigint, float or tstz set"),
            };
            lit(Literal::Set(out))
        }
        "expandspace" => {
            arity(name, a, 2, 2, "2")?;
            lit(Literal::STBox(as_stbox(&a[0])?.expand_space(as_float(&a[1])?)?))
        }
        "expandtime" => {
            arity(name, a, 2, 2, "2")?;
            let by = as_interval(&a[1])?;
            match &a[0] {
                Value::Lit(Literal::TBox(b)) => lit(Literal::TBox(b.expand_time(by)?)),
                v => lit(Literal::STBox(as_stbox(v)?.expand_time(by)?)),
            }
        }
        "tgeometry" | "tgeompoint" => {
            arity(name, a, 2, 3, "2 or 3")?;
            let g = as_geometry(&a[0])?;
            let flavor = if lname == "tgeometry" { GeoFlavor::Geometry } else { GeoFlavor::GeomPoint };
            let interp = match a.get(2) {
                Some(v) => mobdb_core::text::parse_interp(&as_text(v)?)?,
                None => flavor.default_interp(),
            };
            let time = as_time(&a[1])?;
            let span = match time.spans() {
                [s] => *s,
                _ => return type_error(format!("{name} expects a timestamp or a single span")),
            };
            let t = if span.is_singleton() {
                let p = g
                    .as_point()
                    .ok_or_else(|| EvalError::Type("a temporal point needs a point geometry".into()))?;
                TGeomPoint::new(Temporal::instant(p, span.lower()), g.srid())
            } else {
                tgeo::tgeometry_from(&g, &span, interp)?
            };
            lit(geo(t.with_flavor(flavor)))
        }
        "astext" => {
            arity(name, a, 1, 1, "1")?;
            lit(Literal::Scalar(Scalar::Text(a[0].to_string())))
        }
        "asewkt" => {
            arity(name, a, 1, 1, "1")?;
            let text = match &a[0] {
                Value::Lit(l) => serialize_ewkt(l),
                other => other.to_string(),
            };
            lit(Literal::Scalar(Scalar::Text(text)))
        }
        "attime" => {
            arity(name, a, 2, 2, "2")?;
            let time = as_time(&a[1])?;
            match as_temporal(&a[0])? {
                TemporalValue::Geo(t) => opt_lit(t.at_tstzspanset(&time), geo),
                TemporalValue::Bool(t) => opt_lit(t.at_tstzspanset(&time), |x| Literal::Temporal(TemporalValue::Bool(x))),
                TemporalValue::Int(t) => opt_lit(t.at_tstzspanset(&time), |x| Literal::Temporal(TemporalValue::Int(x))),
                TemporalValue::Float(t) => opt_lit(t.at_tstzspanset(&time), |x| Literal::Temporal(TemporalValue::Float(x))),
                TemporalValue::Text(t) => opt_lit(t.at_tstzspanset(&time), |x| Literal::Temporal(TemporalValue::Text(x))),
            }
        }
        "atvalues" => {
            arity(name, a, 2, 2, "2")?;
            match as_temporal(&a[0])? {
                TemporalValue::Geo(t) => opt_lit(t.at_value(&as_geometry(&a[1])?)?, geo),
                TemporalValue::Bool(t) => opt_lit(t.at_values(&as_bool(&a[1])?), |x| Literal::Temporal(TemporalValue::Bool(x))),
                TemporalValue::Int(t) => opt_lit(t.at_values(&as_int(&a[1])?), |x| Literal::Temporal(TemporalValue::Int(x))),
                TemporalValue::Float(t) => opt_lit(t.at_values(&as_float(&a[1])?), |x| Literal::Temporal(TemporalValue::Float(x))),
                TemporalValue::Text(t) => opt_lit(t.at_values(&as_text(&a[1])?), |x| Literal::Temporal(TemporalValue::Text(x))),
            }
        }
        "valueattimestamp" => {
            arity(name, a, 2, 2, "2")?;
            let ts = as_timestamp(&a[1])?;
            match as_temporal(&a[0])? {
                TemporalValue::Geo(t) => opt_lit(t.value_at_timestamp(ts), Literal::Geometry),
                TemporalValue::Bool(t) => t.value_at_timestamp(ts).map_or(Value::Null, Value::Bool),
                TemporalValue::Int(t) => opt_lit(t.value_at_timestamp(ts), |v| Literal::Scalar(Scalar::Int(v))),
                TemporalValue::Float(t) => t.value_at_timestamp(ts).map_or(Value::Null, Value::Number),
                TemporalValue::Text(t) => opt_lit(t.value_at_timestamp(ts), |v| Literal::Scalar(Scalar::Text(v))),
            }
        }
        "starttimestamp" | "endtimestamp" => {
            arity(name, a, 1, 1, "1")?;
            let t = as_temporal(&a[0])?;
            let ts = if lname == "starttimestamp" {
                with_temporal!(&t, x => x.start_timestamp())
            } else {
                with_temporal!(&t, x => x.end_timestamp())
            };
            lit(Literal::TimestampTz(ts))
        }
        "trajectory" => {
            arity(name, a, 1, 1, "1")?;
            lit(Literal::Geometry(as_tgeo(&a[0])?.trajectory()))
        }
        "length" => {
            arity(name, a, 1, 1, "1")?;
            match &a[0] {
                Value::Lit(Literal::Geometry(g)) => Value::Number(g.length()),
                v => Value::Number(as_tgeo(v)?.length()),
            }
        }
        "atgeometry" => {
            arity(name, a, 2, 2, "2")?;
            opt_lit(as_tgeo(&a[0])?.at_geometry(&as_geometry(&a[1])?)?, geo)
        }
        "whentrue" => {
            arity(name, a, 1, 1, "1")?;
            match as_temporal(&a[0])? {
                TemporalValue::Bool(t) => opt_lit(t.when_true(), |s| Literal::SpanSet(SpanSetValue::Tstz(s))),
                _ => return type_error("whenTrue expects a tbool"),
            }
        }
        "tdwithin" => {
            arity(name, a, 3, 3, "3")?;
            let r = tgeo::t_dwithin(&as_tgeo(&a[0])?, &as_tgeo(&a[1])?, as_float(&a[2])?)?;
            opt_lit(r, |t| Literal::Temporal(TemporalValue::Bool(t)))
        }
        "edwithin" => {
            arity(name, a, 3, 3, "3")?;
            Value::Bool(tgeo::e_dwithin(&as_tgeo(&a[0])?, &as_tgeo(&a[1])?, as_float(&a[2])?)?)
        }
        "eintersects" => {
            arity(name, a, 2, 2, "2")?;
            Value::Bool(tgeo::e_intersects(&as_tgeo(&a[0])?, &as_geometry(&a[1])?)?)
        }
        "distance" => {
            arity(name, a, 2, 2, "2")?;
            Value::Number(geom::distance(&as_geometry(&a[0])?, &as_geometry(&a[1])?)?)
        }
        "stbox" => {
            arity(name, a, 1, 1, "1")?;
            lit(Literal::STBox(as_stbox(&a[0])?))
        }
        _ => return Err(EvalError::UnknownFunction(name.to_string())),
    })
}

fn binary(op: &str, lhs: Value, rhs: Value) -> EResult<Value> {
    if lhs == Value::Null || rhs == Value::Null {
        return Ok(Value::Null);
    }
    match op {
        "&&" => {
            if let (Value::Lit(Literal::TBox(a)), Value::Lit(Literal::TBox(b))) = (&lhs, &rhs) {
                return Ok(Value::Bool(a.overlaps(b)?));
            }
            if let (Value::Lit(Literal::Span(a)), Value::Lit(Literal::Span(b))) = (&lhs, &rhs) {
                return match (a, b) {
                    (SpanValue::Int(x), SpanValue::Int(y)) => Ok(Value::Bool(x.overlaps(y))),
                    (SpanValue::BigInt(x), SpanValue::BigInt(y)) => Ok(Value::Bool(x.overlaps(y))),
                    (SpanValue::Float(x), SpanValue::Float(y)) => Ok(Value::Bool(x.overlaps(y))),
                    (SpanValue::Date(x), SpanValue::Date(y)) => Ok(Value::Bool(x.overlaps(y))),
                    (SpanValue::Tstz(x), SpanValue::Tstz(y)) => Ok(Value::Bool(x.overlaps(y))),
                    _ => type_error("&& between spans of different types"),
                };
            }
            Ok(Value::Bool(as_stbox(&lhs)?.overlaps(&as_stbox(&rhs)?)?))
        }
        "@>" => match &lhs {
            Value::Lit(Literal::Span(SpanValue::Tstz(s))) => match &rhs {
                Value::Lit(Literal::Span(SpanValue::Tstz(o))) => Ok(Value::Bool(s.contains_span(o))),
                v => Ok(Value::Bool(s.contains_value(as_timestamp(v)?))),
            },
            Value::Lit(Literal::SpanSet(SpanSetValue::Tstz(s))) => Ok(Value::Bool(s.contains_value(as_timestamp(&rhs)?))),
            Value::Lit(Literal::Span(SpanValue::Int(s))) => Ok(Value::Bool(s.contains_value(as_int(&rhs)?))),
            Value::Lit(Literal::Span(SpanValue::BigInt(s))) => Ok(Value::Bool(s.contains_value(as_int(&rhs)?))),
            Value::Lit(Literal::Span(SpanValue::Float(s))) => Ok(Value::Bool(s.contains_value(as_float(&rhs)?))),
            Value::Lit(Literal::STBox(b)) => Ok(Value::Bool(b.contains(&as_stbox(&rhs)?)?)),
            other => type_error(format!("@> is not defined for {}", describe(other))),
        },
        _ => unreachable!("only && and @> are parsed"),
    }
}
