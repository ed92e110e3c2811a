#![allow(dead_code)]

use std::fmt::Debug;

use mobdb_core::boxes::TBoxValue;
use mobdb_core::geom::Shape;
use mobdb_core::temporal::TemporalBase;
use mobdb_core::text::{Scalar, SetValue, SpanSetValue, SpanValue, TemporalValue};
use mobdb_core::tgeo::GeoFlavor;
use mobdb_core::*;
use proptest::prelude::*;

pub const T_MIN: i64 = 946_684_800_000_000; // 2000-01-01
pub const T_MAX: i64 = 2_208_988_800_000_000; // 2040-01-01

pub fn ts() -> impl Strategy<Value = TimestampTz> + Clone {
    prop_oneof![
        (T_MIN / 1_000_000..T_MAX / 1_000_000).prop_map(|s| TimestampTz(s * 1_000_000)),
        (T_MIN..T_MAX).prop_map(TimestampTz),
    ]
}

pub fn date() -> impl Strategy<Value = Date> + Clone {
    (-10_000i32..30_000).prop_map(Date)
}

pub fn float() -> impl Strategy<Value = f64> + Clone {
    prop_oneof![
        (-1000i32..1000).prop_map(f64::from),
        -1e6f64..1e6,
        any::<f64>().prop_filter("finite", |f| f.is_finite()),
    ]
}

pub fn coord() -> impl Strategy<Value = f64> + Clone {
    prop_oneof![(-1000i32..1000).prop_map(f64::from), -1e4f64..1e4]
}

pub fn point() -> impl Strategy<Value = Point> + Clone {
    (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
}

pub fn text() -> impl Strategy<Value = String> + Clone {
    "[a-zA-Z0-9 ,@\"\\\\{}()]{0,8}"
}

pub fn srid() -> impl Strategy<Value = Option<i32>> + Clone {
    prop_oneof![Just(None), (1i32..100_000).prop_map(Some)]
}

/// A span from two draws and two flags; degenerate draws become singletons.
pub fn span<T, S>(elem: S) -> impl Strategy<Value = Span<T>>
where
    T: mobdb_core::span::SpanValue + 'static,
    S: Strategy<Value = T> + Clone,
{
    (elem.clone(), elem, any::<bool>(), any::<bool>()).prop_map(|(a, b, li, ui)| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        Span::new(lo, hi, li, ui).unwrap_or_else(|_| Span::singleton(lo))
    })
}

pub fn spanset<T, S>(elem: S) -> impl Strategy<Value = SpanSet<T>>
where
    T: mobdb_core::span::SpanValue + Debug + 'static,
    S: Strategy<Value = T> + Clone,
{
    prop::collection::vec(span(elem), 1..6).prop_map(|v| SpanSet::new(v).unwrap())
}

pub fn set<T, S>(elem: S) -> impl Strategy<Value = Set<T>>
where
    T: mobdb_core::set::SetElement + 'static,
    S: Strategy<Value = T>,
{
    prop::collection::vec(elem, 1..8).prop_map(|v| Set::new(v).unwrap())
}

fn instants<B: Clone>(values: Vec<B>, start: i64, gaps: Vec<i64>) -> Vec<TInstant<B>> {
    let mut t = start;
    values
        .into_iter()
        .zip(gaps)
        .map(|(v, g)| {
            t += g;
            TInstant::new(v, TimestampTz(t))
        })
        .collect()
}

fn gap() -> impl Strategy<Value = i64> + Clone {
    prop_oneof![
        (1i64..3_600).prop_map(|m| m * 60_000_000),
        1i64..10_000_000_000,
    ]
}

fn continuous_interp<B: TemporalBase>() -> impl Strategy<Value = Interp> + Clone {
    if B::CONTINUOUS {
        prop_oneof![Just(Interp::Step), Just(Interp::Linear)].boxed()
    } else {
        Just(Interp::Step).boxed()
    }
}

fn sequence<B, S>(value: S, interp: Interp, start: i64, max_len: usize) -> impl Strategy<Value = TSequence<B>>
where
    B: TemporalBase + 'static,
    S: Strategy<Value = B> + Clone + 'static,
{
    (
        prop::collection::vec((value, gap()), 1..=max_len),
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(move |(pairs, li, ui)| {
            let n = pairs.len();
            let (values, gaps): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
            let (li, ui) = if n == 1 { (true, true) } else { (li, ui) };
            TSequence::new(instants(values, start, gaps), li, ui, interp).unwrap()
        })
}

/// Random temporal value of any subtype.
pub fn temporal<B, S>(value: S) -> BoxedStrategy<Temporal<B>>
where
    B: TemporalBase + 'static,
    S: Strategy<Value = B> + Clone + 'static,
{
    let v1 = value.clone();
    let instant = (value.clone(), ts()).prop_map(|(v, t)| Temporal::instant(v, t));
    let discrete = (T_MIN..T_MIN * 2, prop::collection::vec((v1, gap()), 1..6)).prop_map(|(start, pairs)| {
        let (values, gaps): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        Temporal::Sequence(TSequence::discrete(instants(values, start, gaps)).unwrap())
    });
    let v2 = value.clone();
    let seq = (continuous_interp::<B>(), T_MIN..T_MIN * 2)
        .prop_flat_map(move |(interp, start)| sequence(v2.clone(), interp, start, 6))
        .prop_map(Temporal::Sequence);
    let v3 = value;
    let seqset = (continuous_interp::<B>(), T_MIN..T_MIN * 2, 1usize..4)
        .prop_flat_map(move |(interp, start, k)| {
            let parts: Vec<_> = (0..k)
                .map(|i| sequence(v3.clone(), interp, start + i as i64 * 100_000_000_000_000, 4))
                .collect();
            parts
        })
        .prop_map(|seqs| Temporal::SequenceSet(TSequenceSet::new(seqs).unwrap()));
    prop_oneof![instant, discrete, seq, seqset].boxed()
}

/// Linear temporal point sequence (1 sequence, 2..=n instants, inclusive bounds).
pub fn linear_trip(n: usize, extent: f64) -> impl Strategy<Value = TGeomPoint> {
    (
        prop::collection::vec(((-extent..extent), (-extent..extent), 60_000_000i64..600_000_000), 2..=n),
        T_MIN..T_MIN + 1_000_000_000,
    )
        .prop_map(|(pts, start)| {
            let mut t = start;
            let inst = pts
                .into_iter()
                .map(|(x, y, g)| {
                    t += g;
                    TInstant::new(Point::new(x, y), TimestampTz(t))
                })
                .collect();
            TGeomPoint::new(
                Temporal::Sequence(TSequence::continuous(inst, Interp::Linear).unwrap()),
                None,
            )
        })
}

fn ring() -> impl Strategy<Value = Vec<Point>> {
    (point(), 1.0f64..100.0, 1.0f64..100.0, any::<bool>()).prop_map(|(p, w, h, tri)| {
        let mut r = vec![p, Point::new(p.x + w, p.y), Point::new(p.x + w, p.y + h)];
        if !tri {
            r.push(Point::new(p.x, p.y + h));
        }
        r.push(p);
        r
    })
}

pub fn shape() -> impl Strategy<Value = Shape> {
    let leaf = prop_oneof![
        point().prop_map(Shape::Point),
        prop::collection::vec(point(), 2..5).prop_map(Shape::LineString),
        ring().prop_map(|r| Shape::Polygon(Polygon::new(vec![r]).unwrap())),
    ];
    leaf.prop_recursive(2, 8, 3, |inner| {
        prop::collection::vec(inner, 1..3).prop_map(Shape::Collection)
    })
}

pub fn geometry(with_srid: bool) -> impl Strategy<Value = Geometry> {
    let srid = if with_srid { srid().boxed() } else { Just(None).boxed() };
    (shape(), srid).prop_map(|(s, srid)| Geometry::new(s, srid).unwrap())
}

pub fn rect() -> impl Strategy<Value = Rect> + Clone {
    (point(), point()).prop_map(|(a, b)| {
        Rect::new(a.x.min(b.x), a.y.min(b.y), a.x.max(b.x), a.y.max(b.y)).unwrap()
    })
}

pub fn stbox() -> impl Strategy<Value = STBox> {
    prop_oneof![
        (rect(), srid()).prop_map(|(r, s)| STBox::xy(r, s)),
        span(ts()).prop_map(STBox::t),
        (rect(), span(ts()), srid()).prop_map(|(r, t, s)| STBox::xyt(r, t, s)),
    ]
}

pub fn tbox() -> impl Strategy<Value = TBox> {
    let value = prop_oneof![
        Just(None),
        span(-1000i32..1000).prop_map(|s| Some(TBoxValue::Int(s))),
        span(float()).prop_map(|s| Some(TBoxValue::Float(s))),
    ];
    (value, prop::option::of(span(ts())))
        .prop_filter_map("one dimension", |(v, t)| TBox::new(v, t).ok())
}

pub fn tgeo(with_srid: bool) -> impl Strategy<Value = TGeomPoint> {
    let srid = if with_srid { srid().boxed() } else { Just(None).boxed() };
    (
        temporal(point()),
        srid,
        prop_oneof![Just(GeoFlavor::GeomPoint), Just(GeoFlavor::Geometry)],
    )
        .prop_map(|(t, s, f)| TGeomPoint::new(t, s).with_flavor(f))
}

/// Random literal of the given type; geometric values carry an SRID only when `with_srid`.
pub fn literal(ty: LiteralType, with_srid: bool) -> BoxedStrategy<Literal> {
    use LiteralType as L;
    match ty {
        L::IntSet => set(any::<i32>()).prop_map(|s| Literal::Set(SetValue::Int(s))).boxed(),
        L::BigIntSet => set(any::<i64>()).prop_map(|s| Literal::Set(SetValue::BigInt(s))).boxed(),
        L::FloatSet => set(float()).prop_map(|s| Literal::Set(SetValue::Float(s))).boxed(),
        L::TextSet => set(text()).prop_map(|s| Literal::Set(SetValue::Text(s))).boxed(),
        L::DateSet => set(date()).prop_map(|s| Literal::Set(SetValue::Date(s))).boxed(),
        L::TstzSet => set(ts()).prop_map(|s| Literal::Set(SetValue::Tstz(s))).boxed(),
        L::GeomSet => {
            let srid = if with_srid { srid().boxed() } else { Just(None).boxed() };
            (set(point()), srid)
                .prop_map(|(s, srid)| Literal::Set(SetValue::Geom(GeomSet::new(s, srid))))
                .boxed()
        }
        L::IntSpan => span(-100_000i32..100_000).prop_map(|s| Literal::Span(SpanValue::Int(s))).boxed(),
        L::BigIntSpan => span(-1i64 << 40..1i64 << 40).prop_map(|s| Literal::Span(SpanValue::BigInt(s))).boxed(),
        L::FloatSpan => span(float()).prop_map(|s| Literal::Span(SpanValue::Float(s))).boxed(),
        L::DateSpan => span(date()).prop_map(|s| Literal::Span(SpanValue::Date(s))).boxed(),
        L::TstzSpan => span(ts()).prop_map(|s| Literal::Span(SpanValue::Tstz(s))).boxed(),
        L::IntSpanSet => spanset(-1000i32..1000).prop_map(|s| Literal::SpanSet(SpanSetValue::Int(s))).boxed(),
        L::BigIntSpanSet => spanset(-1000i64..1000).prop_map(|s| Literal::SpanSet(SpanSetValue::BigInt(s))).boxed(),
        L::FloatSpanSet => spanset(float()).prop_map(|s| Literal::SpanSet(SpanSetValue::Float(s))).boxed(),
        L::DateSpanSet => spanset(date()).prop_map(|s| Literal::SpanSet(SpanSetValue::Date(s))).boxed(),
        L::TstzSpanSet => spanset(ts()).prop_map(|s| Literal::SpanSet(SpanSetValue::Tstz(s))).boxed(),
        L::TBool => temporal(any::<bool>()).prop_map(|t| Literal::Temporal(TemporalValue::Bool(t))).boxed(),
        L::TInt => temporal(any::<i32>()).prop_map(|t| Literal::Temporal(TemporalValue::Int(t))).boxed(),
        L::TFloat => temporal(float()).prop_map(|t| Literal::Temporal(TemporalValue::Float(t))).boxed(),
        L::TText => temporal(text()).prop_map(|t| Literal::Temporal(TemporalValue::Text(t))).boxed(),
        L::TGeomPoint | L::TGeometry => {
            let flavor = if ty == L::TGeomPoint { GeoFlavor::GeomPoint } else { GeoFlavor::Geometry };
            tgeo(with_srid)
                .prop_map(move |t| Literal::Temporal(TemporalValue::Geo(t.with_flavor(flavor))))
                .boxed()
        }
        L::STBox => stbox().prop_map(Literal::STBox).boxed(),
        L::TBox => tbox().prop_map(Literal::TBox).boxed(),
        L::Geometry => geometry(with_srid).prop_map(Literal::Geometry).boxed(),
        L::Interval => (-(1i64 << 50)..(1i64 << 50))
            .prop_map(|m| Literal::Interval(Interval(m)))
            .boxed(),
        L::TimestampTz => ts().prop_map(Literal::TimestampTz).boxed(),
        L::Bool => any::<bool>().prop_map(|b| Literal::Scalar(Scalar::Bool(b))).boxed(),
        L::Int => any::<i32>().prop_map(|v| Literal::Scalar(Scalar::Int(v))).boxed(),
        L::BigInt => any::<i64>().prop_map(|v| Literal::Scalar(Scalar::BigInt(v))).boxed(),
        L::Float => float().prop_map(|v| Literal::Scalar(Scalar::Float(v))).boxed(),
        L::Text => "[a-zA-Z0-9,@]([a-zA-Z0-9 ,@]{0,6}[a-zA-Z0-9,@])?"
            .prop_map(|v| Literal::Scalar(Scalar::Text(v)))
            .boxed(),
        L::Date => date().prop_map(|v| Literal::Scalar(Scalar::Date(v))).boxed(),
    }
}
