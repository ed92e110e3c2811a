//! Temporal geometry points and their spatial operators.

use crate::boxes::STBox;
use crate::error::{check_srid, Error, Result};
use crate::geom::{self, point_in_polygon, segment_inside_intervals, Geometry, Point, Polygon, Rect, Shape};
use crate::span::{Span, SpanSet};
use crate::temporal::{synchronize, Interp, StepBuilder, TInstant, TSequence, TSequenceSet, Temporal};
use crate::time::TimestampTz;

/// Which SQL type a temporal point was built as. Only affects the default
/// interpolation used when rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeoFlavor {
    GeomPoint,
    Geometry,
}

impl GeoFlavor {
    pub fn default_interp(self) -> Interp {
        match self {
            GeoFlavor::GeomPoint => Interp::Linear,
            GeoFlavor::Geometry => Interp::Step,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TGeomPoint {
    temporal: Temporal<Point>,
    srid: Option<i32>,
    flavor: GeoFlavor,
}

impl TGeomPoint {
    pub fn new(temporal: Temporal<Point>, srid: Option<i32>) -> Self {
        TGeomPoint {
            temporal,
            srid,
            flavor: GeoFlavor::GeomPoint,
        }
    }

    pub fn with_flavor(mut self, flavor: GeoFlavor) -> Self {
        self.flavor = flavor;
        self
    }

    pub fn temporal(&self) -> &Temporal<Point> {
        &self.temporal
    }

    pub fn into_temporal(self) -> Temporal<Point> {
        self.temporal
    }

    pub fn srid(&self) -> Option<i32> {
        self.srid
    }

    pub fn flavor(&self) -> GeoFlavor {
        self.flavor
    }

    fn rewrap(&self, temporal: Temporal<Point>) -> TGeomPoint {
        TGeomPoint {
            temporal,
            srid: self.srid,
            flavor: self.flavor,
        }
    }

    pub fn value_at_timestamp(&self, t: TimestampTz) -> Option<Geometry> {
        self.temporal
            .value_at_timestamp(t)
            .map(|p| Geometry::from_point(p, self.srid))
    }

    pub fn at_time(&self, span: &Span<TimestampTz>) -> Option<TGeomPoint> {
        self.temporal.at_time(span).map(|t| self.rewrap(t))
    }

    pub fn at_tstzspanset(&self, spans: &SpanSet<TimestampTz>) -> Option<TGeomPoint> {
        self.temporal.at_tstzspanset(spans).map(|t| self.rewrap(t))
    }

    /// Restriction to a point value (tolerance-matched).
    pub fn at_value(&self, g: &Geometry) -> Result<Option<TGeomPoint>> {
        check_srid(self.srid, g.srid())?;
        let p = g.as_point().ok_or_else(|| {
            Error::InvalidGeometry(format!("expected a point, got {}", g.shape().type_name()))
        })?;
        Ok(self.temporal.at_values(&p).map(|t| self.rewrap(t)))
    }

    /// Path travelled. Linear sequences become linestrings (a point when
    /// stationary); step and discrete values become their distinct positions.
    pub fn trajectory(&self) -> Geometry {
        let seqs = self.temporal.sequences();
        let mut parts: Vec<Shape> = Vec::new();
        if self.temporal.interp() == Interp::Linear {
            for seq in seqs.iter() {
                let mut pts: Vec<Point> = Vec::with_capacity(seq.instants().len());
                for inst in seq.instants() {
                    if pts.last() != Some(&inst.value) {
                        pts.push(inst.value);
                    }
                }
                parts.push(if pts.len() == 1 {
                    Shape::Point(pts[0])
                } else {
                    Shape::LineString(pts)
                });
            }
        } else {
            let mut seen: Vec<Point> = Vec::new();
            for inst in seqs.iter().flat_map(|s| s.instants()) {
                if !seen.contains(&inst.value) {
                    seen.push(inst.value);
                }
            }
            parts.extend(seen.into_iter().map(Shape::Point));
        }
        let shape = if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            Shape::Collection(parts)
        };
        Geometry::new(shape, self.srid).expect("trajectory of a valid temporal point")
    }

    /// Distance travelled along linear sequences.
    pub fn length(&self) -> f64 {
        if self.temporal.interp() != Interp::Linear {
            return 0.0;
        }
        self.temporal
            .sequences()
            .iter()
            .map(|s| geom::polyline_length(&s.instants().iter().map(|i| i.value).collect::<Vec<_>>()))
            .sum()
    }

    fn bounds(&self) -> Rect {
        let instants = self.temporal.instants();
        let mut r = Rect::of_point(instants[0].value);
        for inst in &instants[1..] {
            r.expand_to(inst.value);
        }
        r
    }

    pub fn to_stbox(&self) -> STBox {
        STBox::xyt(self.bounds(), self.temporal.to_tstzspan(), self.srid)
    }

    /// `tp && box`.
    pub fn overlaps_box(&self, b: &STBox) -> Result<bool> {
        self.to_stbox().overlaps(b)
    }

    /// Restriction to the times at which the point lies inside `g` (boundary
    /// included). `g` must be a polygon or a collection of polygons.
    pub fn at_geometry(&self, g: &Geometry) -> Result<Option<TGeomPoint>> {
        check_srid(self.srid, g.srid())?;
        let mut polys = Vec::new();
        gather_polygons(g.shape(), &mut polys)?;
        if !self.bounds().intersects(&g.bounds()) {
            return Ok(None);
        }
        let mut spans = Vec::new();
        for seq in self.temporal.sequences().iter() {
            inside_spans(seq, &polys, &mut spans);
        }
        let Ok(spanset) = SpanSet::new(spans) else {
            return Ok(None);
        };
        Ok(self.at_tstzspanset(&spanset))
    }
}

fn gather_polygons<'a>(shape: &'a Shape, out: &mut Vec<&'a Polygon>) -> Result<()> {
    match shape {
        Shape::Polygon(p) => {
            out.push(p);
            Ok(())
        }
        Shape::Collection(items) => items.iter().try_for_each(|s| gather_polygons(s, out)),
        other => Err(Error::InvalidGeometry(format!(
            "expected a polygon, got {}",
            other.type_name()
        ))),
    }
}

fn inside(p: Point, polys: &[&Polygon]) -> bool {
    polys.iter().any(|poly| point_in_polygon(p, poly))
}

fn time_at(a: TimestampTz, b: TimestampTz, f: f64) -> TimestampTz {
    let dt = (b.micros() - a.micros()) as f64;
    TimestampTz(a.micros() + (f * dt).round() as i64).clamp(a, b)
}

fn inside_spans(seq: &TSequence<Point>, polys: &[&Polygon], out: &mut Vec<Span<TimestampTz>>) {
    let inst = seq.instants();
    match seq.interp() {
        Interp::Linear if inst.len() > 1 => {
            for w in inst.windows(2) {
                for poly in polys {
                    for (lo, hi) in segment_inside_intervals(w[0].value, w[1].value, poly) {
                        let span = Span::inclusive(time_at(w[0].t, w[1].t, lo), time_at(w[0].t, w[1].t, hi))
                            .expect("ordered");
                        out.push(span);
                    }
                }
            }
        }
        Interp::Step => {
            for w in inst.windows(2) {
                if inside(w[0].value, polys) {
                    out.push(Span::new(w[0].t, w[1].t, true, false).expect("ordered"));
                }
            }
            let last = &inst[inst.len() - 1];
            if inside(last.value, polys) {
                out.push(Span::singleton(last.t));
            }
        }
        _ => {
            for i in inst {
                if inside(i.value, polys) {
                    out.push(Span::singleton(i.t));
                }
            }
        }
    }
}

/// Temporal `distance(a, b) <= d`, evaluated exactly on each synchronized
/// segment. Linear sides move linearly, step sides hold their value.
pub fn t_dwithin(a: &TGeomPoint, b: &TGeomPoint, d: f64) -> Result<Option<Temporal<bool>>> {
    if d.is_nan() || d < 0.0 {
        return Err(Error::InvalidArgument(format!("distance must be non-negative, got {d}")));
    }
    check_srid(a.srid, b.srid)?;
    let Some(pairs) = synchronize(&a.temporal, &b.temporal) else {
        return Ok(None);
    };
    let d2 = d * d;
    if !pairs[0].0.is_continuous() {
        let instants = pairs
            .iter()
            .flat_map(|(sa, sb)| sa.instants().iter().zip(sb.instants()))
            .map(|(ia, ib)| TInstant::new(ia.value.distance(&ib.value) <= d, ia.t))
            .collect();
        return Ok(Some(Temporal::Sequence(TSequence::discrete(instants)?)));
    }
    let mut builder = StepBuilder::new();
    for (sa, sb) in &pairs {
        dwithin_pair(sa, sb, d2, &mut builder);
    }
    let mut seqs = builder.finish();
    Ok(Some(if seqs.len() == 1 {
        Temporal::Sequence(seqs.pop().expect("one sequence"))
    } else {
        Temporal::SequenceSet(TSequenceSet::new(seqs)?)
    }))
}

/// Emits a piece unless it is empty.
fn emit(b: &mut StepBuilder<bool>, lo: TimestampTz, lo_inc: bool, hi: TimestampTz, hi_inc: bool, v: bool) {
    if lo < hi || (lo == hi && lo_inc && hi_inc) {
        b.push(lo, lo_inc, hi, hi_inc, v);
    }
}

fn dwithin_pair(sa: &TSequence<Point>, sb: &TSequence<Point>, d2: f64, out: &mut StepBuilder<bool>) {
    let ia = sa.instants();
    let ib = sb.instants();
    let n = ia.len();
    let close = |p: Point, q: Point| {
        let (dx, dy) = (p.x - q.x, p.y - q.y);
        dx * dx + dy * dy <= d2
    };
    for k in 0..n.saturating_sub(1) {
        let (t0, t1) = (ia[k].t, ia[k + 1].t);
        let start_inc = k > 0 || sa.lower_inc();
        let step_a = sa.interp() != Interp::Linear;
        let step_b = sb.interp() != Interp::Linear;
        let va = if step_a { Point::default() } else { delta(ia[k].value, ia[k + 1].value) };
        let vb = if step_b { Point::default() } else { delta(ib[k].value, ib[k + 1].value) };
        let d0 = delta(ib[k].value, ia[k].value);
        let v = Point::new(va.x - vb.x, va.y - vb.y);
        match within_fractions(d0, v, d2) {
            None => emit(out, t0, start_inc, t1, false, false),
            Some((lo, hi)) => {
                let tl = time_at(t0, t1, lo);
                let th = time_at(t0, t1, hi);
                emit(out, t0, start_inc, tl, false, false);
                let th_inc = th < t1;
                emit(out, tl, tl > t0 || start_inc, th, th_inc, true);
                if th_inc {
                    emit(out, th, false, t1, false, false);
                }
            }
        }
    }
    if sa.upper_inc() || n == 1 {
        let t = ia[n - 1].t;
        let lo_inc = n > 1 || sa.lower_inc();
        emit(out, t, lo_inc, t, true, close(ia[n - 1].value, ib[n - 1].value));
    }
}

fn delta(from: Point, to: Point) -> Point {
    Point::new(to.x - from.x, to.y - from.y)
}

/// Sub-interval of `[0, 1]` where `|d0 + v·s|² <= d2`.
fn within_fractions(d0: Point, v: Point, d2: f64) -> Option<(f64, f64)> {
    let a = v.x * v.x + v.y * v.y;
    let b = 2.0 * (d0.x * v.x + d0.y * v.y);
    let c = d0.x * d0.x + d0.y * d0.y - d2;
    if a == 0.0 {
        return (c <= 0.0).then_some((0.0, 1.0));
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return None;
    }
    let (r1, r2) = if disc == 0.0 {
        let r = -b / (2.0 * a);
        (r, r)
    } else {
        let q = -0.5 * (b + b.signum() * disc.sqrt());
        let (x, y) = (q / a, c / q);
        (x.min(y), x.max(y))
    };
    let lo = r1.max(0.0);
    let hi = r2.min(1.0);
    (lo <= hi).then_some((lo, hi))
}

/// Whether `a` and `b` are ever within distance `d`.
pub fn e_dwithin(a: &TGeomPoint, b: &TGeomPoint, d: f64) -> Result<bool> {
    Ok(t_dwithin(a, b, d)?.and_then(|t| t.when_true()).is_some())
}

/// Whether the point ever intersects `g`.
pub fn e_intersects(tp: &TGeomPoint, g: &Geometry) -> Result<bool> {
    geom::intersects(&tp.trajectory(), g)
}

/// The `tgeometry(point, span, interp)` constructor.
pub fn tgeometry_from(g: &Geometry, s: &Span<TimestampTz>, interp: Interp) -> Result<TGeomPoint> {
    let p = g.as_point().ok_or_else(|| {
        Error::InvalidGeometry(format!("expected a point, got {}", g.shape().type_name()))
    })?;
    if interp == Interp::Discrete {
        return Err(Error::InvalidInterpolation(
            "expected step or linear interpolation".into(),
        ));
    }
    let seq = if s.is_singleton() {
        TSequence::new(vec![TInstant::new(p, s.lower())], true, true, interp)?
    } else {
        TSequence::new(
            vec![TInstant::new(p, s.lower()), TInstant::new(p, s.upper())],
            s.lower_inc(),
            s.upper_inc(),
            interp,
        )?
    };
    Ok(TGeomPoint::new(Temporal::Sequence(seq), g.srid()).with_flavor(GeoFlavor::Geometry))
}

pub fn geometry_to_stbox(g: &Geometry) -> STBox {
    STBox::xy(g.bounds(), g.srid())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(h: u32) -> TimestampTz {
        TimestampTz::from_ymd_hms(2025, 1, 1, h, 0, 0).unwrap()
    }

    fn trip(points: &[(f64, f64, u32)]) -> TGeomPoint {
        let instants = points
            .iter()
            .map(|&(x, y, h)| TInstant::new(Point::new(x, y), th(h)))
            .collect();
        TGeomPoint::new(
            Temporal::Sequence(TSequence::continuous(instants, Interp::Linear).unwrap()),
            None,
        )
    }

    #[test]
    fn length_and_trajectory() {
        let t = trip(&[(0.0, 0.0, 0), (3.0, 4.0, 1)]);
        assert_eq!(t.length(), 5.0);
        assert_eq!(t.trajectory().length(), 5.0);
        let still = trip(&[(1.0, 1.0, 0), (1.0, 1.0, 1)]);
        assert_eq!(still.trajectory().as_point(), Some(Point::new(1.0, 1.0)));
        assert_eq!(still.length(), 0.0);
    }

    #[test]
    fn at_geometry_crossing() {
        let t = trip(&[(-1.0, 0.5, 0), (3.0, 0.5, 4)]);
        let sq = Geometry::polygon(Polygon::rectangle(Rect::new(0.0, 0.0, 1.0, 1.0).unwrap()), None);
        let r = t.at_geometry(&sq).unwrap().unwrap();
        assert_eq!(r.temporal().start_timestamp(), th(1));
        assert_eq!(r.temporal().end_timestamp(), th(2));
        assert!((r.length() - 1.0).abs() < 1e-12);
        let far = Geometry::polygon(Polygon::rectangle(Rect::new(10.0, 10.0, 11.0, 11.0).unwrap()), None);
        assert!(t.at_geometry(&far).unwrap().is_none());
        assert!(t.at_geometry(&Geometry::point(0.0, 0.0)).is_err());
    }

    #[test]
    fn dwithin_head_on() {
        let a = trip(&[(0.0, 0.0, 0), (10.0, 0.0, 10)]);
        let b = trip(&[(10.0, 0.0, 0), (0.0, 0.0, 10)]);
        let r = t_dwithin(&a, &b, 2.0).unwrap().unwrap();
        let when = r.when_true().unwrap();
        assert_eq!(when.spans().len(), 1);
        let s = when.spans()[0];
        assert_eq!(s.lower(), TimestampTz::from_ymd_hms(2025, 1, 1, 4, 0, 0).unwrap());
        assert_eq!(s.upper(), TimestampTz::from_ymd_hms(2025, 1, 1, 6, 0, 0).unwrap());
        assert!(s.lower_inc() && s.upper_inc());
    }

    #[test]
    fn dwithin_grazing_contact_is_an_instant() {
        let a = trip(&[(0.0, 0.0, 0), (10.0, 0.0, 10)]);
        let b = trip(&[(0.0, 2.0, 0), (10.0, 2.0, 10)]);
        let r = t_dwithin(&a, &b, 2.0).unwrap().unwrap();
        assert_eq!(r.when_true().unwrap().spans().len(), 1);
        let c = trip(&[(5.0, 2.0, 0), (5.0, -2.0, 10)]);
        let a2 = trip(&[(3.0, 0.0, 0), (3.0, 0.0, 10)]);
        let r = t_dwithin(&a2, &c, 2.0).unwrap().unwrap();
        let when = r.when_true().unwrap();
        assert_eq!(when.spans(), &[Span::singleton(th(5))]);
    }

    #[test]
    fn dwithin_rejects_negative_distance() {
        let a = trip(&[(0.0, 0.0, 0), (1.0, 0.0, 1)]);
        assert!(t_dwithin(&a, &a, -1.0).is_err());
        assert!(e_dwithin(&a, &a, 0.0).unwrap());
    }

    #[test]
    fn tgeometry_constructor() {
        let span = Span::inclusive(th(0), th(5)).unwrap();
        let t = tgeometry_from(&Geometry::point(1.0, 1.0), &span, Interp::Step).unwrap();
        assert_eq!(t.temporal().num_instants(), 2);
        assert_eq!(t.value_at_timestamp(th(3)).unwrap().as_point(), Some(Point::new(1.0, 1.0)));
        let one = tgeometry_from(&Geometry::point(1.0, 1.0), &Span::singleton(th(1)), Interp::Step).unwrap();
        assert_eq!(one.temporal().num_instants(), 1);
    }
}
