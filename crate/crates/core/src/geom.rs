//! Planar geometry: points, linestrings, polygons and collections with an
//! optional SRID, plus the distance and intersection kernels used by the
//! temporal point operators.

use crate::error::{check_srid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub(crate) fn lerp(&self, other: &Point, ratio: f64) -> Point {
        Point {
            x: self.x + (other.x - self.x) * ratio,
            y: self.y + (other.y - self.y) * ratio,
        }
    }

    fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// An axis-aligned rectangle with closed bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub xmin: f64,
    pub ymin: f64,
    pub xmax: f64,
    pub ymax: f64,
}

impl Rect {
    pub fn new(xmin: f64, ymin: f64, xmax: f64, ymax: f64) -> Result<Self> {
        if !(xmin <= xmax && ymin <= ymax) {
            return Err(Error::InvalidBounds(format!(
                "rectangle (({xmin},{ymin}),({xmax},{ymax})) has min > max or NaN"
            )));
        }
        Ok(Rect {
            xmin,
            ymin,
            xmax,
            ymax,
        })
    }

    pub fn of_point(p: Point) -> Self {
        Rect {
            xmin: p.x,
            ymin: p.y,
            xmax: p.x,
            ymax: p.y,
        }
    }

    pub fn expand_to(&mut self, p: Point) {
        self.xmin = self.xmin.min(p.x);
        self.ymin = self.ymin.min(p.y);
        self.xmax = self.xmax.max(p.x);
        self.ymax = self.ymax.max(p.y);
    }

    pub fn union(&self, other: &Rect) -> Rect {
        Rect {
            xmin: self.xmin.min(other.xmin),
            ymin: self.ymin.min(other.ymin),
            xmax: self.xmax.max(other.xmax),
            ymax: self.ymax.max(other.ymax),
        }
    }

    pub fn intersects(&self, other: &Rect) -> bool {
        self.xmin <= other.xmax
            && other.xmin <= self.xmax
            && self.ymin <= other.ymax
            && other.ymin <= self.ymax
    }

    pub fn contains(&self, other: &Rect) -> bool {
        self.xmin <= other.xmin
            && other.xmax <= self.xmax
            && self.ymin <= other.ymin
            && other.ymax <= self.ymax
    }

    pub fn area(&self) -> f64 {
        (self.xmax - self.xmin) * (self.ymax - self.ymin)
    }

    /// Minimum distance between two rectangles (0 when they intersect).
    pub fn distance(&self, other: &Rect) -> f64 {
        let dx = (other.xmin - self.xmax).max(self.xmin - other.xmax).max(0.0);
        let dy = (other.ymin - self.ymax).max(self.ymin - other.ymax).max(0.0);
        dx.hypot(dy)
    }

    fn of_points(points: &[Point]) -> Rect {
        let mut r = Rect::of_point(points[0]);
        for p in &points[1..] {
            r.expand_to(*p);
        }
        r
    }
}

/// A polygon: an outer ring followed by zero or more holes. Rings are closed.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    rings: Vec<Vec<Point>>,
}

impl Polygon {
    pub fn new(rings: Vec<Vec<Point>>) -> Result<Self> {
        if rings.is_empty() {
            return Err(Error::InvalidGeometry("polygon needs an outer ring".into()));
        }
        for ring in &rings {
            if ring.len() < 4 {
                return Err(Error::InvalidGeometry(
                    "polygon ring needs at least 4 points".into(),
                ));
            }
            if ring[0] != ring[ring.len() - 1] {
                return Err(Error::InvalidGeometry("polygon ring is not closed".into()));
            }
        }
        Ok(Polygon { rings })
    }

    /// Axis-aligned rectangle polygon.
    pub fn rectangle(rect: Rect) -> Self {
        let Rect {
            xmin,
            ymin,
            xmax,
            ymax,
        } = rect;
        Polygon {
            rings: vec![vec![
                Point::new(xmin, ymin),
                Point::new(xmax, ymin),
                Point::new(xmax, ymax),
                Point::new(xmin, ymax),
                Point::new(xmin, ymin),
            ]],
        }
    }

    pub fn rings(&self) -> &[Vec<Point>] {
        &self.rings
    }

    pub fn exterior(&self) -> &[Point] {
        &self.rings[0]
    }

    fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.rings
            .iter()
            .flat_map(|ring| ring.windows(2).map(|w| (w[0], w[1])))
    }

    pub fn bounds(&self) -> Rect {
        Rect::of_points(&self.rings[0])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Point(Point),
    LineString(Vec<Point>),
    Polygon(Polygon),
    Collection(Vec<Shape>),
}

impl Shape {
    fn validate(&self) -> Result<()> {
        match self {
            Shape::Point(p) => check_finite(std::slice::from_ref(p)),
            Shape::LineString(points) => {
                if points.len() < 2 {
                    return Err(Error::InvalidGeometry(
                        "linestring needs at least 2 points".into(),
                    ));
                }
                check_finite(points)
            }
            Shape::Polygon(poly) => poly.rings.iter().try_for_each(|r| check_finite(r)),
            Shape::Collection(items) => {
                if items.is_empty() {
                    return Err(Error::InvalidGeometry("empty geometry collection".into()));
                }
                items.iter().try_for_each(Shape::validate)
            }
        }
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            Shape::Point(_) => "POINT",
            Shape::LineString(_) => "LINESTRING",
            Shape::Polygon(_) => "POLYGON",
            Shape::Collection(_) => "GEOMETRYCOLLECTION",
        }
    }

    pub fn bounds(&self) -> Rect {
        match self {
            Shape::Point(p) => Rect::of_point(*p),
            Shape::LineString(points) => Rect::of_points(points),
            Shape::Polygon(poly) => poly.bounds(),
            Shape::Collection(items) => items[1..]
                .iter()
                .fold(items[0].bounds(), |acc, s| acc.union(&s.bounds())),
        }
    }

    fn collect_primitives<'a>(&'a self, out: &mut Vec<Primitive<'a>>) {
        match self {
            Shape::Point(p) => out.push(Primitive::Point(*p)),
            Shape::LineString(points) => out.push(Primitive::Line(points)),
            Shape::Polygon(poly) => out.push(Primitive::Polygon(poly)),
            Shape::Collection(items) => items.iter().for_each(|s| s.collect_primitives(out)),
        }
    }

    fn length(&self) -> f64 {
        match self {
            Shape::LineString(points) => polyline_length(points),
            Shape::Collection(items) => items.iter().map(Shape::length).sum(),
            Shape::Point(_) | Shape::Polygon(_) => 0.0,
        }
    }
}

fn check_finite(points: &[Point]) -> Result<()> {
    if points.iter().all(Point::is_finite) {
        Ok(())
    } else {
        Err(Error::InvalidGeometry("non-finite coordinate".into()))
    }
}

pub(crate) fn polyline_length(points: &[Point]) -> f64 {
    points.windows(2).map(|w| w[0].distance(&w[1])).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Geometry {
    shape: Shape,
    srid: Option<i32>,
}

impl Geometry {
    pub fn new(shape: Shape, srid: Option<i32>) -> Result<Self> {
        shape.validate()?;
        Ok(Geometry { shape, srid })
    }

    pub fn point(x: f64, y: f64) -> Self {
        Geometry {
            shape: Shape::Point(Point::new(x, y)),
            srid: None,
        }
    }

    pub fn from_point(p: Point, srid: Option<i32>) -> Self {
        Geometry {
            shape: Shape::Point(p),
            srid,
        }
    }

    pub fn line_string(points: Vec<Point>, srid: Option<i32>) -> Result<Self> {
        Geometry::new(Shape::LineString(points), srid)
    }

    pub fn polygon(polygon: Polygon, srid: Option<i32>) -> Self {
        Geometry {
            shape: Shape::Polygon(polygon),
            srid,
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn srid(&self) -> Option<i32> {
        self.srid
    }

    pub fn with_srid(mut self, srid: Option<i32>) -> Self {
        self.srid = srid;
        self
    }

    pub fn as_point(&self) -> Option<Point> {
        match self.shape {
            Shape::Point(p) => Some(p),
            _ => None,
        }
    }

    pub fn bounds(&self) -> Rect {
        self.shape.bounds()
    }

    /// Total length of the linear components.
    pub fn length(&self) -> f64 {
        self.shape.length()
    }

    fn primitives(&self) -> Vec<Primitive<'_>> {
        let mut out = Vec::new();
        self.shape.collect_primitives(&mut out);
        out
    }
}

/// Minimum Euclidean distance between two geometries, 0 when they intersect.
pub fn distance(a: &Geometry, b: &Geometry) -> Result<f64> {
    check_srid(a.srid, b.srid)?;
    let pa = a.primitives();
    let pb = b.primitives();
    let ba: Vec<Rect> = pa.iter().map(Primitive::bounds).collect();
    let bb: Vec<Rect> = pb.iter().map(Primitive::bounds).collect();
    let mut best = f64::INFINITY;
    for (x, rx) in pa.iter().zip(&ba) {
        for (y, ry) in pb.iter().zip(&bb) {
            if rx.distance(ry) >= best {
                continue;
            }
            best = best.min(x.distance(y, best));
            if best == 0.0 {
                return Ok(0.0);
            }
        }
    }
    Ok(best)
}

/// True iff the geometries share at least one point. Boundaries count.
pub fn intersects(a: &Geometry, b: &Geometry) -> Result<bool> {
    check_srid(a.srid, b.srid)?;
    let pa = a.primitives();
    let pb = b.primitives();
    Ok(pa.iter().any(|x| {
        let rx = x.bounds();
        pb.iter()
            .any(|y| rx.intersects(&y.bounds()) && x.intersects(y))
    }))
}

/// Gathers geometries into a collection, preserving order and SRID.
pub fn collect(geoms: &[Geometry]) -> Result<Geometry> {
    let Some(first) = geoms.first() else {
        return Err(Error::Empty("geometry list"));
    };
    for g in &geoms[1..] {
        check_srid(first.srid, g.srid)?;
    }
    Ok(Geometry {
        shape: Shape::Collection(geoms.iter().map(|g| g.shape.clone()).collect()),
        srid: first.srid,
    })
}

/// Even-odd point-in-polygon test; points on any ring boundary count as inside.
pub fn point_in_polygon(p: Point, poly: &Polygon) -> bool {
    if poly.edges().any(|(a, b)| on_segment(a, b, p)) {
        return true;
    }
    let mut inside = false;
    for (a, b) in poly.edges() {
        if (a.y > p.y) != (b.y > p.y) {
            let x_cross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
            if p.x < x_cross {
                inside = !inside;
            }
        }
    }
    inside
}

#[derive(Debug, Clone, Copy)]
enum Primitive<'a> {
    Point(Point),
    Line(&'a [Point]),
    Polygon(&'a Polygon),
}

impl Primitive<'_> {
    fn bounds(&self) -> Rect {
        match self {
            Primitive::Point(p) => Rect::of_point(*p),
            Primitive::Line(points) => Rect::of_points(points),
            Primitive::Polygon(poly) => poly.bounds(),
        }
    }

    fn vertices(&self) -> &[Point] {
        match self {
            Primitive::Point(p) => std::slice::from_ref(p),
            Primitive::Line(points) => points,
            Primitive::Polygon(poly) => poly.exterior(),
        }
    }

    /// Segments of the primitive; a point yields one degenerate segment.
    fn segments(&self) -> Box<dyn Iterator<Item = (Point, Point)> + '_> {
        match self {
            Primitive::Point(p) => Box::new(std::iter::once((*p, *p))),
            Primitive::Line(points) => Box::new(points.windows(2).map(|w| (w[0], w[1]))),
            Primitive::Polygon(poly) => Box::new(poly.edges()),
        }
    }

    fn as_polygon(&self) -> Option<&Polygon> {
        match self {
            Primitive::Polygon(poly) => Some(poly),
            _ => None,
        }
    }

    fn intersects(&self, other: &Primitive<'_>) -> bool {
        if let Some(poly) = other.as_polygon() {
            if self.vertices().iter().any(|v| point_in_polygon(*v, poly)) {
                return true;
            }
        }
        if let Some(poly) = self.as_polygon() {
            if other.vertices().iter().any(|v| point_in_polygon(*v, poly)) {
                return true;
            }
        }
        self.segments().any(|(a, b)| {
            other
                .segments()
                .any(|(c, d)| segments_intersect(a, b, c, d))
        })
    }

    /// Distance to `other`; `bound` is the best distance known so far, used to skip work.
    fn distance(&self, other: &Primitive<'_>, bound: f64) -> f64 {
        if self.intersects(other) {
            return 0.0;
        }
        let mut best = bound;
        for (a, b) in self.segments() {
            let seg = Rect::of_points(&[a, b]);
            for (c, d) in other.segments() {
                if seg.distance(&Rect::of_points(&[c, d])) >= best {
                    continue;
                }
                best = best.min(segment_distance(a, b, c, d));
            }
        }
        best
    }
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// `p` lies on the closed segment `ab`.
fn on_segment(a: Point, b: Point, p: Point) -> bool {
    orient(a, b, p) == 0.0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

pub(crate) fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    on_segment(c, d, a) || on_segment(c, d, b) || on_segment(a, b, c) || on_segment(a, b, d)
}

pub(crate) fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let dx = b.x - a.x;
    let dy = b.y - a.y;
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return p.distance(&a);
    }
    let t = (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0);
    p.distance(&Point::new(a.x + t * dx, a.y + t * dy))
}

fn segment_distance(a: Point, b: Point, c: Point, d: Point) -> f64 {
    if segments_intersect(a, b, c, d) {
        return 0.0;
    }
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}

/// Parameters `f ∈ [0, 1]` along segment `ab` where it meets segment `cd`
/// (both ends of the shared part when collinear).
pub(crate) fn segment_crossings(a: Point, b: Point, c: Point, d: Point, out: &mut Vec<f64>) {
    let r = Point::new(b.x - a.x, b.y - a.y);
    let s = Point::new(d.x - c.x, d.y - c.y);
    let denom = r.x * s.y - r.y * s.x;
    let qp = Point::new(c.x - a.x, c.y - a.y);
    let rr = r.x * r.x + r.y * r.y;
    if rr == 0.0 {
        return;
    }
    if denom == 0.0 {
        if qp.x * r.y - qp.y * r.x != 0.0 {
            return; // parallel, not collinear
        }
        for e in [c, d] {
            let f = ((e.x - a.x) * r.x + (e.y - a.y) * r.y) / rr;
            if (0.0..=1.0).contains(&f) {
                out.push(f);
            }
        }
        for (f, e) in [(0.0, a), (1.0, b)] {
            if on_segment(c, d, e) {
                out.push(f);
            }
        }
        return;
    }
    let f = (qp.x * s.y - qp.y * s.x) / denom;
    let g = (qp.x * r.y - qp.y * r.x) / denom;
    if (0.0..=1.0).contains(&f) && (0.0..=1.0).contains(&g) {
        out.push(f);
    }
}

/// Closed parameter intervals of segment `ab` lying inside `poly` (boundary included).
pub(crate) fn segment_inside_intervals(a: Point, b: Point, poly: &Polygon) -> Vec<(f64, f64)> {
    let mut cuts = vec![0.0, 1.0];
    for (c, d) in poly.edges() {
        segment_crossings(a, b, c, d, &mut cuts);
    }
    cuts.sort_by(|x, y| x.total_cmp(y));
    cuts.dedup();
    // Crossing parameters lie on the boundary, hence inside; the segment ends are tested.
    let boundary: Vec<bool> = cuts
        .iter()
        .enumerate()
        .map(|(i, &f)| {
            let is_end = i == 0 || i == cuts.len() - 1;
            !is_end || point_in_polygon(a.lerp(&b, f), poly)
        })
        .collect();
    let mut out: Vec<(f64, f64)> = Vec::new();
    let push = |lo: f64, hi: f64, out: &mut Vec<(f64, f64)>| match out.last_mut() {
        Some(last) if last.1 >= lo => last.1 = last.1.max(hi),
        _ => out.push((lo, hi)),
    };
    for i in 0..cuts.len() {
        let f = cuts[i];
        if boundary[i] {
            push(f, f, &mut out);
        }
        if i + 1 < cuts.len() {
            let mid = a.lerp(&b, (f + cuts[i + 1]) / 2.0);
            if point_in_polygon(mid, poly) {
                push(f, cuts[i + 1], &mut out);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> Polygon {
        Polygon::rectangle(Rect::new(0.0, 0.0, 1.0, 1.0).unwrap())
    }

    #[test]
    fn point_distance_345() {
        let d = distance(&Geometry::point(0.0, 0.0), &Geometry::point(3.0, 4.0)).unwrap();
        assert_eq!(d, 5.0);
        let g = Geometry::line_string(vec![Point::new(0.0, 0.0), Point::new(2.0, 2.0)], None)
            .unwrap();
        assert_eq!(distance(&g, &g).unwrap(), 0.0);
    }

    #[test]
    fn srid_mismatch_is_an_error() {
        let a = Geometry::point(0.0, 0.0).with_srid(Some(4326));
        let b = Geometry::point(0.0, 0.0);
        assert!(matches!(distance(&a, &b), Err(Error::SridMismatch { .. })));
        assert!(intersects(&a, &b).is_err());
    }

    #[test]
    fn point_in_polygon_basics() {
        let sq = unit_square();
        assert!(point_in_polygon(Point::new(0.5, 0.5), &sq));
        assert!(point_in_polygon(Point::new(1.0, 0.5), &sq));
        assert!(point_in_polygon(Point::new(0.0, 0.0), &sq));
        assert!(!point_in_polygon(Point::new(2.0, 0.5), &sq));
        let with_hole = Polygon::new(vec![
            unit_square().exterior().to_vec(),
            Polygon::rectangle(Rect::new(0.25, 0.25, 0.75, 0.75).unwrap())
                .exterior()
                .to_vec(),
        ])
        .unwrap();
        assert!(!point_in_polygon(Point::new(0.5, 0.5), &with_hole));
        assert!(point_in_polygon(Point::new(0.1, 0.5), &with_hole));
        assert!(point_in_polygon(Point::new(0.25, 0.5), &with_hole));
    }

    #[test]
    fn intersects_segment_crossing_polygon() {
        let sq = Geometry::polygon(unit_square(), None);
        let line = Geometry::line_string(vec![Point::new(-1.0, 0.5), Point::new(2.0, 0.5)], None)
            .unwrap();
        assert!(intersects(&sq, &line).unwrap());
        assert!(intersects(&line, &sq).unwrap());
        let far = Geometry::point(10.0, 10.0);
        assert!(!intersects(&sq, &far).unwrap());
        assert!(distance(&sq, &far).unwrap() > 0.0);
        let inner = Geometry::polygon(
            Polygon::rectangle(Rect::new(0.2, 0.2, 0.3, 0.3).unwrap()),
            None,
        );
        assert!(intersects(&sq, &inner).unwrap());
    }

    #[test]
    fn collect_preserves_order_and_srid() {
        let a = Geometry::point(1.0, 1.0).with_srid(Some(3812));
        let b = Geometry::point(2.0, 2.0).with_srid(Some(3812));
        let c = collect(&[a.clone(), b]).unwrap();
        assert_eq!(c.srid(), Some(3812));
        match c.shape() {
            Shape::Collection(items) => {
                assert_eq!(items.len(), 2);
                assert_eq!(items[0], Shape::Point(Point::new(1.0, 1.0)));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(collect(&[]).is_err());
        assert!(collect(&[a, Geometry::point(0.0, 0.0)]).is_err());
    }

    #[test]
    fn validation() {
        assert!(Geometry::line_string(vec![Point::new(0.0, 0.0)], None).is_err());
        assert!(Polygon::new(vec![vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0)
        ]])
        .is_err());
        assert!(Geometry::new(Shape::Collection(vec![]), None).is_err());
    }

    #[test]
    fn inside_intervals_of_crossing_segment() {
        let sq = unit_square();
        let iv = segment_inside_intervals(Point::new(-1.0, 0.5), Point::new(3.0, 0.5), &sq);
        assert_eq!(iv, vec![(0.25, 0.5)]);
        // Touching a corner produces a single-point interval.
        let iv = segment_inside_intervals(Point::new(-1.0, 0.0), Point::new(1.0, 2.0), &sq);
        assert_eq!(iv, vec![(0.5, 0.5)]);
        let iv = segment_inside_intervals(Point::new(0.2, 0.2), Point::new(0.8, 0.8), &sq);
        assert_eq!(iv, vec![(0.0, 1.0)]);
        let iv = segment_inside_intervals(Point::new(5.0, 5.0), Point::new(6.0, 6.0), &sq);
        assert!(iv.is_empty());
    }
}
