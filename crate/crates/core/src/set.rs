//! Ordered, duplicate-free collections of base values.

use std::cmp::Ordering;
use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::time::{Date, Interval, TimestampTz, USECS_PER_DAY};

/// A base type that can be stored in a [`Set`].
pub trait SetElement: Clone + PartialOrd + Debug {
    /// Type tag of the canonical binary layout.
    const TAG: u8;

    /// Appends the element's canonical binary encoding.
    fn encode(&self, out: &mut Vec<u8>);
}

impl SetElement for i32 {
    const TAG: u8 = 1;

    fn encode(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.to_le_bytes());
    }
}

impl SetElement for i64 {
    const TAG: u8 = 2;

    fn encode(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.to_le_bytes());
    }
}

impl SetElement for f64 {
    const TAG: u8 = 3;

    fn encode(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.to_le_bytes());
    }
}

impl SetElement for String {
    const TAG: u8 = 4;

    fn encode(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&(self.len() as u32).to_le_bytes());
        out.extend_from_slice(self.as_bytes());
    }
}

impl SetElement for Date {
    const TAG: u8 = 5;

    fn encode(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.0.to_le_bytes());
    }
}

impl SetElement for TimestampTz {
    const TAG: u8 = 6;

    fn encode(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.0.to_le_bytes());
    }
}

impl SetElement for Point {
    const TAG: u8 = 7;

    fn encode(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.x.to_le_bytes());
        out.extend_from_slice(&self.y.to_le_bytes());
    }
}

/// A non-empty set kept in strictly increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct Set<T> {
    elements: Vec<T>,
}

impl<T: SetElement> Set<T> {
    /// Sorts and deduplicates `elements`. Empty input and unordered values (NaN) are rejected.
    pub fn new(mut elements: Vec<T>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Empty("set"));
        }
        #[allow(clippy::eq_op)]
        if elements.iter().any(|e| e.partial_cmp(e).is_none()) {
            return Err(Error::InvalidArgument("set element is not ordered (NaN)".into()));
        }
        elements.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        elements.dedup_by(|a, b| a == b);
        Ok(Set { elements })
    }

    /// `value_to_set`: the singleton set `{value}`.
    pub fn singleton(value: T) -> Self {
        Set {
            elements: vec![value],
        }
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn start(&self) -> &T {
        &self.elements[0]
    }

    pub fn end(&self) -> &T {
        &self.elements[self.elements.len() - 1]
    }

    pub fn contains(&self, value: &T) -> bool {
        self.elements
            .binary_search_by(|e| e.partial_cmp(value).unwrap_or(Ordering::Less))
            .is_ok()
    }

    /// Canonical binary layout: tag byte, little-endian `u32` count, then the elements.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(5 + self.elements.len() * 8);
        out.push(T::TAG);
        out.extend_from_slice(&(self.elements.len() as u32).to_le_bytes());
        for e in &self.elements {
            e.encode(&mut out);
        }
        out
    }

    /// Size in bytes of [`Set::to_bytes`].
    pub fn mem_size(&self) -> usize {
        self.to_bytes().len()
    }
}

/// A set of points with an optional spatial reference identifier.
#[derive(Debug, Clone, PartialEq)]
pub struct GeomSet {
    pub points: Set<Point>,
    pub srid: Option<i32>,
}

impl GeomSet {
    pub fn new(points: Set<Point>, srid: Option<i32>) -> Self {
        GeomSet { points, srid }
    }

    /// Canonical binary layout with a little-endian SRID (0 when absent) after the count.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = self.points.to_bytes();
        let srid = self.srid.unwrap_or(0).to_le_bytes();
        out.splice(5..5, srid);
        out
    }

    pub fn mem_size(&self) -> usize {
        self.to_bytes().len()
    }
}

/// Element types supporting `shiftScale`.
pub trait ShiftScale: SetElement + Copy {
    type Delta: Copy + Debug;

    fn is_positive(delta: Self::Delta) -> bool;
    fn shift(self, by: Self::Delta) -> Result<Self>;
    fn distance(from: Self, to: Self) -> Self::Delta;
    /// Maps `self` from a range starting at `origin` of width `old_width` onto one
    /// starting at `new_origin` of width `new_width`.
    fn rescale(
        self,
        origin: Self,
        old_width: Self::Delta,
        new_origin: Self,
        new_width: Self::Delta,
    ) -> Result<Self>;
}

fn rescale_i128(offset: i128, old_width: i128, new_width: i128) -> i128 {
    // round half away from zero
    let num = offset * new_width;
    let q = num / old_width;
    let r = num % old_width;
    if 2 * r.abs() >= old_width.abs() {
        q + num.signum() * old_width.signum()
    } else {
        q
    }
}

macro_rules! integer_shift_scale {
    ($t:ty) => {
        impl ShiftScale for $t {
            type Delta = $t;

            fn is_positive(delta: $t) -> bool {
                delta > 0
            }

            fn shift(self, by: $t) -> Result<Self> {
                self.checked_add(by)
                    .ok_or_else(|| Error::OutOfRange(format!("{self} + {by}")))
            }

            fn distance(from: Self, to: Self) -> $t {
                to - from
            }

            fn rescale(self, origin: Self, old_width: $t, new_origin: Self, new_width: $t) -> Result<Self> {
                let scaled = rescale_i128(
                    self as i128 - origin as i128,
                    old_width as i128,
                    new_width as i128,
                );
                <$t>::try_from(new_origin as i128 + scaled)
                    .map_err(|_| Error::OutOfRange("shiftScale result".into()))
            }
        }
    };
}

integer_shift_scale!(i32);
integer_shift_scale!(i64);

impl ShiftScale for f64 {
    type Delta = f64;

    fn is_positive(delta: f64) -> bool {
        delta > 0.0
    }

    fn shift(self, by: f64) -> Result<Self> {
        Ok(self + by)
    }

    fn distance(from: Self, to: Self) -> f64 {
        to - from
    }

    fn rescale(self, origin: Self, old_width: f64, new_origin: Self, new_width: f64) -> Result<Self> {
        Ok(new_origin + (self - origin) * new_width / old_width)
    }
}

impl ShiftScale for TimestampTz {
    type Delta = Interval;

    fn is_positive(delta: Interval) -> bool {
        delta.micros() > 0
    }

    fn shift(self, by: Interval) -> Result<Self> {
        self.checked_add(by)
            .ok_or_else(|| Error::OutOfRange("timestamp overflow".into()))
    }

    fn distance(from: Self, to: Self) -> Interval {
        to - from
    }

    fn rescale(
        self,
        origin: Self,
        old_width: Interval,
        new_origin: Self,
        new_width: Interval,
    ) -> Result<Self> {
        let scaled = rescale_i128(
            self.micros() as i128 - origin.micros() as i128,
            old_width.micros() as i128,
            new_width.micros() as i128,
        );
        i64::try_from(new_origin.micros() as i128 + scaled)
            .map(TimestampTz)
            .map_err(|_| Error::OutOfRange("timestamp overflow".into()))
    }
}

impl<T: ShiftScale> Set<T> {
    /// Shifts the set so it starts at `start + shift` and rescales it so its extent
    /// becomes `width`. Single-element sets ignore `width`.
    pub fn shift_scale(&self, shift: Option<T::Delta>, width: Option<T::Delta>) -> Result<Self> {
        if shift.is_none() && width.is_none() {
            return Err(Error::InvalidArgument(
                "shiftScale needs a shift or a width".into(),
            ));
        }
        if let Some(w) = width {
            if !T::is_positive(w) {
                return Err(Error::InvalidArgument(format!(
                    "width must be positive, got {w:?}"
                )));
            }
        }
        let origin = *self.start();
        let new_origin = match shift {
            Some(by) => origin.shift(by)?,
            None => origin,
        };
        let old_width = T::distance(origin, *self.end());
        let elements = match width {
            Some(w) if self.len() > 1 => self
                .elements
                .iter()
                .map(|e| e.rescale(origin, old_width, new_origin, w))
                .collect::<Result<Vec<_>>>()?,
            _ => match shift {
                Some(by) => self
                    .elements
                    .iter()
                    .map(|e| e.shift(by))
                    .collect::<Result<Vec<_>>>()?,
                None => self.elements.clone(),
            },
        };
        Set::new(elements)
    }
}

/// Conversions between set types (`intset::floatset`, `tstzset::dateset`, ...).
pub trait CastSet<Target> {
    fn cast_set(&self) -> Result<Set<Target>>;
}

impl CastSet<f64> for Set<i32> {
    fn cast_set(&self) -> Result<Set<f64>> {
        Set::new(self.elements.iter().map(|&v| v as f64).collect())
    }
}

impl CastSet<i32> for Set<f64> {
    /// Rounds half away from zero, then deduplicates.
    fn cast_set(&self) -> Result<Set<i32>> {
        let ints = self
            .elements
            .iter()
            .map(|&v| {
                let r = v.round();
                if r < i32::MIN as f64 || r > i32::MAX as f64 {
                    Err(Error::OutOfRange(format!("{v} does not fit in an integer")))
                } else {
                    Ok(r as i32)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Set::new(ints)
    }
}

impl CastSet<TimestampTz> for Set<Date> {
    fn cast_set(&self) -> Result<Set<TimestampTz>> {
        Set::new(self.elements.iter().map(|d| d.to_timestamp()).collect())
    }
}

impl CastSet<Date> for Set<TimestampTz> {
    /// Truncates each timestamp to its UTC date, then deduplicates.
    fn cast_set(&self) -> Result<Set<Date>> {
        Set::new(
            self.elements
                .iter()
                .map(|t| Date(t.micros().div_euclid(USECS_PER_DAY) as i32))
                .collect(),
        )
    }
}
