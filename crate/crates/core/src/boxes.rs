//! Bounding boxes: `STBox` over x, y and time, `TBox` over a numeric value and time.

use crate::error::{check_srid, Error, Result};
use crate::geom::Rect;
use crate::span::{Span, SpanValue};
use crate::time::{Interval, TimestampTz};

/// Spatiotemporal box. Spatial bounds are closed; the time span keeps its
/// inclusivity flags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct STBox {
    rect: Option<Rect>,
    period: Option<Span<TimestampTz>>,
    srid: Option<i32>,
}

impl STBox {
    pub fn new(rect: Option<Rect>, period: Option<Span<TimestampTz>>, srid: Option<i32>) -> Result<Self> {
        if rect.is_none() && period.is_none() {
            return Err(Error::Empty("spatiotemporal box"));
        }
        Ok(STBox { rect, period, srid })
    }

    pub fn xy(rect: Rect, srid: Option<i32>) -> Self {
        STBox {
            rect: Some(rect),
            period: None,
            srid,
        }
    }

    pub fn xyt(rect: Rect, period: Span<TimestampTz>, srid: Option<i32>) -> Self {
        STBox {
            rect: Some(rect),
            period: Some(period),
            srid,
        }
    }

    pub fn t(period: Span<TimestampTz>) -> Self {
        STBox {
            rect: None,
            period: Some(period),
            srid: None,
        }
    }

    pub fn rect(&self) -> Option<&Rect> {
        self.rect.as_ref()
    }

    pub fn period(&self) -> Option<&Span<TimestampTz>> {
        self.period.as_ref()
    }

    pub fn srid(&self) -> Option<i32> {
        self.srid
    }

    pub fn has_xy(&self) -> bool {
        self.rect.is_some()
    }

    pub fn has_t(&self) -> bool {
        self.period.is_some()
    }

    fn check_srid(&self, other: &STBox) -> Result<()> {
        if self.has_xy() && other.has_xy() {
            check_srid(self.srid, other.srid)
        } else {
            Ok(())
        }
    }

    /// The `&&` operator. Dimensions missing from either side are ignored, so two
    /// boxes with no dimension in common overlap.
    pub fn overlaps(&self, other: &STBox) -> Result<bool> {
        self.check_srid(other)?;
        Ok(self.overlaps_unchecked(other))
    }

    pub(crate) fn overlaps_unchecked(&self, other: &STBox) -> bool {
        if let (Some(a), Some(b)) = (&self.rect, &other.rect) {
            if !a.intersects(b) {
                return false;
            }
        }
        if let (Some(a), Some(b)) = (&self.period, &other.period) {
            if !a.overlaps(b) {
                return false;
            }
        }
        true
    }

    /// Every dimension present in both boxes has `other` within `self`.
    pub fn contains(&self, other: &STBox) -> Result<bool> {
        self.check_srid(other)?;
        if let (Some(a), Some(b)) = (&self.rect, &other.rect) {
            if !a.contains(b) {
                return Ok(false);
            }
        }
        if let (Some(a), Some(b)) = (&self.period, &other.period) {
            if !a.contains_span(b) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn union_mbr(&self, other: &STBox) -> Result<STBox> {
        if self.has_xy() != other.has_xy() || self.has_t() != other.has_t() {
            return Err(Error::DimensionMismatch);
        }
        self.check_srid(other)?;
        Ok(self.union_unchecked(other))
    }

    /// Hull of two boxes; a dimension survives only if both sides have it.
    pub(crate) fn union_unchecked(&self, other: &STBox) -> STBox {
        let rect = match (&self.rect, &other.rect) {
            (Some(a), Some(b)) => Some(a.union(b)),
            _ => None,
        };
        let period = match (&self.period, &other.period) {
            (Some(a), Some(b)) => Some(a.hull(b)),
            _ => None,
        };
        STBox {
            rect,
            period,
            srid: self.srid,
        }
    }

    /// Widens x and y by `d` on each side.
    pub fn expand_space(&self, d: f64) -> Result<STBox> {
        let r = self.rect.ok_or(Error::MissingSpatialDimension)?;
        let rect = Rect::new(r.xmin - d, r.ymin - d, r.xmax + d, r.ymax + d)?;
        Ok(STBox {
            rect: Some(rect),
            ..*self
        })
    }

    pub fn expand_time(&self, by: Interval) -> Result<STBox> {
        let period = self.period.ok_or(Error::MissingTimeDimension)?;
        Ok(STBox {
            period: Some(period.expand(by)?),
            ..*self
        })
    }

    /// Area of the spatial extent, 0 without one.
    pub fn area(&self) -> f64 {
        self.rect.map_or(0.0, |r| r.area())
    }
}

/// Numeric value range of a `TBox`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TBoxValue {
    Int(Span<i32>),
    Float(Span<f64>),
}

/// Temporal box over a numeric value and time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TBox {
    value: Option<TBoxValue>,
    period: Option<Span<TimestampTz>>,
}

impl TBox {
    pub fn new(value: Option<TBoxValue>, period: Option<Span<TimestampTz>>) -> Result<Self> {
        if value.is_none() && period.is_none() {
            return Err(Error::Empty("temporal box"));
        }
        Ok(TBox { value, period })
    }

    pub fn value(&self) -> Option<&TBoxValue> {
        self.value.as_ref()
    }

    pub fn period(&self) -> Option<&Span<TimestampTz>> {
        self.period.as_ref()
    }

    pub fn expand_time(&self, by: Interval) -> Result<TBox> {
        let period = self.period.ok_or(Error::MissingTimeDimension)?;
        Ok(TBox {
            period: Some(period.expand(by)?),
            ..*self
        })
    }

    pub fn overlaps(&self, other: &TBox) -> Result<bool> {
        let value = match (&self.value, &other.value) {
            (Some(TBoxValue::Int(a)), Some(TBoxValue::Int(b))) => a.overlaps(b),
            (Some(TBoxValue::Float(a)), Some(TBoxValue::Float(b))) => a.overlaps(b),
            (Some(_), Some(_)) => return Err(Error::DimensionMismatch),
            _ => true,
        };
        Ok(value && opt_overlaps(&self.period, &other.period))
    }
}

fn opt_overlaps<T: SpanValue>(a: &Option<Span<T>>, b: &Option<Span<T>>) -> bool {
    match (a, b) {
        (Some(a), Some(b)) => a.overlaps(b),
        _ => true,
    }
}
