//! Ranges over ordered base types and normalized sets of ranges.

use std::cmp::Ordering;
use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::time::{Date, Interval, TimestampTz};

/// A base type usable as span bounds.
///
/// Discrete types (integers, dates) are canonicalized to `[lower, upper)` form
/// so that `[1, 3]` and `[1, 4)` compare equal.
pub trait SpanValue: Copy + PartialOrd + Debug {
    const DISCRETE: bool;

    /// Successor of a discrete value, `None` on overflow or for continuous types.
    fn successor(self) -> Option<Self> {
        None
    }

    /// Predecessor of a discrete value, used to render canonical bounds inclusively.
    fn predecessor(self) -> Option<Self> {
        None
    }
}

impl SpanValue for i32 {
    const DISCRETE: bool = true;

    fn successor(self) -> Option<Self> {
        self.checked_add(1)
    }

    fn predecessor(self) -> Option<Self> {
        self.checked_sub(1)
    }
}

impl SpanValue for i64 {
    const DISCRETE: bool = true;

    fn successor(self) -> Option<Self> {
        self.checked_add(1)
    }

    fn predecessor(self) -> Option<Self> {
        self.checked_sub(1)
    }
}

impl SpanValue for Date {
    const DISCRETE: bool = true;

    fn successor(self) -> Option<Self> {
        self.0.checked_add(1).map(Date)
    }

    fn predecessor(self) -> Option<Self> {
        self.0.checked_sub(1).map(Date)
    }
}

impl SpanValue for f64 {
    const DISCRETE: bool = false;
}

impl SpanValue for TimestampTz {
    const DISCRETE: bool = false;
}

fn ordering<T: PartialOrd>(a: &T, b: &T) -> Ordering {
    a.partial_cmp(b).expect("span values are totally ordered")
}

/// Orders two lower bounds: at equal values an inclusive bound starts first.
fn cmp_lower<T: SpanValue>(a: T, a_inc: bool, b: T, b_inc: bool) -> Ordering {
    ordering(&a, &b).then_with(|| b_inc.cmp(&a_inc))
}

/// Orders two upper bounds: at equal values an inclusive bound ends last.
fn cmp_upper<T: SpanValue>(a: T, a_inc: bool, b: T, b_inc: bool) -> Ordering {
    ordering(&a, &b).then_with(|| a_inc.cmp(&b_inc))
}

/// A non-empty range `lower .. upper` with inclusivity flags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Span<T> {
    lower: T,
    upper: T,
    lower_inc: bool,
    upper_inc: bool,
}

impl<T: SpanValue> Span<T> {
    pub fn new(lower: T, upper: T, lower_inc: bool, upper_inc: bool) -> Result<Self> {
        #[allow(clippy::eq_op)]
        if lower != lower || upper != upper {
            return Err(Error::InvalidBounds("NaN bound".into()));
        }
        let (mut lower, mut upper, mut lower_inc, mut upper_inc) =
            (lower, upper, lower_inc, upper_inc);
        if T::DISCRETE {
            if !lower_inc {
                lower = lower
                    .successor()
                    .ok_or_else(|| Error::OutOfRange(format!("{lower:?} + 1")))?;
                lower_inc = true;
            }
            if upper_inc {
                upper = upper
                    .successor()
                    .ok_or_else(|| Error::OutOfRange(format!("{upper:?} + 1")))?;
                upper_inc = false;
            }
        }
        match ordering(&lower, &upper) {
            Ordering::Less => {}
            Ordering::Equal if lower_inc && upper_inc => {}
            Ordering::Equal => return Err(Error::InvalidBounds("span is empty".into())),
            Ordering::Greater => {
                return Err(Error::InvalidBounds(
                    "lower bound must be less than or equal to upper bound".into(),
                ))
            }
        }
        Ok(Span {
            lower,
            upper,
            lower_inc,
            upper_inc,
        })
    }

    /// `[lower, upper]`.
    pub fn inclusive(lower: T, upper: T) -> Result<Self> {
        Self::new(lower, upper, true, true)
    }

    /// `[value, value]`.
    pub fn singleton(value: T) -> Self {
        Self::new(value, value, true, true).expect("singleton span is valid")
    }

    pub fn lower(&self) -> T {
        self.lower
    }

    pub fn upper(&self) -> T {
        self.upper
    }

    pub fn lower_inc(&self) -> bool {
        self.lower_inc
    }

    pub fn upper_inc(&self) -> bool {
        self.upper_inc
    }

    /// Upper bound as written in canonical text: discrete spans render inclusively.
    pub(crate) fn display_upper(&self) -> (T, bool) {
        if T::DISCRETE && !self.upper_inc {
            if let Some(prev) = self.upper.predecessor() {
                return (prev, true);
            }
        }
        (self.upper, self.upper_inc)
    }

    pub fn is_singleton(&self) -> bool {
        if T::DISCRETE {
            self.lower.successor() == Some(self.upper)
        } else {
            self.lower == self.upper
        }
    }

    /// The `@>` operator between a span and a value.
    pub fn contains_value(&self, value: T) -> bool {
        let above_lower = match ordering(&self.lower, &value) {
            Ordering::Less => true,
            Ordering::Equal => self.lower_inc,
            Ordering::Greater => false,
        };
        let below_upper = match ordering(&value, &self.upper) {
            Ordering::Less => true,
            Ordering::Equal => self.upper_inc,
            Ordering::Greater => false,
        };
        above_lower && below_upper
    }

    pub fn contains_span(&self, other: &Span<T>) -> bool {
        cmp_lower(self.lower, self.lower_inc, other.lower, other.lower_inc) != Ordering::Greater
            && cmp_upper(self.upper, self.upper_inc, other.upper, other.upper_inc)
                != Ordering::Less
    }

    /// True when `self` ends strictly before `other` starts.
    pub fn is_before(&self, other: &Span<T>) -> bool {
        match ordering(&self.upper, &other.lower) {
            Ordering::Less => true,
            Ordering::Equal => !(self.upper_inc && other.lower_inc),
            Ordering::Greater => false,
        }
    }

    pub fn overlaps(&self, other: &Span<T>) -> bool {
        !self.is_before(other) && !other.is_before(self)
    }

    /// True when the spans do not overlap but their union has no gap.
    pub fn is_adjacent(&self, other: &Span<T>) -> bool {
        let touches = |a: &Span<T>, b: &Span<T>| {
            a.upper == b.lower && (a.upper_inc != b.lower_inc)
        };
        touches(self, other) || touches(other, self)
    }

    pub fn intersection(&self, other: &Span<T>) -> Option<Span<T>> {
        if !self.overlaps(other) {
            return None;
        }
        let (lower, lower_inc) =
            match cmp_lower(self.lower, self.lower_inc, other.lower, other.lower_inc) {
                Ordering::Less => (other.lower, other.lower_inc),
                _ => (self.lower, self.lower_inc),
            };
        let (upper, upper_inc) =
            match cmp_upper(self.upper, self.upper_inc, other.upper, other.upper_inc) {
                Ordering::Greater => (other.upper, other.upper_inc),
                _ => (self.upper, self.upper_inc),
            };
        Span::new(lower, upper, lower_inc, upper_inc).ok()
    }

    /// Smallest span containing both operands.
    pub fn hull(&self, other: &Span<T>) -> Span<T> {
        let (lower, lower_inc) =
            match cmp_lower(self.lower, self.lower_inc, other.lower, other.lower_inc) {
                Ordering::Greater => (other.lower, other.lower_inc),
                _ => (self.lower, self.lower_inc),
            };
        let (upper, upper_inc) =
            match cmp_upper(self.upper, self.upper_inc, other.upper, other.upper_inc) {
                Ordering::Less => (other.upper, other.upper_inc),
                _ => (self.upper, self.upper_inc),
            };
        Span {
            lower,
            upper,
            lower_inc,
            upper_inc,
        }
    }

    pub(crate) fn cmp_by_lower(&self, other: &Span<T>) -> Ordering {
        cmp_lower(self.lower, self.lower_inc, other.lower, other.lower_inc)
    }
}

impl Span<TimestampTz> {
    pub fn duration(&self) -> Interval {
        self.upper - self.lower
    }

    /// Widens the span by `by` on each side.
    pub fn expand(&self, by: Interval) -> Result<Self> {
        let lower = self
            .lower
            .checked_add(-by)
            .ok_or_else(|| Error::OutOfRange("timestamp overflow".into()))?;
        let upper = self
            .upper
            .checked_add(by)
            .ok_or_else(|| Error::OutOfRange("timestamp overflow".into()))?;
        Span::new(lower, upper, self.lower_inc, self.upper_inc)
    }
}

/// A non-empty, sorted list of pairwise disjoint, non-adjacent spans.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanSet<T> {
    spans: Vec<Span<T>>,
}

impl<T: SpanValue> SpanSet<T> {
    /// Sorts and merges overlapping or adjacent spans.
    pub fn new(spans: Vec<Span<T>>) -> Result<Self> {
        if spans.is_empty() {
            return Err(Error::Empty("span set"));
        }
        Ok(SpanSet {
            spans: normalize_spans(spans),
        })
    }

    pub fn from_span(span: Span<T>) -> Self {
        SpanSet { spans: vec![span] }
    }

    pub fn spans(&self) -> &[Span<T>] {
        &self.spans
    }

    pub fn num_spans(&self) -> usize {
        self.spans.len()
    }

    pub fn span(&self) -> Span<T> {
        let first = self.spans[0];
        let last = self.spans[self.spans.len() - 1];
        first.hull(&last)
    }

    pub fn contains_value(&self, value: T) -> bool {
        self.spans.iter().any(|s| s.contains_value(value))
    }

    pub fn union(&self, other: &SpanSet<T>) -> SpanSet<T> {
        let mut all = self.spans.clone();
        all.extend_from_slice(&other.spans);
        SpanSet {
            spans: normalize_spans(all),
        }
    }
}

impl SpanSet<TimestampTz> {
    /// Sum of the durations of the component spans.
    pub fn duration(&self) -> Interval {
        self.spans.iter().map(|s| s.duration()).sum()
    }
}

/// Sorts spans by lower bound and merges those that overlap or touch.
pub fn normalize_spans<T: SpanValue>(mut spans: Vec<Span<T>>) -> Vec<Span<T>> {
    spans.sort_by(|a, b| a.cmp_by_lower(b));
    let mut out: Vec<Span<T>> = Vec::with_capacity(spans.len());
    for span in spans {
        match out.last_mut() {
            Some(last) if !last.is_before(&span) || last.is_adjacent(&span) => {
                *last = last.hull(&span);
            }
            _ => out.push(span),
        }
    }
    out
}

/// Builds a normalized span set, `None` for an empty input.
pub fn spanset_union_normalize<T: SpanValue>(spans: Vec<Span<T>>) -> Option<SpanSet<T>> {
    SpanSet::new(spans).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(day: u32) -> TimestampTz {
        TimestampTz::from_ymd_hms(2025, 1, day, 0, 0, 0).unwrap()
    }

    #[test]
    fn discrete_spans_are_canonical() {
        let a = Span::new(1, 3, true, true).unwrap();
        let b = Span::new(1, 4, true, false).unwrap();
        let c = Span::new(0, 3, false, true).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.upper(), 4);
        assert_eq!(a.display_upper(), (3, true));
        assert!(Span::singleton(3).is_singleton());
    }

    #[test]
    fn empty_and_inverted_spans_rejected() {
        assert!(Span::new(2.0, 1.0, true, true).is_err());
        assert!(Span::new(1.0, 1.0, true, false).is_err());
        assert!(Span::new(1, 2, false, false).is_err());
        assert!(Span::new(f64::NAN, 1.0, true, true).is_err());
        assert!(Span::new(1.0, 1.0, true, true).is_ok());
    }

    #[test]
    fn contains_respects_inclusivity() {
        let closed = Span::inclusive(ts(1), ts(3)).unwrap();
        assert!(closed.contains_value(ts(2)));
        assert!(closed.contains_value(ts(3)));
        let half_open = Span::new(ts(1), ts(3), true, false).unwrap();
        assert!(!half_open.contains_value(ts(3)));
        assert!(half_open.contains_value(ts(1)));
        assert!(!half_open.contains_value(ts(4)));
    }

    #[test]
    fn union_merges_overlaps_and_adjacency() {
        let ss = SpanSet::new(vec![
            Span::inclusive(2.0, 5.0).unwrap(),
            Span::inclusive(1.0, 3.0).unwrap(),
        ])
        .unwrap();
        assert_eq!(ss.spans(), &[Span::inclusive(1.0, 5.0).unwrap()]);

        let ss = SpanSet::new(vec![
            Span::new(1.0, 2.0, true, false).unwrap(),
            Span::inclusive(2.0, 3.0).unwrap(),
        ])
        .unwrap();
        assert_eq!(ss.spans(), &[Span::inclusive(1.0, 3.0).unwrap()]);

        // Two open ends at the same value leave a one-point gap.
        let ss = SpanSet::new(vec![
            Span::new(1.0, 2.0, true, false).unwrap(),
            Span::new(2.0, 3.0, false, true).unwrap(),
        ])
        .unwrap();
        assert_eq!(ss.num_spans(), 2);

        // Integer spans [1,3] and [4,5] have no integer between them.
        let ss = SpanSet::new(vec![Span::inclusive(4, 5).unwrap(), Span::inclusive(1, 3).unwrap()])
            .unwrap();
        assert_eq!(ss.spans(), &[Span::inclusive(1, 5).unwrap()]);
    }

    #[test]
    fn empty_spanset_rejected() {
        assert!(SpanSet::<f64>::new(vec![]).is_err());
        assert!(spanset_union_normalize::<f64>(vec![]).is_none());
    }

    #[test]
    fn intersection_and_hull() {
        let a = Span::new(1.0, 5.0, true, false).unwrap();
        let b = Span::new(3.0, 8.0, false, true).unwrap();
        let i = a.intersection(&b).unwrap();
        assert_eq!(i, Span::new(3.0, 5.0, false, false).unwrap());
        assert_eq!(a.hull(&b), Span::new(1.0, 8.0, true, true).unwrap());
        let c = Span::new(5.0, 6.0, true, true).unwrap();
        assert!(a.intersection(&c).is_none());
        assert!(a.is_adjacent(&c));
    }

    #[test]
    fn timestamp_span_expand() {
        let s = Span::inclusive(ts(1), ts(2)).unwrap();
        let e = s.expand(Interval::days(1)).unwrap();
        assert_eq!(e.lower(), TimestampTz::from_ymd_hms(2024, 12, 31, 0, 0, 0).unwrap());
        assert_eq!(e.upper(), ts(3));
        assert!(e.contains_span(&s));
    }
}
