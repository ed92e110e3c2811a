//! Temporal values: a base value that evolves over time.
//!
//! A [`Temporal`] is an instant, a sequence of instants under one
//! interpolation, or a set of time-disjoint sequences. Timestamps inside a
//! sequence are strictly increasing.

mod build;
mod restrict;
mod sync;

use std::borrow::Cow;
use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::span::{Span, SpanSet};
use crate::time::{Interval, TimestampTz};

pub(crate) use build::StepBuilder;
pub use sync::synchronize;

/// Interpolation between the instants of a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Interp {
    Discrete,
    Step,
    Linear,
}

impl Interp {
    pub fn name(self) -> &'static str {
        match self {
            Interp::Discrete => "discrete",
            Interp::Step => "step",
            Interp::Linear => "linear",
        }
    }

    pub fn from_name(name: &str) -> Option<Interp> {
        match name.to_ascii_lowercase().as_str() {
            "discrete" => Some(Interp::Discrete),
            "step" => Some(Interp::Step),
            "linear" => Some(Interp::Linear),
            _ => None,
        }
    }
}

/// Where a linear segment takes a given value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentHit {
    Never,
    Everywhere,
    /// Fraction of the segment in `[0, 1]`.
    At(f64),
}

/// Tolerance, in length units, for matching temporal points to a position.
pub const POINT_MATCH_TOLERANCE: f64 = 1e-9;

/// A base type of temporal values.
pub trait TemporalBase: Clone + PartialEq + Debug {
    /// Whether linear interpolation is defined for the type.
    const CONTINUOUS: bool;

    /// Interpolation assumed when a literal does not state one.
    const DEFAULT_INTERP: Interp;

    /// Value at `ratio ∈ [0, 1]` between `self` and `to` under linear interpolation.
    fn interpolate(&self, _to: &Self, _ratio: f64) -> Self {
        self.clone()
    }

    /// Equality used by value restriction.
    fn matches(&self, other: &Self) -> bool {
        self == other
    }

    /// Where the linear segment from `self` to `to` equals `value`.
    fn locate(&self, to: &Self, value: &Self) -> SegmentHit {
        if self.matches(value) && to.matches(value) {
            SegmentHit::Everywhere
        } else if self.matches(value) {
            SegmentHit::At(0.0)
        } else if to.matches(value) {
            SegmentHit::At(1.0)
        } else {
            SegmentHit::Never
        }
    }
}

impl TemporalBase for bool {
    const CONTINUOUS: bool = false;
    const DEFAULT_INTERP: Interp = Interp::Step;
}

impl TemporalBase for i32 {
    const CONTINUOUS: bool = false;
    const DEFAULT_INTERP: Interp = Interp::Step;
}

impl TemporalBase for String {
    const CONTINUOUS: bool = false;
    const DEFAULT_INTERP: Interp = Interp::Step;
}

impl TemporalBase for f64 {
    const CONTINUOUS: bool = true;
    const DEFAULT_INTERP: Interp = Interp::Linear;

    fn interpolate(&self, to: &f64, ratio: f64) -> f64 {
        self + (to - self) * ratio
    }

    fn locate(&self, to: &f64, value: &f64) -> SegmentHit {
        if self == to {
            return if self == value {
                SegmentHit::Everywhere
            } else {
                SegmentHit::Never
            };
        }
        if self == value {
            return SegmentHit::At(0.0);
        }
        if to == value {
            return SegmentHit::At(1.0);
        }
        let f = (value - self) / (to - self);
        if (0.0..=1.0).contains(&f) {
            SegmentHit::At(f)
        } else {
            SegmentHit::Never
        }
    }
}

impl TemporalBase for Point {
    const CONTINUOUS: bool = true;
    const DEFAULT_INTERP: Interp = Interp::Linear;

    fn interpolate(&self, to: &Point, ratio: f64) -> Point {
        self.lerp(to, ratio)
    }

    fn matches(&self, other: &Point) -> bool {
        self.distance(other) <= POINT_MATCH_TOLERANCE
    }

    fn locate(&self, to: &Point, value: &Point) -> SegmentHit {
        let len = self.distance(to);
        if len <= POINT_MATCH_TOLERANCE {
            return if self.matches(value) {
                SegmentHit::Everywhere
            } else {
                SegmentHit::Never
            };
        }
        if self.matches(value) {
            return SegmentHit::At(0.0);
        }
        if to.matches(value) {
            return SegmentHit::At(1.0);
        }
        let dx = to.x - self.x;
        let dy = to.y - self.y;
        let f = ((value.x - self.x) * dx + (value.y - self.y) * dy) / (len * len);
        if !(0.0..=1.0).contains(&f) {
            return SegmentHit::Never;
        }
        if self.lerp(to, f).matches(value) {
            SegmentHit::At(f)
        } else {
            SegmentHit::Never
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TInstant<B> {
    pub value: B,
    pub t: TimestampTz,
}

impl<B> TInstant<B> {
    pub fn new(value: B, t: TimestampTz) -> Self {
        TInstant { value, t }
    }
}

/// Instants under one interpolation, with inclusivity flags on the time bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct TSequence<B> {
    instants: Vec<TInstant<B>>,
    lower_inc: bool,
    upper_inc: bool,
    interp: Interp,
}

impl<B: TemporalBase> TSequence<B> {
    pub fn new(
        mut instants: Vec<TInstant<B>>,
        lower_inc: bool,
        upper_inc: bool,
        interp: Interp,
    ) -> Result<Self> {
        if instants.is_empty() {
            return Err(Error::Empty("temporal sequence"));
        }
        if instants.windows(2).any(|w| w[0].t >= w[1].t) {
            return Err(Error::UnorderedTimestamps);
        }
        if interp == Interp::Linear && !B::CONTINUOUS {
            return Err(Error::InvalidInterpolation(
                "linear interpolation requires a continuous base type".into(),
            ));
        }
        if (interp == Interp::Discrete || instants.len() == 1) && !(lower_inc && upper_inc) {
            return Err(Error::InvalidBounds(
                "discrete and single-instant sequences must have inclusive bounds".into(),
            ));
        }
        // A step sequence never reaches an excluded last instant; keep the held value there.
        let n = instants.len();
        if interp == Interp::Step && !upper_inc && n > 1 && instants[n - 1].value != instants[n - 2].value {
            instants[n - 1].value = instants[n - 2].value.clone();
        }
        Ok(TSequence {
            instants,
            lower_inc,
            upper_inc,
            interp,
        })
    }

    pub fn discrete(instants: Vec<TInstant<B>>) -> Result<Self> {
        Self::new(instants, true, true, Interp::Discrete)
    }

    /// Continuous sequence with inclusive bounds.
    pub fn continuous(instants: Vec<TInstant<B>>, interp: Interp) -> Result<Self> {
        Self::new(instants, true, true, interp)
    }

    pub fn instants(&self) -> &[TInstant<B>] {
        &self.instants
    }

    pub fn lower_inc(&self) -> bool {
        self.lower_inc
    }

    pub fn upper_inc(&self) -> bool {
        self.upper_inc
    }

    pub fn interp(&self) -> Interp {
        self.interp
    }

    pub fn is_continuous(&self) -> bool {
        self.interp != Interp::Discrete
    }

    pub fn start_timestamp(&self) -> TimestampTz {
        self.instants[0].t
    }

    pub fn end_timestamp(&self) -> TimestampTz {
        self.instants[self.instants.len() - 1].t
    }

    /// Bounding time span, carrying the sequence's bound inclusivity.
    pub fn period(&self) -> Span<TimestampTz> {
        Span::new(
            self.start_timestamp(),
            self.end_timestamp(),
            self.lower_inc,
            self.upper_inc,
        )
        .expect("sequence bounds are valid")
    }

    /// Value at `t` ignoring bound inclusivity, for `t` within `[start, end]`.
    pub(crate) fn value_unchecked(&self, t: TimestampTz) -> B {
        let idx = self.instants.partition_point(|inst| inst.t <= t);
        if idx == 0 {
            return self.instants[0].value.clone();
        }
        let prev = &self.instants[idx - 1];
        if prev.t == t || idx == self.instants.len() {
            return prev.value.clone();
        }
        match self.interp {
            Interp::Linear => {
                let next = &self.instants[idx];
                let ratio = (t.micros() - prev.t.micros()) as f64
                    / (next.t.micros() - prev.t.micros()) as f64;
                prev.value.interpolate(&next.value, ratio)
            }
            _ => prev.value.clone(),
        }
    }

    pub fn value_at(&self, t: TimestampTz) -> Option<B> {
        if self.interp == Interp::Discrete {
            return self
                .instants
                .binary_search_by(|inst| inst.t.cmp(&t))
                .ok()
                .map(|i| self.instants[i].value.clone());
        }
        if self.period().contains_value(t) {
            Some(self.value_unchecked(t))
        } else {
            None
        }
    }

    /// Time domain as spans: one per instant when discrete, else the period.
    fn time_spans(&self) -> Vec<Span<TimestampTz>> {
        if self.interp == Interp::Discrete {
            self.instants.iter().map(|i| Span::singleton(i.t)).collect()
        } else {
            vec![self.period()]
        }
    }
}

/// Time-disjoint continuous sequences sharing one interpolation.
#[derive(Debug, Clone, PartialEq)]
pub struct TSequenceSet<B> {
    sequences: Vec<TSequence<B>>,
}

impl<B: TemporalBase> TSequenceSet<B> {
    /// Validates ordering and disjointness, then merges adjacent sequences whose
    /// boundary values agree.
    pub fn new(sequences: Vec<TSequence<B>>) -> Result<Self> {
        let Some(first) = sequences.first() else {
            return Err(Error::Empty("temporal sequence set"));
        };
        let interp = first.interp;
        if interp == Interp::Discrete {
            return Err(Error::InvalidInterpolation(
                "a sequence set cannot hold discrete sequences".into(),
            ));
        }
        if sequences.iter().any(|s| s.interp != interp) {
            return Err(Error::InvalidInterpolation(
                "all sequences of a sequence set must share one interpolation".into(),
            ));
        }
        if sequences
            .windows(2)
            .any(|w| !w[0].period().is_before(&w[1].period()))
        {
            return Err(Error::OverlappingSequences);
        }
        let mut merged: Vec<TSequence<B>> = Vec::with_capacity(sequences.len());
        for seq in sequences {
            match merged.last_mut() {
                Some(last) if joinable(last, &seq) => {
                    let mut instants = std::mem::take(&mut last.instants);
                    instants.pop();
                    instants.extend(seq.instants);
                    *last = TSequence::new(instants, last.lower_inc, seq.upper_inc, interp)?;
                }
                _ => merged.push(seq),
            }
        }
        Ok(TSequenceSet { sequences: merged })
    }

    pub fn sequences(&self) -> &[TSequence<B>] {
        &self.sequences
    }

    pub fn interp(&self) -> Interp {
        self.sequences[0].interp
    }
}

fn joinable<B: TemporalBase>(a: &TSequence<B>, b: &TSequence<B>) -> bool {
    let last = &a.instants[a.instants.len() - 1];
    let first = &b.instants[0];
    last.t == first.t && a.upper_inc != b.lower_inc && last.value == first.value
}

#[derive(Debug, Clone, PartialEq)]
pub enum Temporal<B> {
    Instant(TInstant<B>),
    Sequence(TSequence<B>),
    SequenceSet(TSequenceSet<B>),
}

impl<B: TemporalBase> Temporal<B> {
    pub fn instant(value: B, t: TimestampTz) -> Self {
        Temporal::Instant(TInstant::new(value, t))
    }

    pub fn interp(&self) -> Interp {
        match self {
            Temporal::Instant(_) => Interp::Discrete,
            Temporal::Sequence(s) => s.interp,
            Temporal::SequenceSet(ss) => ss.interp(),
        }
    }

    /// The value viewed as a list of sequences; an instant becomes a one-instant
    /// discrete sequence.
    pub fn sequences(&self) -> Cow<'_, [TSequence<B>]> {
        match self {
            Temporal::Instant(inst) => Cow::Owned(vec![TSequence {
                instants: vec![inst.clone()],
                lower_inc: true,
                upper_inc: true,
                interp: Interp::Discrete,
            }]),
            Temporal::Sequence(s) => Cow::Borrowed(std::slice::from_ref(s)),
            Temporal::SequenceSet(ss) => Cow::Borrowed(&ss.sequences),
        }
    }

    pub fn instants(&self) -> Vec<&TInstant<B>> {
        match self {
            Temporal::Instant(inst) => vec![inst],
            Temporal::Sequence(s) => s.instants.iter().collect(),
            Temporal::SequenceSet(ss) => ss
                .sequences
                .iter()
                .flat_map(|s| s.instants.iter())
                .collect(),
        }
    }

    pub fn num_instants(&self) -> usize {
        match self {
            Temporal::Instant(_) => 1,
            Temporal::Sequence(s) => s.instants.len(),
            Temporal::SequenceSet(ss) => ss.sequences.iter().map(|s| s.instants.len()).sum(),
        }
    }

    pub fn start_instant(&self) -> &TInstant<B> {
        match self {
            Temporal::Instant(inst) => inst,
            Temporal::Sequence(s) => &s.instants[0],
            Temporal::SequenceSet(ss) => &ss.sequences[0].instants[0],
        }
    }

    pub fn end_instant(&self) -> &TInstant<B> {
        match self {
            Temporal::Instant(inst) => inst,
            Temporal::Sequence(s) => &s.instants[s.instants.len() - 1],
            Temporal::SequenceSet(ss) => {
                let last = &ss.sequences[ss.sequences.len() - 1];
                &last.instants[last.instants.len() - 1]
            }
        }
    }

    pub fn start_timestamp(&self) -> TimestampTz {
        self.start_instant().t
    }

    pub fn end_timestamp(&self) -> TimestampTz {
        self.end_instant().t
    }

    /// Bounding time span (the `::tstzspan` cast).
    pub fn to_tstzspan(&self) -> Span<TimestampTz> {
        match self {
            Temporal::Instant(inst) => Span::singleton(inst.t),
            Temporal::Sequence(s) => s.period(),
            Temporal::SequenceSet(ss) => {
                let first = &ss.sequences[0];
                let last = &ss.sequences[ss.sequences.len() - 1];
                Span::new(
                    first.start_timestamp(),
                    last.end_timestamp(),
                    first.lower_inc,
                    last.upper_inc,
                )
                .expect("sequence set bounds are valid")
            }
        }
    }

    /// Time domain of the value as a normalized span set.
    pub fn time(&self) -> SpanSet<TimestampTz> {
        let spans = self
            .sequences()
            .iter()
            .flat_map(|s| s.time_spans())
            .collect();
        SpanSet::new(spans).expect("temporal values are non-empty")
    }

    /// With `bound_span`, the extent of the bounding time span; otherwise the
    /// total extent of the continuous sequences (instants contribute nothing).
    pub fn duration(&self, bound_span: bool) -> Interval {
        if bound_span {
            return self.end_timestamp() - self.start_timestamp();
        }
        self.sequences()
            .iter()
            .filter(|s| s.is_continuous())
            .map(|s| s.end_timestamp() - s.start_timestamp())
            .sum()
    }

    /// Rebuilds a value from restriction output, keeping continuous results as
    /// sequence sets. `None` when there is nothing left.
    pub(crate) fn from_pieces(pieces: Vec<TSequence<B>>, continuous: bool) -> Option<Self> {
        if pieces.is_empty() {
            return None;
        }
        if continuous {
            TSequenceSet::new(pieces).ok().map(Temporal::SequenceSet)
        } else {
            let instants = pieces.into_iter().flat_map(|s| s.instants).collect();
            TSequence::discrete(instants).ok().map(Temporal::Sequence)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(day: u32) -> TimestampTz {
        TimestampTz::from_ymd_hms(2025, 1, day, 0, 0, 0).unwrap()
    }

    fn inst<B>(v: B, day: u32) -> TInstant<B> {
        TInstant::new(v, ts(day))
    }

    #[test]
    fn sequence_validation() {
        assert!(TSequence::<i32>::continuous(vec![], Interp::Step).is_err());
        assert!(matches!(
            TSequence::continuous(vec![inst(1, 2), inst(2, 1)], Interp::Step),
            Err(Error::UnorderedTimestamps)
        ));
        assert!(TSequence::continuous(vec![inst(1, 1), inst(2, 2)], Interp::Linear).is_err());
        assert!(TSequence::new(vec![inst(1.0, 1)], true, false, Interp::Linear).is_err());
        assert!(TSequence::new(vec![inst(1, 1), inst(2, 2)], true, false, Interp::Discrete).is_err());
    }

    #[test]
    fn step_exclusive_end_holds_previous_value() {
        let s = TSequence::new(vec![inst(1, 1), inst(2, 2)], true, false, Interp::Step).unwrap();
        assert_eq!(s.instants()[1].value, 1);
    }

    #[test]
    fn sequence_set_merges_adjacent_equal_boundaries() {
        let a = TSequence::new(vec![inst(1.0, 1), inst(2.0, 2)], true, false, Interp::Linear)
            .unwrap();
        let b = TSequence::continuous(vec![inst(2.0, 2), inst(5.0, 3)], Interp::Linear).unwrap();
        let ss = TSequenceSet::new(vec![a.clone(), b]).unwrap();
        assert_eq!(ss.sequences().len(), 1);
        assert_eq!(ss.sequences()[0].instants().len(), 3);

        let c = TSequence::continuous(vec![inst(3.0, 2), inst(5.0, 3)], Interp::Linear).unwrap();
        let ss = TSequenceSet::new(vec![a, c]).unwrap();
        assert_eq!(ss.sequences().len(), 2);
    }

    #[test]
    fn sequence_set_rejects_overlap() {
        let a = TSequence::continuous(vec![inst(1.0, 1), inst(2.0, 3)], Interp::Linear).unwrap();
        let b = TSequence::continuous(vec![inst(2.0, 2), inst(5.0, 4)], Interp::Linear).unwrap();
        assert!(matches!(
            TSequenceSet::new(vec![a, b]),
            Err(Error::OverlappingSequences)
        ));
    }

    #[test]
    fn duration_flags() {
        let discrete = Temporal::Sequence(
            TSequence::discrete(vec![inst(1, 1), inst(2, 2), inst(1, 3)]).unwrap(),
        );
        assert_eq!(discrete.duration(true), Interval::days(2));
        assert_eq!(discrete.duration(false), Interval::ZERO);

        let ss = Temporal::SequenceSet(
            TSequenceSet::new(vec![
                TSequence::continuous(vec![inst(1.0, 1), inst(2.0, 2)], Interp::Linear).unwrap(),
                TSequence::continuous(vec![inst(1.0, 4), inst(2.0, 7)], Interp::Linear).unwrap(),
            ])
            .unwrap(),
        );
        assert_eq!(ss.duration(false), Interval::days(1) + Interval::days(3));
        assert_eq!(ss.duration(true), Interval::days(6));
    }

    #[test]
    fn tstzspan_of_instant_and_set() {
        let i = Temporal::instant(3, ts(4));
        assert_eq!(i.to_tstzspan(), Span::singleton(ts(4)));
        assert_eq!(i.start_timestamp(), i.end_timestamp());
    }

    #[test]
    fn point_locate_with_tolerance() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(2.0, 0.0);
        assert_eq!(a.locate(&b, &Point::new(1.0, 0.0)), SegmentHit::At(0.5));
        assert_eq!(a.locate(&b, &Point::new(1.0, 1e-12)), SegmentHit::At(0.5));
        assert_eq!(a.locate(&b, &Point::new(1.0, 1e-6)), SegmentHit::Never);
        assert_eq!(a.locate(&a, &a), SegmentHit::Everywhere);
    }
}
