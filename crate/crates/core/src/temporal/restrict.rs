//! Restrictions of temporal values to times and values.

use super::{Interp, SegmentHit, TInstant, TSequence, Temporal, TemporalBase};
use crate::span::{normalize_spans, Span, SpanSet};
use crate::time::TimestampTz;

impl<B: TemporalBase> TSequence<B> {
    /// Restriction of a continuous sequence to a time span.
    pub(crate) fn at_period(&self, span: &Span<TimestampTz>) -> Option<TSequence<B>> {
        debug_assert!(self.is_continuous());
        let inter = self.period().intersection(span)?;
        let (lo, hi) = (inter.lower(), inter.upper());
        let mut instants = vec![TInstant::new(self.value_unchecked(lo), lo)];
        instants.extend(
            self.instants
                .iter()
                .filter(|i| i.t > lo && i.t < hi)
                .cloned(),
        );
        if hi > lo {
            instants.push(TInstant::new(self.value_unchecked(hi), hi));
        }
        TSequence::new(instants, inter.lower_inc(), inter.upper_inc(), self.interp).ok()
    }

    fn discrete_filter(&self, keep: impl Fn(&TInstant<B>) -> bool) -> Vec<TInstant<B>> {
        self.instants.iter().filter(|i| keep(i)).cloned().collect()
    }

    /// Time spans on which the sequence equals `value`.
    fn spans_at_value(&self, value: &B) -> Vec<Span<TimestampTz>> {
        let n = self.instants.len();
        let mut spans = Vec::new();
        match self.interp {
            Interp::Discrete => {
                for inst in &self.instants {
                    if inst.value.matches(value) {
                        spans.push(Span::singleton(inst.t));
                    }
                }
                return spans;
            }
            Interp::Step => {
                for w in self.instants.windows(2) {
                    if w[0].value.matches(value) {
                        spans.push(Span::new(w[0].t, w[1].t, true, false).expect("ordered"));
                    }
                }
                if self.instants[n - 1].value.matches(value) {
                    spans.push(Span::singleton(self.instants[n - 1].t));
                }
            }
            Interp::Linear => {
                if n == 1 && self.instants[0].value.matches(value) {
                    spans.push(Span::singleton(self.instants[0].t));
                }
                for w in self.instants.windows(2) {
                    let (a, b) = (&w[0], &w[1]);
                    match a.value.locate(&b.value, value) {
                        SegmentHit::Never => {}
                        SegmentHit::Everywhere => {
                            spans.push(Span::inclusive(a.t, b.t).expect("ordered"));
                        }
                        SegmentHit::At(f) => {
                            let dt = (b.t.micros() - a.t.micros()) as f64;
                            let t = TimestampTz(a.t.micros() + (f * dt).round() as i64);
                            spans.push(Span::singleton(t));
                        }
                    }
                }
            }
        }
        let period = self.period();
        normalize_spans(spans)
            .into_iter()
            .filter_map(|s| s.intersection(&period))
            .collect()
    }

    fn at_value_pieces(&self, value: &B) -> Vec<TSequence<B>> {
        if self.interp == Interp::Discrete {
            let kept = self.discrete_filter(|i| i.value.matches(value));
            return if kept.is_empty() {
                Vec::new()
            } else {
                vec![TSequence::discrete(kept).expect("subsequence of a valid sequence")]
            };
        }
        self.spans_at_value(value)
            .into_iter()
            .filter_map(|span| self.at_period(&span))
            .collect()
    }
}

impl<B: TemporalBase> Temporal<B> {
    pub fn value_at_timestamp(&self, t: TimestampTz) -> Option<B> {
        match self {
            Temporal::Instant(inst) => (inst.t == t).then(|| inst.value.clone()),
            Temporal::Sequence(s) => s.value_at(t),
            Temporal::SequenceSet(ss) => {
                let seqs = ss.sequences();
                let idx = seqs.partition_point(|s| s.end_timestamp() < t);
                seqs[idx..]
                    .iter()
                    .take(2)
                    .find_map(|s| s.value_at(t))
            }
        }
    }

    /// Restriction to a time span. Bound inclusivity of the result follows the
    /// intersection of the span with the value's time domain.
    pub fn at_time(&self, span: &Span<TimestampTz>) -> Option<Temporal<B>> {
        match self {
            Temporal::Instant(inst) => span.contains_value(inst.t).then(|| self.clone()),
            Temporal::Sequence(s) if s.interp == Interp::Discrete => {
                let kept = s.discrete_filter(|i| span.contains_value(i.t));
                Temporal::from_pieces(
                    vec![TSequence::discrete(kept).ok()?],
                    false,
                )
            }
            Temporal::Sequence(s) => s.at_period(span).map(Temporal::Sequence),
            Temporal::SequenceSet(ss) => {
                let pieces = ss
                    .sequences()
                    .iter()
                    .filter_map(|s| s.at_period(span))
                    .collect();
                Temporal::from_pieces(pieces, true)
            }
        }
    }

    pub fn at_tstzspanset(&self, spans: &SpanSet<TimestampTz>) -> Option<Temporal<B>> {
        match self {
            Temporal::Instant(inst) => spans.contains_value(inst.t).then(|| self.clone()),
            Temporal::Sequence(s) if s.interp == Interp::Discrete => {
                let kept = s.discrete_filter(|i| spans.contains_value(i.t));
                Temporal::from_pieces(vec![TSequence::discrete(kept).ok()?], false)
            }
            _ => {
                let mut pieces = Vec::new();
                for seq in self.sequences().iter() {
                    let period = seq.period();
                    for span in spans.spans() {
                        if span.overlaps(&period) {
                            pieces.extend(seq.at_period(span));
                        }
                    }
                }
                Temporal::from_pieces(pieces, true)
            }
        }
    }

    /// Restriction to the instants where the value equals `value`.
    pub fn at_values(&self, value: &B) -> Option<Temporal<B>> {
        match self {
            Temporal::Instant(inst) => inst.value.matches(value).then(|| self.clone()),
            Temporal::Sequence(s) if s.interp == Interp::Discrete => {
                Temporal::from_pieces(s.at_value_pieces(value), false)
            }
            _ => {
                let pieces = self
                    .sequences()
                    .iter()
                    .flat_map(|s| s.at_value_pieces(value))
                    .collect();
                Temporal::from_pieces(pieces, true)
            }
        }
    }
}

impl Temporal<bool> {
    /// Time during which the value is true.
    pub fn when_true(&self) -> Option<SpanSet<TimestampTz>> {
        self.at_values(&true).map(|t| t.time())
    }
}
