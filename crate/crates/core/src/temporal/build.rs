//! Incremental construction of step sequences from ordered constant pieces.

use super::{Interp, TInstant, TSequence, TemporalBase};
use crate::time::TimestampTz;

struct Run<B> {
    instants: Vec<TInstant<B>>,
    lower_inc: bool,
    end: TimestampTz,
    end_inc: bool,
    value: B,
}

/// Accepts time-ordered, non-overlapping pieces `(lo, hi)` with a constant
/// value and stitches contiguous ones into step sequences.
pub(crate) struct StepBuilder<B> {
    done: Vec<TSequence<B>>,
    run: Option<Run<B>>,
}

impl<B: TemporalBase> StepBuilder<B> {
    pub(crate) fn new() -> Self {
        StepBuilder {
            done: Vec::new(),
            run: None,
        }
    }

    /// Single-point pieces must be closed on both sides.
    pub(crate) fn push(&mut self, lo: TimestampTz, lo_inc: bool, hi: TimestampTz, hi_inc: bool, value: B) {
        debug_assert!(lo < hi || (lo == hi && lo_inc && hi_inc));
        if let Some(run) = self.run.as_mut() {
            let contiguous = lo == run.end && lo_inc != run.end_inc;
            if contiguous && value == run.value {
                run.end = hi;
                run.end_inc = hi_inc;
                return;
            }
            if contiguous && lo_inc {
                run.instants.push(TInstant::new(value.clone(), lo));
                run.end = hi;
                run.end_inc = hi_inc;
                run.value = value;
                return;
            }
            self.close();
        }
        self.run = Some(Run {
            instants: vec![TInstant::new(value.clone(), lo)],
            lower_inc: lo_inc,
            end: hi,
            end_inc: hi_inc,
            value,
        });
    }

    fn close(&mut self) {
        let Some(mut run) = self.run.take() else {
            return;
        };
        if run.instants[run.instants.len() - 1].t < run.end {
            run.instants.push(TInstant::new(run.value, run.end));
        }
        let seq = TSequence::new(run.instants, run.lower_inc, run.end_inc, Interp::Step)
            .expect("pieces form a valid step sequence");
        self.done.push(seq);
    }

    pub(crate) fn finish(mut self) -> Vec<TSequence<B>> {
        self.close();
        self.done
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(h: i64) -> TimestampTz {
        TimestampTz::from_micros(h * 3_600_000_000)
    }

    #[test]
    fn stitches_contiguous_pieces() {
        let mut b = StepBuilder::new();
        b.push(t(0), true, t(1), false, false);
        b.push(t(1), true, t(2), true, true);
        b.push(t(2), false, t(3), true, false);
        b.push(t(5), true, t(5), true, true);
        let seqs = b.finish();
        assert_eq!(seqs.len(), 3);
        let vals: Vec<_> = seqs[0].instants().iter().map(|i| (i.value, i.t)).collect();
        assert_eq!(vals, vec![(false, t(0)), (true, t(1)), (true, t(2))]);
        assert!(seqs[0].upper_inc());
        assert!(!seqs[1].lower_inc());
        assert_eq!(seqs[2].instants().len(), 1);
    }

    #[test]
    fn merges_equal_values() {
        let mut b = StepBuilder::new();
        b.push(t(0), true, t(1), false, true);
        b.push(t(1), true, t(2), true, true);
        let seqs = b.finish();
        assert_eq!(seqs.len(), 1);
        assert_eq!(seqs[0].instants().len(), 2);
    }
}
