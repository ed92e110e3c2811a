//! Alignment of two temporal values on a common time domain.

use super::{TInstant, TSequence, Temporal, TemporalBase};

/// Pairs of sequences defined on identical timestamps and bounds.
///
/// Continuous pieces gain an instant wherever either input has one, so each
/// pair of consecutive instants is a segment on which both sides follow a
/// single interpolation rule. Discrete inputs align on shared instants. `None`
/// when the time domains do not meet.
pub fn synchronize<A: TemporalBase, C: TemporalBase>(
    a: &Temporal<A>,
    b: &Temporal<C>,
) -> Option<Vec<(TSequence<A>, TSequence<C>)>> {
    let left = a.sequences();
    let right = b.sequences();
    let mut out = Vec::new();
    let mut j0 = 0;
    for sa in left.iter() {
        let pa = sa.period();
        while j0 < right.len() && right[j0].period().is_before(&pa) {
            j0 += 1;
        }
        for sb in &right[j0..] {
            let pb = sb.period();
            if pa.is_before(&pb) {
                break;
            }
            if let Some(pair) = sync_pair(sa, sb) {
                out.push(pair);
            }
        }
    }
    (!out.is_empty()).then_some(out)
}

fn sync_pair<A: TemporalBase, C: TemporalBase>(
    sa: &TSequence<A>,
    sb: &TSequence<C>,
) -> Option<(TSequence<A>, TSequence<C>)> {
    if !sa.is_continuous() || !sb.is_continuous() {
        let times: Vec<_> = if !sa.is_continuous() {
            sa.instants().iter().map(|i| i.t).collect()
        } else {
            sb.instants().iter().map(|i| i.t).collect()
        };
        let mut ia = Vec::new();
        let mut ib = Vec::new();
        for t in times {
            if let (Some(va), Some(vb)) = (sa.value_at(t), sb.value_at(t)) {
                ia.push(TInstant::new(va, t));
                ib.push(TInstant::new(vb, t));
            }
        }
        if ia.is_empty() {
            return None;
        }
        return Some((
            TSequence::discrete(ia).ok()?,
            TSequence::discrete(ib).ok()?,
        ));
    }
    let inter = sa.period().intersection(&sb.period())?;
    let (lo, hi) = (inter.lower(), inter.upper());
    let mut times = vec![lo];
    times.extend(sa.instants().iter().map(|i| i.t).filter(|t| *t > lo && *t < hi));
    times.extend(sb.instants().iter().map(|i| i.t).filter(|t| *t > lo && *t < hi));
    if hi > lo {
        times.push(hi);
    }
    times.sort_unstable();
    times.dedup();
    let ia = times
        .iter()
        .map(|&t| TInstant::new(sa.value_unchecked(t), t))
        .collect();
    let ib = times
        .iter()
        .map(|&t| TInstant::new(sb.value_unchecked(t), t))
        .collect();
    let (li, ui) = (inter.lower_inc(), inter.upper_inc());
    Some((
        TSequence::new(ia, li, ui, sa.interp()).ok()?,
        TSequence::new(ib, li, ui, sb.interp()).ok()?,
    ))
}
