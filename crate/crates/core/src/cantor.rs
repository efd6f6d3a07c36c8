//! Unions of closed intervals with exact rational endpoints, middle-thirds
//! Cantor stages, and Minkowski differences.
//!
//! A finite stage `C_n` contains the Cantor set `C`, so a stage-level
//! coverage result `C_n - C_n ⊇ [-δ, δ]` is implied by (not a proof of) the
//! limit statement `C - C = [-δ, δ]`, which no finite computation certifies.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::rational::{serialize_exact, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CantorError {
    #[error("scale must be positive, got {0}")]
    NonPositiveScale(Box<Rational>),
    #[error("interval [{lo}, {hi}] has lo > hi")]
    Inverted {
        lo: Box<Rational>,
        hi: Box<Rational>,
    },
}

/// A closed interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Interval {
    #[serde(serialize_with = "serialize_exact")]
    pub lo: Rational,
    #[serde(serialize_with = "serialize_exact")]
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, CantorError> {
        if lo > hi {
            return Err(CantorError::Inverted {
                lo: Box::new(lo),
                hi: Box::new(hi),
            });
        }
        Ok(Interval { lo, hi })
    }

    /// `[-r, r]`
    pub fn symmetric(r: &Rational) -> Self {
        let r = r.abs();
        Interval {
            lo: -r.clone(),
            hi: r,
        }
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// Sorted, pairwise disjoint, non-adjacent closed intervals.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct IntervalUnion {
    intervals: Vec<Interval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion::default()
    }

    /// Sorts and merges overlapping or touching intervals.
    pub fn new(mut intervals: Vec<Interval>) -> Self {
        intervals.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        let mut merged: Vec<Interval> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            match merged.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => merged.push(iv),
            }
        }
        IntervalUnion { intervals: merged }
    }

    pub fn single(iv: Interval) -> Self {
        IntervalUnion {
            intervals: vec![iv],
        }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Structural check of the normal form.
    pub fn is_normalized(&self) -> bool {
        self.intervals.iter().all(|iv| iv.lo <= iv.hi)
            && self.intervals.windows(2).all(|w| w[0].hi < w[1].lo)
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        let idx = self.intervals.partition_point(|iv| &iv.hi < x);
        self.intervals.get(idx).is_some_and(|iv| iv.contains(x))
    }

    /// Whether `other ⊆ self`.
    pub fn contains_union(&self, other: &IntervalUnion) -> bool {
        other.intervals.iter().all(|iv| covers(self, iv).covered)
    }

    /// `{-x : x in self}`
    pub fn shifted(&self, t: &Rational) -> IntervalUnion {
        IntervalUnion {
            intervals: self
                .intervals
                .iter()
                .map(|iv| Interval {
                    lo: &iv.lo + t,
                    hi: &iv.hi + t,
                })
                .collect(),
        }
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        IntervalUnion::new(
            self.intervals
                .iter()
                .chain(&other.intervals)
                .cloned()
                .collect(),
        )
    }

    pub fn negated(&self) -> IntervalUnion {
        IntervalUnion {
            intervals: self
                .intervals
                .iter()
                .rev()
                .map(|iv| Interval {
                    lo: -iv.hi.clone(),
                    hi: -iv.lo.clone(),
                })
                .collect(),
        }
    }
}

/// Stage `n` of the middle-thirds construction on `[0, delta]`.
pub fn cantor_stage(delta: &Rational, n: u32) -> Result<IntervalUnion, CantorError> {
    if !delta.is_positive() {
        return Err(CantorError::NonPositiveScale(Box::new(delta.clone())));
    }
    let mut intervals = vec![Interval {
        lo: Rational::zero(),
        hi: delta.clone(),
    }];
    let three = Rational::from_integer(3.into());
    for _ in 0..n {
        let mut next = Vec::with_capacity(intervals.len() * 2);
        for iv in intervals {
            let third = iv.length() / &three;
            next.push(Interval {
                lo: iv.lo.clone(),
                hi: &iv.lo + &third,
            });
            next.push(Interval {
                lo: &iv.hi - &third,
                hi: iv.hi,
            });
        }
        intervals = next;
    }
    Ok(IntervalUnion { intervals })
}

/// `δ (2/3)^n`
pub fn cantor_stage_length(delta: &Rational, n: u32) -> Rational {
    let two_thirds = Rational::new(2.into(), 3.into());
    delta * num_traits::pow(two_thirds, n as usize)
}

pub fn total_length(u: &IntervalUnion) -> Rational {
    u.intervals.iter().map(Interval::length).sum()
}

/// `A - B = {a - b}` as a normalized union.
///
/// Operands whose halves are translates of each other are reduced first.
/// Otherwise each interval of `A` contributes the stream `a - B`, which is
/// sorted by both endpoints when `B` is walked backwards. The streams are merged by a
/// heap sweep. A popped stream consumes, by binary search, every entry that
/// starts inside the current merged interval, so heavily overlapping inputs
/// (Cantor stages) cost far fewer than `|A| |B|` steps.
pub fn minkowski_difference(a: &IntervalUnion, b: &IntervalUnion) -> IntervalUnion {
    if a.is_empty() || b.is_empty() {
        return IntervalUnion::empty();
    }
    // A = A1 ∪ (A1 + t)  gives  A - B = (A1 - B) ∪ (A1 - B + t), and
    // symmetrically for B. Self-similar inputs collapse to a few merges.
    if let Some((half, t)) = split_translate(a) {
        let d = minkowski_difference(&half, b);
        return d.union(&d.shifted(&t));
    }
    if let Some((half, t)) = split_translate(b) {
        let d = minkowski_difference(a, &half);
        return d.union(&d.shifted(&-t));
    }
    minkowski_sweep(a, b)
}

/// Splits `u` into halves `L`, `L + t` when its second half is a translate of the first.
fn split_translate(u: &IntervalUnion) -> Option<(IntervalUnion, Rational)> {
    let ivs = &u.intervals;
    if ivs.len() < 2 || !ivs.len().is_multiple_of(2) {
        return None;
    }
    let (left, right) = ivs.split_at(ivs.len() / 2);
    let t = &right[0].lo - &left[0].lo;
    let matches = left
        .iter()
        .zip(right)
        .all(|(l, r)| r.lo == &l.lo + &t && r.hi == &l.hi + &t);
    matches.then(|| {
        (
            IntervalUnion {
                intervals: left.to_vec(),
            },
            t,
        )
    })
}

fn minkowski_sweep(a: &IntervalUnion, b: &IntervalUnion) -> IntervalUnion {
    let bs = &b.intervals;
    let q = bs.len();
    // j-th entry of the stream for `ia`: ia - bs[q - 1 - j]
    let lo_at = |ia: &Interval, j: usize| &ia.lo - &bs[q - 1 - j].hi;
    let hi_at = |ia: &Interval, j: usize| &ia.hi - &bs[q - 1 - j].lo;

    let mut heap: BinaryHeap<Reverse<(Rational, usize, usize)>> = a
        .intervals
        .iter()
        .enumerate()
        .map(|(i, ia)| Reverse((lo_at(ia, 0), i, 0)))
        .collect();
    let mut out: Vec<Interval> = Vec::new();
    let mut current: Option<Interval> = None;

    while let Some(Reverse((lo, i, j))) = heap.pop() {
        let ia = &a.intervals[i];
        let cur = match current.as_mut() {
            Some(cur) if lo <= cur.hi => cur,
            _ => {
                out.extend(current.take());
                current.insert(Interval {
                    lo,
                    hi: hi_at(ia, j),
                })
            }
        };
        // consume entries j.. whose start lies in the merged interval
        let mut next = j;
        loop {
            let (mut left, mut right) = (next, q);
            while left < right {
                let mid = left + (right - left) / 2;
                if lo_at(ia, mid) <= cur.hi {
                    left = mid + 1;
                } else {
                    right = mid;
                }
            }
            if left == next {
                break;
            }
            next = left;
            let hi = hi_at(ia, next - 1);
            if hi <= cur.hi {
                break;
            }
            cur.hi = hi;
        }
        if next < q {
            heap.push(Reverse((lo_at(ia, next), i, next)));
        }
    }
    out.extend(current);
    IntervalUnion { intervals: out }
}

/// Reference Minkowski difference: all `|A| |B|` pairs, then normalize.
pub fn minkowski_difference_pairwise(a: &IntervalUnion, b: &IntervalUnion) -> IntervalUnion {
    let mut all = Vec::with_capacity(a.len() * b.len());
    for ia in &a.intervals {
        for ib in &b.intervals {
            all.push(Interval {
                lo: &ia.lo - &ib.hi,
                hi: &ia.hi - &ib.lo,
            });
        }
    }
    IntervalUnion::new(all)
}

/// Leftmost uncovered part of a target interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gap {
    #[serde(serialize_with = "serialize_exact")]
    pub lo: Rational,
    #[serde(serialize_with = "serialize_exact")]
    pub hi: Rational,
    /// Whether `lo` itself is uncovered.
    pub lo_closed: bool,
    /// Whether `hi` itself is uncovered.
    pub hi_closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub covered: bool,
    pub first_gap: Option<Gap>,
}

/// Whether `target ⊆ u`, with the leftmost maximal uncovered piece otherwise.
pub fn covers(u: &IntervalUnion, target: &Interval) -> CoverReport {
    // `pos` is the leftmost point of the target not yet known to be covered;
    // `pos_covered` records whether `pos` itself is covered (true after an interval ends exactly there)
    let mut pos = target.lo.clone();
    let mut pos_covered = false;
    for iv in &u.intervals {
        if iv.hi < pos {
            continue;
        }
        if iv.lo > pos {
            let past_end = iv.lo > target.hi;
            let hi = if past_end {
                target.hi.clone()
            } else {
                iv.lo.clone()
            };
            return CoverReport {
                covered: false,
                first_gap: Some(Gap {
                    lo: pos,
                    hi,
                    lo_closed: !pos_covered,
                    hi_closed: past_end,
                }),
            };
        }
        if iv.hi >= target.hi {
            return CoverReport {
                covered: true,
                first_gap: None,
            };
        }
        pos = iv.hi.clone();
        pos_covered = true;
    }
    CoverReport {
        covered: false,
        first_gap: Some(Gap {
            lo: pos,
            hi: target.hi.clone(),
            lo_closed: !pos_covered,
            hi_closed: true,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn iv(lo: Rational, hi: Rational) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn stages() {
        let s0 = cantor_stage(&int(1), 0).unwrap();
        assert_eq!(s0.intervals(), &[iv(int(0), int(1))]);
        assert_eq!(total_length(&s0), int(1));

        let s1 = cantor_stage(&int(1), 1).unwrap();
        assert_eq!(
            s1.intervals(),
            &[iv(int(0), ratio(1, 3)), iv(ratio(2, 3), int(1))]
        );
        assert_eq!(total_length(&s1), ratio(2, 3));

        let s12 = cantor_stage(&int(1), 12).unwrap();
        assert_eq!(s12.len(), 4096);
        assert_eq!(total_length(&s12), ratio(4096, 531441));
        assert!(s12.is_normalized());

        assert_eq!(
            total_length(&cantor_stage(&int(1), 5).unwrap()),
            ratio(32, 243)
        );
        assert!(matches!(
            cantor_stage(&int(0), 3),
            Err(CantorError::NonPositiveScale(_))
        ));
        assert!(matches!(
            cantor_stage(&int(-1), 3),
            Err(CantorError::NonPositiveScale(_))
        ));
    }

    #[test]
    fn differences() {
        let unit = IntervalUnion::single(iv(int(0), int(1)));
        assert_eq!(
            minkowski_difference(&unit, &unit).intervals(),
            &[iv(int(-1), int(1))]
        );

        let s1 = cantor_stage(&int(1), 1).unwrap();
        assert_eq!(
            minkowski_difference(&s1, &s1).intervals(),
            &[iv(int(-1), int(1))]
        );

        assert!(minkowski_difference(&unit, &IntervalUnion::empty()).is_empty());

        let s8 = cantor_stage(&int(1), 8).unwrap();
        let d = minkowski_difference(&s8, &s8);
        assert!(covers(&d, &Interval::symmetric(&int(1))).covered);
    }

    #[test]
    fn sweep_matches_pairwise() {
        let a = IntervalUnion::new(vec![
            iv(int(0), int(1)),
            iv(int(5), ratio(11, 2)),
            iv(int(9), int(12)),
        ]);
        let b = IntervalUnion::new(vec![iv(ratio(-1, 2), int(0)), iv(int(3), ratio(13, 4))]);
        assert_eq!(
            minkowski_difference(&a, &b),
            minkowski_difference_pairwise(&a, &b)
        );
        for n in 0..6 {
            let s = cantor_stage(&ratio(3, 7), n).unwrap();
            assert_eq!(
                minkowski_difference(&s, &s),
                minkowski_difference_pairwise(&s, &s)
            );
        }
    }

    #[test]
    fn cover_reports() {
        let full = IntervalUnion::single(iv(int(-1), int(1)));
        assert!(covers(&full, &iv(int(-1), int(1))).covered);

        let split = IntervalUnion::new(vec![iv(int(-1), ratio(-1, 3)), iv(ratio(1, 3), int(1))]);
        let r = covers(&split, &iv(int(-1), int(1)));
        assert!(!r.covered);
        let gap = r.first_gap.unwrap();
        assert_eq!((gap.lo, gap.hi), (ratio(-1, 3), ratio(1, 3)));
        assert!(!gap.lo_closed && !gap.hi_closed);

        let r = covers(&IntervalUnion::empty(), &iv(int(0), int(1)));
        let gap = r.first_gap.unwrap();
        assert!(gap.lo_closed && gap.hi_closed);

        // target extends past the union on the right
        let r = covers(&full, &iv(int(0), int(2)));
        let gap = r.first_gap.unwrap();
        assert_eq!((gap.lo, gap.hi, gap.lo_closed), (int(1), int(2), false));

        // point target
        assert!(covers(&split, &iv(ratio(1, 3), ratio(1, 3))).covered);
        assert!(!covers(&split, &iv(int(0), int(0))).covered);
    }

    #[test]
    fn normalization() {
        let u = IntervalUnion::new(vec![
            iv(int(2), int(3)),
            iv(int(0), int(1)),
            iv(int(1), int(2)),
            iv(int(5), int(6)),
        ]);
        assert_eq!(u.intervals(), &[iv(int(0), int(3)), iv(int(5), int(6))]);
        assert_eq!(IntervalUnion::new(u.intervals().to_vec()), u);
        assert!(Interval::new(int(1), int(0)).is_err());
        assert!(u.contains_point(&int(3)));
        assert!(!u.contains_point(&int(4)));
    }
}
