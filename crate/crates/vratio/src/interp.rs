//! Segmented linear interpolation of benchmark observations, plus the
//! linear-index/(segment, phase) bookkeeping.
//!
//! Given benchmarks `y_1, ..., y_n` (one per segment, observed at phase `s`),
//! the missing phases of segment `t >= 2` are filled with the convex
//! combination
//!
//! ```text
//! x_{t,i} = (i/s) y_t + ((s - i)/s) y_{t-1},    i = 1, ..., s,
//! ```
//!
//! so each segment is a straight line from one benchmark to the next and
//! `x_{t,s}` coincides with `y_t` exactly.

use crate::dgp::SegmentedSeries;
use crate::error::{Error, Result};

/// Interpolate a benchmark sequence into a segmented series with `s`
/// sub-periods per segment.
///
/// The first benchmark only anchors the left end of the first interpolated
/// segment, so the output covers segments `2..=n` and carries
/// `origin_segment = 2`. The benchmark phase is reproduced bit-for-bit, not
/// recomputed.
pub fn interpolate(benchmarks: &[f64], s: usize) -> Result<SegmentedSeries> {
    if s < 2 {
        return Err(Error::invalid(
            "s",
            format!("interpolation needs s >= 2 (s = 1 leaves the series unchanged), got {s}"),
        ));
    }
    if benchmarks.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "need at least 2 benchmarks to interpolate, got {}",
            benchmarks.len()
        )));
    }

    let sf = s as f64;
    let mut values = Vec::with_capacity((benchmarks.len() - 1) * s);
    for pair in benchmarks.windows(2) {
        let (left, right) = (pair[0], pair[1]);
        for i in 1..s {
            values.push((i as f64 / sf) * right + ((s - i) as f64 / sf) * left);
        }
        values.push(right);
    }
    SegmentedSeries::new(values, s, 2)
}

/// Convert a linear index `T >= 1` to its (segment, phase) pair under
/// segment length `s`, i.e. the unique `(t, i)` with `T = s(t - 1) + i` and
/// `1 <= i <= s`.
pub fn to_segment_index(t_linear: usize, s: usize) -> (usize, usize) {
    assert!(t_linear >= 1 && s >= 1, "indices are 1-based and s >= 1");
    ((t_linear - 1) / s + 1, (t_linear - 1) % s + 1)
}

/// Inverse of [`to_segment_index`]: `T = s(t - 1) + i`.
pub fn from_segment_index(segment: usize, phase: usize, s: usize) -> usize {
    assert!(segment >= 1 && (1..=s).contains(&phase), "phase must lie in 1..=s");
    s * (segment - 1) + phase
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn straight_line_benchmarks() {
        let out = interpolate(&[0.0, 4.0], 4).unwrap();
        assert_eq!(out.values(), &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(out.origin_segment(), 2);
    }

    #[test]
    fn hand_worked_two_segment_case() {
        let out = interpolate(&[2.0, 6.0, 4.0], 2).unwrap();
        assert_eq!(out.values(), &[4.0, 6.0, 5.0, 4.0]);
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(interpolate(&[1.0], 4).is_err());
        assert!(interpolate(&[1.0, 2.0], 1).is_err());
    }

    #[test]
    fn index_examples() {
        assert_eq!(to_segment_index(1, 4), (1, 1));
        assert_eq!(to_segment_index(4, 4), (1, 4));
        assert_eq!(to_segment_index(41, 4), (11, 1));
    }

    #[test]
    fn reinterpolating_benchmarks_is_idempotent() {
        let first = interpolate(&[2.0, -1.0, 0.5, 3.0], 3).unwrap();
        let again = interpolate(&first.benchmarks(), 3).unwrap();
        // `first` covers segments 2..=4, `again` segments 3..=4 of the original.
        assert_eq!(again.values(), &first.values()[3..]);
    }

    proptest! {
        #[test]
        fn benchmark_phase_is_exact(bm in proptest::collection::vec(-1e6..1e6f64, 2..20),
                                    s in 2usize..12) {
            let out = interpolate(&bm, s).unwrap();
            for (seg, &expected) in bm[1..].iter().enumerate() {
                prop_assert_eq!(out.values()[seg * s + s - 1], expected);
            }
        }

        #[test]
        fn values_stay_between_bracketing_benchmarks(
            bm in proptest::collection::vec(-1e6..1e6f64, 2..20), s in 2usize..12) {
            let out = interpolate(&bm, s).unwrap();
            for (seg, pair) in bm.windows(2).enumerate() {
                let lo = pair[0].min(pair[1]) - 1e-9;
                let hi = pair[0].max(pair[1]) + 1e-9;
                for &v in &out.values()[seg * s..(seg + 1) * s] {
                    prop_assert!(lo <= v && v <= hi);
                }
            }
        }

        #[test]
        fn in_segment_steps_are_constant(
            bm in proptest::collection::vec(-1e3..1e3f64, 2..10), s in 2usize..12) {
            // Consecutive one-period differences within a segment all equal
            // (y_t - y_{t-1}) / s; exact in real arithmetic, a few ulps here.
            let out = interpolate(&bm, s).unwrap();
            for (seg, pair) in bm.windows(2).enumerate() {
                let step = (pair[1] - pair[0]) / s as f64;
                let scale = pair[0].abs().max(pair[1].abs()).max(1.0);
                let vals = &out.values()[seg * s..(seg + 1) * s];
                let mut prev = pair[0];
                for &v in vals {
                    prop_assert!((v - prev - step).abs() <= 1e-12 * scale,
                        "step {} vs {}", v - prev, step);
                    prev = v;
                }
            }
        }

        #[test]
        fn segment_index_round_trips(t_linear in 1usize..100_000, s in 1usize..50) {
            let (t, i) = to_segment_index(t_linear, s);
            prop_assert!((1..=s).contains(&i));
            prop_assert_eq!(from_segment_index(t, i, s), t_linear);
        }
    }
}
