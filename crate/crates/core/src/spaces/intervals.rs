use std::fmt;

use ordered_float::OrderedFloat;

use crate::error::{Error, Result};
use crate::metric::{ExtReal, MetricSpace, PointedSpace};

/// An interval of `ℝ̄` with endpoint openness, or the empty interval.
///
/// Degenerate intervals that contain no point (`[a, a)`, `(a, a)`, ...) are
/// normalized to [`Interval::Empty`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Interval {
    Empty,
    Span {
        lo: OrderedFloat<f64>,
        hi: OrderedFloat<f64>,
        lo_closed: bool,
        hi_closed: bool,
    },
}

impl Interval {
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::Domain(format!("invalid interval endpoints {lo}, {hi}")));
        }
        if lo == hi && !(lo_closed && hi_closed) {
            return Ok(Interval::Empty);
        }
        Ok(Interval::Span {
            lo: OrderedFloat(lo),
            hi: OrderedFloat(hi),
            lo_closed,
            hi_closed,
        })
    }

    /// `[lo, hi]`; panics on invalid endpoints.
    pub fn closed(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, true, true).expect("valid closed interval")
    }

    /// `[lo, hi)`; panics on invalid endpoints.
    pub fn closed_open(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, true, false).expect("valid interval")
    }

    /// `(lo, hi)`; panics on invalid endpoints.
    pub fn open(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, false, false).expect("valid interval")
    }

    pub fn endpoints(&self) -> Option<(f64, f64)> {
        match self {
            Interval::Empty => None,
            Interval::Span { lo, hi, .. } => Some((lo.0, hi.0)),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Interval::Empty)
    }

    /// Lebesgue measure.
    pub fn length(&self) -> ExtReal {
        match self.endpoints() {
            None => ExtReal::ZERO,
            Some((lo, hi)) => ExtReal::abs_diff(hi, lo),
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.endpoints().is_none_or(|(lo, hi)| lo.is_finite() && hi.is_finite())
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval::Empty => f.write_str("∅"),
            Interval::Span {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => write!(
                f,
                "{}{}, {}{}",
                if *lo_closed { '[' } else { '(' },
                lo.0,
                hi.0,
                if *hi_closed { ']' } else { ')' }
            ),
        }
    }
}

/// How the Hausdorff distance treats the empty interval.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EmptyConvention {
    /// `sup ∅ = 0`, `inf ∅ = ∞`, so `d_H(I, ∅) = ∞` for nonempty `I`.
    #[default]
    Infinite,
    /// `d_H(I, ∅) = length(I) / 2`, the distance from the endpoint pair to the
    /// diagonal under ℓ∞. Not a metric on its own (the triangle inequality
    /// through `∅` fails); its ∞-strengthening at `∅` is the interleaving
    /// distance.
    HalfLength,
}

/// Hausdorff distance between intervals. Endpoint openness is ignored, so
/// `d_H([0, 1), [0, 1]) = 0`.
pub fn hausdorff(i: &Interval, j: &Interval) -> ExtReal {
    hausdorff_with(i, j, EmptyConvention::Infinite)
}

pub fn hausdorff_with(i: &Interval, j: &Interval, empty: EmptyConvention) -> ExtReal {
    match (i.endpoints(), j.endpoints()) {
        (None, None) => ExtReal::ZERO,
        (Some(_), None) | (None, Some(_)) => match empty {
            EmptyConvention::Infinite => ExtReal::INF,
            EmptyConvention::HalfLength => i.length().max(j.length()).scale(0.5),
        },
        (Some((a, b)), Some((c, d))) => ExtReal::abs_diff(a, c).max(ExtReal::abs_diff(b, d)),
    }
}

/// Measure of the symmetric difference `λ((I ∪ J) − (I ∩ J))`.
pub fn dissimilarity(i: &Interval, j: &Interval) -> ExtReal {
    match (i.endpoints(), j.endpoints()) {
        (None, None) => ExtReal::ZERO,
        (Some(_), None) => i.length(),
        (None, Some(_)) => j.length(),
        (Some((a, b)), Some((c, d))) => {
            if a.max(c) <= b.min(d) {
                ExtReal::abs_diff(a, c) + ExtReal::abs_diff(b, d)
            } else {
                i.length() + j.length()
            }
        }
    }
}

/// Interleaving distance between interval modules:
/// `min(d_H(I, J), max(len(I)/2, len(J)/2))`, with `d_I(I, ∅) = len(I)/2`.
pub fn interval_interleaving(i: &Interval, j: &Interval) -> ExtReal {
    let half = i.length().max(j.length()).scale(0.5);
    match (i.is_empty(), j.is_empty()) {
        (false, false) => hausdorff(i, j).min(half),
        _ => half,
    }
}

/// Which metric an [`IntervalSpace`] carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalMetric {
    Hausdorff(EmptyConvention),
    Dissimilarity,
    Interleaving,
}

/// Intervals of `ℝ̄` pointed at `∅`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntervalSpace {
    metric: IntervalMetric,
}

impl IntervalSpace {
    pub fn new(metric: IntervalMetric) -> Self {
        IntervalSpace { metric }
    }

    pub fn hausdorff() -> Self {
        Self::new(IntervalMetric::Hausdorff(EmptyConvention::Infinite))
    }

    pub fn dissimilarity() -> Self {
        Self::new(IntervalMetric::Dissimilarity)
    }

    pub fn interleaving() -> Self {
        Self::new(IntervalMetric::Interleaving)
    }

    pub fn metric(&self) -> IntervalMetric {
        self.metric
    }
}

impl MetricSpace for IntervalSpace {
    type Point = Interval;

    fn distance(&self, x: &Interval, y: &Interval) -> ExtReal {
        match self.metric {
            IntervalMetric::Hausdorff(c) => hausdorff_with(x, y, c),
            IntervalMetric::Dissimilarity => dissimilarity(x, y),
            IntervalMetric::Interleaving => interval_interleaving(x, y),
        }
    }
}

impl PointedSpace for IntervalSpace {
    fn basepoint(&self) -> Interval {
        Interval::Empty
    }
}
