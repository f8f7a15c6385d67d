use ordered_float::OrderedFloat;

use crate::metric::{ExtReal, MetricSpace, PointedSpace};

/// The extended real line `ℝ̄` with `|x - y|`, pointed at 0.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RealLine;

impl MetricSpace for RealLine {
    type Point = OrderedFloat<f64>;

    fn distance(&self, x: &Self::Point, y: &Self::Point) -> ExtReal {
        ExtReal::abs_diff(x.0, y.0)
    }

    fn contains(&self, x: &Self::Point) -> bool {
        !x.0.is_nan()
    }
}

impl PointedSpace for RealLine {
    fn basepoint(&self) -> Self::Point {
        OrderedFloat(0.0)
    }
}
