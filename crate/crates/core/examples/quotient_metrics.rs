//! Quotient and strengthened metrics: collapsing the diagonal of the
//! half-plane for several exponents, and the interleaving distance as the
//! ∞-strengthening of the Hausdorff distance at the empty interval.

use pdmetric::metric::{check_metric_axioms, p_strengthen, FiniteSpace, MetricSpace, QuotientPoint};
use pdmetric::spaces::{
    interval_interleaving, EmptyConvention, HalfPlane, HalfPlanePoint, Interval, IntervalMetric, IntervalSpace,
};
use pdmetric::{PExponent, Result};

fn main() -> Result<()> {
    let x = QuotientPoint::Point(HalfPlanePoint::new(0.0, 2.0));
    let y = QuotientPoint::Point(HalfPlanePoint::new(5.0, 8.0));
    for p in [PExponent::ONE, PExponent::new(2.0)?, PExponent::Infinity] {
        let space = HalfPlane::new(PExponent::Infinity).diagram_space(p);
        let sub = FiniteSpace::subspace(&space, &[QuotientPoint::Collapsed, x.clone(), y.clone()])?;
        println!(
            "p = {p}: d(x, y) = {}, axioms {:?}",
            space.distance(&x, &y),
            check_metric_axioms(&sub)
        );
    }

    let hausdorff = IntervalSpace::new(IntervalMetric::Hausdorff(EmptyConvention::HalfLength));
    let strengthened = p_strengthen(hausdorff, PExponent::Infinity);
    let (i, j) = (Interval::closed(0.0, 1.0), Interval::closed(5.0, 8.0));
    println!(
        "d_H = {}, strengthened = {}, interleaving = {}",
        hausdorff.distance(&i, &j),
        strengthened.distance(&i, &j),
        interval_interleaving(&i, &j)
    );
    Ok(())
}
