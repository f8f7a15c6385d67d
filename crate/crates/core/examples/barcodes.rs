//! Barcodes as diagrams of intervals: bottleneck distance under the
//! Hausdorff and interleaving metrics, and `W₁` under the dissimilarity
//! (symmetric difference) metric.

use pdmetric::spaces::{Interval, IntervalSpace};
use pdmetric::wasserstein::{bottleneck, wasserstein};
use pdmetric::{Diagram, PExponent, Result};

fn main() -> Result<()> {
    let bars = |v: &[(f64, f64)], space: &IntervalSpace| {
        Diagram::from_points(v.iter().map(|&(a, b)| Interval::closed_open(a, b)), space)
    };

    for (name, space) in [
        ("hausdorff", IntervalSpace::hausdorff()),
        ("interleaving", IntervalSpace::interleaving()),
        ("dissimilarity", IntervalSpace::dissimilarity()),
    ] {
        let alpha = bars(&[(0.0, 5.0), (1.0, 2.0)], &space)?;
        let beta = bars(&[(0.5, 5.5)], &space)?;
        let w_inf = bottleneck(&alpha, &beta, &space)?.total;
        let w_1 = wasserstein(&alpha, &beta, &space, PExponent::ONE)?.total;
        println!("{name:>13}: W_inf = {w_inf}, W_1 = {w_1}");
    }
    Ok(())
}
