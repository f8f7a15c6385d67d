//! Seeded random inputs for the verification suites and examples.
//!
//! All randomness comes from ChaCha8 (`rand_chacha`) seeded with a `u64`,
//! which is specified independently of platform and word size, so every
//! suite reproduces bit-for-bit from its seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::Diagram;
use crate::metric::{ExtReal, FiniteSpace, PointedSpace};
use crate::spaces::{HalfPlaneDiagramPoint, HalfPlanePoint, Interval};

/// Seed used when neither a flag nor `PDMETRIC_SEED` provides one.
pub const DEFAULT_SEED: u64 = 20_240_601;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random off-diagonal half-plane point. About a third of the draws sit on
/// a coarse integer grid so that repeated atoms and tied costs occur.
pub fn halfplane_point<R: Rng>(rng: &mut R, scale: f64) -> HalfPlanePoint {
    if rng.random_bool(0.3) {
        let b = rng.random_range(0..4) as f64;
        let len = rng.random_range(1..4) as f64;
        HalfPlanePoint::new(b, b + len)
    } else {
        let b = rng.random_range(0.0..scale);
        let len = rng.random_range(0.01..scale / 2.0);
        HalfPlanePoint::new(b, b + len)
    }
}

/// Up to `max_size` atoms drawn by `draw`, canonicalized in `space`.
pub fn diagram<S, R, F>(rng: &mut R, space: &S, max_size: usize, mut draw: F) -> Diagram<S::Point>
where
    S: PointedSpace,
    R: Rng,
    F: FnMut(&mut R) -> S::Point,
{
    let n = rng.random_range(0..=max_size);
    let points: Vec<S::Point> = (0..n).map(|_| draw(rng)).collect();
    Diagram::from_points(points, space).expect("sampled points lie in the space")
}

/// A random diagram on the half-plane quotient.
pub fn halfplane_diagram<S, R>(rng: &mut R, space: &S, max_size: usize) -> Diagram<HalfPlaneDiagramPoint>
where
    S: PointedSpace<Point = HalfPlaneDiagramPoint>,
    R: Rng,
{
    diagram(rng, space, max_size, |r| halfplane_point(r, 10.0).into())
}

/// A random bounded interval with random endpoint openness.
pub fn interval<R: Rng>(rng: &mut R, scale: f64) -> Interval {
    let lo = rng.random_range(-scale..scale);
    let len = rng.random_range(0.05..scale);
    Interval::new(lo, lo + len, rng.random_bool(0.5), rng.random_bool(0.5)).expect("valid endpoints")
}

/// A random finite pointed metric space on `n` points (basepoint index 0).
///
/// Distances are shortest-path closures of random edge weights, so the
/// triangle inequality holds by construction. With `allow_infinite`, points
/// are split into components at infinite distance from each other; with
/// `allow_zero`, some edges have weight 0 and separation may fail.
pub fn finite_space<R: Rng>(rng: &mut R, n: usize, allow_infinite: bool, allow_zero: bool) -> FiniteSpace {
    let component: Vec<usize> = (0..n)
        .map(|i| {
            if allow_infinite && i > 0 && rng.random_bool(0.25) {
                1
            } else {
                0
            }
        })
        .collect();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for i in 0..n {
        d[i][i] = 0.0;
        for j in (i + 1)..n {
            if component[i] == component[j] {
                let w = if allow_zero && rng.random_bool(0.1) {
                    0.0
                } else {
                    rng.random_range(0.1..10.0)
                };
                d[i][j] = w;
                d[j][i] = w;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    let labels = (0..n)
        .map(|i| if i == 0 { "o".to_string() } else { format!("x{i}") })
        .collect();
    let matrix = d
        .into_iter()
        .map(|row| row.into_iter().map(ExtReal::new).collect())
        .collect();
    FiniteSpace::new(labels, matrix, 0).expect("well-formed matrix")
}

/// A random diagram over a finite space (basepoint draws are dropped).
pub fn finite_diagram<R: Rng>(rng: &mut R, space: &FiniteSpace, max_size: usize) -> Diagram<usize> {
    let n = space.len();
    diagram(rng, space, max_size, |r| r.random_range(0..n))
}
