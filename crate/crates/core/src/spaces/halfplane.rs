use std::fmt;

use ordered_float::OrderedFloat;

use crate::error::{Error, Result};
use crate::metric::{lp_norm, quotient_metric, ExtReal, MetricSpace, PExponent, Quotient, QuotientPoint, Subset};

/// A point `(b, d)` of the half-plane `b <= d`.
///
/// [`HalfPlanePoint::new`] does not validate; membership is decided by
/// [`MetricSpace::contains`] on a [`HalfPlane`], and [`HalfPlanePoint::try_new`]
/// rejects `b > d` and NaN.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfPlanePoint {
    birth: OrderedFloat<f64>,
    death: OrderedFloat<f64>,
}

impl HalfPlanePoint {
    pub fn new(birth: f64, death: f64) -> Self {
        HalfPlanePoint {
            birth: OrderedFloat(birth),
            death: OrderedFloat(death),
        }
    }

    pub fn try_new(birth: f64, death: f64) -> Result<Self> {
        let x = Self::new(birth, death);
        if !x.is_valid() {
            return Err(Error::Domain(format!("not a half-plane point: {x:?}")));
        }
        Ok(x)
    }

    fn is_valid(&self) -> bool {
        !self.birth.is_nan() && !self.death.is_nan() && self.birth <= self.death
    }

    pub fn birth(&self) -> f64 {
        self.birth.0
    }

    pub fn death(&self) -> f64 {
        self.death.0
    }

    /// `d - b`, with `∞ - ∞ = 0` on the extended diagonal.
    pub fn persistence(&self) -> ExtReal {
        ExtReal::abs_diff(self.death.0, self.birth.0)
    }

    pub fn is_diagonal(&self) -> bool {
        self.birth == self.death
    }
}

impl fmt::Debug for HalfPlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.birth.0, self.death.0)
    }
}

/// The half-plane `ℝ²_≤ = {(b, d) : b <= d}` with the ℓq metric, or its
/// extended version over `ℝ̄`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlane {
    q: PExponent,
    extended: bool,
}

/// A point of the half-plane with the diagonal collapsed.
pub type HalfPlaneDiagramPoint = QuotientPoint<HalfPlanePoint>;

/// `(ℝ²_≤ / Δ, d̄_p, Δ)`, the space of classical persistence diagrams.
pub type HalfPlaneQuotient = Quotient<HalfPlane, Diagonal>;

impl HalfPlane {
    pub fn new(q: PExponent) -> Self {
        HalfPlane { q, extended: false }
    }

    pub fn ell_inf() -> Self {
        Self::new(PExponent::Infinity)
    }

    pub fn ell_1() -> Self {
        Self::new(PExponent::ONE)
    }

    /// Allows infinite coordinates.
    pub fn extended(self) -> Self {
        HalfPlane { extended: true, ..self }
    }

    pub fn q(&self) -> PExponent {
        self.q
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    /// The quotient by the diagonal with the `p`-quotient metric.
    pub fn diagram_space(self, p: PExponent) -> HalfPlaneQuotient {
        quotient_metric(self, Diagonal, p).expect("the diagonal is nonempty")
    }
}

impl MetricSpace for HalfPlane {
    type Point = HalfPlanePoint;

    fn distance(&self, x: &HalfPlanePoint, y: &HalfPlanePoint) -> ExtReal {
        lp_norm(
            &[
                ExtReal::abs_diff(x.birth.0, y.birth.0),
                ExtReal::abs_diff(x.death.0, y.death.0),
            ],
            self.q,
        )
    }

    fn contains(&self, x: &HalfPlanePoint) -> bool {
        x.is_valid() && (self.extended || (x.birth.is_finite() && x.death.is_finite()))
    }
}

/// The diagonal `Δ = {(t, t)}` (including `(±∞, ±∞)` in the extended case).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Diagonal;

impl Subset<HalfPlane> for Diagonal {
    fn contains(&self, _space: &HalfPlane, x: &HalfPlanePoint) -> bool {
        x.is_diagonal()
    }

    fn distance_to(&self, space: &HalfPlane, x: &HalfPlanePoint) -> ExtReal {
        diagonal_distance(x, space.q)
    }
}

/// `d(x, Δ) / (d - b)` for the ℓq metric: 1 for `q = 1`, `2^{1/q - 1}` for
/// finite `q > 1`, and `1/2` for `q = ∞`.
pub fn diagonal_factor(q: PExponent) -> f64 {
    match q {
        PExponent::Infinity => 0.5,
        PExponent::Finite(e) => 2f64.powf(1.0 / e - 1.0),
    }
}

fn diagonal_distance(x: &HalfPlanePoint, q: PExponent) -> ExtReal {
    x.persistence().scale(diagonal_factor(q))
}

/// ℓq distance between two half-plane points (finite or extended).
pub fn halfplane_dist(x: &HalfPlanePoint, y: &HalfPlanePoint, q: PExponent) -> Result<ExtReal> {
    for z in [x, y] {
        if !z.is_valid() {
            return Err(Error::Domain(format!("not a half-plane point: {z:?}")));
        }
    }
    Ok(HalfPlane::new(q).extended().distance(x, y))
}

/// `inf over t of ‖(b - t, d - t)‖_q`, in closed form.
pub fn halfplane_diag_dist(x: &HalfPlanePoint, q: PExponent) -> Result<ExtReal> {
    if !x.is_valid() {
        return Err(Error::Domain(format!("not a half-plane point: {x:?}")));
    }
    Ok(diagonal_distance(x, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{MetricSpace, PointedSpace};

    fn pt(b: f64, d: f64) -> HalfPlanePoint {
        HalfPlanePoint::new(b, d)
    }

    #[test]
    fn diagonal_distance_examples() {
        assert_eq!(
            halfplane_diag_dist(&pt(0.0, 2.0), PExponent::Infinity).unwrap(),
            ExtReal::ONE
        );
        assert_eq!(
            halfplane_diag_dist(&pt(0.0, 2.0), PExponent::ONE).unwrap(),
            ExtReal::new(2.0)
        );
        let two = halfplane_diag_dist(&pt(0.0, 2.0), PExponent::Finite(2.0)).unwrap();
        assert!(two.approx_eq(ExtReal::new(2f64.sqrt()), 1e-15));
        for q in [PExponent::ONE, PExponent::Finite(3.0), PExponent::Infinity] {
            assert_eq!(halfplane_diag_dist(&pt(4.0, 4.0), q).unwrap(), ExtReal::ZERO);
        }
    }

    #[test]
    fn pointwise_distance_and_errors() {
        assert_eq!(
            halfplane_dist(&pt(0.0, 2.0), &pt(1.0, 3.0), PExponent::Infinity).unwrap(),
            ExtReal::ONE
        );
        assert!(halfplane_dist(&pt(3.0, 1.0), &pt(1.0, 3.0), PExponent::ONE).is_err());
        assert!(halfplane_diag_dist(&pt(3.0, 1.0), PExponent::ONE).is_err());
        assert!(HalfPlanePoint::try_new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn extended_points() {
        let inf = f64::INFINITY;
        let plane = HalfPlane::ell_inf().extended();
        assert!(plane.contains(&pt(0.0, inf)));
        assert!(!HalfPlane::ell_inf().contains(&pt(0.0, inf)));
        assert_eq!(plane.distance(&pt(0.0, inf), &pt(1.0, inf)), ExtReal::ONE);
        assert_eq!(plane.distance(&pt(0.0, inf), &pt(1.0, 5.0)), ExtReal::INF);
        assert_eq!(
            halfplane_diag_dist(&pt(0.0, inf), PExponent::Infinity).unwrap(),
            ExtReal::INF
        );
        assert_eq!(
            halfplane_diag_dist(&pt(inf, inf), PExponent::Infinity).unwrap(),
            ExtReal::ZERO
        );
        assert_eq!(
            halfplane_diag_dist(&pt(-inf, -inf), PExponent::ONE).unwrap(),
            ExtReal::ZERO
        );
    }

    #[test]
    fn quotient_examples() {
        let inf_space = HalfPlane::ell_inf().diagram_space(PExponent::Infinity);
        let (x, y) = (pt(0.0, 2.0).into(), pt(10.0, 12.0).into());
        assert_eq!(inf_space.distance(&x, &y), ExtReal::ONE);
        let one_space = HalfPlane::ell_inf().diagram_space(PExponent::ONE);
        assert_eq!(
            one_space.distance(&pt(0.0, 2.0).into(), &pt(0.0, 3.0).into()),
            ExtReal::ONE
        );
        assert!(one_space.is_basepoint(&pt(5.0, 5.0).into()));
        assert_eq!(
            one_space.distance(&pt(5.0, 5.0).into(), &QuotientPoint::Collapsed),
            ExtReal::ZERO
        );
    }
}
