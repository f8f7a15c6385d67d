//! New metrics from old: quotients by a subset, p-strengthening at the
//! basepoint, pullbacks along maps, and ℓp products.

use std::fmt;
use std::marker::PhantomData;

use super::norm::lp_pair;
use super::{ExtReal, FinitePointedSpace, MetricSpace, PExponent, PointedSpace};
use crate::error::{Error, Result};

/// A subset `A ⊂ X` together with the distance `d(·, A)`.
///
/// Closed forms are expected for built-in spaces. Implementations must satisfy
/// `d(x, A) <= d(x, y) + d(y, A)`.
pub trait Subset<S: MetricSpace + ?Sized> {
    fn contains(&self, space: &S, x: &S::Point) -> bool;
    fn distance_to(&self, space: &S, x: &S::Point) -> ExtReal;
    fn is_empty(&self) -> bool {
        false
    }
}

/// A subset described by a membership predicate and a distance function.
pub struct SubsetFn<M, D> {
    member: M,
    dist: D,
}

impl<M, D> SubsetFn<M, D> {
    pub fn new(member: M, dist: D) -> Self {
        SubsetFn { member, dist }
    }
}

impl<S, M, D> Subset<S> for SubsetFn<M, D>
where
    S: MetricSpace,
    M: Fn(&S::Point) -> bool,
    D: Fn(&S::Point) -> ExtReal,
{
    fn contains(&self, _space: &S, x: &S::Point) -> bool {
        (self.member)(x)
    }
    fn distance_to(&self, _space: &S, x: &S::Point) -> ExtReal {
        (self.dist)(x)
    }
}

/// An explicit finite subset; `d(x, A)` is the minimum over its members.
impl<S: MetricSpace> Subset<S> for Vec<S::Point> {
    fn contains(&self, _space: &S, x: &S::Point) -> bool {
        self.iter().any(|a| a == x)
    }
    fn distance_to(&self, space: &S, x: &S::Point) -> ExtReal {
        self.iter().map(|a| space.distance(x, a)).min().unwrap_or(ExtReal::INF)
    }
    fn is_empty(&self) -> bool {
        Vec::is_empty(self)
    }
}

/// A point of `X/A`: either the collapsed class `A` or a point of `X`.
///
/// `Point(a)` with `a ∈ A` is a legal representative of the collapsed class;
/// [`PointedSpace::is_basepoint`] recognizes it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QuotientPoint<P> {
    Collapsed,
    Point(P),
}

impl<P> From<P> for QuotientPoint<P> {
    fn from(x: P) -> Self {
        QuotientPoint::Point(x)
    }
}

/// The pointed space `(X/A, d̄_p, A)` with
/// `d̄_p(x, y) = min(d(x, y), ‖(d(x, A), d(y, A))‖_p)`.
pub struct Quotient<S, A> {
    space: S,
    subset: A,
    p: PExponent,
}

/// Builds `(X/A, d̄_p, A)`. The subset must be nonempty.
pub fn quotient_metric<S, A>(space: S, subset: A, p: PExponent) -> Result<Quotient<S, A>>
where
    S: MetricSpace,
    A: Subset<S>,
{
    if subset.is_empty() {
        return Err(Error::Domain("cannot collapse an empty subset".into()));
    }
    Ok(Quotient { space, subset, p })
}

impl<S: MetricSpace, A: Subset<S>> Quotient<S, A> {
    pub fn p(&self) -> PExponent {
        self.p
    }

    pub fn ambient(&self) -> &S {
        &self.space
    }

    pub fn subset(&self) -> &A {
        &self.subset
    }

    fn collapsed(&self, x: &QuotientPoint<S::Point>) -> bool {
        match x {
            QuotientPoint::Collapsed => true,
            QuotientPoint::Point(a) => self.subset.contains(&self.space, a),
        }
    }

    /// `d(x, A)`; zero on the collapsed class.
    pub fn subset_distance(&self, x: &QuotientPoint<S::Point>) -> ExtReal {
        match x {
            QuotientPoint::Point(a) if !self.collapsed(x) => self.subset.distance_to(&self.space, a),
            _ => ExtReal::ZERO,
        }
    }

    /// The ambient metric viewed as a function on `X/A × X/A`: `d(x, y)` off
    /// `A`, `d(x, A)` against the collapsed class, and 0 on `(A, A)`. Not a
    /// metric in general.
    pub fn ambient_distance(&self, x: &QuotientPoint<S::Point>, y: &QuotientPoint<S::Point>) -> ExtReal {
        match (self.collapsed(x), self.collapsed(y)) {
            (true, true) => ExtReal::ZERO,
            (true, false) => self.subset_distance(y),
            (false, true) => self.subset_distance(x),
            (false, false) => match (x, y) {
                (QuotientPoint::Point(a), QuotientPoint::Point(b)) => self.space.distance(a, b),
                _ => unreachable!(),
            },
        }
    }
}

impl<S: MetricSpace, A: Subset<S>> MetricSpace for Quotient<S, A> {
    type Point = QuotientPoint<S::Point>;

    fn distance(&self, x: &Self::Point, y: &Self::Point) -> ExtReal {
        match (self.collapsed(x), self.collapsed(y)) {
            (false, false) => {
                let direct = self.ambient_distance(x, y);
                direct.min(lp_pair(self.subset_distance(x), self.subset_distance(y), self.p))
            }
            _ => self.ambient_distance(x, y),
        }
    }

    fn contains(&self, x: &Self::Point) -> bool {
        match x {
            QuotientPoint::Collapsed => true,
            QuotientPoint::Point(a) => self.space.contains(a),
        }
    }
}

impl<S: MetricSpace, A: Subset<S>> PointedSpace for Quotient<S, A> {
    fn basepoint(&self) -> Self::Point {
        QuotientPoint::Collapsed
    }
    fn is_basepoint(&self, x: &Self::Point) -> bool {
        self.collapsed(x)
    }
}

/// The p-strengthening `d_p(x, x') = min(d(x, x'), ‖(d(x, x₀), d(x₀, x'))‖_p)`.
pub struct PStrengthened<S> {
    space: S,
    p: PExponent,
}

pub fn p_strengthen<S: PointedSpace>(space: S, p: PExponent) -> PStrengthened<S> {
    PStrengthened { space, p }
}

impl<S> PStrengthened<S> {
    pub fn p(&self) -> PExponent {
        self.p
    }
    pub fn inner(&self) -> &S {
        &self.space
    }
}

impl<S: PointedSpace> MetricSpace for PStrengthened<S> {
    type Point = S::Point;

    fn distance(&self, x: &S::Point, y: &S::Point) -> ExtReal {
        let x0 = self.space.basepoint();
        let direct = self.space.distance(x, y);
        direct.min(lp_pair(
            self.space.distance(x, &x0),
            self.space.distance(&x0, y),
            self.p,
        ))
    }

    fn contains(&self, x: &S::Point) -> bool {
        self.space.contains(x)
    }
}

impl<S: PointedSpace> PointedSpace for PStrengthened<S> {
    fn basepoint(&self) -> S::Point {
        self.space.basepoint()
    }
    fn is_basepoint(&self, x: &S::Point) -> bool {
        self.space.is_basepoint(x)
    }
}

impl<S: FinitePointedSpace> FinitePointedSpace for PStrengthened<S> {
    fn points(&self) -> Vec<S::Point> {
        self.space.points()
    }
}

/// The pullback `f*d(x, x') = d(f(x), f(x'))` of a metric along a map.
pub struct Pullback<X, S, F> {
    map: F,
    target: S,
    _domain: PhantomData<fn(&X)>,
}

pub fn pullback_metric<X, S, F>(map: F, target: S) -> Pullback<X, S, F>
where
    S: MetricSpace,
    F: Fn(&X) -> S::Point,
{
    Pullback {
        map,
        target,
        _domain: PhantomData,
    }
}

impl<X, S, F> MetricSpace for Pullback<X, S, F>
where
    X: Clone + Ord + fmt::Debug,
    S: MetricSpace,
    F: Fn(&X) -> S::Point,
{
    type Point = X;

    fn distance(&self, x: &X, y: &X) -> ExtReal {
        self.target.distance(&(self.map)(x), &(self.map)(y))
    }

    fn contains(&self, x: &X) -> bool {
        self.target.contains(&(self.map)(x))
    }
}

/// The ℓp product metric `D_p((x, y), (x', y')) = ‖(d_X(x, x'), d_Y(y, y'))‖_p`.
///
/// When both factors are pointed the product is pointed at `(x₀, y₀)`.
pub struct Product<A, B> {
    left: A,
    right: B,
    p: PExponent,
}

pub fn product_metric<A: MetricSpace, B: MetricSpace>(left: A, right: B, p: PExponent) -> Product<A, B> {
    Product { left, right, p }
}

impl<A: MetricSpace, B: MetricSpace> MetricSpace for Product<A, B> {
    type Point = (A::Point, B::Point);

    fn distance(&self, x: &Self::Point, y: &Self::Point) -> ExtReal {
        lp_pair(self.left.distance(&x.0, &y.0), self.right.distance(&x.1, &y.1), self.p)
    }

    fn contains(&self, x: &Self::Point) -> bool {
        self.left.contains(&x.0) && self.right.contains(&x.1)
    }
}

impl<A: PointedSpace, B: PointedSpace> PointedSpace for Product<A, B> {
    fn basepoint(&self) -> Self::Point {
        (self.left.basepoint(), self.right.basepoint())
    }
}

/// Attaches a basepoint to a metric space.
pub struct Pointed<S: MetricSpace> {
    space: S,
    basepoint: S::Point,
}

impl<S: MetricSpace> Pointed<S> {
    pub fn new(space: S, basepoint: S::Point) -> Result<Self> {
        if !space.contains(&basepoint) {
            return Err(Error::Domain(format!("basepoint {basepoint:?} not in space")));
        }
        Ok(Pointed { space, basepoint })
    }

    pub fn inner(&self) -> &S {
        &self.space
    }
}

impl<S: MetricSpace> MetricSpace for Pointed<S> {
    type Point = S::Point;
    fn distance(&self, x: &S::Point, y: &S::Point) -> ExtReal {
        self.space.distance(x, y)
    }
    fn contains(&self, x: &S::Point) -> bool {
        self.space.contains(x)
    }
}

impl<S: MetricSpace> PointedSpace for Pointed<S> {
    fn basepoint(&self) -> S::Point {
        self.basepoint.clone()
    }
}

/// A metric given by a closure. The caller vouches for the axioms; use
/// [`super::sampled_axiom_check`] to test them.
pub struct FnMetric<P, F> {
    dist: F,
    _points: PhantomData<fn(&P)>,
}

impl<P, F> FnMetric<P, F>
where
    F: Fn(&P, &P) -> ExtReal,
{
    pub fn new(dist: F) -> Self {
        FnMetric {
            dist,
            _points: PhantomData,
        }
    }
}

impl<P, F> MetricSpace for FnMetric<P, F>
where
    P: Clone + Ord + fmt::Debug,
    F: Fn(&P, &P) -> ExtReal,
{
    type Point = P;
    fn distance(&self, x: &P, y: &P) -> ExtReal {
        (self.dist)(x, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::FiniteSpace;
    use crate::spaces::RealLine;

    fn e(v: f64) -> ExtReal {
        ExtReal::new(v)
    }

    fn three_point() -> FiniteSpace {
        // a, b far apart, both close to the basepoint
        FiniteSpace::new(
            vec!["x0".into(), "a".into(), "b".into()],
            vec![
                vec![e(0.0), e(1.0), e(1.0)],
                vec![e(1.0), e(0.0), e(10.0)],
                vec![e(1.0), e(10.0), e(0.0)],
            ],
            0,
        )
        .unwrap()
    }

    #[test]
    fn strengthening_at_infinity_shortcuts_through_basepoint() {
        // The raw matrix breaks the triangle inequality on purpose (10 > 1 + 1);
        // strengthening only reads the formula.
        let s = p_strengthen(three_point(), PExponent::Infinity);
        assert_eq!(s.distance(&1, &2), e(1.0));
        assert_eq!(s.distance(&1, &0), e(1.0));
    }

    #[test]
    fn one_strengthening_is_identity_on_a_metric() {
        let space = FiniteSpace::discrete(&["x0", "a", "b", "c"], 0);
        let s = p_strengthen(&space, PExponent::ONE);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(s.distance(&x, &y), space.distance(&x, &y));
            }
        }
    }

    #[test]
    fn pullbacks() {
        let id = pullback_metric(|x: &ordered_float::OrderedFloat<f64>| *x, RealLine);
        let (a, b) = (3.0.into(), 7.5.into());
        assert_eq!(id.distance(&a, &b), RealLine.distance(&a, &b));

        let constant = pullback_metric(|_: &i64| ordered_float::OrderedFloat(4.0), RealLine);
        assert_eq!(constant.distance(&1, &100), ExtReal::ZERO);

        let doubled = pullback_metric(|n: &i64| ordered_float::OrderedFloat(2.0 * *n as f64), RealLine);
        assert_eq!(doubled.distance(&1, &3), e(4.0));
    }

    #[test]
    fn products() {
        let plane = product_metric(RealLine, RealLine, PExponent::Finite(2.0));
        let o = (0.0.into(), 0.0.into());
        assert!(plane.distance(&o, &(3.0.into(), 4.0.into())).approx_eq(e(5.0), 1e-12));
        assert_eq!(plane.distance(&o, &o), ExtReal::ZERO);
        let sup = product_metric(RealLine, RealLine, PExponent::Infinity);
        assert_eq!(sup.distance(&o, &(1.0.into(), 2.0.into())), e(2.0));
    }

    #[test]
    fn empty_subset_is_rejected() {
        let space = FiniteSpace::discrete(&["x0", "a"], 0);
        let r = quotient_metric(&space, Vec::<usize>::new(), PExponent::ONE);
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn finite_subset_quotient() {
        // path 0 - 1 - 2 - 3 with unit edges; collapse {0, 3}
        let d = |i: usize, j: usize| e((i as f64 - j as f64).abs());
        let m: Vec<Vec<ExtReal>> = (0..4).map(|i| (0..4).map(|j| d(i, j)).collect()).collect();
        let space = FiniteSpace::new((0..4).map(|i| i.to_string()).collect(), m, 0).unwrap();
        let q = quotient_metric(&space, vec![0usize, 3], PExponent::ONE).unwrap();
        let pt = QuotientPoint::Point;
        assert_eq!(q.distance(&pt(1), &QuotientPoint::Collapsed), e(1.0));
        assert_eq!(q.distance(&pt(2), &QuotientPoint::Collapsed), e(1.0));
        assert_eq!(q.distance(&pt(1), &pt(2)), e(1.0));
        assert!(q.is_basepoint(&pt(3)));
        assert_eq!(q.distance(&pt(3), &pt(0)), ExtReal::ZERO);
    }
}
