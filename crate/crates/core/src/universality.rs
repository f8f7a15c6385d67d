//! Lipschitz extension to diagrams and the checkers built on it.
//!
//! A basepoint-preserving Lipschitz map `φ: (X, d, x₀) -> N` into a
//! p-subadditive metric monoid extends uniquely to a monoid homomorphism
//! `φ̃: (D(X, x₀), W_p) -> N` with the same Lipschitz norm. The sup over all
//! diagrams is not computable, so [`check_norm_law`] tests its two concrete
//! consequences: the upper bound `ρ(φ̃α, φ̃β) <= ‖φ‖ W_p(α, β)` on samples and
//! attainment of `‖φ‖` on pairs of singletons.
//!
//! The remaining checkers exercise the corollaries: maximality of `W_p` among
//! p-subadditive metrics with 1-Lipschitz inclusion, the equivalence between
//! the p-strengthened triangle inequality and `i*W_p = d`, and abstract
//! converse stability `ρ <= W_p[i*ρ, x₀]`.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::assignment::for_each_permutation;
use crate::diagram::{extend_hom, CommutativeMonoid, Diagram, MetricMonoid};
use crate::error::{Error, Result};
use crate::metric::{check_p_strengthened, lp_norm, ExtReal, FinitePointedSpace, MetricSpace, PExponent, PointedSpace};
use crate::wasserstein::wasserstein;

pub(crate) const TOL: f64 = 1e-9;

pub(crate) fn leq(lhs: ExtReal, rhs: ExtReal) -> bool {
    rhs.is_infinite() || (lhs.is_finite() && lhs.value() <= rhs.value() + TOL * rhs.value().max(1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    PreconditionFailed,
}

/// A counterexample: two inputs and the two sides of the violated
/// inequality.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub left: String,
    pub right: String,
    pub lhs: ExtReal,
    pub rhs: ExtReal,
}

impl Witness {
    pub fn new(left: impl fmt::Debug, right: impl fmt::Debug, lhs: ExtReal, rhs: ExtReal) -> Self {
        Witness {
            left: format!("{left:?}"),
            right: format!("{right:?}"),
            lhs,
            rhs,
        }
    }
}

/// Two inputs of a two-sided check.
pub type Pair<E> = (E, E);

/// Four inputs `(a, b, a', b')` of a subadditivity check.
pub type Quad<E> = (E, E, E, E);

/// Outcome of a property check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub property: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Number of instances examined.
    pub checked: usize,
}

impl Report {
    pub fn pass(property: impl Into<String>, checked: usize) -> Self {
        Report {
            property: property.into(),
            status: Status::Pass,
            witness: None,
            checked,
        }
    }

    pub fn fail(property: impl Into<String>, checked: usize, witness: Witness) -> Self {
        Report {
            property: property.into(),
            status: Status::Fail,
            witness: Some(witness),
            checked,
        }
    }

    pub fn precondition_failed(property: impl Into<String>, checked: usize, witness: Witness) -> Self {
        Report {
            property: property.into(),
            status: Status::PreconditionFailed,
            witness: Some(witness),
            checked,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Builds a report from an iterator of `(left, right, lhs, rhs)` checks of
    /// `lhs <= rhs`, stopping at the first violation.
    pub fn from_bounds<I, L, R>(property: impl Into<String>, checks: I) -> Self
    where
        I: IntoIterator<Item = (L, R, ExtReal, ExtReal)>,
        L: fmt::Debug,
        R: fmt::Debug,
    {
        let mut n = 0;
        for (l, r, lhs, rhs) in checks {
            n += 1;
            if !leq(lhs, rhs) {
                return Report::fail(property, n, Witness::new(l, r, lhs, rhs));
            }
        }
        Report::pass(property, n)
    }

    /// Reinterprets a failure as a failed hypothesis.
    pub fn as_precondition(mut self) -> Self {
        if self.status == Status::Fail {
            self.status = Status::PreconditionFailed;
        }
        self
    }
}

/// `ρ/d` with the conventions used for Lipschitz norms: pairs at infinite
/// source distance impose nothing, `0/0 = 0`, and a positive image distance
/// over a zero source distance is infinite.
pub fn lipschitz_ratio(image: ExtReal, source: ExtReal) -> ExtReal {
    if source.is_infinite() {
        ExtReal::ZERO
    } else if source.is_zero() {
        if image.is_zero() {
            ExtReal::ZERO
        } else {
            ExtReal::INF
        }
    } else if image.is_infinite() {
        ExtReal::INF
    } else {
        ExtReal::new(image.value() / source.value())
    }
}

/// Exact Lipschitz norm of `f` on a finite space: the largest ratio
/// `ρ(f(x), f(x')) / d(x, x')` over all pairs.
pub fn lipschitz_norm<S, T, F, D>(source: &S, f: F, target: D) -> ExtReal
where
    S: FinitePointedSpace,
    F: Fn(&S::Point) -> T,
    D: Fn(&T, &T) -> ExtReal,
{
    let pts = source.points();
    let images: Vec<T> = pts.iter().map(&f).collect();
    let mut norm = ExtReal::ZERO;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let r = lipschitz_ratio(target(&images[i], &images[j]), source.distance(&pts[i], &pts[j]));
            norm = norm.max(r);
        }
    }
    norm
}

/// The extension `φ̃(α)` for `φ` into a metric monoid declared
/// p-subadditive (a declared exponent `q >= p` also qualifies, since
/// `‖·‖_q <= ‖·‖_p`).
pub fn extend_lipschitz<S, M, F>(
    space: &S,
    monoid: &M,
    phi: F,
    alpha: &Diagram<S::Point>,
    p: PExponent,
) -> Result<M::Element>
where
    S: PointedSpace,
    M: MetricMonoid,
    M::Element: PartialEq + fmt::Debug,
    F: Fn(&S::Point) -> M::Element,
{
    match monoid.subadditivity() {
        Some(q) if q >= p => extend_hom(space, monoid, phi, alpha),
        Some(q) => Err(Error::Precondition(format!(
            "target is declared {q}-subadditive, which does not imply {p}-subadditivity"
        ))),
        None => Err(Error::Precondition("target monoid declares no subadditivity".into())),
    }
}

/// Diagrams under `+` with `W_p`, a p-subadditive metric monoid.
pub struct WassersteinMonoid<S> {
    space: S,
    p: PExponent,
}

impl<S: PointedSpace> WassersteinMonoid<S> {
    pub fn new(space: S, p: PExponent) -> Self {
        WassersteinMonoid { space, p }
    }

    pub fn space(&self) -> &S {
        &self.space
    }
}

impl<S: PointedSpace> CommutativeMonoid for WassersteinMonoid<S> {
    type Element = Diagram<S::Point>;
    fn identity(&self) -> Self::Element {
        Diagram::empty()
    }
    fn combine(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        a.add(b)
    }
}

impl<S: PointedSpace> MetricMonoid for WassersteinMonoid<S> {
    fn distance(&self, a: &Self::Element, b: &Self::Element) -> ExtReal {
        wasserstein(a, b, &self.space, self.p)
            .expect("monoid elements are diagrams on the space")
            .total
    }
    fn subadditivity(&self) -> Option<PExponent> {
        Some(self.p)
    }
}

/// `ρ(a + b, c + d) <= ‖(ρ(a, c), ρ(b, d))‖_p` on the given quadruples.
pub fn check_subadditivity<E, C, R>(property: &str, combine: C, rho: R, p: PExponent, quads: &[Quad<E>]) -> Report
where
    E: fmt::Debug,
    C: Fn(&E, &E) -> E,
    R: Fn(&E, &E) -> ExtReal,
{
    Report::from_bounds(
        property,
        quads.iter().map(|(a, b, c, d)| {
            let lhs = rho(&combine(a, b), &combine(c, d));
            let rhs = lp_norm(&[rho(a, c), rho(b, d)], p);
            (format!("{a:?} + {b:?}"), format!("{c:?} + {d:?}"), lhs, rhs)
        }),
    )
}

/// [`check_subadditivity`] for a metric monoid at its declared exponent.
pub fn check_declared_subadditivity<M>(monoid: &M, quads: &[Quad<M::Element>]) -> Report
where
    M: MetricMonoid,
    M::Element: fmt::Debug,
{
    match monoid.subadditivity() {
        None => Report::pass("declared subadditivity (none declared)", 0),
        Some(p) => check_subadditivity(
            &format!("{p}-subadditivity"),
            |a, b| monoid.combine(a, b),
            |a, b| monoid.distance(a, b),
            p,
            quads,
        ),
    }
}

/// `ρ(Σ aᵢ, Σ bᵢ) <= ‖(ρ(aᵢ, b_σ(i)))ᵢ‖_p` for every permutation `σ` of each
/// tuple, in a monoid declared p-subadditive.
pub fn check_permuted_sums<M>(monoid: &M, tuples: &[Pair<Vec<M::Element>>]) -> Report
where
    M: MetricMonoid,
    M::Element: fmt::Debug,
{
    let Some(p) = monoid.subadditivity() else {
        return Report::pass("permuted sums (no exponent declared)", 0);
    };
    let property = "sum of tuples bounded by every matching";
    let mut checked = 0;
    for (a, b) in tuples {
        assert_eq!(a.len(), b.len(), "tuples must have equal length");
        let sa = a.iter().fold(monoid.identity(), |acc, x| monoid.combine(&acc, x));
        let sb = b.iter().fold(monoid.identity(), |acc, x| monoid.combine(&acc, x));
        let lhs = monoid.distance(&sa, &sb);
        let mut witness = None;
        for_each_permutation(a.len(), |sigma| {
            if witness.is_some() {
                return;
            }
            let costs: Vec<ExtReal> = sigma
                .iter()
                .enumerate()
                .map(|(i, &j)| monoid.distance(&a[i], &b[j]))
                .collect();
            let rhs = lp_norm(&costs, p);
            checked += 1;
            if !leq(lhs, rhs) {
                witness = Some(Witness::new(a, b, lhs, rhs));
            }
        });
        if let Some(w) = witness {
            return Report::fail(property, checked, w);
        }
    }
    Report::pass(property, checked)
}

/// The two literal consequences of `‖φ̃‖ = ‖φ‖`: the bound
/// `ρ(φ̃α, φ̃β) <= ‖φ‖ W_p(α, β)` on `pairs`, and a singleton pair among
/// `singletons` (basepoint included automatically) with ratio at least
/// `‖φ‖ - 1e-9`.
#[allow(clippy::too_many_arguments)]
pub fn check_norm_law<S, M, F>(
    space: &S,
    monoid: &M,
    phi: F,
    norm: ExtReal,
    p: PExponent,
    pairs: &[Pair<Diagram<S::Point>>],
    singletons: &[S::Point],
) -> Result<Report>
where
    S: PointedSpace,
    M: MetricMonoid,
    M::Element: PartialEq + fmt::Debug,
    F: Fn(&S::Point) -> M::Element,
{
    let ext = |a: &Diagram<S::Point>| extend_lipschitz(space, monoid, &phi, a, p);
    let mut checked = 0;
    for (a, b) in pairs {
        checked += 1;
        let lhs = monoid.distance(&ext(a)?, &ext(b)?);
        let w = wasserstein(a, b, space, p)?.total;
        let rhs = if w.is_zero() {
            ExtReal::ZERO
        } else if norm.is_infinite() {
            ExtReal::INF
        } else {
            w.scale(norm.value())
        };
        if !leq(lhs, rhs) {
            return Ok(Report::fail(
                "norm law upper bound",
                checked,
                Witness::new(a, b, lhs, rhs),
            ));
        }
    }
    let mut pts: Vec<S::Point> = vec![space.basepoint()];
    pts.extend(singletons.iter().cloned());
    let mut best = ExtReal::ZERO;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let (a, b) = (
                Diagram::include(pts[i].clone(), space),
                Diagram::include(pts[j].clone(), space),
            );
            let image = monoid.distance(&ext(&a)?, &ext(&b)?);
            let w = wasserstein(&a, &b, space, p)?.total;
            best = best.max(lipschitz_ratio(image, w));
            checked += 1;
        }
    }
    let attained = if norm.is_infinite() {
        best.is_infinite()
    } else {
        best.is_infinite() || best.value() >= norm.value() - TOL
    };
    Ok(if attained {
        Report::pass("norm law upper bound and singleton attainment", checked)
    } else {
        Report::fail(
            "norm attained on singletons",
            checked,
            Witness::new("best singleton ratio", "norm", best, norm),
        )
    })
}

/// Every diagram on the non-basepoint points of `space` with at most `bound`
/// atoms.
pub fn all_diagrams<S: FinitePointedSpace>(space: &S, bound: usize) -> Vec<Diagram<S::Point>> {
    let atoms: Vec<S::Point> = space.points().into_iter().filter(|x| !space.is_basepoint(x)).collect();
    let mut out = Vec::new();
    let mut counts = vec![0usize; atoms.len()];
    fn rec<P: Clone + Ord>(k: usize, left: usize, counts: &mut [usize], atoms: &[P], out: &mut Vec<Diagram<P>>) {
        if k == atoms.len() {
            out.push(Diagram::from_canonical_counts(
                atoms.iter().cloned().zip(counts.iter().copied()),
            ));
            return;
        }
        for c in 0..=left {
            counts[k] = c;
            rec(k + 1, left - c, counts, atoms, out);
        }
        counts[k] = 0;
    }
    rec(0, bound, &mut counts, &atoms, &mut out);
    out
}

/// Maximality of `W_p`: if the inclusion is 1-Lipschitz for `ρ` and `ρ` is
/// p-subadditive, then `ρ <= W_p`.
///
/// Both hypotheses are checked first (1-Lipschitz exhaustively on points,
/// subadditivity on `quad_samples` random quadruples); a failure there is
/// reported as `precondition_failed`. The conclusion is then checked
/// exhaustively on all diagrams with at most `bound` atoms.
pub fn check_maximality<S, R, G>(
    space: &S,
    rho: R,
    p: PExponent,
    bound: usize,
    quad_samples: usize,
    rng: &mut G,
) -> Result<Report>
where
    S: FinitePointedSpace,
    R: Fn(&Diagram<S::Point>, &Diagram<S::Point>) -> ExtReal,
    G: Rng,
{
    let pts = space.points();
    let lip = Report::from_bounds(
        "inclusion is 1-Lipschitz for rho",
        pts.iter().flat_map(|x| {
            pts.iter().map(|y| {
                let lhs = rho(&Diagram::include(x.clone(), space), &Diagram::include(y.clone(), space));
                (x.clone(), y.clone(), lhs, space.distance(x, y))
            })
        }),
    );
    if !lip.passed() {
        return Ok(lip.as_precondition());
    }
    let diagrams = all_diagrams(space, bound);
    let pick = |rng: &mut G| diagrams[rng.random_range(0..diagrams.len())].clone();
    let quads: Vec<_> = (0..quad_samples)
        .map(|_| (pick(rng), pick(rng), pick(rng), pick(rng)))
        .collect();
    let sub = check_subadditivity("rho is p-subadditive", |a, b| a.add(b), &rho, p, &quads);
    if !sub.passed() {
        return Ok(sub.as_precondition());
    }
    let mut checked = 0;
    for a in &diagrams {
        for b in &diagrams {
            checked += 1;
            let lhs = rho(a, b);
            let rhs = wasserstein(a, b, space, p)?.total;
            if !leq(lhs, rhs) {
                return Ok(Report::fail("rho <= W_p", checked, Witness::new(a, b, lhs, rhs)));
            }
        }
    }
    Ok(Report::pass("rho <= W_p", checked))
}

/// Outcome of [`check_restriction_trichotomy`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trichotomy {
    /// `d` satisfies the p-strengthened triangle inequality on all pairs.
    pub strengthened: bool,
    /// `W_p(i(x), i(y)) = d(x, y)` on all pairs.
    pub restriction_is_d: bool,
    pub report: Report,
}

/// Verifies that the p-strengthened triangle inequality holds exactly when
/// `i*W_p = d`, exhaustively on a finite space.
pub fn check_restriction_trichotomy<S: FinitePointedSpace>(space: &S, p: PExponent) -> Result<Trichotomy> {
    let pts = space.points();
    let pairs: Vec<(S::Point, S::Point)> = pts
        .iter()
        .flat_map(|x| pts.iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    let strengthened = check_p_strengthened(space, p, &pairs);
    let mut restriction_is_d = true;
    let mut witness = None;
    for (x, y) in &pairs {
        let w = wasserstein(
            &Diagram::include(x.clone(), space),
            &Diagram::include(y.clone(), space),
            space,
            p,
        )?
        .total;
        let d = space.distance(x, y);
        if !w.approx_eq(d, TOL * d.value().max(1.0)) {
            restriction_is_d = false;
            witness.get_or_insert_with(|| Witness::new(x, y, w, d));
        }
    }
    let property = "p-strengthened inequality holds iff i*W_p = d";
    let report = if strengthened == restriction_is_d {
        Report::pass(property, pairs.len())
    } else {
        Report::fail(
            property,
            pairs.len(),
            witness.unwrap_or_else(|| Witness::new("strengthened", "restriction", ExtReal::ONE, ExtReal::ZERO)),
        )
    };
    Ok(Trichotomy {
        strengthened,
        restriction_is_d,
        report,
    })
}

/// `i*ρ`: the metric `ρ(i(x), i(y))` on points, pointed like `space`.
pub struct InducedMetric<'a, S, R> {
    space: &'a S,
    rho: R,
}

impl<'a, S, R> InducedMetric<'a, S, R>
where
    S: PointedSpace,
    R: Fn(&Diagram<S::Point>, &Diagram<S::Point>) -> ExtReal,
{
    pub fn new(space: &'a S, rho: R) -> Self {
        InducedMetric { space, rho }
    }
}

impl<S, R> MetricSpace for InducedMetric<'_, S, R>
where
    S: PointedSpace,
    R: Fn(&Diagram<S::Point>, &Diagram<S::Point>) -> ExtReal,
{
    type Point = S::Point;

    fn distance(&self, x: &S::Point, y: &S::Point) -> ExtReal {
        (self.rho)(
            &Diagram::include(x.clone(), self.space),
            &Diagram::include(y.clone(), self.space),
        )
    }

    fn contains(&self, x: &S::Point) -> bool {
        self.space.contains(x)
    }
}

impl<S, R> PointedSpace for InducedMetric<'_, S, R>
where
    S: PointedSpace,
    R: Fn(&Diagram<S::Point>, &Diagram<S::Point>) -> ExtReal,
{
    fn basepoint(&self) -> S::Point {
        self.space.basepoint()
    }
    fn is_basepoint(&self, x: &S::Point) -> bool {
        self.space.is_basepoint(x)
    }
}

/// Abstract converse stability: for a p-subadditive `ρ` on diagrams,
/// `ρ(α, β) <= W_p[i*ρ, x₀](α, β)`.
///
/// Subadditivity is checked on `quads` first; a violation is reported as
/// `precondition_failed`.
pub fn converse_stability<S, R>(
    space: &S,
    rho: R,
    p: PExponent,
    pairs: &[Pair<Diagram<S::Point>>],
    quads: &[Quad<Diagram<S::Point>>],
) -> Result<Report>
where
    S: PointedSpace,
    R: Fn(&Diagram<S::Point>, &Diagram<S::Point>) -> ExtReal,
{
    let sub = check_subadditivity("rho is p-subadditive", |a, b| a.add(b), &rho, p, quads);
    if !sub.passed() {
        return Ok(sub.as_precondition());
    }
    let induced = InducedMetric::new(space, &rho);
    let mut checked = 0;
    for (a, b) in pairs {
        checked += 1;
        let lhs = rho(a, b);
        let rhs = wasserstein(a, b, &induced, p)?.total;
        if !leq(lhs, rhs) {
            return Ok(Report::fail("rho <= W_p[i*rho]", checked, Witness::new(a, b, lhs, rhs)));
        }
    }
    Ok(Report::pass("rho <= W_p[i*rho]", checked))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{MaxPlus, RealSum};
    use crate::metric::{p_strengthen, FiniteSpace, QuotientPoint};
    use crate::sampling::{finite_space, seeded};
    use crate::spaces::{HalfPlane, HalfPlanePoint, RealLine};

    #[test]
    fn lipschitz_norm_examples() {
        let pts = ["0", "1", "2"];
        let line = FiniteSpace::new(
            pts.iter().map(|s| s.to_string()).collect(),
            (0..3)
                .map(|i: i32| (0..3).map(|j: i32| ExtReal::new((i - j).abs() as f64)).collect())
                .collect(),
            0,
        )
        .unwrap();
        let abs = |a: &f64, b: &f64| ExtReal::abs_diff(*a, *b);
        assert_eq!(lipschitz_norm(&line, |&i| i as f64, abs), ExtReal::ONE);
        assert_eq!(lipschitz_norm(&line, |_| 7.0, abs), ExtReal::ZERO);
        assert_eq!(lipschitz_norm(&line, |&i| 2.0 * i as f64, abs), ExtReal::new(2.0));
    }

    #[test]
    fn ratio_conventions() {
        assert_eq!(lipschitz_ratio(ExtReal::ZERO, ExtReal::ZERO), ExtReal::ZERO);
        assert_eq!(lipschitz_ratio(ExtReal::ONE, ExtReal::ZERO), ExtReal::INF);
        assert_eq!(lipschitz_ratio(ExtReal::INF, ExtReal::INF), ExtReal::ZERO);
        assert_eq!(lipschitz_ratio(ExtReal::INF, ExtReal::ONE), ExtReal::INF);
    }

    #[test]
    fn persistence_extends() {
        let space = HalfPlane::ell_inf().diagram_space(PExponent::ONE);
        let pers = |x: &QuotientPoint<HalfPlanePoint>| match x {
            QuotientPoint::Collapsed => 0.0,
            QuotientPoint::Point(p) => p.persistence().value(),
        };
        let a = Diagram::from_points(
            [
                HalfPlanePoint::new(0.0, 2.0).into(),
                HalfPlanePoint::new(1.0, 4.0).into(),
            ],
            &space,
        )
        .unwrap();
        assert_eq!(
            extend_lipschitz(&space, &RealSum, pers, &a, PExponent::ONE).unwrap(),
            5.0
        );
        // max is ∞-subadditive, hence p-subadditive for every p
        assert_eq!(
            extend_lipschitz(&space, &MaxPlus, pers, &a, PExponent::Finite(2.0)).unwrap(),
            3.0
        );
        assert!(matches!(
            extend_lipschitz(&space, &RealSum, pers, &a, PExponent::Infinity),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn maximality_on_random_finite_spaces() {
        let mut rng = seeded(9);
        let space = finite_space(&mut rng, 4, false, false);
        let p = PExponent::ONE;
        for q in [PExponent::ONE, PExponent::Finite(2.0), PExponent::Infinity] {
            let rho = |a: &Diagram<usize>, b: &Diagram<usize>| wasserstein(a, b, &space, q).unwrap().total;
            let r = check_maximality(&space, rho, p, 3, 100, &mut rng).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        let doubled = |a: &Diagram<usize>, b: &Diagram<usize>| wasserstein(a, b, &space, p).unwrap().total.scale(2.0);
        let r = check_maximality(&space, doubled, p, 3, 100, &mut rng).unwrap();
        assert_eq!(r.status, Status::PreconditionFailed);
    }

    #[test]
    fn trichotomy() {
        let mut rng = seeded(4);
        let space = finite_space(&mut rng, 5, false, false);
        for p in [PExponent::ONE, PExponent::Finite(2.0), PExponent::Infinity] {
            let t = check_restriction_trichotomy(&space, p).unwrap();
            assert!(t.report.passed());
            let strong = p_strengthen(&space, p);
            let t = check_restriction_trichotomy(&strong, p).unwrap();
            assert!(t.strengthened && t.restriction_is_d);
        }
        let t = check_restriction_trichotomy(&space, PExponent::ONE).unwrap();
        assert!(t.strengthened && t.restriction_is_d);

        let plane = HalfPlane::ell_inf().diagram_space(PExponent::ONE);
        let sample = FiniteSpace::subspace(
            &plane,
            &[
                HalfPlanePoint::new(0.0, 2.0).into(),
                HalfPlanePoint::new(10.0, 12.0).into(),
            ],
        )
        .unwrap();
        let t = check_restriction_trichotomy(&sample, PExponent::Infinity).unwrap();
        assert!(!t.strengthened && !t.restriction_is_d);
        assert!(t.report.passed());
    }

    #[test]
    fn converse_stability_for_wasserstein_itself() {
        let space = p_strengthen(
            crate::metric::Pointed::new(RealLine, 0.0.into()).unwrap(),
            PExponent::Finite(2.0),
        );
        let p = PExponent::Finite(2.0);
        let rho = |a: &Diagram<_>, b: &Diagram<_>| wasserstein(a, b, &space, p).unwrap().total;
        let d = |xs: &[f64]| Diagram::from_points(xs.iter().map(|&x| x.into()), &space).unwrap();
        let pairs = vec![
            (d(&[1.0, 2.0]), d(&[3.0])),
            (d(&[]), d(&[])),
            (d(&[-4.0]), d(&[4.0, 0.5])),
        ];
        let quads = vec![(d(&[1.0]), d(&[2.0]), d(&[1.5]), d(&[]))];
        assert!(converse_stability(&space, rho, p, &pairs, &quads).unwrap().passed());
    }

    #[test]
    fn non_subadditive_rho_is_a_precondition_failure() {
        let space = FiniteSpace::discrete(&["o", "a", "b"], 0);
        // cardinality difference squared is not 1-subadditive
        let rho = |a: &Diagram<usize>, b: &Diagram<usize>| {
            let k = a.len() as f64 - b.len() as f64;
            ExtReal::new(k * k)
        };
        let x = Diagram::include(1, &space);
        let two = x.add(&x);
        let quads = vec![(x.clone(), x.clone(), Diagram::empty(), Diagram::empty())];
        let r = converse_stability(&space, rho, PExponent::ONE, &[(two, Diagram::empty())], &quads).unwrap();
        assert_eq!(r.status, Status::PreconditionFailed);
    }
}
