//! Persistence diagrams as elements of the free commutative monoid on a
//! pointed set, with the basepoint identified with the empty diagram.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};
use crate::metric::{ExtReal, PExponent, PointedSpace};

/// A finite multiset of non-basepoint points.
///
/// Atoms are kept as `point -> multiplicity` in the point type's total order,
/// which is also the order in which [`Diagram::atoms`] expands them. Equality
/// of atoms is equality of representations: two points at distance zero in a
/// pseudometric are still different atoms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagram<P: Ord> {
    counts: BTreeMap<P, usize>,
}

impl<P: Ord + Clone> Diagram<P> {
    /// The monoid identity.
    pub fn empty() -> Self {
        Diagram {
            counts: BTreeMap::new(),
        }
    }
}

impl<P: Ord + Clone + fmt::Debug> Diagram<P> {
    /// Canonical form of the formal sum of `points`: basepoint occurrences are
    /// dropped. Fails if a point is outside the space's domain.
    pub fn from_points<S, I>(points: I, space: &S) -> Result<Self>
    where
        S: PointedSpace<Point = P>,
        I: IntoIterator<Item = P>,
    {
        let mut d = Diagram::empty();
        for x in points {
            if !space.contains(&x) {
                return Err(Error::Domain(format!("point {x:?} is not in the space")));
            }
            if !space.is_basepoint(&x) {
                *d.counts.entry(x).or_insert(0) += 1;
            }
        }
        Ok(d)
    }

    /// Like [`Diagram::from_points`] with explicit multiplicities.
    pub fn from_counts<S, I>(atoms: I, space: &S) -> Result<Self>
    where
        S: PointedSpace<Point = P>,
        I: IntoIterator<Item = (P, usize)>,
    {
        let mut d = Diagram::empty();
        for (x, k) in atoms {
            if !space.contains(&x) {
                return Err(Error::Domain(format!("point {x:?} is not in the space")));
            }
            if k > 0 && !space.is_basepoint(&x) {
                *d.counts.entry(x).or_insert(0) += k;
            }
        }
        Ok(d)
    }

    /// Re-canonicalizes against another space over the same point type.
    pub fn rebase<S: PointedSpace<Point = P>>(&self, space: &S) -> Result<Self> {
        Self::from_counts(self.counts.iter().map(|(x, &k)| (x.clone(), k)), space)
    }
}

impl<P: Ord + Clone> Diagram<P> {
    /// The canonical inclusion `X -> D(X, x₀)`; the basepoint maps to the
    /// empty diagram.
    pub fn include<S: PointedSpace<Point = P>>(x: P, space: &S) -> Self {
        let mut d = Diagram::empty();
        if !space.is_basepoint(&x) {
            d.counts.insert(x, 1);
        }
        d
    }

    /// Builds a diagram from counts the caller guarantees are canonical (no
    /// basepoint atoms).
    pub(crate) fn from_canonical_counts(atoms: impl IntoIterator<Item = (P, usize)>) -> Self {
        let mut d = Diagram::empty();
        for (x, k) in atoms {
            if k > 0 {
                *d.counts.entry(x).or_insert(0) += k;
            }
        }
        d
    }

    /// Multiset union.
    pub fn add(&self, other: &Self) -> Self {
        let mut d = self.clone();
        for (x, &k) in &other.counts {
            *d.counts.entry(x.clone()).or_insert(0) += k;
        }
        d
    }

    /// `k` copies of `self` summed.
    pub fn times(&self, k: usize) -> Self {
        Diagram {
            counts: self
                .counts
                .iter()
                .filter(|_| k > 0)
                .map(|(x, &c)| (x.clone(), c * k))
                .collect(),
        }
    }

    /// Number of atoms counted with multiplicity.
    pub fn len(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn multiplicity(&self, x: &P) -> usize {
        self.counts.get(x).copied().unwrap_or(0)
    }

    /// Distinct atoms with their multiplicities, in canonical order.
    pub fn counts(&self) -> impl Iterator<Item = (&P, usize)> {
        self.counts.iter().map(|(x, &k)| (x, k))
    }

    /// Atoms expanded by multiplicity, in canonical order.
    pub fn atoms(&self) -> impl Iterator<Item = &P> {
        self.counts.iter().flat_map(|(x, &k)| std::iter::repeat_n(x, k))
    }

    pub fn to_vec(&self) -> Vec<P> {
        self.atoms().cloned().collect()
    }
}

impl<P: Ord + Clone> Default for Diagram<P> {
    fn default() -> Self {
        Self::empty()
    }
}

impl<P: Ord + Clone> Add for Diagram<P> {
    type Output = Diagram<P>;
    fn add(self, rhs: Diagram<P>) -> Diagram<P> {
        Diagram::add(&self, &rhs)
    }
}

impl<P: Ord + Clone> Add<&Diagram<P>> for &Diagram<P> {
    type Output = Diagram<P>;
    fn add(self, rhs: &Diagram<P>) -> Diagram<P> {
        Diagram::add(self, rhs)
    }
}

impl<P: Ord + fmt::Debug> fmt::Debug for Diagram<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.counts.iter()).finish()
    }
}

/// A commutative monoid whose elements are values of `Element`.
pub trait CommutativeMonoid {
    type Element: Clone;
    fn identity(&self) -> Self::Element;
    fn combine(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
}

/// A commutative monoid carrying a metric, optionally with a declared
/// subadditivity exponent `p`:
/// `ρ(a + b, a' + b') <= ‖(ρ(a, a'), ρ(b, b'))‖_p`.
///
/// The declaration is a claim; checkers in [`crate::universality`] sample it
/// before relying on it.
pub trait MetricMonoid: CommutativeMonoid {
    fn distance(&self, a: &Self::Element, b: &Self::Element) -> ExtReal;

    fn subadditivity(&self) -> Option<PExponent> {
        None
    }
}

/// `(ℝ, +, 0)` with `|a - b|`; 1-subadditive.
#[derive(Clone, Copy, Debug, Default)]
pub struct RealSum;

impl CommutativeMonoid for RealSum {
    type Element = f64;
    fn identity(&self) -> f64 {
        0.0
    }
    fn combine(&self, a: &f64, b: &f64) -> f64 {
        a + b
    }
}

impl MetricMonoid for RealSum {
    fn distance(&self, a: &f64, b: &f64) -> ExtReal {
        ExtReal::abs_diff(*a, *b)
    }
    fn subadditivity(&self) -> Option<PExponent> {
        Some(PExponent::ONE)
    }
}

/// `([0, ∞), max, 0)` with `|a - b|`; ∞-subadditive since
/// `|max(a, b) - max(c, d)| <= max(|a - c|, |b - d|)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct MaxPlus;

impl CommutativeMonoid for MaxPlus {
    type Element = f64;
    fn identity(&self) -> f64 {
        0.0
    }
    fn combine(&self, a: &f64, b: &f64) -> f64 {
        a.max(*b)
    }
}

impl MetricMonoid for MaxPlus {
    fn distance(&self, a: &f64, b: &f64) -> ExtReal {
        ExtReal::abs_diff(*a, *b)
    }
    fn subadditivity(&self) -> Option<PExponent> {
        Some(PExponent::Infinity)
    }
}

/// The diagram monoid itself, `(D(X, x₀), +, 0)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeMonoid<P>(std::marker::PhantomData<fn() -> P>);

impl<P> FreeMonoid<P> {
    pub fn new() -> Self {
        FreeMonoid(std::marker::PhantomData)
    }
}

impl<P: Ord + Clone> CommutativeMonoid for FreeMonoid<P> {
    type Element = Diagram<P>;
    fn identity(&self) -> Diagram<P> {
        Diagram::empty()
    }
    fn combine(&self, a: &Diagram<P>, b: &Diagram<P>) -> Diagram<P> {
        a.add(b)
    }
}

/// The unique monoid homomorphism `φ̃: D(X, x₀) -> N` with `φ̃ ∘ i = φ`,
/// `φ̃(x₁ + ... + xₙ) = φ(x₁) + ... + φ(xₙ)`.
///
/// `φ` must send the basepoint to the identity of `N`.
pub fn extend_hom<S, M, F>(space: &S, monoid: &M, phi: F, alpha: &Diagram<S::Point>) -> Result<M::Element>
where
    S: PointedSpace,
    M: CommutativeMonoid,
    M::Element: PartialEq + fmt::Debug,
    F: Fn(&S::Point) -> M::Element,
{
    let at_base = phi(&space.basepoint());
    if at_base != monoid.identity() {
        return Err(Error::Precondition(format!(
            "map is not basepoint-preserving: sends the basepoint to {at_base:?}"
        )));
    }
    Ok(alpha
        .atoms()
        .fold(monoid.identity(), |acc, x| monoid.combine(&acc, &phi(x))))
}
