//! p-Wasserstein and bottleneck distances between diagrams.
//!
//! For diagrams `α = a₁ + ... + aₙ` and `β = b₁ + ... + bₘ` both sides are
//! padded with basepoints to length `r = n + m` and
//!
//! ```text
//! W_p(α, β) = min over σ ∈ S_r of ‖(d(a_k, b_σ(k)))_k‖_p
//! ```
//!
//! Rows of the padded cost matrix are the atoms of `α` followed by `m`
//! basepoints; columns are the atoms of `β` followed by `n` basepoints. The
//! basepoint-to-basepoint block is zero.
//!
//! `p = 1` is solved as a minimum-sum assignment on the raw distances, so dual
//! potentials are in the units of the metric. Finite `p > 1` minimizes
//! `Σ (d / M)^p` where `M` is the largest finite entry; the reported value is
//! the ℓp norm of the chosen matching's costs. `p = ∞` is a bottleneck
//! assignment.

use crate::assignment::{bottleneck_assignment, for_each_permutation, min_cost_assignment, Assignment, CostMatrix};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::metric::{lp_norm, ExtReal, MetricSpace, PExponent, PointedSpace, Quotient, Subset};

/// Largest padded size `n + m` accepted by [`brute_force_wasserstein`].
pub const BRUTE_FORCE_LIMIT: usize = 9;

/// One side of a matched pair: an atom index (in canonical expanded order) or
/// a padding basepoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Atom(usize),
    Basepoint,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatchedPair {
    pub left: Slot,
    pub right: Slot,
    pub cost: ExtReal,
}

/// A realizing matching for `W_p(α, β)`.
///
/// Every atom of either diagram (with multiplicity) appears in exactly one
/// pair; basepoint-to-basepoint pairs are omitted. `total` is the ℓp norm of
/// the pair costs.
#[derive(Clone, Debug, PartialEq)]
pub struct Matching {
    pub p: PExponent,
    pub total: ExtReal,
    pub pairs: Vec<MatchedPair>,
    /// The full padded permutation, row `k` matched to column `permutation[k]`.
    pub permutation: Vec<usize>,
}

impl Matching {
    pub fn costs(&self) -> Vec<ExtReal> {
        self.pairs.iter().map(|pair| pair.cost).collect()
    }
}

/// Padded cost matrix for `(α, β)` with entry `(i, j)` equal to
/// `dist(left_i, right_j)`, basepoint block zero.
pub fn padded_costs<P, F>(alpha: &Diagram<P>, beta: &Diagram<P>, base: &P, mut dist: F) -> CostMatrix
where
    P: Ord + Clone,
    F: FnMut(&P, &P) -> ExtReal,
{
    let a: Vec<&P> = alpha.atoms().collect();
    let b: Vec<&P> = beta.atoms().collect();
    let (n, m) = (a.len(), b.len());
    CostMatrix::from_fn(n + m, |i, j| match (i < n, j < m) {
        (true, true) => dist(a[i], b[j]),
        (true, false) => dist(a[i], base),
        (false, true) => dist(base, b[j]),
        (false, false) => ExtReal::ZERO,
    })
}

fn check_members<S: MetricSpace>(space: &S, diagrams: &[&Diagram<S::Point>]) -> Result<()> {
    for d in diagrams {
        if let Some((x, _)) = d.counts().find(|(x, _)| !space.contains(x)) {
            return Err(Error::Domain(format!("atom {x:?} does not belong to the space")));
        }
    }
    Ok(())
}

fn slot(k: usize, count: usize) -> Slot {
    if k < count {
        Slot::Atom(k)
    } else {
        Slot::Basepoint
    }
}

fn matching_from_permutation(costs: &CostMatrix, n: usize, m: usize, perm: Vec<usize>, p: PExponent) -> Matching {
    let pairs: Vec<MatchedPair> = perm
        .iter()
        .enumerate()
        .filter(|&(i, &j)| i < n || j < m)
        .map(|(i, &j)| MatchedPair {
            left: slot(i, n),
            right: slot(j, m),
            cost: costs.get(i, j),
        })
        .collect();
    let total = lp_norm(&pairs.iter().map(|q| q.cost).collect::<Vec<_>>(), p);
    Matching {
        p,
        total,
        pairs,
        permutation: perm,
    }
}

/// Solves `W_p` on a padded cost matrix whose first `n` rows and `m` columns
/// are atoms. Also returns the raw assignment for `p = 1` (for duals).
pub(crate) fn solve_padded(costs: &CostMatrix, n: usize, m: usize, p: PExponent) -> (Matching, Option<Assignment>) {
    match p {
        PExponent::Infinity => {
            let (_, perm) = bottleneck_assignment(costs);
            (matching_from_permutation(costs, n, m, perm, p), None)
        }
        PExponent::Finite(1.0) => {
            let a = min_cost_assignment(costs);
            (
                matching_from_permutation(costs, n, m, a.permutation.clone(), p),
                Some(a),
            )
        }
        PExponent::Finite(e) => {
            let scale = costs.max_finite();
            let scaled = CostMatrix::from_fn(costs.size(), |i, j| {
                let c = costs.get(i, j);
                if c.is_infinite() || scale == 0.0 {
                    c
                } else {
                    ExtReal::new(c.value() / scale).powf(e)
                }
            });
            let a = min_cost_assignment(&scaled);
            (matching_from_permutation(costs, n, m, a.permutation, p), None)
        }
    }
}

/// `W_p[d, x₀](α, β)` with a realizing matching.
pub fn wasserstein<S: PointedSpace>(
    alpha: &Diagram<S::Point>,
    beta: &Diagram<S::Point>,
    space: &S,
    p: PExponent,
) -> Result<Matching> {
    check_members(space, &[alpha, beta])?;
    let costs = padded_costs(alpha, beta, &space.basepoint(), |x, y| space.distance(x, y));
    Ok(solve_padded(&costs, alpha.len(), beta.len(), p).0)
}

/// The bottleneck distance `W_∞`.
pub fn bottleneck<S: PointedSpace>(alpha: &Diagram<S::Point>, beta: &Diagram<S::Point>, space: &S) -> Result<Matching> {
    wasserstein(alpha, beta, space, PExponent::Infinity)
}

/// `W_p` by enumerating all `(n + m)!` padded permutations. Intended as a
/// reference for testing; refuses `n + m > 9`.
pub fn brute_force_wasserstein<S: PointedSpace>(
    alpha: &Diagram<S::Point>,
    beta: &Diagram<S::Point>,
    space: &S,
    p: PExponent,
) -> Result<ExtReal> {
    check_members(space, &[alpha, beta])?;
    let r = alpha.len() + beta.len();
    if r > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeGuard {
            what: "padded diagram size n + m",
            size: r,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let x0 = space.basepoint();
    let left: Vec<S::Point> = alpha
        .atoms()
        .cloned()
        .chain(std::iter::repeat_n(x0.clone(), beta.len()))
        .collect();
    let right: Vec<S::Point> = beta
        .atoms()
        .cloned()
        .chain(std::iter::repeat_n(x0, alpha.len()))
        .collect();
    let d: Vec<Vec<ExtReal>> = left
        .iter()
        .map(|x| right.iter().map(|y| space.distance(x, y)).collect())
        .collect();
    let mut best = ExtReal::INF;
    let mut buf = vec![ExtReal::ZERO; r];
    if r == 0 {
        return Ok(ExtReal::ZERO);
    }
    for_each_permutation(r, |sigma| {
        for (k, &j) in sigma.iter().enumerate() {
            buf[k] = d[k][j];
        }
        best = best.min(lp_norm(&buf, p));
    });
    Ok(best)
}

/// `W_p` over a quotient `(X/A, d̄_p, A)` computed from the ambient distance
/// `d` and `d(·, A)` only, never from `d̄_p` itself. Requires the quotient to
/// have been built with the same exponent `p`.
pub fn wasserstein_quotient_reduced<S, A>(
    alpha: &Diagram<<Quotient<S, A> as MetricSpace>::Point>,
    beta: &Diagram<<Quotient<S, A> as MetricSpace>::Point>,
    quotient: &Quotient<S, A>,
    p: PExponent,
) -> Result<Matching>
where
    S: MetricSpace,
    A: Subset<S>,
{
    if quotient.p() != p {
        return Err(Error::Contract(format!(
            "quotient built with p = {} but Wasserstein exponent is {p}",
            quotient.p()
        )));
    }
    check_members(quotient, &[alpha, beta])?;
    let costs = padded_costs(alpha, beta, &quotient.basepoint(), |x, y| {
        quotient.ambient_distance(x, y)
    });
    Ok(solve_padded(&costs, alpha.len(), beta.len(), p).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{FiniteSpace, QuotientPoint};
    use crate::spaces::{AnagramSpace, HalfPlane, HalfPlaneDiagramPoint, HalfPlanePoint};

    fn hp(b: f64, d: f64) -> HalfPlaneDiagramPoint {
        HalfPlanePoint::new(b, d).into()
    }

    #[test]
    fn single_atom_goes_to_the_diagonal() {
        for p in [PExponent::ONE, PExponent::Finite(2.0), PExponent::Infinity] {
            let space = HalfPlane::ell_inf().diagram_space(p);
            let a = Diagram::from_points([hp(0.0, 2.0)], &space).unwrap();
            let m = wasserstein(&a, &Diagram::empty(), &space, p).unwrap();
            assert_eq!(m.total, ExtReal::ONE);
            assert_eq!(
                m.pairs,
                vec![MatchedPair {
                    left: Slot::Atom(0),
                    right: Slot::Basepoint,
                    cost: ExtReal::ONE
                }]
            );
        }
    }

    #[test]
    fn self_distance_is_zero_with_identity_matching() {
        let space = HalfPlane::ell_inf().diagram_space(PExponent::ONE);
        let a = Diagram::from_points([hp(0.0, 2.0), hp(1.0, 5.0), hp(1.0, 5.0)], &space).unwrap();
        let m = wasserstein(&a, &a, &space, PExponent::ONE).unwrap();
        assert_eq!(m.total, ExtReal::ZERO);
        assert_eq!(m.permutation[..3], [0, 1, 2]);
    }

    #[test]
    fn bottleneck_example() {
        let space = HalfPlane::ell_inf().diagram_space(PExponent::Infinity);
        let a = Diagram::from_points([hp(0.0, 2.0)], &space).unwrap();
        let b = Diagram::from_points([hp(0.0, 4.0)], &space).unwrap();
        assert_eq!(bottleneck(&a, &b, &space).unwrap().total, ExtReal::new(2.0));
        assert_eq!(
            brute_force_wasserstein(&a, &b, &space, PExponent::Infinity).unwrap(),
            ExtReal::new(2.0)
        );
    }

    #[test]
    fn anagram_example() {
        let space = AnagramSpace::default();
        let a = space.diagram("mathematics").unwrap();
        let b = space.diagram("catasthma").unwrap();
        assert_eq!(
            wasserstein(&a, &b, &space, PExponent::ONE).unwrap().total,
            ExtReal::new(3.0)
        );
    }

    #[test]
    fn empty_diagrams() {
        let space = FiniteSpace::discrete(&["o", "a"], 0);
        let e = Diagram::empty();
        let m = wasserstein(&e, &e, &space, PExponent::Finite(2.0)).unwrap();
        assert_eq!(m.total, ExtReal::ZERO);
        assert!(m.pairs.is_empty());
        assert_eq!(
            brute_force_wasserstein(&e, &e, &space, PExponent::ONE).unwrap(),
            ExtReal::ZERO
        );
    }

    #[test]
    fn brute_force_size_guard() {
        let space = FiniteSpace::discrete(&["o", "a"], 0);
        let a = Diagram::from_points(vec![1; 5], &space).unwrap();
        assert!(matches!(
            brute_force_wasserstein(&a, &a, &space, PExponent::ONE),
            Err(Error::SizeGuard { size: 10, .. })
        ));
        let small = Diagram::from_points(vec![1; 4], &space).unwrap();
        assert!(brute_force_wasserstein(&small, &a, &space, PExponent::ONE).is_ok());
    }

    #[test]
    fn singleton_pairs() {
        let space = HalfPlane::ell_inf().diagram_space(PExponent::ONE);
        let (x, y) = (hp(0.0, 2.0), hp(10.0, 12.0));
        let a = Diagram::include(x.clone(), &space);
        let b = Diagram::include(y.clone(), &space);
        for p in [PExponent::ONE, PExponent::Finite(3.0), PExponent::Infinity] {
            let expected = space.distance(&x, &y).min(lp_norm(
                &[
                    space.distance(&x, &QuotientPoint::Collapsed),
                    space.distance(&y, &QuotientPoint::Collapsed),
                ],
                p,
            ));
            assert!(wasserstein(&a, &b, &space, p).unwrap().total.approx_eq(expected, 1e-12));
        }
    }

    #[test]
    fn reduced_formula_requires_matching_exponent() {
        let space = HalfPlane::ell_inf().diagram_space(PExponent::ONE);
        let a = Diagram::from_points([hp(0.0, 2.0)], &space).unwrap();
        let r = wasserstein_quotient_reduced(&a, &Diagram::empty(), &space, PExponent::Infinity);
        assert!(matches!(r, Err(Error::Contract(_))));
        let ok = wasserstein_quotient_reduced(&a, &Diagram::empty(), &space, PExponent::ONE).unwrap();
        assert_eq!(ok.total, ExtReal::ONE);
    }

    #[test]
    fn foreign_atoms_are_rejected() {
        let space = FiniteSpace::discrete(&["o", "a"], 0);
        let big = FiniteSpace::discrete(&["o", "a", "b"], 0);
        let a = Diagram::from_points([2], &big).unwrap();
        assert!(matches!(
            wasserstein(&a, &a, &space, PExponent::ONE),
            Err(Error::Domain(_))
        ));
    }
}
