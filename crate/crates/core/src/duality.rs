//! Kantorovich–Rubinstein duality for `W₁`.
//!
//! With both diagrams padded to `r = n + m` points, `W₁(α, β)` is the value of
//! the assignment LP, and its dual asks for `y ∈ ℝ^{2r}` maximizing
//! `Σₖ (y_k - y_{r+k})` subject to `y_i - y_{r+j} <= d(a_i, b_j)`. The
//! Hungarian potentials give such a `y` directly (`y_i = u_i`,
//! `y_{r+j} = -v_j`), and reading `y` as a function `h` on the support yields a
//! 1-Lipschitz potential whose McShane extension is defined on the whole space.

use std::collections::BTreeMap;
use std::fmt;

use crate::assignment::{min_cost_assignment, CostMatrix};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::metric::{ExtReal, MetricSpace, PointedSpace};
use crate::universality::Witness;
use crate::wasserstein::{padded_costs, wasserstein};
use crate::PExponent;

/// Violations of `|h(c) - h(c')| <= d(c, c')` up to this size are forgiven.
pub const LIPSCHITZ_SLACK: f64 = 1e-12;

/// Dual solution of the `W₁` assignment LP.
#[derive(Clone, Debug, PartialEq)]
pub struct DualCertificate {
    pub primal: ExtReal,
    /// `Σₖ (y_k - y_{r+k})`; absent when the primal is infinite.
    pub dual: Option<f64>,
    /// `y₁..y_r` for the padded α-side, `y_{r+1}..y_{2r}` for the β-side;
    /// empty when the primal is infinite.
    pub y: Vec<f64>,
    /// The realizing permutation of the padded problem.
    pub permutation: Vec<usize>,
    /// Number of atoms of α and β.
    pub n: usize,
    pub m: usize,
    costs: CostMatrix,
}

impl DualCertificate {
    pub fn r(&self) -> usize {
        self.n + self.m
    }

    pub fn is_certified(&self) -> bool {
        self.dual.is_some()
    }

    pub fn costs(&self) -> &CostMatrix {
        &self.costs
    }

    /// `|dual - primal|`, or `None` without a certificate.
    pub fn gap(&self) -> Option<f64> {
        self.dual.map(|d| (self.primal.value() - d).abs())
    }

    /// Largest `y_i - y_{r+j} - d(a_i, b_j)` over finite pairs (0 if feasible).
    pub fn feasibility_violation(&self) -> f64 {
        let r = self.r();
        let mut worst = 0.0f64;
        if self.y.is_empty() {
            return worst;
        }
        for i in 0..r {
            for j in 0..r {
                let c = self.costs.get(i, j);
                if c.is_finite() {
                    worst = worst.max(self.y[i] - self.y[r + j] - c.value());
                }
            }
        }
        worst
    }

    /// Largest `|y_i - y_{r+σ(i)} - d(a_i, b_σ(i))|` along the realizing
    /// permutation.
    pub fn tightness_violation(&self) -> f64 {
        let r = self.r();
        if self.y.is_empty() {
            return 0.0;
        }
        self.permutation
            .iter()
            .enumerate()
            .map(|(i, &j)| (self.y[i] - self.y[r + j] - self.costs.get(i, j).value()).abs())
            .fold(0.0, f64::max)
    }

    /// Largest excess over the three families `|y_i - y_{r+j}| <= d(a_i, b_j)`,
    /// `|y_i - y_j| <= d(a_i, a_j)` and `|y_{r+i} - y_{r+j}| <= d(b_i, b_j)`
    /// on the padded points (0 if all hold).
    pub fn chain_violation<S: PointedSpace>(
        &self,
        alpha: &Diagram<S::Point>,
        beta: &Diagram<S::Point>,
        space: &S,
    ) -> f64 {
        if self.y.is_empty() {
            return 0.0;
        }
        let (left, right) = padded(alpha, beta, &space.basepoint());
        let points: Vec<&S::Point> = left.iter().chain(right.iter()).collect();
        let mut worst = 0.0f64;
        for (k, x) in points.iter().enumerate() {
            for (l, z) in points.iter().enumerate().skip(k + 1) {
                let d = space.distance(x, z);
                if d.is_finite() {
                    worst = worst.max((self.y[k] - self.y[l]).abs() - d.value());
                }
            }
        }
        worst
    }
}

fn padded<P: Clone + Ord>(alpha: &Diagram<P>, beta: &Diagram<P>, x0: &P) -> (Vec<P>, Vec<P>) {
    let left = alpha
        .atoms()
        .cloned()
        .chain(std::iter::repeat_n(x0.clone(), beta.len()))
        .collect();
    let right = beta
        .atoms()
        .cloned()
        .chain(std::iter::repeat_n(x0.clone(), alpha.len()))
        .collect();
    (left, right)
}

/// Primal value and dual certificate for `W₁(α, β)`.
pub fn kr_certificate<S: PointedSpace>(
    alpha: &Diagram<S::Point>,
    beta: &Diagram<S::Point>,
    space: &S,
) -> Result<DualCertificate> {
    // validates membership
    wasserstein(alpha, beta, space, PExponent::ONE)?;
    let costs = padded_costs(alpha, beta, &space.basepoint(), |x, y| space.distance(x, y));
    let a = min_cost_assignment(&costs);
    let (y, dual) = match &a.dual {
        Some(pot) if a.total.is_finite() => {
            let y: Vec<f64> = pot.u.iter().copied().chain(pot.v.iter().map(|v| -v)).collect();
            (y, Some(pot.objective()))
        }
        _ => (Vec::new(), None),
    };
    Ok(DualCertificate {
        primal: a.total,
        dual,
        y,
        permutation: a.permutation,
        n: alpha.len(),
        m: beta.len(),
        costs,
    })
}

/// A real function on finitely many points.
#[derive(Clone, PartialEq)]
pub struct SupportFunction<P: Ord> {
    values: BTreeMap<P, f64>,
}

impl<P: Ord + Clone + fmt::Debug> SupportFunction<P> {
    pub fn new(values: impl IntoIterator<Item = (P, f64)>) -> Self {
        SupportFunction {
            values: values.into_iter().collect(),
        }
    }

    pub fn value(&self, x: &P) -> Option<f64> {
        self.values.get(x).copied()
    }

    pub fn support(&self) -> impl Iterator<Item = (&P, f64)> {
        self.values.iter().map(|(x, &v)| (x, v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Pointwise map of the values.
    pub fn map(&self, f: impl Fn(&P, f64) -> f64) -> Self {
        SupportFunction {
            values: self.values.iter().map(|(x, &v)| (x.clone(), f(x, v))).collect(),
        }
    }

    /// The worst pair `(c, c')` with `|h(c) - h(c')| > d(c, c') + slack`.
    pub fn lipschitz_violation<S: MetricSpace<Point = P>>(&self, space: &S) -> Option<Witness> {
        let pts: Vec<(&P, f64)> = self.support().collect();
        let mut worst: Option<(f64, Witness)> = None;
        for (i, &(x, hx)) in pts.iter().enumerate() {
            for &(y, hy) in &pts[i + 1..] {
                let d = space.distance(x, y);
                if d.is_infinite() {
                    continue;
                }
                let excess = (hx - hy).abs() - d.value();
                if excess > LIPSCHITZ_SLACK && worst.as_ref().is_none_or(|(e, _)| excess > *e) {
                    let lhs = ExtReal::new((hx - hy).abs());
                    worst = Some((excess, Witness::new(x, y, lhs, d)));
                }
            }
        }
        worst.map(|(_, w)| w)
    }

    /// `Σ h(aᵢ) - Σ h(bⱼ) + (m - n) h(x₀)`.
    pub fn objective<S: PointedSpace<Point = P>>(
        &self,
        alpha: &Diagram<P>,
        beta: &Diagram<P>,
        space: &S,
    ) -> Result<f64> {
        let get = |x: &P| {
            self.value(x)
                .ok_or_else(|| Error::Precondition(format!("candidate is undefined at {x:?}")))
        };
        let mut total = 0.0;
        for a in alpha.atoms() {
            total += get(a)?;
        }
        for b in beta.atoms() {
            total -= get(b)?;
        }
        let (n, m) = (alpha.len() as f64, beta.len() as f64);
        if n != m {
            total += (m - n) * get(&space.basepoint())?;
        }
        Ok(total)
    }
}

impl<P: Ord + fmt::Debug> fmt::Debug for SupportFunction<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.values.iter()).finish()
    }
}

/// Reads a certificate as the function `h(a_i) = y_i`, `h(b_j) = y_{r+j}` on
/// the padded support. Repeated points must receive equal values (up to
/// `1e-9` relative to the largest cost); the first occurrence is kept. For
/// two empty diagrams the result is the zero function on the basepoint.
pub fn support_function<S: PointedSpace>(
    cert: &DualCertificate,
    alpha: &Diagram<S::Point>,
    beta: &Diagram<S::Point>,
    space: &S,
) -> Result<SupportFunction<S::Point>> {
    if !cert.is_certified() {
        return Err(Error::Precondition("no certificate for an infinite primal".into()));
    }
    if (cert.n, cert.m) != (alpha.len(), beta.len()) {
        return Err(Error::Contract("certificate was built for different diagrams".into()));
    }
    let r = cert.r();
    let (left, right) = padded(alpha, beta, &space.basepoint());
    let tol = 1e-9 * cert.costs.max_finite().max(1.0);
    let mut values: BTreeMap<S::Point, f64> = BTreeMap::new();
    let entries = left
        .into_iter()
        .zip(cert.y[..r].iter().copied())
        .chain(right.into_iter().zip(cert.y[r..].iter().copied()));
    for (x, v) in entries {
        match values.get(&x) {
            None => {
                values.insert(x, v);
            }
            Some(&w) if (w - v).abs() > tol => {
                return Err(Error::Contract(format!(
                    "certificate assigns {w} and {v} to the same point {x:?}"
                )));
            }
            Some(_) => {}
        }
    }
    if values.is_empty() {
        values.insert(space.basepoint(), 0.0);
    }
    Ok(SupportFunction { values })
}

/// McShane extension `h̃(x) = max over c of (h(c) - d(x, c))`.
pub fn mcshane_extend<S: MetricSpace>(h: &SupportFunction<S::Point>, x: &S::Point, space: &S) -> Result<f64> {
    if h.is_empty() {
        return Err(Error::Precondition(
            "cannot extend a function with empty support".into(),
        ));
    }
    h.support()
        .filter_map(|(c, hc)| {
            let d = space.distance(x, c);
            d.is_finite().then(|| hc - d.value())
        })
        .reduce(f64::max)
        .ok_or_else(|| Error::Domain(format!("{x:?} is at infinite distance from the whole support")))
}

/// `W₁(α, β) - (Σ h(aᵢ) - Σ h(bⱼ) + (m - n) h(x₀))` for a candidate `h`
/// defined on the support (and on the basepoint when `n != m`).
///
/// A candidate that is not 1-Lipschitz on its support is rejected with the
/// worst offending pair.
pub fn duality_gap<S: PointedSpace>(
    alpha: &Diagram<S::Point>,
    beta: &Diagram<S::Point>,
    space: &S,
    candidate: &SupportFunction<S::Point>,
) -> Result<f64> {
    if let Some(w) = candidate.lipschitz_violation(space) {
        return Err(Error::Precondition(format!(
            "candidate is not 1-Lipschitz: |h({}) - h({})| = {} > {}",
            w.left, w.right, w.lhs, w.rhs
        )));
    }
    let primal = wasserstein(alpha, beta, space, PExponent::ONE)?.total;
    if primal.is_infinite() {
        return Err(Error::Domain("W1 is infinite; the gap is undefined".into()));
    }
    Ok(primal.value() - candidate.objective(alpha, beta, space)?)
}
