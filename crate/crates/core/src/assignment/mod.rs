//! Exact square assignment: minimum-sum with dual potentials, minimum
//! bottleneck by threshold search, and exhaustive enumeration for testing.
//!
//! Infinite entries are forbidden edges. Before any optimization the solvers
//! check with Hopcroft–Karp that a perfect matching over finite entries
//! exists; if none does the optimum is `INF` and no dual is produced.
//!
//! Among optimal permutations the lexicographically smallest one is returned.
//! Optimality of ties is decided on the tight subgraph of the optimal duals
//! with a tolerance proportional to the largest finite entry.

mod hopcroft_karp;
mod hungarian;

pub use hopcroft_karp::{has_perfect_matching, maximum_matching};

use crate::error::{Error, Result};
use crate::metric::ExtReal;

/// A square matrix of extended-real costs.
#[derive(Clone, Debug, PartialEq)]
pub struct CostMatrix {
    size: usize,
    entries: Vec<ExtReal>,
}

impl CostMatrix {
    pub fn new(rows: Vec<Vec<ExtReal>>) -> Result<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::Domain("cost matrix must be square".into()));
        }
        Ok(CostMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> ExtReal) -> Self {
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                entries.push(f(i, j));
            }
        }
        CostMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> ExtReal {
        self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ExtReal]> {
        self.entries.chunks(self.size.max(1)).take(self.size)
    }

    /// Largest finite entry (0 for an all-infinite or empty matrix).
    pub fn max_finite(&self) -> f64 {
        self.entries
            .iter()
            .filter(|c| c.is_finite())
            .map(|c| c.value())
            .fold(0.0, f64::max)
    }

    /// Sum of `c[i][perm[i]]`.
    pub fn permutation_cost(&self, perm: &[usize]) -> ExtReal {
        perm.iter().enumerate().map(|(i, &j)| self.get(i, j)).sum()
    }

    fn adjacency(&self, mut keep: impl FnMut(ExtReal) -> bool) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|i| (0..self.size).filter(|&j| keep(self.get(i, j))).collect())
            .collect()
    }

    /// Slack allowed when deciding that an edge is tight: a few hundred ulps
    /// of the largest entry per row.
    fn tolerance(&self) -> f64 {
        (self.size as f64 + 1.0) * 256.0 * f64::EPSILON * self.max_finite()
    }
}

/// Row and column potentials certifying optimality:
/// `u[i] + v[j] <= c[i][j]` on finite entries, `Σu + Σv = total`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualPotentials {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl DualPotentials {
    pub fn objective(&self) -> f64 {
        self.u.iter().sum::<f64>() + self.v.iter().sum::<f64>()
    }

    /// Largest violation `u[i] + v[j] - c[i][j]` over finite entries (0 if
    /// feasible).
    pub fn max_violation(&self, costs: &CostMatrix) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..costs.size() {
            for j in 0..costs.size() {
                let c = costs.get(i, j);
                if c.is_finite() {
                    worst = worst.max(self.u[i] + self.v[j] - c.value());
                }
            }
        }
        worst
    }
}

/// Result of a minimum-sum assignment.
#[derive(Clone, Debug, PartialEq)]
pub struct Assignment {
    pub total: ExtReal,
    /// `permutation[i]` is the column assigned to row `i`.
    pub permutation: Vec<usize>,
    pub dual: Option<DualPotentials>,
}

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn perfect_matching(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    maximum_matching(adj, adj.len()).into_iter().collect()
}

/// Minimum of `Σ c[i][σ(i)]` over permutations `σ`.
pub fn min_cost_assignment(costs: &CostMatrix) -> Assignment {
    let n = costs.size();
    if n == 0 {
        return Assignment {
            total: ExtReal::ZERO,
            permutation: Vec::new(),
            dual: Some(DualPotentials {
                u: Vec::new(),
                v: Vec::new(),
            }),
        };
    }
    if perfect_matching(&costs.adjacency(ExtReal::is_finite)).is_none() {
        return Assignment {
            total: ExtReal::INF,
            permutation: identity(n),
            dual: None,
        };
    }
    let raw: Vec<Vec<f64>> = costs.rows().map(|r| r.iter().map(|c| c.value()).collect()).collect();
    let (perm, u, v) = hungarian::solve(&raw);

    let tol = costs.tolerance();
    let tight = tight_edges(costs, &perm, &u, &v, tol);
    let perm = hopcroft_karp::lexicographic_perfect_matching(&tight, perm);
    Assignment {
        total: costs.permutation_cost(&perm),
        permutation: perm,
        dual: Some(DualPotentials { u, v }),
    }
}

fn tight_edges(costs: &CostMatrix, perm: &[usize], u: &[f64], v: &[f64], tol: f64) -> Vec<Vec<usize>> {
    (0..costs.size())
        .map(|i| {
            (0..costs.size())
                .filter(|&j| {
                    let c = costs.get(i, j);
                    c.is_finite() && (c.value() - u[i] - v[j] <= tol || perm[i] == j)
                })
                .collect()
        })
        .collect()
}

/// Minimum of `max_i c[i][σ(i)]` over permutations, by binary search over
/// the distinct entries with a perfect-matching feasibility test at each
/// threshold. Returns the optimum and the lexicographically smallest
/// permutation attaining it.
pub fn bottleneck_assignment(costs: &CostMatrix) -> (ExtReal, Vec<usize>) {
    let n = costs.size();
    if n == 0 {
        return (ExtReal::ZERO, Vec::new());
    }
    let mut levels: Vec<ExtReal> = costs.entries.clone();
    levels.sort();
    levels.dedup();
    let feasible = |t: ExtReal| perfect_matching(&costs.adjacency(|c| c <= t && c.is_finite()));
    let finite: Vec<ExtReal> = levels.into_iter().filter(|c| c.is_finite()).collect();
    let Some(&top) = finite.last() else {
        return (ExtReal::INF, identity(n));
    };
    if feasible(top).is_none() {
        return (ExtReal::INF, identity(n));
    }
    let (mut lo, mut hi) = (0usize, finite.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(finite[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let t = finite[lo];
    let adj = costs.adjacency(|c| c <= t);
    let start = perfect_matching(&adj).expect("threshold is feasible");
    (t, hopcroft_karp::lexicographic_perfect_matching(&adj, start))
}

/// Visits every permutation of `0..n` (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut a = identity(n);
    let mut c = vec![0usize; n];
    f(&a);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}
