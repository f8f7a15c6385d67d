use rand::Rng;
use serde::Serialize;

use super::norm::lp_pair;
use super::{ExtReal, FinitePointedSpace, MetricSpace, PExponent, PointedSpace};

/// Which of the extended-pseudometric axioms (plus separation and
/// finiteness) hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub point_equality: bool,
    pub symmetry: bool,
    pub triangle: bool,
    pub separation: bool,
    pub finiteness: bool,
}

impl AxiomReport {
    fn all_true() -> Self {
        AxiomReport {
            point_equality: true,
            symmetry: true,
            triangle: true,
            separation: true,
            finiteness: true,
        }
    }

    /// Point equality, symmetry and the triangle inequality.
    pub fn is_pseudometric(&self) -> bool {
        self.point_equality && self.symmetry && self.triangle
    }

    fn record_pair<P: PartialEq>(&mut self, x: &P, y: &P, dxy: ExtReal, dyx: ExtReal) {
        if x == y && !dxy.is_zero() {
            self.point_equality = false;
        }
        if dxy != dyx {
            self.symmetry = false;
        }
        if x != y && dxy.is_zero() {
            self.separation = false;
        }
        if dxy.is_infinite() {
            self.finiteness = false;
        }
    }
}

pub(crate) fn leq_tol(lhs: ExtReal, rhs: ExtReal) -> bool {
    if rhs.is_infinite() {
        return true;
    }
    if lhs.is_infinite() {
        return false;
    }
    lhs.value() <= rhs.value() + 1e-12 * rhs.value().max(1.0)
}

/// Exhaustive axiom check over every pair and triple of a finite space.
pub fn check_metric_axioms<S: FinitePointedSpace>(space: &S) -> AxiomReport {
    let pts = space.points();
    let n = pts.len();
    let d: Vec<Vec<ExtReal>> = pts
        .iter()
        .map(|x| pts.iter().map(|y| space.distance(x, y)).collect())
        .collect();
    let mut report = AxiomReport::all_true();
    for i in 0..n {
        for j in 0..n {
            report.record_pair(&i, &j, d[i][j], d[j][i]);
            for k in 0..n {
                if !leq_tol(d[i][j], d[i][k] + d[k][j]) {
                    report.triangle = false;
                }
            }
        }
    }
    report
}

/// Axiom check on `triples` random triples drawn from `pool`; the pairs
/// inside each triple feed the pair axioms.
pub fn sampled_axiom_check<S: MetricSpace, R: Rng>(
    space: &S,
    pool: &[S::Point],
    triples: usize,
    rng: &mut R,
) -> AxiomReport {
    let mut report = AxiomReport::all_true();
    if pool.is_empty() {
        return report;
    }
    for _ in 0..triples {
        let x = &pool[rng.random_range(0..pool.len())];
        let y = &pool[rng.random_range(0..pool.len())];
        let z = &pool[rng.random_range(0..pool.len())];
        let dxy = space.distance(x, y);
        report.record_pair(x, y, dxy, space.distance(y, x));
        report.record_pair(x, x, space.distance(x, x), space.distance(x, x));
        if !leq_tol(dxy, space.distance(x, z) + space.distance(z, y)) {
            report.triangle = false;
        }
    }
    report
}

/// `d(x, y) <= ‖(d(x, x₀), d(x₀, y))‖_p` on every sampled pair.
pub fn check_p_strengthened<S: PointedSpace>(space: &S, p: PExponent, samples: &[(S::Point, S::Point)]) -> bool {
    let x0 = space.basepoint();
    samples.iter().all(|(x, y)| {
        leq_tol(
            space.distance(x, y),
            lp_pair(space.distance(x, &x0), space.distance(&x0, y), p),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{p_strengthen, FiniteSpace};

    fn e(v: f64) -> ExtReal {
        ExtReal::new(v)
    }

    #[test]
    fn discrete_space_is_a_metric() {
        let r = check_metric_axioms(&FiniteSpace::discrete(&["o", "a", "b"], 0));
        assert_eq!(r, AxiomReport::all_true());
    }

    #[test]
    fn zero_off_diagonal_breaks_only_separation() {
        let m = vec![
            vec![e(0.0), e(1.0), e(1.0)],
            vec![e(1.0), e(0.0), e(0.0)],
            vec![e(1.0), e(0.0), e(0.0)],
        ];
        let space = FiniteSpace::new(vec!["o".into(), "a".into(), "b".into()], m, 0).unwrap();
        let r = check_metric_axioms(&space);
        assert!(!r.separation);
        assert!(r.point_equality && r.symmetry && r.triangle && r.finiteness);
    }

    #[test]
    fn infinite_entry_breaks_finiteness() {
        let m = vec![vec![e(0.0), ExtReal::INF], vec![ExtReal::INF, e(0.0)]];
        let space = FiniteSpace::new(vec!["o".into(), "a".into()], m, 0).unwrap();
        let r = check_metric_axioms(&space);
        assert!(!r.finiteness);
        assert!(r.is_pseudometric() && r.separation);
    }

    #[test]
    fn asymmetric_and_non_triangle_matrices() {
        let m = vec![
            vec![e(0.0), e(1.0), e(1.0)],
            vec![e(2.0), e(0.0), e(5.0)],
            vec![e(1.0), e(5.0), e(0.0)],
        ];
        let space = FiniteSpace::new(vec!["o".into(), "a".into(), "b".into()], m, 0).unwrap();
        let r = check_metric_axioms(&space);
        assert!(!r.symmetry);
        assert!(!r.triangle);
    }

    #[test]
    fn strengthened_inequality() {
        let space = FiniteSpace::discrete(&["o", "a", "b"], 0);
        let pairs: Vec<(usize, usize)> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
        assert!(check_p_strengthened(&space, PExponent::ONE, &pairs));
        // d(a,b) = 1 <= max(1, 1) holds for the discrete metric even at p = inf
        assert!(check_p_strengthened(&space, PExponent::Infinity, &pairs));

        let m = vec![
            vec![e(0.0), e(1.0), e(1.0)],
            vec![e(1.0), e(0.0), e(2.0)],
            vec![e(1.0), e(2.0), e(0.0)],
        ];
        let path = FiniteSpace::new(vec!["o".into(), "a".into(), "b".into()], m, 0).unwrap();
        assert!(check_p_strengthened(&path, PExponent::ONE, &pairs));
        assert!(!check_p_strengthened(&path, PExponent::Finite(2.0), &pairs));
        let strong = p_strengthen(&path, PExponent::Finite(2.0));
        assert!(check_p_strengthened(&strong, PExponent::Finite(2.0), &pairs));
    }
}
