use serde::{Deserialize, Serialize};

use super::{check_metric_axioms, ExtReal, FinitePointedSpace, MetricSpace, PointedSpace};
use crate::error::{Error, Result};

/// A finite pointed space given by a labelled distance matrix. Points are
/// row indices.
///
/// [`FiniteSpace::new`] only checks the shape of the matrix; use
/// [`check_metric_axioms`] or [`FiniteSpace::validated`] to check the
/// pseudometric axioms.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSpace {
    labels: Vec<String>,
    matrix: Vec<Vec<ExtReal>>,
    basepoint: usize,
}

#[derive(Serialize, Deserialize)]
struct FiniteSpaceJson {
    labels: Vec<String>,
    basepoint: String,
    matrix: Vec<Vec<ExtReal>>,
}

impl FiniteSpace {
    pub fn new(labels: Vec<String>, matrix: Vec<Vec<ExtReal>>, basepoint: usize) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Domain("a pointed space needs at least one point".into()));
        }
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::Domain(format!("distance matrix must be {n}x{n}")));
        }
        if basepoint >= n {
            return Err(Error::Domain(format!("basepoint index {basepoint} out of range")));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::Domain("point labels must be distinct".into()));
        }
        Ok(FiniteSpace {
            labels,
            matrix,
            basepoint,
        })
    }

    /// Like [`FiniteSpace::new`], additionally rejecting matrices that break
    /// point equality, symmetry or the triangle inequality.
    pub fn validated(labels: Vec<String>, matrix: Vec<Vec<ExtReal>>, basepoint: usize) -> Result<Self> {
        let space = Self::new(labels, matrix, basepoint)?;
        let report = check_metric_axioms(&space);
        if !report.is_pseudometric() {
            return Err(Error::Domain(format!(
                "matrix is not an extended pseudometric: {report:?}"
            )));
        }
        Ok(space)
    }

    /// The discrete metric (all distinct points at distance 1).
    pub fn discrete(labels: &[&str], basepoint: usize) -> Self {
        let n = labels.len();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { ExtReal::ZERO } else { ExtReal::ONE })
                    .collect()
            })
            .collect();
        Self::new(labels.iter().map(|s| s.to_string()).collect(), matrix, basepoint)
            .expect("discrete space is well formed")
    }

    /// The finite subspace of `space` on `points` plus its basepoint (index
    /// 0), labelled by the points' debug representations.
    pub fn subspace<S: PointedSpace>(space: &S, points: &[S::Point]) -> Result<Self> {
        let mut pts = vec![space.basepoint()];
        for x in points {
            if !space.contains(x) {
                return Err(Error::Domain(format!("point {x:?} is not in the space")));
            }
            if !pts.contains(x) {
                pts.push(x.clone());
            }
        }
        let labels = pts.iter().map(|x| format!("{x:?}")).collect();
        let matrix = pts
            .iter()
            .map(|x| pts.iter().map(|y| space.distance(x, y)).collect())
            .collect();
        Self::new(labels, matrix, 0)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn matrix(&self) -> &[Vec<ExtReal>] {
        &self.matrix
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: FiniteSpaceJson = serde_json::from_str(text)?;
        let basepoint = raw
            .labels
            .iter()
            .position(|l| *l == raw.basepoint)
            .ok_or_else(|| Error::Domain(format!("basepoint {:?} is not a label", raw.basepoint)))?;
        Self::validated(raw.labels, raw.matrix, basepoint)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FiniteSpaceJson {
            labels: self.labels.clone(),
            basepoint: self.labels[self.basepoint].clone(),
            matrix: self.matrix.clone(),
        })
        .expect("finite space serializes")
    }
}

impl MetricSpace for FiniteSpace {
    type Point = usize;

    fn distance(&self, x: &usize, y: &usize) -> ExtReal {
        self.matrix[*x][*y]
    }

    fn contains(&self, x: &usize) -> bool {
        *x < self.labels.len()
    }
}

impl PointedSpace for FiniteSpace {
    fn basepoint(&self) -> usize {
        self.basepoint
    }
}

impl FinitePointedSpace for FiniteSpace {
    fn points(&self) -> Vec<usize> {
        (0..self.labels.len()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_with_inf_literal() {
        let text = r#"{"labels":["o","a","b"],"basepoint":"o",
            "matrix":[[0,1,"inf"],[1,0,"inf"],["inf","inf",0]]}"#;
        let space = FiniteSpace::from_json(text).unwrap();
        assert_eq!(space.distance(&0, &2), ExtReal::INF);
        assert_eq!(space.basepoint(), 0);
        let again = FiniteSpace::from_json(&space.to_json()).unwrap();
        assert_eq!(space, again);
    }

    #[test]
    fn json_rejects_non_metrics() {
        let text = r#"{"labels":["o","a","b"],"basepoint":"o",
            "matrix":[[0,1,1],[1,0,5],[1,5,0]]}"#;
        assert!(matches!(FiniteSpace::from_json(text), Err(Error::Domain(_))));
        let bad_base = r#"{"labels":["o"],"basepoint":"z","matrix":[[0]]}"#;
        assert!(matches!(FiniteSpace::from_json(bad_base), Err(Error::Domain(_))));
    }

    #[test]
    fn shape_errors() {
        assert!(FiniteSpace::new(vec!["a".into()], vec![], 0).is_err());
        assert!(FiniteSpace::new(vec!["a".into(), "a".into()], vec![vec![ExtReal::ZERO; 2]; 2], 0).is_err());
        assert!(FiniteSpace::new(vec!["a".into()], vec![vec![ExtReal::ZERO]], 3).is_err());
    }
}
