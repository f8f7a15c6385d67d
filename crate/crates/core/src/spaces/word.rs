use std::collections::VecDeque;

use crate::diagram::{CommutativeMonoid, Diagram};
use crate::error::{Error, Result};
use crate::metric::{ExtReal, FinitePointedSpace, MetricSpace, PExponent, PointedSpace};
use crate::wasserstein::wasserstein;

/// An element of `ℤ_{n₁} × ... × ℤ_{n_k}`, one residue per factor.
pub type GroupElement = Vec<u32>;

/// The finite abelian group `ℤ_{n₁} × ... × ℤ_{n_k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    orders: Vec<u32>,
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::Domain("cyclic factors must have positive order".into()));
        }
        Ok(FiniteAbelianGroup { orders })
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.orders.iter().map(|&n| n as usize).product()
    }

    pub fn zero(&self) -> GroupElement {
        vec![0; self.orders.len()]
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.len() == self.orders.len() && g.iter().zip(&self.orders).all(|(x, n)| x < n)
    }

    pub fn add(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        g.iter()
            .zip(h)
            .zip(&self.orders)
            .map(|((a, b), n)| (a + b) % n)
            .collect()
    }

    pub fn neg(&self, g: &GroupElement) -> GroupElement {
        g.iter().zip(&self.orders).map(|(a, n)| (n - a) % n).collect()
    }

    pub fn sub(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.add(g, &self.neg(h))
    }

    /// Mixed-radix index in `0..order()`.
    pub fn index(&self, g: &GroupElement) -> usize {
        g.iter()
            .zip(&self.orders)
            .fold(0, |acc, (&x, &n)| acc * n as usize + x as usize)
    }

    /// All elements in index order.
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order())
            .map(|mut k| {
                let mut g = vec![0; self.orders.len()];
                for (slot, &n) in g.iter_mut().zip(&self.orders).rev() {
                    *slot = (k % n as usize) as u32;
                    k /= n as usize;
                }
                g
            })
            .collect()
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::Domain(format!("{g:?} is not an element of the group")))
        }
    }
}

impl CommutativeMonoid for FiniteAbelianGroup {
    type Element = GroupElement;
    fn identity(&self) -> GroupElement {
        self.zero()
    }
    fn combine(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, b)
    }
}

/// The generating set `S` with `0` adjoined, as the star graph: distinct
/// generators at distance 2, each generator at distance 1 from the center 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarGraphSpace {
    zero: GroupElement,
    generators: Vec<GroupElement>,
}

impl StarGraphSpace {
    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }
}

impl MetricSpace for StarGraphSpace {
    type Point = GroupElement;

    fn distance(&self, x: &GroupElement, y: &GroupElement) -> ExtReal {
        if x == y {
            ExtReal::ZERO
        } else if *x == self.zero || *y == self.zero {
            ExtReal::ONE
        } else {
            ExtReal::new(2.0)
        }
    }

    fn contains(&self, x: &GroupElement) -> bool {
        *x == self.zero || self.generators.binary_search(x).is_ok()
    }
}

impl PointedSpace for StarGraphSpace {
    fn basepoint(&self) -> GroupElement {
        self.zero.clone()
    }
}

impl FinitePointedSpace for StarGraphSpace {
    fn points(&self) -> Vec<GroupElement> {
        std::iter::once(self.zero.clone())
            .chain(self.generators.iter().cloned())
            .collect()
    }
}

/// The word metric `d_S(g, h)`: the length of a shortest word in `S` whose
/// evaluation is `g - h`, computed by breadth-first search on the Cayley
/// graph.
#[derive(Clone, Debug)]
pub struct WordMetric {
    group: FiniteAbelianGroup,
    star: StarGraphSpace,
    from_zero: Vec<u32>,
}

/// Outcome of the bounded search for `min φ*W₁[ρ, 0]` over word pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct WordSearch {
    /// Smallest `W₁` found, with a realizing pair of words.
    pub best: Option<(u32, Diagram<GroupElement>, Diagram<GroupElement>)>,
    /// Whether the length bound was large enough to guarantee that `best` is
    /// the true minimum.
    pub complete: bool,
}

impl WordSearch {
    pub fn distance(&self) -> Option<u32> {
        self.best.as_ref().map(|(d, _, _)| *d)
    }
}

impl WordMetric {
    /// Fails unless every generator is a nonzero element, `S = -S`, and `S`
    /// generates the group.
    pub fn new(group: FiniteAbelianGroup, generators: Vec<GroupElement>) -> Result<Self> {
        let zero = group.zero();
        for s in &generators {
            group.check(s)?;
            if *s == zero {
                return Err(Error::Domain("generators must be nonzero".into()));
            }
        }
        let mut gens = generators;
        gens.sort();
        gens.dedup();
        if let Some(s) = gens.iter().find(|s| gens.binary_search(&group.neg(s)).is_err()) {
            return Err(Error::Domain(format!(
                "generating set is not symmetric: missing -{s:?}"
            )));
        }
        let elements = group.elements();
        let mut from_zero = vec![u32::MAX; group.order()];
        from_zero[group.index(&zero)] = 0;
        let mut queue = VecDeque::from([zero.clone()]);
        while let Some(g) = queue.pop_front() {
            let dg = from_zero[group.index(&g)];
            for s in &gens {
                let h = group.add(&g, s);
                let k = group.index(&h);
                if from_zero[k] == u32::MAX {
                    from_zero[k] = dg + 1;
                    queue.push_back(h);
                }
            }
        }
        if let Some(k) = from_zero.iter().position(|&d| d == u32::MAX) {
            return Err(Error::Domain(format!(
                "generators do not generate the group: {:?} is unreachable",
                elements[k]
            )));
        }
        Ok(WordMetric {
            group,
            star: StarGraphSpace { zero, generators: gens },
            from_zero,
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn star_graph(&self) -> &StarGraphSpace {
        &self.star
    }

    pub fn word_distance(&self, g: &GroupElement, h: &GroupElement) -> Result<u32> {
        self.group.check(g)?;
        self.group.check(h)?;
        Ok(self.from_zero[self.group.index(&self.group.sub(g, h))])
    }

    /// Largest word distance.
    pub fn diameter(&self) -> u32 {
        self.from_zero.iter().copied().max().unwrap_or(0)
    }

    /// The group element `|w|` a word evaluates to.
    pub fn evaluate(&self, word: &Diagram<GroupElement>) -> GroupElement {
        crate::diagram::extend_hom(&self.star, &self.group, |s| s.clone(), word)
            .expect("the center of the star graph is the group identity")
    }

    /// `min W₁[ρ, 0](w_g, w_h)` over words `w_g, w_h` of length at most
    /// `length_bound` with `|w_g| = g` and `|w_h| = h`.
    ///
    /// The result is flagged complete when `length_bound >= best + diameter`:
    /// a geodesic word for `h` (length at most the diameter) extended by a
    /// geodesic word for `g - h` realizes `d_S(g, h)`, so no longer words are
    /// needed.
    pub fn via_wasserstein(&self, g: &GroupElement, h: &GroupElement, length_bound: u32) -> Result<WordSearch> {
        self.group.check(g)?;
        self.group.check(h)?;
        let mut for_g = Vec::new();
        let mut for_h = Vec::new();
        for word in self.words_up_to(length_bound) {
            let value = self.evaluate(&word);
            if value == *h {
                for_h.push(word.clone());
            }
            if value == *g {
                for_g.push(word);
            }
        }
        let mut best: Option<(u32, Diagram<GroupElement>, Diagram<GroupElement>)> = None;
        for wg in &for_g {
            for wh in &for_h {
                let cost = wasserstein(wg, wh, &self.star, PExponent::ONE)?.total.value();
                let cost = cost.round() as u32;
                if best.as_ref().is_none_or(|(b, _, _)| cost < *b) {
                    best = Some((cost, wg.clone(), wh.clone()));
                }
            }
        }
        let complete = best
            .as_ref()
            .is_some_and(|(b, _, _)| length_bound >= b + self.diameter());
        Ok(WordSearch { best, complete })
    }

    /// Every multiset of generators with at most `bound` letters.
    fn words_up_to(&self, bound: u32) -> Vec<Diagram<GroupElement>> {
        let gens = &self.star.generators;
        let mut out = Vec::new();
        let mut counts = vec![0usize; gens.len()];
        fn rec(
            k: usize,
            left: usize,
            counts: &mut Vec<usize>,
            gens: &[GroupElement],
            star: &StarGraphSpace,
            out: &mut Vec<Diagram<GroupElement>>,
        ) {
            if k == gens.len() {
                let atoms = gens.iter().cloned().zip(counts.iter().copied());
                out.push(Diagram::from_counts(atoms, star).expect("generators lie in the star graph"));
                return;
            }
            for c in 0..=left {
                counts[k] = c;
                rec(k + 1, left - c, counts, gens, star, out);
            }
            counts[k] = 0;
        }
        rec(0, bound as usize, &mut counts, gens, &self.star, &mut out);
        out
    }
}

impl MetricSpace for WordMetric {
    type Point = GroupElement;

    fn distance(&self, x: &GroupElement, y: &GroupElement) -> ExtReal {
        ExtReal::from(self.from_zero[self.group.index(&self.group.sub(x, y))])
    }

    fn contains(&self, x: &GroupElement) -> bool {
        self.group.contains(x)
    }
}

impl PointedSpace for WordMetric {
    fn basepoint(&self) -> GroupElement {
        self.group.zero()
    }
}

impl FinitePointedSpace for WordMetric {
    fn points(&self) -> Vec<GroupElement> {
        self.group.elements()
    }
}

/// `d_S(g, h)` by breadth-first search.
pub fn word_metric(
    group: &FiniteAbelianGroup,
    generators: &[GroupElement],
    g: &GroupElement,
    h: &GroupElement,
) -> Result<u32> {
    WordMetric::new(group.clone(), generators.to_vec())?.word_distance(g, h)
}

/// `min φ*W₁[ρ, 0]` over word pairs up to `length_bound` letters.
pub fn word_metric_via_wasserstein(
    group: &FiniteAbelianGroup,
    generators: &[GroupElement],
    g: &GroupElement,
    h: &GroupElement,
    length_bound: u32,
) -> Result<WordSearch> {
    WordMetric::new(group.clone(), generators.to_vec())?.via_wasserstein(g, h, length_bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    #[test]
    fn cyclic_examples() {
        let g = z(6);
        assert_eq!(word_metric(&g, &[vec![1], vec![5]], &vec![0], &vec![3]).unwrap(), 3);
        assert_eq!(word_metric(&g, &[vec![1], vec![5]], &vec![4], &vec![4]).unwrap(), 0);
        let s = word_metric_via_wasserstein(&z(4), &[vec![1], vec![3]], &vec![0], &vec![2], 4).unwrap();
        assert_eq!(s.distance(), Some(2));
        assert!(s.complete);
    }

    #[test]
    fn klein_four_group() {
        let g = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let s = vec![vec![0, 1], vec![1, 0], vec![1, 1]];
        assert_eq!(word_metric(&g, &s, &vec![0, 0], &vec![1, 1]).unwrap(), 1);
    }

    #[test]
    fn invalid_generating_sets() {
        let g = z(6);
        assert!(word_metric(&g, &[vec![1]], &vec![0], &vec![1]).is_err());
        assert!(word_metric(&g, &[vec![2], vec![4]], &vec![0], &vec![1]).is_err());
        assert!(word_metric(&g, &[vec![0]], &vec![0], &vec![1]).is_err());
        assert!(word_metric(&g, &[vec![7]], &vec![0], &vec![1]).is_err());
    }

    #[test]
    fn short_bounds_are_flagged() {
        let m = WordMetric::new(z(6), vec![vec![1], vec![5]]).unwrap();
        let s = m.via_wasserstein(&vec![3], &vec![0], 1).unwrap();
        assert!(!s.complete);
        assert_eq!(s.distance(), None);
        let s = m.via_wasserstein(&vec![3], &vec![0], 6).unwrap();
        assert_eq!(s.distance(), Some(3));
        assert!(s.complete);
    }

    #[test]
    fn evaluation_is_the_group_sum() {
        let m = WordMetric::new(z(5), vec![vec![1], vec![4]]).unwrap();
        let w = Diagram::from_points([vec![1], vec![1], vec![1], vec![4]], m.star_graph()).unwrap();
        assert_eq!(m.evaluate(&w), vec![2]);
        assert_eq!(m.evaluate(&Diagram::empty()), vec![0]);
    }
}
