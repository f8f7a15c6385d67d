//! Concrete pointed spaces: the half-plane of persistence pairs, intervals
//! with Hausdorff, dissimilarity and interleaving distances, characters for
//! anagrams, and star graphs of finite abelian groups for word metrics.

mod anagram;
mod halfplane;
mod intervals;
mod real;
mod word;

pub use anagram::{anagram_distance, AnagramSpace};
pub use halfplane::{
    diagonal_factor, halfplane_diag_dist, halfplane_dist, Diagonal, HalfPlane, HalfPlaneDiagramPoint, HalfPlanePoint,
    HalfPlaneQuotient,
};
pub use intervals::{
    dissimilarity, hausdorff, hausdorff_with, interval_interleaving, EmptyConvention, Interval, IntervalMetric,
    IntervalSpace,
};
pub use real::RealLine;
pub use word::{
    word_metric, word_metric_via_wasserstein, FiniteAbelianGroup, GroupElement, StarGraphSpace, WordMetric, WordSearch,
};
