//! The word metric of a finite abelian group recovered from `W₁` on the star
//! graph of its generators, compared against breadth-first search.

use pdmetric::spaces::{FiniteAbelianGroup, WordMetric};
use pdmetric::Result;

fn main() -> Result<()> {
    let group = FiniteAbelianGroup::new(vec![6, 4])?;
    let generators = vec![vec![1, 0], vec![5, 0], vec![0, 1], vec![0, 3]];
    let metric = WordMetric::new(group.clone(), generators)?;
    let bound = 2 * metric.diameter();
    let zero = group.zero();
    println!("diameter {}", metric.diameter());
    for g in group.elements().into_iter().take(12) {
        let search = metric.via_wasserstein(&g, &zero, bound)?;
        println!(
            "{g:?}: BFS {} W1 {:?} (complete: {})",
            metric.word_distance(&g, &zero)?,
            search.distance(),
            search.complete
        );
    }
    Ok(())
}
