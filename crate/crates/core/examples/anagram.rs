//! Words as diagrams of letters with the discrete metric; `W₁` counts the
//! letters that must change to turn one word into an anagram of the other.

use pdmetric::spaces::{anagram_distance, AnagramSpace};
use pdmetric::wasserstein::wasserstein;
use pdmetric::{PExponent, Result};

fn main() -> Result<()> {
    for (s, t) in [
        ("manifold", "mind loaf"),
        ("mathematics", "cat asthma"),
        ("persistence", "presence"),
    ] {
        println!("{s:>12} ~ {t:<12} {}", anagram_distance(s, t)?);
    }

    let space = AnagramSpace::new('a'..='z');
    let (a, b) = (space.diagram("listen")?, space.diagram("tinsel")?);
    let m = wasserstein(&a, &b, &space, PExponent::ONE)?;
    println!("listen ~ tinsel via the assignment solver: {}", m.total);
    Ok(())
}
