use std::collections::BTreeSet;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::metric::{ExtReal, FinitePointedSpace, MetricSpace, PointedSpace};

/// Characters with the discrete metric, pointed at the space character.
///
/// A word is the diagram of its letters; `W₁` between two words counts the
/// letter substitutions, insertions and deletions needed to turn one into an
/// anagram of the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnagramSpace {
    alphabet: BTreeSet<char>,
}

impl Default for AnagramSpace {
    /// ASCII letters (both cases) and the space.
    fn default() -> Self {
        Self::new(('a'..='z').chain('A'..='Z'))
    }
}

impl AnagramSpace {
    /// The given characters plus the space character.
    pub fn new(alphabet: impl IntoIterator<Item = char>) -> Self {
        let mut alphabet: BTreeSet<char> = alphabet.into_iter().collect();
        alphabet.insert(' ');
        AnagramSpace { alphabet }
    }

    pub fn alphabet(&self) -> &BTreeSet<char> {
        &self.alphabet
    }

    /// The multiset of non-space characters of `word`.
    pub fn diagram(&self, word: &str) -> Result<Diagram<char>> {
        if let Some(c) = word.chars().find(|c| !self.alphabet.contains(c)) {
            return Err(Error::Domain(format!("character {c:?} is not in the alphabet")));
        }
        Diagram::from_points(word.chars(), self)
    }

    /// `max(n, m) - |multiset intersection|` over the non-space letters.
    pub fn distance_between(&self, s: &str, t: &str) -> Result<usize> {
        let (a, b) = (self.diagram(s)?, self.diagram(t)?);
        let common: usize = a.counts().map(|(c, k)| k.min(b.multiplicity(c))).sum();
        Ok(a.len().max(b.len()) - common)
    }
}

/// Anagram distance over the default alphabet.
pub fn anagram_distance(s: &str, t: &str) -> Result<usize> {
    AnagramSpace::default().distance_between(s, t)
}

impl MetricSpace for AnagramSpace {
    type Point = char;

    fn distance(&self, x: &char, y: &char) -> ExtReal {
        if x == y {
            ExtReal::ZERO
        } else {
            ExtReal::ONE
        }
    }

    fn contains(&self, x: &char) -> bool {
        self.alphabet.contains(x)
    }
}

impl PointedSpace for AnagramSpace {
    fn basepoint(&self) -> char {
        ' '
    }
}

impl FinitePointedSpace for AnagramSpace {
    fn points(&self) -> Vec<char> {
        self.alphabet.iter().copied().collect()
    }
}
