//! Words in the free monoid on weighted generators, and the degree-lex order.

use std::cmp::Ordering;

use serde::Serialize;

/// Index of a generator in its alphabet.
pub type Letter = u16;

/// A monomial of the free algebra, with its weighted degree cached.
///
/// The derived `Ord` is degree first, then lexicographic on letter indices,
/// i.e. degree-lex for the identity precedence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word {
    degree: u32,
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn new(letters: Vec<Letter>, weights: &[u32]) -> Self {
        let degree = letters.iter().map(|&l| weights[l as usize]).sum();
        Word { degree, letters }
    }

    /// Word of unit-weight letters.
    pub fn unit(letters: Vec<Letter>) -> Self {
        Word { degree: letters.len() as u32, letters }
    }

    pub fn letter(l: Letter, weight: u32) -> Self {
        Word { degree: weight, letters: vec![l] }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { degree: self.degree + other.degree, letters }
    }

    /// Subword `letters[start..end]`; degrees are recomputed from `weights`.
    pub fn slice(&self, start: usize, end: usize, weights: &[u32]) -> Word {
        Word::new(self.letters[start..end].to_vec(), weights)
    }

    /// First position at which `pattern` occurs as a contiguous subword.
    pub fn find(&self, pattern: &Word) -> Option<usize> {
        if pattern.len() > self.len() {
            return None;
        }
        if pattern.is_empty() {
            return Some(0);
        }
        self.letters.windows(pattern.len()).position(|w| w == pattern.letters.as_slice())
    }

    pub fn contains(&self, pattern: &Word) -> bool {
        self.find(pattern).is_some()
    }
}

/// Degree-lexicographic order with a chosen precedence on generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct MonomialOrder {
    /// `precedence[g]` is the rank of generator `g`; lower rank is smaller.
    precedence: Vec<usize>,
}

impl MonomialOrder {
    /// Generators ordered by index: `x_0 < x_1 < ...`.
    pub fn deglex(n_gens: usize) -> Self {
        MonomialOrder { precedence: (0..n_gens).collect() }
    }

    /// Uses `ranks[g]` as the rank of generator `g`; must be a permutation.
    pub fn with_precedence(ranks: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; ranks.len()];
        for &r in &ranks {
            if r >= ranks.len() || seen[r] {
                return None;
            }
            seen[r] = true;
        }
        Some(MonomialOrder { precedence: ranks })
    }

    pub fn n_gens(&self) -> usize {
        self.precedence.len()
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn is_identity(&self) -> bool {
        self.precedence.iter().enumerate().all(|(i, &r)| i == r)
    }

    pub fn compare(&self, a: &Word, b: &Word) -> Ordering {
        a.degree().cmp(&b.degree()).then_with(|| {
            if self.is_identity() {
                return a.letters().cmp(b.letters());
            }
            for (x, y) in a.letters().iter().zip(b.letters()) {
                let o = self.precedence[*x as usize].cmp(&self.precedence[*y as usize]);
                if o != Ordering::Equal {
                    return o;
                }
            }
            a.len().cmp(&b.len())
        })
    }
}

/// Total order on words: degree first, then lexicographic by precedence.
pub fn compare_words(w1: &Word, w2: &Word, ord: &MonomialOrder) -> Ordering {
    ord.compare(w1, w2)
}
