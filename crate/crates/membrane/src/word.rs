//! Words over a finite form alphabet and canonical classes of bi-permuted
//! monomials.
//!
//! A triple (word, sigma1, sigma2) describes an ordered-domain integral: the
//! letter at position p names a 2-form, sigma1 orders the x-coordinates and
//! sigma2 the y-coordinates. Simultaneously relabelling positions leaves the
//! integral unchanged, so every class has a unique representative with
//! sigma1 = identity: the word is rewritten in x-rank order and the second
//! permutation becomes sigma1^{-1} ∘ sigma2.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Letter of the form alphabet, 1-based: letter `i` names the i-th 2-form.
pub type Letter = u8;

/// A word over `{1..k}`; the empty word is the degree-0 monomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// All words of the given length over `{1..k}`, lexicographic.
    pub fn enumerate(k: u8, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * k as usize);
            for w in &out {
                for c in 1..=k {
                    let mut v = w.0.clone();
                    v.push(c);
                    next.push(Word(v));
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for c in &self.0 {
            write!(f, "z{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical class of a bi-permuted word: the representative with the first
/// permutation normalized to the identity.
///
/// Ordered by degree first, then lexicographically, so series terms
/// enumerate and serialize in graded order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialClass {
    pub word: Word,
    pub sigma2: Permutation,
}

impl Ord for MonomialClass {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.sigma2.cmp(&other.sigma2))
    }
}

impl PartialOrd for MonomialClass {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl MonomialClass {
    pub fn unit() -> Self {
        MonomialClass {
            word: Word::empty(),
            sigma2: Permutation::identity(0),
        }
    }

    pub fn degree(&self) -> usize {
        self.word.degree()
    }

    pub fn is_unit(&self) -> bool {
        self.degree() == 0
    }

    /// Concatenation of canonical representatives: words concatenate and the
    /// second permutations concatenate blockwise.
    pub fn concat(&self, other: &MonomialClass) -> MonomialClass {
        let mut letters = self.word.0.clone();
        letters.extend_from_slice(&other.word.0);
        MonomialClass {
            word: Word(letters),
            sigma2: crate::perm::concat_perm(&self.sigma2, &other.sigma2),
        }
    }

    /// Exchange the roles of the two permutation slots and re-canonicalize:
    /// the word is rewritten in what used to be y-rank order and the second
    /// permutation inverts. An involution.
    pub fn swap_axes(&self) -> MonomialClass {
        let n = self.degree();
        let word = Word(
            (1..=n)
                .map(|r| self.word.0[self.sigma2.apply(r) - 1])
                .collect(),
        );
        MonomialClass {
            word,
            sigma2: self.sigma2.inverse(),
        }
    }

    /// All canonical classes of the given degree over `{1..k}`, sorted.
    pub fn enumerate(k: u8, degree: usize) -> Vec<MonomialClass> {
        let mut out = Vec::new();
        for word in Word::enumerate(k, degree) {
            for sigma2 in Permutation::all(degree) {
                out.push(MonomialClass {
                    word: word.clone(),
                    sigma2,
                });
            }
        }
        out
    }
}

impl fmt::Display for MonomialClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.word, self.sigma2)
    }
}

impl fmt::Debug for MonomialClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonicalize a general triple (word, sigma1, sigma2).
///
/// The canonical word reads the letters in sigma1-rank order and the second
/// permutation becomes sigma1^{-1} ∘ sigma2; triples in the same
/// relabelling orbit map to equal classes, and the map is idempotent.
pub fn canonicalize(
    word: &Word,
    sigma1: &Permutation,
    sigma2: &Permutation,
) -> Result<MonomialClass> {
    let n = word.degree();
    if sigma1.len() != n || sigma2.len() != n {
        return Err(Error::invalid(format!(
            "permutation sizes ({}, {}) do not match word length {n}",
            sigma1.len(),
            sigma2.len()
        )));
    }
    let canon_word = Word((1..=n).map(|r| word.0[sigma1.apply(r) - 1]).collect());
    let canon_sigma2 = sigma1.inverse().compose(sigma2)?;
    Ok(MonomialClass {
        word: canon_word,
        sigma2: canon_sigma2,
    })
}

/// Act with a relabelling permutation on a triple: letter at position p
/// moves to position sigma0(p) and both permutations pick up sigma0 on the
/// ranks. Orbits of this action are exactly the monomial classes.
pub fn relabel(
    word: &Word,
    sigma1: &Permutation,
    sigma2: &Permutation,
    sigma0: &Permutation,
) -> (Word, Permutation, Permutation) {
    let inv = sigma0.inverse();
    let n = word.degree();
    let moved = Word((1..=n).map(|p| word.0[inv.apply(p) - 1]).collect());
    let s1 = sigma0.compose(sigma1).expect("sizes match");
    let s2 = sigma0.compose(sigma2).expect("sizes match");
    (moved, s1, s2)
}

/// A monomial class with a split index marking how many x-ranks fall in the
/// left rectangle of a horizontal composition (or below the cut of a
/// vertical one when used through the axis swap).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexedMonomial {
    pub word: Word,
    pub sigma2: Permutation,
    pub split: usize,
}

impl Ord for IndexedMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.sigma2.cmp(&other.sigma2))
            .then_with(|| self.split.cmp(&other.split))
    }
}

impl PartialOrd for IndexedMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl IndexedMonomial {
    pub fn new(class: MonomialClass, split: usize) -> Result<Self> {
        if split > class.degree() {
            return Err(Error::invalid(format!(
                "split {split} exceeds degree {}",
                class.degree()
            )));
        }
        Ok(IndexedMonomial {
            word: class.word,
            sigma2: class.sigma2,
            split,
        })
    }

    pub fn degree(&self) -> usize {
        self.word.degree()
    }

    pub fn class(&self) -> MonomialClass {
        MonomialClass {
            word: self.word.clone(),
            sigma2: self.sigma2.clone(),
        }
    }

    pub fn unit() -> Self {
        IndexedMonomial {
            word: Word::empty(),
            sigma2: Permutation::identity(0),
            split: 0,
        }
    }
}

impl fmt::Display for IndexedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]^{}", self.word, self.sigma2, self.split)
    }
}

impl fmt::Debug for IndexedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
