//! The split-aware carrier for composed rectangles: indexed monomials, the
//! restricted-shuffle product, the horizontal and vertical composition maps
//! and the index-summing embedding.
//!
//! All operations here are formal (bilinear on coefficients); the numeric
//! instantiation of indexed classes lives in [`crate::quad`] and the theorem
//! checks that tie the two together live in [`crate::checks`].

use crate::error::{Error, Result};
use crate::perm::{concat_perm, restricted_shuffles, shuffles, Permutation};
use crate::series::{FormalSeries, Graded, Scalar};
use crate::word::{IndexedMonomial, MonomialClass, Word};
use std::collections::BTreeMap;
use std::fmt;

/// Expand the product of two indexed classes (both split on the same axis)
/// into indexed classes with multiplicities: below-cut and above-cut
/// interleavings on the split axis, plain shuffles on the other, output
/// split `i + j`.
pub fn indexed_expand(
    a: &IndexedMonomial,
    b: &IndexedMonomial,
) -> Result<Vec<(IndexedMonomial, usize)>> {
    let m = a.degree();
    let n = b.degree();
    let mut joint = a.word.0.clone();
    joint.extend_from_slice(&b.word.0);
    let rho1s = restricted_shuffles(
        &Permutation::identity(m),
        &Permutation::identity(n),
        a.split,
        b.split,
    )?;
    let rho2s = shuffles(&a.sigma2, &b.sigma2);
    let mut counts: BTreeMap<IndexedMonomial, usize> = BTreeMap::new();
    for rho1 in &rho1s {
        let inv1 = rho1.inverse();
        let word = Word((1..=m + n).map(|r| joint[rho1.apply(r) - 1]).collect());
        for rho2 in &rho2s {
            let sigma2 = inv1.compose(rho2)?;
            let key = IndexedMonomial {
                word: word.clone(),
                sigma2,
                split: a.split + b.split,
            };
            *counts.entry(key).or_insert(0) += 1;
        }
    }
    Ok(counts.into_iter().collect())
}

/// Bilinear extension of [`indexed_expand`] to series.
pub fn indexed_mul<C: Scalar>(
    a: &FormalSeries<IndexedMonomial, C>,
    b: &FormalSeries<IndexedMonomial, C>,
) -> Result<FormalSeries<IndexedMonomial, C>> {
    if a.truncation() != b.truncation() {
        return Err(Error::invalid("truncation mismatch in indexed product"));
    }
    let mut out = FormalSeries::zero(a.truncation());
    for (ka, ca) in a.terms() {
        for (kb, cb) in b.terms() {
            if ka.degree() + kb.degree() > out.truncation() {
                continue;
            }
            let coeff = ca.clone() * cb.clone();
            for (key, mult) in indexed_expand(ka, kb)? {
                out.add_term(key, crate::series::scalar_times_usize(&coeff, mult));
            }
        }
    }
    Ok(out)
}

/// Horizontal composition map on plain series: the left factor's class keeps
/// all its x-ranks below the cut, so the output split is the left degree and
/// only the second permutations shuffle.
pub fn times1<C: Scalar>(
    a: &FormalSeries<MonomialClass, C>,
    b: &FormalSeries<MonomialClass, C>,
) -> Result<FormalSeries<IndexedMonomial, C>> {
    if a.truncation() != b.truncation() {
        return Err(Error::invalid(
            "truncation mismatch in horizontal composition",
        ));
    }
    let mut out = FormalSeries::zero(a.truncation());
    for (ka, ca) in a.terms() {
        for (kb, cb) in b.terms() {
            let m = ka.degree();
            if m + kb.degree() > out.truncation() {
                continue;
            }
            let coeff = ca.clone() * cb.clone();
            let mut joint = ka.word.0.clone();
            joint.extend_from_slice(&kb.word.0);
            for rho2 in shuffles(&ka.sigma2, &kb.sigma2) {
                out.add_term(
                    IndexedMonomial {
                        word: Word(joint.clone()),
                        sigma2: rho2,
                        split: m,
                    },
                    coeff.clone(),
                );
            }
        }
    }
    Ok(out)
}

/// Vertical composition map on plain series. Obtained from [`times1`] by
/// exchanging the two permutation slots of every input and output; the
/// resulting split counts y-ranks below the horizontal cut.
pub fn times2<C: Scalar>(
    a: &FormalSeries<MonomialClass, C>,
    b: &FormalSeries<MonomialClass, C>,
) -> Result<FormalSeries<IndexedMonomial, C>> {
    let sa = a.map_keys(MonomialClass::swap_axes);
    let sb = b.map_keys(MonomialClass::swap_axes);
    let swapped = times1(&sa, &sb)?;
    Ok(swapped.map_keys(swap_indexed))
}

fn swap_indexed(key: &IndexedMonomial) -> IndexedMonomial {
    let swapped = key.class().swap_axes();
    IndexedMonomial {
        word: swapped.word,
        sigma2: swapped.sigma2,
        split: key.split,
    }
}

/// The embedding of the composed-rectangle series into the indexed carrier:
/// each class maps to the sum of its splits with unchanged coefficient.
pub fn embed<C: Scalar>(s: &FormalSeries<MonomialClass, C>) -> FormalSeries<IndexedMonomial, C> {
    let mut out = FormalSeries::zero(s.truncation());
    for (k, c) in s.terms() {
        for split in 0..=k.degree() {
            out.add_term(
                IndexedMonomial {
                    word: k.word.clone(),
                    sigma2: k.sigma2.clone(),
                    split,
                },
                c.clone(),
            );
        }
    }
    out
}

/// The unique pair of block components whose shuffle set contains `pi` for
/// the block split `{1..i} | {i+1..n}`: the subsequences of `pi`'s one-line
/// word below and above the block boundary.
pub fn shuffle_components(pi: &Permutation, i: usize) -> (Permutation, Permutation) {
    let first: Vec<usize> = pi.images().iter().copied().filter(|&v| v <= i).collect();
    let second: Vec<usize> = pi
        .images()
        .iter()
        .copied()
        .filter(|&v| v > i)
        .map(|v| v - i)
        .collect();
    (
        Permutation::from_images(first).expect("subsequence of a bijection"),
        Permutation::from_images(second).expect("subsequence of a bijection"),
    )
}

/// Monomial class with both an x-cut and a y-cut, the carrier for composing
/// four rectangles into a grid.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DoublyIndexed {
    pub word: Word,
    pub sigma2: Permutation,
    pub xsplit: usize,
    pub ysplit: usize,
}

impl DoublyIndexed {
    pub fn degree(&self) -> usize {
        self.word.degree()
    }
}

impl fmt::Display for DoublyIndexed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{}]^({},{})",
            self.word, self.sigma2, self.xsplit, self.ysplit
        )
    }
}

impl Graded for DoublyIndexed {
    fn degree(&self) -> usize {
        self.word.degree()
    }
    fn unit() -> Self {
        DoublyIndexed {
            word: Word::empty(),
            sigma2: Permutation::identity(0),
            xsplit: 0,
            ysplit: 0,
        }
    }
}

/// Vertical composition of two x-indexed series (bottom row, top row): all
/// bottom y-ranks stay below the horizontal cut, the x-interleavings respect
/// both vertical cuts.
pub fn times2_on_indexed<C: Scalar>(
    bottom: &FormalSeries<IndexedMonomial, C>,
    top: &FormalSeries<IndexedMonomial, C>,
) -> Result<FormalSeries<DoublyIndexed, C>> {
    if bottom.truncation() != top.truncation() {
        return Err(Error::invalid("truncation mismatch in grid composition"));
    }
    let mut out = FormalSeries::zero(bottom.truncation());
    for (ka, ca) in bottom.terms() {
        for (kb, cb) in top.terms() {
            let (m, n) = (ka.degree(), kb.degree());
            if m + n > out.truncation() {
                continue;
            }
            let coeff = ca.clone() * cb.clone();
            let mut joint = ka.word.0.clone();
            joint.extend_from_slice(&kb.word.0);
            let rho2 = concat_perm(&ka.sigma2, &kb.sigma2);
            let rho1s = restricted_shuffles(
                &Permutation::identity(m),
                &Permutation::identity(n),
                ka.split,
                kb.split,
            )?;
            for rho1 in &rho1s {
                let inv1 = rho1.inverse();
                let word = Word((1..=m + n).map(|r| joint[rho1.apply(r) - 1]).collect());
                let sigma2 = inv1.compose(&rho2)?;
                out.add_term(
                    DoublyIndexed {
                        word,
                        sigma2,
                        xsplit: ka.split + kb.split,
                        ysplit: m,
                    },
                    coeff.clone(),
                );
            }
        }
    }
    Ok(out)
}

/// Horizontal composition of two y-indexed series (left column, right
/// column): all left x-ranks stay below the vertical cut, the
/// y-interleavings respect both horizontal cuts.
pub fn times1_on_indexed<C: Scalar>(
    left: &FormalSeries<IndexedMonomial, C>,
    right: &FormalSeries<IndexedMonomial, C>,
) -> Result<FormalSeries<DoublyIndexed, C>> {
    if left.truncation() != right.truncation() {
        return Err(Error::invalid("truncation mismatch in grid composition"));
    }
    let mut out = FormalSeries::zero(left.truncation());
    for (ka, ca) in left.terms() {
        for (kb, cb) in right.terms() {
            let (m, n) = (ka.degree(), kb.degree());
            if m + n > out.truncation() {
                continue;
            }
            let coeff = ca.clone() * cb.clone();
            let mut joint = ka.word.0.clone();
            joint.extend_from_slice(&kb.word.0);
            let rho2s = restricted_shuffles(&ka.sigma2, &kb.sigma2, ka.split, kb.split)?;
            for rho2 in rho2s {
                out.add_term(
                    DoublyIndexed {
                        word: Word(joint.clone()),
                        sigma2: rho2,
                        xsplit: m,
                        ysplit: ka.split + kb.split,
                    },
                    coeff.clone(),
                );
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::One;

    type Rat = BigRational;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(BigInt::from(n))
    }

    fn formal_j(k: u8, n_max: usize) -> FormalSeries<MonomialClass, Rat> {
        crate::series::truncated_j(k, n_max, |_| Ok(Rat::one())).unwrap()
    }

    #[test]
    fn indexed_unit_is_neutral() {
        let mut b: FormalSeries<IndexedMonomial, Rat> = FormalSeries::zero(2);
        b.add_term(
            IndexedMonomial {
                word: Word(vec![1]),
                sigma2: Permutation::identity(1),
                split: 1,
            },
            rat(7),
        );
        let one = FormalSeries::unit(2);
        assert_eq!(indexed_mul(&one, &b).unwrap(), b);
        assert_eq!(indexed_mul(&b, &one).unwrap(), b);
    }

    #[test]
    fn degenerate_cuts_reduce_to_plain_shuffle_product() {
        // split m times split n: the restricted set collapses to plain
        // shuffles, so the term multiset matches the shuffle product with
        // the output split pinned at m+n.
        let a = IndexedMonomial {
            word: Word(vec![1]),
            sigma2: Permutation::identity(1),
            split: 1,
        };
        let b = IndexedMonomial {
            word: Word(vec![2]),
            sigma2: Permutation::identity(1),
            split: 1,
        };
        let got = indexed_expand(&a, &b).unwrap();
        let plain = crate::series::shuffle_expand(&a.class(), &b.class());
        let expect: Vec<(IndexedMonomial, usize)> = plain
            .into_iter()
            .map(|(c, m)| (IndexedMonomial::new(c, 2).unwrap(), m))
            .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn split_one_times_split_zero_term_count() {
        // counted by restricted shuffles with cuts (1,0) times plain shuffles
        let a = IndexedMonomial {
            word: Word(vec![1]),
            sigma2: Permutation::identity(1),
            split: 1,
        };
        let b = IndexedMonomial {
            word: Word(vec![1]),
            sigma2: Permutation::identity(1),
            split: 0,
        };
        let got = indexed_expand(&a, &b).unwrap();
        let rho1s = restricted_shuffles(&Permutation::identity(1), &Permutation::identity(1), 1, 0)
            .unwrap();
        let total: usize = got.iter().map(|(_, m)| m).sum();
        assert_eq!(total, rho1s.len() * 2);
    }

    #[test]
    fn times1_on_degree_one_terms() {
        let mut a: FormalSeries<MonomialClass, Rat> = FormalSeries::zero(2);
        a.add_term(
            MonomialClass {
                word: Word(vec![1]),
                sigma2: Permutation::identity(1),
            },
            rat(1),
        );
        let mut b: FormalSeries<MonomialClass, Rat> = FormalSeries::zero(2);
        b.add_term(
            MonomialClass {
                word: Word(vec![2]),
                sigma2: Permutation::identity(1),
            },
            rat(1),
        );
        let p = times1(&a, &b).unwrap();
        // two indexed terms, both with split 1
        assert_eq!(p.len(), 2);
        for (k, _) in p.terms() {
            assert_eq!(k.split, 1);
        }
        // 1 ⊗ 1 -> 1
        let one: FormalSeries<MonomialClass, Rat> = FormalSeries::unit(2);
        let unit_out = times1(&one, &one).unwrap();
        assert_eq!(unit_out, FormalSeries::unit(2));
    }

    #[test]
    fn embed_index_ranges() {
        let j = formal_j(1, 2);
        let e = embed(&j);
        // degree 0 -> 1 term, degree 1 -> 2 splits, degree 2 (2 classes) -> 3 splits each
        assert_eq!(e.len(), 1 + 2 + 2 * 3);
    }

    #[test]
    fn swapping_inputs_converts_times1_to_times2() {
        let a = formal_j(2, 2);
        let b = formal_j(2, 2);
        let t2 = times2(&a, &b).unwrap();
        let via_swap = times1(
            &a.map_keys(MonomialClass::swap_axes),
            &b.map_keys(MonomialClass::swap_axes),
        )
        .unwrap()
        .map_keys(swap_indexed);
        assert_eq!(t2, via_swap);
    }

    #[test]
    fn interchange_law_formal_degree_two() {
        // (J_A ×1 J_B) ×2 (J_C ×1 J_D) = (J_A ×2 J_C) ×1 (J_B ×2 J_D)
        let n = 2;
        let j = formal_j(2, n);
        let lhs = times2_on_indexed(&times1(&j, &j).unwrap(), &times1(&j, &j).unwrap()).unwrap();
        let rhs = times1_on_indexed(&times2(&j, &j).unwrap(), &times2(&j, &j).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        // every doubly-indexed class arises exactly once
        for (_, c) in lhs.terms() {
            assert_eq!(c, &rat(1));
        }
    }

    #[test]
    fn shuffle_components_recover_blocks() {
        let pi = Permutation::from_images(vec![2, 3, 1, 4]).unwrap();
        let (lo, hi) = shuffle_components(&pi, 2);
        assert_eq!(lo, Permutation::from_images(vec![2, 1]).unwrap());
        assert_eq!(hi, Permutation::from_images(vec![1, 2]).unwrap());
        // pi is a shuffle of its components
        let block_hi = Permutation::from_images(vec![1, 2]).unwrap();
        assert!(crate::perm::is_shuffle(&pi, &lo, &block_hi).unwrap());
    }
}
