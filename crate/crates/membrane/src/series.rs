//! Degree-truncated formal series over monomial classes.
//!
//! The carrier is the free module on canonical classes; coefficients are any
//! commutative ring scalar (exact `BigRational` for polynomial data, `f64`
//! for quadrature-instantiated series). Truncation models the inverse limit
//! by a finite approximation: terms above the bound are silently dropped, so
//! all operations are exact "mod degree > N".

use crate::error::{Error, Result};
use crate::perm::{concat_perm, shuffles, Permutation};
use crate::word::{IndexedMonomial, MonomialClass, Word};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Neg;

/// Coefficient scalar for series: a commutative ring with equality.
pub trait Scalar: Clone + PartialEq + Zero + One + Neg<Output = Self> {}
impl<T> Scalar for T where T: Clone + PartialEq + Zero + One + Neg<Output = T> {}

/// Keys a graded term: anything with a degree and a unit element.
pub trait Graded: Clone + Ord + fmt::Display {
    fn degree(&self) -> usize;
    fn unit() -> Self;
}

impl Graded for MonomialClass {
    fn degree(&self) -> usize {
        self.degree()
    }
    fn unit() -> Self {
        MonomialClass::unit()
    }
}

impl Graded for IndexedMonomial {
    fn degree(&self) -> usize {
        self.degree()
    }
    fn unit() -> Self {
        IndexedMonomial::unit()
    }
}

/// Ordered pair of classes, the carrier for coproduct targets.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorKey(pub MonomialClass, pub MonomialClass);

impl fmt::Display for TensorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗{}", self.0, self.1)
    }
}

impl Graded for TensorKey {
    fn degree(&self) -> usize {
        self.0.degree() + self.1.degree()
    }
    fn unit() -> Self {
        TensorKey(MonomialClass::unit(), MonomialClass::unit())
    }
}

/// A finite, degree-truncated linear combination of graded keys.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalSeries<K: Graded, C: Scalar> {
    truncation: usize,
    terms: BTreeMap<K, C>,
}

pub type TensorSeries<C> = FormalSeries<TensorKey, C>;

impl<K: Graded, C: Scalar> FormalSeries<K, C> {
    pub fn zero(truncation: usize) -> Self {
        FormalSeries {
            truncation,
            terms: BTreeMap::new(),
        }
    }

    /// The multiplicative unit: coefficient one on the degree-0 key.
    pub fn unit(truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        s.add_term(K::unit(), C::one());
        s
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Add `coeff * key`, dropping terms beyond the truncation bound and
    /// pruning exact zeros.
    pub fn add_term(&mut self, key: K, coeff: C) {
        if key.degree() > self.truncation || coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn coefficient(&self, key: &K) -> C {
        self.terms.get(key).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.truncation != other.truncation {
            return Err(Error::invalid("truncation mismatch in series addition"));
        }
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &C) -> Self {
        let mut out = Self::zero(self.truncation);
        for (k, c) in self.terms() {
            out.add_term(k.clone(), c.clone() * factor.clone());
        }
        out
    }

    pub fn negate(&self) -> Self {
        let mut out = Self::zero(self.truncation);
        for (k, c) in self.terms() {
            out.add_term(k.clone(), c.clone().neg());
        }
        out
    }

    /// The degree-0 coefficient.
    pub fn counit(&self) -> C {
        self.coefficient(&K::unit())
    }

    /// Map keys; coefficients for colliding images accumulate.
    pub fn map_keys<L: Graded>(&self, f: impl Fn(&K) -> L) -> FormalSeries<L, C> {
        let mut out = FormalSeries::zero(self.truncation);
        for (k, c) in self.terms() {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Largest absolute difference of coefficients, for f64 comparisons.
    pub fn worst_deviation(&self, other: &Self, abs: impl Fn(&C) -> f64) -> f64 {
        let mut worst = 0.0f64;
        for (k, c) in self.terms() {
            let d = abs(&(c.clone() + other.coefficient(k).neg()));
            worst = worst.max(d);
        }
        for (k, c) in other.terms() {
            if !self.terms.contains_key(k) {
                worst = worst.max(abs(c));
            }
        }
        worst
    }
}

impl<K: Graded, C: Scalar> fmt::Debug for FormalSeries<K, C>
where
    C: fmt::Debug,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series(N={}; ", self.truncation)?;
        for (i, (k, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c:?}·{k}")?;
        }
        write!(f, ")")
    }
}

impl<C: Scalar> FormalSeries<MonomialClass, C> {
    /// Bilinear shuffle product: each pair of terms expands over the shuffles
    /// of the x-permutations (identities after canonicalization) and the
    /// shuffles of the y-permutations, every expansion term re-canonicalized.
    /// Associative and commutative; the degree-0 class is the unit.
    pub fn shuffle_mul(&self, other: &Self) -> Result<Self> {
        if self.truncation != other.truncation {
            return Err(Error::invalid("truncation mismatch in shuffle product"));
        }
        let mut out = Self::zero(self.truncation);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if a.degree() + b.degree() > self.truncation {
                    continue;
                }
                let coeff = ca.clone() * cb.clone();
                for (key, mult) in shuffle_expand(a, b) {
                    out.add_term(key, scalar_times_usize(&coeff, mult));
                }
            }
        }
        Ok(out)
    }
}

/// `mult` copies of a scalar, by repeated addition (the scalar ring is not
/// assumed to embed the integers).
pub fn scalar_times_usize<C: Scalar>(c: &C, mult: usize) -> C {
    let mut acc = c.clone();
    for _ in 1..mult {
        acc = acc + c.clone();
    }
    acc
}

/// Expand the product of two canonical classes into canonical classes with
/// multiplicities. The x-side runs over all interleavings of the two blocks,
/// the y-side over the shuffles of the stored permutations.
pub fn shuffle_expand(a: &MonomialClass, b: &MonomialClass) -> Vec<(MonomialClass, usize)> {
    let m = a.degree();
    let n = b.degree();
    let mut counts: BTreeMap<MonomialClass, usize> = BTreeMap::new();
    let mut joint = a.word.0.clone();
    joint.extend_from_slice(&b.word.0);
    let rho1s = shuffles(&Permutation::identity(m), &Permutation::identity(n));
    let rho2s = shuffles(&a.sigma2, &b.sigma2);
    for rho1 in &rho1s {
        let inv1 = rho1.inverse();
        let word = Word((1..=m + n).map(|r| joint[rho1.apply(r) - 1]).collect());
        for rho2 in &rho2s {
            let sigma2 = inv1.compose(rho2).expect("sizes match");
            *counts
                .entry(MonomialClass {
                    word: word.clone(),
                    sigma2,
                })
                .or_insert(0) += 1;
        }
    }
    counts.into_iter().collect()
}

/// Triple product expansion via the triple shuffle set; used to confirm
/// grouping independence of the shuffle product.
pub fn shuffle_expand3(
    a: &MonomialClass,
    b: &MonomialClass,
    c: &MonomialClass,
) -> Vec<(MonomialClass, usize)> {
    let (m, n, p) = (a.degree(), b.degree(), c.degree());
    let mut counts: BTreeMap<MonomialClass, usize> = BTreeMap::new();
    let mut joint = a.word.0.clone();
    joint.extend_from_slice(&b.word.0);
    joint.extend_from_slice(&c.word.0);
    let rho1s = crate::perm::triple_shuffles(
        &Permutation::identity(m),
        &Permutation::identity(n),
        &Permutation::identity(p),
    );
    let rho2s = crate::perm::triple_shuffles(&a.sigma2, &b.sigma2, &c.sigma2);
    for rho1 in &rho1s {
        let inv1 = rho1.inverse();
        let word = Word((1..=m + n + p).map(|r| joint[rho1.apply(r) - 1]).collect());
        for rho2 in &rho2s {
            let sigma2 = inv1.compose(rho2).expect("sizes match");
            *counts
                .entry(MonomialClass {
                    word: word.clone(),
                    sigma2,
                })
                .or_insert(0) += 1;
        }
    }
    counts.into_iter().collect()
}

/// Generating series truncated at degree `n_max`: the sum over every
/// canonical class of degree <= n_max of `coeff(class) * class`. Coefficient
/// evaluation fans out across threads; failures carry the offending class.
pub fn truncated_j<C: Scalar + Send>(
    alphabet: u8,
    n_max: usize,
    coeff: impl Fn(&MonomialClass) -> Result<C> + Sync,
) -> Result<FormalSeries<MonomialClass, C>> {
    let mut classes = Vec::new();
    for n in 0..=n_max {
        classes.extend(MonomialClass::enumerate(alphabet, n));
    }
    let evaluated = crate::util::parallel_map(classes.len(), |i| coeff(&classes[i]));
    let mut out = FormalSeries::zero(n_max);
    for (class, value) in classes.into_iter().zip(evaluated) {
        match value {
            Ok(v) => out.add_term(class, v),
            Err(e) => {
                return Err(Error::eval(format!(
                    "coefficient evaluation failed on class {class}: {e}"
                )))
            }
        }
    }
    Ok(out)
}

/// Fixed concatenation split of a canonical permutation: `Some((front,
/// back))` when the first `i` ranks map into the first `i` positions,
/// otherwise `None`. This is the decomposition condition of the coproduct.
pub fn split_at(sigma2: &Permutation, i: usize) -> Option<(Permutation, Permutation)> {
    let n = sigma2.len();
    if sigma2.images()[..i].iter().any(|&v| v > i) {
        return None;
    }
    let front = Permutation::from_images(sigma2.images()[..i].to_vec()).ok()?;
    let back =
        Permutation::from_images(sigma2.images()[i..].iter().map(|&v| v - i).collect()).ok()?;
    debug_assert_eq!(concat_perm(&front, &back), *sigma2);
    debug_assert_eq!(back.len(), n - i);
    Some((front, back))
}
