//! Permutation combinatorics: shuffles, restricted shuffles, concatenation,
//! and a brute-force shuffle membership oracle.
//!
//! Permutations are stored over `{1..n}`; when a second block conceptually
//! lives on `{m+1..m+n}` the shift is applied internally, so callers never
//! juggle offsets. The empty permutation (`n = 0`) is a first-class value.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// A bijection of `{1..n}`, stored as the one-line image sequence.
///
/// `images[i-1]` is the image of `i`. For the ordered-domain integrals the
/// one-line sequence `[p(1), p(2), ...]` reads as "the rank-1 variable is at
/// position p(1), the rank-2 variable at position p(2), ...".
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Identity permutation of `{1..n}`. `n = 0` gives the empty permutation.
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// Build from a one-line image sequence over `{1..n}`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::invalid(format!(
                    "not a bijection of {{1..{n}}}: {images:?}"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Image of `i` (1-based).
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// Function composition `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::invalid(format!(
                "cannot compose permutations of sizes {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(Permutation {
            images: (1..=self.len())
                .map(|i| self.apply(other.apply(i)))
                .collect(),
        })
    }

    /// All permutations of `{1..n}` in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation {
                images: current.clone(),
            });
            if !next_lex(&mut current) {
                break;
            }
        }
        out
    }
}

fn next_lex(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parse the one-line form `"[2,1,3]"` (brackets optional).
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .trim();
        if body.is_empty() {
            return Ok(Permutation::identity(0));
        }
        let images = body
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::invalid(format!("bad permutation entry {tok:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }
}

/// The index set `{offset+1, ..., offset+n}`, so a second shuffle block on
/// `{m+1..m+n}` has an explicit home.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundSet {
    pub offset: usize,
    pub n: usize,
}

impl GroundSet {
    pub fn new(offset: usize, n: usize) -> Self {
        GroundSet { offset, n }
    }

    pub fn contains(&self, v: usize) -> bool {
        v > self.offset && v <= self.offset + self.n
    }

    /// The block immediately following this one, of size `n`.
    pub fn following(&self, n: usize) -> GroundSet {
        GroundSet::new(self.offset + self.n, n)
    }
}

/// All shuffles of `sigma` (on the first block of size m) with `tau` (on the
/// consecutive second block of size n): permutations of `{1..m+n}` whose
/// one-line sequence contains `[sigma(1)..sigma(m)]` and the shifted
/// `[m+tau(1)..m+tau(n)]` as subsequences. Lexicographically sorted; the
/// count is always `C(m+n, m)`.
pub fn shuffles(sigma: &Permutation, tau: &Permutation) -> Vec<Permutation> {
    let left: Vec<usize> = sigma.images().to_vec();
    let m = sigma.len();
    let right: Vec<usize> = tau.images().iter().map(|&v| v + m).collect();
    let mut out: Vec<Permutation> = interleavings(&left, &right)
        .into_iter()
        .map(|images| Permutation { images })
        .collect();
    out.sort();
    out
}

/// All ways to interleave two sequences preserving each one's internal order.
fn interleavings(a: &[usize], b: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(a.len() + b.len());
    interleave_rec(a, b, &mut buf, &mut out);
    out
}

fn interleave_rec(a: &[usize], b: &[usize], buf: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if a.is_empty() && b.is_empty() {
        out.push(buf.clone());
        return;
    }
    if let Some((&x, rest)) = a.split_first() {
        buf.push(x);
        interleave_rec(rest, b, buf, out);
        buf.pop();
    }
    if let Some((&x, rest)) = b.split_first() {
        buf.push(x);
        interleave_rec(a, rest, buf, out);
        buf.pop();
    }
}

/// Membership oracle for the shuffle set, checked directly against the
/// defining order-refinement property: ordering points by `rho` must induce
/// the `sigma` order on block one and the `tau` order on block two. The
/// one-line word of `rho` is scanned once; each block label must appear in
/// the exact order its block permutation prescribes.
pub fn is_shuffle(rho: &Permutation, sigma: &Permutation, tau: &Permutation) -> Result<bool> {
    let m = sigma.len();
    let n = tau.len();
    if rho.len() != m + n {
        return Err(Error::invalid(format!(
            "ground sets mismatch: rho on {} elements, blocks of sizes {m} and {n}",
            rho.len()
        )));
    }
    let mut si = 0usize;
    let mut ti = 0usize;
    for &v in rho.images() {
        if v <= m {
            if sigma.images()[si] != v {
                return Ok(false);
            }
            si += 1;
        } else {
            if tau.images()[ti] + m != v {
                return Ok(false);
            }
            ti += 1;
        }
    }
    Ok(true)
}

/// Concatenation `(sigma, tau)`: the unique permutation of `{1..m+n}` acting
/// as `sigma` on the first block and as the shifted `tau` on the second.
pub fn concat_perm(sigma: &Permutation, tau: &Permutation) -> Permutation {
    let m = sigma.len();
    let mut images = sigma.images().to_vec();
    images.extend(tau.images().iter().map(|&v| v + m));
    Permutation { images }
}

/// Restricted shuffles with cut positions `i` (in `sigma`) and `j` (in
/// `tau`): permutations of `{1..m+n}` whose first `i+j` one-line entries
/// interleave `sigma`'s first `i` entries with `tau`'s first `j`, and whose
/// remaining entries interleave the two tails. Degenerate cuts
/// `(0,0)` and `(m,n)` reduce to the plain shuffle set.
pub fn restricted_shuffles(
    sigma: &Permutation,
    tau: &Permutation,
    i: usize,
    j: usize,
) -> Result<Vec<Permutation>> {
    let m = sigma.len();
    let n = tau.len();
    if i > m || j > n {
        return Err(Error::invalid(format!(
            "cut positions out of range: i={i} (block size {m}), j={j} (block size {n})"
        )));
    }
    let left: Vec<usize> = sigma.images().to_vec();
    let right: Vec<usize> = tau.images().iter().map(|&v| v + m).collect();
    let mut out = Vec::new();
    for below in interleavings(&left[..i], &right[..j]) {
        for above in interleavings(&left[i..], &right[j..]) {
            let mut images = below.clone();
            images.extend_from_slice(&above);
            out.push(Permutation { images });
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The triple shuffle set of three permutations on consecutive disjoint
/// blocks. Computed by composing binary shuffles; independent of grouping.
pub fn triple_shuffles(
    sigma: &Permutation,
    tau: &Permutation,
    zeta: &Permutation,
) -> Vec<Permutation> {
    let mut out = Vec::new();
    for rho in shuffles(sigma, tau) {
        out.extend(shuffles(&rho, zeta));
    }
    out.sort();
    out.dedup();
    out
}

/// `C(m+n, m)`; small arguments only.
pub fn block_binomial(m: usize, n: usize) -> usize {
    let k = m.min(n);
    let total = m + n;
    let mut num = 1usize;
    let mut den = 1usize;
    for step in 1..=k {
        num *= total - k + step;
        den *= step;
    }
    num / den
}
