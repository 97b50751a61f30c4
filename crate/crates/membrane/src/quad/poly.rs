//! Dense univariate polynomials over exact rationals and the nested
//! antiderivative integrator for ordered chains of monomials. This is the
//! independent oracle behind every exact identity check: it never touches
//! the shuffle machinery or the floating-point quadrature.

use crate::Rational;
use num_traits::{One, Zero};

/// Dense polynomial; `coeffs[k]` multiplies `t^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RatPoly {
            coeffs: vec![Rational::one()],
        }
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            RatPoly { coeffs: vec![c] }
        }
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t.clone() + c.clone();
        }
        acc
    }

    /// Multiply by `t^e`.
    pub fn shift_up(&self, e: u32) -> RatPoly {
        if self.coeffs.is_empty() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); e as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        RatPoly { coeffs }
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> RatPoly {
        let mut coeffs = vec![Rational::zero()];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() / Rational::from_integer((k as i64 + 1).into()));
        }
        RatPoly { coeffs }
    }

    pub fn sub_constant(&self, c: &Rational) -> RatPoly {
        let mut out = self.clone();
        if out.coeffs.is_empty() {
            out.coeffs.push(-c.clone());
        } else {
            out.coeffs[0] = out.coeffs[0].clone() - c.clone();
        }
        out
    }
}

/// Exact value of the ordered-chain integral
/// `∫_{a <= u_1 <= ... <= u_n <= b} Π_k u_k^{e_k} du`.
///
/// Computed by nested antiderivation: G_0 = 1 and
/// `G_k(u) = ∫_a^u t^{e_k} G_{k-1}(t) dt`; the value is `G_n(b)`.
/// The empty chain has value 1.
pub fn ordered_chain_integral(exponents: &[u32], a: &Rational, b: &Rational) -> Rational {
    let mut g = RatPoly::one();
    for &e in exponents {
        let h = g.shift_up(e).antiderivative();
        let at_a = h.eval(a);
        g = h.sub_constant(&at_a);
    }
    g.eval(b)
}

/// Ordered chain split across consecutive intervals: rank block `counts[s]`
/// lives in `[cuts[s], cuts[s+1]]`; blocks decouple at the cuts, so the
/// value is the product of per-block chain integrals.
pub fn split_chain_integral(exponents: &[u32], counts: &[usize], cuts: &[Rational]) -> Rational {
    assert_eq!(counts.len() + 1, cuts.len());
    assert_eq!(counts.iter().sum::<usize>(), exponents.len());
    let mut acc = Rational::one();
    let mut offset = 0usize;
    for (s, &k) in counts.iter().enumerate() {
        acc *= ordered_chain_integral(&exponents[offset..offset + k], &cuts[s], &cuts[s + 1]);
        offset += k;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn simplex_volumes() {
        // ∫ over the ordered n-simplex of 1 = (b-a)^n / n!
        for n in 0..=5usize {
            let exps = vec![0u32; n];
            let got = ordered_chain_integral(&exps, &rat(0, 1), &rat(1, 1));
            let mut fact = 1i64;
            for k in 1..=n as i64 {
                fact *= k;
            }
            assert_eq!(got, rat(1, fact));
        }
    }

    #[test]
    fn weighted_chain_by_hand() {
        // ∫_{0<=u1<=u2<=1} u1 du = ∫_0^1 (u2^2/2) du2 = 1/6
        assert_eq!(
            ordered_chain_integral(&[1, 0], &rat(0, 1), &rat(1, 1)),
            rat(1, 6)
        );
        // ∫_{0<=u1<=u2<=1} u2 du = ∫_0^1 u2 * u2 du2 = 1/3
        assert_eq!(
            ordered_chain_integral(&[0, 1], &rat(0, 1), &rat(1, 1)),
            rat(1, 3)
        );
    }

    #[test]
    fn shifted_interval() {
        // ∫_{1<=u<=2} u^2 du = 7/3
        assert_eq!(
            ordered_chain_integral(&[2], &rat(1, 1), &rat(2, 1)),
            rat(7, 3)
        );
    }

    #[test]
    fn split_chain_decouples() {
        // one variable in [0,1], one in [1,2], integrand u1*u2:
        // (1/2) * (3/2) = 3/4
        let got = split_chain_integral(&[1, 1], &[1, 1], &[rat(0, 1), rat(1, 1), rat(2, 1)]);
        assert_eq!(got, rat(3, 4));
    }

    #[test]
    fn empty_chain_is_one() {
        assert_eq!(
            ordered_chain_integral(&[], &rat(0, 1), &rat(5, 1)),
            rat(1, 1)
        );
    }
}
