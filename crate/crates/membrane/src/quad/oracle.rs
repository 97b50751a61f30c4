//! Exact rational evaluation of ordered-domain integrals of polynomial
//! forms. The domain factorizes per axis into ordered chains, so the value
//! is a finite sum over term choices of products of nested antiderivatives.
//! Nothing here touches the shuffle machinery or floating-point quadrature;
//! this is the independent side of every dual-route check.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::quad::forms::{Form1, Form2, Rectangle};
use crate::quad::poly::{ordered_chain_integral, split_chain_integral};
use crate::Rational;
use num_traits::Zero;

fn rational_bounds(rect: &Rectangle) -> Result<[Rational; 4]> {
    rect.rational_bounds()
        .ok_or_else(|| Error::invalid("rectangle bounds are not finite"))
}

fn check_sizes(n: usize, sx: &Permutation, sy: &Permutation) -> Result<()> {
    if sx.len() != n || sy.len() != n {
        return Err(Error::invalid(format!(
            "form count {n} does not match permutation sizes ({}, {})",
            sx.len(),
            sy.len()
        )));
    }
    Ok(())
}

/// Iterate over all term choices of the polynomial forms; for each choice
/// hand `(coeff_product, x_exponents_by_position, y_exponents_by_position)`
/// to the accumulator.
fn for_each_term_choice(
    forms: &[Form2],
    mut visit: impl FnMut(Rational, &[u32], &[u32]),
) -> Result<()> {
    let term_lists: Vec<&[crate::quad::forms::PolyTerm]> = forms
        .iter()
        .map(|f| f.poly_terms())
        .collect::<Result<Vec<_>>>()?;
    if term_lists.iter().any(|t| t.is_empty()) {
        return Ok(()); // a zero form annihilates every product
    }
    let n = forms.len();
    let mut idx = vec![0usize; n];
    let mut px = vec![0u32; n];
    let mut py = vec![0u32; n];
    loop {
        let mut coeff = Rational::from_integer(1.into());
        for p in 0..n {
            let t = &term_lists[p][idx[p]];
            coeff *= t.coeff.clone();
            px[p] = t.px;
            py[p] = t.py;
        }
        if !coeff.is_zero() {
            visit(coeff, &px, &py);
        }
        let mut d = 0;
        loop {
            if d == n {
                return Ok(());
            }
            idx[d] += 1;
            if idx[d] < term_lists[d].len() {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

/// Exact iterated integral over `Δ(sx) × Δ(sy)` inside `rect`.
pub fn poly_oracle(
    forms: &[Form2],
    sx: &Permutation,
    sy: &Permutation,
    rect: &Rectangle,
) -> Result<Rational> {
    let n = forms.len();
    check_sizes(n, sx, sy)?;
    let [ax, bx, ay, by] = rational_bounds(rect)?;
    let mut total = Rational::zero();
    for_each_term_choice(forms, |coeff, px, py| {
        let ex: Vec<u32> = (1..=n).map(|k| px[sx.apply(k) - 1]).collect();
        let ey: Vec<u32> = (1..=n).map(|k| py[sy.apply(k) - 1]).collect();
        total +=
            coeff * ordered_chain_integral(&ex, &ax, &bx) * ordered_chain_integral(&ey, &ay, &by);
    })?;
    Ok(total)
}

/// Exact indexed integral: the first `split` x-ranks range over `a`, the
/// rest over the right neighbour `b`; y stays the full ordered simplex.
pub fn indexed_poly_oracle(
    forms: &[Form2],
    sx: &Permutation,
    sy: &Permutation,
    split: usize,
    a: &Rectangle,
    b: &Rectangle,
) -> Result<Rational> {
    let n = forms.len();
    check_sizes(n, sx, sy)?;
    if split > n {
        return Err(Error::invalid(format!(
            "split {split} out of range 0..={n}"
        )));
    }
    if !a.adjacent_right(b) {
        return Err(Error::invalid(
            "rectangles are not horizontally adjacent with equal y-extent",
        ));
    }
    let [ax, bx, ay, by] = rational_bounds(a)?;
    let [_, cx, _, _] = rational_bounds(b)?;
    let mut total = Rational::zero();
    for_each_term_choice(forms, |coeff, px, py| {
        let ex: Vec<u32> = (1..=n).map(|k| px[sx.apply(k) - 1]).collect();
        let ey: Vec<u32> = (1..=n).map(|k| py[sy.apply(k) - 1]).collect();
        total += coeff
            * split_chain_integral(
                &ex,
                &[split, n - split],
                &[ax.clone(), bx.clone(), cx.clone()],
            )
            * ordered_chain_integral(&ey, &ay, &by);
    })?;
    Ok(total)
}

/// 2x2 grid of rectangles described by its axis cuts.
#[derive(Clone, Debug)]
pub struct GridBounds {
    pub x_cuts: [f64; 3],
    pub y_cuts: [f64; 3],
}

impl GridBounds {
    pub fn new(x_cuts: [f64; 3], y_cuts: [f64; 3]) -> Result<Self> {
        if !(x_cuts[0] < x_cuts[1] && x_cuts[1] < x_cuts[2])
            || !(y_cuts[0] < y_cuts[1] && y_cuts[1] < y_cuts[2])
        {
            return Err(Error::invalid("grid cuts must be strictly increasing"));
        }
        Ok(GridBounds { x_cuts, y_cuts })
    }

    pub fn rational_cuts(&self) -> Result<([Rational; 3], [Rational; 3])> {
        let conv =
            |v: f64| Rational::from_float(v).ok_or_else(|| Error::invalid("non-finite grid cut"));
        Ok((
            [
                conv(self.x_cuts[0])?,
                conv(self.x_cuts[1])?,
                conv(self.x_cuts[2])?,
            ],
            [
                conv(self.y_cuts[0])?,
                conv(self.y_cuts[1])?,
                conv(self.y_cuts[2])?,
            ],
        ))
    }
}

/// Exact doubly-indexed integral over a 2x2 grid: the first `xsplit`
/// x-ranks left of the vertical cut and the first `ysplit` y-ranks below the
/// horizontal cut.
pub fn doubly_indexed_poly_oracle(
    forms: &[Form2],
    sx: &Permutation,
    sy: &Permutation,
    xsplit: usize,
    ysplit: usize,
    grid: &GridBounds,
) -> Result<Rational> {
    let n = forms.len();
    check_sizes(n, sx, sy)?;
    if xsplit > n || ysplit > n {
        return Err(Error::invalid("split out of range"));
    }
    let (xc, yc) = grid.rational_cuts()?;
    let mut total = Rational::zero();
    for_each_term_choice(forms, |coeff, px, py| {
        let ex: Vec<u32> = (1..=n).map(|k| px[sx.apply(k) - 1]).collect();
        let ey: Vec<u32> = (1..=n).map(|k| py[sy.apply(k) - 1]).collect();
        total += coeff
            * split_chain_integral(&ex, &[xsplit, n - xsplit], &xc)
            * split_chain_integral(&ey, &[ysplit, n - ysplit], &yc);
    })?;
    Ok(total)
}

/// Exact path iterated integral `∫_{a <= t_1 <= ... <= t_n <= b}` of
/// polynomial 1-forms, ordered by `sigma`.
pub fn path_poly_oracle(forms: &[Form1], sigma: &Permutation, a: f64, b: f64) -> Result<Rational> {
    let n = forms.len();
    if sigma.len() != n {
        return Err(Error::invalid("permutation size does not match form count"));
    }
    let (ra, rb) = match (Rational::from_float(a), Rational::from_float(b)) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::invalid("path bounds are not finite")),
    };
    let term_lists: Vec<&[(Rational, u32)]> = forms
        .iter()
        .map(|f| match f {
            Form1::Polynomial(t) => Ok(t.as_slice()),
            Form1::Evaluator(_) => Err(Error::invalid("non-polynomial form in exact mode")),
        })
        .collect::<Result<Vec<_>>>()?;
    if term_lists.iter().any(|t| t.is_empty()) {
        return Ok(Rational::zero());
    }
    let mut total = Rational::zero();
    let mut idx = vec![0usize; n];
    loop {
        let mut coeff = Rational::from_integer(1.into());
        let mut exps = vec![0u32; n];
        for p in 0..n {
            let (c, e) = &term_lists[p][idx[p]];
            coeff *= c.clone();
            exps[p] = *e;
        }
        let chain: Vec<u32> = (1..=n).map(|k| exps[sigma.apply(k) - 1]).collect();
        total += coeff * ordered_chain_integral(&chain, &ra, &rb);
        let mut d = 0;
        loop {
            if d == n {
                return Ok(total);
            }
            idx[d] += 1;
            if idx[d] < term_lists[d].len() {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}
