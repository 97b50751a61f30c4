//! Public evaluators for iterated integrals over rectangles, indexed
//! domains, grids and paths: exact rational values for polynomial data,
//! quadrature otherwise.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::quad::engine::{ordered_quadrature, AxisSpec, QuadResult, QuadratureConfig, Segment};
use crate::quad::forms::{Form1, Form2, Rectangle};
use crate::quad::oracle::{self, GridBounds};
use crate::{rational_to_f64, Rational};

/// Either an exact rational or a numeric estimate.
#[derive(Clone, Debug)]
pub enum IntegralValue {
    Exact(Rational),
    Approx(QuadResult),
}

impl IntegralValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            IntegralValue::Exact(r) => rational_to_f64(r),
            IntegralValue::Approx(q) => q.value,
        }
    }

    pub fn est_error(&self) -> f64 {
        match self {
            IntegralValue::Exact(_) => 0.0,
            IntegralValue::Approx(q) => q.est_error,
        }
    }
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

/// Product integrand evaluated at rank-ordered coordinates: position `p`
/// reads the coordinate of its x-rank and y-rank.
fn product_integrand<'a>(
    forms: &'a [Form2],
    sx: &Permutation,
    sy: &Permutation,
) -> impl Fn(&[Vec<f64>]) -> f64 + Sync + 'a {
    let rank_x = sx.inverse();
    let rank_y = sy.inverse();
    let rx: Vec<usize> = (1..=forms.len()).map(|p| rank_x.apply(p) - 1).collect();
    let ry: Vec<usize> = (1..=forms.len()).map(|p| rank_y.apply(p) - 1).collect();
    move |args: &[Vec<f64>]| {
        let xs = &args[0];
        let ys = &args[1];
        let mut acc = 1.0;
        for (p, form) in forms.iter().enumerate() {
            acc *= form.eval(xs[rx[p]], ys[ry[p]]);
        }
        acc
    }
}

/// Numeric iterated integral over `Δ(sx) × Δ(sy)` inside `rect`.
pub fn eval_iterated_numeric(
    forms: &[Form2],
    sx: &Permutation,
    sy: &Permutation,
    rect: &Rectangle,
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    let n = forms.len();
    check_sizes(n, sx, sy)?;
    for f in forms {
        f.check_integrable()?;
    }
    let axes = [
        AxisSpec::single(rect.ax, rect.bx, n),
        AxisSpec::single(rect.ay, rect.by, n),
    ];
    ordered_quadrature(&axes, &product_integrand(forms, sx, sy), cfg)
}

/// Iterated integral, exact when every form is polynomial.
pub fn eval_iterated(
    forms: &[Form2],
    sx: &Permutation,
    sy: &Permutation,
    rect: &Rectangle,
    cfg: &QuadratureConfig,
) -> Result<IntegralValue> {
    if forms.iter().all(Form2::is_polynomial) {
        Ok(IntegralValue::Exact(oracle::poly_oracle(
            forms, sx, sy, rect,
        )?))
    } else {
        Ok(IntegralValue::Approx(eval_iterated_numeric(
            forms, sx, sy, rect, cfg,
        )?))
    }
}

/// Numeric indexed integral: first `split` x-ranks in `a`, the rest in the
/// right neighbour `b`.
pub fn eval_indexed_numeric(
    forms: &[Form2],
    sx: &Permutation,
    sy: &Permutation,
    split: usize,
    a: &Rectangle,
    b: &Rectangle,
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
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
    let axes = [
        AxisSpec {
            segments: vec![
                Segment::new(a.ax, a.bx, split),
                Segment::new(b.ax, b.bx, n - split),
            ],
        },
        AxisSpec::single(a.ay, a.by, n),
    ];
    ordered_quadrature(&axes, &product_integrand(forms, sx, sy), cfg)
}

/// Indexed integral, exact in polynomial mode.
pub fn eval_indexed(
    forms: &[Form2],
    sx: &Permutation,
    sy: &Permutation,
    split: usize,
    a: &Rectangle,
    b: &Rectangle,
    cfg: &QuadratureConfig,
) -> Result<IntegralValue> {
    if forms.iter().all(Form2::is_polynomial) {
        Ok(IntegralValue::Exact(oracle::indexed_poly_oracle(
            forms, sx, sy, split, a, b,
        )?))
    } else {
        Ok(IntegralValue::Approx(eval_indexed_numeric(
            forms, sx, sy, split, a, b, cfg,
        )?))
    }
}

/// Doubly-indexed integral over a 2x2 grid, exact in polynomial mode.
pub fn eval_doubly_indexed(
    forms: &[Form2],
    sx: &Permutation,
    sy: &Permutation,
    xsplit: usize,
    ysplit: usize,
    grid: &GridBounds,
    cfg: &QuadratureConfig,
) -> Result<IntegralValue> {
    let n = forms.len();
    check_sizes(n, sx, sy)?;
    if forms.iter().all(Form2::is_polynomial) {
        return Ok(IntegralValue::Exact(oracle::doubly_indexed_poly_oracle(
            forms, sx, sy, xsplit, ysplit, grid,
        )?));
    }
    let axes = [
        AxisSpec {
            segments: vec![
                Segment::new(grid.x_cuts[0], grid.x_cuts[1], xsplit),
                Segment::new(grid.x_cuts[1], grid.x_cuts[2], n - xsplit),
            ],
        },
        AxisSpec {
            segments: vec![
                Segment::new(grid.y_cuts[0], grid.y_cuts[1], ysplit),
                Segment::new(grid.y_cuts[1], grid.y_cuts[2], n - ysplit),
            ],
        },
    ];
    Ok(IntegralValue::Approx(ordered_quadrature(
        &axes,
        &product_integrand(forms, sx, sy),
        cfg,
    )?))
}

/// Path iterated integral (the one-dimensional variant of the same
/// contract): `∫` over the ordered chain in `[a, b]` of `Π g_p(t_p)` with
/// ranks assigned by `sigma`.
pub fn eval_path(
    forms: &[Form1],
    sigma: &Permutation,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralValue> {
    let n = forms.len();
    if sigma.len() != n {
        return Err(Error::invalid("permutation size does not match form count"));
    }
    if forms.iter().all(Form1::is_polynomial) {
        return Ok(IntegralValue::Exact(oracle::path_poly_oracle(
            forms, sigma, a, b,
        )?));
    }
    let rank = sigma.inverse();
    let ranks: Vec<usize> = (1..=n).map(|p| rank.apply(p) - 1).collect();
    let integrand = move |args: &[Vec<f64>]| {
        let ts = &args[0];
        forms
            .iter()
            .enumerate()
            .map(|(p, f)| f.eval(ts[ranks[p]]))
            .product()
    };
    let axes = [AxisSpec::single(a, b, n)];
    Ok(IntegralValue::Approx(ordered_quadrature(
        &axes, &integrand, cfg,
    )?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn numeric_matches_oracle_on_polynomials() {
        // Gauss cells reproduce the exact oracle on polynomial integrands
        let forms = vec![
            Form2::monomial(rat(1, 1), 2, 1),
            Form2::monomial(rat(1, 2), 1, 3),
        ];
        let rect = Rectangle::new(0.0, 1.5, -0.5, 1.0).unwrap();
        for sx in Permutation::all(2) {
            for sy in Permutation::all(2) {
                let exact = rational_to_f64(&oracle::poly_oracle(&forms, &sx, &sy, &rect).unwrap());
                let num =
                    eval_iterated_numeric(&forms, &sx, &sy, &rect, &QuadratureConfig::gauss(8))
                        .unwrap();
                assert!(
                    (num.value - exact).abs() < 1e-12,
                    "sx={sx} sy={sy}: {} vs {exact}",
                    num.value
                );
            }
        }
    }

    #[test]
    fn evaluator_form_agrees_with_polynomial_twin() {
        let poly = vec![Form2::monomial(rat(3, 1), 1, 2)];
        let eval = vec![Form2::evaluator(|x, y| 3.0 * x * y * y)];
        let id1 = Permutation::identity(1);
        let rect = Rectangle::unit();
        let a = eval_iterated(&poly, &id1, &id1, &rect, &QuadratureConfig::default()).unwrap();
        let b = eval_iterated(&eval, &id1, &id1, &rect, &QuadratureConfig::default()).unwrap();
        assert!(matches!(a, IntegralValue::Exact(_)));
        assert!((a.as_f64() - b.as_f64()).abs() < 1e-12);
    }

    #[test]
    fn non_integrable_evaluator_is_rejected() {
        let bad = Form2::Evaluator {
            f: std::sync::Arc::new(|x, _| 1.0 / x),
            smooth: false,
            integrable: false,
        };
        let id1 = Permutation::identity(1);
        let err = eval_iterated_numeric(
            &[bad],
            &id1,
            &id1,
            &Rectangle::unit(),
            &QuadratureConfig::default(),
        );
        assert!(err.is_err());
    }

    #[test]
    fn indexed_numeric_matches_exact() {
        let forms = vec![
            Form2::monomial(rat(1, 1), 1, 0),
            Form2::monomial(rat(1, 1), 0, 1),
        ];
        let a = Rectangle::unit();
        let b = Rectangle::new(1.0, 2.5, 0.0, 1.0).unwrap();
        for split in 0..=2 {
            let id2 = Permutation::identity(2);
            let exact = rational_to_f64(
                &oracle::indexed_poly_oracle(&forms, &id2, &id2, split, &a, &b).unwrap(),
            );
            let num = eval_indexed_numeric(
                &forms,
                &id2,
                &id2,
                split,
                &a,
                &b,
                &QuadratureConfig::gauss(8),
            )
            .unwrap();
            assert!((num.value - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn cross_product_identity_holds_numerically_for_smooth_forms() {
        // product of two window integrals equals the shuffle sum of the
        // split integrals, through quadrature alone (no polynomial oracle)
        let f = Form2::evaluator(|x, y| (x * y).exp());
        let g = Form2::evaluator(|x, y| x + (2.0 * y).sin());
        let a = Rectangle::unit();
        let b = Rectangle::new(1.0, 2.0, 0.0, 1.0).unwrap();
        let id1 = Permutation::identity(1);
        let cfg = QuadratureConfig::gauss(14);
        let ia = eval_iterated_numeric(std::slice::from_ref(&f), &id1, &id1, &a, &cfg)
            .unwrap()
            .value;
        let ib = eval_iterated_numeric(std::slice::from_ref(&g), &id1, &id1, &b, &cfg)
            .unwrap()
            .value;
        let joint = vec![f, g];
        let sx = Permutation::identity(2);
        let mut sum = 0.0;
        for sy in Permutation::all(2) {
            sum += eval_indexed_numeric(&joint, &sx, &sy, 1, &a, &b, &cfg)
                .unwrap()
                .value;
        }
        assert!(
            (ia * ib - sum).abs() < 1e-10,
            "product {} vs split sum {sum}",
            ia * ib
        );
    }

    #[test]
    fn path_d1_area() {
        // single constant 1-form over [0,2]: the plain integral
        let v = eval_path(
            &[Form1::monomial(rat(1, 1), 0)],
            &Permutation::identity(1),
            0.0,
            2.0,
            &QuadratureConfig::default(),
        )
        .unwrap();
        assert_eq!(v.as_f64(), 2.0);
    }
}
