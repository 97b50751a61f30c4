//! Rectangles and integrand descriptors.

use crate::error::{Error, Result};
use crate::Rational;
use num_traits::ToPrimitive;
use std::fmt;
use std::sync::Arc;

/// Axis-aligned rectangle with nonempty interior.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Rectangle {
    pub ax: f64,
    pub bx: f64,
    pub ay: f64,
    pub by: f64,
}

impl Rectangle {
    pub fn new(ax: f64, bx: f64, ay: f64, by: f64) -> Result<Self> {
        if !(ax < bx && ay < by) {
            return Err(Error::invalid(format!(
                "degenerate rectangle [{ax},{bx}]x[{ay},{by}]"
            )));
        }
        Ok(Rectangle { ax, bx, ay, by })
    }

    pub fn unit() -> Self {
        Rectangle {
            ax: 0.0,
            bx: 1.0,
            ay: 0.0,
            by: 1.0,
        }
    }

    /// Exact corner coordinates when the bounds are (representable) rationals.
    pub fn rational_bounds(&self) -> Option<[Rational; 4]> {
        let conv = |v: f64| Rational::from_float(v);
        Some([
            conv(self.ax)?,
            conv(self.bx)?,
            conv(self.ay)?,
            conv(self.by)?,
        ])
    }

    /// Right neighbour sharing the x-face: `self.bx == other.ax` and equal
    /// y-extent.
    pub fn adjacent_right(&self, other: &Rectangle) -> bool {
        self.bx == other.ax && self.ay == other.ay && self.by == other.by
    }

    /// Top neighbour sharing the y-face.
    pub fn adjacent_above(&self, other: &Rectangle) -> bool {
        self.by == other.ay && self.ax == other.ax && self.bx == other.bx
    }
}

/// One monomial `coeff * x^px * y^py` of a polynomial 2-form coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyTerm {
    pub coeff: Rational,
    pub px: u32,
    pub py: u32,
}

impl PolyTerm {
    pub fn new(coeff: Rational, px: u32, py: u32) -> Self {
        PolyTerm { coeff, px, py }
    }
}

/// A 2-form `f(x,y) dx ∧ dy` given either by exact polynomial data or by a
/// black-box evaluator.
#[derive(Clone)]
pub enum Form2 {
    Polynomial(Vec<PolyTerm>),
    Evaluator {
        f: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
        smooth: bool,
        integrable: bool,
    },
}

impl Form2 {
    /// Polynomial form; rejects duplicate `(px, py)` pairs.
    pub fn polynomial(terms: Vec<PolyTerm>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for t in &terms {
            if !seen.insert((t.px, t.py)) {
                return Err(Error::invalid(format!(
                    "duplicate exponent pair ({}, {})",
                    t.px, t.py
                )));
            }
        }
        Ok(Form2::Polynomial(terms))
    }

    pub fn constant(c: Rational) -> Self {
        Form2::Polynomial(vec![PolyTerm::new(c, 0, 0)])
    }

    pub fn monomial(coeff: Rational, px: u32, py: u32) -> Self {
        Form2::Polynomial(vec![PolyTerm::new(coeff, px, py)])
    }

    pub fn evaluator(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Form2::Evaluator {
            f: Arc::new(f),
            smooth: true,
            integrable: true,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self, Form2::Polynomial(_))
    }

    pub fn poly_terms(&self) -> Result<&[PolyTerm]> {
        match self {
            Form2::Polynomial(t) => Ok(t),
            Form2::Evaluator { .. } => Err(Error::invalid("non-polynomial form in exact mode")),
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            Form2::Polynomial(terms) => terms
                .iter()
                .map(|t| {
                    t.coeff.to_f64().unwrap_or(f64::NAN) * x.powi(t.px as i32) * y.powi(t.py as i32)
                })
                .sum(),
            Form2::Evaluator { f, .. } => f(x, y),
        }
    }

    pub fn check_integrable(&self) -> Result<()> {
        if let Form2::Evaluator { integrable, .. } = self {
            if !integrable {
                return Err(Error::eval(
                    "integrand flagged non-integrable by the caller",
                ));
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Form2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Form2::Polynomial(terms) => write!(f, "Polynomial({terms:?})"),
            Form2::Evaluator { smooth, .. } => write!(f, "Evaluator(smooth={smooth})"),
        }
    }
}

/// A 1-form `g(t) dt` for path iteration.
#[derive(Clone)]
pub enum Form1 {
    Polynomial(Vec<(Rational, u32)>),
    Evaluator(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl Form1 {
    pub fn monomial(coeff: Rational, p: u32) -> Self {
        Form1::Polynomial(vec![(coeff, p)])
    }

    pub fn evaluator(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Form1::Evaluator(Arc::new(f))
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Form1::Polynomial(terms) => terms
                .iter()
                .map(|(c, p)| c.to_f64().unwrap_or(f64::NAN) * t.powi(*p as i32))
                .sum(),
            Form1::Evaluator(f) => f(t),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self, Form1::Polynomial(_))
    }
}
