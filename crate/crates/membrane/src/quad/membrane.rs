//! Membranes: maps from the unit square into a target space, pullbacks of
//! target 2-forms, horizontal/vertical gluing, and the homotopy-invariance
//! and composition identity checks.

use crate::error::{Error, Result};
use crate::hopf::CheckOutcome;
use crate::perm::Permutation;
use crate::quad::engine::{ordered_quadrature, AxisSpec, QuadResult, QuadratureConfig, Segment};
use crate::quad::forms::Form2;
use crate::word::MonomialClass;
use std::sync::Arc;

type MapFn = Arc<dyn Fn(f64, f64) -> Vec<f64> + Send + Sync>;
type JacFn = Arc<dyn Fn(f64, f64) -> (Vec<f64>, Vec<f64>) + Send + Sync>;

/// Labels for the four faces of the parameter square, naming the constraint
/// curve each face lies on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryLabels {
    pub left: String,
    pub right: String,
    pub bottom: String,
    pub top: String,
}

impl BoundaryLabels {
    pub fn unlabeled() -> Self {
        BoundaryLabels {
            left: String::new(),
            right: String::new(),
            bottom: String::new(),
            top: String::new(),
        }
    }
}

/// A parameterized map `[0,1]^2 -> R^d`, continuous everywhere and smooth
/// away from declared axis-parallel seam lines.
#[derive(Clone)]
pub struct Membrane {
    map: MapFn,
    jacobian: Option<JacFn>,
    target_dim: usize,
    pub boundary: BoundaryLabels,
    /// Interior parameter lines across which smoothness may fail.
    pub seams_x: Vec<f64>,
    pub seams_y: Vec<f64>,
}

impl Membrane {
    pub fn new(
        target_dim: usize,
        map: impl Fn(f64, f64) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        Membrane {
            map: Arc::new(map),
            jacobian: None,
            target_dim,
            boundary: BoundaryLabels::unlabeled(),
            seams_x: vec![],
            seams_y: vec![],
        }
    }

    /// Attach exact partials `(∂θ/∂x, ∂θ/∂y)`.
    pub fn with_jacobian(
        mut self,
        jac: impl Fn(f64, f64) -> (Vec<f64>, Vec<f64>) + Send + Sync + 'static,
    ) -> Self {
        self.jacobian = Some(Arc::new(jac));
        self
    }

    pub fn with_boundary(mut self, labels: BoundaryLabels) -> Self {
        self.boundary = labels;
        self
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn at(&self, x: f64, y: f64) -> Vec<f64> {
        (self.map)(x, y)
    }

    /// Partials at `(x, y)`, exact when supplied, otherwise centered
    /// differences with one Richardson refinement (error `O(h^4)`).
    pub fn partials(&self, x: f64, y: f64, step: f64) -> (Vec<f64>, Vec<f64>) {
        if let Some(jac) = &self.jacobian {
            return jac(x, y);
        }
        let dx = richardson_partial(|t| (self.map)(t, y), x, step);
        let dy = richardson_partial(|t| (self.map)(x, t), y, step);
        (dx, dy)
    }

    /// The identity membrane on the unit square in R^2.
    pub fn identity_square() -> Self {
        Membrane::new(2, |x, y| vec![x, y]).with_jacobian(|_, _| (vec![1.0, 0.0], vec![0.0, 1.0]))
    }
}

fn richardson_partial(f: impl Fn(f64) -> Vec<f64>, t: f64, h: f64) -> Vec<f64> {
    let central = |h: f64| -> Vec<f64> {
        let plus = f(t + h);
        let minus = f(t - h);
        plus.iter()
            .zip(&minus)
            .map(|(p, m)| (p - m) / (2.0 * h))
            .collect()
    };
    let d1 = central(h);
    let d2 = central(h / 2.0);
    d1.iter()
        .zip(&d2)
        .map(|(a, b)| (4.0 * b - a) / 3.0)
        .collect()
}

type CoeffFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A 2-form on the target: `Σ g(p) dp_i ∧ dp_j` with `i < j`.
#[derive(Clone)]
pub struct TargetForm2 {
    terms: Vec<(usize, usize, CoeffFn)>,
}

impl TargetForm2 {
    pub fn new() -> Self {
        TargetForm2 { terms: vec![] }
    }

    pub fn term(
        mut self,
        i: usize,
        j: usize,
        g: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.terms.push((i, j, Arc::new(g)));
        self
    }

    /// `g(p) dp_0 ∧ dp_1` on a 2-dimensional target.
    pub fn planar(g: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        TargetForm2::new().term(0, 1, g)
    }

    pub fn eval(&self, point: &[f64], du: &[f64], dv: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(i, j, g)| g(point) * (du[*i] * dv[*j] - du[*j] * dv[*i]))
            .sum()
    }
}

impl Default for TargetForm2 {
    fn default() -> Self {
        Self::new()
    }
}

/// Options for pullback evaluation.
#[derive(Clone, Copy, Debug)]
pub struct PullbackOptions {
    /// Finite-difference step for membranes without exact partials.
    pub step: f64,
}

impl Default for PullbackOptions {
    fn default() -> Self {
        PullbackOptions { step: 1e-5 }
    }
}

/// Pull a target 2-form back through a membrane: the resulting coefficient
/// is `ω(∂θ/∂x, ∂θ/∂y)` at each parameter point.
pub fn pullback_form(m: &Membrane, omega: &TargetForm2, opts: PullbackOptions) -> Form2 {
    let m = m.clone();
    let omega = omega.clone();
    Form2::evaluator(move |x, y| {
        let p = m.at(x, y);
        let (du, dv) = m.partials(x, y, opts.step);
        omega.eval(&p, &du, &dv)
    })
}

/// Iterated integral of target 2-forms over a membrane: pull back, then
/// integrate over the ordered parameter domain with seam-aware panels.
pub fn membrane_iterated(
    m: &Membrane,
    omegas: &[TargetForm2],
    sx: &Permutation,
    sy: &Permutation,
    cfg: &QuadratureConfig,
    opts: PullbackOptions,
) -> Result<QuadResult> {
    let n = omegas.len();
    if sx.len() != n || sy.len() != n {
        return Err(Error::invalid("permutation sizes do not match form count"));
    }
    let pulled: Vec<Form2> = omegas.iter().map(|w| pullback_form(m, w, opts)).collect();
    let axes = [
        AxisSpec {
            segments: vec![Segment::with_breaks(0.0, 1.0, n, m.seams_x.clone())],
        },
        AxisSpec {
            segments: vec![Segment::with_breaks(0.0, 1.0, n, m.seams_y.clone())],
        },
    ];
    let rank_x = sx.inverse();
    let rank_y = sy.inverse();
    let rx: Vec<usize> = (1..=n).map(|p| rank_x.apply(p) - 1).collect();
    let ry: Vec<usize> = (1..=n).map(|p| rank_y.apply(p) - 1).collect();
    let integrand = move |args: &[Vec<f64>]| {
        let xs = &args[0];
        let ys = &args[1];
        let mut acc = 1.0;
        for (p, form) in pulled.iter().enumerate() {
            acc *= form.eval(xs[rx[p]], ys[ry[p]]);
        }
        acc
    };
    ordered_quadrature(&axes, &integrand, cfg)
}

/// Indexed iterated integral over a horizontally composed membrane: the
/// first `split` x-ranks stay in the left half of the parameter square.
pub fn membrane_indexed(
    m: &Membrane,
    omegas: &[TargetForm2],
    sx: &Permutation,
    sy: &Permutation,
    split: usize,
    cfg: &QuadratureConfig,
    opts: PullbackOptions,
) -> Result<QuadResult> {
    let n = omegas.len();
    if split > n {
        return Err(Error::invalid("split out of range"));
    }
    let pulled: Vec<Form2> = omegas.iter().map(|w| pullback_form(m, w, opts)).collect();
    let left_breaks: Vec<f64> = m.seams_x.iter().copied().filter(|&s| s < 0.5).collect();
    let right_breaks: Vec<f64> = m.seams_x.iter().copied().filter(|&s| s > 0.5).collect();
    let axes = [
        AxisSpec {
            segments: vec![
                Segment::with_breaks(0.0, 0.5, split, left_breaks),
                Segment::with_breaks(0.5, 1.0, n - split, right_breaks),
            ],
        },
        AxisSpec {
            segments: vec![Segment::with_breaks(0.0, 1.0, n, m.seams_y.clone())],
        },
    ];
    let rank_x = sx.inverse();
    let rank_y = sy.inverse();
    let rx: Vec<usize> = (1..=n).map(|p| rank_x.apply(p) - 1).collect();
    let ry: Vec<usize> = (1..=n).map(|p| rank_y.apply(p) - 1).collect();
    let integrand = move |args: &[Vec<f64>]| {
        let xs = &args[0];
        let ys = &args[1];
        let mut acc = 1.0;
        for (p, form) in pulled.iter().enumerate() {
            acc *= form.eval(xs[rx[p]], ys[ry[p]]);
        }
        acc
    };
    ordered_quadrature(&axes, &integrand, cfg)
}

const FACE_SAMPLES: usize = 33;
const FACE_TOL: f64 = 1e-9;

fn face_distance(a: impl Fn(f64) -> Vec<f64>, b: impl Fn(f64) -> Vec<f64>) -> f64 {
    let mut worst = 0.0f64;
    for k in 0..FACE_SAMPLES {
        let t = k as f64 / (FACE_SAMPLES - 1) as f64;
        let pa = a(t);
        let pb = b(t);
        for (x, y) in pa.iter().zip(&pb) {
            worst = worst.max((x - y).abs());
        }
    }
    worst
}

/// Glue two membranes along the shared vertical face (`a` left, `b` right).
pub fn compose_horizontal(a: &Membrane, b: &Membrane) -> Result<Membrane> {
    if a.target_dim != b.target_dim {
        return Err(Error::invalid("target dimensions differ"));
    }
    let d = face_distance(|t| a.at(1.0, t), |t| b.at(0.0, t));
    if d > FACE_TOL {
        return Err(Error::invalid(format!(
            "membranes do not share the vertical face (max deviation {d:.3e})"
        )));
    }
    let (ma, mb) = (a.clone(), b.clone());
    let (ja, jb) = (a.clone(), b.clone());
    let mut seams_x = vec![0.5];
    seams_x.extend(a.seams_x.iter().map(|s| s / 2.0));
    seams_x.extend(b.seams_x.iter().map(|s| 0.5 + s / 2.0));
    let mut seams_y = a.seams_y.clone();
    seams_y.extend_from_slice(&b.seams_y);
    Ok(Membrane {
        map: Arc::new(move |x, y| {
            if x < 0.5 {
                ma.at(2.0 * x, y)
            } else {
                mb.at(2.0 * x - 1.0, y)
            }
        }),
        jacobian: Some(Arc::new(move |x, y| {
            let (mut du, dv) = if x < 0.5 {
                ja.partials(2.0 * x, y, 1e-5)
            } else {
                jb.partials(2.0 * x - 1.0, y, 1e-5)
            };
            for v in du.iter_mut() {
                *v *= 2.0;
            }
            (du, dv)
        })),
        target_dim: a.target_dim,
        boundary: BoundaryLabels {
            left: a.boundary.left.clone(),
            right: b.boundary.right.clone(),
            bottom: format!("{}+{}", a.boundary.bottom, b.boundary.bottom),
            top: format!("{}+{}", a.boundary.top, b.boundary.top),
        },
        seams_x,
        seams_y,
    })
}

/// Glue two membranes along the shared horizontal face (`a` bottom, `b` top).
pub fn compose_vertical(a: &Membrane, b: &Membrane) -> Result<Membrane> {
    if a.target_dim != b.target_dim {
        return Err(Error::invalid("target dimensions differ"));
    }
    let d = face_distance(|t| a.at(t, 1.0), |t| b.at(t, 0.0));
    if d > FACE_TOL {
        return Err(Error::invalid(format!(
            "membranes do not share the horizontal face (max deviation {d:.3e})"
        )));
    }
    let (ma, mb) = (a.clone(), b.clone());
    let (ja, jb) = (a.clone(), b.clone());
    let mut seams_y = vec![0.5];
    seams_y.extend(a.seams_y.iter().map(|s| s / 2.0));
    seams_y.extend(b.seams_y.iter().map(|s| 0.5 + s / 2.0));
    let mut seams_x = a.seams_x.clone();
    seams_x.extend_from_slice(&b.seams_x);
    Ok(Membrane {
        map: Arc::new(move |x, y| {
            if y < 0.5 {
                ma.at(x, 2.0 * y)
            } else {
                mb.at(x, 2.0 * y - 1.0)
            }
        }),
        jacobian: Some(Arc::new(move |x, y| {
            let (du, mut dv) = if y < 0.5 {
                ja.partials(x, 2.0 * y, 1e-5)
            } else {
                jb.partials(x, 2.0 * y - 1.0, 1e-5)
            };
            for v in dv.iter_mut() {
                *v *= 2.0;
            }
            (du, dv)
        })),
        target_dim: a.target_dim,
        boundary: BoundaryLabels {
            left: format!("{}+{}", a.boundary.left, b.boundary.left),
            right: format!("{}+{}", a.boundary.right, b.boundary.right),
            bottom: a.boundary.bottom.clone(),
            top: b.boundary.top.clone(),
        },
        seams_x,
        seams_y,
    })
}

fn boundary_deviation(m0: &Membrane, m1: &Membrane) -> f64 {
    let mut worst = 0.0f64;
    worst = worst.max(face_distance(|t| m0.at(0.0, t), |t| m1.at(0.0, t)));
    worst = worst.max(face_distance(|t| m0.at(1.0, t), |t| m1.at(1.0, t)));
    worst = worst.max(face_distance(|t| m0.at(t, 0.0), |t| m1.at(t, 0.0)));
    worst = worst.max(face_distance(|t| m0.at(t, 1.0), |t| m1.at(t, 1.0)));
    worst
}

/// Homotopy invariance: two membranes with identical boundary give equal
/// iterated integrals of closed forms. Evaluates both sides and reports the
/// absolute difference against the configured tolerance.
pub fn homotopy_invariance_check(
    m0: &Membrane,
    m1: &Membrane,
    omegas: &[TargetForm2],
    sx: &Permutation,
    sy: &Permutation,
    cfg: &QuadratureConfig,
    opts: PullbackOptions,
) -> Result<CheckOutcome> {
    let dev = boundary_deviation(m0, m1);
    if dev > FACE_TOL {
        return Err(Error::invalid(format!(
            "boundaries differ by {dev:.3e}; the homotopy must fix the boundary"
        )));
    }
    let i0 = membrane_iterated(m0, omegas, sx, sy, cfg, opts)?;
    let i1 = membrane_iterated(m1, omegas, sx, sy, cfg, opts)?;
    let diff = (i0.value - i1.value).abs();
    Ok(CheckOutcome {
        name: "homotopy-invariance".into(),
        pass: diff <= cfg.abs_tol,
        checked: 1,
        worst_abs_dev: diff,
        detail: format!("I0={:.12e} I1={:.12e}", i0.value, i1.value),
    })
}

/// Composition identity: with four membranes arranged so that `d3, d1` glue
/// horizontally, `d2, d0` glue vertically, and both composites share their
/// full boundary, the generating series coincide coefficientwise. Checks
/// every canonical class of degree <= `n_max` over the given forms and also
/// the decomposition of each composite integral into its indexed parts.
#[allow(clippy::too_many_arguments)]
pub fn composition_identity_check(
    d3: &Membrane,
    d1: &Membrane,
    d2: &Membrane,
    d0: &Membrane,
    omegas: &[TargetForm2],
    n_max: usize,
    cfg: &QuadratureConfig,
    opts: PullbackOptions,
) -> Result<CheckOutcome> {
    let horizontal = compose_horizontal(d3, d1)?;
    let vertical = compose_vertical(d2, d0)?;
    let dev = boundary_deviation(&horizontal, &vertical);
    if dev > FACE_TOL {
        return Err(Error::invalid(format!(
            "composites do not share their boundary (deviation {dev:.3e})"
        )));
    }
    let k = omegas.len() as u8;
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    for n in 1..=n_max {
        for class in MonomialClass::enumerate(k, n) {
            let sx = Permutation::identity(n);
            let forms: Vec<TargetForm2> = class
                .word
                .letters()
                .iter()
                .map(|&c| omegas[c as usize - 1].clone())
                .collect();
            let ih = membrane_iterated(&horizontal, &forms, &sx, &class.sigma2, cfg, opts)?;
            let iv = membrane_iterated(&vertical, &forms, &sx, &class.sigma2, cfg, opts)?;
            worst = worst.max((ih.value - iv.value).abs());
            checked += 1;
            // the indexed parts of the horizontal composite must sum back
            if n <= 2 {
                let mut sum = 0.0;
                for split in 0..=n {
                    sum += membrane_indexed(
                        &horizontal,
                        &forms,
                        &sx,
                        &class.sigma2,
                        split,
                        cfg,
                        opts,
                    )?
                    .value;
                }
                worst = worst.max((sum - ih.value).abs());
                checked += 1;
            }
        }
    }
    Ok(CheckOutcome {
        name: "composition-identity".into(),
        pass: worst <= cfg.abs_tol,
        checked,
        worst_abs_dev: worst,
        detail: format!("degrees 1..={n_max}, alphabet {k}"),
    })
}

/// The barycentric cube-to-simplex map restricted to low dimensions: a path
/// for `k = 1`, a membrane for `k = 2`. Weights telescope to one, vertices
/// sit at the cube corners, and degenerate faces collapse.
pub enum AlphaCell {
    Path(Arc<dyn Fn(f64) -> Vec<f64> + Send + Sync>),
    Membrane(Membrane),
}

pub fn alpha_map(k: usize, vertices: &[Vec<f64>]) -> Result<AlphaCell> {
    if vertices.len() != k + 1 {
        return Err(Error::invalid(format!(
            "alpha map of order {k} needs {} vertices, got {}",
            k + 1,
            vertices.len()
        )));
    }
    let dim = vertices[0].len();
    if vertices.iter().any(|v| v.len() != dim) {
        return Err(Error::invalid("vertices have mixed dimensions"));
    }
    match k {
        1 => {
            let p0 = vertices[0].clone();
            let p1 = vertices[1].clone();
            Ok(AlphaCell::Path(Arc::new(move |x1| {
                p0.iter()
                    .zip(&p1)
                    .map(|(a, b)| x1 * a + (1.0 - x1) * b)
                    .collect()
            })))
        }
        2 => {
            let p0 = vertices[0].clone();
            let p1 = vertices[1].clone();
            let p2 = vertices[2].clone();
            let (q0, q1, q2) = (p0.clone(), p1.clone(), p2.clone());
            let m = Membrane::new(dim, move |x1, x2| {
                let t0 = x1;
                let t1 = (1.0 - x1) * x2;
                let t2 = (1.0 - x1) * (1.0 - x2);
                (0..p0.len())
                    .map(|i| t0 * p0[i] + t1 * p1[i] + t2 * p2[i])
                    .collect()
            })
            .with_jacobian(move |_x1, x2| {
                let du: Vec<f64> = (0..q0.len())
                    .map(|i| q0[i] - x2 * q1[i] - (1.0 - x2) * q2[i])
                    .collect();
                let dv: Vec<f64> = (0..q0.len())
                    .map(|i| (1.0 - _x1) * (q1[i] - q2[i]))
                    .collect();
                (du, dv)
            })
            .with_boundary(BoundaryLabels {
                left: "edge P2-P1".into(),
                right: "vertex P0".into(),
                bottom: "edge P2-P0".into(),
                top: "edge P1-P0".into(),
            });
            Ok(AlphaCell::Membrane(m))
        }
        _ => Err(Error::unsupported(format!(
            "alpha map implemented for k <= 2, got {k}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_bigint::BigInt;
    use num_traits::One;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn identity_pullback_of_area_form_is_one() {
        let m = Membrane::identity_square();
        let omega = TargetForm2::planar(|_| 1.0);
        let f = pullback_form(&m, &omega, PullbackOptions::default());
        assert!((f.eval(0.3, 0.7) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn affine_pullback_scales_by_jacobian() {
        let m = Membrane::new(2, |x, y| vec![2.0 * x, 3.0 * y]);
        let omega = TargetForm2::planar(|_| 1.0);
        let f = pullback_form(&m, &omega, PullbackOptions::default());
        assert!((f.eval(0.5, 0.5) - 6.0).abs() < 1e-8);
    }

    #[test]
    fn finite_difference_matches_exact_jacobian() {
        // bilinear membrane: centered differences are exact up to rounding
        let bilinear = |x: f64, y: f64| vec![x + 0.3 * x * y, y - 0.2 * x * y];
        let exact = Membrane::new(2, bilinear)
            .with_jacobian(|x, y| (vec![1.0 + 0.3 * y, -0.2 * y], vec![0.3 * x, 1.0 - 0.2 * x]));
        let fd = Membrane::new(2, bilinear);
        let omega = TargetForm2::planar(|p| p[0] + p[1] * p[1]);
        let fe = pullback_form(&exact, &omega, PullbackOptions::default());
        let ff = pullback_form(&fd, &omega, PullbackOptions::default());
        for &(x, y) in &[(0.25, 0.5), (0.8, 0.1), (0.5, 0.9)] {
            assert!((fe.eval(x, y) - ff.eval(x, y)).abs() < 1e-9);
        }
    }

    #[test]
    fn finite_difference_step_refinement_converges() {
        // curved membrane at coarse steps: halving h must shrink the error
        let curved = |x: f64, y: f64| vec![(x * 1.3).sin() + y, (y * 0.9).exp() * x];
        let exact = Membrane::new(2, curved).with_jacobian(|x, y| {
            (
                vec![1.3 * (x * 1.3).cos(), (y * 0.9).exp()],
                vec![1.0, 0.9 * (y * 0.9).exp() * x],
            )
        });
        let fd = Membrane::new(2, curved);
        let omega = TargetForm2::planar(|p| p[0] * p[1]);
        let truth = pullback_form(&exact, &omega, PullbackOptions::default());
        let coarse = pullback_form(&fd, &omega, PullbackOptions { step: 2e-2 });
        let fine = pullback_form(&fd, &omega, PullbackOptions { step: 1e-2 });
        for &(x, y) in &[(0.25, 0.5), (0.7, 0.2)] {
            let e1 = (truth.eval(x, y) - coarse.eval(x, y)).abs();
            let e2 = (truth.eval(x, y) - fine.eval(x, y)).abs();
            assert!(e2 < e1, "halving the step did not reduce error: {e1} {e2}");
            assert!(e2 < e1 / 8.0, "refinement slower than O(h^2): {e1} {e2}");
        }
    }

    #[test]
    fn membrane_integral_reduces_to_rectangle_case() {
        // identity membrane with polynomial form x dx∧dy against the oracle
        let m = Membrane::identity_square();
        let omega = TargetForm2::planar(|p| p[0]);
        let id1 = Permutation::identity(1);
        let got = membrane_iterated(
            &m,
            &[omega],
            &id1,
            &id1,
            &QuadratureConfig::gauss(8),
            PullbackOptions::default(),
        )
        .unwrap();
        let exact = crate::quad::oracle::poly_oracle(
            &[Form2::monomial(Rational::one(), 1, 0)],
            &id1,
            &id1,
            &crate::quad::forms::Rectangle::unit(),
        )
        .unwrap();
        assert!((got.value - crate::rational_to_f64(&exact)).abs() < 1e-12);
    }

    #[test]
    fn same_membrane_has_zero_difference() {
        let m = Membrane::identity_square();
        let omega = TargetForm2::planar(|p| p[0] * p[1]);
        let out = homotopy_invariance_check(
            &m,
            &m.clone(),
            &[omega.clone(), omega],
            &Permutation::identity(2),
            &Permutation::identity(2),
            &QuadratureConfig::gauss(8),
            PullbackOptions::default(),
        )
        .unwrap();
        assert!(out.pass);
        assert_eq!(out.worst_abs_dev, 0.0);
    }

    #[test]
    fn boundary_mismatch_is_rejected() {
        let m0 = Membrane::identity_square();
        let m1 = Membrane::new(2, |x, y| vec![x + 0.1, y]);
        let omega = TargetForm2::planar(|_| 1.0);
        assert!(homotopy_invariance_check(
            &m0,
            &m1,
            &[omega],
            &Permutation::identity(1),
            &Permutation::identity(1),
            &QuadratureConfig::default(),
            PullbackOptions::default(),
        )
        .is_err());
    }

    #[test]
    fn glued_membrane_cross_product_identity() {
        // the product of integrals over the two pieces equals the shuffle
        // sum of the indexed integrals over the glued membrane, the
        // membrane-level form of the composition law
        let left = Membrane::new(2, |x, y| vec![x + 0.1 * x * y, y - 0.05 * x * y * y]);
        let right = Membrane::new(2, |x, y| {
            vec![
                1.0 + 0.1 * y + x - 0.08 * x * y,
                y - 0.05 * y * y - 0.02 * x * y,
            ]
        });
        // pieces must share the vertical face
        let glued = compose_horizontal(&left, &right).unwrap();
        let omega_a = TargetForm2::planar(|p| 1.0 + p[0]);
        let omega_b = TargetForm2::planar(|p| p[1]);
        let id1 = Permutation::identity(1);
        let cfg = QuadratureConfig::gauss(12);
        let opts = PullbackOptions::default();
        let ia = membrane_iterated(&left, std::slice::from_ref(&omega_a), &id1, &id1, &cfg, opts)
            .unwrap()
            .value;
        let ib = membrane_iterated(&right, std::slice::from_ref(&omega_b), &id1, &id1, &cfg, opts)
            .unwrap()
            .value;
        let pair = [omega_a, omega_b];
        let sx = Permutation::identity(2);
        let mut sum = 0.0;
        for sy in Permutation::all(2) {
            sum += membrane_indexed(&glued, &pair, &sx, &sy, 1, &cfg, opts)
                .unwrap()
                .value;
        }
        assert!(
            (ia * ib - sum).abs() < 1e-9,
            "product {} vs indexed sum {sum}",
            ia * ib
        );
    }

    #[test]
    fn affine_pieces_compose_exactly() {
        // all four membranes are affine pieces of one affine map: both
        // composites are literally the same map, so the identity is exact
        let affine = |x: f64, y: f64| vec![2.0 * x + 0.5 * y, y - 0.25 * x];
        let d3 = Membrane::new(2, move |u, v| affine(u / 2.0, v));
        let d1 = Membrane::new(2, move |u, v| affine((u + 1.0) / 2.0, v));
        let d2 = Membrane::new(2, move |u, v| affine(u, v / 2.0));
        let d0 = Membrane::new(2, move |u, v| affine(u, (v + 1.0) / 2.0));
        let omegas = [TargetForm2::planar(|_| 1.0), TargetForm2::planar(|p| p[0])];
        let out = composition_identity_check(
            &d3,
            &d1,
            &d2,
            &d0,
            &omegas,
            2,
            &QuadratureConfig::gauss(8),
            PullbackOptions::default(),
        )
        .unwrap();
        assert!(out.pass, "worst {:.3e}", out.worst_abs_dev);
        // finite-difference pullbacks leave only rounding-level residue
        assert!(out.worst_abs_dev < 1e-9);
    }

    #[test]
    fn composition_rejects_non_adjacent_pieces() {
        let d3 = Membrane::identity_square();
        let shifted = Membrane::new(2, |x, y| vec![x + 0.3, y]);
        let omegas = [TargetForm2::planar(|_| 1.0)];
        assert!(composition_identity_check(
            &d3,
            &shifted,
            &d3,
            &shifted,
            &omegas,
            1,
            &QuadratureConfig::default(),
            PullbackOptions::default(),
        )
        .is_err());
    }

    #[test]
    fn alpha_map_vertex_cases() {
        let verts2 = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.0, 0.0]];
        match alpha_map(2, &verts2).unwrap() {
            AlphaCell::Membrane(m) => {
                // x1 = 1 collapses to P0 regardless of x2
                for &x2 in &[0.0, 0.3, 1.0] {
                    let p = m.at(1.0, x2);
                    assert!((p[0] - 1.0).abs() < 1e-14 && p[1].abs() < 1e-14);
                }
            }
            _ => panic!("expected membrane"),
        }
        let verts1 = vec![vec![2.0], vec![5.0]];
        match alpha_map(1, &verts1).unwrap() {
            AlphaCell::Path(p) => {
                assert!((p(1.0)[0] - 2.0).abs() < 1e-14);
                assert!((p(0.0)[0] - 5.0).abs() < 1e-14);
            }
            _ => panic!("expected path"),
        }
        assert!(alpha_map(3, &vec![vec![0.0]; 4]).is_err());
    }

    #[test]
    fn alpha_weights_sum_to_one_exactly() {
        // telescoping of the barycentric weights, in exact arithmetic
        let points = [rat(0, 1), rat(1, 3), rat(1, 2), rat(2, 3), rat(1, 1)];
        for x1 in &points {
            for x2 in &points {
                let one = Rational::one();
                let t0 = x1.clone();
                let t1 = (one.clone() - x1.clone()) * x2.clone();
                let t2 = (one.clone() - x1.clone()) * (one.clone() - x2.clone());
                assert_eq!(t0 + t1 + t2, Rational::one());
            }
        }
    }
}
