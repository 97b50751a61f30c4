//! Theta functions restricted to the geodesics used by the Mellin
//! transforms: the Jacobi theta on `z = it`, its imaginary quadratic
//! analogue, and the two-variable real quadratic theta on
//! `(z1, z2) = (i t e^x, i t e^{-x})`. Every value is reported together
//! with a rigorous tail bound for the dropped lattice points.

use crate::error::{Error, Result};
use crate::zeta::field::NumberFieldSpec;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Truncation knobs shared by the zeta evaluators.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TruncationPolicy {
    /// Geometric lattice cutoff: points with norm form <= radius^2 enter the
    /// sums. Defaults make the dropped tail negligible at `t_min`.
    pub lattice_radius: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub report_tails: bool,
}

/// Contributions with exponent beyond this are below 1e-21 of the leading
/// term and are skipped even inside the geometric radius.
const TARGET_EXPONENT: f64 = 49.0;

impl TruncationPolicy {
    pub fn new(t_min: f64, t_max: f64) -> Result<Self> {
        if !t_min.is_finite() || t_min <= 0.0 || t_min >= t_max {
            return Err(Error::invalid("need 0 < t_min < t_max"));
        }
        Ok(TruncationPolicy {
            lattice_radius: (TARGET_EXPONENT / (PI * t_min)).sqrt(),
            t_min,
            t_max,
            report_tails: true,
        })
    }

    pub fn with_radius(mut self, radius: f64) -> Result<Self> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::invalid("lattice radius must be positive"));
        }
        self.lattice_radius = radius;
        Ok(self)
    }

    /// Default window for path Mellin transforms.
    pub fn default_path() -> Self {
        TruncationPolicy::new(1e-4, 50.0).expect("static bounds")
    }

    /// Default window for the real quadratic membrane transform, where the
    /// small-t端 behaviour is corrected analytically.
    pub fn default_membrane() -> Self {
        TruncationPolicy::new(0.02, 30.0).expect("static bounds")
    }

    /// Largest norm-form value admitted at parameter `t`.
    pub fn form_bound(&self, t: f64) -> f64 {
        let policy = self.lattice_radius * self.lattice_radius;
        policy.min(TARGET_EXPONENT / (PI * t))
    }
}

/// A theta value with the bound on the dropped tail.
#[derive(Clone, Copy, Debug)]
pub struct ThetaValue {
    pub value: f64,
    pub tail_bound: f64,
}

/// `Σ_{n ∈ Z} e^{-π n² t}` truncated at `|n| <= R(t)`, with the geometric
/// tail bound `2 e^{-π (N+1)² t} / (1 - e^{-π (2N+3) t})`.
pub fn theta_rational(t: f64, policy: &TruncationPolicy) -> Result<ThetaValue> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::domain(format!("theta needs t > 0, got {t}")));
    }
    let n_max = policy.form_bound(t).sqrt().floor() as i64;
    let mut value = 1.0;
    for n in 1..=n_max {
        value += 2.0 * (-PI * (n * n) as f64 * t).exp();
    }
    let np1 = (n_max + 1) as f64;
    let tail = 2.0 * (-PI * np1 * np1 * t).exp() / (1.0 - (-PI * (2.0 * np1 + 1.0) * t).exp());
    Ok(ThetaValue {
        value,
        tail_bound: tail,
    })
}

/// `Σ_{α ∈ O_K} e^{-π N(α) t}` for an imaginary quadratic field of class
/// number one, truncated at `N(α) <= R(t)²`. The tail is bounded by the
/// comparison sum `w Σ_{m > R²} m e^{-π m t}` (the number of points of norm
/// `m` is at most `w·d(m) <= w·m`).
pub fn theta_imag_quadratic(
    t: f64,
    field: &NumberFieldSpec,
    policy: &TruncationPolicy,
) -> Result<ThetaValue> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::domain(format!("theta needs t > 0, got {t}")));
    }
    let NumberFieldSpec::ImagQuadratic { roots_of_unity, .. } = field else {
        return Err(Error::invalid(format!(
            "theta_imag_quadratic needs an imaginary quadratic field, got {field}"
        )));
    };
    let (w_re, w_im) = field.omega_embeddings()?;
    let bound = policy.form_bound(t);
    let r = bound.sqrt();
    let b_max = (r / w_im).floor() as i64;
    let mut value = 0.0;
    for b in -b_max..=b_max {
        let shift = b as f64 * w_re;
        let height = (b as f64 * w_im).powi(2);
        if height > bound {
            continue;
        }
        let half_width = (bound - height).sqrt();
        let a_lo = (-half_width - shift).ceil() as i64;
        let a_hi = (half_width - shift).floor() as i64;
        for a in a_lo..=a_hi {
            let norm = (a as f64 + shift).powi(2) + height;
            if norm <= bound {
                value += (-PI * norm * t).exp();
            }
        }
    }
    let tail = *roots_of_unity as f64 * geometric_weighted_tail(bound.floor() + 1.0, t);
    Ok(ThetaValue {
        value,
        tail_bound: tail,
    })
}

/// `Σ_{m >= m0} m e^{-π m t}`, evaluated in closed form.
fn geometric_weighted_tail(m0: f64, t: f64) -> f64 {
    let x = (-PI * t).exp();
    if x >= 1.0 {
        return f64::INFINITY;
    }
    x.powf(m0) * (m0 + x / (1.0 - x)) / (1.0 - x)
}

/// Two-variable real quadratic theta on the geodesic membrane:
/// `Σ_{α ∈ O_K} e^{-π t (α1² e^x + α2² e^{-x})}`, truncated at form value
/// `R(t)²` and enumerated over an embedding box.
pub fn theta_real_quadratic(
    t: f64,
    x: f64,
    field: &NumberFieldSpec,
    policy: &TruncationPolicy,
) -> Result<ThetaValue> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::domain(format!("theta needs t > 0, got {t}")));
    }
    let NumberFieldSpec::RealQuadratic { .. } = field else {
        return Err(Error::invalid(format!(
            "theta_real_quadratic needs a real quadratic field, got {field}"
        )));
    };
    let bound = policy.form_bound(t);
    let ex = x.exp();
    let emx = (-x).exp();
    let mut value = 0.0;
    for_each_real_point(field, bound, ex, emx, |a1, a2| {
        let q = a1 * a1 * ex + a2 * a2 * emx;
        value += (-PI * q * t).exp();
    })?;
    value += 1.0; // the zero vector
                  // density of lattice points with form value near u is pi/covol, so the
                  // tail compares with (2 pi / covol) ∫_B^∞ e^{-π u t} du
    let tail = (2.0 / field.covolume()) * (-PI * bound * t).exp() / t;
    Ok(ThetaValue {
        value,
        tail_bound: tail,
    })
}

/// Visit every nonzero `α = p + q ω` with `α1² ex + α2² emx <= bound`.
fn for_each_real_point(
    field: &NumberFieldSpec,
    bound: f64,
    ex: f64,
    emx: f64,
    mut visit: impl FnMut(f64, f64),
) -> Result<()> {
    let (w1, w2) = field.omega_embeddings()?;
    let a1_max = (bound / ex).sqrt();
    let a2_max = (bound / emx).sqrt();
    let q_max = ((a1_max + a2_max) / (w1 - w2).abs()).floor() as i64;
    for q in -q_max..=q_max {
        let qf = q as f64;
        // p must satisfy |p + q w1| <= a1_max and |p + q w2| <= a2_max
        let lo = (-a1_max - qf * w1).max(-a2_max - qf * w2);
        let hi = (a1_max - qf * w1).min(a2_max - qf * w2);
        let p_lo = lo.ceil() as i64;
        let p_hi = hi.floor() as i64;
        for p in p_lo..=p_hi {
            if p == 0 && q == 0 {
                continue;
            }
            let a1 = p as f64 + qf * w1;
            let a2 = p as f64 + qf * w2;
            if a1 * a1 * ex + a2 * a2 * emx <= bound {
                visit(a1, a2);
            }
        }
    }
    Ok(())
}

/// Embeddings of the nonzero lattice points whose membrane form value can
/// reach `bound` somewhere on `x ∈ [0, x_max]` (used by the termwise
/// unfolding oracle).
pub fn real_quadratic_points(
    field: &NumberFieldSpec,
    bound: f64,
    x_max: f64,
) -> Result<Vec<(f64, f64)>> {
    let mut pts = Vec::new();
    // over the whole x-range: α1² <= bound, α2² <= bound * e^{x_max}
    for_each_real_point(field, bound, 1.0, (-x_max).exp(), |a1, a2| {
        pts.push((a1, a2));
    })?;
    // drop points whose form value exceeds the bound for every x in range
    pts.retain(|&(a1, a2)| min_form_on_range(a1, a2, x_max) <= bound);
    Ok(pts)
}

/// `min_{x ∈ [0, x_max]} (a1² e^x + a2² e^{-x})`.
pub fn min_form_on_range(a1: f64, a2: f64, x_max: f64) -> f64 {
    let (s1, s2) = (a1 * a1, a2 * a2);
    if s1 == 0.0 || s2 == 0.0 {
        // degenerate directions: monotone on the range
        return (s1 + s2) * if s1 > 0.0 { 1.0 } else { (-x_max).exp() };
    }
    let x_star = 0.5 * (s2 / s1).ln();
    let x = x_star.clamp(0.0, x_max);
    s1 * x.exp() + s2 * (-x).exp()
}

/// Number of lattice points of each norm up to `limit`, by direct
/// enumeration (cross-check data for the ideal-count oracle).
pub fn imag_quadratic_norm_counts(
    field: &NumberFieldSpec,
    limit: u64,
) -> Result<std::collections::BTreeMap<u64, u64>> {
    let (w_re, w_im) = field.omega_embeddings()?;
    let mut counts = std::collections::BTreeMap::new();
    let bound = limit as f64 + 0.5;
    let b_max = (bound.sqrt() / w_im).floor() as i64;
    for b in -b_max..=b_max {
        let shift = b as f64 * w_re;
        let height = (b as f64 * w_im).powi(2);
        if height > bound {
            continue;
        }
        let half_width = (bound - height).sqrt();
        let a_lo = (-half_width - shift).ceil() as i64;
        let a_hi = (half_width - shift).floor() as i64;
        for a in a_lo..=a_hi {
            if a == 0 && b == 0 {
                continue;
            }
            let norm = (a as f64 + shift).powi(2) + height;
            let rounded = norm.round();
            if (norm - rounded).abs() < 1e-6 && rounded >= 1.0 && rounded <= limit as f64 {
                *counts.entry(rounded as u64).or_insert(0) += 1;
            }
        }
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policy() -> TruncationPolicy {
        TruncationPolicy::default_path()
    }

    #[test]
    fn theta_tends_to_one_and_stays_above() {
        let p = policy();
        let big = theta_rational(10.0, &p).unwrap();
        // leading term 2 e^{-10π}; the comparison is at the limit of f64
        // cancellation, so allow a few ulps of 1.0
        let lead = 2.0 * (-10.0 * PI).exp();
        assert!((big.value - 1.0 - lead).abs() < lead * 0.05);
        for &t in &[0.01, 0.1, 1.0, 10.0] {
            assert!(theta_rational(t, &p).unwrap().value > 1.0);
        }
        assert!(theta_rational(0.0, &p).is_err());
        assert!(theta_rational(-1.0, &p).is_err());
    }

    #[test]
    fn jacobi_modularity() {
        // θ(1/t) = sqrt(t) θ(t)
        let p = policy();
        for &t in &[0.5, 1.0, 2.0] {
            let lhs = theta_rational(1.0 / t, &p).unwrap().value;
            let rhs = t.sqrt() * theta_rational(t, &p).unwrap().value;
            assert!((lhs - rhs).abs() < 1e-12, "t={t}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn gaussian_theta_counts_small_norms() {
        // θ_K - 1 = 4 e^{-π t} + 4 e^{-2π t} + 4 e^{-4π t} + 8 e^{-5π t} + ...
        let field = NumberFieldSpec::imag_quadratic(-1).unwrap();
        let p = policy();
        let t = 1.3;
        let got = theta_imag_quadratic(t, &field, &p).unwrap().value;
        let want: f64 = 1.0
            + [(1, 4), (2, 4), (4, 4), (5, 8), (8, 4), (9, 4), (10, 8)]
                .iter()
                .map(|&(m, r)| r as f64 * (-PI * m as f64 * t).exp())
                .sum::<f64>();
        assert!((got - want).abs() < 1e-14);
    }

    #[test]
    fn gaussian_theta_is_square_of_jacobi_theta() {
        // Z[i] splits as Z x Z under the norm form
        let field = NumberFieldSpec::imag_quadratic(-1).unwrap();
        let p = policy();
        for &t in &[0.3, 1.0, 2.5] {
            let two_d = theta_imag_quadratic(t, &field, &p).unwrap().value;
            let one_d = theta_rational(t, &p).unwrap().value;
            assert!((two_d - one_d * one_d).abs() < 1e-12);
        }
    }

    #[test]
    fn norm_counts_match_unit_times_ideal_counts() {
        let field = NumberFieldSpec::imag_quadratic(-1).unwrap();
        let counts = imag_quadratic_norm_counts(&field, 20).unwrap();
        // ideal counts a_n for Q(i): 1,1,0,1,2,0,0,1,1,2 for n=1..10
        let a: [u64; 10] = [1, 1, 0, 1, 2, 0, 0, 1, 1, 2];
        for (n, &an) in a.iter().enumerate() {
            let n = n as u64 + 1;
            assert_eq!(counts.get(&n).copied().unwrap_or(0), 4 * an, "norm {n}");
        }
    }

    #[test]
    fn real_quadratic_small_contributions() {
        // x = 0, K = Q(sqrt5): the smallest nonzero exponent is
        // π t (1+1) from α = ±1
        let field = NumberFieldSpec::real_quadratic(5).unwrap();
        let p = TruncationPolicy::default_membrane();
        let t = 2.0;
        let got = theta_real_quadratic(t, 0.0, &field, &p).unwrap().value;
        let lead = 2.0 * (-2.0 * PI * t).exp();
        assert!(
            (got - 1.0 - lead).abs() < lead * 2e-2,
            "{} vs lead {}",
            got - 1.0,
            lead
        );
    }

    #[test]
    fn real_theta_symmetric_in_x() {
        let field = NumberFieldSpec::real_quadratic(5).unwrap();
        let p = TruncationPolicy::default_membrane();
        for &(t, x) in &[(0.5, 0.3), (1.0, 0.7)] {
            let plus = theta_real_quadratic(t, x, &field, &p).unwrap().value;
            let minus = theta_real_quadratic(t, -x, &field, &p).unwrap().value;
            assert!((plus - minus).abs() < 1e-13);
        }
    }

    #[test]
    fn unit_shift_leaves_theta_invariant() {
        // x -> x + 2 log u1 permutes the lattice via α -> uα
        let field = NumberFieldSpec::real_quadratic(5).unwrap();
        let p = TruncationPolicy::default_membrane();
        let NumberFieldSpec::RealQuadratic {
            unit_embeddings: (u1, _),
            ..
        } = &field
        else {
            unreachable!()
        };
        let shift = 2.0 * u1.ln();
        let (t, x) = (0.8, 0.25);
        let base = theta_real_quadratic(t, x, &field, &p).unwrap().value;
        let shifted = theta_real_quadratic(t, x + shift, &field, &p)
            .unwrap()
            .value;
        assert!((base - shifted).abs() < 1e-10, "{base} vs {shifted}");
    }

    #[test]
    fn wrong_field_kinds_are_rejected() {
        let p = policy();
        let rq = NumberFieldSpec::real_quadratic(5).unwrap();
        let iq = NumberFieldSpec::imag_quadratic(-3).unwrap();
        assert!(theta_imag_quadratic(1.0, &rq, &p).is_err());
        assert!(theta_real_quadratic(1.0, 0.0, &iq, &p).is_err());
    }

    #[test]
    fn tail_bounds_are_small_and_positive() {
        let p = policy();
        let v = theta_rational(1.0, &p).unwrap();
        assert!(v.tail_bound > 0.0 && v.tail_bound < 1e-18);
        let field = NumberFieldSpec::imag_quadratic(-1).unwrap();
        let v = theta_imag_quadratic(1.0, &field, &p).unwrap();
        assert!(v.tail_bound > 0.0 && v.tail_bound < 1e-12);
    }
}
