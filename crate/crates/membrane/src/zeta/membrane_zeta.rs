//! Completed Dedekind zeta values for real quadratic fields of class number
//! one, as iterated integrals over the geodesic membrane bounded by the
//! diagonal geodesic and its unit-square translate.
//!
//! In membrane coordinates `(t, x)` with `(z1, z2) = (i t e^x, i t e^{-x})`
//! one has `(-z1 z2)^{s/2} = t^s` and `dz1/z1 ∧ dz2/z2 = -2 (dt/t) ∧ dx`,
//! so each factor contributes `(theta_K - 1)(t, x) · t^s · dt/t · dx` once
//! the 1/2 prefactor and the orientation are folded in. The x-range is
//! `[0, 2 log u1]`.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::quad::engine::{ordered_quadrature, AxisSpec, QuadratureConfig, Segment};
use crate::quad::membrane::{BoundaryLabels, Membrane};
use crate::zeta::completed::{TailBound, ZetaOutcome};
use crate::zeta::dirichlet::{dedekind_zeta_oracle, gamma};
use crate::zeta::field::NumberFieldSpec;
use crate::zeta::theta::{
    min_form_on_range, real_quadratic_points, theta_real_quadratic, TruncationPolicy,
};
use std::f64::consts::PI;

fn unit_log(field: &NumberFieldSpec) -> Result<f64> {
    match field {
        NumberFieldSpec::RealQuadratic {
            unit_embeddings: (u1, _),
            ..
        } => Ok(2.0 * u1.ln()),
        _ => Err(Error::invalid(format!(
            "geodesic membrane needs a real quadratic field, got {field}"
        ))),
    }
}

/// The geodesic membrane for a real quadratic field: `(p, q)` in the unit
/// square maps to `(z1, z2) = (i t e^x, i t e^{-x})` with `t` log-spaced in
/// the truncation window and `x = q · 2 log u1`. Coordinates are exposed as
/// `(Re z1, Im z1, Re z2, Im z2)`.
pub fn membrane_m(field: &NumberFieldSpec, policy: &TruncationPolicy) -> Result<Membrane> {
    let x_max = unit_log(field)?;
    let v_lo = policy.t_min.ln();
    let v_hi = policy.t_max.ln();
    let dv = v_hi - v_lo;
    let m = Membrane::new(4, move |p, q| {
        let t = (v_lo + dv * p).exp();
        let x = x_max * q;
        vec![0.0, t * x.exp(), 0.0, t * (-x).exp()]
    })
    .with_jacobian(move |p, q| {
        let t = (v_lo + dv * p).exp();
        let x = x_max * q;
        let y1 = t * x.exp();
        let y2 = t * (-x).exp();
        (
            vec![0.0, y1 * dv, 0.0, y2 * dv],
            vec![0.0, y1 * x_max, 0.0, -y2 * x_max],
        )
    })
    .with_boundary(BoundaryLabels {
        left: format!("t={}", policy.t_min),
        right: format!("t={}", policy.t_max),
        bottom: "gamma_{0,1,inf}".into(),
        top: "gamma_{0,u^2,inf}".into(),
    });
    Ok(m)
}

fn check_exponents(s: &[f64]) -> Result<()> {
    if s.is_empty() {
        return Err(Error::invalid("need at least one exponent"));
    }
    for &si in s {
        if !si.is_finite() || si < 2.0 {
            return Err(Error::domain(format!(
                "membrane transform validated for s >= 2 (integrand ~ t^{{s-2}} at the corner), got {si}"
            )));
        }
    }
    Ok(())
}

/// Head bound for the dropped `t < t_min` region of the d = 1 integral,
/// from `theta_K - 1 ~ 1/(covol·t)` uniformly in x.
fn head_term(field: &NumberFieldSpec, s: f64, t_min: f64, x_range: f64) -> (f64, f64) {
    let a = 1.0 / field.covolume();
    let value = x_range * (a * t_min.powf(s - 1.0) / (s - 1.0) - t_min.powf(s) / s);
    // remainder: the dual-lattice terms, of size exp(-c/t_min)
    let rem = 2.0 * x_range * a * t_min.powf(s - 1.0) * (-0.5 / t_min).exp();
    (value, rem)
}

/// The d-fold membrane transform: iterated integral over `M^d` with the
/// t-coordinates ordered by `sigma1` and the x-coordinates by `sigma2`,
/// factor `i` carrying `(theta_K - 1)(t_i, x_i) t_i^{s_i} dt_i/t_i dx_i`.
/// For `d = 1` the head of the window is corrected analytically, and the
/// value satisfies `value = π^{-s} Γ(s/2)² ζ_K(s)`.
pub fn multiple_completed_dedekind_2d(
    field: &NumberFieldSpec,
    s: &[f64],
    sigma1: &Permutation,
    sigma2: &Permutation,
    policy: &TruncationPolicy,
    cfg: &QuadratureConfig,
) -> Result<ZetaOutcome> {
    let x_max = unit_log(field)?;
    check_exponents(s)?;
    let d = s.len();
    if sigma1.len() != d || sigma2.len() != d {
        return Err(Error::invalid(
            "permutation sizes must match the number of exponents",
        ));
    }
    let v_lo = policy.t_min.ln();
    let v_hi = policy.t_max.ln();
    let t_breaks: Vec<f64> = {
        let n = ((v_hi - v_lo) / 0.8).ceil().max(1.0) as usize;
        (1..n)
            .map(|k| v_lo + (v_hi - v_lo) * k as f64 / n as f64)
            .collect()
    };
    let x_breaks: Vec<f64> = {
        let n = ((x_max / 0.35).ceil()).max(1.0) as usize;
        (1..n).map(|k| x_max * k as f64 / n as f64).collect()
    };
    let axes = [
        AxisSpec {
            segments: vec![Segment::with_breaks(v_lo, v_hi, d, t_breaks)],
        },
        AxisSpec {
            segments: vec![Segment::with_breaks(0.0, x_max, d, x_breaks)],
        },
    ];
    // factor i sits at t-rank sigma1^{-1}(i) and x-rank sigma2^{-1}(i)
    let rank_t = sigma1.inverse();
    let rank_x = sigma2.inverse();
    let rt: Vec<usize> = (1..=d).map(|i| rank_t.apply(i) - 1).collect();
    let rx: Vec<usize> = (1..=d).map(|i| rank_x.apply(i) - 1).collect();
    let p = *policy;
    let fld = field.clone();
    let s_own = s.to_vec();
    let theta = crate::util::Memo2::new(move |t: f64, x: f64| {
        theta_real_quadratic(t, x, &fld, &p)
            .map(|v| v.value)
            .unwrap_or(f64::NAN)
    });
    let integrand = move |args: &[Vec<f64>]| {
        let vs = &args[0];
        let xs = &args[1];
        let mut acc = 1.0;
        for i in 0..s_own.len() {
            let t = vs[rt[i]].exp();
            let x = xs[rx[i]];
            acc *= (theta.eval(t, x) - 1.0) * t.powf(s_own[i]);
        }
        acc
    };
    let core = ordered_quadrature(&axes, &integrand, cfg)?;
    let mut value = core.value;
    let mut est_error = core.est_error;
    let mut tails = Vec::new();
    if d == 1 {
        let (head, rem) = head_term(field, s[0], policy.t_min, x_max);
        value += head;
        est_error += rem;
        tails.push(TailBound {
            source: format!("t<{} (corrected analytically)", policy.t_min),
            bound: rem,
        });
    } else {
        let (head, _) = head_term(field, s[sigma1.apply(1) - 1], policy.t_min, x_max);
        let bound = head.abs() * (1.0 + core.value.abs());
        est_error += bound;
        tails.push(TailBound {
            source: format!("t<{} (uncorrected corner estimate)", policy.t_min),
            bound,
        });
    }
    let tail_hi = {
        // theta_K - 1 <= c exp(-2 pi t) above t_max (smallest form value 2)
        let s_top = s.iter().cloned().fold(f64::MIN, f64::max);
        4.0 * x_max * policy.t_max.powf(s_top - 1.0) * (-2.0 * PI * policy.t_max).exp()
    };
    est_error += tail_hi;
    tails.push(TailBound {
        source: format!("t>{}", policy.t_max),
        bound: tail_hi,
    });
    Ok(ZetaOutcome {
        value,
        est_error,
        tail_bounds: tails,
    })
}

/// Closed-form right-hand side of the single-variable identity:
/// `π^{-s} Γ(s/2)² ζ_K(s)` with `ζ_K` from the ideal-count series.
pub fn membrane_identity_rhs(field: &NumberFieldSpec, s: f64) -> Result<f64> {
    let zk = dedekind_zeta_oracle(field, s, 400_000)?;
    Ok(PI.powf(-s) * gamma(s / 2.0).powi(2) * zk.value)
}

/// Antiderivative value of `t^k e^{-λ t}` at `t`:
/// `-e^{-λt} Σ_{i=0..k} k!/(k-i)! · t^{k-i} / λ^{i+1}`.
fn prim_pow_exp(k: u32, lam: f64, t: f64) -> f64 {
    debug_assert!(lam > 0.0);
    let mut sum = 0.0;
    let mut falling = 1.0;
    let mut lam_pow = lam;
    for i in 0..=k {
        sum += falling * t.powi((k - i) as i32) / lam_pow;
        falling *= (k - i) as f64;
        lam_pow *= lam;
    }
    -(-lam * t).exp() * sum
}

/// `∫_a^b t^k e^{-λ t} dt`, closed form.
fn int_pow_exp(k: u32, lam: f64, a: f64, b: f64) -> f64 {
    prim_pow_exp(k, lam, b) - prim_pow_exp(k, lam, a)
}

/// `∫_{tm}^{tM} t^{s-1} e^{-c t} dt` for integer `s >= 1`.
fn window_mellin(c: f64, s: u32, tm: f64, tmax: f64) -> f64 {
    int_pow_exp(s - 1, c, tm, tmax)
}

/// `∫∫_{tm <= t_lo <= t_hi <= tM} t_lo^{s_lo-1} e^{-c_lo t_lo}
///  t_hi^{s_hi-1} e^{-c_hi t_hi} dt` for integer exponents, allocation-free.
///
/// The inner antiderivative is `G(τ) = -e^{-c_lo τ} Q(τ)` with polynomial
/// `Q`, so the outer integrand splits into `τ^{s_hi-1+j} e^{-(c_lo+c_hi)τ}`
/// monomials plus the constant `-G(tm)` times a plain window factor.
fn window_mellin_ordered(c_lo: f64, s_lo: u32, c_hi: f64, s_hi: u32, tm: f64, tmax: f64) -> f64 {
    let k = s_lo - 1;
    let mut total = 0.0;
    // -Σ_i q_i ∫ τ^{s_hi-1+k-i} e^{-(c_lo+c_hi)τ} dτ
    let mut falling = 1.0;
    let mut lam_pow = c_lo;
    for i in 0..=k {
        let q_i = falling / lam_pow;
        total -= q_i * int_pow_exp(s_hi - 1 + (k - i), c_lo + c_hi, tm, tmax);
        falling *= (k - i) as f64;
        lam_pow *= c_lo;
    }
    // - G(tm) ∫ τ^{s_hi-1} e^{-c_hi τ} dτ with G(tm) = prim at tm
    total -= prim_pow_exp(k, c_lo, tm) * int_pow_exp(s_hi - 1, c_hi, tm, tmax);
    total
}

fn as_positive_integer(s: f64) -> Result<u32> {
    let r = s.round();
    if (s - r).abs() < 1e-12 && r >= 1.0 {
        Ok(r as u32)
    } else {
        Err(Error::unsupported(format!(
            "the unfolding oracle uses closed-form t-integrals and needs integer exponents, got {s}"
        )))
    }
}

/// Termwise unfolding oracle: exchange the lattice sum with the integral
/// and integrate each lattice term over the same truncated window. The
/// t-integrals are exact exponential-polynomial expressions; only the
/// x-integrals are quadrature. Supports d <= 2.
pub fn unfolding_oracle(
    field: &NumberFieldSpec,
    s: &[f64],
    sigma1: &Permutation,
    sigma2: &Permutation,
    policy: &TruncationPolicy,
    cfg: &QuadratureConfig,
) -> Result<ZetaOutcome> {
    let x_max = unit_log(field)?;
    check_exponents(s)?;
    let d = s.len();
    if sigma1.len() != d || sigma2.len() != d {
        return Err(Error::invalid("permutation sizes must match d"));
    }
    let bound = policy.form_bound(policy.t_min);
    let points = real_quadratic_points(field, bound, x_max)?;
    let (tm, tmax) = (policy.t_min, policy.t_max);
    match d {
        1 => {
            let s1 = as_positive_integer(s[0])?;
            // per point: ∫_0^{x_max} dx ∫ window e^{-π Q_x(α) t} t^{s-1} dt
            let (xs, ws) =
                crate::quad::gauss::composite_gauss(&[0.0, x_max / 2.0, x_max], cfg.points.max(12));
            let contributions = crate::util::parallel_map(points.len(), |i| {
                let (a1, a2) = points[i];
                let mut acc = 0.0;
                for (x, w) in xs.iter().zip(&ws) {
                    let c = PI * (a1 * a1 * x.exp() + a2 * a2 * (-x).exp());
                    acc += w * window_mellin(c, s1, tm, tmax);
                }
                acc
            });
            // the same analytic head correction as the 2-D quadrature, so
            // both routes target the full transform
            let (head, head_rem) = head_term(field, s[0], tm, x_max);
            let value = crate::util::pairwise_sum(&contributions) + head;
            Ok(ZetaOutcome {
                value,
                est_error: 1e-9 + head_rem + points.len() as f64 * 1e-16,
                tail_bounds: vec![TailBound {
                    source: "lattice truncation".into(),
                    bound: (2.0 / field.covolume()) * (-PI * bound * tm).exp() / tm,
                }],
            })
        }
        2 => {
            let s_int = [as_positive_integer(s[0])?, as_positive_integer(s[1])?];
            // factor at the lower t-rank and its exponent
            let f_lo = sigma1.apply(1) - 1;
            let f_hi = sigma1.apply(2) - 1;
            // x-ordering: x of factor sigma2(1) is the smaller one
            let x_lo_factor = sigma2.apply(1) - 1;
            // nodes on the ordered x-simplex {0 <= x_lo <= x_hi <= x_max}
            // via the telescoping transform (x_lo, x_hi) = x_max (s1 s2, s2)
            let x_nodes: Vec<(f64, f64, f64)> = {
                let g = cfg.points.clamp(6, 8);
                let (ns, ws) = crate::quad::gauss::gauss_legendre(g);
                let ns: Vec<f64> = ns.iter().map(|v| 0.5 * (v + 1.0)).collect();
                let ws: Vec<f64> = ws.iter().map(|w| 0.5 * w).collect();
                let mut out = Vec::with_capacity(g * g);
                for (s1, w1) in ns.iter().zip(&ws) {
                    for (s2, w2) in ns.iter().zip(&ws) {
                        out.push((x_max * s1 * s2, x_max * s2, x_max * x_max * s2 * w1 * w2));
                    }
                }
                out
            };
            // prune pairs by their minimal possible joint exponent
            let min_forms: Vec<f64> = points
                .iter()
                .map(|&(a1, a2)| min_form_on_range(a1, a2, x_max))
                .collect();
            let budget = 42.0 / (PI * tm);
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            for i in 0..points.len() {
                for j in 0..points.len() {
                    if min_forms[i] + min_forms[j] <= budget {
                        pairs.push((i, j));
                    }
                }
            }
            let contributions = crate::util::parallel_map(pairs.len(), |pi| {
                let (i, j) = pairs[pi];
                // lattice point for factor 1 is points[i], factor 2 points[j]
                let alphas = [points[i], points[j]];
                let mut acc = 0.0;
                for &(x_a, x_b, weight) in &x_nodes {
                    // assign ordered xs to factors through sigma2
                    let mut x_of = [0.0; 2];
                    x_of[x_lo_factor] = x_a;
                    x_of[1 - x_lo_factor] = x_b;
                    let c = |f: usize| {
                        let (a1, a2) = alphas[f];
                        PI * (a1 * a1 * x_of[f].exp() + a2 * a2 * (-x_of[f]).exp())
                    };
                    acc += weight
                        * window_mellin_ordered(
                            c(f_lo),
                            s_int[f_lo],
                            c(f_hi),
                            s_int[f_hi],
                            tm,
                            tmax,
                        );
                }
                acc
            });
            let value = crate::util::pairwise_sum(&contributions);
            Ok(ZetaOutcome {
                value,
                est_error: 1e-8,
                tail_bounds: vec![TailBound {
                    source: "lattice and pair truncation".into(),
                    bound: (4.0 / field.covolume()) * (-42.0f64).exp(),
                }],
            })
        }
        _ => Err(Error::unsupported(
            "the unfolding oracle is implemented for d <= 2",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt5() -> NumberFieldSpec {
        NumberFieldSpec::real_quadratic(5).unwrap()
    }

    #[test]
    fn membrane_faces() {
        let field = sqrt5();
        let policy = TruncationPolicy::default_membrane();
        let m = membrane_m(&field, &policy).unwrap();
        // bottom face (x = 0) lies on the diagonal z1 = z2
        for &p in &[0.0, 0.4, 1.0] {
            let pt = m.at(p, 0.0);
            assert!((pt[1] - pt[3]).abs() < 1e-12);
        }
        // top face is the unit-square translate: z1 = u1^2 (i t), z2 = u2^2 (i t)
        let NumberFieldSpec::RealQuadratic {
            unit_embeddings: (u1, u2),
            ..
        } = &field
        else {
            unreachable!()
        };
        for &p in &[0.2, 0.7] {
            let pt = m.at(p, 1.0);
            let t = (pt[1] * pt[3]).sqrt(); // since u1^2 u2^2 = 1
            assert!((pt[1] / t - u1 * u1).abs() < 1e-9);
            assert!((pt[3] / t - u2 * u2).abs() < 1e-9);
        }
        assert_eq!(m.boundary.bottom, "gamma_{0,1,inf}");
        assert!(membrane_m(&NumberFieldSpec::Rational, &policy).is_err());
    }

    #[test]
    fn log_coordinate_area_element() {
        // dz1/z1 ∧ dz2/z2 pulled back is -2 dv ∧ dx, constant over the square
        let field = sqrt5();
        let policy = TruncationPolicy::default_membrane();
        let m = membrane_m(&field, &policy).unwrap();
        let x_max = unit_log(&field).unwrap();
        let dv = (policy.t_max / policy.t_min).ln();
        let omega = crate::quad::membrane::TargetForm2::new()
            .term(1, 3, |pt: &[f64]| 1.0 / (pt[1] * pt[3]));
        let pulled = crate::quad::membrane::pullback_form(
            &m,
            &omega,
            crate::quad::membrane::PullbackOptions::default(),
        );
        for &(p, q) in &[(0.3, 0.2), (0.8, 0.9)] {
            let got = pulled.eval(p, q);
            assert!(
                (got + 2.0 * dv * x_max).abs() < 1e-9 * dv * x_max,
                "{got} vs {}",
                -2.0 * dv * x_max
            );
        }
    }

    #[test]
    fn exp_poly_integrals() {
        // ∫_0^∞-ish t e^{-t} dt over a window, against integration by parts
        let got = window_mellin(1.0, 2, 0.1, 40.0);
        let f = |t: f64| -(t + 1.0) * (-t).exp();
        assert!((got - (f(40.0) - f(0.1))).abs() < 1e-14);
        // ordered two-variable case against a brute 2-D Riemann check
        let got = window_mellin_ordered(1.0, 2, 0.5, 1, 0.2, 6.0);
        let mut brute = 0.0;
        let n = 4000;
        let h = (6.0 - 0.2) / n as f64;
        for i in 0..n {
            let t1 = 0.2 + (i as f64 + 0.5) * h;
            for j in i..n {
                let t2 = 0.2 + (j as f64 + 0.5) * h;
                brute += h * h * t1 * (-t1).exp() * (-0.5 * t2).exp();
            }
        }
        assert!((got - brute).abs() < 2e-3, "{got} vs {brute}");
    }

    #[test]
    fn d1_identity_for_sqrt5() {
        // the membrane integral at s = 2 equals pi^{-2} Γ(1)^2 ζ_K(2)
        let field = sqrt5();
        let policy = TruncationPolicy::default_membrane();
        let cfg = QuadratureConfig::gauss(10);
        let id1 = Permutation::identity(1);
        let got =
            multiple_completed_dedekind_2d(&field, &[2.0], &id1, &id1, &policy, &cfg).unwrap();
        let want = membrane_identity_rhs(&field, 2.0).unwrap();
        assert!(
            (got.value - want).abs() < 1e-3,
            "{} vs {want} (est err {})",
            got.value,
            got.est_error
        );
    }

    #[test]
    fn d1_unfolding_oracle_matches_quadrature() {
        let field = sqrt5();
        let policy = TruncationPolicy::default_membrane();
        let cfg = QuadratureConfig::gauss(10);
        let id1 = Permutation::identity(1);
        let direct =
            multiple_completed_dedekind_2d(&field, &[2.0], &id1, &id1, &policy, &cfg).unwrap();
        let unfolded = unfolding_oracle(&field, &[2.0], &id1, &id1, &policy, &cfg).unwrap();
        assert!(
            (direct.value - unfolded.value).abs() < 1e-4,
            "quadrature {} vs unfolded {}",
            direct.value,
            unfolded.value
        );
    }

    #[test]
    fn rejects_small_exponents_and_bad_fields() {
        let field = sqrt5();
        let policy = TruncationPolicy::default_membrane();
        let cfg = QuadratureConfig::default();
        let id1 = Permutation::identity(1);
        assert!(multiple_completed_dedekind_2d(&field, &[1.5], &id1, &id1, &policy, &cfg).is_err());
        assert!(multiple_completed_dedekind_2d(
            &NumberFieldSpec::Rational,
            &[2.0],
            &id1,
            &id1,
            &policy,
            &cfg
        )
        .is_err());
    }
}
