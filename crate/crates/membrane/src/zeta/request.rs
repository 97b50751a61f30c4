//! A fully-specified zeta evaluation request, dispatching to the path or
//! membrane transform with its matching independent oracle.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::quad::QuadratureConfig;
use crate::zeta::completed::{
    completed_zeta, multiple_completed_zeta_path, nested_path_zeta_oracle, ZetaOutcome,
};
use crate::zeta::field::NumberFieldSpec;
use crate::zeta::membrane_zeta::{multiple_completed_dedekind_2d, unfolding_oracle};
use crate::zeta::theta::TruncationPolicy;

#[derive(Clone, Debug)]
pub struct ZetaRequest {
    pub field: NumberFieldSpec,
    pub exponents: Vec<f64>,
    /// t-ordering of the factors (membrane transform only).
    pub sigma1: Permutation,
    /// x-ordering of the factors (membrane transform only).
    pub sigma2: Permutation,
    pub truncation: TruncationPolicy,
    pub quadrature: QuadratureConfig,
}

impl ZetaRequest {
    pub fn new(field: NumberFieldSpec, exponents: Vec<f64>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::invalid("need at least one exponent"));
        }
        let d = exponents.len();
        let truncation = if matches!(field, NumberFieldSpec::RealQuadratic { .. }) {
            TruncationPolicy::default_membrane()
        } else {
            TruncationPolicy::default_path()
        };
        Ok(ZetaRequest {
            field,
            exponents,
            sigma1: Permutation::identity(d),
            sigma2: Permutation::identity(d),
            truncation,
            quadrature: QuadratureConfig::gauss(12),
        })
    }

    pub fn uses_membrane(&self) -> bool {
        matches!(self.field, NumberFieldSpec::RealQuadratic { .. })
    }

    fn validate(&self) -> Result<()> {
        let d = self.exponents.len();
        if self.sigma1.len() != d || self.sigma2.len() != d {
            return Err(Error::invalid(
                "permutation sizes must match the number of exponents",
            ));
        }
        if !self.uses_membrane() && !(self.sigma1.is_identity() && self.sigma2.is_identity()) {
            return Err(Error::invalid(
                "path transforms fix the chain order; permute the exponent list instead",
            ));
        }
        self.quadrature.validate()
    }

    /// Evaluate through the primary route.
    pub fn evaluate(&self) -> Result<ZetaOutcome> {
        self.validate()?;
        let mut out = if self.uses_membrane() {
            multiple_completed_dedekind_2d(
                &self.field,
                &self.exponents,
                &self.sigma1,
                &self.sigma2,
                &self.truncation,
                &self.quadrature,
            )?
        } else if self.exponents.len() == 1 {
            completed_zeta(
                &self.field,
                self.exponents[0],
                &self.truncation,
                &self.quadrature,
            )?
        } else {
            multiple_completed_zeta_path(
                &self.field,
                &self.exponents,
                &self.truncation,
                &self.quadrature,
            )?
        };
        if !self.truncation.report_tails {
            out.tail_bounds.clear();
        }
        Ok(out)
    }

    /// Evaluate through the independent oracle for the same request: lattice
    /// unfolding for the membrane transform, nested 1-D quadrature for the
    /// path one.
    pub fn evaluate_oracle(&self) -> Result<ZetaOutcome> {
        self.validate()?;
        let mut out = if self.uses_membrane() {
            unfolding_oracle(
                &self.field,
                &self.exponents,
                &self.sigma1,
                &self.sigma2,
                &self.truncation,
                &self.quadrature,
            )?
        } else {
            nested_path_zeta_oracle(
                &self.field,
                &self.exponents,
                &self.truncation,
                &self.quadrature,
            )?
        };
        if !self.truncation.report_tails {
            out.tail_bounds.clear();
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn request_dispatches_per_field() {
        let q = ZetaRequest::new(NumberFieldSpec::Rational, vec![2.0]).unwrap();
        assert!(!q.uses_membrane());
        let v = q.evaluate().unwrap();
        assert!((v.value - std::f64::consts::PI / 3.0).abs() < 1e-9);

        let rq = ZetaRequest::new(NumberFieldSpec::real_quadratic(5).unwrap(), vec![2.0]).unwrap();
        assert!(rq.uses_membrane());
        let direct = rq.evaluate().unwrap();
        let oracle = rq.evaluate_oracle().unwrap();
        assert!((direct.value - oracle.value).abs() < 1e-4);
    }

    #[test]
    fn path_requests_reject_nontrivial_orderings() {
        let mut q = ZetaRequest::new(NumberFieldSpec::Rational, vec![4.0, 2.0]).unwrap();
        q.sigma2 = Permutation::from_images(vec![2, 1]).unwrap();
        assert!(q.evaluate().is_err());
    }

    #[test]
    fn tail_reporting_flag_is_honored() {
        let mut q = ZetaRequest::new(NumberFieldSpec::Rational, vec![2.0]).unwrap();
        q.truncation.report_tails = false;
        assert!(q.evaluate().unwrap().tail_bounds.is_empty());
        q.truncation.report_tails = true;
        assert!(!q.evaluate().unwrap().tail_bounds.is_empty());
    }
}
