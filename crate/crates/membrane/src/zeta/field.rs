//! Supported number fields: the rationals, imaginary quadratic fields of
//! class number one, and a few real quadratic fields of class number one.
//! Class numbers are enforced by an allowlist; verifying them is out of
//! scope here.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Squarefree radicands of the nine imaginary quadratic fields with class
/// number one.
pub const IMAG_QUADRATIC_RADICANDS: [i64; 9] = [-1, -2, -3, -7, -11, -19, -43, -67, -163];

/// Real quadratic radicands supported here (all class number one); the
/// fundamental units are recorded alongside.
pub const REAL_QUADRATIC_RADICANDS: [i64; 4] = [2, 3, 5, 13];

/// Field data feeding the theta and zeta evaluators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NumberFieldSpec {
    Rational,
    ImagQuadratic {
        /// Squarefree radicand `d < 0`.
        d: i64,
        /// Field discriminant.
        discriminant: i64,
        /// Number of roots of unity.
        roots_of_unity: u32,
    },
    RealQuadratic {
        /// Squarefree radicand `d > 0`.
        d: i64,
        discriminant: i64,
        /// Fundamental unit `(a + b sqrt(d)) / c`.
        unit: (i64, i64, i64),
        /// Embeddings of the fundamental unit, `u1 > 1 > |u2|`.
        unit_embeddings: (f64, f64),
    },
}

impl NumberFieldSpec {
    pub fn rational() -> Self {
        NumberFieldSpec::Rational
    }

    /// Imaginary quadratic field of class number one with radicand `d`.
    pub fn imag_quadratic(d: i64) -> Result<Self> {
        if !IMAG_QUADRATIC_RADICANDS.contains(&d) {
            return Err(Error::unsupported(format!(
                "imaginary quadratic radicand {d} is not in the class-number-one allowlist"
            )));
        }
        let discriminant = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        let roots_of_unity = match d {
            -1 => 4,
            -3 => 6,
            _ => 2,
        };
        Ok(NumberFieldSpec::ImagQuadratic {
            d,
            discriminant,
            roots_of_unity,
        })
    }

    /// Real quadratic field of class number one with radicand `d`.
    pub fn real_quadratic(d: i64) -> Result<Self> {
        let unit = real_quadratic_unit(d)?;
        let discriminant = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        let sq = (d as f64).sqrt();
        let u1 = (unit.0 as f64 + unit.1 as f64 * sq) / unit.2 as f64;
        let u2 = (unit.0 as f64 - unit.1 as f64 * sq) / unit.2 as f64;
        debug_assert!(u1 > 1.0 && u2.abs() < 1.0);
        Ok(NumberFieldSpec::RealQuadratic {
            d,
            discriminant,
            unit,
            unit_embeddings: (u1, u2),
        })
    }

    /// Parse the CLI field syntax: `Q`, `Qi`, `Q:sqrt-3`, `Q:sqrt5`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "Q" => Ok(NumberFieldSpec::Rational),
            "Qi" => NumberFieldSpec::imag_quadratic(-1),
            other => {
                let Some(rad) = other.strip_prefix("Q:sqrt") else {
                    return Err(Error::invalid(format!("unrecognized field {other:?}")));
                };
                let d: i64 = rad
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad radicand in {other:?}")))?;
                if d < 0 {
                    NumberFieldSpec::imag_quadratic(d)
                } else {
                    NumberFieldSpec::real_quadratic(d)
                }
            }
        }
    }

    pub fn discriminant(&self) -> i64 {
        match self {
            NumberFieldSpec::Rational => 1,
            NumberFieldSpec::ImagQuadratic { discriminant, .. } => *discriminant,
            NumberFieldSpec::RealQuadratic { discriminant, .. } => *discriminant,
        }
    }

    /// Ring generator `omega`: `sqrt(d)` or `(1 + sqrt(d))/2`, as a pair of
    /// real/imaginary-free embedding data. For imaginary quadratic fields
    /// the second component is the imaginary part.
    pub fn omega_embeddings(&self) -> Result<(f64, f64)> {
        match self {
            NumberFieldSpec::ImagQuadratic { d, .. } => {
                let s = (-d as f64).sqrt();
                if d.rem_euclid(4) == 1 {
                    Ok((0.5, 0.5 * s))
                } else {
                    Ok((0.0, s))
                }
            }
            NumberFieldSpec::RealQuadratic { d, .. } => {
                let s = (*d as f64).sqrt();
                if d.rem_euclid(4) == 1 {
                    Ok(((1.0 + s) / 2.0, (1.0 - s) / 2.0))
                } else {
                    Ok((s, -s))
                }
            }
            NumberFieldSpec::Rational => {
                Err(Error::invalid("the rationals have no ring generator"))
            }
        }
    }

    /// Covolume of the integer lattice under the standard embedding:
    /// `sqrt(|disc|)` for real quadratic, `sqrt(|disc|)/2` for imaginary
    /// quadratic.
    pub fn covolume(&self) -> f64 {
        match self {
            NumberFieldSpec::Rational => 1.0,
            NumberFieldSpec::ImagQuadratic { discriminant, .. } => {
                ((-discriminant) as f64).sqrt() / 2.0
            }
            NumberFieldSpec::RealQuadratic { discriminant, .. } => (*discriminant as f64).sqrt(),
        }
    }
}

impl fmt::Display for NumberFieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumberFieldSpec::Rational => write!(f, "Q"),
            NumberFieldSpec::ImagQuadratic { d: -1, .. } => write!(f, "Qi"),
            NumberFieldSpec::ImagQuadratic { d, .. } => write!(f, "Q:sqrt{d}"),
            NumberFieldSpec::RealQuadratic { d, .. } => write!(f, "Q:sqrt{d}"),
        }
    }
}

/// Fundamental unit `(a + b sqrt(d)) / c` for the supported real quadratic
/// radicands.
fn real_quadratic_unit(d: i64) -> Result<(i64, i64, i64)> {
    match d {
        2 => Ok((1, 1, 1)),
        3 => Ok((2, 1, 1)),
        5 => Ok((1, 1, 2)),
        13 => Ok((3, 1, 2)),
        _ => Err(Error::unsupported(format!(
            "real quadratic radicand {d} is not in the supported allowlist"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trips() {
        for s in ["Q", "Qi", "Q:sqrt5", "Q:sqrt-3", "Q:sqrt13"] {
            let f = NumberFieldSpec::parse(s).unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!(NumberFieldSpec::parse("Q:sqrt10").is_err());
        assert!(NumberFieldSpec::parse("Q:sqrt-5").is_err());
        assert!(NumberFieldSpec::parse("F7").is_err());
    }

    #[test]
    fn gaussian_field_data() {
        let f = NumberFieldSpec::imag_quadratic(-1).unwrap();
        assert_eq!(f.discriminant(), -4);
        assert_eq!(f.covolume(), 1.0);
        match f {
            NumberFieldSpec::ImagQuadratic { roots_of_unity, .. } => {
                assert_eq!(roots_of_unity, 4)
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn unit_embeddings_multiply_to_norm() {
        for d in REAL_QUADRATIC_RADICANDS {
            let f = NumberFieldSpec::real_quadratic(d).unwrap();
            if let NumberFieldSpec::RealQuadratic {
                unit_embeddings: (u1, u2),
                ..
            } = f
            {
                // u1*u2 = ±1 and u1 > 1 > |u2|
                assert!((u1 * u2).abs() - 1.0 < 1e-12);
                assert!(u1 > 1.0 && u2.abs() < 1.0);
            }
        }
    }

    #[test]
    fn golden_ratio_unit_for_sqrt5() {
        let f = NumberFieldSpec::real_quadratic(5).unwrap();
        if let NumberFieldSpec::RealQuadratic {
            unit_embeddings: (u1, _),
            ..
        } = f
        {
            assert!((u1 - (1.0 + 5.0f64.sqrt()) / 2.0).abs() < 1e-15);
        }
    }
}
