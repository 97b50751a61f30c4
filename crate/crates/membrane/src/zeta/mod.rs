//! Theta functions and completed (multiple) Dedekind zeta values for the
//! rationals, imaginary quadratic and real quadratic fields of class number
//! one, validated against independent Dirichlet-series oracles.

pub mod completed;
pub mod dirichlet;
pub mod field;
pub mod membrane_zeta;
pub mod request;
pub mod theta;

pub use completed::{
    completed_zeta, completed_zeta_closed_form, multiple_completed_zeta_path,
    nested_path_zeta_oracle, word_encoded_zeta, WordFactor, ZetaOutcome,
};
pub use dirichlet::{catalan, dedekind_zeta_oracle, gamma, ideal_counts, kronecker, l_series};
pub use field::NumberFieldSpec;
pub use membrane_zeta::{
    membrane_identity_rhs, membrane_m, multiple_completed_dedekind_2d, unfolding_oracle,
};
pub use request::ZetaRequest;
pub use theta::{
    theta_imag_quadratic, theta_rational, theta_real_quadratic, ThetaValue, TruncationPolicy,
};
