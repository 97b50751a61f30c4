//! Numerical and exact evaluation of iterated integrals over
//! simplex-product domains, indexed decompositions, membranes and
//! pullbacks.

pub mod engine;
pub mod forms;
pub mod gauss;
pub mod iterated;
pub mod membrane;
pub mod oracle;
pub mod poly;

pub use engine::{ordered_quadrature, AxisSpec, Method, QuadResult, QuadratureConfig, Segment};
pub use forms::{Form1, Form2, PolyTerm, Rectangle};
pub use iterated::{
    eval_doubly_indexed, eval_indexed, eval_indexed_numeric, eval_iterated, eval_iterated_numeric,
    eval_path, IntegralValue,
};
pub use membrane::{
    alpha_map, compose_horizontal, compose_vertical, composition_identity_check,
    homotopy_invariance_check, membrane_indexed, membrane_iterated, pullback_form, AlphaCell,
    BoundaryLabels, Membrane, PullbackOptions, TargetForm2,
};
pub use oracle::{
    doubly_indexed_poly_oracle, indexed_poly_oracle, path_poly_oracle, poly_oracle, GridBounds,
};
