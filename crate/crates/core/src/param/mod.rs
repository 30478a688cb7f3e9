//! Special parametrizations of the hypersurface of an order-zero equation.

pub mod alg1;
pub mod curve;
pub mod triangular;

pub use alg1::{algorithm1, gamma_is_proper, Alg1Options, Alg1Outcome, Alg1Result, AnsatzSpec};
pub use curve::{check_properness, DEFAULT_POINT_HEIGHT, parametrize_plane_curve, CurveOutcome, CurveParam, Properness};
pub use triangular::{triangular_zero_dim_solve, Branch, TriOutcome, TriangularSolution};
