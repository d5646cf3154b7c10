//! Reference-element machinery for the four edge-element families.

pub mod geometry;
pub mod quadrature;
pub mod shapes;

pub use geometry::{is_curved, jacobian_at, map_point, reference_nodes, JacobianData};
pub use quadrature::{quadrature_for, refined_quadrature, QuadratureRule};
pub use shapes::{curl_row, eval_shapes, eval_with_jacobian, reference_basis, ShapeEval};
