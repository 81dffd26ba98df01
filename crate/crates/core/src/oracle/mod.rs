//! Independent reference computations used to test the solver: instances
//! with known solutions, a coordinate-wise Newton solver, and Cantor's group
//! law over finite fields.

pub mod cantor;
pub mod coordinatewise;
pub mod end_to_end;
pub mod forward;
pub mod galois;

pub use cantor::{cantor_add, cantor_mul, FieldCurve, ReducedDivisor};
pub use coordinatewise::{coordinate_residual, product_of_roots, solve_coordinatewise, SplitInstance};
pub use end_to_end::{cantor_agreement, sample_field, CantorReport};
pub use forward::{forward_instance, forward_orbit, forward_split, mumford_of_points, ForwardInstance};
pub use galois::Frobenius;
