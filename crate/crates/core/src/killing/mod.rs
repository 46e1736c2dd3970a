//! Killing fields of a connection: the equations, their prolongation at a
//! point, and the classification of the resulting Lie algebra.

mod case6;
mod classify;
mod prolong;
mod system;

pub use case6::{
    case6_certificate, case6_matrix, expected_case6_determinant, verify_case6, Case6Certificate,
};
pub use classify::{
    bracket_coords, classify_algebra, classify_connection, is_abelian, is_antisymmetric,
    is_dim4_case, is_homogeneous, killing_form, satisfies_jacobi, structure_constants,
    AlgebraLabel, AlgebraReport, StructureConstants,
};
pub use prolong::{solve, solve_system, BasePoint, KillingJet, KillingSolution, DEFAULT_MAX_ORDER};
pub use system::{assemble, KillingSystem, LinRow, JET_NAMES, SECOND_NAMES};
