//! Numerical checks of the functional equations behind the sum and product
//! rules: associativity and its additive representation, linearity in the
//! second argument, and the Pexider equation.

pub mod aczel;
pub mod cauchy;
pub mod pexider;
pub mod table;

pub use aczel::{
    reconstruct_phi, verify_associativity, verify_regraduation, verify_regraduation_at,
    Reconstruction, Regraduation,
};
pub use cauchy::{verify_cauchy_linearity, CauchyReport};
pub use pexider::{solve_pexider, Lattice, PexiderSolution};
pub use table::{uniform_grid, BinaryOpTable};
