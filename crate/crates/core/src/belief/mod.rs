//! Probability assignments over the worlds of a space and the rules of
//! the probability calculus.

mod rules;
pub mod slit;
pub mod web;

pub use slit::{double_slit_compare, double_slit_demo, DoubleSlit, SingleSlit};
pub use web::{BeliefWeb, BlockIndex, MASS_TOLERANCE};
