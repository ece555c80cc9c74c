//! Maximum relative entropy updating.

pub mod constraint;
pub mod entropy;
pub mod properties;
pub mod solver;

pub use constraint::{Constraint, ConstraintSet};
pub use entropy::{kl_divergence, relative_entropy};
pub use properties::{dc1_property_trial, dc3_property_trial};
pub use solver::{
    bayes_via_maxent, feasibility_check, update, DualSolution, Feasibility, SolverOptions,
    UpdateReport,
};
