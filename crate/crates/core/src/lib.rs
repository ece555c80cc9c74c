//! Deductive, inductive and entropic inference over finite spaces of
//! propositions.
//!
//! - [`logic`]: spaces, worlds, formulas and their truth columns, and the
//!   identity catalogue of the algebra of propositions.
//! - [`syntax`]: the formula parser and printer.
//! - [`extended`]: statements in context and implication orders.
//! - [`belief`]: webs of belief and the sum, product and Bayes rules.
//! - [`maxent`]: maximum relative entropy updating.
//! - [`correlation`]: entropies, total correlation and mutual information.
//! - [`regraduation`]: numerical checks of the underlying functional
//!   equations.
//! - [`scenario`]: the plain-text scenario format.
//!
//! The guide in `book/` walks through each of these with runnable code.

pub mod belief;
pub mod correlation;
pub mod error;
pub mod extended;
pub mod logic;
pub mod maxent;
pub mod numeric;
pub mod regraduation;
pub mod scenario;
pub mod syntax;

pub use error::{Error, Result};

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/propositions.md")]
    pub mod propositions {}
    #[doc = include_str!("../../../book/src/contexts.md")]
    pub mod contexts {}
    #[doc = include_str!("../../../book/src/beliefs.md")]
    pub mod beliefs {}
    #[doc = include_str!("../../../book/src/updating.md")]
    pub mod updating {}
    #[doc = include_str!("../../../book/src/correlations.md")]
    pub mod correlations {}
    #[doc = include_str!("../../../book/src/regraduation.md")]
    pub mod regraduation {}
    #[doc = include_str!("../../../book/src/scenarios.md")]
    pub mod scenarios {}
}
