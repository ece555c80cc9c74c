//! Contextual statements `Δ|Γ`, the contextual Boolean algebra, and the
//! implication order with its Hasse diagram.

pub mod order;
pub mod statement;

pub use order::{build_order, export_dot, order_preservation_check, OrderedSet};
pub use statement::{
    contextual_op, contextualize, extended_space_size, make_statement, ContextOp, ExtendedSize,
    Statement,
};
