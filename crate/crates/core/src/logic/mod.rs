//! Finite propositional semantics: spaces, worlds, formulas and the
//! exhaustive checks built on them.

pub mod column;
pub mod formula;
pub mod identities;
pub mod semantics;
pub mod space;

pub use column::Column;
pub use formula::{Connective, Formula};
pub use semantics::{
    classify_set, compile_nand, entails, equivalent, import_export_check, is_satisfiable,
    is_tautology, truth_table, SetClass,
};
pub use space::{Space, Variable, World, MAX_WORLDS};
