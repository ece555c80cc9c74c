//! Text syntax for formulas: parsing with positioned errors and an ASCII
//! pretty-printer.

pub mod parser;
pub mod printer;

pub use parser::{parse_expr, parse_formula, parse_propositional, Expr};
pub use printer::render;
