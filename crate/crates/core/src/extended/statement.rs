use crate::error::{Error, Result};
use crate::logic::formula::Formula;
use crate::logic::semantics::{equivalent, is_satisfiable, is_tautology};
use crate::logic::space::Space;

/// A contextual statement `consequent | context` with a satisfiable context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    consequent: Formula,
    context: Formula,
    plain: bool,
}

impl Statement {
    pub fn consequent(&self) -> &Formula {
        &self.consequent
    }

    pub fn context(&self) -> &Formula {
        &self.context
    }

    /// Whether the context is a tautology, so the statement is just its
    /// consequent.
    pub fn is_plain(&self) -> bool {
        self.plain
    }
}

/// Builds `delta | gamma`, rejecting contradictory contexts.
pub fn make_statement(space: &Space, delta: Formula, gamma: Formula) -> Result<Statement> {
    delta.check_bound(space)?;
    if !is_satisfiable(space, &gamma)? {
        return Err(Error::ContradictoryContext(
            "the context of a statement must be satisfiable".into(),
        ));
    }
    let plain = is_tautology(space, &gamma)?;
    Ok(Statement {
        consequent: delta,
        context: gamma,
        plain,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContextOp {
    Not,
    And,
    Or,
}

/// Applies a connective inside one contextual subspace.
///
/// `Not` ignores `t`; `And` and `Or` require `t` and a context logically
/// equivalent to that of `s`. The result carries the context of `s`.
pub fn contextual_op(
    space: &Space,
    op: ContextOp,
    s: &Statement,
    t: Option<&Statement>,
) -> Result<Statement> {
    let consequent = match op {
        ContextOp::Not => Formula::not(s.consequent.clone()),
        ContextOp::And | ContextOp::Or => {
            let t = t.ok_or_else(|| {
                Error::InvalidArgument("binary contextual operation needs two statements".into())
            })?;
            if !equivalent(space, &s.context, &t.context)? {
                return Err(Error::CrossContext);
            }
            let (f, g) = (s.consequent.clone(), t.consequent.clone());
            if op == ContextOp::And {
                Formula::and(f, g)
            } else {
                Formula::or(f, g)
            }
        }
    };
    Ok(Statement {
        consequent,
        context: s.context.clone(),
        plain: s.plain,
    })
}

/// `[a|Γ]|Δ = a|(Γ ∧ Δ)`.
pub fn contextualize(space: &Space, s: &Statement, delta: Formula) -> Result<Statement> {
    make_statement(
        space,
        s.consequent.clone(),
        Formula::and(s.context.clone(), delta),
    )
}

/// Counts of the extended space of a proposition space, taken over
/// semantic equivalence classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtendedSize {
    /// Number of statements `Δ|Γ` with `Γ` satisfiable.
    pub total: u128,
    /// Number of distinct propositions.
    pub propositions: u128,
    /// Number of unsatisfiable propositions.
    pub unsatisfiable: u128,
}

/// Largest world count for which truth functions are enumerated.
pub const EXTENDED_MAX_WORLDS: usize = 16;

/// Counts the statements formed from the truth functions over the worlds
/// of `space`: every column is a proposition and only the empty column is
/// unsatisfiable.
pub fn extended_space_size(space: &Space) -> Result<ExtendedSize> {
    let n = space.world_count()?;
    if n > EXTENDED_MAX_WORLDS {
        return Err(Error::Capacity {
            worlds: n as u128,
            limit: EXTENDED_MAX_WORLDS as u64,
        });
    }
    let propositions: u128 = 1 << n;
    let unsatisfiable: u128 = 1;
    Ok(ExtendedSize {
        total: propositions * (propositions - unsatisfiable),
        propositions,
        unsatisfiable,
    })
}
