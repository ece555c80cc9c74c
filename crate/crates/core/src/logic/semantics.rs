//! Exhaustive semantics over the worlds of a [`Space`].

use crate::error::{Error, Result};
use crate::logic::formula::{Connective, Formula};
use crate::logic::space::{Space, World};

/// One row per world, in world order.
pub fn truth_table(space: &Space, f: &Formula) -> Result<Vec<(World, bool)>> {
    let col = f.column(space)?;
    Ok(space
        .worlds()?
        .enumerate()
        .map(|(i, w)| (w, col.get(i)))
        .collect())
}

pub fn is_tautology(space: &Space, f: &Formula) -> Result<bool> {
    Ok(f.column(space)?.all())
}

pub fn is_satisfiable(space: &Space, f: &Formula) -> Result<bool> {
    Ok(!f.column(space)?.none())
}

/// True iff `f` and `g` agree at every world.
pub fn equivalent(space: &Space, f: &Formula, g: &Formula) -> Result<bool> {
    Ok(f.column(space)? == g.column(space)?)
}

/// Semantic consequence: every world satisfying all premises satisfies the
/// conclusion.
pub fn entails(space: &Space, premises: &[Formula], conclusion: &Formula) -> Result<bool> {
    let mut models = Formula::True.column(space)?;
    for p in premises {
        models = &models & &p.column(space)?;
    }
    Ok(models.is_subset(&conclusion.column(space)?))
}

/// `a1 ⇒ (a2 ⇒ … ⇒ (a_{n-1} ⇒ a_n))`.
pub fn nested_implication(chain: &[Formula]) -> Option<Formula> {
    let (last, init) = chain.split_last()?;
    Some(
        init.iter()
            .rev()
            .fold(last.clone(), |acc, a| Formula::implies(a.clone(), acc)),
    )
}

/// Checks the import-export principle for a chain: the nested implication is
/// equivalent to `(a1 ∧ … ∧ a_{n-1}) ⇒ a_n`.
pub fn import_export_check(space: &Space, chain: &[Formula]) -> Result<bool> {
    let nested = nested_implication(chain)
        .ok_or_else(|| Error::InvalidArgument("import-export needs a non-empty chain".into()))?;
    let (last, init) = chain.split_last().expect("non-empty");
    let flat = if init.is_empty() {
        last.clone()
    } else {
        Formula::implies(Formula::conjunction(init.iter().cloned()), last.clone())
    };
    equivalent(space, &nested, &flat)
}

/// Rewrites a formula using only the Sheffer stroke `↑`.
pub fn compile_nand(f: &Formula) -> Formula {
    match f {
        Formula::True | Formula::False | Formula::Atom { .. } => f.clone(),
        Formula::Not(g) => nand_not(compile_nand(g)),
        Formula::Bin(c, g, h) => {
            let (g, h) = (compile_nand(g), compile_nand(h));
            match c {
                Connective::Nand => Formula::nand(g, h),
                Connective::And => nand_and(g, h),
                Connective::Or => nand_or(g, h),
                Connective::Nor => nand_not(nand_or(g, h)),
                Connective::Implies => Formula::nand(g, nand_not(h)),
                Connective::ImpliedBy => Formula::nand(nand_not(g), h),
                Connective::NotImplies => nand_and(g, nand_not(h)),
                Connective::NotImpliedBy => nand_and(nand_not(g), h),
                Connective::Xor => {
                    // (g ↑ (g ↑ h)) ↑ (h ↑ (g ↑ h))
                    let m = Formula::nand(g.clone(), h.clone());
                    Formula::nand(Formula::nand(g, m.clone()), Formula::nand(h, m))
                }
                Connective::Iff => {
                    let m = Formula::nand(g.clone(), h.clone());
                    nand_not(Formula::nand(Formula::nand(g, m.clone()), Formula::nand(h, m)))
                }
            }
        }
    }
}

fn nand_not(g: Formula) -> Formula {
    Formula::nand(g.clone(), g)
}

fn nand_and(g: Formula, h: Formula) -> Formula {
    let m = Formula::nand(g, h);
    Formula::nand(m.clone(), m)
}

fn nand_or(g: Formula, h: Formula) -> Formula {
    Formula::nand(nand_not(g), nand_not(h))
}

/// Whether a set of propositions is pairwise mutually exclusive and whether
/// it is jointly exhaustive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SetClass {
    pub mutually_exclusive: bool,
    pub exhaustive: bool,
}

pub fn classify_set(space: &Space, fs: &[Formula]) -> Result<SetClass> {
    if fs.is_empty() {
        return Err(Error::InvalidArgument("classify_set needs at least one formula".into()));
    }
    let cols = fs
        .iter()
        .map(|f| f.column(space))
        .collect::<Result<Vec<_>>>()?;
    let mutually_exclusive = cols
        .iter()
        .enumerate()
        .all(|(i, a)| cols[i + 1..].iter().all(|b| (a & b).none()));
    let union = cols
        .iter()
        .skip(1)
        .fold(cols[0].clone(), |acc, c| &acc | c);
    Ok(SetClass {
        mutually_exclusive,
        exhaustive: union.all(),
    })
}
