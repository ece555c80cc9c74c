//! The algebra of propositions as a catalogue of identity schemas.
//!
//! A schema is written over metavariables `a, b, c` (atoms `0, 1, 2` of a
//! binary space). It is checked two ways: as a tautology in the
//! metavariables, and exhaustively over every instantiation of the
//! metavariables by formulas of bounded depth.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::logic::formula::{Connective, Formula};
use crate::logic::space::Space;

/// A named equivalence `lhs ⇔ rhs` between schemas.
#[derive(Debug, Clone)]
pub struct Identity {
    pub name: &'static str,
    pub lhs: Formula,
    pub rhs: Formula,
    /// Number of metavariables used.
    pub arity: usize,
}

fn a() -> Formula {
    Formula::letter(0)
}
fn b() -> Formula {
    Formula::letter(1)
}
fn c() -> Formula {
    Formula::letter(2)
}
fn not(f: Formula) -> Formula {
    Formula::not(f)
}
fn and(f: Formula, g: Formula) -> Formula {
    Formula::and(f, g)
}
fn or(f: Formula, g: Formula) -> Formula {
    Formula::or(f, g)
}
fn imp(f: Formula, g: Formula) -> Formula {
    Formula::implies(f, g)
}

fn id(name: &'static str, arity: usize, lhs: Formula, rhs: Formula) -> Identity {
    Identity {
        name,
        lhs,
        rhs,
        arity,
    }
}

/// A tautology, expressed as `f ⇔ ⊤`.
fn taut(name: &'static str, arity: usize, f: Formula) -> Identity {
    id(name, arity, f, Formula::True)
}

/// Every identity of the built-in catalogue.
pub fn catalogue() -> Vec<Identity> {
    vec![
        // laws of thought
        taut("identity", 1, Formula::iff(a(), a())),
        taut("non-contradiction", 1, not(and(a(), not(a())))),
        taut("excluded-middle", 1, or(a(), not(a()))),
        id("double-negation", 1, not(not(a())), a()),
        // algebraic properties of ∧ and ∨
        id("commutativity-or", 2, or(a(), b()), or(b(), a())),
        id("associativity-or", 3, or(a(), or(b(), c())), or(or(a(), b()), c())),
        id("or-identity", 1, or(a(), Formula::False), a()),
        id("and-identity", 1, and(a(), Formula::True), a()),
        id("commutativity-and", 2, and(a(), b()), and(b(), a())),
        id("associativity-and", 3, and(a(), and(b(), c())), and(and(a(), b()), c())),
        id(
            "distributivity-or",
            3,
            or(a(), and(b(), c())),
            and(or(a(), b()), or(a(), c())),
        ),
        id(
            "distributivity-and",
            3,
            and(a(), or(b(), c())),
            or(and(a(), b()), and(a(), c())),
        ),
        // consequences of the algebra: proposition and dual columns
        id("idempotence-and", 1, and(a(), a()), a()),
        id("idempotence-or", 1, or(a(), a()), a()),
        id("de-morgan-and", 2, not(and(a(), b())), or(not(a()), not(b()))),
        id("de-morgan-or", 2, not(or(a(), b())), and(not(a()), not(b()))),
        id("absorption-and", 2, or(and(a(), b()), b()), b()),
        id("absorption-or", 2, and(or(a(), b()), b()), b()),
        id(
            "exclusivity-xor",
            2,
            Formula::bin(Connective::Xor, a(), b()),
            and(or(a(), b()), not(and(a(), b()))),
        ),
        id(
            "exclusivity-iff",
            2,
            Formula::iff(a(), b()),
            or(and(a(), b()), not(or(a(), b()))),
        ),
        // ∨ and ∧ through one another
        id("or-through-and", 2, or(a(), b()), not(and(not(a()), not(b())))),
        id("and-through-or", 2, and(a(), b()), not(or(not(a()), not(b())))),
        // material implication
        id("implication-as-or", 2, imp(a(), b()), or(not(a()), b())),
        id("implication-as-and", 2, imp(a(), b()), not(and(a(), not(b())))),
        taut(
            "implication-distributes",
            3,
            imp(imp(a(), imp(b(), c())), imp(imp(a(), b()), imp(a(), c()))),
        ),
        taut(
            "implication-transitive",
            3,
            imp(and(imp(a(), b()), imp(b(), c())), imp(a(), c())),
        ),
        taut("implication-reflexive", 1, imp(a(), a())),
        taut("implication-total", 2, or(imp(a(), b()), imp(b(), a()))),
        id("modus-ponens-content", 2, and(a(), imp(a(), b())), and(a(), b())),
        id("import-export", 3, imp(a(), imp(b(), c())), imp(and(a(), b()), c())),
        id("exportation-swap", 3, imp(a(), imp(b(), c())), imp(b(), imp(a(), c()))),
        id("contraposition", 2, imp(a(), b()), imp(not(b()), not(a()))),
        id("disjunctive-syllogism", 2, and(or(a(), b()), not(a())), and(b(), not(a()))),
        taut("explosion", 2, imp(and(a(), not(a())), b())),
    ]
}

pub fn lookup(name: &str) -> Option<Identity> {
    catalogue().into_iter().find(|i| i.name == name)
}

/// Whether the schema holds as a tautology in its metavariables.
pub fn holds_schematically(identity: &Identity) -> Result<bool> {
    let names: Vec<String> = ["a", "b", "c"][..identity.arity.max(1)]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let space = Space::binary(&names)?;
    crate::logic::semantics::equivalent(&space, &identity.lhs, &identity.rhs)
}

/// One formula per truth function reachable over a few binary letters with
/// bounded nesting depth.
#[derive(Debug, Clone)]
pub struct Representatives {
    pub atoms: usize,
    pub depth: usize,
    /// Formula and its truth column packed into a word, shallowest first.
    pub formulas: Vec<(Formula, u64)>,
    mask: u64,
}

impl Representatives {
    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }
}

/// Enumerates [`Representatives`] over `atoms` letters up to `depth`.
///
/// Requires `atoms ≤ 6` so that a truth column fits in one machine word.
pub fn representatives(atoms: usize, depth: usize) -> Result<Representatives> {
    if atoms == 0 || atoms > 6 {
        return Err(Error::InvalidArgument(format!(
            "representatives need 1..=6 atoms, got {atoms}"
        )));
    }
    let names: Vec<String> = (0..atoms).map(|i| format!("p{i}")).collect();
    let space = Space::binary(&names)?;
    let word = |f: &Formula| -> Result<u64> { Ok(first_word(&f.column(&space)?)) };

    let mut seen: HashSet<u64> = HashSet::new();
    let mut reps: Vec<(Formula, u64)> = Vec::new();
    let mut base = vec![Formula::True, Formula::False];
    base.extend((0..atoms).map(Formula::letter));
    for f in base {
        let w = word(&f)?;
        if seen.insert(w) {
            reps.push((f, w));
        }
    }
    let mask = if (1usize << atoms) == 64 {
        u64::MAX
    } else {
        (1u64 << (1usize << atoms)) - 1
    };
    for _ in 0..depth {
        let level = reps.clone();
        for (f, w) in &level {
            if seen.insert(!w & mask) {
                reps.push((Formula::not(f.clone()), !w & mask));
            }
        }
        for (f, wf) in &level {
            for (g, wg) in &level {
                for con in Connective::ALL {
                    let w = con.apply_words(*wf, *wg) & mask;
                    if seen.insert(w) {
                        reps.push((Formula::bin(con, f.clone(), g.clone()), w));
                    }
                }
            }
        }
    }
    Ok(Representatives {
        atoms,
        depth,
        formulas: reps,
        mask,
    })
}

fn first_word(col: &crate::logic::column::Column) -> u64 {
    (0..col.len()).fold(0u64, |acc, i| acc | ((col.get(i) as u64) << i))
}

/// Outcome of an exhaustive identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: &'static str,
    pub instances: u64,
    pub failures: u64,
}

/// Instantiates each metavariable of `identity` with every representative
/// and compares both sides on every world.
pub fn verify_exhaustively(identity: &Identity, reps: &Representatives) -> IdentityReport {
    let k = identity.arity;
    let mask = reps.mask;
    let reps = &reps.formulas;
    let n = reps.len();
    let total = (n as u64).pow(k as u32);
    let mut failures = 0;
    let mut env = vec![0u64; k.max(1)];
    let mut idx = vec![0usize; k];
    for _ in 0..total {
        for (slot, &i) in env.iter_mut().zip(&idx) {
            *slot = reps[i].1;
        }
        if (word_in(&identity.lhs, &env) ^ word_in(&identity.rhs, &env)) & mask != 0 {
            failures += 1;
        }
        for d in idx.iter_mut().rev() {
            *d += 1;
            if *d < n {
                break;
            }
            *d = 0;
        }
    }
    IdentityReport {
        name: identity.name,
        instances: total,
        failures,
    }
}

/// Word-parallel evaluation of a schema whose metavariables are bound to
/// truth columns packed into single words. Bits above the world count are
/// meaningless and masked off by the caller.
fn word_in(f: &Formula, env: &[u64]) -> u64 {
    match f {
        Formula::True => u64::MAX,
        Formula::False => 0,
        Formula::Atom { variable, value } => {
            if *value == 0 {
                env[*variable]
            } else {
                !env[*variable]
            }
        }
        Formula::Not(g) => !word_in(g, env),
        Formula::Bin(c, g, h) => c.apply_words(word_in(g, env), word_in(h, env)),
    }
}
