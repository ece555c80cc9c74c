use crate::error::{Error, Result};
use crate::logic::column::Column;
use crate::logic::space::{Space, World};

/// The binary connectives that are not projections or constants.
///
/// Together with `⊤`, `⊥`, the two atom projections and their negations they
/// exhaust the sixteen binary truth functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connective {
    And,
    Or,
    Implies,
    ImpliedBy,
    Iff,
    Xor,
    Nand,
    Nor,
    NotImplies,
    NotImpliedBy,
}

impl Connective {
    pub const ALL: [Connective; 10] = [
        Connective::And,
        Connective::Or,
        Connective::Nand,
        Connective::Nor,
        Connective::Xor,
        Connective::Iff,
        Connective::Implies,
        Connective::ImpliedBy,
        Connective::NotImplies,
        Connective::NotImpliedBy,
    ];

    pub fn apply(self, p: bool, q: bool) -> bool {
        match self {
            Connective::And => p && q,
            Connective::Or => p || q,
            Connective::Implies => !p || q,
            Connective::ImpliedBy => p || !q,
            Connective::Iff => p == q,
            Connective::Xor => p != q,
            Connective::Nand => !(p && q),
            Connective::Nor => !(p || q),
            Connective::NotImplies => p && !q,
            Connective::NotImpliedBy => !p && q,
        }
    }

    /// Bit-parallel version of [`Connective::apply`].
    pub fn apply_words(self, p: u64, q: u64) -> u64 {
        match self {
            Connective::And => p & q,
            Connective::Or => p | q,
            Connective::Implies => !p | q,
            Connective::ImpliedBy => p | !q,
            Connective::Iff => !(p ^ q),
            Connective::Xor => p ^ q,
            Connective::Nand => !(p & q),
            Connective::Nor => !(p | q),
            Connective::NotImplies => p & !q,
            Connective::NotImpliedBy => !p & q,
        }
    }

    /// ASCII operator used by the pretty-printer.
    pub fn symbol(self) -> &'static str {
        match self {
            Connective::And => "&",
            Connective::Or => "|",
            Connective::Implies => "->",
            Connective::ImpliedBy => "<-",
            Connective::Iff => "<->",
            Connective::Xor => "^",
            Connective::Nand => "!&",
            Connective::Nor => "!|",
            Connective::NotImplies => "!->",
            Connective::NotImpliedBy => "!<-",
        }
    }
}

/// A propositional formula over equality atoms `variable = value`.
///
/// Atoms carry variable and value indices; whether they are in range is
/// checked against a [`Space`] at evaluation time.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom { variable: usize, value: usize },
    Not(Box<Formula>),
    Bin(Connective, Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(variable: usize, value: usize) -> Formula {
        Formula::Atom { variable, value }
    }

    /// `variable = T` for a binary variable.
    pub fn letter(variable: usize) -> Formula {
        Formula::atom(variable, 0)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn bin(c: Connective, f: Formula, g: Formula) -> Formula {
        Formula::Bin(c, Box::new(f), Box::new(g))
    }

    pub fn and(f: Formula, g: Formula) -> Formula {
        Formula::bin(Connective::And, f, g)
    }

    pub fn or(f: Formula, g: Formula) -> Formula {
        Formula::bin(Connective::Or, f, g)
    }

    pub fn implies(f: Formula, g: Formula) -> Formula {
        Formula::bin(Connective::Implies, f, g)
    }

    pub fn iff(f: Formula, g: Formula) -> Formula {
        Formula::bin(Connective::Iff, f, g)
    }

    pub fn nand(f: Formula, g: Formula) -> Formula {
        Formula::bin(Connective::Nand, f, g)
    }

    /// Left-nested conjunction; `⊤` for an empty list.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(fs: I) -> Formula {
        fs.into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; `⊥` for an empty list.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(fs: I) -> Formula {
        fs.into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::False)
    }

    /// Checks every atom against the space.
    pub fn check_bound(&self, space: &Space) -> Result<()> {
        match self {
            Formula::True | Formula::False => Ok(()),
            Formula::Atom { variable, value } => match space.variable(*variable) {
                None => Err(Error::Unbound(format!("variable #{variable}"))),
                Some(v) if *value >= v.size() => {
                    Err(Error::Unbound(format!("value #{value} of `{}`", v.name())))
                }
                Some(_) => Ok(()),
            },
            Formula::Not(f) => f.check_bound(space),
            Formula::Bin(_, f, g) => {
                f.check_bound(space)?;
                g.check_bound(space)
            }
        }
    }

    /// Truth value at a single world.
    pub fn evaluate(&self, world: &World) -> Result<bool> {
        Ok(match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom { variable, value } => {
                let v = world
                    .values()
                    .get(*variable)
                    .ok_or_else(|| Error::Unbound(format!("variable #{variable}")))?;
                *v == *value
            }
            Formula::Not(f) => !f.evaluate(world)?,
            Formula::Bin(c, f, g) => c.apply(f.evaluate(world)?, g.evaluate(world)?),
        })
    }

    /// Truth column over every world of the space, evaluated bit-parallel.
    pub fn column(&self, space: &Space) -> Result<Column> {
        self.check_bound(space)?;
        let n = space.world_count()?;
        let atoms = AtomColumns::new(space, n);
        Ok(self.column_with(&atoms))
    }

    fn column_with(&self, atoms: &AtomColumns<'_>) -> Column {
        match self {
            Formula::True => Column::constant(atoms.len, true),
            Formula::False => Column::constant(atoms.len, false),
            Formula::Atom { variable, value } => atoms.atom(*variable, *value),
            Formula::Not(f) => !&f.column_with(atoms),
            Formula::Bin(c, f, g) => {
                let c = *c;
                f.column_with(atoms)
                    .zip_with(&g.column_with(atoms), |p, q| c.apply_words(p, q))
            }
        }
    }

    /// Evaluates the formula treating atom `(i, 0)` as a metavariable bound to
    /// `env[i]`. Used to instantiate identity schemas.
    pub fn column_in(&self, env: &[Column]) -> Column {
        let len = env.first().map_or(0, Column::len);
        match self {
            Formula::True => Column::constant(len, true),
            Formula::False => Column::constant(len, false),
            Formula::Atom { variable, value } => {
                let c = &env[*variable];
                if *value == 0 {
                    c.clone()
                } else {
                    !c
                }
            }
            Formula::Not(f) => !&f.column_in(env),
            Formula::Bin(c, f, g) => {
                let c = *c;
                f.column_in(env)
                    .zip_with(&g.column_in(env), |p, q| c.apply_words(p, q))
            }
        }
    }

    /// Nesting depth; atoms and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom { .. } => 0,
            Formula::Not(f) => 1 + f.depth(),
            Formula::Bin(_, f, g) => 1 + f.depth().max(g.depth()),
        }
    }

    /// Replaces every atom `(i, 0)` by `subs[i]`.
    pub fn substitute(&self, subs: &[Formula]) -> Formula {
        match self {
            Formula::Atom { variable, value: 0 } => subs[*variable].clone(),
            Formula::Atom { .. } | Formula::True | Formula::False => self.clone(),
            Formula::Not(f) => Formula::not(f.substitute(subs)),
            Formula::Bin(c, f, g) => Formula::bin(*c, f.substitute(subs), g.substitute(subs)),
        }
    }

    /// Adds `offset` to every variable index, moving the formula into a
    /// product space where its variables come after `offset` others.
    pub fn shifted(&self, offset: usize) -> Formula {
        match self {
            Formula::Atom { variable, value } => Formula::atom(variable + offset, *value),
            Formula::True | Formula::False => self.clone(),
            Formula::Not(f) => Formula::not(f.shifted(offset)),
            Formula::Bin(c, f, g) => Formula::bin(*c, f.shifted(offset), g.shifted(offset)),
        }
    }

    /// Whether the formula is built only from `↑`, atoms and constants.
    pub fn is_nand_only(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom { .. } => true,
            Formula::Not(_) => false,
            Formula::Bin(Connective::Nand, f, g) => f.is_nand_only() && g.is_nand_only(),
            Formula::Bin(..) => false,
        }
    }
}

/// Lazily built truth columns of every atom of a space.
struct AtomColumns<'a> {
    space: &'a Space,
    len: usize,
}

impl<'a> AtomColumns<'a> {
    fn new(space: &'a Space, len: usize) -> Self {
        AtomColumns { space, len }
    }

    fn atom(&self, variable: usize, value: usize) -> Column {
        // Within the world enumeration, variable `k` repeats each value for
        // `stride` consecutive worlds, where stride is the product of the
        // sizes of later variables.
        let vars = self.space.variables();
        let stride: usize = vars[variable + 1..].iter().map(|v| v.size()).product();
        let size = vars[variable].size();
        Column::from_fn(self.len, |i| (i / stride) % size == value)
    }
}
