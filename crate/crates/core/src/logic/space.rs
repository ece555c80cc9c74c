use std::fmt;

use crate::error::{Error, Result};

/// Upper bound on the number of worlds any exhaustive operation will visit.
pub const MAX_WORLDS: u64 = 1 << 24;

/// Labels used for the two values of a propositional (binary) variable.
///
/// `T` precedes `F`, so two binary atoms enumerate as `TT, TF, FT, FF`.
pub const BINARY_DOMAIN: [&str; 2] = ["T", "F"];

/// A named variable with a finite, ordered domain of at least two labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Variable {
    name: String,
    domain: Vec<String>,
}

impl Variable {
    pub fn new<S: Into<String>, I, L>(name: S, domain: I) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: Into<String>,
    {
        let name = name.into();
        let domain: Vec<String> = domain.into_iter().map(Into::into).collect();
        if !is_identifier(&name) {
            return Err(Error::InvalidSpace(format!("`{name}` is not a valid variable name")));
        }
        if domain.len() < 2 {
            return Err(Error::InvalidSpace(format!(
                "variable `{name}` needs at least two values"
            )));
        }
        for (i, label) in domain.iter().enumerate() {
            if label.is_empty() || !label.chars().all(is_value_char) {
                return Err(Error::InvalidSpace(format!(
                    "`{label}` is not a valid value label for `{name}`"
                )));
            }
            if domain[..i].contains(label) {
                return Err(Error::InvalidSpace(format!(
                    "value `{label}` repeated in the domain of `{name}`"
                )));
            }
        }
        Ok(Variable { name, domain })
    }

    /// A propositional letter: domain `[T, F]`.
    pub fn binary<S: Into<String>>(name: S) -> Result<Self> {
        Variable::new(name, BINARY_DOMAIN)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn size(&self) -> usize {
        self.domain.len()
    }

    pub fn is_binary(&self) -> bool {
        self.domain.len() == 2 && self.domain[0] == "T" && self.domain[1] == "F"
    }

    pub fn value_index(&self, label: &str) -> Option<usize> {
        self.domain.iter().position(|d| d == label)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn is_value_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '.'
}

/// A finite set of variables; its worlds are the cartesian product of the
/// domains, enumerated lexicographically (first variable most significant).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Space {
    variables: Vec<Variable>,
    world_count: u128,
}

impl Space {
    pub fn new(variables: Vec<Variable>) -> Result<Self> {
        if variables.is_empty() {
            return Err(Error::InvalidSpace("a space needs at least one variable".into()));
        }
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].iter().any(|u| u.name == v.name) {
                return Err(Error::InvalidSpace(format!("variable `{}` declared twice", v.name)));
            }
        }
        let world_count = variables
            .iter()
            .try_fold(1u128, |acc, v| acc.checked_mul(v.size() as u128))
            .ok_or_else(|| Error::InvalidSpace("world count overflows".into()))?;
        Ok(Space {
            variables,
            world_count,
        })
    }

    /// A space of propositional letters, each with domain `[T, F]`.
    pub fn binary<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let vars = names
            .iter()
            .map(|n| Variable::binary(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Space::new(vars)
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn variable(&self, index: usize) -> Option<&Variable> {
        self.variables.get(index)
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    /// Exact number of worlds, which may exceed [`MAX_WORLDS`].
    pub fn world_count_exact(&self) -> u128 {
        self.world_count
    }

    /// Number of worlds, after checking the exhaustive-evaluation guard.
    pub fn world_count(&self) -> Result<usize> {
        self.check_capacity()?;
        Ok(self.world_count as usize)
    }

    pub fn check_capacity(&self) -> Result<()> {
        if self.world_count > MAX_WORLDS as u128 {
            Err(Error::Capacity {
                worlds: self.world_count,
                limit: MAX_WORLDS,
            })
        } else {
            Ok(())
        }
    }

    /// Index of a world in the normative enumeration order.
    pub fn world_index(&self, world: &World) -> usize {
        debug_assert_eq!(world.values.len(), self.variables.len());
        world
            .values
            .iter()
            .zip(&self.variables)
            .fold(0usize, |acc, (&v, var)| acc * var.size() + v)
    }

    /// The world at `index`; panics if the index is out of range.
    pub fn world(&self, mut index: usize) -> World {
        assert!((index as u128) < self.world_count, "world index out of range");
        let mut values = vec![0; self.variables.len()];
        for (slot, var) in values.iter_mut().zip(&self.variables).rev() {
            *slot = index % var.size();
            index /= var.size();
        }
        World { values }
    }

    /// All worlds in normative order.
    pub fn worlds(&self) -> Result<Worlds<'_>> {
        let total = self.world_count()?;
        Ok(Worlds {
            space: self,
            next: 0,
            total,
            current: vec![0; self.variables.len()],
        })
    }

    /// Tabulates a function of the world, in world order.
    pub fn tabulate<F: FnMut(&World) -> f64>(&self, mut f: F) -> Result<Vec<f64>> {
        Ok(self.worlds()?.map(|w| f(&w)).collect())
    }

    /// The sub-space made of the listed variables, in the listed order.
    pub fn subspace(&self, indices: &[usize]) -> Result<Space> {
        let vars = indices
            .iter()
            .map(|&i| {
                self.variables
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::InvalidArgument(format!("variable index {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        Space::new(vars)
    }

    /// Concatenation of two spaces; variable names must not clash.
    pub fn product(&self, other: &Space) -> Result<Space> {
        let mut vars = self.variables.clone();
        vars.extend(other.variables.iter().cloned());
        Space::new(vars)
    }

    /// Renders a world as `name=value` pairs.
    pub fn describe(&self, world: &World) -> String {
        world
            .values
            .iter()
            .zip(&self.variables)
            .map(|(&v, var)| format!("{}={}", var.name, var.domain[v]))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A total assignment of one domain index to every variable of a space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct World {
    values: Vec<usize>,
}

impl World {
    pub fn new(values: Vec<usize>) -> Self {
        World { values }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn value(&self, variable: usize) -> usize {
        self.values[variable]
    }

    /// Projection onto the listed variables.
    pub fn project(&self, indices: &[usize]) -> World {
        World {
            values: indices.iter().map(|&i| self.values[i]).collect(),
        }
    }
}

impl fmt::Display for World {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Odometer over the worlds of a space.
pub struct Worlds<'a> {
    space: &'a Space,
    next: usize,
    total: usize,
    current: Vec<usize>,
}

impl Iterator for Worlds<'_> {
    type Item = World;

    fn next(&mut self) -> Option<World> {
        if self.next >= self.total {
            return None;
        }
        let out = World {
            values: self.current.clone(),
        };
        self.next += 1;
        for (slot, var) in self.current.iter_mut().zip(&self.space.variables).rev() {
            *slot += 1;
            if *slot < var.size() {
                break;
            }
            *slot = 0;
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.total - self.next;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Worlds<'_> {}
