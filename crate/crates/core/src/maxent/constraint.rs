use crate::belief::BlockIndex;
use crate::error::{Error, Result};
use crate::logic::formula::Formula;
use crate::logic::space::{Space, World};

/// A piece of information used to update a prior.
#[derive(Debug, Clone, PartialEq)]
pub enum Constraint {
    /// `Σ_x P(x)·values[x] = target`, with `values` in world order.
    Expectation { values: Vec<f64>, target: f64 },
    /// `P(domain) = target`.
    SubdomainMass { domain: Formula, target: f64 },
    /// The block is known to take the observed value tuple.
    PointData {
        block: BlockIndex,
        observed: Vec<usize>,
    },
}

impl Constraint {
    /// Expectation of a function of the world.
    pub fn expectation<F: FnMut(&World) -> f64>(space: &Space, f: F, target: f64) -> Result<Self> {
        Ok(Constraint::Expectation {
            values: space.tabulate(f)?,
            target,
        })
    }

    /// Checks targets, table lengths and bindings against a space.
    pub fn validate(&self, space: &Space) -> Result<()> {
        match self {
            Constraint::Expectation { values, target } => {
                let n = space.world_count()?;
                if values.len() != n {
                    return Err(Error::InvalidArgument(format!(
                        "expectation lists {} values for {n} worlds",
                        values.len()
                    )));
                }
                if !target.is_finite() || values.iter().any(|v| !v.is_finite()) {
                    return Err(Error::InvalidArgument(
                        "expectation values and target must be finite".into(),
                    ));
                }
                Ok(())
            }
            Constraint::SubdomainMass { domain, target } => {
                domain.check_bound(space)?;
                if !(0.0..=1.0).contains(target) {
                    return Err(Error::InvalidArgument(format!(
                        "mass target {target} is not in [0, 1]"
                    )));
                }
                Ok(())
            }
            Constraint::PointData { block, observed } => {
                if block.indices().iter().any(|&v| v >= space.len()) {
                    return Err(Error::InvalidArgument("data block out of range".into()));
                }
                block.check_tuple(space, observed)
            }
        }
    }

    /// The constraint function and target for the dual solver; `None` for
    /// point data.
    pub(crate) fn linear(&self, space: &Space) -> Result<Option<(Vec<f64>, f64)>> {
        Ok(match self {
            Constraint::Expectation { values, target } => Some((values.clone(), *target)),
            Constraint::SubdomainMass { domain, target } => {
                let col = domain.column(space)?;
                let values = (0..col.len())
                    .map(|i| if col.get(i) { 1.0 } else { 0.0 })
                    .collect();
                Some((values, *target))
            }
            Constraint::PointData { .. } => None,
        })
    }
}

/// Normalization, implicit, plus a list of constraints.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConstraintSet {
    pub constraints: Vec<Constraint>,
}

impl ConstraintSet {
    pub fn new(constraints: Vec<Constraint>) -> Self {
        ConstraintSet { constraints }
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }
}

impl FromIterator<Constraint> for ConstraintSet {
    fn from_iter<I: IntoIterator<Item = Constraint>>(iter: I) -> Self {
        ConstraintSet::new(iter.into_iter().collect())
    }
}
