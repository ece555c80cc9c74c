use crate::error::{Error, Result};
use crate::logic::column::Column;
use crate::logic::formula::Formula;
use crate::logic::space::{Space, World};
use crate::numeric::fsum;

/// Tolerance on the total mass of a web.
pub const MASS_TOLERANCE: f64 = 1e-12;

/// An ordered subset of the variables of a space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockIndex {
    indices: Vec<usize>,
}

impl BlockIndex {
    pub fn new(space: &Space, indices: Vec<usize>) -> Result<Self> {
        for (k, &i) in indices.iter().enumerate() {
            if i >= space.len() {
                return Err(Error::InvalidArgument(format!(
                    "variable index {i} out of range"
                )));
            }
            if indices[..k].contains(&i) {
                return Err(Error::InvalidArgument(format!(
                    "variable `{}` listed twice",
                    space.variables()[i].name()
                )));
            }
        }
        Ok(BlockIndex { indices })
    }

    pub fn from_names<S: AsRef<str>>(space: &Space, names: &[S]) -> Result<Self> {
        let indices = names
            .iter()
            .map(|n| {
                space.variable_index(n.as_ref()).ok_or_else(|| {
                    Error::Unbound(format!("unknown variable `{}`", n.as_ref()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        BlockIndex::new(space, indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Index of the block's value tuple within the block sub-space.
    pub fn tuple_index(&self, space: &Space, world: &World) -> usize {
        self.indices.iter().fold(0, |acc, &v| {
            acc * space.variables()[v].size() + world.value(v)
        })
    }

    /// Conjunction of `variable = value` atoms for a value tuple.
    pub fn formula(&self, observed: &[usize]) -> Formula {
        Formula::conjunction(
            self.indices
                .iter()
                .zip(observed)
                .map(|(&v, &x)| Formula::atom(v, x)),
        )
    }

    /// Checks that a tuple of domain indices fits the block.
    pub fn check_tuple(&self, space: &Space, observed: &[usize]) -> Result<()> {
        if observed.len() != self.indices.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} observed values, found {}",
                self.indices.len(),
                observed.len()
            )));
        }
        for (&v, &x) in self.indices.iter().zip(observed) {
            let var = &space.variables()[v];
            if x >= var.size() {
                return Err(Error::Unbound(format!(
                    "value #{x} of `{}`",
                    var.name()
                )));
            }
        }
        Ok(())
    }
}

/// A normalized probability assignment over the worlds of a space.
#[derive(Debug, Clone, PartialEq)]
pub struct BeliefWeb {
    space: Space,
    weights: Vec<f64>,
}

impl BeliefWeb {
    /// Validates non-negativity and unit mass within [`MASS_TOLERANCE`].
    pub fn new(space: Space, weights: Vec<f64>) -> Result<Self> {
        let n = space.world_count()?;
        if weights.len() != n {
            return Err(Error::InvalidWeb(format!(
                "expected {n} weights, found {}",
                weights.len()
            )));
        }
        if let Some(i) = weights.iter().position(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidWeb(format!(
                "weight {i} is {}; weights must be finite and non-negative",
                weights[i]
            )));
        }
        let total = fsum(weights.iter().copied());
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidWeb(format!("weights sum to {total}, not 1")));
        }
        Ok(BeliefWeb { space, weights })
    }

    /// Divides non-negative weights by their total.
    pub fn normalized(space: Space, mut weights: Vec<f64>) -> Result<Self> {
        if let Some(i) = weights.iter().position(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidWeb(format!(
                "weight {i} is {}; weights must be finite and non-negative",
                weights[i]
            )));
        }
        let total = fsum(weights.iter().copied());
        if total <= 0.0 {
            return Err(Error::InvalidWeb("weights have zero total".into()));
        }
        for w in &mut weights {
            *w /= total;
        }
        BeliefWeb::new(space, weights)
    }

    pub fn uniform(space: Space) -> Result<Self> {
        let n = space.world_count()?;
        BeliefWeb::new(space, vec![1.0 / n as f64; n])
    }

    /// Independent combination of webs over disjoint variables.
    pub fn product(factors: &[&BeliefWeb]) -> Result<Self> {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| Error::InvalidArgument("product of no webs".into()))?;
        let mut acc = (*first).clone();
        for f in rest {
            let space = acc.space.product(&f.space)?;
            space.check_capacity()?;
            let mut weights = Vec::with_capacity(acc.weights.len() * f.weights.len());
            for &p in &acc.weights {
                weights.extend(f.weights.iter().map(|&q| p * q));
            }
            acc = BeliefWeb::normalized(space, weights)?;
        }
        Ok(acc)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    /// Weights in world order.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, world: usize) -> f64 {
        self.weights[world]
    }

    pub(crate) fn mass(&self, column: &Column) -> f64 {
        fsum(column.ones().map(|i| self.weights[i]))
    }

    /// Probability of a formula: total weight of the worlds where it holds.
    pub fn probability(&self, f: &Formula) -> Result<f64> {
        Ok(self.mass(&f.column(&self.space)?).min(1.0))
    }

    /// `P(f | given)`; zero-mass contexts are an error.
    pub fn conditional(&self, f: &Formula, given: &Formula) -> Result<f64> {
        let ctx = given.column(&self.space)?;
        let den = self.mass(&ctx);
        if den <= 0.0 {
            return Err(if ctx.none() {
                Error::ContradictoryContext("conditioning on an unsatisfiable context".into())
            } else {
                Error::ZeroMassContext
            });
        }
        let num = self.mass(&(&f.column(&self.space)? & &ctx));
        Ok((num / den).min(1.0))
    }

    /// `Σ f(world)·weight(world)`.
    pub fn expected_value<F: FnMut(&World) -> f64>(&self, mut f: F) -> Result<f64> {
        Ok(fsum(
            self.space
                .worlds()?
                .zip(&self.weights)
                .map(|(w, &p)| f(&w) * p),
        ))
    }

    /// Expectation of a function tabulated in world order.
    pub fn expectation_of(&self, values: &[f64]) -> Result<f64> {
        if values.len() != self.weights.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} values, found {}",
                self.weights.len(),
                values.len()
            )));
        }
        Ok(fsum(values.iter().zip(&self.weights).map(|(a, p)| a * p)))
    }

    /// Law of total probability: the web over the kept variables.
    pub fn marginalize(&self, keep: &BlockIndex) -> Result<BeliefWeb> {
        if keep.is_empty() {
            return Err(Error::InvalidArgument("marginalize needs a non-empty block".into()));
        }
        let sub = self.space.subspace(keep.indices())?;
        let mut acc: Vec<Vec<f64>> = vec![Vec::new(); sub.world_count()?];
        for (w, &p) in self.space.worlds()?.zip(&self.weights) {
            acc[keep.tuple_index(&self.space, &w)].push(p);
        }
        let weights = acc.into_iter().map(fsum).collect();
        BeliefWeb::normalized(sub, weights)
    }

    /// Bayes' rule: the joint posterior `q(rest | observed)·δ(block, observed)`
    /// over the same space.
    pub fn bayes_condition(&self, block: &BlockIndex, observed: &[usize]) -> Result<BeliefWeb> {
        block.check_tuple(&self.space, observed)?;
        let target = block.tuple_index_of(&self.space, observed);
        let mut mask = vec![false; self.weights.len()];
        for (i, w) in self.space.worlds()?.enumerate() {
            mask[i] = block.tuple_index(&self.space, &w) == target;
        }
        let evidence = fsum(
            self.weights
                .iter()
                .zip(&mask)
                .filter(|(_, &m)| m)
                .map(|(&p, _)| p),
        );
        if evidence <= 0.0 {
            return Err(Error::ZeroEvidence);
        }
        let weights = self
            .weights
            .iter()
            .zip(&mask)
            .map(|(&p, &m)| if m { p / evidence } else { 0.0 })
            .collect();
        BeliefWeb::normalized(self.space.clone(), weights)
    }

    /// Applies a permutation of world indices: the result has weight
    /// `self.weight(i)` at world `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<BeliefWeb> {
        let n = self.weights.len();
        let mut weights = vec![f64::NAN; n];
        if perm.len() != n {
            return Err(Error::NotBijective(format!(
                "expected {n} images, found {}",
                perm.len()
            )));
        }
        for (i, &j) in perm.iter().enumerate() {
            if j >= n || !weights[j].is_nan() {
                return Err(Error::NotBijective(format!("world {j} hit twice or out of range")));
            }
            weights[j] = self.weights[i];
        }
        BeliefWeb::new(self.space.clone(), weights)
    }
}

impl BlockIndex {
    fn tuple_index_of(&self, space: &Space, observed: &[usize]) -> usize {
        self.indices
            .iter()
            .zip(observed)
            .fold(0, |acc, (&v, &x)| acc * space.variables()[v].size() + x)
    }
}
