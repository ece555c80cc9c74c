//! Correlation quantifiers over splits of the variables into blocks.

use std::f64::consts::LN_2;

use crate::belief::{BeliefWeb, BlockIndex};
use crate::error::{Error, Result};
use crate::logic::space::Space;
use crate::numeric::{fsum, xlogx};

/// A partition of the variables of a space into at least two blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    blocks: Vec<BlockIndex>,
}

impl Split {
    pub fn new(space: &Space, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if blocks.len() < 2 {
            return Err(Error::BlockCount {
                expected: 2,
                found: blocks.len(),
            });
        }
        let mut covered = vec![false; space.len()];
        let mut out = Vec::with_capacity(blocks.len());
        for b in blocks {
            if b.is_empty() {
                return Err(Error::InvalidArgument("split has an empty block".into()));
            }
            let block = BlockIndex::new(space, b)?;
            for &v in block.indices() {
                if covered[v] {
                    return Err(Error::InvalidArgument(format!(
                        "variable `{}` appears in two blocks",
                        space.variables()[v].name()
                    )));
                }
                covered[v] = true;
            }
            out.push(block);
        }
        if let Some(v) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidArgument(format!(
                "variable `{}` is in no block",
                space.variables()[v].name()
            )));
        }
        Ok(Split { blocks: out })
    }

    /// Parses `x1|x2,x3|x4`: blocks separated by `|`, variables by `,`.
    pub fn parse(space: &Space, text: &str) -> Result<Self> {
        let blocks = text
            .split('|')
            .map(|block| {
                block
                    .split(',')
                    .map(str::trim)
                    .filter(|n| !n.is_empty())
                    .map(|n| {
                        space
                            .variable_index(n)
                            .ok_or_else(|| Error::Unbound(format!("unknown variable `{n}`")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Split::new(space, blocks)
    }

    /// One block per variable.
    pub fn units(space: &Space) -> Result<Self> {
        Split::new(space, (0..space.len()).map(|v| vec![v]).collect())
    }

    pub fn blocks(&self) -> &[BlockIndex] {
        &self.blocks
    }

    /// The same split with blocks in reverse order.
    pub fn reversed(&self) -> Split {
        Split {
            blocks: self.blocks.iter().rev().cloned().collect(),
        }
    }
}

/// `H = −Σ p ln p` in nats.
pub fn shannon_entropy(w: &BeliefWeb) -> f64 {
    (-fsum(w.weights().iter().map(|&p| xlogx(p)))).max(0.0)
}

/// Converts nats to bits.
pub fn to_bits(nats: f64) -> f64 {
    nats / LN_2
}

/// Block marginals and, per world, the index of each block's value tuple.
fn marginals(w: &BeliefWeb, split: &Split) -> Result<(Vec<BeliefWeb>, Vec<Vec<usize>>)> {
    let margs = split
        .blocks
        .iter()
        .map(|b| w.marginalize(b))
        .collect::<Result<Vec<_>>>()?;
    let space = w.space();
    let tuples = space
        .worlds()?
        .map(|world| {
            split
                .blocks
                .iter()
                .map(|b| b.tuple_index(space, &world))
                .collect()
        })
        .collect();
    Ok((margs, tuples))
}

/// `KL(joint ‖ ∏ block marginals)`: the correlations the split separates.
pub fn npi(w: &BeliefWeb, split: &Split) -> Result<f64> {
    let (margs, tuples) = marginals(w, split)?;
    let mut terms = Vec::with_capacity(tuples.len());
    for (&p, t) in w.weights().iter().zip(&tuples) {
        if p > 0.0 {
            let product: f64 = margs.iter().zip(t).map(|(m, &k)| m.weight(k)).product();
            // the product of marginals is positive wherever the joint is
            debug_assert!(product > 0.0);
            terms.push(p * (p / product).ln());
        }
    }
    Ok(fsum(terms).max(0.0))
}

/// Total correlation over the blocks of a split.
pub fn total_correlation(w: &BeliefWeb, split: &Split) -> Result<f64> {
    npi(w, split)
}

/// Total correlation as `Σ H(block marginal) − H(joint)`.
pub fn total_correlation_by_entropies(w: &BeliefWeb, split: &Split) -> Result<f64> {
    let margs = split
        .blocks
        .iter()
        .map(|b| w.marginalize(b))
        .collect::<Result<Vec<_>>>()?;
    Ok(fsum(margs.iter().map(shannon_entropy)) - shannon_entropy(w))
}

/// Mutual information between the two blocks of a bipartite split.
pub fn mutual_information(w: &BeliefWeb, split: &Split) -> Result<f64> {
    if split.blocks.len() != 2 {
        return Err(Error::BlockCount {
            expected: 2,
            found: split.blocks.len(),
        });
    }
    npi(w, split)
}

/// A permutation of the worlds of a space: world `i` moves to `image[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorldRelabeling {
    image: Vec<usize>,
}

impl WorldRelabeling {
    pub fn new(space: &Space, image: Vec<usize>) -> Result<Self> {
        let n = space.world_count()?;
        if image.len() != n {
            return Err(Error::NotBijective(format!(
                "expected {n} images, found {}",
                image.len()
            )));
        }
        let mut hit = vec![false; n];
        for &j in &image {
            if j >= n || hit[j] {
                return Err(Error::NotBijective(format!(
                    "world {j} is hit twice or out of range"
                )));
            }
            hit[j] = true;
        }
        Ok(WorldRelabeling { image })
    }

    /// Builds the world permutation induced by one permutation of value
    /// tuples per block.
    pub fn from_block_permutations(
        space: &Space,
        split: &Split,
        perms: &[Vec<usize>],
    ) -> Result<Self> {
        if perms.len() != split.blocks.len() {
            return Err(Error::BlockCount {
                expected: split.blocks.len(),
                found: perms.len(),
            });
        }
        for (b, perm) in split.blocks.iter().zip(perms) {
            let size: usize = b.indices().iter().map(|&v| space.variables()[v].size()).product();
            let mut hit = vec![false; size];
            if perm.len() != size {
                return Err(Error::NotBijective(format!(
                    "block permutation has {} entries for {size} tuples",
                    perm.len()
                )));
            }
            for &j in perm {
                if j >= size || hit[j] {
                    return Err(Error::NotBijective(format!(
                        "block tuple {j} is hit twice or out of range"
                    )));
                }
                hit[j] = true;
            }
        }
        let image = space
            .worlds()?
            .map(|w| {
                let mut values = w.values().to_vec();
                for (b, perm) in split.blocks.iter().zip(perms) {
                    let mut t = perm[b.tuple_index(space, &w)];
                    for &v in b.indices().iter().rev() {
                        let size = space.variables()[v].size();
                        values[v] = t % size;
                        t /= size;
                    }
                }
                space.world_index(&crate::logic::space::World::new(values))
            })
            .collect();
        WorldRelabeling::new(space, image)
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Whether the permutation acts on each block's values independently of
    /// the other blocks.
    pub fn is_within_blocks(&self, space: &Space, split: &Split) -> Result<bool> {
        let worlds: Vec<_> = space.worlds()?.collect();
        for b in &split.blocks {
            let size: usize = b.indices().iter().map(|&v| space.variables()[v].size()).product();
            let mut map: Vec<Option<usize>> = vec![None; size];
            for (i, w) in worlds.iter().enumerate() {
                let from = b.tuple_index(space, w);
                let to = b.tuple_index(space, &worlds[self.image[i]]);
                match map[from] {
                    None => map[from] = Some(to),
                    Some(t) if t != to => return Ok(false),
                    Some(_) => {}
                }
            }
        }
        Ok(true)
    }
}

/// Relabels the web and returns how much the n-partite information moved.
/// Relabelings that mix blocks are rejected.
pub fn split_invariance_check(
    w: &BeliefWeb,
    split: &Split,
    relabeling: &WorldRelabeling,
) -> Result<f64> {
    if relabeling.image.len() != w.weights().len() {
        return Err(Error::NotBijective("relabeling has the wrong size".into()));
    }
    if !relabeling.is_within_blocks(w.space(), split)? {
        return Err(Error::NotWithinBlock);
    }
    let moved = w.permuted(&relabeling.image)?;
    Ok((npi(w, split)? - npi(&moved, split)?).abs())
}
