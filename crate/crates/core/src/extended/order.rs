use crate::error::{Error, Result};
use crate::logic::column::Column;
use crate::logic::formula::Formula;
use crate::logic::space::Space;
use crate::syntax::render;

/// Formulas ordered by implication under a fixed context:
/// `f ⪯ g` iff `(Γ ∧ f) ⇒ g` is a tautology.
///
/// Logically equivalent elements (under the context) share one node. Nodes
/// are numbered by first appearance in [`OrderedSet::elements`].
#[derive(Debug, Clone)]
pub struct OrderedSet {
    space: Space,
    context: Formula,
    elements: Vec<Formula>,
    relation: Vec<Vec<bool>>,
    node_of: Vec<usize>,
    nodes: Vec<Vec<usize>>,
    node_columns: Vec<Column>,
    cover_edges: Vec<(usize, usize)>,
    levels: Vec<usize>,
}

/// Orders `fs` under `gamma`. With `bounds`, `⊥` is prepended and `⊤`
/// appended.
pub fn build_order(
    space: &Space,
    fs: &[Formula],
    gamma: &Formula,
    bounds: bool,
) -> Result<OrderedSet> {
    let ctx = gamma.column(space)?;
    if ctx.none() {
        return Err(Error::ContradictoryContext(
            "the ordering context must be satisfiable".into(),
        ));
    }
    let mut elements = Vec::with_capacity(fs.len() + 2);
    if bounds {
        elements.push(Formula::False);
    }
    elements.extend(fs.iter().cloned());
    if bounds {
        elements.push(Formula::True);
    }
    let cols = elements
        .iter()
        .map(|f| Ok(&f.column(space)? & &ctx))
        .collect::<Result<Vec<Column>>>()?;
    let relation: Vec<Vec<bool>> = cols
        .iter()
        .map(|f| cols.iter().map(|g| f.is_subset(g)).collect())
        .collect();

    let mut node_of = vec![0; elements.len()];
    let mut nodes: Vec<Vec<usize>> = Vec::new();
    let mut node_columns: Vec<Column> = Vec::new();
    for (i, col) in cols.iter().enumerate() {
        match node_columns.iter().position(|c| c == col) {
            Some(n) => {
                node_of[i] = n;
                nodes[n].push(i);
            }
            None => {
                node_of[i] = nodes.len();
                nodes.push(vec![i]);
                node_columns.push(col.clone());
            }
        }
    }

    let m = nodes.len();
    let below = |i: usize, j: usize| i != j && node_columns[i].is_subset(&node_columns[j]);
    let mut cover_edges = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if below(i, j) && !(0..m).any(|k| below(i, k) && below(k, j)) {
                cover_edges.push((i, j));
            }
        }
    }

    // Longest path from the minimal nodes. Strict order by column size is a
    // topological order.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&n| (node_columns[n].count_ones(), n));
    let mut levels = vec![0; m];
    for &j in &order {
        for &(i, k) in &cover_edges {
            if k == j {
                levels[j] = levels[j].max(levels[i] + 1);
            }
        }
    }

    Ok(OrderedSet {
        space: space.clone(),
        context: gamma.clone(),
        elements,
        relation,
        node_of,
        nodes,
        node_columns,
        cover_edges,
        levels,
    })
}

impl OrderedSet {
    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn context(&self) -> &Formula {
        &self.context
    }

    /// Input formulas, including the bounds when requested.
    pub fn elements(&self) -> &[Formula] {
        &self.elements
    }

    /// `relation()[i][j]` is `elements[i] ⪯ elements[j]`.
    pub fn relation(&self) -> &[Vec<bool>] {
        &self.relation
    }

    /// Element indices grouped by logical equivalence.
    pub fn nodes(&self) -> &[Vec<usize>] {
        &self.nodes
    }

    pub fn node_of(&self, element: usize) -> usize {
        self.node_of[element]
    }

    /// Transitive reduction of the strict order on nodes, as
    /// `(lower, higher)` pairs.
    pub fn cover_edges(&self) -> &[(usize, usize)] {
        &self.cover_edges
    }

    /// Longest-path depth of each node above the minimal nodes.
    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn level_count(&self) -> usize {
        self.levels.iter().max().map_or(0, |l| l + 1)
    }

    /// Node order `i ⪯ j`.
    pub fn precedes(&self, i: usize, j: usize) -> bool {
        self.node_columns[i].is_subset(&self.node_columns[j])
    }

    /// Node holding formulas equivalent to `f` under the context, if any.
    pub fn find(&self, f: &Formula) -> Result<Option<usize>> {
        let ctx = self.context.column(&self.space)?;
        let col = &f.column(&self.space)? & &ctx;
        Ok(self.node_columns.iter().position(|c| *c == col))
    }

    /// Greatest lower bound of two nodes within the set.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.nodes.len())
            .filter(|&k| self.precedes(k, i) && self.precedes(k, j))
            .collect();
        lower
            .iter()
            .copied()
            .find(|&k| lower.iter().all(|&l| self.precedes(l, k)))
    }

    /// Least upper bound of two nodes within the set.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.nodes.len())
            .filter(|&k| self.precedes(i, k) && self.precedes(j, k))
            .collect();
        upper
            .iter()
            .copied()
            .find(|&k| upper.iter().all(|&l| self.precedes(k, l)))
    }

    /// Label of a node: its first element in ASCII syntax.
    pub fn label(&self, node: usize) -> String {
        render(&self.elements[self.nodes[node][0]], &self.space)
    }
}

/// Checks that disjoining a common exclusive `c` preserves `a ⪯ b` under
/// `gamma`.
///
/// `c` must be exclusive with `a` and `b`, and `a`, `b` exclusive unless
/// they are equivalent (the reflexive case).
pub fn order_preservation_check(
    space: &Space,
    a: &Formula,
    b: &Formula,
    c: &Formula,
    gamma: &Formula,
) -> Result<bool> {
    let ctx = gamma.column(space)?;
    if ctx.none() {
        return Err(Error::ContradictoryContext(
            "the ordering context must be satisfiable".into(),
        ));
    }
    let [ca, cb, cc] = [a, b, c].map(|f| f.column(space).map(|col| &col & &ctx));
    let (ca, cb, cc) = (ca?, cb?, cc?);
    let disjoint = |x: &Column, y: &Column| (x & y).none();
    if !disjoint(&ca, &cc) || !disjoint(&cb, &cc) || (ca != cb && !disjoint(&ca, &cb)) {
        return Err(Error::NotMutuallyExclusive(
            "order preservation needs pairwise exclusive propositions".into(),
        ));
    }
    let premise = ca.is_subset(&cb);
    let conclusion = (&ca | &cc).is_subset(&(&cb | &cc));
    Ok(!premise || conclusion)
}

/// Renders the cover graph as a DOT digraph drawn bottom-up, one `rank=same`
/// group per level.
pub fn export_dot(o: &OrderedSet) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
    for n in 0..o.nodes.len() {
        let label = o.label(n).replace('\\', "\\\\").replace('"', "\\\"");
        out.push_str(&format!("  n{n} [label=\"{label}\"];\n"));
    }
    for level in 0..o.level_count() {
        let members: Vec<String> = (0..o.nodes.len())
            .filter(|&n| o.levels[n] == level)
            .map(|n| format!("n{n};"))
            .collect();
        out.push_str(&format!("  {{ rank=same; {} }}\n", members.join(" ")));
    }
    for &(i, j) in &o.cover_edges {
        out.push_str(&format!("  n{i} -> n{j};\n"));
    }
    out.push_str("}\n");
    out
}
