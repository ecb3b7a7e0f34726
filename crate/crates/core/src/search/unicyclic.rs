//! Connected unicyclic graphs up to isomorphism.
//!
//! A connected unicyclic graph is a cycle with a rooted tree hanging from
//! each cycle vertex. Rooted trees are generated in canonical form (children
//! sorted), and a sequence of trees around the cycle is kept only when it is
//! the smallest among its rotations and reflections, so every graph appears
//! exactly once.
//!
//! Generation can be restricted by the degree excess `Σ_v (deg v - 2)^2`,
//! which is how the exhaustive search keeps the candidate set small.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_UNICYCLIC_VERTICES: usize = 21;

/// Rooted tree in canonical form: children sorted in decreasing order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
struct Tree(Vec<Tree>);

impl Tree {
    fn size(&self) -> usize {
        1 + self.0.iter().map(Tree::size).sum::<usize>()
    }

    /// Append this tree below `root` (already a vertex of `edges`' graph).
    fn attach(&self, root: usize, next: &mut usize, edges: &mut Vec<(usize, usize)>) {
        for child in &self.0 {
            let v = *next;
            *next += 1;
            edges.push((root, v));
            child.attach(v, next, edges);
        }
    }
}

/// Rooted trees by size, with the excess they contribute. `up` is the
/// number of edges at the root that are outside the tree: 1 for a tree
/// hanging below a parent, 2 for a tree rooted on the cycle.
struct TreeGen {
    budget: usize,
    memo: HashMap<(usize, usize), Vec<(Tree, usize)>>,
}

impl TreeGen {
    fn new(budget: usize) -> Self {
        TreeGen { budget, memo: HashMap::new() }
    }

    fn trees(&mut self, size: usize, up: usize) -> Vec<(Tree, usize)> {
        if let Some(t) = self.memo.get(&(size, up)) {
            return t.clone();
        }
        let mut pool = Vec::new();
        for s in 1..size {
            pool.extend(self.trees(s, 1));
        }
        pool.sort();
        let mut out = Vec::new();
        let mut children = Vec::new();
        self.choose(&pool, pool.len(), size - 1, 0, up, &mut children, &mut out);
        self.memo.insert((size, up), out.clone());
        out
    }

    /// Multisets of children from `pool[..limit]`, picked in decreasing
    /// order, with `remaining` vertices still to place.
    #[allow(clippy::too_many_arguments)]
    fn choose(
        &self,
        pool: &[(Tree, usize)],
        limit: usize,
        remaining: usize,
        excess: usize,
        up: usize,
        children: &mut Vec<Tree>,
        out: &mut Vec<(Tree, usize)>,
    ) {
        if remaining == 0 {
            let d = children.len() + up;
            let own = d.abs_diff(2).pow(2);
            if excess + own <= self.budget {
                out.push((Tree(children.clone()), excess + own));
            }
            return;
        }
        for i in (0..limit).rev() {
            let (t, e) = &pool[i];
            let s = t.size();
            if s > remaining || excess + e > self.budget {
                continue;
            }
            children.push(t.clone());
            self.choose(pool, i + 1, remaining - s, excess + e, up, children, out);
            children.pop();
        }
    }
}

/// True when `seq` is the smallest of its rotations and reflections.
fn is_dihedral_min(seq: &[&Tree]) -> bool {
    let c = seq.len();
    (0..c).all(|r| {
        let fwd = (0..c).map(|j| seq[(r + j) % c]);
        let bwd = (0..c).map(|j| seq[(r + c - j) % c]);
        seq.iter().copied().cmp(fwd).is_le() && seq.iter().copied().cmp(bwd).is_le()
    })
}

/// Visit every connected unicyclic graph on `v` vertices whose degree
/// excess `Σ (deg - 2)^2` is at most `max_excess`. The excess is passed
/// along with each graph.
pub fn for_each_unicyclic(v: usize, max_excess: usize, mut visit: impl FnMut(Graph, usize)) -> Result<()> {
    if !(3..=MAX_UNICYCLIC_VERTICES).contains(&v) {
        return Err(Error::InvalidArgument(format!(
            "unicyclic enumeration needs 3 <= v <= {MAX_UNICYCLIC_VERTICES}, got {v}"
        )));
    }
    let mut gen = TreeGen::new(max_excess);
    for c in 3..=v {
        let mut roots: Vec<(Tree, usize)> = Vec::new();
        for s in 1..=v - c + 1 {
            roots.extend(gen.trees(s, 2));
        }
        roots.sort();
        let mut seq: Vec<usize> = Vec::with_capacity(c);
        place(&roots, c, v, 0, max_excess, &mut seq, &mut visit);
    }
    Ok(())
}

fn place(
    roots: &[(Tree, usize)],
    c: usize,
    remaining: usize,
    excess: usize,
    max_excess: usize,
    seq: &mut Vec<usize>,
    visit: &mut impl FnMut(Graph, usize),
) {
    let slots = c - seq.len();
    if slots == 0 {
        if remaining == 0 {
            let trees: Vec<&Tree> = seq.iter().map(|&i| &roots[i].0).collect();
            if is_dihedral_min(&trees) {
                visit(build(&trees), excess);
            }
        }
        return;
    }
    // the first tree is the smallest in the sequence
    let first = seq.first().copied().unwrap_or(0);
    for (i, (t, e)) in roots.iter().enumerate().skip(first) {
        let s = t.size();
        if s + (slots - 1) > remaining || excess + e > max_excess {
            continue;
        }
        seq.push(i);
        place(roots, c, remaining - s, excess + e, max_excess, seq, visit);
        seq.pop();
    }
}

fn build(trees: &[&Tree]) -> Graph {
    let c = trees.len();
    let mut edges: Vec<(usize, usize)> = (0..c).map(|i| (i, (i + 1) % c)).collect();
    let mut next = c;
    for (i, t) in trees.iter().enumerate() {
        t.attach(i, &mut next, &mut edges);
    }
    Graph::new(next, edges).expect("generated unicyclic graph is simple")
}

/// All connected unicyclic graphs on `v` vertices, one per isomorphism class.
pub fn enumerate_unicyclic(v: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for_each_unicyclic(v, usize::MAX, |g, _| out.push(g))?;
    Ok(out)
}
