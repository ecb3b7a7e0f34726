//! Exhaustive searches for the class of `C_n` that do not rely on the case
//! analysis behind the structured search.
//!
//! Both searches use the first coefficients of the target only. Equal `i_1`
//! and `i_2` force `n` vertices and `n` edges. For such a graph
//!
//! ```text
//! i_3 = C(n,3) - n(n-2) + Σ_v C(deg v, 2) - t
//! ```
//!
//! where `t` counts triangles, so `Σ C(deg v, 2) - t` is fixed by `i_3`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::unicyclic::for_each_unicyclic;
use super::SearchStats;
use crate::error::{Error, Result};
use crate::graph::{canonical_key, CanonicalKey, Graph};
use crate::indpoly::{indpoly, PolyCache};
use crate::poly::{binomial, IntPoly};

pub const MAX_ALL_GRAPHS: usize = 9;

/// `Σ C(deg v, 2) - t` required of an `n`-vertex, `n`-edge graph with the
/// target's `i_3`.
fn path_triangle_target(target: &IntPoly, n: usize) -> i64 {
    let n_i = n as i64;
    let t = target.coeff(3) - binomial(n_i, 3) + BigInt::from(n_i * (n_i - 2));
    t.to_i64().expect("small n")
}

struct EdgeSearch<'a> {
    n: usize,
    pairs: Vec<(usize, usize)>,
    target: &'a [u64],
    goal: i64,
    found: Vec<Graph>,
    stats: SearchStats,
}

impl EdgeSearch<'_> {
    /// Extend with edges from `pairs[next..]`. `adj` are neighbour masks and
    /// `score` is the running `Σ C(deg, 2) - t`, which never decreases as
    /// edges are added.
    fn dfs(&mut self, adj: &mut [u16], score: i64, next: usize, chosen: &mut Vec<usize>) {
        if chosen.len() == self.n {
            self.stats.generated += 1;
            if score == self.goal {
                self.leaf(adj, chosen);
            }
            return;
        }
        let need = self.n - chosen.len();
        if self.pairs.len() - next < need {
            return;
        }
        for i in next..=self.pairs.len() - need {
            let (u, v) = self.pairs[i];
            let gain = adj[u].count_ones() + adj[v].count_ones() - (adj[u] & adj[v]).count_ones();
            let s = score + gain as i64;
            if s > self.goal {
                self.stats.pruned += 1;
                continue;
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            chosen.push(i);
            self.dfs(adj, s, i + 1, chosen);
            chosen.pop();
            adj[u] &= !(1 << v);
            adj[v] &= !(1 << u);
        }
    }

    fn leaf(&mut self, adj: &[u16], chosen: &[usize]) {
        self.stats.polynomial_tested += 1;
        let mut counts = vec![0u64; self.n + 1];
        for mask in 0u32..1 << self.n {
            let mut rest = mask;
            let mut ok = true;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                if adj[v] as u32 & mask != 0 {
                    ok = false;
                    break;
                }
                rest &= rest - 1;
            }
            if ok {
                counts[mask.count_ones() as usize] += 1;
            }
        }
        while counts.last() == Some(&0) {
            counts.pop();
        }
        if counts == self.target {
            let edges = chosen.iter().map(|&i| self.pairs[i]);
            self.found.push(Graph::new(self.n, edges).expect("valid edge set"));
        }
    }
}

/// Every graph on `n` vertices and `n` edges with `I(G) = target`.
pub fn all_graphs_search(n: usize, target: &IntPoly) -> Result<(Vec<Graph>, SearchStats)> {
    if !(1..=MAX_ALL_GRAPHS).contains(&n) {
        return Err(Error::InvalidArgument(format!("all-graphs search supports 1 <= n <= {MAX_ALL_GRAPHS}, got {n}")));
    }
    let target_counts: Vec<u64> = target
        .coeffs()
        .iter()
        .map(|c| c.to_u64().ok_or_else(|| Error::InvalidArgument("target is not a counting polynomial".into())))
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    if pairs.len() < n {
        return Ok((Vec::new(), SearchStats::default()));
    }
    let goal = path_triangle_target(target, n);
    // split on the first edge so branches can run in parallel
    let branches: Vec<(Vec<Graph>, SearchStats)> = (0..=pairs.len() - n)
        .into_par_iter()
        .map(|first| {
            let mut s = EdgeSearch {
                n,
                pairs: pairs.clone(),
                target: &target_counts,
                goal,
                found: Vec::new(),
                stats: SearchStats::default(),
            };
            let (u, v) = pairs[first];
            let mut adj = vec![0u16; n];
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            s.dfs(&mut adj, 0, first + 1, &mut vec![first]);
            (s.found, s.stats)
        })
        .collect();
    let mut stats = SearchStats::default();
    let mut by_key: BTreeMap<CanonicalKey, Graph> = BTreeMap::new();
    for (found, st) in branches {
        stats.add(&st);
        for g in found {
            by_key.entry(canonical_key(&g)?).or_insert(g);
        }
    }
    Ok((by_key.into_values().collect(), stats))
}

/// Largest `k` with `(1 + 3x)^k` dividing `p`.
fn triangle_factor_multiplicity(p: &IntPoly) -> usize {
    let f3 = IntPoly::from_i64(&[1, 3]);
    let mut rest = p.clone();
    let mut k = 0;
    while let Ok(q) = rest.exact_div(&f3) {
        rest = q;
        k += 1;
    }
    k
}

struct Component {
    graph: Graph,
    poly: IntPoly,
    size: usize,
    /// `Σ (deg - 2)^2 - 2t`
    delta: i64,
}

/// Every disjoint union of connected unicyclic graphs on `n` vertices with
/// `I(G) = target`.
///
/// Writing `Σ_v (deg v - 2)^2 = 2(Σ C(deg v, 2) - t) - 2n + 2t` and fixing
/// `Σ C(deg, 2) - t` from `i_3` gives a budget on the per-component
/// `δ = Σ (deg - 2)^2 - 2t`: the triangle is the only connected unicyclic
/// graph with negative `δ` (it is `-2`), and at most as many triangles occur
/// as `1 + 3x` divides the target. With `divisor_pruning`, components whose
/// polynomial does not divide the target are dropped before the multiset
/// search, and partial products must keep dividing it.
pub fn unicyclic_multiset_search(
    n: usize,
    target: &IntPoly,
    cache: &PolyCache,
    divisor_pruning: bool,
) -> Result<(Vec<Graph>, SearchStats)> {
    if !(3..=super::unicyclic::MAX_UNICYCLIC_VERTICES).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "unicyclic multiset search supports 3 <= n <= {}, got {n}",
            super::unicyclic::MAX_UNICYCLIC_VERTICES
        )));
    }
    let mut stats = SearchStats::default();
    let delta_total = 2 * (path_triangle_target(target, n) - n as i64);
    let triangles_max = triangle_factor_multiplicity(target) as i64;
    // bound on δ for any component other than the triangle
    let delta_cap = delta_total + 2 * triangles_max;
    if delta_cap < 0 {
        return Ok((Vec::new(), stats));
    }
    let excess_cap = (delta_cap + 2) as usize;

    let mut raw: Vec<(Graph, usize)> = Vec::new();
    for v in 3..=n {
        for_each_unicyclic(v, excess_cap, |g, e| raw.push((g, e)))?;
    }
    stats.generated = raw.len() as u64;
    let tested: Vec<Result<Option<Component>>> = raw
        .into_par_iter()
        .map(|(graph, excess)| {
            let t = graph.triangle_count() as i64;
            let delta = excess as i64 - 2 * t;
            if delta > delta_cap {
                return Ok(None);
            }
            let poly = indpoly(&graph, cache)?;
            if divisor_pruning && !target.divisible_by(&poly) {
                return Ok(None);
            }
            Ok(Some(Component { size: graph.n_vertices(), graph, poly, delta }))
        })
        .collect();
    let mut comps = Vec::new();
    for c in tested {
        match c? {
            Some(c) => comps.push(c),
            None => stats.pruned += 1,
        }
    }

    let mut found = Vec::new();
    let mut pick = Vec::new();
    multiset(&comps, 0, n, delta_total, target, divisor_pruning, &mut pick, &mut found, &mut stats);
    let mut by_key: BTreeMap<CanonicalKey, Graph> = BTreeMap::new();
    for g in found {
        by_key.entry(canonical_key(&g)?).or_insert(g);
    }
    Ok((by_key.into_values().collect(), stats))
}

#[allow(clippy::too_many_arguments)]
fn multiset(
    comps: &[Component],
    start: usize,
    vertices_left: usize,
    delta_left: i64,
    rest: &IntPoly,
    divisor_pruning: bool,
    pick: &mut Vec<usize>,
    found: &mut Vec<Graph>,
    stats: &mut SearchStats,
) {
    if vertices_left == 0 {
        if delta_left != 0 {
            return;
        }
        stats.polynomial_tested += 1;
        let done = if divisor_pruning {
            rest.degree() == Some(0) && rest.coeff(0) == BigInt::from(1)
        } else {
            let product: IntPoly = pick.iter().map(|&i| &comps[i].poly).product();
            &product == rest
        };
        if done {
            found.push(Graph::union_all(pick.iter().map(|&i| &comps[i].graph)));
        }
        return;
    }
    for i in start..comps.len() {
        let c = &comps[i];
        if c.size > vertices_left {
            continue;
        }
        let next = if divisor_pruning {
            match rest.exact_div(&c.poly) {
                Ok(q) => q,
                Err(_) => continue,
            }
        } else {
            rest.clone()
        };
        pick.push(i);
        multiset(comps, i, vertices_left - c.size, delta_left - c.delta, &next, divisor_pruning, pick, found, stats);
        pick.pop();
    }
}
