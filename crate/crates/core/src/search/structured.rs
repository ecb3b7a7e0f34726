//! Structured search for the class of `C_n`, `n` odd.
//!
//! Candidates are `C_n`, `D_n`, and when `3 | n` the disconnected shapes
//! `C_3 ∪ S` and `C_3 ∪ C_m ∪ S` with `S` from the `A`, `B`, `E` families
//! and parameters admitted by the component-count equation. A scan over
//! unions of cycles on divisors of `n` covers the coprime-factor argument.
//! Every candidate is tested by exact polynomial equality, and every member
//! with cycle or `D_m` components is expanded into all its `C_m`/`D_m`
//! variants, each tested again.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::checks::{component_count_bound, third_component_sizes};
use super::SearchStats;
use crate::error::{Error, Result};
use crate::factors::divisors;
use crate::graph::{build_graph, canonical_key, CanonicalKey, Graph, GraphSpec};
use crate::indpoly::{indpoly, PolyCache};
use crate::poly::cycle_poly;

/// Family members `S` on exactly `v` vertices.
fn special_components(v: usize) -> Vec<GraphSpec> {
    let mut out = Vec::new();
    if v >= 5 {
        for m1 in 1..=v - 4 {
            out.push(GraphSpec::A(m1, v - 3 - m1));
            out.push(GraphSpec::E(m1, v - 3 - m1));
        }
    }
    if v >= 6 {
        for m1 in 0..=v - 6 {
            for m2 in 1..=v - 5 - m1 {
                out.push(GraphSpec::B(m1, m2, v - 4 - m1 - m2));
            }
        }
    }
    out
}

/// Multisets of proper divisors `d ≥ 3` of `n` summing to `n` whose combined
/// factor multiset `{f_m : m | d_i, m ≥ 3}` equals that of `I(C_n)`. The
/// result is always empty (only `d = n` contributes `f_n`), and the scan
/// records how many multisets were examined.
fn divisor_multiset_scan(n: usize, stats: &mut SearchStats) -> Vec<Vec<usize>> {
    let parts: Vec<usize> = divisors(n as u64).into_iter().map(|d| d as usize).filter(|&d| d >= 3 && d < n).collect();
    let mut wanted: Vec<usize> = divisors(n as u64).into_iter().map(|d| d as usize).filter(|&d| d >= 3).collect();
    wanted.sort_unstable();
    let mut hits = Vec::new();
    let mut pick = Vec::new();
    fn rec(
        parts: &[usize],
        start: usize,
        left: usize,
        wanted: &[usize],
        pick: &mut Vec<usize>,
        hits: &mut Vec<Vec<usize>>,
        stats: &mut SearchStats,
    ) {
        if left == 0 {
            stats.divisor_multisets += 1;
            let mut got: Vec<usize> = pick
                .iter()
                .flat_map(|&d| divisors(d as u64).into_iter().map(|m| m as usize).filter(|&m| m >= 3))
                .collect();
            got.sort_unstable();
            if got == wanted {
                hits.push(pick.clone());
            }
            return;
        }
        for i in start..parts.len() {
            if parts[i] <= left {
                pick.push(parts[i]);
                rec(parts, i, left - parts[i], wanted, pick, hits, stats);
                pick.pop();
            }
        }
    }
    rec(&parts, 0, n, &wanted, &mut pick, &mut hits, stats);
    hits
}

/// The initial candidate list, before polynomial testing.
pub fn structured_candidates(n: usize, stats: &mut SearchStats) -> Vec<GraphSpec> {
    let mut out = vec![GraphSpec::Cycle(n)];
    if n >= 4 {
        out.push(GraphSpec::Dn(n));
    }
    if n.is_multiple_of(3) && n > 3 {
        let mut consider = |prefix: Vec<GraphSpec>, v: usize, r: usize| {
            for s in special_components(v) {
                stats.generated += 1;
                let admitted = component_count_bound(n, &s).expect("family spec is valid");
                if admitted == [r] {
                    let mut parts = prefix.clone();
                    parts.push(s);
                    out.push(GraphSpec::Union(parts));
                } else {
                    stats.pruned += 1;
                }
            }
        };
        consider(vec![GraphSpec::Cycle(3)], n - 3, 2);
        for m in third_component_sizes(n) {
            if n >= m + 3 {
                consider(vec![GraphSpec::Cycle(3), GraphSpec::Cycle(m)], n - 3 - m, 3);
            }
        }
    }
    for hit in divisor_multiset_scan(n, stats) {
        out.push(GraphSpec::Union(hit.into_iter().map(GraphSpec::Cycle).collect()));
    }
    out
}

/// All variants of `spec` with each `C_m`/`D_m` component (`m ≥ 4`) set
/// either way.
fn cycle_variants(spec: &GraphSpec) -> Vec<GraphSpec> {
    let parts = match spec {
        GraphSpec::Union(parts) => parts.clone(),
        other => vec![other.clone()],
    };
    let mut variants = vec![Vec::new()];
    for p in parts {
        let options = match p {
            GraphSpec::Cycle(m) | GraphSpec::Dn(m) if m >= 4 => vec![GraphSpec::Cycle(m), GraphSpec::Dn(m)],
            other => vec![other],
        };
        variants = variants
            .into_iter()
            .flat_map(|v: Vec<GraphSpec>| {
                options.iter().map(move |o| {
                    let mut w = v.clone();
                    w.push(o.clone());
                    w
                })
            })
            .collect();
    }
    variants
        .into_iter()
        .map(|mut parts| if parts.len() == 1 { parts.pop().expect("one part") } else { GraphSpec::Union(parts) })
        .collect()
}

fn test_all(
    specs: Vec<GraphSpec>,
    n: usize,
    cache: &PolyCache,
    stats: &mut SearchStats,
) -> Result<Vec<(GraphSpec, Graph)>> {
    let target = cycle_poly(n as u64);
    stats.polynomial_tested += specs.len() as u64;
    let results: Vec<Result<Option<(GraphSpec, Graph)>>> = specs
        .into_par_iter()
        .map(|spec| {
            let g = build_graph(&spec)?;
            Ok((indpoly(&g, cache)? == target).then_some((spec, g)))
        })
        .collect();
    results.into_iter().filter_map(Result::transpose).collect()
}

/// Members of the class of `C_n` found by the structured search, keyed and
/// sorted by canonical key. `seed` only shuffles the order candidates are
/// tested in.
pub fn structured_search(
    n: usize,
    cache: &PolyCache,
    seed: Option<u64>,
) -> Result<(Vec<(CanonicalKey, Graph)>, SearchStats)> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("structured search needs odd n >= 3, got {n}")));
    }
    let mut stats = SearchStats::default();
    let mut candidates = structured_candidates(n, &mut stats);
    if let Some(seed) = seed {
        candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let mut members: BTreeMap<CanonicalKey, (GraphSpec, Graph)> = BTreeMap::new();
    for (spec, g) in test_all(candidates, n, cache, &mut stats)? {
        members.entry(canonical_key(&g)?).or_insert((spec, g));
    }
    // expand C_m / D_m substitutions until nothing new appears
    let mut frontier: Vec<GraphSpec> = members.values().map(|(s, _)| s.clone()).collect();
    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        for spec in frontier.iter().flat_map(cycle_variants) {
            let key = canonical_key(&build_graph(&spec)?)?;
            if !members.contains_key(&key) && !fresh.contains(&spec) {
                fresh.push(spec);
            }
        }
        let mut next = Vec::new();
        for (spec, g) in test_all(fresh, n, cache, &mut stats)? {
            let key = canonical_key(&g)?;
            if let std::collections::btree_map::Entry::Vacant(e) = members.entry(key) {
                e.insert((spec.clone(), g));
                next.push(spec);
            }
        }
        frontier = next;
    }
    let out = members.into_iter().map(|(k, (_, g))| (k, g)).collect();
    Ok((out, stats))
}
