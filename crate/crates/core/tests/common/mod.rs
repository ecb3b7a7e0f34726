//! Identity suites shared by the integration tests and the acceptance runner.
//! Each suite returns a short summary on success and the first
//! counterexample on failure.

#![allow(dead_code)]

use std::collections::BTreeSet;

use grapheq::factors::{euler_phi, f_poly_by_division, min_poly_2cos};
use grapheq::graph::{subgraph_census, NamedGraph};
use grapheq::indpoly::{independence_number, indpoly_edge_rule_check};
use grapheq::poly::{cycle_coeff, cycle_poly, is_unicyclic_poly, path_coeff, path_poly};
use grapheq::search::{alpha_formula, class_search, structural_checks, ClassMode, SearchOptions};
use grapheq::{build_graph, indpoly, indpoly_bruteforce, Graph, GraphSpec, IntPoly, PolyCache};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Outcome = Result<String, String>;

pub fn spec(s: &str) -> GraphSpec {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn graph(s: &str) -> Graph {
    build_graph(&spec(s)).unwrap()
}

pub fn poly_of(s: &str) -> IntPoly {
    indpoly(&graph(s), &PolyCache::new()).unwrap()
}

pub fn x() -> IntPoly {
    IntPoly::x()
}

/// `G(n, p)` with `p` drawn per graph, so sparse and dense graphs both occur.
pub fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let p: f64 = rng.gen_range(0.1..0.7);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Vertex- and edge-deletion identities on random graphs, every vertex and
/// every edge, evaluated with the brute-force counter.
pub fn deletion_identities(count: usize, max_n: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cache = PolyCache::new();
    let (mut vertex_checks, mut edge_checks) = (0, 0);
    for _ in 0..count {
        let g = random_graph(&mut rng, max_n);
        let whole = indpoly_bruteforce(&g).unwrap();
        for u in 0..g.n_vertices() {
            let minus = indpoly_bruteforce(&g.delete_vertex(u).unwrap()).unwrap();
            let closed = indpoly_bruteforce(&g.delete_closed_neighborhood(u).unwrap()).unwrap();
            check(whole == &minus + &(&x() * &closed), || format!("vertex rule fails at {u} in {g}"))?;
            vertex_checks += 1;
        }
        for (u, v) in g.edges() {
            let (minus, outside) = g.delete_edge_closure(u, v).unwrap();
            let lhs = &indpoly_bruteforce(&minus).unwrap() - &(&x().pow(2) * &indpoly_bruteforce(&outside).unwrap());
            check(whole == lhs, || format!("edge rule fails at {u}-{v} in {g}"))?;
            check(indpoly_edge_rule_check(&g, u, v, &cache).unwrap(), || format!("edge rule check {u}-{v} in {g}"))?;
            edge_checks += 1;
        }
    }
    Ok(format!("{count} graphs, {vertex_checks} vertex and {edge_checks} edge deletions"))
}

pub fn cycle_equals_dn(max_n: usize) -> Outcome {
    let cache = PolyCache::new();
    for n in 4..=max_n {
        let c = indpoly(&graph(&format!("C{n}")), &cache).unwrap();
        let d = indpoly(&graph(&format!("D{n}")), &cache).unwrap();
        check(c == d && c == cycle_poly(n as u64), || format!("I(C{n}) != I(D{n})"))?;
    }
    Ok(format!("4 <= n <= {max_n}"))
}

/// `I(A(m1,m2)) = I(E(m1,m2)) = I(E(m2,m1)) = I(P_{m1+m2+2}) + x I(P_m1) I(P_m2)`.
pub fn a_e_identities(max_m: usize) -> Outcome {
    let cache = PolyCache::new();
    for m1 in 1..=max_m {
        for m2 in 1..=max_m {
            let a = indpoly(&graph(&format!("A({m1},{m2})")), &cache).unwrap();
            let e12 = indpoly(&graph(&format!("E({m1},{m2})")), &cache).unwrap();
            let e21 = indpoly(&graph(&format!("E({m2},{m1})")), &cache).unwrap();
            check(a == e12 && a == e21, || format!("A({m1},{m2}) vs E"))?;
            let split = &path_poly((m1 + m2 + 2) as u64) + &(&x() * &(&path_poly(m1 as u64) * &path_poly(m2 as u64)));
            check(a == split, || format!("A({m1},{m2}) vertex split"))?;
        }
    }
    Ok(format!("1 <= m1, m2 <= {max_m}"))
}

/// The two-case split of `I(B(m1,m2,m3))` at the fork vertex.
pub fn b_identity(max_m1: usize, max_m: usize) -> Outcome {
    let cache = PolyCache::new();
    let p = |k: usize| path_poly(k as u64);
    for m1 in 0..=max_m1 {
        for m2 in 1..=max_m {
            for m3 in 1..=max_m {
                let b = indpoly(&graph(&format!("B({m1},{m2},{m3})")), &cache).unwrap();
                let head = &cycle_poly(m1 as u64 + 3) * &(&p(m2) * &p(m3));
                let inner = if m1 >= 1 { cycle_poly(m1 as u64 + 2) } else { p(2) };
                let tail = &x() * &(&inner * &(&p(m2 - 1) * &p(m3 - 1)));
                check(b == &head + &tail, || format!("B({m1},{m2},{m3}) split"))?;
            }
        }
    }
    Ok(format!("m1 <= {max_m1}, 1 <= m2, m3 <= {max_m}"))
}

/// Closed-form independence numbers of A, E and B against the computed ones,
/// every parity combination up to `max_m`.
pub fn alpha_formulas(max_m: usize) -> Outcome {
    let cache = PolyCache::new();
    let mut specs = Vec::new();
    for m1 in 1..=max_m {
        for m2 in 1..=max_m {
            specs.push(format!("A({m1},{m2})"));
            specs.push(format!("E({m1},{m2})"));
        }
    }
    for m1 in 0..=max_m {
        for m2 in 1..=max_m {
            for m3 in 1..=max_m {
                specs.push(format!("B({m1},{m2},{m3})"));
            }
        }
    }
    for s in &specs {
        let want = alpha_formula(&spec(s)).unwrap();
        let got = independence_number(&graph(s), &cache).unwrap();
        check(want == got, || format!("alpha({s}) formula {want}, computed {got}"))?;
    }
    Ok(format!("{} family members, m <= {max_m}", specs.len()))
}

/// Clauses (i)-(vii) and the shape of disconnected members on every member
/// of every computed class.
pub fn member_identities(max_n: usize) -> Outcome {
    let cache = PolyCache::new();
    let mut members = 0;
    for n in (3..=max_n).step_by(2) {
        let r = class_search(n, ClassMode::Structured, &cache, &SearchOptions::default()).map_err(|e| e.to_string())?;
        for m in &r.members {
            let g = m.key.to_graph();
            let c = structural_checks(&g, n);
            check(c.all_pass(), || format!("C{n} member {} fails {:?}", m.description, c.failed()))?;
            let census = subgraph_census(&g);
            check(census.triangles as usize == g.triangle_count(), || format!("triangle count of {}", m.description))?;
            disconnected_shape(&g, n).map_err(|e| format!("C{n} member {}: {e}", m.description))?;
            members += 1;
        }
    }
    Ok(format!("{members} members, odd n <= {max_n}"))
}

/// Exactly one `C_3`, all degrees at most 3, at most one component outside
/// `{C_m, D_m}`.
pub fn disconnected_shape(g: &Graph, n: usize) -> Result<(), String> {
    let comps = g.connected_components();
    if comps.len() == 1 {
        return Ok(());
    }
    let c3 = comps.iter().filter(|c| grapheq::is_isomorphic(c, &Graph::cycle(3)).unwrap()).count();
    check(c3 == 1, || format!("{c3} triangle components"))?;
    check(g.max_degree() <= 3, || "max degree above 3".into())?;
    let odd_ones = comps
        .iter()
        .filter(|c| {
            let v = c.n_vertices();
            let cyc = grapheq::is_isomorphic(c, &Graph::cycle(v)).unwrap();
            let dn = v >= 4 && grapheq::is_isomorphic(c, &graph(&format!("D{v}"))).unwrap();
            !cyc && !dn
        })
        .count();
    check(odd_ones <= 1, || format!("{odd_ones} components outside C_m, D_m"))?;
    check(g.n_vertices() == n, || "wrong order".into())
}

/// Independent `k`-sets of `C_n` and `P_n` counted over all vertex subsets.
pub fn closed_form_counts(max_n: usize) -> Outcome {
    for n in 3..=max_n {
        let cycle = indpoly_bruteforce(&Graph::cycle(n)).unwrap();
        let path = indpoly_bruteforce(&Graph::path(n)).unwrap();
        for k in 0..=n {
            check(cycle.coeff(k) == cycle_coeff(n as u64, k as u64), || format!("i_{k}(C{n})"))?;
            check(path.coeff(k) == path_coeff(n as u64, k as u64), || format!("i_{k}(P{n})"))?;
        }
    }
    Ok(format!("3 <= n <= {max_n}, all k"))
}

/// Corpus of unicyclic polynomials: every `f_m` and `I(C_m)`, odd `m <= max_m`.
pub fn unicyclic_corpus(max_m: u64) -> Vec<IntPoly> {
    let mut out = Vec::new();
    for m in (3..=max_m).step_by(2) {
        out.push(f_poly_by_division(m).unwrap());
        out.push(cycle_poly(m));
    }
    out
}

/// Products of corpus members stay unicyclic, and so do exact quotients.
pub fn unicyclic_closure(max_m: u64) -> Outcome {
    let corpus = unicyclic_corpus(max_m);
    let mut pairs = 0;
    for p in &corpus {
        check(is_unicyclic_poly(p), || format!("{p} is not unicyclic"))?;
        for q in &corpus {
            let prod = p * q;
            check(is_unicyclic_poly(&prod), || format!("({p})({q}) is not unicyclic"))?;
            check(prod.exact_div(q).as_ref() == Ok(p), || format!("({p})({q}) / ({q})"))?;
            if let Ok(quot) = p.exact_div(q) {
                check(is_unicyclic_poly(&quot), || format!("({p}) / ({q}) is not unicyclic"))?;
            }
            pairs += 1;
        }
    }
    Ok(format!("{} polynomials, {pairs} ordered pairs", corpus.len()))
}

/// `deg f_n = φ(n)/2`, `ψ_2n` monic, `f_n` unicyclic with positive leading
/// coefficient.
pub fn factor_shape(max_n: u64) -> Outcome {
    for n in (3..=max_n).step_by(2) {
        let f = f_poly_by_division(n).unwrap();
        check(f.degree() == Some(euler_phi(n) as usize / 2), || format!("deg f_{n}"))?;
        check(is_unicyclic_poly(&f), || format!("f_{n} not unicyclic"))?;
        check(f.leading().is_some_and(|c| *c > BigInt::from(0)), || format!("f_{n} leading sign"))?;
        let psi = min_poly_2cos(2 * n).unwrap();
        check(psi.leading() == Some(&BigInt::from(1)), || format!("psi_{} not monic", 2 * n))?;
    }
    Ok(format!("odd n <= {max_n}"))
}

/// Exact division of `I(C_n)` by `I(C_k)` succeeds iff `k | n`.
pub fn divisibility(max_n: u64) -> Outcome {
    let mut pairs = 0;
    for n in (3..=max_n).step_by(2) {
        for k in (3..=max_n).step_by(2) {
            let divides = cycle_poly(n).exact_div(&cycle_poly(k)).is_ok();
            check(divides == (n % k == 0), || format!("k = {k}, n = {n}: exact division {divides}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs, odd k, n <= {max_n}"))
}

/// Every family spec and named graph on at most `max_v` vertices.
pub fn family_corpus(max_v: usize) -> Vec<GraphSpec> {
    let mut out: Vec<GraphSpec> = NamedGraph::ALL.into_iter().map(GraphSpec::Named).collect();
    for v in 3..=max_v {
        out.push(GraphSpec::Cycle(v));
        if v >= 4 {
            out.push(GraphSpec::Dn(v));
        }
        for m1 in 1..v.saturating_sub(3) {
            out.push(GraphSpec::A(m1, v - 3 - m1));
            out.push(GraphSpec::E(m1, v - 3 - m1));
        }
        if v >= 6 {
            for m1 in 0..=v - 6 {
                for m2 in 1..=v - 5 - m1 {
                    out.push(GraphSpec::B(m1, m2, v - 4 - m1 - m2));
                }
            }
        }
    }
    out
}

/// Canonical keys of a list of specs.
pub fn keys(specs: &[String]) -> BTreeSet<grapheq::CanonicalKey> {
    specs.iter().map(|s| grapheq::canonical_key(&graph(s)).unwrap()).collect()
}
