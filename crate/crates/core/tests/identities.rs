mod common;

use common::*;
use grapheq::graph::{is_isomorphic, NamedGraph};
use grapheq::{build_graph, indpoly, indpoly_bruteforce, GraphSpec, PolyCache};

fn ok(o: Outcome) {
    if let Err(e) = o {
        panic!("{e}");
    }
}

#[test]
fn vertex_and_edge_deletion() {
    ok(deletion_identities(200, 14, 7));
}

#[test]
fn cycles_and_dn() {
    ok(cycle_equals_dn(60));
}

#[test]
fn a_and_e_families() {
    ok(a_e_identities(8));
}

#[test]
fn b_family_split() {
    ok(b_identity(4, 5));
}

#[test]
fn independence_numbers() {
    ok(alpha_formulas(8));
}

#[test]
fn closed_form_coefficients() {
    ok(closed_form_counts(16));
}

#[test]
fn unicyclic_polynomials_closed() {
    ok(unicyclic_closure(45));
}

#[test]
fn factor_degrees_and_normalisation() {
    ok(factor_shape(99));
}

#[test]
fn divisibility_iff_divisor() {
    ok(divisibility(45));
}

#[test]
fn members_satisfy_structure() {
    ok(member_identities(21));
}

#[test]
fn families_are_unicyclic() {
    for s in family_corpus(14) {
        let g = build_graph(&s).unwrap();
        assert!(g.is_unicyclic(), "{s}");
    }
    for s in ["C3 + C5 + A(3,1)", "C3 + D5 + B(1,2,1)"] {
        let g = graph(s);
        assert!(g.connected_components().iter().all(|c| c.is_unicyclic()), "{s}");
    }
}

#[test]
fn family_symmetries() {
    assert!(is_isomorphic(&build_graph(&GraphSpec::Named(NamedGraph::Gd)).unwrap(), &graph("B(0,1,1)")).unwrap());
    for m1 in 1..=8 {
        for m2 in 1..=8 {
            let a = graph(&format!("A({m1},{m2})"));
            assert!(is_isomorphic(&a, &graph(&format!("A({m2},{m1})"))).unwrap());
        }
    }
    for (m1, m2, m3) in [(0, 1, 2), (1, 2, 3), (2, 1, 4)] {
        let b = graph(&format!("B({m1},{m2},{m3})"));
        assert!(is_isomorphic(&b, &graph(&format!("B({m1},{m3},{m2})"))).unwrap());
    }
    assert!(!is_isomorphic(&graph("A(1,2)"), &graph("E(1,2)")).unwrap());
}

#[test]
fn recursion_matches_bruteforce_on_families() {
    let cache = PolyCache::new();
    let corpus = family_corpus(18);
    for s in &corpus {
        let g = build_graph(s).unwrap();
        assert_eq!(indpoly(&g, &cache).unwrap(), indpoly_bruteforce(&g).unwrap(), "{s}");
    }
    assert!(corpus.len() > 300);
}
