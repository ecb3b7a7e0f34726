//! Exact independence polynomials, the factorisation of `I(C_n, x)` for odd
//! `n`, and independence equivalence classes of odd cycles.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: graphs, named families, canonical forms, graph6, subgraph census
//! * [`poly`]: dense big-integer polynomials and closed-form path/cycle coefficients
//! * [`indpoly`]: brute-force and memoised recursive `I(G, x)`
//! * [`factors`]: the factors `f_m` of `I(C_n, x)` by two independent routes
//! * [`search`]: the structured and exhaustive searches for the class of `C_n`
//! * [`ledger`]: re-derivation of every published number

pub mod error;
pub mod factors;
pub mod graph;
pub mod indpoly;
pub mod ledger;
pub mod poly;
pub mod search;

pub use error::{Error, Result};
pub use graph::{build_graph, canonical_key, is_isomorphic, CanonicalKey, Graph, GraphSpec};
pub use indpoly::{indpoly, indpoly_bruteforce, PolyCache};
pub use poly::IntPoly;
