//! The independence equivalence class of `C_n`: structured and exhaustive
//! searches, member descriptions and reports.

pub mod checks;
pub mod exhaustive;
pub mod structured;
pub mod unicyclic;

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

pub use checks::{alpha_formula, component_count_bound, structural_checks, CheckReport};
pub use exhaustive::{all_graphs_search, unicyclic_multiset_search};
pub use structured::structured_search;
pub use unicyclic::{enumerate_unicyclic, for_each_unicyclic};

use crate::error::{Error, Result};
use crate::graph::{build_graph, canonical_key, emit_graph6, CanonicalKey, Graph, GraphSpec, NamedGraph};
use crate::indpoly::{indpoly, PolyCache};
use crate::poly::{cycle_poly, IntPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassMode {
    Structured,
    ExhaustiveAllGraphs,
    ExhaustiveUnicyclicMultisets,
}

impl FromStr for ClassMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "structured" => Ok(ClassMode::Structured),
            "all-graphs" | "exhaustive_all_graphs" => Ok(ClassMode::ExhaustiveAllGraphs),
            "unicyclic" | "exhaustive_unicyclic_multisets" => Ok(ClassMode::ExhaustiveUnicyclicMultisets),
            other => Err(Error::InvalidArgument(format!("unknown class mode {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub generated: u64,
    pub pruned: u64,
    pub polynomial_tested: u64,
    pub divisor_multisets: u64,
}

impl SearchStats {
    pub fn add(&mut self, other: &SearchStats) {
        self.generated += other.generated;
        self.pruned += other.pruned;
        self.polynomial_tested += other.polynomial_tested;
        self.divisor_multisets += other.divisor_multisets;
    }
}

fn key_base64<S: Serializer>(k: &CanonicalKey, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&k.to_base64())
}

#[derive(Clone, Debug, Serialize)]
pub struct Member {
    #[serde(serialize_with = "key_base64")]
    pub key: CanonicalKey,
    pub graph6: String,
    pub description: String,
    pub polynomial: IntPoly,
    pub checks: CheckReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub n: usize,
    pub mode: ClassMode,
    pub target: IntPoly,
    pub members: Vec<Member>,
    pub stats: SearchStats,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Shuffles candidate order in the structured search; results do not
    /// depend on it.
    pub seed: Option<u64>,
    /// Drop unicyclic components whose polynomial does not divide the target.
    pub divisor_pruning: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { seed: None, divisor_pruning: true }
    }
}

/// Compute the class of `C_n` in the given mode.
pub fn class_search(n: usize, mode: ClassMode, cache: &PolyCache, opts: &SearchOptions) -> Result<ClassReport> {
    let start = Instant::now();
    if n < 3 {
        return Err(Error::InvalidArgument(format!("cycles need n >= 3, got {n}")));
    }
    let target = cycle_poly(n as u64);
    let (graphs, stats) = match mode {
        ClassMode::Structured => {
            let (members, stats) = structured_search(n, cache, opts.seed)?;
            (members.into_iter().map(|(_, g)| g).collect(), stats)
        }
        ClassMode::ExhaustiveAllGraphs => all_graphs_search(n, &target)?,
        ClassMode::ExhaustiveUnicyclicMultisets => {
            if n.is_multiple_of(2) {
                return Err(Error::InvalidArgument(format!("the unicyclic reduction needs odd n, got {n}")));
            }
            unicyclic_multiset_search(n, &target, cache, opts.divisor_pruning)?
        }
    };
    let mut members = Vec::with_capacity(graphs.len());
    for g in graphs {
        let key = canonical_key(&g)?;
        let canonical = key.to_graph();
        let polynomial = indpoly(&canonical, cache)?;
        if polynomial != target {
            return Err(Error::Invariant(format!("member {} does not match I(C_{n})", describe(&g)?)));
        }
        members.push(Member {
            graph6: emit_graph6(&canonical)?,
            description: describe(&canonical)?.to_string(),
            checks: structural_checks(&canonical, n),
            polynomial,
            key,
        });
    }
    members.sort_by(|a, b| a.key.cmp(&b.key));
    members.dedup_by(|a, b| a.key == b.key);
    Ok(ClassReport { n, mode, target, members, stats, elapsed: start.elapsed() })
}

/// Family names tried for a component, in order of preference.
fn component_names(v: usize) -> Vec<GraphSpec> {
    let mut out = Vec::new();
    if v >= 3 {
        out.push(GraphSpec::Cycle(v));
    }
    if v >= 4 {
        out.push(GraphSpec::Dn(v));
    }
    out.extend(NamedGraph::ALL.into_iter().map(GraphSpec::Named));
    if v >= 5 {
        out.extend((1..=v - 4).rev().map(|m1| GraphSpec::A(m1, v - 3 - m1)));
        out.extend((1..=v - 4).map(|m1| GraphSpec::E(m1, v - 3 - m1)));
    }
    if v >= 6 {
        for m1 in 0..=v - 6 {
            for m2 in (1..=v - 5 - m1).rev() {
                out.push(GraphSpec::B(m1, m2, v - 4 - m1 - m2));
            }
        }
    }
    out.extend([GraphSpec::K13, GraphSpec::K4MinusE, GraphSpec::Path(v)]);
    out.retain(|s| s.vertex_count() == Some(v));
    out
}

fn describe_component(c: &Graph) -> Result<GraphSpec> {
    let key = canonical_key(c)?;
    let hist = c.degree_histogram();
    for spec in component_names(c.n_vertices()) {
        let g = build_graph(&spec)?;
        if g.n_edges() == c.n_edges() && g.degree_histogram() == hist && canonical_key(&g)? == key {
            return Ok(spec);
        }
    }
    Ok(GraphSpec::Graph6(emit_graph6(c)?))
}

/// A family expression for `g`, one term per component in canonical order.
pub fn describe(g: &Graph) -> Result<GraphSpec> {
    let mut parts = g.connected_components().iter().map(describe_component).collect::<Result<Vec<_>>>()?;
    Ok(if parts.len() == 1 { parts.pop().expect("one part") } else { GraphSpec::Union(parts) })
}

impl ClassReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mode = match self.mode {
            ClassMode::Structured => "structured",
            ClassMode::ExhaustiveAllGraphs => "all-graphs",
            ClassMode::ExhaustiveUnicyclicMultisets => "unicyclic multisets",
        };
        let _ = writeln!(s, "class of C{} ({mode}): {} members", self.n, self.members.len());
        let _ = writeln!(s, "I(C{}, x) = {}", self.n, self.target);
        for m in &self.members {
            let status = if m.checks.all_pass() {
                "checks pass".to_string()
            } else {
                format!("CHECKS FAILED: {}", m.checks.failed().join(", "))
            };
            let _ = writeln!(s, "  {:<28} {:<16} {status}", m.description, m.graph6);
        }
        let st = &self.stats;
        let _ = writeln!(
            s,
            "candidates {}, pruned {}, polynomial-tested {}, divisor multisets {}",
            st.generated, st.pruned, st.polynomial_tested, st.divisor_multisets
        );
        let _ = writeln!(s, "time {:.3}s", self.elapsed.as_secs_f64());
        s
    }
}
