//! Re-derivation of every published number: coefficient vectors, the named
//! graphs, class memberships and the families of identities behind them.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::factors::{f_poly_by_division, f_poly_by_transform, factorize_cycle_poly, Route};
use crate::graph::{build_graph, canonical_key, CanonicalKey, GraphSpec};
use crate::indpoly::{indpoly, PolyCache};
use crate::poly::{cycle_poly, IntPoly};
use crate::search::{class_search, describe, ClassMode, SearchOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct LedgerEntry {
    pub id: String,
    pub citation: String,
    pub expected: Value,
    pub computed: Value,
    pub status: Status,
}

impl LedgerEntry {
    fn new(id: impl Into<String>, citation: &str, expected: Value, computed: Value) -> Self {
        let status = if expected == computed { Status::Pass } else { Status::Fail };
        LedgerEntry { id: id.into(), citation: citation.to_string(), expected, computed, status }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn coeffs(p: &IntPoly) -> Value {
    json!(p.to_decimal_strings())
}

fn int_coeffs(c: &[i64]) -> Value {
    coeffs(&IntPoly::from_i64(c))
}

fn spec_graph_poly(spec: &str, cache: &PolyCache) -> Result<IntPoly> {
    indpoly(&build_graph(&spec.parse::<GraphSpec>()?)?, cache)
}

/// Member list as sorted descriptions; `expected` specs are mapped through
/// canonical keys so the comparison is up to isomorphism.
fn class_entry(
    id: String,
    citation: &str,
    n: usize,
    mode: ClassMode,
    expected: &[String],
    cache: &PolyCache,
) -> Result<LedgerEntry> {
    let report = class_search(n, mode, cache, &SearchOptions::default())?;
    let computed: BTreeSet<CanonicalKey> = report.members.iter().map(|m| m.key.clone()).collect();
    let mut wanted = BTreeSet::new();
    for s in expected {
        wanted.insert(canonical_key(&build_graph(&s.parse::<GraphSpec>()?)?)?);
    }
    let names = |keys: &BTreeSet<CanonicalKey>| -> Result<Value> {
        let mut v = keys.iter().map(|k| describe(&k.to_graph()).map(|d| d.to_string())).collect::<Result<Vec<_>>>()?;
        v.sort();
        Ok(json!(v))
    };
    Ok(LedgerEntry::new(id, citation, names(&wanted)?, names(&computed)?))
}

/// Run every check. Class memberships for odd `n` other than 3, 9 and 15
/// are checked up to `max_n`.
pub fn run_ledger(max_n: usize) -> Result<Vec<LedgerEntry>> {
    let cache = PolyCache::new();
    let mut out = Vec::new();
    let example = "worked factorisation example";

    for (n, c) in [(3u64, &[1, 3][..]), (5, &[1, 5, 5]), (9, &[1, 6, 9, 3]), (15, &[1, 7, 14, 8, 1])] {
        let computed = factorize_cycle_poly(n, Route::Division)?.factors[&n].clone();
        out.push(LedgerEntry::new(format!("coeffs-f{n}"), example, int_coeffs(c), coeffs(&computed)));
    }
    let c9 = [1, 9, 27, 30, 9];
    let c15 = [1, 15, 90, 275, 450, 378, 140, 15];
    for (n, c) in [(9usize, &c9[..]), (15, &c15[..])] {
        let computed = spec_graph_poly(&format!("C{n}"), &cache)?;
        out.push(LedgerEntry::new(format!("coeffs-c{n}"), example, int_coeffs(c), coeffs(&computed)));
    }
    for (name, f) in [("Ga", 9u64), ("Gb", 9), ("Gc", 9), ("Gd", 9), ("Ga'", 15), ("Gb'", 15), ("Gc'", 15)] {
        let expected = if f == 9 { int_coeffs(&[1, 6, 9, 3]) } else { int_coeffs(&[1, 7, 14, 8, 1]) };
        let id = format!("named-{}-f{f}", name.to_lowercase().replace('\'', "-prime"));
        out.push(LedgerEntry::new(
            id,
            &format!("{example}, named graphs for C{f}"),
            expected,
            coeffs(&spec_graph_poly(name, &cache)?),
        ));
    }

    let classification = "classification of odd cycles";
    let strings = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let c9_class = strings(&["C9", "D9", "C3 + Ga", "C3 + Gb", "C3 + Gc", "C3 + Gd"]);
    let c15_class = strings(&[
        "C15",
        "D15",
        "C3 + C5 + Ga'",
        "C3 + D5 + Ga'",
        "C3 + C5 + Gb'",
        "C3 + D5 + Gb'",
        "C3 + C5 + Gc'",
        "C3 + D5 + Gc'",
    ]);
    for (n, expected) in [(3usize, strings(&["C3"])), (9, c9_class), (15, c15_class)] {
        let report = class_search(n, ClassMode::Structured, &cache, &SearchOptions::default())?;
        out.push(LedgerEntry::new(
            format!("class-c{n}-count"),
            classification,
            json!(expected.len()),
            json!(report.members.len()),
        ));
        out.push(class_entry(
            format!("class-c{n}-members"),
            classification,
            n,
            ClassMode::Structured,
            &expected,
            &cache,
        )?);
    }
    for n in (5..=max_n).step_by(2).filter(|n| ![9, 15].contains(n)) {
        let expected = vec![format!("C{n}"), format!("D{n}")];
        out.push(class_entry(
            format!("class-c{n}-members"),
            &format!("{classification}, odd n other than 9 and 15"),
            n,
            ClassMode::Structured,
            &expected,
            &cache,
        )?);
    }
    out.push(class_entry(
        "class-c6-members".into(),
        "earlier classification of even cycles, n = 6",
        6,
        ClassMode::ExhaustiveAllGraphs,
        &strings(&["C6", "D6", "K4_minus_e + P2"]),
        &cache,
    )?);
    for n in [4usize, 8] {
        out.push(class_entry(
            format!("class-c{n}-members"),
            "earlier classification of even cycles, n != 6",
            n,
            ClassMode::ExhaustiveAllGraphs,
            &[format!("C{n}"), format!("D{n}")],
            &cache,
        )?);
    }

    let mut unequal = Vec::new();
    for n in 4..=60usize {
        if spec_graph_poly(&format!("D{n}"), &cache)? != cycle_poly(n as u64) {
            unequal.push(n);
        }
    }
    out.push(LedgerEntry::new(
        "cn-dn-equivalent",
        "C_n and D_n are independence equivalent, checked for 4 <= n <= 60",
        json!(Vec::<usize>::new()),
        json!(unequal),
    ));

    let mut disagree = Vec::new();
    for n in (3..=99u64).step_by(2) {
        if f_poly_by_division(n)? != f_poly_by_transform(n)? {
            disagree.push(n);
        }
    }
    out.push(LedgerEntry::new(
        "factor-routes-agree",
        "definition of f_n against its minimal-polynomial construction, odd n <= 99",
        json!(Vec::<u64>::new()),
        json!(disagree),
    ));
    Ok(out)
}
