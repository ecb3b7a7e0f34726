//! Independence polynomials: a subset-enumeration oracle and the memoised
//! vertex-deletion recursion.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{canonical_form, CanonicalKey, Graph};
use crate::poly::{binomial, IntPoly};

/// Largest graph the subset enumeration accepts.
pub const BRUTEFORCE_MAX_VERTICES: usize = 30;

/// `I(G, x)` by testing every vertex subset against neighbourhood masks.
pub fn indpoly_bruteforce(g: &Graph) -> Result<IntPoly> {
    let n = g.n_vertices();
    if n > BRUTEFORCE_MAX_VERTICES {
        return Err(Error::GraphTooLarge { n, max: BRUTEFORCE_MAX_VERTICES });
    }
    let nbr: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w))).collect();
    let mut counts = vec![0u64; n + 1];
    for mask in 0u32..(1u32 << n) {
        let mut rest = mask;
        let mut independent = true;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            if nbr[v] & mask != 0 {
                independent = false;
                break;
            }
            rest &= rest - 1;
        }
        if independent {
            counts[mask.count_ones() as usize] += 1;
        }
    }
    Ok(IntPoly::new(counts.into_iter().map(BigInt::from).collect()))
}

/// Cache entry identity: the canonical key when one exists, otherwise the
/// exact labeled structure.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum MemoKey {
    Canonical(CanonicalKey),
    Labeled(Vec<(u32, u32)>, u32),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub entries: u64,
}

/// Memo table from component identity to `I(G, x)`.
///
/// Readers run concurrently; insertion is insert-if-absent, so racing
/// writers storing the same value are harmless.
#[derive(Default)]
pub struct PolyCache {
    map: RwLock<HashMap<MemoKey, IntPoly>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

#[derive(Serialize, Deserialize)]
struct CacheRecord {
    key: String,
    coeffs: Vec<String>,
    digest: String,
}

fn record_digest(key: &str, coeffs: &[String]) -> String {
    let mut h = Sha256::new();
    h.update(key.as_bytes());
    for c in coeffs {
        h.update(b",");
        h.update(c.as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl PolyCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            entries: self.map.read().expect("cache lock").len() as u64,
        }
    }

    fn get(&self, key: &MemoKey) -> Option<IntPoly> {
        let hit = self.map.read().expect("cache lock").get(key).cloned();
        match hit {
            Some(_) => self.hits.fetch_add(1, Ordering::Relaxed),
            None => self.misses.fetch_add(1, Ordering::Relaxed),
        };
        hit
    }

    fn insert(&self, key: MemoKey, poly: IntPoly) {
        debug_assert!(poly.coeff(0).is_one());
        self.map.write().expect("cache lock").entry(key).or_insert(poly);
    }

    /// Cached polynomial for a graph whose components are all within the
    /// canonical bound and present in the cache.
    pub fn lookup(&self, g: &Graph) -> Option<IntPoly> {
        let key = canonical_form(g).ok()?.0;
        self.map.read().expect("cache lock").get(&MemoKey::Canonical(key)).cloned()
    }

    /// Canonical-key entries, sorted by key.
    pub fn canonical_entries(&self) -> Vec<(CanonicalKey, IntPoly)> {
        let map = self.map.read().expect("cache lock");
        let mut out: Vec<_> = map
            .iter()
            .filter_map(|(k, p)| match k {
                MemoKey::Canonical(c) => Some((c.clone(), p.clone())),
                MemoKey::Labeled(..) => None,
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Write canonical entries as JSON lines `{key, coeffs, digest}`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
        let mut w = BufWriter::new(File::create(path).map_err(io)?);
        for (key, poly) in self.canonical_entries() {
            let key = key.to_base64();
            let coeffs = poly.to_decimal_strings();
            let digest = record_digest(&key, &coeffs);
            let line =
                serde_json::to_string(&CacheRecord { key, coeffs, digest }).map_err(|e| Error::Io(e.to_string()))?;
            writeln!(w, "{line}").map_err(io)?;
        }
        w.flush().map_err(io)
    }

    /// Load entries from a JSON-lines file. Lines that fail to parse, carry
    /// a non-canonical key, a digest mismatch, or a polynomial inconsistent
    /// with the graph's vertex and edge counts (or, for small graphs, with a
    /// brute-force recount) are skipped with a warning.
    /// Returns the number of accepted entries; a missing file loads nothing.
    pub fn load(&self, path: &Path) -> Result<usize> {
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(Error::Io(format!("{}: {e}", path.display()))),
        };
        let mut accepted = 0;
        for (lineno, line) in BufReader::new(file).lines().enumerate() {
            let Ok(line) = line else {
                log::warn!("{}:{}: unreadable line skipped", path.display(), lineno + 1);
                continue;
            };
            if line.trim().is_empty() {
                continue;
            }
            match parse_record(&line) {
                Ok((key, poly)) => {
                    self.insert(MemoKey::Canonical(key), poly);
                    accepted += 1;
                }
                Err(e) => log::warn!("{}:{}: cache line skipped: {e}", path.display(), lineno + 1),
            }
        }
        Ok(accepted)
    }
}

/// Loaded entries this small are recounted by brute force before use.
const SPOT_CHECK_VERTICES: usize = 16;

fn parse_record(line: &str) -> Result<(CanonicalKey, IntPoly)> {
    let rec: CacheRecord = serde_json::from_str(line).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    if record_digest(&rec.key, &rec.coeffs) != rec.digest {
        return Err(Error::InvalidArgument("digest mismatch".into()));
    }
    let key = CanonicalKey::from_base64(&rec.key)?;
    let poly = IntPoly::from_decimal_strings(&rec.coeffs)?;
    let g = key.to_graph();
    let (n, m) = (g.n_vertices() as i64, g.n_edges() as i64);
    let consistent = poly.coeff(0).is_one()
        && poly.coeff(1) == BigInt::from(n)
        && poly.coeff(2) == binomial(n, 2) - BigInt::from(m)
        && poly.degree().is_some_and(|d| d as i64 <= n);
    if !consistent {
        return Err(Error::InvalidArgument("polynomial inconsistent with its graph".into()));
    }
    if g.n_vertices() <= SPOT_CHECK_VERTICES && indpoly_bruteforce(&g)? != poly {
        return Err(Error::InvalidArgument("polynomial disagrees with brute force".into()));
    }
    Ok((key, poly))
}

/// `I(G, x)` as the product over components, each computed by the
/// vertex-deletion identity on a maximum-degree pivot and memoised.
///
/// Components with a canonical form are relabeled canonically first, so the
/// pivot (first maximum-degree vertex) and the cache trace do not depend on
/// the input labeling. Components the canonical form refuses keep their
/// labeling and are memoised under their exact labeled structure.
pub fn indpoly(g: &Graph, cache: &PolyCache) -> Result<IntPoly> {
    g.component_vertex_sets().iter().map(|vs| component_poly(&g.induced(vs), cache)).product()
}

fn component_poly(c: &Graph, cache: &PolyCache) -> Result<IntPoly> {
    match c.n_vertices() {
        0 => return Ok(IntPoly::one()),
        1 => return Ok(IntPoly::from_i64(&[1, 1])),
        2 => return Ok(IntPoly::from_i64(&[1, 2])),
        _ => {}
    }
    let (key, graph) = match canonical_form(c) {
        Ok((key, order)) => (MemoKey::Canonical(key), c.permuted(&order)),
        Err(Error::CanonicalBoundExceeded { .. }) => {
            let edges = c.edges().into_iter().map(|(u, v)| (u as u32, v as u32)).collect();
            (MemoKey::Labeled(edges, c.n_vertices() as u32), c.clone())
        }
        Err(e) => return Err(e),
    };
    if let Some(p) = cache.get(&key) {
        return Ok(p);
    }
    let pivot = pivot_vertex(&graph);
    let without = indpoly(&graph.delete_vertex(pivot)?, cache)?;
    let closed = indpoly(&graph.delete_closed_neighborhood(pivot)?, cache)?;
    let p = &without + &closed.shift(1);
    cache.insert(key, p.clone());
    Ok(p)
}

/// First vertex of maximum degree.
fn pivot_vertex(g: &Graph) -> usize {
    let d = g.max_degree();
    (0..g.n_vertices()).find(|&v| g.degree(v) == d).expect("nonempty graph")
}

/// `I(G, x)` by the recursion with an explicit pivot at the top level.
/// Used to check that the result does not depend on the pivot.
pub fn indpoly_with_pivot(g: &Graph, pivot: usize, cache: &PolyCache) -> Result<IntPoly> {
    let without = indpoly(&g.delete_vertex(pivot)?, cache)?;
    let closed = indpoly(&g.delete_closed_neighborhood(pivot)?, cache)?;
    Ok(&without + &closed.shift(1))
}

/// Recompute `I(G, x)` through the edge-deletion identity
/// `I(G) = I(G - e) - x^2 I(G - (N(u) ∪ N(v)))` and compare with `indpoly`.
pub fn indpoly_edge_rule_check(g: &Graph, u: usize, v: usize, cache: &PolyCache) -> Result<bool> {
    let (without, closure) = g.delete_edge_closure(u, v)?;
    let via_edge = &indpoly(&without, cache)? - &indpoly(&closure, cache)?.shift(2);
    Ok(via_edge == indpoly(g, cache)?)
}

/// Degree of `I(G, x)`.
pub fn independence_number(g: &Graph, cache: &PolyCache) -> Result<usize> {
    Ok(indpoly(g, cache)?.degree().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, GraphSpec};

    fn spec(s: &str) -> Graph {
        build_graph(&s.parse::<GraphSpec>().unwrap()).unwrap()
    }

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(indpoly_bruteforce(&Graph::cycle(3)).unwrap(), p(&[1, 3]));
        assert_eq!(indpoly_bruteforce(&spec("D5")).unwrap(), p(&[1, 5, 5]));
        assert_eq!(indpoly_bruteforce(&Graph::empty(0)).unwrap(), IntPoly::one());
        assert!(matches!(indpoly_bruteforce(&Graph::path(31)), Err(Error::GraphTooLarge { n: 31, max: 30 })));
    }

    #[test]
    fn recursive_examples() {
        let cache = PolyCache::new();
        let c9 = p(&[1, 9, 27, 30, 9]);
        assert_eq!(indpoly(&Graph::cycle(9), &cache).unwrap(), c9);
        assert_eq!(indpoly(&spec("C3 + Ga"), &cache).unwrap(), c9);
        let c15 = indpoly(&Graph::cycle(15), &cache).unwrap();
        assert_eq!(indpoly(&spec("Union(C3, C5, A(3,1))"), &cache).unwrap(), c15);
        assert_eq!(indpoly(&Graph::empty(0), &cache).unwrap(), IntPoly::one());
        assert!(cache.stats().hits > 0);
    }

    #[test]
    fn large_components() {
        let cache = PolyCache::new();
        let c60 = indpoly(&Graph::cycle(60), &cache).unwrap();
        assert_eq!(c60, crate::poly::cycle_poly(60));
        assert_eq!(indpoly(&spec("D60"), &cache).unwrap(), c60);
        // trees this large have no canonical form and go through labeled keys
        assert_eq!(indpoly(&Graph::path(40), &cache).unwrap(), crate::poly::path_poly(40));
        let mut star = Graph::path(30).edges();
        star.extend((30..40).map(|v| (0, v)));
        let star = Graph::new(40, star).unwrap();
        let by_vertex = indpoly_with_pivot(&star, 0, &cache).unwrap();
        assert_eq!(indpoly(&star, &cache).unwrap(), by_vertex);
    }

    #[test]
    fn edge_rule() {
        let cache = PolyCache::new();
        assert!(indpoly_edge_rule_check(&Graph::cycle(5), 0, 1, &cache).unwrap());
        // the triangle edge between a and b
        assert!(indpoly_edge_rule_check(&spec("D9"), 0, 2, &cache).unwrap());
        let a21 = spec("A(2,1)");
        for (u, v) in a21.edges() {
            assert!(indpoly_edge_rule_check(&a21, u, v, &cache).unwrap());
        }
        assert!(indpoly_edge_rule_check(&Graph::cycle(5), 0, 2, &cache).is_err());
    }

    #[test]
    fn independence_numbers() {
        let cache = PolyCache::new();
        assert_eq!(independence_number(&Graph::cycle(9), &cache).unwrap(), 4);
        assert_eq!(independence_number(&Graph::empty(0), &cache).unwrap(), 0);
        assert_eq!(independence_number(&spec("A(2,1)"), &cache).unwrap(), 3);
    }

    #[test]
    fn pivot_choice_does_not_matter() {
        let cache = PolyCache::new();
        let g = spec("B(1,2,3)");
        let reference = indpoly(&g, &cache).unwrap();
        for v in 0..g.n_vertices() {
            assert_eq!(indpoly_with_pivot(&g, v, &cache).unwrap(), reference);
        }
    }

    #[test]
    fn cache_persistence_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let cache = PolyCache::new();
        let c9 = indpoly(&spec("C3 + A(2,1)"), &cache).unwrap();
        cache.save(&path).unwrap();
        let n_saved = cache.canonical_entries().len();

        let warm = PolyCache::new();
        assert_eq!(warm.load(&path).unwrap(), n_saved);
        assert_eq!(indpoly(&spec("C3 + A(2,1)"), &warm).unwrap(), c9);

        // corrupt every coefficient list and add junk lines
        let text = std::fs::read_to_string(&path).unwrap();
        let corrupted: String = text
            .lines()
            .map(|l| l.replacen("\"1\"", "\"2\"", 1) + "\n")
            .chain(["{not json\n".to_string(), "\n".to_string()])
            .collect();
        std::fs::write(&path, corrupted).unwrap();
        let bad = PolyCache::new();
        assert_eq!(bad.load(&path).unwrap(), 0);
        assert_eq!(indpoly(&spec("C3 + A(2,1)"), &bad).unwrap(), c9);
        assert_eq!(PolyCache::new().load(&dir.path().join("missing")).unwrap(), 0);

        // a well-formed record with a fresh digest but a wrong top coefficient
        let key = crate::graph::canonical_key(&Graph::cycle(9)).unwrap().to_base64();
        let coeffs: Vec<String> = ["1", "9", "27", "30", "8"].iter().map(|c| c.to_string()).collect();
        let digest = record_digest(&key, &coeffs);
        let line = serde_json::to_string(&CacheRecord { key, coeffs, digest }).unwrap();
        std::fs::write(&path, line + "\n").unwrap();
        let forged = PolyCache::new();
        assert_eq!(forged.load(&path).unwrap(), 0);
        assert_eq!(indpoly(&Graph::cycle(9), &forged).unwrap(), c9);
    }
}
