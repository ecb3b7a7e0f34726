//! Exact canonical forms by individualization and refinement.
//!
//! Each connected component is canonicalized on its own: the initial
//! partition is by degree, refined to an equitable partition, and every
//! branch of the search tree is explored down to discrete partitions. The
//! canonical encoding is the lexicographically smallest upper-triangle
//! adjacency string over all leaves. Only branches that differ by swapping
//! two twin vertices are skipped, since such a swap is an automorphism that
//! fixes the current partition and the two subtrees produce the same leaf
//! set.
//!
//! Components above [`MAX_CANONICAL_COMPONENT`] vertices are refused unless
//! they are unicyclic. A unicyclic component has an exact canonical labeling
//! of its own: encode each tree hanging off the cycle, take the smallest
//! rotation or reflection of the encodings around the cycle, and number the
//! vertices along it. Component size decides which labeling applies, so the
//! two never meet.

use base64::engine::general_purpose::STANDARD;
use base64::Engine;

use super::Graph;
use crate::error::{Error, Result};

/// Largest component the general canonical search will handle.
pub const MAX_CANONICAL_COMPONENT: usize = 24;

/// Isomorphism-invariant encoding of a graph.
///
/// The bytes are the concatenation, in sorted order, of one record per
/// component: the component's vertex count followed by its canonical
/// upper-triangle adjacency bits packed most-significant-bit first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_base64(&self) -> String {
        STANDARD.encode(&self.0)
    }

    pub fn from_base64(s: &str) -> Result<Self> {
        let bytes = STANDARD.decode(s.trim()).map_err(|e| Error::InvalidArgument(format!("bad base64 key: {e}")))?;
        Self::from_bytes(bytes)
    }

    /// Accepts only byte strings that are themselves canonical.
    pub fn from_bytes(bytes: Vec<u8>) -> Result<Self> {
        let g = decode(&bytes)?;
        let key = canonical_key(&g)?;
        if key.0 != bytes {
            return Err(Error::InvalidArgument("key bytes are not in canonical form".into()));
        }
        Ok(key)
    }

    /// The graph in canonical labeling.
    pub fn to_graph(&self) -> Graph {
        decode(&self.0).expect("canonical keys always decode")
    }
}

fn record_len(k: usize) -> usize {
    (k * k.saturating_sub(1) / 2).div_ceil(8)
}

fn decode(bytes: &[u8]) -> Result<Graph> {
    let bad = || Error::InvalidArgument("truncated canonical key".into());
    let mut g = Graph::empty(0);
    let mut pos = 0;
    while pos < bytes.len() {
        let k = bytes[pos] as usize;
        if k == 0 {
            return Err(Error::InvalidArgument(format!("bad component size {k} in key")));
        }
        let len = record_len(k);
        let body = bytes.get(pos + 1..pos + 1 + len).ok_or_else(bad)?;
        let mut edges = Vec::new();
        let mut bit = 0;
        for i in 0..k {
            for j in i + 1..k {
                if body[bit / 8] & (0x80 >> (bit % 8)) != 0 {
                    edges.push((i, j));
                }
                bit += 1;
            }
        }
        g = g.disjoint_union(&Graph::new(k, edges)?);
        pos += 1 + len;
    }
    Ok(g)
}

/// Canonical key plus a canonical ordering: vertex `order[i]` of `g` is
/// vertex `i` of the canonical graph.
pub fn canonical_form(g: &Graph) -> Result<(CanonicalKey, Vec<usize>)> {
    let mut parts = Vec::new();
    for vs in g.component_vertex_sets() {
        let comp = g.induced(&vs);
        let (enc, local) = if vs.len() <= MAX_CANONICAL_COMPONENT {
            canonical_component(&comp)
        } else if vs.len() <= u8::MAX as usize && comp.is_unicyclic() {
            unicyclic_component(&comp)
        } else {
            return Err(Error::CanonicalBoundExceeded { size: vs.len(), max: MAX_CANONICAL_COMPONENT });
        };
        parts.push((enc, local.into_iter().map(|i| vs[i]).collect::<Vec<_>>()));
    }
    parts.sort();
    let mut bytes = Vec::new();
    let mut order = Vec::with_capacity(g.n_vertices());
    for (enc, vs) in parts {
        bytes.extend(enc);
        order.extend(vs);
    }
    Ok((CanonicalKey(bytes), order))
}

pub fn canonical_key(g: &Graph) -> Result<CanonicalKey> {
    canonical_form(g).map(|(k, _)| k)
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    if g.n_vertices() != h.n_vertices() || g.n_edges() != h.n_edges() {
        return Ok(false);
    }
    Ok(canonical_key(g)? == canonical_key(h)?)
}

fn encode_order(g: &Graph, order: &[usize]) -> Vec<u8> {
    let k = order.len();
    let mut enc = vec![0u8; 1 + record_len(k)];
    enc[0] = k as u8;
    let mut bit = 0;
    for i in 0..k {
        for &vj in &order[i + 1..] {
            if g.has_edge(order[i], vj) {
                enc[1 + bit / 8] |= 0x80 >> (bit % 8);
            }
            bit += 1;
        }
    }
    enc
}

/// Canonical labeling of a connected unicyclic graph of any size.
fn unicyclic_component(g: &Graph) -> (Vec<u8>, Vec<usize>) {
    let k = g.n_vertices();
    let mut deg: Vec<usize> = (0..k).map(|v| g.degree(v)).collect();
    let mut on_cycle = vec![true; k];
    let mut leaves: Vec<usize> = (0..k).filter(|&v| deg[v] == 1).collect();
    while let Some(v) = leaves.pop() {
        on_cycle[v] = false;
        for &w in g.neighbors(v) {
            if on_cycle[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    leaves.push(w);
                }
            }
        }
    }
    let start = on_cycle.iter().position(|&c| c).expect("unicyclic graph has a cycle");
    let mut cycle = vec![start];
    loop {
        let last = *cycle.last().expect("nonempty");
        let prev = cycle.len().checked_sub(2).map(|i| cycle[i]);
        let next =
            g.neighbors(last).iter().copied().find(|&w| on_cycle[w] && Some(w) != prev).expect("cycle continues");
        if next == start {
            break;
        }
        cycle.push(next);
    }

    // AHU encodings with children sorted by encoding; `kids` keeps that order
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); k];
    fn encode(g: &Graph, v: usize, parent: Option<usize>, on_cycle: &[bool], kids: &mut [Vec<usize>]) -> String {
        let mut children: Vec<(String, usize)> = g
            .neighbors(v)
            .iter()
            .filter(|&&w| Some(w) != parent && !on_cycle[w])
            .map(|&w| (encode(g, w, Some(v), on_cycle, kids), w))
            .collect();
        children.sort();
        kids[v] = children.iter().map(|c| c.1).collect();
        let mut s = String::from("(");
        children.iter().for_each(|c| s.push_str(&c.0));
        s.push(')');
        s
    }
    let codes: Vec<String> = cycle.iter().map(|&v| encode(g, v, None, &on_cycle, &mut kids)).collect();

    let c = cycle.len();
    let walk = |r: usize, forward: bool| -> Vec<usize> {
        (0..c).map(|j| if forward { (r + j) % c } else { (r + c - j) % c }).collect()
    };
    let best = (0..c)
        .flat_map(|r| [walk(r, true), walk(r, false)])
        .min_by(|a, b| a.iter().map(|&i| &codes[i]).cmp(b.iter().map(|&i| &codes[i])))
        .expect("cycle is nonempty");

    fn preorder(v: usize, kids: &[Vec<usize>], out: &mut Vec<usize>) {
        out.push(v);
        for &w in &kids[v] {
            preorder(w, kids, out);
        }
    }
    let mut order = Vec::with_capacity(k);
    for i in best {
        preorder(cycle[i], &kids, &mut order);
    }
    (encode_order(g, &order), order)
}

type Partition = Vec<Vec<u8>>;

struct Search {
    adj: Vec<u32>,
    best: Option<(Vec<u8>, Vec<u8>)>,
}

/// Encoding (with size prefix) and canonical order of a graph with at most
/// `MAX_CANONICAL_COMPONENT` vertices.
fn canonical_component(g: &Graph) -> (Vec<u8>, Vec<usize>) {
    let k = g.n_vertices();
    debug_assert!(k <= MAX_CANONICAL_COMPONENT);
    let adj: Vec<u32> = (0..k).map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w))).collect();
    let mut by_degree: Vec<(u32, u8)> = (0..k).map(|v| (adj[v].count_ones(), v as u8)).collect();
    by_degree.sort_unstable();
    let mut partition: Partition = Vec::new();
    for (d, v) in by_degree {
        match partition.last_mut() {
            Some(cell) if adj[cell[0] as usize].count_ones() == d => cell.push(v),
            _ => partition.push(vec![v]),
        }
    }
    let mut search = Search { adj, best: None };
    if k > 0 {
        search.explore(partition);
    }
    let (bits, order) = search.best.unwrap_or_default();
    let mut enc = Vec::with_capacity(bits.len() + 1);
    enc.push(k as u8);
    enc.extend(bits);
    (enc, order.into_iter().map(usize::from).collect())
}

impl Search {
    fn refine(&self, partition: &mut Partition) {
        loop {
            let masks: Vec<u32> = partition.iter().map(|c| c.iter().fold(0u32, |m, &v| m | (1 << v))).collect();
            let mut next: Partition = Vec::with_capacity(partition.len());
            let mut split = false;
            for cell in partition.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u8>, u8)> = cell
                    .iter()
                    .map(|&v| {
                        let row = self.adj[v as usize];
                        let sig = masks.iter().map(|m| (row & m).count_ones() as u8).collect();
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let start = next.len();
                for (i, (sig, v)) in keyed.iter().enumerate() {
                    if i > 0 && keyed[i - 1].0 == *sig {
                        next.last_mut().expect("open cell").push(*v);
                    } else {
                        next.push(vec![*v]);
                    }
                }
                if next.len() - start > 1 {
                    split = true;
                }
            }
            *partition = next;
            if !split {
                return;
            }
        }
    }

    fn explore(&mut self, mut partition: Partition) {
        self.refine(&mut partition);
        let Some(target) = partition.iter().position(|c| c.len() > 1) else {
            self.leaf(&partition);
            return;
        };
        let cell = partition[target].clone();
        let mut tried: Vec<u8> = Vec::new();
        for &w in &cell {
            let wm = self.adj[w as usize];
            let twin = tried.iter().any(|&t| {
                let tm = self.adj[t as usize];
                (wm & !(1 << t)) == (tm & !(1 << w))
            });
            if twin {
                continue;
            }
            tried.push(w);
            let mut child = partition.clone();
            let rest: Vec<u8> = cell.iter().copied().filter(|&v| v != w).collect();
            child.splice(target..=target, [vec![w], rest]);
            self.explore(child);
        }
    }

    fn leaf(&mut self, partition: &Partition) {
        let order: Vec<u8> = partition.iter().map(|c| c[0]).collect();
        let k = order.len();
        let mut bits = vec![0u8; record_len(k)];
        let mut bit = 0;
        for i in 0..k {
            let row = self.adj[order[i] as usize];
            for &vj in &order[i + 1..] {
                if row & (1 << vj) != 0 {
                    bits[bit / 8] |= 0x80 >> (bit % 8);
                }
                bit += 1;
            }
        }
        if self.best.as_ref().is_none_or(|(b, _)| bits < *b) {
            self.best = Some((bits, order));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, GraphSpec};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn spec(s: &str) -> Graph {
        build_graph(&s.parse::<GraphSpec>().unwrap()).unwrap()
    }

    /// Brute-force isomorphism over all vertex permutations.
    fn iso_bruteforce(g: &Graph, h: &Graph) -> bool {
        fn rec(g: &Graph, h: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let i = map.len();
            if i == g.n_vertices() {
                return true;
            }
            for j in 0..h.n_vertices() {
                if used[j] || g.degree(i) != h.degree(j) {
                    continue;
                }
                if (0..i).all(|a| g.has_edge(a, i) == h.has_edge(map[a], j)) {
                    used[j] = true;
                    map.push(j);
                    if rec(g, h, map, used) {
                        return true;
                    }
                    map.pop();
                    used[j] = false;
                }
            }
            false
        }
        g.n_vertices() == h.n_vertices()
            && g.n_edges() == h.n_edges()
            && rec(g, h, &mut Vec::new(), &mut vec![false; h.n_vertices()])
    }

    #[test]
    fn triangle_keys_agree() {
        let c3 = Graph::cycle(3);
        let other = Graph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(canonical_key(&c3).unwrap(), canonical_key(&other).unwrap());
        assert_ne!(canonical_key(&spec("C9")).unwrap(), canonical_key(&spec("D9")).unwrap());
    }

    #[test]
    fn arm_symmetry_matches_bruteforce() {
        for (a, b) in [(2, 1), (3, 1), (2, 3), (4, 2)] {
            let g = spec(&format!("A({a},{b})"));
            let h = spec(&format!("A({b},{a})"));
            assert!(iso_bruteforce(&g, &h));
            assert_eq!(canonical_key(&g).unwrap(), canonical_key(&h).unwrap());
        }
    }

    #[test]
    fn keys_invariant_under_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for s in ["C9", "D9", "A(2,1)", "B(0,1,1)", "E(1,2)", "C3 + C5 + A(3,1)", "K4_minus_e + P2", "Gc'"] {
            let g = spec(s);
            let key = canonical_key(&g).unwrap();
            for _ in 0..20 {
                let mut perm: Vec<usize> = (0..g.n_vertices()).collect();
                perm.shuffle(&mut rng);
                assert_eq!(canonical_key(&g.permuted(&perm)).unwrap(), key, "{s}");
            }
        }
    }

    #[test]
    fn key_equality_matches_bruteforce_on_small_graphs() {
        // every graph on 5 vertices with 5 edges, compared pairwise
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        let mut graphs = Vec::new();
        for mask in 0u32..1 << pairs.len() {
            if mask.count_ones() == 5 {
                let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
                graphs.push(Graph::new(5, edges).unwrap());
            }
        }
        let keys: Vec<CanonicalKey> = graphs.iter().map(|g| canonical_key(g).unwrap()).collect();
        for i in (0..graphs.len()).step_by(3) {
            for j in (i + 1..graphs.len()).step_by(5) {
                assert_eq!(keys[i] == keys[j], iso_bruteforce(&graphs[i], &graphs[j]));
            }
        }
    }

    #[test]
    fn canonical_order_reproduces_key_graph() {
        let g = spec("C3 + A(2,1)");
        let (key, order) = canonical_form(&g).unwrap();
        assert_eq!(g.permuted(&order), key.to_graph());
        assert_eq!(CanonicalKey::from_base64(&key.to_base64()).unwrap(), key);
    }

    #[test]
    fn refuses_large_components() {
        assert_eq!(canonical_key(&Graph::path(25)), Err(Error::CanonicalBoundExceeded { size: 25, max: 24 }));
        let mut theta = Graph::cycle(25).edges();
        theta.push((0, 12));
        assert!(canonical_key(&Graph::new(25, theta).unwrap()).is_err());
        assert!(canonical_key(&Graph::path(24)).is_ok());
        // many small components are fine
        let many = Graph::union_all(&vec![Graph::cycle(5); 8]);
        assert!(canonical_key(&many).is_ok());
    }

    #[test]
    fn large_unicyclic_components() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let specs = [
            "C45",
            "D45",
            "A(20,19)",
            "A(19,20)",
            "E(20,19)",
            "E(19,20)",
            "B(10,14,11)",
            "B(10,11,14)",
            "C3 + C5 + A(20,14)",
        ];
        let keys: Vec<CanonicalKey> = specs.iter().map(|s| canonical_key(&spec(s)).unwrap()).collect();
        for (s, key) in specs.iter().zip(&keys) {
            let g = spec(s);
            for _ in 0..10 {
                let mut perm: Vec<usize> = (0..g.n_vertices()).collect();
                perm.shuffle(&mut rng);
                assert_eq!(&canonical_key(&g.permuted(&perm)).unwrap(), key, "{s}");
            }
            assert_eq!(&CanonicalKey::from_base64(&key.to_base64()).unwrap(), key);
            assert!(is_isomorphic(&key.to_graph(), &g).unwrap());
        }
        assert_eq!(keys[2], keys[3]);
        assert_eq!(keys[6], keys[7]);
        for (i, j) in [(0, 1), (2, 4), (4, 5), (1, 2)] {
            assert_ne!(keys[i], keys[j], "{} vs {}", specs[i], specs[j]);
        }
    }

    #[test]
    fn symmetric_graphs_finish() {
        // star with twenty leaves: twin pruning keeps this linear
        let star = Graph::new(21, (1..21).map(|v| (0, v))).unwrap();
        let perm: Vec<usize> = (0..21).rev().collect();
        assert_eq!(canonical_key(&star).unwrap(), canonical_key(&star.permuted(&perm)).unwrap());
        let empty = Graph::empty(6);
        assert_eq!(canonical_key(&empty).unwrap().as_bytes(), &[1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn rejects_non_canonical_bytes() {
        // path 0-2-1 written with a non-minimal labeling
        let bytes = vec![3u8, 0b1100_0000];
        let g = decode(&bytes).unwrap();
        let canon = canonical_key(&g).unwrap();
        assert_ne!(canon.as_bytes(), bytes.as_slice());
        assert!(CanonicalKey::from_bytes(bytes).is_err());
        assert!(CanonicalKey::from_bytes(canon.as_bytes().to_vec()).is_ok());
    }
}
