//! Simple undirected graphs and the structural queries used throughout.

mod canon;
mod census;
mod families;
mod graph6;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use canon::{canonical_form, canonical_key, is_isomorphic, CanonicalKey, MAX_CANONICAL_COMPONENT};
pub use census::{subgraph_census, SubgraphCensus};
pub use families::{build_graph, GraphSpec, NamedGraph};
pub use graph6::{emit_graph6, parse_graph6};

/// An immutable simple graph on vertices `0..n`.
///
/// Adjacency lists are kept sorted, so two graphs compare equal exactly when
/// they have the same labeled edge set.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if adj[u].contains(&v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj })
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn n_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn n_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .collect()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n_vertices() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n_vertices() });
        }
        Ok(())
    }

    /// Subgraph induced on `keep` (which must be sorted), relabeled densely in
    /// the order given.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n_vertices()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                let mut ns: Vec<usize> =
                    self.adj[v].iter().filter_map(|&w| (index[w] != usize::MAX).then_some(index[w])).collect();
                ns.sort_unstable();
                ns
            })
            .collect();
        Graph { adj }
    }

    /// Induced subgraph on the vertices for which `keep` is true.
    pub fn retain(&self, keep: impl Fn(usize) -> bool) -> Graph {
        let kept: Vec<usize> = (0..self.n_vertices()).filter(|&v| keep(v)).collect();
        self.induced(&kept)
    }

    /// `G - v`, remaining vertices re-indexed densely in their original order.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        Ok(self.retain(|w| w != v))
    }

    /// `G - N[v]`.
    pub fn delete_closed_neighborhood(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let mut gone = vec![false; self.n_vertices()];
        gone[v] = true;
        for &w in &self.adj[v] {
            gone[w] = true;
        }
        Ok(self.retain(|w| !gone[w]))
    }

    /// `(G - e, G - (N(u) ∪ N(v)))` for `e = uv`.
    pub fn delete_edge_closure(&self, u: usize, v: usize) -> Result<(Graph, Graph)> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        let mut without = self.clone();
        without.adj[u].retain(|&w| w != v);
        without.adj[v].retain(|&w| w != u);
        let mut gone = vec![false; self.n_vertices()];
        for &w in self.adj[u].iter().chain(&self.adj[v]) {
            gone[w] = true;
        }
        Ok((without, self.retain(|w| !gone[w])))
    }

    /// Vertex sets of the connected components, each sorted, in order of
    /// smallest vertex.
    pub fn component_vertex_sets(&self) -> Vec<Vec<usize>> {
        let n = self.n_vertices();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n_vertices() > 0 && self.component_vertex_sets().len() == 1
    }

    /// Connected components as graphs, ordered by canonical key when every
    /// component is within the canonical-form bound and by (size, labeled
    /// structure) otherwise.
    pub fn connected_components(&self) -> Vec<Graph> {
        let mut comps: Vec<Graph> = self.component_vertex_sets().iter().map(|vs| self.induced(vs)).collect();
        let keys: Option<Vec<CanonicalKey>> = comps.iter().map(|c| canonical_key(c).ok()).collect();
        match keys {
            Some(keys) => {
                let mut paired: Vec<(CanonicalKey, Graph)> = keys.into_iter().zip(comps).collect();
                paired.sort_by(|a, b| a.0.cmp(&b.0));
                paired.into_iter().map(|(_, g)| g).collect()
            }
            None => {
                comps.sort_by_key(|c| (c.n_vertices(), c.edges()));
                comps
            }
        }
    }

    /// Connected with exactly as many edges as vertices.
    pub fn is_unicyclic(&self) -> bool {
        self.is_connected() && self.n_edges() == self.n_vertices()
    }

    /// `degree -> number of vertices with that degree`.
    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for list in &self.adj {
            *h.entry(list.len()).or_insert(0) += 1;
        }
        h
    }

    pub fn triangle_count(&self) -> usize {
        let mut t = 0;
        for u in 0..self.n_vertices() {
            for &v in self.adj[u].iter().filter(|&&v| v > u) {
                for &w in self.adj[v].iter().filter(|&&w| w > v) {
                    if self.has_edge(u, w) {
                        t += 1;
                    }
                }
            }
        }
        t
    }

    /// Disjoint union; vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n_vertices();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|ns| ns.iter().map(|&w| w + off).collect::<Vec<_>>()));
        Graph { adj }
    }

    pub fn union_all<'a>(parts: impl IntoIterator<Item = &'a Graph>) -> Graph {
        parts.into_iter().fold(Graph::empty(0), |acc, g| acc.disjoint_union(g))
    }

    /// Relabel: vertex `order[i]` of `self` becomes vertex `i`.
    pub fn permuted(&self, order: &[usize]) -> Graph {
        assert_eq!(order.len(), self.n_vertices());
        let mut inv = vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            inv[v] = i;
        }
        let adj = order
            .iter()
            .map(|&v| {
                let mut ns: Vec<usize> = self.adj[v].iter().map(|&w| inv[w]).collect();
                ns.sort_unstable();
                ns
            })
            .collect();
        Graph { adj }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({self})")
    }
}

/// Edge-list text form: `n; u-v, u-v, ...`.
impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.n_vertices())?;
        for (i, (u, v)) in self.edges().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {u}-{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Graph> {
        let bad = |m: &str| Error::Spec(format!("edge list {s:?}: {m}"));
        let (head, tail) = s.split_once(';').ok_or_else(|| bad("missing ';'"))?;
        let n: usize = head.trim().parse().map_err(|_| bad("bad vertex count"))?;
        let mut edges = Vec::new();
        for item in tail.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (a, b) = item.split_once('-').ok_or_else(|| bad("edge without '-'"))?;
            let a = a.trim().parse().map_err(|_| bad("bad endpoint"))?;
            let b = b.trim().parse().map_err(|_| bad("bad endpoint"))?;
            edges.push((a, b));
        }
        Graph::new(n, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> Graph {
        build_graph(&s.parse::<GraphSpec>().unwrap()).unwrap()
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert_eq!(Graph::new(3, [(0, 3)]), Err(Error::VertexOutOfRange { vertex: 3, n: 3 }));
        assert_eq!(Graph::new(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(Graph::new(3, [(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
    }

    #[test]
    fn vertex_deletion() {
        let c3 = Graph::cycle(3);
        for v in 0..3 {
            assert!(is_isomorphic(&c3.delete_vertex(v).unwrap(), &Graph::path(2)).unwrap());
        }
        assert_eq!(Graph::cycle(9).delete_vertex(0).unwrap(), Graph::path(8));
        // D_5: a=0, top=1, b=2 (degree 3), tail 3-4
        let d5 = spec("D5");
        assert_eq!(d5.degree(2), 3);
        let g = d5.delete_vertex(2).unwrap();
        assert_eq!(g.n_edges(), 5 - 3);
        let sizes: Vec<usize> = g.connected_components().iter().map(Graph::n_vertices).collect();
        assert_eq!(sizes, vec![2, 2]);
        assert!(Graph::cycle(4).delete_vertex(4).is_err());
    }

    #[test]
    fn closed_neighbourhood_deletion() {
        for v in 0..3 {
            assert_eq!(Graph::cycle(3).delete_closed_neighborhood(v).unwrap().n_vertices(), 0);
        }
        for v in 0..9 {
            let g = Graph::cycle(9).delete_closed_neighborhood(v).unwrap();
            assert!(is_isomorphic(&g, &Graph::path(6)).unwrap());
        }
    }

    #[test]
    fn edge_closure() {
        let (a, b) = Graph::cycle(3).delete_edge_closure(0, 1).unwrap();
        assert!(is_isomorphic(&a, &Graph::path(3)).unwrap());
        assert_eq!(b.n_vertices(), 0);
        let (a, b) = Graph::cycle(5).delete_edge_closure(1, 2).unwrap();
        assert!(is_isomorphic(&a, &Graph::path(5)).unwrap());
        assert_eq!(b, Graph::path(1));
        let (a, b) = Graph::path(2).delete_edge_closure(0, 1).unwrap();
        assert_eq!(a, Graph::empty(2));
        assert_eq!(b.n_vertices(), 0);
        assert_eq!(Graph::cycle(5).delete_edge_closure(0, 2), Err(Error::NotAnEdge(0, 2)));
    }

    #[test]
    fn components() {
        let g = spec("C3 + C5");
        let comps = g.connected_components();
        assert_eq!(comps.iter().map(Graph::n_vertices).collect::<Vec<_>>(), vec![3, 5]);
        assert!(Graph::empty(0).connected_components().is_empty());
        let g = spec("Union(C3, C5, A(3,1))");
        let mut sizes: Vec<usize> = g.connected_components().iter().map(Graph::n_vertices).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![3, 5, 7]);
    }

    #[test]
    fn unicyclicity() {
        assert!(Graph::cycle(7).is_unicyclic());
        assert!(!Graph::path(5).is_unicyclic());
        let b = spec("B(1,2,1)");
        assert_eq!((b.n_vertices(), b.n_edges()), (8, 8));
        assert!(b.is_unicyclic());
        assert!(!spec("C3 + C3").is_unicyclic());
    }

    #[test]
    fn degree_histograms() {
        let h = |s: &str| spec(s).degree_histogram().into_iter().collect::<Vec<_>>();
        assert_eq!(h("C9"), vec![(2, 9)]);
        assert_eq!(h("D9"), vec![(1, 1), (2, 7), (3, 1)]);
        assert_eq!(h("C3 + A(2,1)"), vec![(1, 2), (2, 5), (3, 2)]);
        assert_eq!(h("D5"), vec![(1, 1), (2, 3), (3, 1)]);
    }

    #[test]
    fn edge_list_text_round_trip() {
        let g = spec("D5");
        let text = g.to_string();
        assert_eq!(text, "5; 0-1, 0-2, 1-2, 2-3, 3-4");
        assert_eq!(text.parse::<Graph>().unwrap(), g);
        assert_eq!("0;".parse::<Graph>().unwrap(), Graph::empty(0));
        assert!("3; 0-5".parse::<Graph>().is_err());
    }
}
