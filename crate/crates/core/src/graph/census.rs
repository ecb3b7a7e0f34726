//! Counts of small (not necessarily induced) subgraphs on four vertices.

use serde::{Deserialize, Serialize};

use super::Graph;

/// Subgraph counts used by the fourth-coefficient identity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphCensus {
    /// matchings of size two (`2P_2`)
    pub e2: u64,
    pub p3_k1: u64,
    pub c3_k1: u64,
    pub p4: u64,
    pub k13: u64,
    /// triangle with a pendant edge (paw)
    pub d4: u64,
    pub c4: u64,
    pub triangles: u64,
}

/// Direct enumeration over pairs, triples and quadruples of edges.
pub fn subgraph_census(g: &Graph) -> SubgraphCensus {
    let n = g.n_vertices() as u64;
    let edges = g.edges();
    let m = edges.len();
    let mut c = SubgraphCensus::default();
    let mut p3 = 0u64;
    let mut verts: Vec<usize> = Vec::with_capacity(8);
    let mut spanned = |sel: &[usize]| -> (usize, [u8; 8], [usize; 8]) {
        verts.clear();
        for &e in sel {
            let (u, v) = edges[e];
            verts.push(u);
            verts.push(v);
        }
        let mut ids = [usize::MAX; 8];
        let mut deg = [0u8; 8];
        let mut k = 0;
        for &v in verts.iter() {
            match ids[..k].iter().position(|&x| x == v) {
                Some(i) => deg[i] += 1,
                None => {
                    ids[k] = v;
                    deg[k] = 1;
                    k += 1;
                }
            }
        }
        (k, deg, ids)
    };
    for a in 0..m {
        for b in a + 1..m {
            let (k, _, _) = spanned(&[a, b]);
            if k == 4 {
                c.e2 += 1;
            } else {
                p3 += 1;
            }
            for t in b + 1..m {
                let (k, deg, _) = spanned(&[a, b, t]);
                match k {
                    3 => c.triangles += 1,
                    4 if deg[..4].contains(&3) => c.k13 += 1,
                    4 => c.p4 += 1,
                    _ => {}
                }
                for q in t + 1..m {
                    let (k, deg, _) = spanned(&[a, b, t, q]);
                    if k == 4 {
                        if deg[..4].iter().all(|&d| d == 2) {
                            c.c4 += 1;
                        } else {
                            c.d4 += 1;
                        }
                    }
                }
            }
        }
    }
    c.p3_k1 = p3 * n.saturating_sub(3);
    c.c3_k1 = c.triangles * n.saturating_sub(3);
    c
}
