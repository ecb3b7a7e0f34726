//! graph6 encoding for graphs with at most 62 vertices (single-byte size).

use super::Graph;
use crate::error::{Error, Result};

const MAX_N: usize = 62;

pub fn emit_graph6(g: &Graph) -> Result<String> {
    let n = g.n_vertices();
    if n > MAX_N {
        return Err(Error::GraphTooLarge { n, max: MAX_N });
    }
    let mut out = vec![(n + 63) as u8];
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 is ASCII"))
}

pub fn parse_graph6(s: &str) -> Result<Graph> {
    let bytes = s.as_bytes();
    let err = |offset: usize, message: &str| Error::Graph6 { offset, message: message.to_string() };
    let &first = bytes.first().ok_or_else(|| err(0, "empty input"))?;
    if !(63..=126).contains(&first) {
        return Err(err(0, "invalid size byte"));
    }
    let n = (first - 63) as usize;
    if n > MAX_N {
        return Err(err(0, "only single-byte sizes are supported"));
    }
    let body = &bytes[1..];
    let expected = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if body.len() != expected {
        return Err(err(
            1 + body.len().min(expected),
            &format!("expected {expected} edge bytes, found {}", body.len()),
        ));
    }
    if let Some(pos) = body.iter().position(|b| !(63..=126).contains(b)) {
        return Err(err(1 + pos, "byte outside the printable graph6 range"));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte & (0x20 >> (k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if k % 6 != 0 {
        let last = body[k / 6] - 63;
        if last & ((1u8 << (6 - k % 6)) - 1) != 0 {
            return Err(err(body.len(), "nonzero padding bits"));
        }
    }
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;

    #[test]
    fn k4_encodes_as_c_tilde() {
        let k4 = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(emit_graph6(&k4).unwrap(), "C~");
        assert_eq!(parse_graph6("C~").unwrap(), k4);
    }

    #[test]
    fn round_trips() {
        let c9 = Graph::cycle(9);
        let back = parse_graph6(&emit_graph6(&c9).unwrap()).unwrap();
        assert_eq!(back, c9);
        assert!(is_isomorphic(&back, &c9).unwrap());
        assert_eq!(parse_graph6("?").unwrap(), Graph::empty(0));
        assert_eq!(parse_graph6("@").unwrap(), Graph::empty(1));
        // five vertices, edges 0-2, 0-4, 1-3, 3-4
        let g = Graph::new(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(emit_graph6(&g).unwrap(), "DQc");
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_graph6(""), Err(Error::Graph6 { offset: 0, .. })));
        assert!(matches!(parse_graph6("C"), Err(Error::Graph6 { offset: 1, .. })));
        assert!(matches!(parse_graph6("C~~"), Err(Error::Graph6 { .. })));
        assert!(matches!(parse_graph6("C\x10"), Err(Error::Graph6 { offset: 1, .. })));
        assert!(matches!(parse_graph6(" "), Err(Error::Graph6 { offset: 0, .. })));
        // K_3 needs three bits; the low padding bits must be clear
        assert!(parse_graph6("Bw").is_ok());
        assert!(matches!(parse_graph6("Bx"), Err(Error::Graph6 { .. })));
        assert!(emit_graph6(&Graph::path(63)).is_err());
    }
}
