//! Named graph families and the textual graph-spec language.
//!
//! Syntax, case-sensitive, terms joined by `+` (or `∪`) form a disjoint union:
//!
//! ```text
//! C9  Cycle(9)  P4  Path(4)  D9  Dn(9)  A(2,1)  B(0,1,1)  E(1,2)
//! K1_3  K4_minus_e  Ga Gb Gc Gd Ga' Gb' Gc'  Union(C3, A(2,1))
//! g6:C~   "6; 0-1, 1-2"
//! ```

use std::fmt;
use std::str::FromStr;

use super::{parse_graph6, Graph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NamedGraph {
    Ga,
    Gb,
    Gc,
    Gd,
    GaPrime,
    GbPrime,
    GcPrime,
}

impl NamedGraph {
    pub const ALL: [NamedGraph; 7] = [
        NamedGraph::Ga,
        NamedGraph::Gb,
        NamedGraph::Gc,
        NamedGraph::Gd,
        NamedGraph::GaPrime,
        NamedGraph::GbPrime,
        NamedGraph::GcPrime,
    ];

    pub fn id(self) -> &'static str {
        match self {
            NamedGraph::Ga => "Ga",
            NamedGraph::Gb => "Gb",
            NamedGraph::Gc => "Gc",
            NamedGraph::Gd => "Gd",
            NamedGraph::GaPrime => "Ga'",
            NamedGraph::GbPrime => "Gb'",
            NamedGraph::GcPrime => "Gc'",
        }
    }

    fn from_id(s: &str) -> Option<NamedGraph> {
        NamedGraph::ALL.into_iter().find(|g| g.id() == s)
    }

    /// Fixed edge lists; vertex numbering is part of the definition.
    fn edges(self) -> (usize, &'static [(usize, usize)]) {
        match self {
            // triangle with a pendant vertex and a two-vertex arm
            NamedGraph::Ga => (6, &[(0, 1), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5)]),
            // four-cycle with a two-vertex tail
            NamedGraph::Gb => (6, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (4, 5)]),
            // five-cycle with a pendant vertex
            NamedGraph::Gc => (6, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 4), (4, 5)]),
            // triangle, stem vertex, two pendant leaves on the stem
            NamedGraph::Gd => (6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5)]),
            NamedGraph::GaPrime => (7, &[(0, 1), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6)]),
            NamedGraph::GbPrime => (7, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6)]),
            NamedGraph::GcPrime => (7, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5), (5, 6)]),
        }
    }
}

/// A family constructor term. Parameter bounds are enforced when parsing and
/// again when building.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphSpec {
    Cycle(usize),
    Path(usize),
    Dn(usize),
    A(usize, usize),
    B(usize, usize, usize),
    E(usize, usize),
    K13,
    K4MinusE,
    Named(NamedGraph),
    Union(Vec<GraphSpec>),
    Graph6(String),
    EdgeList(String),
}

impl GraphSpec {
    pub fn validate(&self) -> Result<()> {
        let need = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::Spec(format!("{self}: requires {what}")))
            }
        };
        match *self {
            GraphSpec::Cycle(n) => need(n >= 3, "n >= 3"),
            GraphSpec::Path(n) => need(n >= 1, "n >= 1"),
            GraphSpec::Dn(n) => need(n >= 4, "n >= 4"),
            GraphSpec::A(m1, m2) => need(m1 >= 1 && m2 >= 1, "m1 >= 1 and m2 >= 1"),
            GraphSpec::B(_, m2, m3) => need(m2 >= 1 && m3 >= 1, "m1 >= 0, m2 >= 1 and m3 >= 1"),
            GraphSpec::E(m1, m2) => need(m1 >= 1 && m2 >= 1, "m1 >= 1 and m2 >= 1"),
            GraphSpec::Union(ref parts) => parts.iter().try_for_each(GraphSpec::validate),
            _ => Ok(()),
        }
    }

    pub fn vertex_count(&self) -> Option<usize> {
        Some(match *self {
            GraphSpec::Cycle(n) | GraphSpec::Path(n) | GraphSpec::Dn(n) => n,
            GraphSpec::A(m1, m2) | GraphSpec::E(m1, m2) => m1 + m2 + 3,
            GraphSpec::B(m1, m2, m3) => m1 + m2 + m3 + 4,
            GraphSpec::K13 | GraphSpec::K4MinusE => 4,
            GraphSpec::Named(g) => g.edges().0,
            GraphSpec::Union(ref parts) => {
                return parts.iter().map(GraphSpec::vertex_count).sum();
            }
            GraphSpec::Graph6(_) | GraphSpec::EdgeList(_) => return None,
        })
    }

    pub fn union(parts: Vec<GraphSpec>) -> GraphSpec {
        GraphSpec::Union(parts)
    }
}

/// Build the labeled graph for a spec.
///
/// Fixed labelings: for `A(m1, m2)` vertex 0 is `v`, 1 is
/// `v_0`, 2 is `u_0`, then `v_1..v_{m1}` and `u_1..u_{m2}`; for `E(m1, m2)`
/// the cycle occupies `0..m1+3` with the attachment vertex at 0, then
/// `v_1..v_{m2}`; for `B(m1, m2, m3)` the triangle is `0, 1, 2` with 2 the
/// stem end, then `v_1..v_{m1}`, `v`, `u_1..u_{m2}`, `w_1..w_{m3}`; for `D_n`
/// vertex 0 is `a`, 1 the top vertex, 2 is `b` and the tail follows.
pub fn build_graph(spec: &GraphSpec) -> Result<Graph> {
    spec.validate()?;
    match spec {
        GraphSpec::Cycle(n) => Ok(Graph::cycle(*n)),
        GraphSpec::Path(n) => Ok(Graph::path(*n)),
        GraphSpec::Dn(n) => {
            let mut edges = vec![(0, 1), (0, 2), (1, 2)];
            edges.extend((3..*n).map(|i| (i - 1, i)));
            Graph::new(*n, edges)
        }
        GraphSpec::A(m1, m2) => {
            let (m1, m2) = (*m1, *m2);
            let mut edges = vec![(0, 1), (0, 2), (1, 2)];
            let v = |i: usize| if i == 0 { 1 } else { 2 + i };
            let u = |i: usize| if i == 0 { 2 } else { 2 + m1 + i };
            edges.extend((1..=m1).map(|i| (v(i - 1), v(i))));
            edges.extend((1..=m2).map(|i| (u(i - 1), u(i))));
            Graph::new(m1 + m2 + 3, edges)
        }
        GraphSpec::E(m1, m2) => {
            let c = m1 + 3;
            let mut edges: Vec<(usize, usize)> = (0..c).map(|i| (i, (i + 1) % c)).collect();
            let v = |i: usize| if i == 0 { 0 } else { c - 1 + i };
            edges.extend((1..=*m2).map(|i| (v(i - 1), v(i))));
            Graph::new(c + m2, edges)
        }
        GraphSpec::B(m1, m2, m3) => {
            let (m1, m2, m3) = (*m1, *m2, *m3);
            let mut edges = vec![(0, 1), (0, 2), (1, 2)];
            // stem: 2, v_1..v_{m1}, v
            let stem: Vec<usize> = std::iter::once(2).chain(3..3 + m1 + 1).collect();
            edges.extend(stem.windows(2).map(|w| (w[0], w[1])));
            let v = 3 + m1;
            let u: Vec<usize> = std::iter::once(v).chain(v + 1..v + 1 + m2).collect();
            edges.extend(u.windows(2).map(|w| (w[0], w[1])));
            let w: Vec<usize> = std::iter::once(v).chain(v + 1 + m2..v + 1 + m2 + m3).collect();
            edges.extend(w.windows(2).map(|p| (p[0], p[1])));
            Graph::new(m1 + m2 + m3 + 4, edges)
        }
        GraphSpec::K13 => Graph::new(4, [(0, 1), (0, 2), (0, 3)]),
        GraphSpec::K4MinusE => Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]),
        GraphSpec::Named(g) => {
            let (n, edges) = g.edges();
            Graph::new(n, edges.iter().copied())
        }
        GraphSpec::Union(parts) => {
            parts.iter().map(build_graph).collect::<Result<Vec<_>>>().map(|gs| Graph::union_all(&gs))
        }
        GraphSpec::Graph6(s) => parse_graph6(s),
        GraphSpec::EdgeList(s) => s.parse(),
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Cycle(n) => write!(f, "C{n}"),
            GraphSpec::Path(n) => write!(f, "P{n}"),
            GraphSpec::Dn(n) => write!(f, "D{n}"),
            GraphSpec::A(a, b) => write!(f, "A({a},{b})"),
            GraphSpec::B(a, b, c) => write!(f, "B({a},{b},{c})"),
            GraphSpec::E(a, b) => write!(f, "E({a},{b})"),
            GraphSpec::K13 => write!(f, "K1_3"),
            GraphSpec::K4MinusE => write!(f, "K4_minus_e"),
            GraphSpec::Named(g) => write!(f, "{}", g.id()),
            GraphSpec::Union(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            GraphSpec::Graph6(s) => write!(f, "g6:{s}"),
            GraphSpec::EdgeList(s) => write!(f, "{s}"),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<GraphSpec> {
        let s = s.trim();
        if s.contains(';') {
            // validate eagerly so parse errors surface at parse time
            s.parse::<Graph>()?;
            return Ok(GraphSpec::EdgeList(s.to_string()));
        }
        let mut p = Parser { src: s, pos: 0 };
        let spec = p.union()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.error("trailing input"));
        }
        spec.validate()?;
        Ok(spec)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Spec(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn union(&mut self) -> Result<GraphSpec> {
        let mut parts = vec![self.term()?];
        while self.eat("+") || self.eat("∪") {
            parts.push(self.term()?);
        }
        Ok(if parts.len() == 1 { parts.pop().expect("one part") } else { GraphSpec::Union(parts) })
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected a number"));
        }
        let n = self.rest()[..digits].parse().map_err(|_| self.error("number out of range"))?;
        self.pos += digits;
        Ok(n)
    }

    fn args(&mut self, count: usize) -> Result<Vec<usize>> {
        if !self.eat("(") {
            return Err(self.error("expected '('"));
        }
        let mut out = Vec::new();
        for i in 0..count {
            if i > 0 && !self.eat(",") {
                return Err(self.error("expected ','"));
            }
            out.push(self.number()?);
        }
        if !self.eat(")") {
            return Err(self.error("expected ')'"));
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<GraphSpec> {
        self.skip_ws();
        if self.eat("g6:") {
            let body: String =
                self.rest().chars().take_while(|c| !c.is_whitespace() && *c != '+' && *c != ',' && *c != ')').collect();
            self.pos += body.len();
            parse_graph6(&body)?;
            return Ok(GraphSpec::Graph6(body));
        }
        if self.eat("Union(") {
            let mut parts = vec![self.union()?];
            while self.eat(",") {
                parts.push(self.union()?);
            }
            if !self.eat(")") {
                return Err(self.error("expected ')'"));
            }
            return Ok(GraphSpec::Union(parts));
        }
        let word: String = self
            .rest()
            .chars()
            .take_while(|c| c.is_ascii_alphanumeric() || *c == '_' || *c == '\'' || *c == '-')
            .collect();
        let alpha: String = word.chars().take_while(|c| c.is_ascii_alphabetic()).collect();
        // fixed names first
        for (name, spec) in
            [("K4_minus_e", GraphSpec::K4MinusE), ("K4-e", GraphSpec::K4MinusE), ("K1_3", GraphSpec::K13)]
        {
            if word == name {
                self.pos += name.len();
                return Ok(spec);
            }
        }
        if let Some(g) = NamedGraph::from_id(&word) {
            self.pos += word.len();
            return Ok(GraphSpec::Named(g));
        }
        self.pos += alpha.len();
        let with_args = self.rest().trim_start().starts_with('(');
        let one = |p: &mut Self| -> Result<usize> {
            if with_args {
                Ok(p.args(1)?[0])
            } else {
                p.number()
            }
        };
        match alpha.as_str() {
            "C" | "Cycle" => Ok(GraphSpec::Cycle(one(self)?)),
            "P" | "Path" => Ok(GraphSpec::Path(one(self)?)),
            "D" | "Dn" => Ok(GraphSpec::Dn(one(self)?)),
            "A" => {
                let a = self.args(2)?;
                Ok(GraphSpec::A(a[0], a[1]))
            }
            "E" => {
                let a = self.args(2)?;
                Ok(GraphSpec::E(a[0], a[1]))
            }
            "B" => {
                let a = self.args(3)?;
                Ok(GraphSpec::B(a[0], a[1], a[2]))
            }
            _ => Err(self.error("unknown graph name")),
        }
    }
}
