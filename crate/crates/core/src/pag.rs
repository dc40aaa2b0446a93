//! Partial ancestral graphs.
//!
//! A PAG has an undirected skeleton whose edge endpoints carry one of three
//! marks, plus two kinds of triple annotations:
//!
//! - a tail at `A` on `A - B`: `A` is an ancestor of `B`;
//! - an arrow at `B` on `A - B`: `B` is not an ancestor of `A`;
//! - a circle: no claim;
//! - an underline on `A - B - C`: `B` is an ancestor of `A` or of `C`;
//! - a dotted underline on the collider `A *-> B <-* C`: `B` is not a
//!   descendant of a common child of `A` and `C`.
//!
//! Text format, one item per line:
//!
//! ```text
//! # ccd-kit format v1
//! vertex A
//! A --> X
//! X --- Y
//! dotted: A X B
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::digraph::{intersect_sorted, DirectedGraph, GraphError, VertexId};
use crate::dsep::d_separated;
use crate::FORMAT_HEADER;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EndpointMark {
    Circle,
    Tail,
    Arrow,
}

impl EndpointMark {
    fn left_glyph(self) -> char {
        match self {
            EndpointMark::Circle => 'o',
            EndpointMark::Tail => '-',
            EndpointMark::Arrow => '<',
        }
    }

    fn right_glyph(self) -> char {
        match self {
            EndpointMark::Circle => 'o',
            EndpointMark::Tail => '-',
            EndpointMark::Arrow => '>',
        }
    }

    fn from_glyph(c: char, left: bool) -> Option<Self> {
        match (c, left) {
            ('o', _) => Some(EndpointMark::Circle),
            ('-', _) => Some(EndpointMark::Tail),
            ('<', true) | ('>', false) => Some(EndpointMark::Arrow),
            _ => None,
        }
    }

    fn dot_name(self) -> &'static str {
        match self {
            EndpointMark::Circle => "odot",
            EndpointMark::Tail => "none",
            EndpointMark::Arrow => "normal",
        }
    }
}

/// Triple `a - b - c` with `b` in the middle; stored with `a < c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    a: usize,
    b: usize,
    c: usize,
}

impl Triple {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        assert!(a != b && b != c && a != c, "triple vertices must be distinct");
        Triple { a: a.min(c), b, c: a.max(c) }
    }

    pub fn ends(&self) -> (usize, usize) {
        (self.a, self.c)
    }

    pub fn middle(&self) -> usize {
        self.b
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PagError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no edge between `{0}` and `{1}`")]
    NoEdge(String, String),
    #[error("conflict at `{at}` on edge {at}-{other}: {existing:?} already set, refusing {requested:?}")]
    Conflict { at: String, other: String, existing: EndpointMark, requested: EndpointMark },
    #[error("triple {0} cannot carry both an underline and a dotted underline")]
    TripleConflict(String),
    #[error("triple {0} is not a collider, so it cannot be dotted")]
    NotCollider(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("PAG and graph have different vertex sets")]
    VertexMismatch,
}

/// A partial ancestral graph over a sorted vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pag {
    vertices: Vec<VertexId>,
    /// (lo, hi) -> [mark at lo, mark at hi]
    edges: BTreeMap<(usize, usize), [EndpointMark; 2]>,
    underlines: BTreeSet<Triple>,
    dotted: BTreeSet<Triple>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl Pag {
    /// No edges. `vertices` must be sorted and unique.
    pub fn empty(vertices: Vec<VertexId>) -> Self {
        assert!(vertices.windows(2).all(|w| w[0] < w[1]), "vertices must be sorted and unique");
        Pag { vertices, edges: BTreeMap::new(), underlines: BTreeSet::new(), dotted: BTreeSet::new() }
    }

    /// `o-o` between every pair.
    pub fn complete(vertices: Vec<VertexId>) -> Self {
        let mut p = Pag::empty(vertices);
        let n = p.len();
        for a in 0..n {
            for b in a + 1..n {
                p.edges.insert((a, b), [EndpointMark::Circle; 2]);
            }
        }
        p
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn label(&self, i: usize) -> &VertexId {
        &self.vertices[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, PagError> {
        self.vertices
            .binary_search_by(|v| v.as_str().cmp(label))
            .map_err(|_| GraphError::UnknownVertex(label.to_owned()).into())
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.contains_key(&key(a, b))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(lo, hi, mark at lo, mark at hi)`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, EndpointMark, EndpointMark)> + '_ {
        self.edges.iter().map(|(&(a, b), &[ma, mb])| (a, b, ma, mb))
    }

    pub fn add_edge(&mut self, a: usize, b: usize, at_a: EndpointMark, at_b: EndpointMark) {
        assert!(a != b && a < self.len() && b < self.len());
        let marks = if a < b { [at_a, at_b] } else { [at_b, at_a] };
        self.edges.insert(key(a, b), marks);
    }

    /// Removes the edge and any triple annotation that used it.
    pub fn remove_edge(&mut self, a: usize, b: usize) -> bool {
        let removed = self.edges.remove(&key(a, b)).is_some();
        if removed {
            let uses = |t: &Triple| t.b == a && (t.a == b || t.c == b) || t.b == b && (t.a == a || t.c == a);
            self.underlines.retain(|t| !uses(t));
            self.dotted.retain(|t| !uses(t));
        }
        removed
    }

    /// Vertices sharing an edge with `x`, in vertex order.
    pub fn adjacent(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&v| v != x && self.is_adjacent(x, v)).collect()
    }

    /// Mark at `at` on the edge `at - other`, if the edge exists.
    pub fn mark(&self, at: usize, other: usize) -> Option<EndpointMark> {
        self.edges.get(&key(at, other)).map(|m| if at < other { m[0] } else { m[1] })
    }

    /// Sets the mark at `at` on edge `at - other`. Circles may be
    /// overwritten; an equal mark is a no-op; tail and arrow never replace
    /// each other. Returns whether anything changed.
    pub fn set_mark(&mut self, at: usize, other: usize, mark: EndpointMark) -> Result<bool, PagError> {
        let labels = (self.vertices[at].to_string(), self.vertices[other].to_string());
        let slot = self
            .edges
            .get_mut(&key(at, other))
            .map(|m| if at < other { &mut m[0] } else { &mut m[1] })
            .ok_or_else(|| PagError::NoEdge(labels.0.clone(), labels.1.clone()))?;
        if *slot == mark {
            return Ok(false);
        }
        if *slot != EndpointMark::Circle {
            return Err(PagError::Conflict { at: labels.0, other: labels.1, existing: *slot, requested: mark });
        }
        *slot = mark;
        Ok(true)
    }

    /// Both marks at `b` on `a - b` and `c - b` are arrows.
    pub fn is_collider(&self, a: usize, b: usize, c: usize) -> bool {
        self.mark(b, a) == Some(EndpointMark::Arrow) && self.mark(b, c) == Some(EndpointMark::Arrow)
    }

    pub fn underlines(&self) -> &BTreeSet<Triple> {
        &self.underlines
    }

    pub fn dotted_underlines(&self) -> &BTreeSet<Triple> {
        &self.dotted
    }

    pub fn is_underlined(&self, t: &Triple) -> bool {
        self.underlines.contains(t)
    }

    pub fn is_dotted(&self, t: &Triple) -> bool {
        self.dotted.contains(t)
    }

    fn check_triple_edges(&self, t: &Triple) -> Result<(), PagError> {
        for end in [t.a, t.c] {
            if !self.is_adjacent(end, t.b) {
                return Err(PagError::NoEdge(self.vertices[end].to_string(), self.vertices[t.b].to_string()));
            }
        }
        Ok(())
    }

    pub fn add_underline(&mut self, t: Triple) -> Result<(), PagError> {
        self.check_triple_edges(&t)?;
        if self.dotted.contains(&t) {
            return Err(PagError::TripleConflict(self.triple_name(&t)));
        }
        self.underlines.insert(t);
        Ok(())
    }

    pub fn add_dotted(&mut self, t: Triple) -> Result<(), PagError> {
        self.check_triple_edges(&t)?;
        if !self.is_collider(t.a, t.b, t.c) {
            return Err(PagError::NotCollider(self.triple_name(&t)));
        }
        if self.underlines.contains(&t) {
            return Err(PagError::TripleConflict(self.triple_name(&t)));
        }
        self.dotted.insert(t);
        Ok(())
    }

    pub fn triple_name(&self, t: &Triple) -> String {
        format!("{} {} {}", self.vertices[t.a], self.vertices[t.b], self.vertices[t.c])
    }

    /// Label-level neighbourhood.
    pub fn adjacent_in_pag(&self, x: &str) -> Result<BTreeSet<VertexId>, PagError> {
        let i = self.index_of(x)?;
        Ok(self.adjacent(i).into_iter().map(|v| self.vertices[v].clone()).collect())
    }

    /// One edge in glyph form, e.g. `A o-> X`.
    pub fn edge_line(&self, a: usize, b: usize) -> Option<String> {
        let (lo, hi) = key(a, b);
        let [ml, mh] = *self.edges.get(&(lo, hi))?;
        Some(format!("{} {}-{} {}", self.vertices[lo], ml.left_glyph(), mh.right_glyph(), self.vertices[hi]))
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(FORMAT_HEADER);
        out.push('\n');
        for v in &self.vertices {
            out.push_str(&format!("vertex {v}\n"));
        }
        for &(a, b) in self.edges.keys() {
            out.push_str(&self.edge_line(a, b).expect("edge exists"));
            out.push('\n');
        }
        for t in &self.underlines {
            out.push_str(&format!("underline: {}\n", self.triple_name(t)));
        }
        for t in &self.dotted {
            out.push_str(&format!("dotted: {}\n", self.triple_name(t)));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, PagError> {
        let mut labels: BTreeSet<VertexId> = BTreeSet::new();
        let mut edges = Vec::new();
        let mut triples = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| PagError::Parse { line: lineno + 1, message };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                ["vertex", v] => {
                    labels.insert(VertexId::from(*v));
                }
                [kind @ ("underline:" | "dotted:"), a, b, c] => {
                    let dotted = *kind == "dotted:";
                    for v in [a, b, c] {
                        labels.insert(VertexId::from(*v));
                    }
                    triples.push((lineno + 1, dotted, [*a, *b, *c]));
                }
                [a, glyph, b] => {
                    let chars: Vec<char> = glyph.chars().collect();
                    let (ma, mb) = match chars.as_slice() {
                        [l, '-', r] => (EndpointMark::from_glyph(*l, true), EndpointMark::from_glyph(*r, false)),
                        _ => (None, None),
                    };
                    let (Some(ma), Some(mb)) = (ma, mb) else {
                        return Err(err(format!("bad edge glyph `{glyph}`")));
                    };
                    if a == b {
                        return Err(err(format!("self-loop on `{a}`")));
                    }
                    labels.insert(VertexId::from(*a));
                    labels.insert(VertexId::from(*b));
                    edges.push((*a, *b, ma, mb));
                }
                _ => return Err(err(format!("unrecognised line `{line}`"))),
            }
        }
        let mut pag = Pag::empty(labels.into_iter().collect());
        for (a, b, ma, mb) in edges {
            let (a, b) = (pag.index_of(a)?, pag.index_of(b)?);
            pag.add_edge(a, b, ma, mb);
        }
        for (line, dotted, [a, b, c]) in triples {
            let (a, b, c) = (pag.index_of(a)?, pag.index_of(b)?, pag.index_of(c)?);
            if a == b || b == c || a == c {
                return Err(PagError::Parse { line, message: "triple vertices must be distinct".into() });
            }
            let t = Triple::new(a, b, c);
            let res = if dotted { pag.add_dotted(t) } else { pag.add_underline(t) };
            res.map_err(|e| PagError::Parse { line, message: e.to_string() })?;
        }
        Ok(pag)
    }

    /// Graphviz rendering. Triple annotations have no DOT equivalent and
    /// are listed in a comment block.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph pag {\n");
        for v in &self.vertices {
            out.push_str(&format!("  {};\n", quote(v.as_str())));
        }
        for (a, b, ma, mb) in self.edges() {
            out.push_str(&format!(
                "  {} -> {} [dir=both, arrowtail={}, arrowhead={}];\n",
                quote(self.vertices[a].as_str()),
                quote(self.vertices[b].as_str()),
                ma.dot_name(),
                mb.dot_name()
            ));
        }
        if !self.underlines.is_empty() || !self.dotted.is_empty() {
            out.push_str("  /*\n");
            for t in &self.underlines {
                out.push_str(&format!("   underline: {}\n", self.triple_name(t)));
            }
            for t in &self.dotted {
                out.push_str(&format!("   dotted: {}\n", self.triple_name(t)));
            }
            out.push_str("  */\n");
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for Pag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Which PAG condition a [`Violation`] breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// edge present iff d-connected given every subset of the others
    Adjacency,
    /// tail at `A` requires `A` to be an ancestor of `B`
    Tail,
    /// arrow at `B` requires `B` not to be an ancestor of `A`
    Arrow,
    /// underlined middle must be an ancestor of an end
    Underline,
    /// dotted middle must not descend from a common child of the ends
    Dotted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.condition, self.detail)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Check the skeleton too. Costs `2^(n-2)` separation tests per pair.
    pub check_adjacency: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { check_adjacency: true }
    }
}

/// Tests every claim a PAG makes against one concrete graph. A PAG for a
/// graph makes claims that hold in every equivalent graph, so in
/// particular in this one. An empty result means no claim is refuted.
pub fn verify_pag_against_graph(p: &Pag, g: &DirectedGraph) -> Result<Vec<Violation>, PagError> {
    verify_pag_with(p, g, VerifyOptions::default())
}

pub fn verify_pag_with(p: &Pag, g: &DirectedGraph, opts: VerifyOptions) -> Result<Vec<Violation>, PagError> {
    if p.vertices() != g.vertices() {
        return Err(PagError::VertexMismatch);
    }
    let n = g.len();
    let name = |i: usize| g.label(i).as_str();
    let ancestors: Vec<Vec<bool>> = (0..n).map(|v| g.ancestor_mask(&[v])).collect();
    // is_anc(x, y): x is an ancestor of y
    let is_anc = |x: usize, y: usize| ancestors[y][x];
    let mut out = Vec::new();

    if opts.check_adjacency {
        for a in 0..n {
            for b in a + 1..n {
                let rest: Vec<usize> = (0..n).filter(|&v| v != a && v != b).collect();
                let separator =
                    rest.iter().copied().powerset().find(|s| d_separated(g, a, b, s));
                match (p.is_adjacent(a, b), separator) {
                    (true, Some(s)) => out.push(Violation {
                        condition: Condition::Adjacency,
                        detail: format!(
                            "edge {}-{} but separated by {{{}}}",
                            name(a),
                            name(b),
                            s.iter().map(|&v| name(v)).join(", ")
                        ),
                    }),
                    (false, None) => out.push(Violation {
                        condition: Condition::Adjacency,
                        detail: format!("no edge {}-{} but no set separates them", name(a), name(b)),
                    }),
                    _ => {}
                }
            }
        }
    }

    for (a, b, ma, mb) in p.edges() {
        for (at, other, m) in [(a, b, ma), (b, a, mb)] {
            match m {
                EndpointMark::Tail if !is_anc(at, other) => out.push(Violation {
                    condition: Condition::Tail,
                    detail: format!("tail at {} on {}-{} but {} is not an ancestor of {}", name(at), name(at), name(other), name(at), name(other)),
                }),
                EndpointMark::Arrow if is_anc(at, other) => out.push(Violation {
                    condition: Condition::Arrow,
                    detail: format!("arrow at {} on {}-{} but {} is an ancestor of {}", name(at), name(other), name(at), name(at), name(other)),
                }),
                _ => {}
            }
        }
    }

    for t in p.underlines() {
        let (a, c) = t.ends();
        let b = t.middle();
        if !is_anc(b, a) && !is_anc(b, c) {
            out.push(Violation {
                condition: Condition::Underline,
                detail: format!("underline {} but {} is an ancestor of neither end", p.triple_name(t), name(b)),
            });
        }
    }

    for t in p.dotted_underlines() {
        let (a, c) = t.ends();
        let b = t.middle();
        let common = intersect_sorted(g.children_of(a), g.children_of(c));
        if g.descendant_mask(&common)[b] {
            out.push(Violation {
                condition: Condition::Dotted,
                detail: format!("dotted {} but {} descends from a common child", p.triple_name(t), name(b)),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use EndpointMark::*;

    fn abc() -> Vec<VertexId> {
        ["A", "B", "C"].map(VertexId::from).to_vec()
    }

    #[test]
    fn mark_transitions() {
        let mut p = Pag::complete(abc());
        assert_eq!(p.set_mark(1, 0, Arrow), Ok(true));
        assert_eq!(p.set_mark(1, 0, Arrow), Ok(false));
        assert_eq!(p.mark(1, 0), Some(Arrow));
        assert_eq!(p.mark(0, 1), Some(Circle));
        p.set_mark(0, 1, Tail).unwrap();
        assert!(matches!(p.set_mark(0, 1, Arrow), Err(PagError::Conflict { existing: Tail, requested: Arrow, .. })));
        assert!(matches!(p.set_mark(1, 0, Tail), Err(PagError::Conflict { .. })));
        p.remove_edge(0, 2);
        assert!(matches!(p.set_mark(0, 2, Tail), Err(PagError::NoEdge(..))));
    }

    #[test]
    fn adjacency_lists() {
        assert!(Pag::empty(vec![]).adjacent_in_pag("A").is_err());
        let p = Pag::complete(abc());
        let want: BTreeSet<VertexId> = ["B", "C"].map(VertexId::from).into_iter().collect();
        assert_eq!(p.adjacent_in_pag("A").unwrap(), want);
        assert!(Pag::empty(abc()).adjacent(0).is_empty());
    }

    #[test]
    fn triple_rules() {
        let mut p = Pag::complete(abc());
        p.remove_edge(0, 2);
        let t = Triple::new(2, 1, 0);
        assert_eq!(t, Triple::new(0, 1, 2));
        assert!(matches!(p.add_dotted(t), Err(PagError::NotCollider(_))));
        p.add_underline(t).unwrap();
        p.set_mark(1, 0, Arrow).unwrap();
        p.set_mark(1, 2, Arrow).unwrap();
        assert!(matches!(p.add_dotted(t), Err(PagError::TripleConflict(_))));
        assert!(p.add_underline(Triple::new(1, 0, 2)).is_err());
    }

    #[test]
    fn text_round_trip() {
        let mut p = Pag::complete(["A", "B", "X", "Y"].map(VertexId::from).to_vec());
        p.remove_edge(0, 1);
        for (at, other, m) in [(2, 0, Arrow), (0, 2, Tail), (2, 1, Arrow), (1, 2, Tail), (3, 0, Arrow), (3, 1, Arrow), (2, 3, Tail)] {
            p.set_mark(at, other, m).unwrap();
        }
        p.add_dotted(Triple::new(0, 2, 1)).unwrap();
        let text = p.serialize();
        assert!(text.contains("A --> X\n"));
        assert!(text.contains("A o-> Y\n"));
        assert!(text.contains("X --o Y\n"));
        assert!(text.contains("dotted: A X B\n"));
        assert_eq!(Pag::parse(&text).unwrap(), p);
        // reversed edge lines are normalised
        let q = Pag::parse("Y <-o A\n").unwrap();
        assert_eq!(q.edge_line(0, 1).unwrap(), "A o-> Y");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Pag::parse("A o=o B"), Err(PagError::Parse { line: 1, .. })));
        assert!(matches!(Pag::parse("A >-o B"), Err(PagError::Parse { .. })));
        assert!(matches!(Pag::parse("A o-o B\nunderline: A C B"), Err(PagError::Parse { line: 2, .. })));
    }

    #[test]
    fn dot_output() {
        let mut p = Pag::complete(["A", "B"].map(VertexId::from).to_vec());
        p.set_mark(1, 0, Arrow).unwrap();
        p.set_mark(0, 1, Tail).unwrap();
        let dot = p.to_dot();
        assert!(dot.contains("\"A\" -> \"B\" [dir=both, arrowtail=none, arrowhead=normal];"));
    }

    #[test]
    fn verification_catches_wrong_arrow() {
        let g = DirectedGraph::from_edges(&[("X", "Y"), ("Y", "X")]).unwrap();
        let mut p = Pag::complete(g.vertices().to_vec());
        p.set_mark(0, 1, Arrow).unwrap();
        let v = verify_pag_against_graph(&p, &g).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].condition, Condition::Arrow);
    }

    #[test]
    fn verification_of_empty_objects() {
        let g = DirectedGraph::empty(Vec::<VertexId>::new());
        assert!(verify_pag_against_graph(&Pag::empty(vec![]), &g).unwrap().is_empty());
        let g2 = DirectedGraph::empty(["A"]);
        assert_eq!(verify_pag_against_graph(&Pag::empty(vec![]), &g2), Err(PagError::VertexMismatch));
    }

    #[test]
    fn verification_checks_skeleton_both_ways() {
        let g = DirectedGraph::from_edges(&[("A", "B"), ("B", "C")]).unwrap();
        let p = Pag::complete(abc());
        let v = verify_pag_against_graph(&p, &g).unwrap();
        assert_eq!(v.len(), 1, "{v:?}");
        assert!(v[0].detail.contains("separated by {B}"));
        let mut q = Pag::complete(abc());
        q.remove_edge(0, 1);
        q.remove_edge(0, 2);
        let v = verify_pag_with(&q, &g, VerifyOptions { check_adjacency: true }).unwrap();
        assert_eq!(v.len(), 1, "only A - B is wrongly missing: {v:?}");
        assert!(verify_pag_with(&q, &g, VerifyOptions { check_adjacency: false }).unwrap().is_empty());
    }
}
