//! Directed (possibly cyclic) graphs over labelled vertices.
//!
//! Vertices are kept sorted by label, so a vertex's index doubles as its
//! rank in the lexicographic order. Every "for each pair / triple" loop in
//! the crate walks indices in increasing order, which keeps all outputs
//! deterministic.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::FORMAT_HEADER;

/// A vertex label. Ordered lexicographically (byte order).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(label: impl Into<String>) -> Self {
        VertexId(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

impl From<&String> for VertexId {
    fn from(s: &String) -> Self {
        VertexId(s.clone())
    }
}

impl From<&VertexId> for VertexId {
    fn from(v: &VertexId) -> Self {
        v.clone()
    }
}

impl std::borrow::Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-loop on `{0}` is not allowed")]
    SelfLoop(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A directed graph `<V, E>`. Both `A -> B` and `B -> A` may be present;
/// self-loops may not. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectedGraph {
    labels: Vec<VertexId>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
}

impl DirectedGraph {
    /// Builds a graph from a vertex list and an edge list. Vertices named
    /// only in edges are added implicitly; repeated edges collapse.
    pub fn new<V, E, A, B>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator,
        V::Item: Into<VertexId>,
        E: IntoIterator<Item = (A, B)>,
        A: Into<VertexId>,
        B: Into<VertexId>,
    {
        let mut labels: BTreeSet<VertexId> = vertices.into_iter().map(Into::into).collect();
        let mut pairs = Vec::new();
        for (a, b) in edges {
            let (a, b) = (a.into(), b.into());
            if a == b {
                return Err(GraphError::SelfLoop(a.0));
            }
            labels.insert(a.clone());
            labels.insert(b.clone());
            pairs.push((a, b));
        }
        let labels: Vec<VertexId> = labels.into_iter().collect();
        let index: HashMap<&VertexId, usize> = labels.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let edges: Vec<(usize, usize)> = pairs.iter().map(|(a, b)| (index[a], index[b])).collect();
        Ok(Self::from_index_edges(labels, edges))
    }

    /// Convenience constructor: vertex set is exactly the edge endpoints.
    pub fn from_edges(edges: &[(&str, &str)]) -> Result<Self, GraphError> {
        Self::new(std::iter::empty::<VertexId>(), edges.iter().copied())
    }

    /// Edgeless graph on the given labels.
    pub fn empty<V>(vertices: V) -> Self
    where
        V: IntoIterator,
        V::Item: Into<VertexId>,
    {
        Self::new(vertices, std::iter::empty::<(VertexId, VertexId)>()).expect("no edges, no errors")
    }

    /// `labels` must already be sorted and unique; edges are index pairs.
    pub(crate) fn from_index_edges(labels: Vec<VertexId>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        let n = labels.len();
        let mut parents = vec![Vec::new(); n];
        let mut children = vec![Vec::new(); n];
        for (a, b) in edges {
            assert!(a != b && a < n && b < n, "invalid edge ({a}, {b})");
            parents[b].push(a);
            children[a].push(b);
        }
        for list in parents.iter_mut().chain(children.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        DirectedGraph { labels, parents, children }
    }

    /// Same vertex set, different edges.
    pub fn with_edges(&self, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Self::from_index_edges(self.labels.clone(), edges)
    }

    /// Random graph: each of the `n(n-1)` ordered pairs is an edge with
    /// probability `p`. Labels are `A`, `B`, ... for `n <= 26`.
    pub fn random<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Self {
        let labels = default_labels(n);
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && rng.random_bool(p) {
                    edges.push((a, b));
                }
            }
        }
        Self::from_index_edges(labels, edges)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &VertexId {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, GraphError> {
        self.labels
            .binary_search_by(|v| v.as_str().cmp(label))
            .map_err(|_| GraphError::UnknownVertex(label.to_owned()))
    }

    pub fn indices_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>, GraphError> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    pub fn parents_of(&self, i: usize) -> &[usize] {
        &self.parents[i]
    }

    pub fn children_of(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.children[from].binary_search(&to).is_ok()
    }

    /// Edges as index pairs, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.children.iter().enumerate().flat_map(|(a, cs)| cs.iter().map(move |&b| (a, b)))
    }

    pub fn edge_count(&self) -> usize {
        self.children.iter().map(Vec::len).sum()
    }

    pub fn parents(&self, x: &str) -> Result<BTreeSet<VertexId>, GraphError> {
        let i = self.index_of(x)?;
        Ok(self.to_labels(self.parents[i].iter().copied()))
    }

    pub fn children(&self, x: &str) -> Result<BTreeSet<VertexId>, GraphError> {
        let i = self.index_of(x)?;
        Ok(self.to_labels(self.children[i].iter().copied()))
    }

    /// Reflexive-transitive closure of the parent relation.
    pub fn ancestors<S: AsRef<str>>(&self, set: &[S]) -> Result<BTreeSet<VertexId>, GraphError> {
        let idx = self.indices_of(set)?;
        Ok(self.mask_to_labels(&self.ancestor_mask(&idx)))
    }

    /// Reflexive-transitive closure of the child relation.
    pub fn descendants<S: AsRef<str>>(&self, set: &[S]) -> Result<BTreeSet<VertexId>, GraphError> {
        let idx = self.indices_of(set)?;
        Ok(self.mask_to_labels(&self.descendant_mask(&idx)))
    }

    pub fn is_ancestor(&self, x: &str, y: &str) -> Result<bool, GraphError> {
        let (x, y) = (self.index_of(x)?, self.index_of(y)?);
        Ok(self.is_ancestor_idx(x, y))
    }

    pub fn adjacent_in_graph(&self, x: &str, y: &str) -> Result<bool, GraphError> {
        let (x, y) = (self.index_of(x)?, self.index_of(y)?);
        Ok(self.adjacent_idx(x, y))
    }

    pub fn ancestor_mask(&self, set: &[usize]) -> Vec<bool> {
        closure(&self.parents, set)
    }

    pub fn descendant_mask(&self, set: &[usize]) -> Vec<bool> {
        closure(&self.children, set)
    }

    /// Whether `x` is an ancestor of `y` (every vertex is its own ancestor).
    pub fn is_ancestor_idx(&self, x: usize, y: usize) -> bool {
        self.ancestor_mask(&[y])[x]
    }

    /// Adjacency in the sense that survives every conditioning set: a
    /// direct edge either way, or a common child that is an ancestor of
    /// `x` or `y`.
    pub fn adjacent_idx(&self, x: usize, y: usize) -> bool {
        assert_ne!(x, y, "adjacency is defined for distinct vertices");
        if self.has_edge(x, y) || self.has_edge(y, x) {
            return true;
        }
        let common: Vec<usize> = intersect_sorted(&self.children[x], &self.children[y]);
        if common.is_empty() {
            return false;
        }
        let anc = self.ancestor_mask(&[x, y]);
        common.iter().any(|&z| anc[z])
    }

    /// True if some directed cycle exists.
    pub fn has_cycle(&self) -> bool {
        // Kahn's algorithm: a cycle leaves vertices with positive in-degree.
        let n = self.len();
        let mut indeg: Vec<usize> = self.parents.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for &c in &self.children[v] {
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    queue.push_back(c);
                }
            }
        }
        seen < n
    }

    pub fn to_labels(&self, it: impl IntoIterator<Item = usize>) -> BTreeSet<VertexId> {
        it.into_iter().map(|i| self.labels[i].clone()).collect()
    }

    pub(crate) fn mask_to_labels(&self, mask: &[bool]) -> BTreeSet<VertexId> {
        self.to_labels(mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i))
    }

    /// Parses the line-based graph format.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: &str| GraphError::Parse { line: lineno + 1, message: message.to_owned() };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                ["vertex", label] => vertices.push(VertexId::from(*label)),
                [a, "->", b] => {
                    if a == b {
                        return Err(GraphError::Parse { line: lineno + 1, message: format!("self-loop on `{a}`") });
                    }
                    edges.push((VertexId::from(*a), VertexId::from(*b)));
                }
                _ => return Err(err("expected `vertex <label>` or `<label> -> <label>`")),
            }
        }
        Self::new(vertices, edges)
    }

    /// Vertices sorted, then edges sorted, after the format header.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(FORMAT_HEADER);
        out.push('\n');
        for v in &self.labels {
            out.push_str(&format!("vertex {v}\n"));
        }
        for (a, b) in self.edges() {
            out.push_str(&format!("{} -> {}\n", self.labels[a], self.labels[b]));
        }
        out
    }
}

impl fmt::Display for DirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> =
            self.edges().map(|(a, b)| format!("{}->{}", self.labels[a], self.labels[b])).collect();
        write!(f, "{{{}}}", edges.join(", "))
    }
}

/// `A`..`Z` for small graphs, zero-padded `V000`.. beyond that so that
/// lexicographic order matches numeric order.
pub fn default_labels(n: usize) -> Vec<VertexId> {
    if n <= 26 {
        (0..n).map(|i| VertexId(((b'A' + i as u8) as char).to_string())).collect()
    } else {
        let width = n.to_string().len();
        (0..n).map(|i| VertexId(format!("V{i:0width$}"))).collect()
    }
}

fn closure(next: &[Vec<usize>], start: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; next.len()];
    let mut queue = VecDeque::new();
    for &s in start {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &next[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

pub(crate) fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
