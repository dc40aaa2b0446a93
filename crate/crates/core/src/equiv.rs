//! Markov equivalence by exhaustive d-separation comparison.
//!
//! Two graphs over the same vertices are equivalent when exactly the same
//! pairs are d-separated by exactly the same conditioning sets. Set-valued
//! separation statements follow from the pairwise ones, so the fingerprint
//! records pairs only.

use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::digraph::{DirectedGraph, VertexId};
use crate::dsep::d_separated;

/// Largest graph [`fingerprint`] accepts.
pub const MAX_FINGERPRINT_VERTICES: usize = 12;
/// Default size limit for [`enumerate_equiv_class`].
pub const DEFAULT_CLASS_VERTICES: usize = 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EquivError {
    #[error("graph has {have} vertices; the limit is {limit}")]
    TooLarge { have: usize, limit: usize },
    #[error("graphs have different vertex sets")]
    VertexMismatch,
}

/// Every `(x, y, s)` with `x < y` and `x ⫫ y | s` in the graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DsepFingerprint {
    vertices: Vec<VertexId>,
    entries: BTreeSet<(usize, usize, Vec<usize>)>,
}

impl DsepFingerprint {
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn entries(&self) -> &BTreeSet<(usize, usize, Vec<usize>)> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, x: usize, y: usize, s: &[usize]) -> bool {
        let mut s = s.to_vec();
        s.sort_unstable();
        self.entries.contains(&(x.min(y), x.max(y), s))
    }
}

fn entries(g: &DirectedGraph) -> BTreeSet<(usize, usize, Vec<usize>)> {
    let n = g.len();
    let mut out = BTreeSet::new();
    for (x, y) in (0..n).tuple_combinations() {
        let rest: Vec<usize> = (0..n).filter(|&v| v != x && v != y).collect();
        for s in rest.into_iter().powerset() {
            if d_separated(g, x, y, &s) {
                out.insert((x, y, s));
            }
        }
    }
    out
}

pub fn fingerprint(g: &DirectedGraph) -> Result<DsepFingerprint, EquivError> {
    if g.len() > MAX_FINGERPRINT_VERTICES {
        return Err(EquivError::TooLarge { have: g.len(), limit: MAX_FINGERPRINT_VERTICES });
    }
    Ok(DsepFingerprint { vertices: g.vertices().to_vec(), entries: entries(g) })
}

pub fn markov_equivalent(g1: &DirectedGraph, g2: &DirectedGraph) -> Result<bool, EquivError> {
    if g1.vertices() != g2.vertices() {
        return Err(EquivError::VertexMismatch);
    }
    Ok(fingerprint(g1)? == fingerprint(g2)?)
}

/// All graphs over `g`'s vertices equivalent to `g`, ordered by edge list.
/// Limited to [`DEFAULT_CLASS_VERTICES`] vertices.
pub fn enumerate_equiv_class(g: &DirectedGraph) -> Result<Vec<DirectedGraph>, EquivError> {
    enumerate_equiv_class_up_to(g, DEFAULT_CLASS_VERTICES)
}

/// As [`enumerate_equiv_class`] with a caller-chosen vertex limit. The
/// search visits all `2^(n(n-1))` graphs, so limits above 5 are impractical;
/// 8 is a hard cap.
pub fn enumerate_equiv_class_up_to(g: &DirectedGraph, limit: usize) -> Result<Vec<DirectedGraph>, EquivError> {
    let n = g.len();
    let limit = limit.min(8);
    if n > limit {
        return Err(EquivError::TooLarge { have: n, limit });
    }
    let target = entries(g);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let mut members: Vec<DirectedGraph> = (0..1u64 << pairs.len())
        .into_par_iter()
        .filter_map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            let candidate = g.with_edges(edges);
            (entries(&candidate) == target).then_some(candidate)
        })
        .collect();
    members.sort_by_cached_key(|m| m.edges().collect::<Vec<_>>());
    Ok(members)
}
