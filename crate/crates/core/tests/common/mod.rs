#![allow(dead_code)]

pub mod lemmas;

use std::path::PathBuf;

use ccd_kit::digraph::default_labels;
use ccd_kit::{DirectedGraph, SeparationQuery};
use rand::Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn read_data(name: &str) -> String {
    std::fs::read_to_string(data_path(name)).unwrap()
}

/// Ordered pairs of distinct vertices; bit `i` of an edge mask is pair `i`.
pub fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect()
}

/// Every directed graph without self-loops on `n` labelled vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = DirectedGraph> {
    let pairs = ordered_pairs(n);
    let base = DirectedGraph::empty(default_labels(n));
    (0..1u64 << pairs.len()).map(move |mask| {
        base.with_edges(pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e))
    })
}

/// Each vertex lands in `x`, `y`, `z` or nowhere; `x` and `y` nonempty.
pub fn queries_from_roles(g: &DirectedGraph, roles: &[u8]) -> Option<SeparationQuery> {
    let pick = |r: u8| -> Vec<usize> { (0..roles.len()).filter(|&i| roles[i] == r).collect() };
    let (x, y, z) = (pick(0), pick(1), pick(2));
    if x.is_empty() || y.is_empty() {
        return None;
    }
    Some(SeparationQuery::from_indices(g, &x, &y, &z).unwrap())
}

/// Every valid query with set-valued endpoints.
pub fn all_queries(g: &DirectedGraph) -> Vec<SeparationQuery> {
    let n = g.len();
    let mut out = Vec::new();
    for code in 0..4usize.pow(n as u32) {
        let roles: Vec<u8> = (0..n).map(|i| (code / 4usize.pow(i as u32) % 4) as u8).collect();
        out.extend(queries_from_roles(g, &roles));
    }
    out
}

pub fn random_query<R: Rng>(g: &DirectedGraph, rng: &mut R) -> SeparationQuery {
    loop {
        let roles: Vec<u8> = (0..g.len()).map(|_| rng.random_range(0..4u8)).collect();
        if let Some(q) = queries_from_roles(g, &roles) {
            return q;
        }
    }
}

/// Subsets of `items`, all sizes.
pub fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0..1u32 << items.len())
        .map(|m| items.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &v)| v).collect())
        .collect()
}

pub fn others(n: usize, skip: &[usize]) -> Vec<usize> {
    (0..n).filter(|v| !skip.contains(v)).collect()
}
