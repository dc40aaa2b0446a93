//! Graph-theoretic facts the search relies on, checked by exhaustion.

use std::collections::HashSet;

use ccd_kit::dsep::{d_separated, witness_separator_idx};
use ccd_kit::DirectedGraph;
use itertools::Itertools;

use super::{others, subsets};

/// Descriptions of every failed check on `g`; empty when all hold.
pub fn counterexamples(g: &DirectedGraph) -> Vec<String> {
    let n = g.len();
    let mut bad = Vec::new();
    let mut fail = |what: &str, detail: String| bad.push(format!("{what}: {detail} in {g}"));
    for (x, y) in (0..n).tuple_combinations() {
        let adjacent = g.adjacent_idx(x, y);
        let rest = others(n, &[x, y]);
        let seps: Vec<Vec<usize>> = subsets(&rest).into_iter().filter(|s| d_separated(g, x, y, s)).collect();
        let sep_set: HashSet<&Vec<usize>> = seps.iter().collect();

        if adjacent && !seps.is_empty() {
            fail("adjacent pair separated", format!("{x},{y} by {:?}", seps[0]));
        }
        if adjacent {
            continue;
        }
        let anc_xy = g.ancestor_mask(&[x, y]);
        for (a, b) in [(x, y), (y, x)] {
            let t = witness_separator_idx(g, a, b, &[]);
            if !d_separated(g, a, b, &t) {
                fail("witness does not separate", format!("{a},{b} by {t:?}"));
            }
            if t.iter().any(|&v| !anc_xy[v]) {
                fail("witness member not an ancestor", format!("{a},{b}: {t:?}"));
            }
            if !g.is_ancestor_idx(a, b) && t.iter().any(|&v| !g.adjacent_idx(a, v)) {
                fail("witness member not adjacent", format!("{a},{b}: {t:?}"));
            }
        }
        let graph_adj = |v: usize| -> Vec<usize> { others(n, &[x, y]).into_iter().filter(|&w| g.adjacent_idx(v, w)).collect() };
        let local_found = subsets(&graph_adj(x)).iter().chain(subsets(&graph_adj(y)).iter()).any(|s| sep_set.contains(s));
        if !local_found {
            fail("no separator among neighbours", format!("{x},{y}"));
        }
        for s in &seps {
            let minimal = subsets(s).iter().filter(|t| t.len() < s.len()).all(|t| !sep_set.contains(t));
            if minimal && s.iter().any(|&v| !anc_xy[v]) {
                fail("minimal separator member not an ancestor", format!("{x},{y} by {s:?}"));
            }
            let mut reach: Vec<usize> = s.clone();
            reach.extend([x, y]);
            let anc = g.ancestor_mask(&reach);
            let extra: Vec<usize> = (0..n).filter(|&v| anc[v] && v != x && v != y && !s.contains(&v)).collect();
            for q in subsets(&extra) {
                let mut bigger: Vec<usize> = s.iter().chain(&q).copied().collect();
                bigger.sort_unstable();
                if !sep_set.contains(&bigger) {
                    fail("ancestral superset connects", format!("{x},{y} by {s:?} + {q:?}"));
                }
            }
        }
        for (a, c) in [(x, y), (y, x)] {
            let common: Vec<usize> = g.children_of(a).iter().copied().filter(|v| g.children_of(c).contains(v)).collect();
            let below_common = g.descendant_mask(&common);
            for b in others(n, &[a, c]) {
                if below_common[b] {
                    continue;
                }
                let t = witness_separator_idx(g, a, c, &[b]);
                if !d_separated(g, a, c, &t) {
                    fail("witness with extra vertex does not separate", format!("{a},{c} with {b}: {t:?}"));
                }
                if g.adjacent_idx(a, b) && g.adjacent_idx(b, c) && !t.contains(&b) {
                    fail("shared neighbour missing from witness", format!("{a},{c} with {b}: {t:?}"));
                }
            }
        }
    }
    bad
}
