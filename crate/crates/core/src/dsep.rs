//! d-connection and d-separation in directed graphs, cyclic or not.
//!
//! Two independent routes are provided. [`d_connected`] is a reachability
//! search over (vertex, arrival direction) states and is what the rest of
//! the crate uses. [`brute_force_d_connected`] enumerates every acyclic
//! undirected path and checks the collider conditions literally; it is
//! exponential and exists to cross-check the engine.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::digraph::{intersect_sorted, DirectedGraph, GraphError, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DsepError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("query sets must be pairwise disjoint (vertex `{0}` repeats)")]
    Overlap(String),
    #[error("query endpoint sets must be nonempty")]
    EmptyEndpoints,
    #[error("witness separator needs two distinct vertices outside the extra set")]
    BadWitnessArgs,
}

/// `x` d-connected to `y` given `z`? Sets are vertex indices, pairwise
/// disjoint, with `x` and `y` nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationQuery {
    x: Vec<usize>,
    y: Vec<usize>,
    z: Vec<usize>,
}

impl SeparationQuery {
    pub fn new<S: AsRef<str>>(g: &DirectedGraph, x: &[S], y: &[S], z: &[S]) -> Result<Self, DsepError> {
        Self::from_indices(g, &g.indices_of(x)?, &g.indices_of(y)?, &g.indices_of(z)?)
    }

    pub fn from_indices(g: &DirectedGraph, x: &[usize], y: &[usize], z: &[usize]) -> Result<Self, DsepError> {
        let norm = |s: &[usize]| -> Vec<usize> {
            let set: BTreeSet<usize> = s.iter().copied().collect();
            set.into_iter().collect()
        };
        let (x, y, z) = (norm(x), norm(y), norm(z));
        if x.is_empty() || y.is_empty() {
            return Err(DsepError::EmptyEndpoints);
        }
        let mut seen = vec![false; g.len()];
        for &v in x.iter().chain(&y).chain(&z) {
            if v >= g.len() {
                return Err(GraphError::UnknownVertex(format!("#{v}")).into());
            }
            if seen[v] {
                return Err(DsepError::Overlap(g.label(v).to_string()));
            }
            seen[v] = true;
        }
        Ok(SeparationQuery { x, y, z })
    }

    pub fn pair(g: &DirectedGraph, x: usize, y: usize, z: &[usize]) -> Result<Self, DsepError> {
        Self::from_indices(g, &[x], &[y], z)
    }

    pub fn x(&self) -> &[usize] {
        &self.x
    }

    pub fn y(&self) -> &[usize] {
        &self.y
    }

    pub fn z(&self) -> &[usize] {
        &self.z
    }
}

/// Reachability-based d-connection test.
///
/// A state is a vertex together with whether it was entered along an edge
/// pointing into it (`from_parent`) or out of it. Walks over states may
/// revisit vertices, but any active walk can be shortened to an active
/// acyclic path, so the answer matches the path definition.
pub fn d_connected(g: &DirectedGraph, q: &SeparationQuery) -> bool {
    let n = g.len();
    let mut in_z = vec![false; n];
    for &v in &q.z {
        in_z[v] = true;
    }
    let mut is_target = vec![false; n];
    for &v in &q.y {
        is_target[v] = true;
    }
    let active_collider = g.ancestor_mask(&q.z);

    // visited[2 * v] = entered from a child, visited[2 * v + 1] = from a parent
    let mut visited = vec![false; 2 * n];
    let mut queue = VecDeque::new();
    for &x in &q.x {
        visited[2 * x] = true;
        queue.push_back((x, false));
    }
    while let Some((v, from_parent)) = queue.pop_front() {
        if is_target[v] {
            return true;
        }
        let mut push = |w: usize, from_parent: bool| {
            let slot = 2 * w + from_parent as usize;
            if !visited[slot] {
                visited[slot] = true;
                queue.push_back((w, from_parent));
            }
        };
        if !from_parent {
            // v is a tail-end on the walk so far: non-collider whichever way we leave
            if !in_z[v] {
                for &p in g.parents_of(v) {
                    push(p, false);
                }
                for &c in g.children_of(v) {
                    push(c, true);
                }
            }
        } else {
            if !in_z[v] {
                for &c in g.children_of(v) {
                    push(c, true);
                }
            }
            if active_collider[v] {
                for &p in g.parents_of(v) {
                    push(p, false);
                }
            }
        }
    }
    false
}

/// Index-level shortcut: are `x` and `y` d-separated given `z`?
///
/// Panics if the sets overlap; callers in hot loops are expected to pass
/// valid input.
pub fn d_separated(g: &DirectedGraph, x: usize, y: usize, z: &[usize]) -> bool {
    let q = SeparationQuery::pair(g, x, y, z).expect("valid separation query");
    !d_connected(g, &q)
}

/// How clause (ii) of the path definition is read by the brute-force
/// oracle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ColliderRule {
    /// A collider `B` on `A -> B <- C` needs a descendant of `B` in the
    /// conditioning set.
    #[default]
    DescendantOfCollider,
    /// The text as printed: a descendant of `C`, the vertex that follows
    /// the collider along the path.
    DescendantOfSuccessor,
}

/// Path-enumeration d-connection test with the standard collider rule.
pub fn brute_force_d_connected(g: &DirectedGraph, q: &SeparationQuery) -> bool {
    brute_force_d_connected_with(g, q, ColliderRule::DescendantOfCollider)
}

pub fn brute_force_d_connected_with(g: &DirectedGraph, q: &SeparationQuery, rule: ColliderRule) -> bool {
    let n = g.len();
    let mut in_z = vec![false; n];
    for &v in &q.z {
        in_z[v] = true;
    }
    let mut is_target = vec![false; n];
    for &v in &q.y {
        is_target[v] = true;
    }
    // has_desc_in_z[v]: some descendant of v (v included) lies in z
    let has_desc_in_z = g.ancestor_mask(&q.z);
    let mut search = PathSearch { g, in_z: &in_z, is_target: &is_target, has_desc_in_z: &has_desc_in_z, rule };
    q.x.iter().any(|&x| {
        let mut on_path = vec![false; n];
        on_path[x] = true;
        search.extend(x, None, &mut on_path)
    })
}

struct PathSearch<'a> {
    g: &'a DirectedGraph,
    in_z: &'a [bool],
    is_target: &'a [bool],
    has_desc_in_z: &'a [bool],
    rule: ColliderRule,
}

impl PathSearch<'_> {
    /// Extends a path ending at `v`. `arrived_into_v` is `None` at the start
    /// vertex, else whether the last edge points into `v`.
    fn extend(&mut self, v: usize, arrived_into_v: Option<bool>, on_path: &mut [bool]) -> bool {
        // Each neighbor can be reached by an edge out of v and/or into v;
        // with a 2-cycle both are distinct path edges.
        let steps: Vec<(usize, bool)> = self
            .g
            .children_of(v)
            .iter()
            .map(|&w| (w, true))
            .chain(self.g.parents_of(v).iter().map(|&w| (w, false)))
            .collect();
        for (w, into_w) in steps {
            if on_path[w] {
                continue;
            }
            if let Some(into_v) = arrived_into_v {
                // the next edge points into v exactly when it is w -> v
                let collider = into_v && !into_w;
                if collider {
                    let witness = match self.rule {
                        ColliderRule::DescendantOfCollider => v,
                        ColliderRule::DescendantOfSuccessor => w,
                    };
                    if !self.has_desc_in_z[witness] {
                        continue;
                    }
                } else if self.in_z[v] {
                    continue;
                }
            }
            if self.is_target[w] {
                return true;
            }
            on_path[w] = true;
            let found = self.extend(w, Some(into_w), on_path);
            on_path[w] = false;
            if found {
                return true;
            }
        }
        false
    }
}

/// Symmetric convenience wrapper over labels.
pub fn d_separated_labels<S: AsRef<str>>(g: &DirectedGraph, x: &[S], y: &[S], z: &[S]) -> Result<bool, DsepError> {
    Ok(!d_connected(g, &SeparationQuery::new(g, x, y, z)?))
}

/// The separator built from `x`'s children and their parents:
///
/// `S = Children(x) ∩ Ancestors({x, y} ∪ extra)`,
/// `T = (Parents(S ∪ {x}) ∪ S) \ (Descendants(Children(x) ∩ Children(y)) ∪ {x, y})`.
///
/// `T` is returned whether or not it actually separates. When `x` and `y`
/// are not adjacent (no edge, no common child that is an ancestor of
/// either) it does, and with `extra = {w}` for `w` adjacent to both and not
/// below a common child, `w` is a member.
pub fn witness_separator_idx(g: &DirectedGraph, x: usize, y: usize, extra: &[usize]) -> Vec<usize> {
    let n = g.len();
    let mut roots = vec![x, y];
    roots.extend_from_slice(extra);
    let anc = g.ancestor_mask(&roots);
    let s: Vec<usize> = g.children_of(x).iter().copied().filter(|&c| anc[c]).collect();

    let mut t = vec![false; n];
    for &p in g.parents_of(x) {
        t[p] = true;
    }
    for &c in &s {
        t[c] = true;
        for &p in g.parents_of(c) {
            t[p] = true;
        }
    }
    let common_children = intersect_sorted(g.children_of(x), g.children_of(y));
    let below_common = g.descendant_mask(&common_children);
    (0..n).filter(|&v| t[v] && !below_common[v] && v != x && v != y).collect()
}

pub fn witness_separator<S: AsRef<str>>(
    g: &DirectedGraph,
    x: &str,
    y: &str,
    extra: &[S],
) -> Result<BTreeSet<VertexId>, DsepError> {
    let (xi, yi) = (g.index_of(x)?, g.index_of(y)?);
    let extra = g.indices_of(extra)?;
    if xi == yi || extra.contains(&xi) || extra.contains(&yi) {
        return Err(DsepError::BadWitnessArgs);
    }
    Ok(g.to_labels(witness_separator_idx(g, xi, yi, &extra)))
}
