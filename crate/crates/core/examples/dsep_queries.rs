//! d-separation queries and the separating sets built from graph structure.

use ccd_kit::dsep::{d_separated_labels, witness_separator};
use std::collections::BTreeSet;

use ccd_kit::{DirectedGraph, VertexId};

pub fn main() {
    let g = DirectedGraph::from_edges(&[("A", "X"), ("B", "Y"), ("X", "Y"), ("Y", "X")]).unwrap();
    for given in [&[][..], &["X"][..], &["Y"][..], &["X", "Y"][..]] {
        let sep = d_separated_labels(&g, &["A"], &["B"], given).unwrap();
        println!("A, B given {given:?}: {}", if sep { "d-separated" } else { "d-connected" });
    }
    let t = witness_separator(&g, "A", "B", &["X"]).unwrap();
    println!("separator for A, B that must contain X: {}", names(&t));
    println!("ancestors of X: {}", names(&g.ancestors(&["X"]).unwrap()));
    println!("A adjacent to Y? {}", g.adjacent_in_graph("A", "Y").unwrap());
}

fn names(set: &BTreeSet<VertexId>) -> String {
    set.iter().map(VertexId::as_str).collect::<Vec<_>>().join(", ")
}
