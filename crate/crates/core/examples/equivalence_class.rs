//! List every graph that entails the same d-separations as a given one.

use ccd_kit::equiv::{enumerate_equiv_class, fingerprint, markov_equivalent};
use ccd_kit::DirectedGraph;

pub fn main() {
    let g = DirectedGraph::from_edges(&[("A", "X"), ("B", "Y"), ("X", "Y"), ("Y", "X")]).unwrap();
    println!("{} separation facts", fingerprint(&g).unwrap().len());
    for member in enumerate_equiv_class(&g).unwrap() {
        println!("member: {member}");
    }
    let chain = DirectedGraph::from_edges(&[("A", "B"), ("B", "C")]).unwrap();
    let collider = DirectedGraph::from_edges(&[("A", "B"), ("C", "B")]).unwrap();
    println!("chain ~ collider: {}", markov_equivalent(&chain, &collider).unwrap());
}
