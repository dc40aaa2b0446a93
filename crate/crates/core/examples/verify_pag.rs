//! Check which graphs a PAG correctly describes.

use ccd_kit::pag::verify_pag_against_graph;
use ccd_kit::{DirectedGraph, Pag};

pub fn main() {
    let pag = Pag::parse("A --> X\nB --> X\nA --> Y\nB --> Y\nX --- Y\ndotted: A X B\ndotted: A Y B\n").unwrap();
    let candidates = [
        ("feedback loop", vec![("A", "X"), ("B", "Y"), ("X", "Y"), ("Y", "X")]),
        ("crossed loop", vec![("A", "Y"), ("B", "X"), ("X", "Y"), ("Y", "X")]),
        ("acyclic", vec![("A", "X"), ("B", "X"), ("A", "Y"), ("B", "Y"), ("X", "Y")]),
    ];
    for (name, edges) in candidates {
        let g = DirectedGraph::from_edges(&edges).unwrap();
        let violations = verify_pag_against_graph(&pag, &g).unwrap();
        println!("{name}: {} violations", violations.len());
        for v in violations.iter().take(3) {
            println!("  {v}");
        }
    }
}
