//! Recover the PAG of a feedback graph using exact d-separation answers.

use ccd_kit::{run_ccd, DirectedGraph, GraphOracle};

pub fn main() {
    let g = DirectedGraph::from_edges(&[("A", "X"), ("B", "Y"), ("X", "Y"), ("Y", "X")]).unwrap();
    let state = run_ccd(&GraphOracle::new(g)).unwrap();
    print!("{}", state.pag());
    println!("Graphviz:\n{}", state.pag().to_dot());
}
