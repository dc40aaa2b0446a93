//! Step through the six phases and watch the PAG change.

use ccd_kit::ccd::{phase_a, phase_b, phase_c, phase_d, phase_e, phase_f, CcdState};
use ccd_kit::oracle::RecordingOracle;
use ccd_kit::{DirectedGraph, GraphOracle, IndependenceOracle};

pub fn main() {
    let g = DirectedGraph::from_edges(&[("A", "X"), ("B", "Y"), ("X", "Y"), ("Y", "X")]).unwrap();
    let oracle = GraphOracle::new(g);
    let rec = RecordingOracle::new(&oracle);
    let mut st = CcdState::new(oracle.vertices().to_vec());

    phase_a(&mut st, &rec).unwrap();
    show("after adjacency search", &st);
    phase_b(&mut st);
    show("after collider orientation", &st);
    phase_c(&mut st, &rec).unwrap();
    phase_d(&mut st, &rec).unwrap();
    show("after supset search", &st);
    phase_e(&mut st);
    phase_f(&mut st, &rec).unwrap();
    show("final", &st);
    println!("distinct oracle queries: {}", rec.stats().total());
}

fn show(title: &str, st: &CcdState) {
    println!("== {title}");
    for (a, b, _, _) in st.pag().edges() {
        println!("  {}", st.pag().edge_line(a, b).unwrap());
    }
    for t in st.pag().dotted_underlines() {
        let supset: Vec<&str> = st.supset(t).unwrap().iter().map(|&v| st.pag().label(v).as_str()).collect();
        println!("  dotted {} (supset {})", st.pag().triple_name(t), supset.join(", "));
    }
}
