//! Count independence tests per phase and compare with worst-case bounds.

use ccd_kit::ccd::{adjacency_test_bound, max_degree, supset_test_bound};
use ccd_kit::oracle::Phase;
use ccd_kit::{run_ccd, DirectedGraph, GraphOracle};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let g = DirectedGraph::random(6, 0.2, &mut rng);
        let st = run_ccd(&GraphOracle::new(g.clone())).unwrap();
        let n = g.len();
        let m = st.local().unwrap().iter().map(Vec::len).max().unwrap_or(0);
        println!(
            "{g}\n  adjacency tests {} (bound {}), supset tests {} (bound {})",
            st.stats().phase_total(Phase::A),
            adjacency_test_bound(n, max_degree(st.pag())),
            st.stats().phase_total(Phase::D),
            supset_test_bound(n, m),
        );
    }
}
