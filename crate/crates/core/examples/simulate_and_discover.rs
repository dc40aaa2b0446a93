//! Simulate data from a linear feedback model and recover its PAG with
//! Fisher-z tests.

use ccd_kit::{run_ccd, FisherZOracle, LinearSem};

pub fn main() {
    let sem = LinearSem::parse("X <- A 0.6\nY <- B -0.5\nY <- X 0.55\nX <- Y 0.45\n").unwrap();
    println!("stable: {} (spectral radius {:.3})", sem.is_stable(), sem.spectral_radius());
    let data = sem.simulate(20_000, 1).unwrap();
    println!("sample partial correlation of A, B given X, Y: {:.4}", data.partial_correlation("A", "B", &["X", "Y"]).unwrap());
    let oracle = FisherZOracle::new(data, 0.01).unwrap();
    let state = run_ccd(&oracle).unwrap();
    print!("{}", state.pag());
    for c in state.conflicts() {
        println!("conflict in phase {}: {}", c.phase, c.detail);
    }
}
