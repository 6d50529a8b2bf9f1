//! Shared fixtures for the criterion benches.

use pa_diameter::{generate, PAGraph, Params, RngSeed};

pub fn fixture(n: u32, m: i64, delta: f64) -> PAGraph {
    let params = Params::new(m, delta).expect("valid fixture parameters");
    generate(n, params, RngSeed(0x5eed)).expect("fixture generation")
}
