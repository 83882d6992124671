//! Shared fixtures for the pipeline benchmarks.

use forestmask_core::synth::{generate, SynthParams, SyntheticScene};

/// The standard 500x500 benchmark scene.
pub fn scene(side: usize) -> SyntheticScene {
    generate(&SynthParams {
        seed: 7,
        side,
        forest_fraction: 0.5,
    })
    .expect("valid synthetic parameters")
}
