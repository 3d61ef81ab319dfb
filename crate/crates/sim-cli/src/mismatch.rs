//! Per-neuron device mismatch.
//!
//! Each neuron draws five multiplicative factors (for `i_n0`, `i_p0`,
//! `c_syn`, `c_mem`, `i_s`) from Gaussians centred at 1. The generator is
//! counter-based: one stream per neuron keyed by the seed, so populations are
//! reproducible and independent of evaluation order.

use neuron_core::BiasConfig;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::config::ScenarioConfig;

/// Bias set for one neuron, jittered according to the scenario's mismatch
/// block.
pub fn neuron_biases(cfg: &ScenarioConfig, neuron: u32) -> BiasConfig {
    let sigmas = cfg.mismatch.sigmas();
    if sigmas.iter().all(|&s| s == 0.0) {
        return cfg.biases;
    }
    let seed = cfg.mismatch.seed.unwrap_or(cfg.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::from(neuron) + 1);

    let mut factor = |sigma: f64| -> f64 {
        if sigma == 0.0 {
            return 1.0;
        }
        let normal = Normal::new(1.0, sigma).expect("validated sigma");
        // Redraw the (astronomically unlikely) non-positive factors so the
        // bias invariants cannot be violated.
        loop {
            let f: f64 = normal.sample(&mut rng);
            if f > 0.0 {
                return f;
            }
        }
    };

    let mut biases = cfg.biases;
    biases.i_n0 *= factor(sigmas[0]);
    biases.i_p0 *= factor(sigmas[1]);
    biases.c_syn *= factor(sigmas[2]);
    biases.c_mem *= factor(sigmas[3]);
    biases.i_s *= factor(sigmas[4]);
    biases
}

/// Jittered bias sets for the whole array.
pub fn apply_mismatch(cfg: &ScenarioConfig) -> Vec<BiasConfig> {
    (0..cfg.n_neurons).map(|n| neuron_biases(cfg, n)).collect()
}
