//! Behavioral model of a compact conductance-based silicon neuron.
//!
//! One neuron is a pair of capacitor nodes: a synapse node `v_syn` driven by
//! pulse-width-coded excitatory/inhibitory current pulses, and a soma node
//! `v_mem` charged by a pA-scale pull-up and coupled to the synapse through a
//! diode-like level shifter. All currents are ideal sources with hard rail
//! clamping at `[0, vdd]`.
//!
//! The crate provides the current laws, an exact closed-form integrator for
//! the decoupled (level-shifter off) regime, an adaptive stepper for the
//! coupled regime, a steady-state solver, and a brute-force fixed-substep
//! reference integrator used as an independent oracle by the test suites.

mod bias;
mod currents;
mod error;
mod linear;
pub mod reference;
mod steady;
mod step;
mod types;

pub use bias::BiasConfig;
pub use currents::{currents, leak_current_n, leak_current_p, shift_current};
pub use error::NeuronError;
pub use linear::step_exact_linear;
pub use steady::steady_state;
pub use step::{detect_threshold, step, step_detailed, Crossing, Direction, StepOutcome};
pub use types::{CurrentBreakdown, DriveInput, NeuronId, NeuronState};

/// Picoseconds, the integer clock used everywhere outside the integrator.
pub type Ps = u64;

/// Seconds per picosecond.
pub const PS: f64 = 1e-12;

pub const fn ps_from_ns(ns: u64) -> Ps {
    ns * 1_000
}

pub const fn ps_from_us(us: u64) -> Ps {
    us * 1_000_000
}

pub const fn ps_from_ms(ms: u64) -> Ps {
    ms * 1_000_000_000
}

/// Converts an integer picosecond timestamp to seconds (exact below 2^53 ps).
pub fn ps_to_seconds(t: Ps) -> f64 {
    t as f64 * PS
}
