//! Scenario orchestration for the silicon neuron array simulator.
//!
//! Wires the event engine, the scan bus and the pattern controller together,
//! loads TOML scenario configurations (with the four built-in stimulus
//! programs), applies device mismatch, and writes deterministic CSV traces,
//! JSON run summaries and optional SVG plots.

pub mod bench;
pub mod config;
pub mod mismatch;
pub mod plot;
pub mod runner;
pub mod summary;
pub mod trace;

pub use config::{ConfigError, ScenarioConfig};
pub use runner::{run_scenario, run_scenario_with, RunArtifacts, RunOptions};
pub use summary::RunSummary;
pub use trace::{Trace, TraceRow};
