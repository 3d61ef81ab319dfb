//! Throughput reporting.

use serde::Serialize;

use crate::config::ScenarioConfig;
use crate::runner::{run_scenario_with, RunError, RunOptions};
use crate::summary::EventCounts;

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub n_neurons: u32,
    pub model_seconds: f64,
    pub wall_seconds: f64,
    /// Neurons times model seconds advanced per wall second.
    pub throughput: f64,
    pub peak_queue_depth: usize,
    pub counts: EventCounts,
}

impl std::fmt::Display for BenchReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "neurons:            {}", self.n_neurons)?;
        writeln!(f, "model time:         {:.6} s", self.model_seconds)?;
        writeln!(f, "wall time:          {:.3} s", self.wall_seconds)?;
        writeln!(f, "throughput:         {:.3e} neuron*s/s", self.throughput)?;
        writeln!(f, "peak queue depth:   {}", self.peak_queue_depth)?;
        writeln!(f, "stimulus events:    {}", self.counts.stimulus_events)?;
        writeln!(f, "feedback events:    {}", self.counts.feedback_events)?;
        writeln!(f, "events applied:     {}", self.counts.events_applied)?;
        writeln!(f, "samples:            {}", self.counts.samples)?;
        writeln!(f, "active samples:     {}", self.counts.active_samples)?;
        writeln!(f, "output spikes:      {}", self.counts.output_spikes)?;
        write!(
            f,
            "integration steps:  {}",
            self.counts.integration_segments
        )
    }
}

/// Runs the scenario and summarizes it as a throughput report. Event counts
/// are deterministic; only the timing fields vary between runs.
pub fn run_bench(cfg: &ScenarioConfig, threads: usize) -> Result<BenchReport, RunError> {
    let artifacts = run_scenario_with(
        cfg,
        RunOptions {
            threads,
            record_segments: false,
        },
    )?;
    let s = &artifacts.summary;
    Ok(BenchReport {
        n_neurons: cfg.n_neurons,
        model_seconds: s.model_time_ps as f64 * 1e-12,
        wall_seconds: s.wall_seconds,
        throughput: s.throughput,
        peak_queue_depth: s.peak_queue_depth,
        counts: s.counts,
    })
}
