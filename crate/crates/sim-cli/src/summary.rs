//! The run summary: per-neuron spike/readout/reset records plus global event
//! counts and throughput, with the fully-resolved configuration embedded so
//! every run is self-describing.

use neuron_core::Ps;
use serde::Serialize;

use crate::config::ScenarioConfig;
use crate::runner::NeuronRun;

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub config: ScenarioConfig,
    pub model_time_ps: Ps,
    pub wall_seconds: f64,
    /// Neurons times simulated model seconds, per wall-clock second.
    pub throughput: f64,
    pub peak_queue_depth: usize,
    pub counts: EventCounts,
    pub neurons: Vec<NeuronSummary>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EventCounts {
    pub stimulus_events: u64,
    pub feedback_events: u64,
    pub events_applied: u64,
    pub samples: u64,
    pub active_samples: u64,
    pub output_spikes: u64,
    pub downward_crossings: u64,
    pub integration_segments: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct NeuronSummary {
    pub id: u32,
    pub spike_times_ps: Vec<Ps>,
    pub downward_crossing_times_ps: Vec<Ps>,
    pub aer_active_times_ps: Vec<Ps>,
    pub resets: Vec<ResetRecord>,
    pub samples_total: u64,
    pub final_v_syn: f64,
    pub final_v_mem: f64,
    pub initial_v_syn: f64,
    pub initial_v_mem: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ResetRecord {
    pub time_ps: Ps,
    pub duration_ps: Ps,
}

pub fn build_summary(
    cfg: &ScenarioConfig,
    runs: &[NeuronRun],
    wall_seconds: f64,
) -> RunSummary {
    let mut counts = EventCounts::default();
    let mut neurons = Vec::with_capacity(runs.len());
    let mut peak_queue_depth = 0;
    for run in runs {
        counts.stimulus_events += run.stimulus_events;
        counts.feedback_events += run.resets.len() as u64;
        counts.events_applied += run.events_applied;
        counts.samples += run.samples_total;
        counts.active_samples += run.aer_active_times_ps.len() as u64;
        counts.output_spikes += run.spike_times_ps.len() as u64;
        counts.downward_crossings += run.downward_crossing_times_ps.len() as u64;
        counts.integration_segments += run.segments_integrated;
        peak_queue_depth = peak_queue_depth.max(run.peak_queue_depth);
        neurons.push(NeuronSummary {
            id: run.id,
            spike_times_ps: run.spike_times_ps.clone(),
            downward_crossing_times_ps: run.downward_crossing_times_ps.clone(),
            aer_active_times_ps: run.aer_active_times_ps.clone(),
            resets: run
                .resets
                .iter()
                .map(|&(time_ps, duration_ps)| ResetRecord {
                    time_ps,
                    duration_ps,
                })
                .collect(),
            samples_total: run.samples_total,
            final_v_syn: run.final_state.v_syn,
            final_v_mem: run.final_state.v_mem,
            initial_v_syn: run.initial_state.v_syn,
            initial_v_mem: run.initial_state.v_mem,
        });
    }
    let model_seconds = cfg.duration.0 as f64 * 1e-12;
    let throughput = if wall_seconds > 0.0 {
        cfg.n_neurons as f64 * model_seconds / wall_seconds
    } else {
        f64::INFINITY
    };
    RunSummary {
        config: cfg.clone(),
        model_time_ps: cfg.duration.0,
        wall_seconds,
        throughput,
        peak_queue_depth,
        counts,
        neurons,
    }
}

impl RunSummary {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}
