//! Wires the event engine, the scan bus and the pattern controller into one
//! scenario run.
//!
//! Neurons in this array never interact with each other: stimulus, slot
//! sampling and feedback are all per-neuron. Each neuron is therefore
//! simulated on its own engine, sequentially or in parallel, and the outputs
//! are merged in a fixed order, so thread count cannot change a single bit of
//! the result.

use std::time::Instant;

use aer_bus::{sample, AerError, ScanSchedule};
use event_engine::{Engine, EngineError, Monitor, NeuronCell, SlotPlan, SpikeEvent};
use neuron_core::{
    steady_state, BiasConfig, Direction, DriveInput, NeuronError, NeuronId, NeuronState, Ps,
};
use pattern_controller::{command_to_event, ControllerMode, ControllerState};
use rayon::prelude::*;
use thiserror::Error;

use crate::config::{ConfigError, ScenarioConfig};
use crate::mismatch::apply_mismatch;
use crate::summary::{build_summary, RunSummary};
use crate::trace::{quantize, Trace, TraceRow};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error("engine failure: {0}")]
    Engine(#[from] EngineError),

    #[error("neuron model failure: {0}")]
    Neuron(#[from] NeuronError),

    #[error("scan bus failure: {0}")]
    Aer(#[from] AerError),

    #[error("controller failure: {0}")]
    Controller(#[from] pattern_controller::ControllerError),

    #[error("thread pool failure: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    /// Worker threads; 0 or 1 runs strictly sequentially.
    pub threads: usize,
    /// Record every integration segment (drive and end state) for oracle
    /// replay.
    pub record_segments: bool,
}

/// One constant-drive integration segment as executed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentRecord {
    pub t_start_ps: Ps,
    pub t_end_ps: Ps,
    pub drive: DriveInput,
    pub end_state: NeuronState,
}

/// Everything one neuron produced during a run.
#[derive(Debug, Clone)]
pub struct NeuronRun {
    pub id: u32,
    pub initial_state: NeuronState,
    pub final_state: NeuronState,
    pub rows: Vec<TraceRow>,
    pub spike_times_ps: Vec<Ps>,
    pub downward_crossing_times_ps: Vec<Ps>,
    pub aer_active_times_ps: Vec<Ps>,
    pub samples_total: u64,
    pub resets: Vec<(Ps, Ps)>,
    pub stimulus_events: u64,
    pub events_applied: u64,
    pub peak_queue_depth: usize,
    pub segments_integrated: u64,
    pub segments: Vec<SegmentRecord>,
}

pub struct RunArtifacts {
    pub trace: Trace,
    pub summary: RunSummary,
    pub neuron_runs: Vec<NeuronRun>,
}

struct CellMonitor<'a> {
    traced: bool,
    schedule: &'a ScanSchedule,
    controller: ControllerState,
    latency_ps: Ps,
    record_segments: bool,
    rows: Vec<TraceRow>,
    spikes: Vec<Ps>,
    downs: Vec<Ps>,
    active_samples: Vec<Ps>,
    samples_total: u64,
    resets: Vec<(Ps, Ps)>,
    segments: Vec<SegmentRecord>,
    segments_integrated: u64,
}

impl Monitor for CellMonitor<'_> {
    fn on_slot(
        &mut self,
        t: Ps,
        neuron: NeuronId,
        state: &NeuronState,
        cfg: &BiasConfig,
    ) -> Option<SpikeEvent> {
        self.samples_total += 1;
        let s = sample(neuron, state, t, self.schedule, cfg).expect("neuron is in the schedule");
        if s.active {
            self.active_samples.push(t);
            if let Some(row) = self.rows.last_mut() {
                if row.time_ps == t {
                    row.aer_active = true;
                }
            }
        }
        let command = self.controller.on_sample(&s)?;
        self.resets.push((command.issue_time_ps, command.duration_ps));
        Some(command_to_event(&command, self.latency_ps))
    }

    fn on_crossing(&mut self, t: Ps, _neuron: NeuronId, direction: Direction) {
        match direction {
            Direction::Upward => self.spikes.push(t),
            Direction::Downward => self.downs.push(t),
        }
    }

    fn on_row(&mut self, t: Ps, neuron: NeuronId, state: &NeuronState, drive: &DriveInput) {
        if !self.traced {
            return;
        }
        let fresh = TraceRow {
            time_ps: t,
            neuron_id: neuron.0,
            v_syn: quantize(state.v_syn),
            v_mem: quantize(state.v_mem),
            exc: drive.i_exc > 0.0,
            inh: drive.i_inh > 0.0,
            rst: drive.i_rst > 0.0,
            aer_active: false,
            spike: false,
        };
        if let Some(last) = self.rows.last_mut() {
            if last.time_ps == t {
                // Same-instant update (an event was applied): refresh the
                // voltages and drive flags, keep the sticky readout flags.
                let aer_active = last.aer_active;
                let spike = last.spike;
                *last = fresh;
                last.aer_active = aer_active;
                last.spike = spike;
                return;
            }
        }
        self.rows.push(fresh);
    }

    fn on_segment(
        &mut self,
        _neuron: NeuronId,
        t_start: Ps,
        t_end: Ps,
        drive: &DriveInput,
        end_state: &NeuronState,
    ) {
        self.segments_integrated += 1;
        if self.record_segments {
            self.segments.push(SegmentRecord {
                t_start_ps: t_start,
                t_end_ps: t_end,
                drive: *drive,
                end_state: *end_state,
            });
        }
    }
}

fn run_one(
    neuron: u32,
    cfg: &ScenarioConfig,
    bias: BiasConfig,
    mode: ControllerMode,
    events: &[SpikeEvent],
    schedule: &ScanSchedule,
    record_segments: bool,
) -> Result<NeuronRun, RunError> {
    let id = NeuronId(neuron);
    let rest = steady_state(&bias)?;
    let traced = cfg.trace.neurons.contains(&neuron);
    let cell = NeuronCell::new(id, bias, rest)
        .with_stride(traced.then_some(cfg.trace.stride.0));
    let plan = SlotPlan {
        period_ps: schedule.period_ps,
        offsets: vec![Some(schedule.slot_offset(id)?)],
    };
    let mut engine = Engine::new(vec![cell], Some(plan));
    for event in events {
        engine.schedule(*event)?;
    }

    let mut monitor = CellMonitor {
        traced,
        schedule,
        controller: ControllerState::new(mode)?,
        latency_ps: cfg.feedback.latency.0,
        record_segments,
        rows: Vec::new(),
        spikes: Vec::new(),
        downs: Vec::new(),
        active_samples: Vec::new(),
        samples_total: 0,
        resets: Vec::new(),
        segments: Vec::new(),
        segments_integrated: 0,
    };
    // The scenario window is half-open: breakpoints strictly before
    // `duration` are processed, so every neuron sees exactly one slot per
    // whole period regardless of its offset; the final state is reported at
    // `duration` itself.
    let t_end = cfg.duration.0;
    engine.run_until(t_end - 1, &mut monitor)?;
    engine.finalize(t_end, &mut monitor)?;

    // Stamp each upward crossing onto the first row at or after it.
    for &t in &monitor.spikes {
        let idx = monitor.rows.partition_point(|r| r.time_ps < t);
        if let Some(row) = monitor.rows.get_mut(idx) {
            row.spike = true;
        }
    }

    let counters = engine.counters();
    Ok(NeuronRun {
        id: neuron,
        initial_state: rest,
        final_state: *engine.cells()[0].state(),
        rows: monitor.rows,
        spike_times_ps: monitor.spikes,
        downward_crossing_times_ps: monitor.downs,
        aer_active_times_ps: monitor.active_samples,
        samples_total: monitor.samples_total,
        resets: monitor.resets,
        stimulus_events: events.len() as u64,
        events_applied: counters.events_applied,
        peak_queue_depth: engine.queue().peak_len(),
        segments_integrated: monitor.segments_integrated,
        segments: monitor.segments,
    })
}

/// Runs a scenario and returns the merged trace and summary.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<(Trace, RunSummary), RunError> {
    let opts = RunOptions {
        threads: cfg.threads,
        record_segments: false,
    };
    let artifacts = run_scenario_with(cfg, opts)?;
    Ok((artifacts.trace, artifacts.summary))
}

pub fn run_scenario_with(
    cfg: &ScenarioConfig,
    opts: RunOptions,
) -> Result<RunArtifacts, RunError> {
    cfg.validate()?;
    let schedule = cfg.scan_schedule()?;
    let modes = cfg.controller_modes()?;
    let biases = apply_mismatch(cfg);
    let events = cfg.per_neuron_events();

    let job = |n: usize| -> Result<NeuronRun, RunError> {
        run_one(
            n as u32,
            cfg,
            biases[n],
            modes[n],
            &events[n],
            &schedule,
            opts.record_segments,
        )
    };

    let started = Instant::now();
    let n = cfg.n_neurons as usize;
    let neuron_runs: Vec<NeuronRun> = if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| RunError::Pool(e.to_string()))?;
        pool.install(|| (0..n).into_par_iter().map(job).collect::<Result<_, _>>())?
    } else {
        (0..n).map(job).collect::<Result<_, _>>()?
    };
    let wall_seconds = started.elapsed().as_secs_f64();

    let mut rows: Vec<TraceRow> = neuron_runs.iter().flat_map(|r| r.rows.clone()).collect();
    rows.sort_by_key(|r| (r.time_ps, r.neuron_id));
    let trace = Trace { rows };

    let summary = build_summary(cfg, &neuron_runs, wall_seconds);
    Ok(RunArtifacts {
        trace,
        summary,
        neuron_runs,
    })
}
