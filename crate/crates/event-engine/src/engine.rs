//! The simulation engine: lazy per-neuron advancement between breakpoints.
//!
//! Each neuron's state is pinned to its most recent canonical breakpoint
//! (pulse edge, scan slot, trace mark). `run_until` never introduces
//! integration boundaries of its own, so splitting a run across multiple
//! calls reproduces the single-call trajectory bit for bit.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use neuron_core::{
    ps_to_seconds, step_detailed, BiasConfig, Direction, DriveInput, NeuronId, NeuronState, Ps,
};

use crate::{ActiveWindows, EngineError, EventQueue, SpikeEvent};

#[cfg(test)]
use crate::PulseKind;

/// Scan-slot timing for the neurons owned by an engine, index-aligned with
/// the engine's cell list. `None` means the neuron is never scanned.
#[derive(Debug, Clone)]
pub struct SlotPlan {
    pub period_ps: Ps,
    pub offsets: Vec<Option<Ps>>,
}

/// Observer callbacks invoked by the engine in deterministic order.
///
/// `on_slot` may return a feedback event (typically a reset pulse), which the
/// engine schedules; it must not land before the slot instant.
pub trait Monitor {
    fn on_slot(
        &mut self,
        _t: Ps,
        _neuron: NeuronId,
        _state: &NeuronState,
        _cfg: &BiasConfig,
    ) -> Option<SpikeEvent> {
        None
    }

    fn on_crossing(&mut self, _t: Ps, _neuron: NeuronId, _direction: Direction) {}

    /// State snapshot at a breakpoint. May be called repeatedly for the same
    /// instant as same-time events are applied; the last call wins.
    fn on_row(&mut self, _t: Ps, _neuron: NeuronId, _state: &NeuronState, _drive: &DriveInput) {}

    /// One constant-drive integration segment `[t_start, t_end)` and the
    /// state it produced.
    fn on_segment(
        &mut self,
        _neuron: NeuronId,
        _t_start: Ps,
        _t_end: Ps,
        _drive: &DriveInput,
        _end_state: &NeuronState,
    ) {
    }

    fn on_event(&mut self, _event: &SpikeEvent) {}
}

/// A monitor that ignores everything.
pub struct NullMonitor;

impl Monitor for NullMonitor {}

/// One neuron's simulation cell: bias set, state, live pulse windows, and the
/// timestamp the state is valid at.
#[derive(Debug, Clone)]
pub struct NeuronCell {
    pub id: NeuronId,
    pub bias: BiasConfig,
    state: NeuronState,
    t_ps: Ps,
    windows: ActiveWindows,
    stride_ps: Option<Ps>,
}

impl NeuronCell {
    pub fn new(id: NeuronId, bias: BiasConfig, initial: NeuronState) -> Self {
        Self {
            id,
            bias,
            state: initial,
            t_ps: 0,
            windows: ActiveWindows::new(),
            stride_ps: None,
        }
    }

    /// Enables uniform trace marks every `stride_ps` between event
    /// breakpoints.
    pub fn with_stride(mut self, stride_ps: Option<Ps>) -> Self {
        self.stride_ps = stride_ps.filter(|&s| s > 0);
        self
    }

    pub fn state(&self) -> &NeuronState {
        &self.state
    }

    pub fn time_ps(&self) -> Ps {
        self.t_ps
    }

    pub fn drive_at(&self, t: Ps) -> DriveInput {
        self.windows.drive_at(t)
    }

    fn next_breakpoint(&self, from: Ps, target: Ps) -> Ps {
        let mut next = target;
        if let Some(edge) = self.windows.next_edge_after(from) {
            next = next.min(edge);
        }
        if let Some(stride) = self.stride_ps {
            let mark = (from / stride + 1) * stride;
            next = next.min(mark);
        }
        next
    }

    fn advance_to<M: Monitor>(&mut self, t: Ps, monitor: &mut M) -> Result<(), EngineError> {
        while self.t_ps < t {
            let next = self.next_breakpoint(self.t_ps, t);
            let drive = self.windows.drive_at(self.t_ps);
            monitor.on_row(self.t_ps, self.id, &self.state, &drive);
            let dt = ps_to_seconds(next - self.t_ps);
            let outcome =
                step_detailed(&self.state, &drive, dt, &self.bias).map_err(|source| {
                    EngineError::Neuron {
                        neuron: self.id,
                        time: self.t_ps,
                        source,
                    }
                })?;
            for crossing in &outcome.crossings {
                let offset_ps = (crossing.t_offset * 1e12).round() as Ps;
                let t_cross = (self.t_ps + offset_ps).min(next);
                monitor.on_crossing(t_cross, self.id, crossing.direction);
            }
            monitor.on_segment(self.id, self.t_ps, next, &drive, &outcome.state);
            self.state = outcome.state;
            self.t_ps = next;
            self.windows.prune(self.t_ps);
        }
        Ok(())
    }
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct EngineCounters {
    pub events_applied: u64,
    pub samples_taken: u64,
    pub resets_scheduled: u64,
    pub segments_integrated: u64,
    pub crossings_reported: u64,
}

/// The array simulator. Owns all mutable state; one logical timeline.
pub struct Engine {
    cells: Vec<NeuronCell>,
    index_of: std::collections::HashMap<NeuronId, usize>,
    queue: EventQueue,
    plan: Option<SlotPlan>,
    slot_cursor: BinaryHeap<Reverse<(Ps, usize)>>,
    now_ps: Ps,
    counters: EngineCounters,
}

impl Engine {
    pub fn new(cells: Vec<NeuronCell>, plan: Option<SlotPlan>) -> Self {
        let mut slot_cursor = BinaryHeap::new();
        if let Some(plan) = &plan {
            assert_eq!(
                plan.offsets.len(),
                cells.len(),
                "slot plan must cover every cell"
            );
            for (idx, offset) in plan.offsets.iter().enumerate() {
                if let Some(offset) = offset {
                    slot_cursor.push(Reverse((*offset, idx)));
                }
            }
        }
        let index_of = cells
            .iter()
            .enumerate()
            .map(|(idx, cell)| (cell.id, idx))
            .collect();
        Self {
            cells,
            index_of,
            queue: EventQueue::new(),
            plan,
            slot_cursor,
            now_ps: 0,
            counters: EngineCounters::default(),
        }
    }

    pub fn now_ps(&self) -> Ps {
        self.now_ps
    }

    pub fn counters(&self) -> EngineCounters {
        self.counters
    }

    pub fn queue(&self) -> &EventQueue {
        &self.queue
    }

    pub fn cells(&self) -> &[NeuronCell] {
        &self.cells
    }

    pub fn schedule(&mut self, event: SpikeEvent) -> Result<(), EngineError> {
        if !self.index_of.contains_key(&event.neuron) {
            return Err(EngineError::UnknownNeuron {
                neuron: event.neuron,
            });
        }
        self.queue.schedule(event, self.now_ps)
    }

    /// Processes every breakpoint at or before `t_end` in timestamp order.
    /// Neuron states remain pinned at their own most recent breakpoints; use
    /// [`Engine::finalize`] to bring every neuron exactly to a time.
    pub fn run_until<M: Monitor>(&mut self, t_end: Ps, monitor: &mut M) -> Result<(), EngineError> {
        loop {
            let next_event = self.queue.peek_time();
            let next_slot = self.slot_cursor.peek().map(|Reverse((t, _))| *t);
            let t_next = match (next_event, next_slot) {
                (Some(a), Some(b)) => a.min(b),
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (None, None) => break,
            };
            if t_next > t_end {
                break;
            }

            // Apply queued events first; feedback scheduled by slots at this
            // same instant re-enters here on the next loop pass.
            while self.queue.peek_time() == Some(t_next) {
                let event = self.queue.pop().expect("peeked event");
                let idx = self.index_of[&event.neuron];
                let cell = &mut self.cells[idx];
                cell.advance_to(t_next, monitor)?;
                cell.windows.add_event(&event, &cell.bias);
                monitor.on_row(t_next, cell.id, &cell.state, &cell.windows.drive_at(t_next));
                monitor.on_event(&event);
                self.counters.events_applied += 1;
            }

            while self
                .slot_cursor
                .peek()
                .is_some_and(|Reverse((t, _))| *t == t_next)
            {
                let Reverse((t, idx)) = self.slot_cursor.pop().expect("peeked slot");
                let period = self.plan.as_ref().expect("slots imply a plan").period_ps;
                let cell = &mut self.cells[idx];
                cell.advance_to(t, monitor)?;
                monitor.on_row(t, cell.id, &cell.state, &cell.windows.drive_at(t));
                self.counters.samples_taken += 1;
                if let Some(feedback) = monitor.on_slot(t, cell.id, &cell.state, &cell.bias) {
                    self.queue.schedule(feedback, t)?;
                    self.counters.resets_scheduled += 1;
                }
                self.slot_cursor.push(Reverse((t + period, idx)));
            }
        }
        self.now_ps = self.now_ps.max(t_end);
        Ok(())
    }

    /// Advances every neuron exactly to `t` (which must not precede any
    /// processed breakpoint) and emits a final row per neuron.
    pub fn finalize<M: Monitor>(&mut self, t: Ps, monitor: &mut M) -> Result<(), EngineError> {
        for cell in &mut self.cells {
            cell.advance_to(t, monitor)?;
            monitor.on_row(t, cell.id, &cell.state, &cell.windows.drive_at(t));
        }
        self.now_ps = self.now_ps.max(t);
        Ok(())
    }

    /// State of a neuron at time `t`, computed on a throwaway copy so the
    /// canonical trajectory and its breakpoint segmentation are untouched.
    pub fn state_at(&self, neuron: NeuronId, t: Ps) -> Result<NeuronState, EngineError> {
        let idx = *self
            .index_of
            .get(&neuron)
            .ok_or(EngineError::UnknownNeuron { neuron })?;
        let cell = &self.cells[idx];
        if t <= cell.t_ps {
            return Ok(*cell.state());
        }
        let mut copy = cell.clone();
        copy.advance_to(t, &mut NullMonitor)?;
        Ok(*copy.state())
    }
}
