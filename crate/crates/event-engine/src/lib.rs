//! Deterministic discrete-event simulation of a silicon neuron array.
//!
//! Timed spike and reset events become piecewise-constant drive windows; the
//! engine advances each neuron between its breakpoints (pulse edges, scan
//! slots, trace marks) with the closed-form/adaptive stepper of
//! [`neuron_core`], so drive is constant over every integration interval.
//! Event ordering is total: `(time, neuron, kind rank, sequence number)` with
//! resets ranked ahead of same-instant inputs.

mod engine;
mod error;
mod event;
mod queue;
mod windows;

pub use engine::{Engine, EngineCounters, Monitor, NeuronCell, NullMonitor, SlotPlan};
pub use error::EngineError;
pub use event::{PulseKind, SpikeEvent};
pub use queue::EventQueue;
pub use windows::{active_drive, ActiveWindows, PulseWindow};
