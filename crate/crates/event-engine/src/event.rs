use neuron_core::{BiasConfig, NeuronId, Ps};
use serde::{Deserialize, Serialize};

/// Input pulse categories. The discriminant order doubles as the same-instant
/// tie-break rank: resets are applied before inhibitory before excitatory.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum PulseKind {
    Reset,
    Inhibitory,
    Excitatory,
}

impl PulseKind {
    pub fn rank(self) -> u8 {
        self as u8
    }

    /// Pulse amplitude this kind draws from the bias set.
    pub fn amplitude(self, cfg: &BiasConfig) -> f64 {
        match self {
            PulseKind::Excitatory => cfg.i_pulse_exc,
            PulseKind::Inhibitory => cfg.i_pulse_inh,
            PulseKind::Reset => cfg.i_pulse_rst,
        }
    }
}

/// A timed, pulse-width-coded input targeting one neuron. The duration
/// encodes the synaptic weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpikeEvent {
    pub time_ps: Ps,
    pub neuron: NeuronId,
    pub kind: PulseKind,
    pub duration_ps: Ps,
    /// Insertion sequence number, stamped by the queue; the final tie-break.
    pub seq: u64,
}

impl SpikeEvent {
    pub fn new(time_ps: Ps, neuron: NeuronId, kind: PulseKind, duration_ps: Ps) -> Self {
        Self {
            time_ps,
            neuron,
            kind,
            duration_ps,
            seq: 0,
        }
    }

    /// Total pop order: `(time, neuron, kind rank, seq)`.
    pub fn order_key(&self) -> (Ps, u32, u8, u64) {
        (self.time_ps, self.neuron.0, self.kind.rank(), self.seq)
    }
}
