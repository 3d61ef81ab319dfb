use event_engine::{PulseKind, SpikeEvent};
use neuron_core::{NeuronId, Ps};
use serde::{Deserialize, Serialize};

/// A reset order issued by the controller for one neuron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResetCommand {
    pub neuron: NeuronId,
    pub issue_time_ps: Ps,
    pub duration_ps: Ps,
}

/// Closes the feedback loop: a reset command becomes a reset pulse event
/// landing `latency_ps` after it was issued (zero by default, i.e. within the
/// same slot).
pub fn command_to_event(command: &ResetCommand, latency_ps: Ps) -> SpikeEvent {
    SpikeEvent::new(
        command.issue_time_ps + latency_ps,
        command.neuron,
        PulseKind::Reset,
        command.duration_ps,
    )
}
