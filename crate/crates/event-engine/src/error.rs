use neuron_core::{NeuronError, NeuronId, Ps};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("event at t = {time} ps lies in the past (now = {now} ps)")]
    PastEvent { time: Ps, now: Ps },

    #[error("event duration must be strictly positive")]
    ZeroDuration,

    #[error("event targets neuron {neuron}, which this engine does not own")]
    UnknownNeuron { neuron: NeuronId },

    #[error("neuron {neuron} at t = {time} ps: {source}")]
    Neuron {
        neuron: NeuronId,
        time: Ps,
        source: NeuronError,
    },
}
