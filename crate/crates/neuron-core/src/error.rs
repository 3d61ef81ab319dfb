use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NeuronError {
    #[error("invalid bias configuration: {0}")]
    InvalidBias(String),

    /// A non-finite node voltage is a model bug, never silently clamped.
    #[error("non-finite neuron state: v_syn = {v_syn}, v_mem = {v_mem}")]
    NonFiniteState { v_syn: f64, v_mem: f64 },

    #[error("integration regime violated: {0}")]
    RegimeViolation(String),

    #[error("no steady state within the rails: {0}")]
    NoSteadyState(String),

    /// `lambda_n = lambda_p = 0` leaves a continuum of fixed points: the level
    /// shifter pins `v_mem - v_syn` but the absolute level is free.
    #[error("degenerate bias: lambda_n and lambda_p are both zero, steady state is not unique")]
    DegenerateBias,
}
