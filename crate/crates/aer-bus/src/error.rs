use neuron_core::Ps;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AerError {
    #[error(
        "{n_neurons} neurons exceed the scan budget: {n_buses} bus(es) x {slots_per_bus} slots \
         ({slot_duration_ps} ps slots in a {period_ps} ps period)"
    )]
    SlotBudgetExceeded {
        n_neurons: u32,
        n_buses: u32,
        slots_per_bus: u64,
        period_ps: Ps,
        slot_duration_ps: Ps,
    },

    #[error("neuron id {id} is out of range (array has {n_neurons} neurons)")]
    NeuronOutOfRange { id: u32, n_neurons: u32 },

    #[error("address {address} does not decode within a {n_neurons}-neuron array")]
    AddressOutOfRange { address: u32, n_neurons: u32 },

    #[error("invalid scan schedule: {0}")]
    InvalidSchedule(String),
}
