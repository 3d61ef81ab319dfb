use neuron_core::{NeuronId, Ps};
use serde::{Deserialize, Serialize};

use crate::AerError;

/// Slot timing of the serial scan.
///
/// Neuron `n` owns slot `n / n_buses` on bus `n % n_buses`; with one bus this
/// is the identity slot map. One physical bus fits `period / slot_duration`
/// slots (31,250 at the 1 ms / 32 ns defaults); larger arrays need additional
/// buses, which run in parallel with identical slot timing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSchedule {
    pub period_ps: Ps,
    pub slot_duration_ps: Ps,
    pub n_neurons: u32,
    pub n_buses: u32,
}

impl ScanSchedule {
    pub fn new(
        period_ps: Ps,
        slot_duration_ps: Ps,
        n_neurons: u32,
        n_buses: u32,
    ) -> Result<Self, AerError> {
        if period_ps == 0 || slot_duration_ps == 0 {
            return Err(AerError::InvalidSchedule(
                "period and slot duration must be positive".into(),
            ));
        }
        if slot_duration_ps > period_ps {
            return Err(AerError::InvalidSchedule(format!(
                "slot duration {slot_duration_ps} ps exceeds the period {period_ps} ps"
            )));
        }
        if n_buses == 0 {
            return Err(AerError::InvalidSchedule("at least one bus is required".into()));
        }
        let slots_per_bus = period_ps / slot_duration_ps;
        if u64::from(n_neurons) > slots_per_bus * u64::from(n_buses) {
            return Err(AerError::SlotBudgetExceeded {
                n_neurons,
                n_buses,
                slots_per_bus,
                period_ps,
                slot_duration_ps,
            });
        }
        Ok(Self {
            period_ps,
            slot_duration_ps,
            n_neurons,
            n_buses,
        })
    }

    /// The published operating point: 1 ms period, 32 ns slots, one bus.
    pub fn with_defaults(n_neurons: u32) -> Result<Self, AerError> {
        Self::new(1_000_000_000, 32_000, n_neurons, 1)
    }

    pub fn slots_per_bus(&self) -> u64 {
        self.period_ps / self.slot_duration_ps
    }

    pub fn bus_of(&self, neuron: NeuronId) -> u32 {
        neuron.0 % self.n_buses
    }

    pub fn slot_of(&self, neuron: NeuronId) -> u64 {
        u64::from(neuron.0 / self.n_buses)
    }

    /// Offset of the neuron's slot within each period.
    pub fn slot_offset(&self, neuron: NeuronId) -> Result<Ps, AerError> {
        self.check(neuron)?;
        Ok(self.slot_of(neuron) * self.slot_duration_ps)
    }

    /// Absolute instant of the neuron's slot in scanning period `k`.
    pub fn slot_times(&self, neuron: NeuronId, k: u64) -> Result<Ps, AerError> {
        Ok(k * self.period_ps + self.slot_offset(neuron)?)
    }

    fn check(&self, neuron: NeuronId) -> Result<(), AerError> {
        if neuron.0 >= self.n_neurons {
            return Err(AerError::NeuronOutOfRange {
                id: neuron.0,
                n_neurons: self.n_neurons,
            });
        }
        Ok(())
    }
}
