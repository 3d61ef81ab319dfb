use neuron_core::{BiasConfig, NeuronId, NeuronState, Ps};
use serde::{Deserialize, Serialize};

use crate::{encode_address, Address, AerError, ScanSchedule};

/// One scan-slot reading of a neuron's output.
///
/// `active` mirrors the active-low output line reading low: true iff the
/// sampled membrane voltage is at or above the inverter threshold (boundary
/// inclusive by convention).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AERSample {
    pub time_ps: Ps,
    pub neuron: NeuronId,
    pub address: Address,
    pub active: bool,
}

/// Reads one neuron's output level during its scan slot at instant `t_ps`.
pub fn sample(
    neuron: NeuronId,
    state: &NeuronState,
    t_ps: Ps,
    schedule: &ScanSchedule,
    cfg: &BiasConfig,
) -> Result<AERSample, AerError> {
    let address = encode_address(neuron, schedule.n_neurons)?;
    debug_assert_eq!(
        t_ps % schedule.period_ps,
        schedule.slot_offset(neuron)?,
        "sampled outside the neuron's slot"
    );
    Ok(AERSample {
        time_ps: t_ps,
        neuron,
        address,
        active: state.v_mem >= cfg.v_threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use neuron_core::NeuronState;

    fn fixture() -> (ScanSchedule, BiasConfig) {
        (
            ScanSchedule::with_defaults(8).unwrap(),
            BiasConfig::default(),
        )
    }

    #[test]
    fn above_threshold_reads_active() {
        let (sched, cfg) = fixture();
        let s = sample(NeuronId(0), &NeuronState::new(0.3, 0.7), 0, &sched, &cfg).unwrap();
        assert!(s.active);
        assert_eq!(s.address, Address(0));
    }

    #[test]
    fn below_threshold_reads_inactive() {
        let (sched, cfg) = fixture();
        let s = sample(NeuronId(0), &NeuronState::new(0.3, 0.5), 0, &sched, &cfg).unwrap();
        assert!(!s.active);
    }

    #[test]
    fn exactly_at_threshold_reads_active() {
        let (sched, cfg) = fixture();
        let s = sample(
            NeuronId(0),
            &NeuronState::new(0.3, cfg.v_threshold),
            0,
            &sched,
            &cfg,
        )
        .unwrap();
        assert!(s.active);
    }

    #[test]
    fn sample_address_decodes_to_the_neuron() {
        let (sched, cfg) = fixture();
        let t = sched.slot_times(NeuronId(5), 3).unwrap();
        let s = sample(NeuronId(5), &NeuronState::new(0.1, 0.1), t, &sched, &cfg).unwrap();
        assert_eq!(
            crate::decode_address(s.address, sched.n_neurons).unwrap(),
            NeuronId(5)
        );
    }
}
