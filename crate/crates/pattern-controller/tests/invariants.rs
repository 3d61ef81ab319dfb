//! Policy invariants over arbitrary sample sequences.

use aer_bus::{encode_address, AERSample};
use neuron_core::{NeuronId, Ps};
use pattern_controller::{ControllerMode, ControllerState};
use proptest::prelude::*;

fn samples(pattern: &[bool]) -> Vec<AERSample> {
    pattern
        .iter()
        .enumerate()
        .map(|(k, &active)| AERSample {
            time_ps: k as Ps * 1_000_000_000,
            neuron: NeuronId(0),
            address: encode_address(NeuronId(0), 1).unwrap(),
            active,
        })
        .collect()
}

proptest! {
    #[test]
    fn tonic_emits_one_reset_per_active_sample(pattern in prop::collection::vec(any::<bool>(), 0..200)) {
        let mut st = ControllerState::new(ControllerMode::Tonic {
            rst_duration_ps: 24_000,
        })
        .unwrap();
        let mut resets = 0usize;
        for s in samples(&pattern) {
            if st.on_sample(&s).is_some() {
                resets += 1;
            }
        }
        let actives = pattern.iter().filter(|&&a| a).count();
        prop_assert_eq!(resets, actives);
    }

    #[test]
    fn burst_resets_exactly_on_full_consecutive_runs(
        pattern in prop::collection::vec(any::<bool>(), 0..200),
        n in 1u32..8,
    ) {
        let mut st = ControllerState::new(ControllerMode::Burst {
            spikes_per_burst: n,
            rst_duration_ps: 24_000,
        })
        .unwrap();
        let mut resets = 0u64;
        for s in samples(&pattern) {
            if st.on_sample(&s).is_some() {
                resets += 1;
            }
        }
        // Expected: every run of consecutive actives contributes
        // floor(len / n) resets.
        let mut expected = 0u64;
        let mut run = 0u64;
        for &a in &pattern {
            if a {
                run += 1;
            } else {
                expected += run / u64::from(n);
                run = 0;
            }
        }
        expected += run / u64::from(n);
        prop_assert_eq!(resets, expected);
    }

    #[test]
    fn adaptation_widths_are_non_decreasing_and_clamped(
        pattern in prop::collection::vec(any::<bool>(), 0..300),
    ) {
        let mut st = ControllerState::new(ControllerMode::Adaptation {
            rst_init_ps: 3_000,
            rst_increment_ps: 3_000,
            rst_max_ps: 32_000,
            decay_after_inactive: None,
        })
        .unwrap();
        let mut widths = Vec::new();
        for s in samples(&pattern) {
            if let Some(c) = st.on_sample(&s) {
                widths.push(c.duration_ps);
            }
        }
        for pair in widths.windows(2) {
            prop_assert!(pair[1] >= pair[0]);
            prop_assert!(pair[1] <= 32_000);
        }
        // Once clamped, every further width equals the maximum.
        if let Some(first_max) = widths.iter().position(|&w| w == 32_000) {
            prop_assert!(widths[first_max..].iter().all(|&w| w == 32_000));
        }
    }

    #[test]
    fn passive_never_emits_anything(pattern in prop::collection::vec(any::<bool>(), 0..100)) {
        let mut st = ControllerState::new(ControllerMode::Passive).unwrap();
        for s in samples(&pattern) {
            prop_assert!(st.on_sample(&s).is_none());
        }
    }
}
