//! Property tests for the model invariants: rail bounds, current-law
//! monotonicity, determinism, composition consistency, self-balancing, and
//! spot checks against the brute-force reference integrator.

use neuron_core::{
    currents, leak_current_n, leak_current_p, reference, shift_current, steady_state, step,
    step_detailed, BiasConfig, DriveInput, NeuronState,
};
use proptest::prelude::*;

fn drive_strategy() -> impl Strategy<Value = DriveInput> {
    // Zero or a small sum of pulse amplitudes per component.
    let amp = prop_oneof![Just(0.0), Just(550e-9), Just(1.1e-6)];
    (amp.clone(), amp.clone(), amp).prop_map(|(i_exc, i_inh, i_rst)| DriveInput {
        i_exc,
        i_inh,
        i_rst,
    })
}

fn state_strategy() -> impl Strategy<Value = NeuronState> {
    (0.0..=1.2f64, 0.0..=1.2f64).prop_map(|(v_syn, v_mem)| NeuronState { v_syn, v_mem })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rail_bounds_hold_for_any_reachable_state(
        state in state_strategy(),
        drive in drive_strategy(),
        dt_ns in 1u64..2_000_000,
    ) {
        let cfg = BiasConfig::default();
        let (next, _) = step(&state, &drive, dt_ns as f64 * 1e-9, &cfg).unwrap();
        prop_assert!(next.within_rails(cfg.vdd), "escaped rails: {next:?}");
    }

    #[test]
    fn shift_current_is_monotone_in_the_separation(
        v_syn in 0.0..=1.2f64,
        a in 0.0..=1.2f64,
        b in 0.0..=1.2f64,
    ) {
        let cfg = BiasConfig::default();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(
            shift_current(lo, v_syn, &cfg) <= shift_current(hi, v_syn, &cfg)
        );
    }

    #[test]
    fn leak_laws_are_monotone(
        a in 0.0..=1.2f64,
        b in 0.0..=1.2f64,
    ) {
        let cfg = BiasConfig::default();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(leak_current_n(lo, &cfg) <= leak_current_n(hi, &cfg));
        prop_assert!(leak_current_p(lo, &cfg) >= leak_current_p(hi, &cfg));
        prop_assert!(leak_current_n(hi, &cfg) > 0.0);
        prop_assert!(leak_current_p(hi, &cfg) > 0.0);
    }

    #[test]
    fn step_is_bitwise_deterministic(
        state in state_strategy(),
        drive in drive_strategy(),
        dt_ns in 1u64..1_000_000,
    ) {
        let cfg = BiasConfig::default();
        let dt = dt_ns as f64 * 1e-9;
        let a = step_detailed(&state, &drive, dt, &cfg).unwrap();
        let b = step_detailed(&state, &drive, dt, &cfg).unwrap();
        prop_assert_eq!(a.state.v_syn.to_bits(), b.state.v_syn.to_bits());
        prop_assert_eq!(a.state.v_mem.to_bits(), b.state.v_mem.to_bits());
        prop_assert_eq!(a.crossings, b.crossings);
    }

    #[test]
    fn stepping_composes_consistently(
        state in state_strategy(),
        drive in drive_strategy(),
        dt_a_ns in 1u64..500_000,
        dt_b_ns in 1u64..500_000,
    ) {
        let cfg = BiasConfig::default();
        let dt_a = dt_a_ns as f64 * 1e-9;
        let dt_b = dt_b_ns as f64 * 1e-9;
        let (mid, _) = step(&state, &drive, dt_a, &cfg).unwrap();
        let (split, _) = step(&mid, &drive, dt_b, &cfg).unwrap();
        let (whole, _) = step(&state, &drive, dt_a + dt_b, &cfg).unwrap();
        prop_assert!(
            (split.v_syn - whole.v_syn).abs() < 1e-7,
            "v_syn split {} vs whole {}", split.v_syn, whole.v_syn
        );
        prop_assert!(
            (split.v_mem - whole.v_mem).abs() < 1e-7,
            "v_mem split {} vs whole {}", split.v_mem, whole.v_mem
        );
    }

    #[test]
    fn zero_drive_relaxes_to_the_fixed_point(state in state_strategy()) {
        let cfg = BiasConfig::default();
        let fix = steady_state(&cfg).unwrap();
        let mut st = state;
        for _ in 0..200 {
            st = step(&st, &DriveInput::ZERO, 1e-3, &cfg).unwrap().0;
        }
        prop_assert!((st.v_syn - fix.v_syn).abs() < 1e-3, "v_syn {}", st.v_syn);
        prop_assert!((st.v_mem - fix.v_mem).abs() < 1e-3, "v_mem {}", st.v_mem);
    }
}

#[test]
fn corner_states_self_balance_within_200_ms() {
    let cfg = BiasConfig::default();
    let fix = steady_state(&cfg).unwrap();
    for corner in [
        NeuronState::new(0.0, 0.0),
        NeuronState::new(0.0, cfg.vdd),
        NeuronState::new(cfg.vdd, 0.0),
        NeuronState::new(cfg.vdd, cfg.vdd),
    ] {
        let mut st = corner;
        for _ in 0..200 {
            st = step(&st, &DriveInput::ZERO, 1e-3, &cfg).unwrap().0;
        }
        assert!(
            (st.v_syn - fix.v_syn).abs() < 1e-3 && (st.v_mem - fix.v_mem).abs() < 1e-3,
            "corner {corner:?} relaxed to {st:?}, fixed point {fix:?}"
        );
    }
}

#[test]
fn matches_picosecond_reference_on_mixed_programs() {
    // A handful of deterministic spot checks with all regimes represented:
    // quiet rest, pulse edges, rail slams, and the recovery tail.
    let cfg = BiasConfig::default();
    let rest = steady_state(&cfg).unwrap();
    let programs: [&[(f64, f64, f64, u64)]; 3] = [
        // (i_exc, i_inh, i_rst, duration_ps)
        &[(550e-9, 0.0, 0.0, 24_000), (0.0, 0.0, 0.0, 2_000_000)],
        &[
            (0.0, 550e-9, 0.0, 24_000),
            (0.0, 0.0, 0.0, 500_000),
            (0.0, 0.0, 550e-9, 24_000),
            (0.0, 0.0, 0.0, 1_000_000),
        ],
        &[
            (1.1e-6, 0.0, 0.0, 32_000),
            (0.0, 0.0, 0.0, 900_000),
            (0.0, 550e-9, 550e-9, 48_000),
            (0.0, 0.0, 0.0, 700_000),
        ],
    ];
    for program in programs {
        let mut fast = rest;
        let mut oracle = rest;
        for &(i_exc, i_inh, i_rst, dur_ps) in program {
            let drive = DriveInput { i_exc, i_inh, i_rst };
            fast = step(&fast, &drive, dur_ps as f64 * 1e-12, &cfg).unwrap().0;
            oracle = reference::advance(&oracle, &drive, &cfg, dur_ps, 1);
            assert!(
                (fast.v_syn - oracle.v_syn).abs() < 1e-5
                    && (fast.v_mem - oracle.v_mem).abs() < 1e-5,
                "fast {fast:?} vs oracle {oracle:?}"
            );
        }
    }
}

#[test]
fn currents_balance_is_the_steady_state_definition() {
    let cfg = BiasConfig::default();
    let fix = steady_state(&cfg).unwrap();
    let br = currents(&fix, &DriveInput::ZERO, &cfg);
    assert!(br.i_syn_net.abs() <= 1e-6 * cfg.i_n0);
    assert!(br.i_mem_net.abs() <= 1e-6 * cfg.i_n0);
}
