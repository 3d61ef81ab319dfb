//! Coupled two-node integration over intervals of constant drive.
//!
//! The stepper advances in internal substeps. Where the level shifter is
//! provably off for a whole substep, the decoupled affine dynamics are
//! integrated in closed form (see [`crate::linear`]); everywhere else an
//! embedded Bogacki-Shampine 3(2) pair with error control handles the coupled
//! nonlinear system, including rail capture and release. Threshold crossings
//! of `v_mem` are detected and timestamped along the way.

use crate::currents::{leak_current_n, leak_current_p, shift_current};
use crate::linear::NodeFlow;
use crate::{BiasConfig, DriveInput, NeuronError, NeuronState};

/// Direction of a threshold crossing of `v_mem`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Upward,
    Downward,
}

/// A threshold crossing within a step, at `t_offset` seconds past the
/// interval start.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub t_offset: f64,
    pub direction: Direction,
}

/// Result of one constant-drive step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome {
    pub state: NeuronState,
    pub crossings: Vec<Crossing>,
}

/// Endpoint threshold comparison: upward iff `v_before < v_threshold <=
/// v_after`, downward iff `v_after < v_threshold <= v_before`.
pub fn detect_threshold(v_before: f64, v_after: f64, cfg: &BiasConfig) -> Option<Direction> {
    let th = cfg.v_threshold;
    if v_before < th && th <= v_after {
        Some(Direction::Upward)
    } else if v_after < th && th <= v_before {
        Some(Direction::Downward)
    } else {
        None
    }
}

/// Advances the neuron by `dt` seconds of constant drive.
///
/// Returns the new state and the first threshold crossing of `v_mem` within
/// the interval, if any.
pub fn step(
    state: &NeuronState,
    drive: &DriveInput,
    dt: f64,
    cfg: &BiasConfig,
) -> Result<(NeuronState, Option<Direction>), NeuronError> {
    let outcome = step_detailed(state, drive, dt, cfg)?;
    let first = outcome.crossings.first().map(|c| c.direction);
    Ok((outcome.state, first))
}

/// Like [`step`] but reports every threshold crossing with its time offset.
pub fn step_detailed(
    state: &NeuronState,
    drive: &DriveInput,
    dt: f64,
    cfg: &BiasConfig,
) -> Result<StepOutcome, NeuronError> {
    if !state.is_finite() {
        return Err(NeuronError::NonFiniteState {
            v_syn: state.v_syn,
            v_mem: state.v_mem,
        });
    }
    if !(dt >= 0.0) || !dt.is_finite() {
        return Err(NeuronError::RegimeViolation(format!(
            "invalid step length {dt}"
        )));
    }

    let mut st = clamp_to_rails(*state, cfg);
    let mut t = 0.0_f64;
    let mut crossings = Vec::new();

    // Tiny residuals from segment splitting are absorbed instead of iterated.
    let t_eps = (dt * 1e-14).max(1e-18);

    let mut guard = 0u64;
    while dt - t > t_eps {
        guard += 1;
        if guard > 2_000_000 {
            return Err(NeuronError::RegimeViolation(
                "integration step budget exhausted".into(),
            ));
        }
        let rem = dt - t;
        let advanced = match linear_segment(&mut st, drive, rem, cfg, t, &mut crossings) {
            Some(h) => h,
            None => rk_segment(&mut st, drive, rem, cfg, t, &mut crossings)?,
        };
        t += advanced;
        if !st.is_finite() {
            return Err(NeuronError::NonFiniteState {
                v_syn: st.v_syn,
                v_mem: st.v_mem,
            });
        }
    }

    Ok(StepOutcome {
        state: st,
        crossings,
    })
}

fn clamp_to_rails(mut st: NeuronState, cfg: &BiasConfig) -> NeuronState {
    st.v_syn = st.v_syn.clamp(0.0, cfg.vdd);
    st.v_mem = st.v_mem.clamp(0.0, cfg.vdd);
    st
}

/// A node is pinned at a rail while its free rate points outward.
fn pinned_low(v: f64, rate: f64) -> bool {
    v <= 0.0 && rate <= 0.0
}

fn pinned_high(v: f64, rate: f64, vdd: f64) -> bool {
    v >= vdd && rate >= 0.0
}

/// Tries to advance by closed form under a provably-off level shifter.
///
/// Returns the committed horizon, or `None` when the off-regime cannot be
/// guaranteed and the caller must fall back to the adaptive path.
fn linear_segment(
    st: &mut NeuronState,
    drive: &DriveInput,
    rem: f64,
    cfg: &BiasConfig,
    t_base: f64,
    crossings: &mut Vec<Crossing>,
) -> Option<f64> {
    if st.v_mem - st.v_syn > cfg.v_on {
        return None;
    }

    let syn = NodeFlow::syn_diode_off(drive, cfg);
    let mem = NodeFlow::mem_diode_off(drive, cfg);

    let syn_pinned = pinned_low(st.v_syn, syn.rate(st.v_syn))
        || pinned_high(st.v_syn, syn.rate(st.v_syn), cfg.vdd);
    let mem_pinned = pinned_low(st.v_mem, mem.rate(st.v_mem))
        || pinned_high(st.v_mem, mem.rate(st.v_mem), cfg.vdd);

    // First strictly-future rail hit of a free node, if any.
    let rail_hit = |flow: &NodeFlow, v0: f64, pinned: bool| -> Option<(f64, f64)> {
        if pinned {
            return None;
        }
        [0.0, cfg.vdd]
            .iter()
            .filter_map(|&rail| {
                flow.time_to_reach(v0, rail)
                    .filter(|&t| t > 0.0)
                    .map(|t| (t, rail))
            })
            .min_by(|a, b| a.0.total_cmp(&b.0))
    };
    let syn_hit = rail_hit(&syn, st.v_syn, syn_pinned);
    let mem_hit = rail_hit(&mem, st.v_mem, mem_pinned);

    let mut horizon = rem;
    if let Some((t_hit, _)) = syn_hit {
        horizon = horizon.min(t_hit);
    }
    if let Some((t_hit, _)) = mem_hit {
        horizon = horizon.min(t_hit);
    }

    let syn_end = if syn_pinned {
        st.v_syn
    } else if let Some((t_hit, rail)) = syn_hit {
        if t_hit <= horizon {
            rail
        } else {
            syn.value_at(st.v_syn, horizon)
        }
    } else {
        syn.value_at(st.v_syn, horizon)
    };
    let mem_end = if mem_pinned {
        st.v_mem
    } else if let Some((t_hit, rail)) = mem_hit {
        if t_hit <= horizon {
            rail
        } else {
            mem.value_at(st.v_mem, horizon)
        }
    } else {
        mem.value_at(st.v_mem, horizon)
    };

    // Both flows are monotone, so endpoint extremes bound the separation over
    // the whole horizon.
    let mem_max = st.v_mem.max(mem_end);
    let syn_min = st.v_syn.min(syn_end);
    if mem_max - syn_min > cfg.v_on {
        return None;
    }

    if let Some(dir) = detect_threshold(st.v_mem, mem_end, cfg) {
        let t_cross = mem
            .time_to_reach(st.v_mem, cfg.v_threshold)
            .unwrap_or(horizon)
            .min(horizon);
        crossings.push(Crossing {
            t_offset: t_base + t_cross,
            direction: dir,
        });
    }

    st.v_syn = syn_end;
    st.v_mem = mem_end;
    *st = clamp_to_rails(*st, cfg);
    Some(horizon.min(rem))
}

/// Net per-node rates with rail pinning applied.
fn rates(st: &NeuronState, drive: &DriveInput, cfg: &BiasConfig) -> (f64, f64) {
    let i_n = leak_current_n(st.v_syn, cfg);
    let i_p = leak_current_p(st.v_mem, cfg);
    let i_shift = shift_current(st.v_mem, st.v_syn, cfg);
    let i_syn_net = drive.i_exc - drive.i_inh + i_shift - i_n;
    let i_mem_net = i_p - i_shift - drive.i_rst;

    let mut ds = i_syn_net / cfg.c_syn;
    let mut dm = i_mem_net / cfg.c_mem;
    if (st.v_syn <= 0.0 && ds < 0.0) || (st.v_syn >= cfg.vdd && ds > 0.0) {
        ds = 0.0;
    }
    if (st.v_mem <= 0.0 && dm < 0.0) || (st.v_mem >= cfg.vdd && dm > 0.0) {
        dm = 0.0;
    }
    (ds, dm)
}

/// One embedded Bogacki-Shampine 3(2) trial step. Returns the third-order
/// solution and the embedded error estimate (max over nodes, volts).
fn bs23_trial(
    st: &NeuronState,
    drive: &DriveInput,
    cfg: &BiasConfig,
    h: f64,
    k1: (f64, f64),
) -> (NeuronState, f64) {
    let at = |s: f64, m: f64| NeuronState::new(s.clamp(0.0, cfg.vdd), m.clamp(0.0, cfg.vdd));

    let y2 = at(st.v_syn + 0.5 * h * k1.0, st.v_mem + 0.5 * h * k1.1);
    let k2 = rates(&y2, drive, cfg);
    let y3 = at(st.v_syn + 0.75 * h * k2.0, st.v_mem + 0.75 * h * k2.1);
    let k3 = rates(&y3, drive, cfg);

    let s_next = st.v_syn + h * (2.0 * k1.0 + 3.0 * k2.0 + 4.0 * k3.0) / 9.0;
    let m_next = st.v_mem + h * (2.0 * k1.1 + 3.0 * k2.1 + 4.0 * k3.1) / 9.0;
    let y_next = NeuronState::new(s_next, m_next);

    let k4 = rates(&clamp_to_rails(y_next, cfg), drive, cfg);
    let s_low = st.v_syn + h * (7.0 * k1.0 / 24.0 + k2.0 / 4.0 + k3.0 / 3.0 + k4.0 / 8.0);
    let m_low = st.v_mem + h * (7.0 * k1.1 / 24.0 + k2.1 / 4.0 + k3.1 / 3.0 + k4.1 / 8.0);

    let err = (s_next - s_low).abs().max((m_next - m_low).abs());
    (y_next, err)
}

/// Adaptive integration of the coupled system over up to `rem` seconds.
///
/// Advances through at most one rail-capture event, then returns control so
/// the outer loop can re-evaluate the regime.
fn rk_segment(
    st: &mut NeuronState,
    drive: &DriveInput,
    rem: f64,
    cfg: &BiasConfig,
    t_base: f64,
    crossings: &mut Vec<Crossing>,
) -> Result<f64, NeuronError> {
    const TOL: f64 = 1e-11;
    const SAFETY: f64 = 0.9;

    let mut t = 0.0_f64;
    let mut h = rem.min(1e-6);
    // Start against the fastest current rate so pulse edges are resolved.
    let k1 = rates(st, drive, cfg);
    let max_rate = k1.0.abs().max(k1.1.abs());
    if max_rate > 0.0 {
        h = h.min(1e-4 * cfg.vdd / max_rate).max(1e-15);
    }

    let mut rejections = 0u32;
    while rem - t > rem * 1e-14 {
        h = h.min(rem - t);
        let k1 = rates(st, drive, cfg);
        let (proposal, err) = bs23_trial(st, drive, cfg, h, k1);

        if !proposal.is_finite() {
            h *= 0.25;
            rejections += 1;
            if rejections > 200 {
                return Err(NeuronError::NonFiniteState {
                    v_syn: proposal.v_syn,
                    v_mem: proposal.v_mem,
                });
            }
            continue;
        }

        if err > TOL && h > 1e-15 {
            let shrink = SAFETY * (TOL / err).powf(1.0 / 3.0);
            h *= shrink.clamp(0.1, 0.9);
            rejections += 1;
            if rejections > 100_000 {
                return Err(NeuronError::RegimeViolation(
                    "adaptive stepper cannot satisfy tolerance".into(),
                ));
            }
            continue;
        }

        // Rail hit inside the substep: bisect the substep length so the node
        // lands on the rail, then return so the outer loop re-evaluates the
        // regime from the pinned state.
        if !proposal.within_rails(cfg.vdd) {
            let h_hit = bisect_rail_hit(st, drive, cfg, h, k1);
            let (hit_state, _) = bs23_trial(st, drive, cfg, h_hit, k1);
            let snapped = clamp_to_rails(hit_state, cfg);
            record_crossing(st.v_mem, snapped.v_mem, cfg, t_base + t, h_hit, crossings);
            *st = snapped;
            t += h_hit;
            return Ok(t.max(rem * 1e-15));
        }

        record_crossing(st.v_mem, proposal.v_mem, cfg, t_base + t, h, crossings);
        *st = proposal;
        t += h;
        let grow = if err > 0.0 {
            (SAFETY * (TOL / err).powf(1.0 / 3.0)).clamp(1.0, 5.0)
        } else {
            5.0
        };
        h = (h * grow).min(rem - t + rem * 1e-14).max(1e-15);
        rejections = 0;
    }
    Ok(rem)
}

/// Largest substep length for which the trial step stays inside the rails,
/// found by bisection. Deterministic fixed-iteration refinement.
fn bisect_rail_hit(
    st: &NeuronState,
    drive: &DriveInput,
    cfg: &BiasConfig,
    h: f64,
    k1: (f64, f64),
) -> f64 {
    let mut lo = 0.0_f64;
    let mut hi = h;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let (trial, _) = bs23_trial(st, drive, cfg, mid, k1);
        if trial.within_rails(cfg.vdd) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Use the outside endpoint so the snap-to-rail clamp actually lands on
    // the rail rather than infinitesimally inside.
    hi
}

fn record_crossing(
    m_before: f64,
    m_after: f64,
    cfg: &BiasConfig,
    t_start: f64,
    h: f64,
    crossings: &mut Vec<Crossing>,
) {
    if let Some(dir) = detect_threshold(m_before, m_after, cfg) {
        let span = m_after - m_before;
        let frac = if span.abs() > 0.0 {
            ((cfg.v_threshold - m_before) / span).clamp(0.0, 1.0)
        } else {
            0.0
        };
        crossings.push(Crossing {
            t_offset: t_start + frac * h,
            direction: dir,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{steady_state, step_exact_linear};

    fn cfg() -> BiasConfig {
        BiasConfig::default()
    }

    #[test]
    fn steady_state_is_a_fixed_point_of_step() {
        let c = cfg();
        let fix = steady_state(&c).unwrap();
        let (next, crossing) = step(&fix, &DriveInput::ZERO, 10e-3, &c).unwrap();
        assert!(crossing.is_none());
        assert!(
            (next.v_syn - fix.v_syn).abs() < 1e-6,
            "v_syn drifted {:e}",
            next.v_syn - fix.v_syn
        );
        assert!(
            (next.v_mem - fix.v_mem).abs() < 1e-6,
            "v_mem drifted {:e}",
            next.v_mem - fix.v_mem
        );
    }

    #[test]
    fn single_pulse_epsp_close_to_ideal_ramp() {
        // 550 nA for 24 ns moves v_syn by 0.6 V minus sub-mV leak and diode
        // corrections.
        let c = cfg();
        let rest = steady_state(&c).unwrap();
        let drive = DriveInput {
            i_exc: 550e-9,
            ..DriveInput::ZERO
        };
        let (after, _) = step(&rest, &drive, 24e-9, &c).unwrap();
        let delta = after.v_syn - rest.v_syn;
        assert!((delta - 0.6).abs() < 1e-3, "delta = {delta}");
    }

    #[test]
    fn upward_crossing_is_reported() {
        let c = cfg();
        // Membrane well below threshold and a tall synapse: the shifter stays
        // off and i_p ramps v_mem across the threshold eventually.
        let st = NeuronState::new(1.15, 0.59);
        let (after, crossing) = step(&st, &DriveInput::ZERO, 1e-3, &c).unwrap();
        // ~0.13 V/ms climb moves 0.59 above 0.6 within 1 ms.
        assert!(after.v_mem > 0.6, "v_mem = {}", after.v_mem);
        assert_eq!(crossing, Some(Direction::Upward));
    }

    #[test]
    fn detect_threshold_cases() {
        let c = cfg();
        assert_eq!(detect_threshold(0.59, 0.61, &c), Some(Direction::Upward));
        assert_eq!(detect_threshold(0.61, 0.59, &c), Some(Direction::Downward));
        assert_eq!(detect_threshold(0.30, 0.59, &c), None);
        // Boundary: arriving exactly at the threshold counts, leaving it does
        // not count as a second event.
        assert_eq!(detect_threshold(0.59, 0.60, &c), Some(Direction::Upward));
        assert_eq!(detect_threshold(0.60, 0.61, &c), None);
    }

    #[test]
    fn non_finite_state_is_rejected() {
        let c = cfg();
        let st = NeuronState::new(f64::NAN, 0.5);
        let err = step(&st, &DriveInput::ZERO, 1e-9, &c).unwrap_err();
        assert!(matches!(err, NeuronError::NonFiniteState { .. }));
    }

    #[test]
    fn agrees_with_closed_form_in_linear_regime() {
        // lambda = 0 and the shifter off: step must reproduce the pure ramps
        // to within a nanovolt.
        let c = BiasConfig {
            lambda_n: 0.0,
            lambda_p: 0.2,
            ..cfg()
        };
        let st = NeuronState::new(0.8, 0.2);
        let drive = DriveInput {
            i_exc: 100e-9,
            ..DriveInput::ZERO
        };
        let dt = 5e-9;
        let exact = step_exact_linear(&st, &drive, dt, &c).unwrap();
        let (stepped, _) = step(&st, &drive, dt, &c).unwrap();
        assert!(
            (stepped.v_syn - exact.v_syn).abs() < 1e-9,
            "dv_syn = {:e}",
            stepped.v_syn - exact.v_syn
        );
        assert!(
            (stepped.v_mem - exact.v_mem).abs() < 1e-9,
            "dv_mem = {:e}",
            stepped.v_mem - exact.v_mem
        );
    }

    #[test]
    fn rail_clamp_holds_under_strong_pulses() {
        let c = cfg();
        let rest = steady_state(&c).unwrap();
        // Inhibitory slam drives v_syn into the low rail.
        let drive = DriveInput {
            i_inh: 550e-9,
            ..DriveInput::ZERO
        };
        let (after, _) = step(&rest, &drive, 24e-9, &c).unwrap();
        assert!(after.v_syn >= 0.0);
        assert!(after.within_rails(c.vdd));
    }

    #[test]
    fn step_is_deterministic() {
        let c = cfg();
        let st = NeuronState::new(0.3, 0.7);
        let drive = DriveInput {
            i_exc: 1e-9,
            ..DriveInput::ZERO
        };
        let a = step_detailed(&st, &drive, 3e-3, &c).unwrap();
        let b = step_detailed(&st, &drive, 3e-3, &c).unwrap();
        assert_eq!(a.state.v_syn.to_bits(), b.state.v_syn.to_bits());
        assert_eq!(a.state.v_mem.to_bits(), b.state.v_mem.to_bits());
        assert_eq!(a.crossings, b.crossings);
    }
}
