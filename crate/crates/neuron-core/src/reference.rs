//! Brute-force fixed-substep forward-Euler integrator.
//!
//! This is the independent oracle the adaptive stepper is checked against: no
//! closed forms, no regime detection, just one Euler update per substep with
//! a hard clamp to the rails after each one. At a 1 ps substep it resolves
//! every time scale the model can produce (the per-substep voltage change is
//! bounded by the shifter ceiling, well under the diode's exponential slope).
//!
//! The only concession to speed is a cache of the shifter exponential that is
//! refreshed whenever the node separation has moved more than 10 nV; the
//! induced current error is below one part in 10^6 of the shifter current,
//! orders of magnitude under the comparison budgets.

use crate::currents::shift_current;
use crate::{BiasConfig, DriveInput, NeuronState};

const CACHE_TOLERANCE: f64 = 1e-8;

/// Advances `state` by `duration_ps` of constant drive using fixed
/// `substep_ps` forward-Euler substeps (plus one shorter substep for any
/// remainder).
pub fn advance(
    state: &NeuronState,
    drive: &DriveInput,
    cfg: &BiasConfig,
    duration_ps: u64,
    substep_ps: u64,
) -> NeuronState {
    assert!(substep_ps > 0, "substep must be at least one picosecond");
    let full_steps = duration_ps / substep_ps;
    let remainder_ps = duration_ps % substep_ps;

    let mut s = state.v_syn.clamp(0.0, cfg.vdd);
    let mut m = state.v_mem.clamp(0.0, cfg.vdd);

    let run = |steps: u64, dt: f64, s0: f64, m0: f64| -> (f64, f64) {
        let mut s = s0;
        let mut m = m0;
        let vdd = cfg.vdd;
        let per_cs = dt / cfg.c_syn;
        let per_cm = dt / cfg.c_mem;

        // One Euler update per node is an affine map of that node alone while
        // the cached shifter term is valid, which keeps the hot loop down to
        // two independent multiply-adds.
        let gain_s = 1.0 - cfg.i_n0 * cfg.lambda_n * per_cs;
        let gain_m = 1.0 - cfg.i_p0 * cfg.lambda_p * per_cm;
        let base_s = (drive.i_exc - drive.i_inh - cfg.i_n0) * per_cs;
        let base_m = (cfg.i_p0 * (1.0 + cfg.lambda_p * vdd) - drive.i_rst) * per_cm;

        let mut cached_x = f64::INFINITY;
        let mut offset_s = 0.0;
        let mut offset_m = 0.0;
        for _ in 0..steps {
            let x = m - s;
            if (x - cached_x).abs() > CACHE_TOLERANCE {
                let shift = shift_current(m, s, cfg);
                offset_s = base_s + shift * per_cs;
                offset_m = base_m - shift * per_cm;
                cached_x = x;
            }
            s = gain_s * s + offset_s;
            m = gain_m * m + offset_m;
            if s < 0.0 {
                s = 0.0;
            } else if s > vdd {
                s = vdd;
            }
            if m < 0.0 {
                m = 0.0;
            } else if m > vdd {
                m = vdd;
            }
        }
        (s, m)
    };

    let dt = substep_ps as f64 * 1e-12;
    (s, m) = run(full_steps, dt, s, m);
    if remainder_ps > 0 {
        (s, m) = run(1, remainder_ps as f64 * 1e-12, s, m);
    }
    NeuronState::new(s, m)
}
