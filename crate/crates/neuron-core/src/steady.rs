//! Zero-input fixed point of the two-node dynamics.
//!
//! At rest a single trickle of current flows from the rail through the soma
//! pull-up, across the level shifter into the synapse node and out through
//! the synapse leak, so the balance is `i_p = i_shift = i_n`.

use crate::currents::{leak_current_n, leak_current_p, shift_current};
use crate::{BiasConfig, NeuronError, NeuronState};

const RELATIVE_RESIDUAL: f64 = 1e-6;

/// Solves for the unique `(v_syn, v_mem)` with
/// `leak_current_p = shift_current = leak_current_n`, both within the rails.
///
/// Requires `lambda_n > 0` or `lambda_p > 0`; the fully degenerate
/// configuration has a continuum of fixed points and is rejected.
pub fn steady_state(cfg: &BiasConfig) -> Result<NeuronState, NeuronError> {
    cfg.validate()?;
    if !cfg.has_unique_fixed_point() {
        return Err(NeuronError::DegenerateBias);
    }

    let state = if cfg.lambda_p == 0.0 {
        solve_flat_soma(cfg)?
    } else {
        solve_by_bisection(cfg)?
    };

    let i_n = leak_current_n(state.v_syn, cfg);
    let i_p = leak_current_p(state.v_mem, cfg);
    let i_shift = shift_current(state.v_mem, state.v_syn, cfg);
    let res_p = (i_p - i_n).abs() / i_n;
    let res_s = (i_shift - i_n).abs() / i_n;
    if res_p > RELATIVE_RESIDUAL || res_s > RELATIVE_RESIDUAL {
        return Err(NeuronError::NoSteadyState(format!(
            "residuals too large: |i_p - i_n|/i_n = {res_p:e}, |i_shift - i_n|/i_n = {res_s:e}"
        )));
    }
    Ok(state)
}

/// Separation `v_mem - v_syn` at which the level shifter carries `current`.
fn shifter_drop(current: f64, cfg: &BiasConfig) -> f64 {
    cfg.v_on + cfg.v_slope * (1.0 + current / cfg.i_s).ln()
}

/// `lambda_p = 0`: the soma current is flat, so the synapse voltage is pinned
/// by `i_n(v_syn) = i_p0` directly.
fn solve_flat_soma(cfg: &BiasConfig) -> Result<NeuronState, NeuronError> {
    let v_syn = (cfg.i_p0 / cfg.i_n0 - 1.0) / cfg.lambda_n;
    if !(0.0..=cfg.vdd).contains(&v_syn) {
        return Err(NeuronError::NoSteadyState(format!(
            "synapse balance point v_syn = {v_syn} is outside the rails"
        )));
    }
    let v_mem = v_syn + shifter_drop(cfg.i_p0, cfg);
    if v_mem > cfg.vdd {
        return Err(NeuronError::NoSteadyState(format!(
            "membrane balance point v_mem = {v_mem} is above the rail"
        )));
    }
    Ok(NeuronState::new(v_syn, v_mem))
}

/// General case: scan `v_syn`, derive the membrane voltage that balances the
/// leaks, and bisect on the shifter balance. The residual function is
/// strictly decreasing in `v_syn`, so the root is unique.
fn solve_by_bisection(cfg: &BiasConfig) -> Result<NeuronState, NeuronError> {
    // Membrane voltage with i_p(v_mem) = i_n(v_syn); above vdd means the leak
    // balance needs a larger v_syn, below 0 a smaller one.
    let mem_for = |v_syn: f64| -> f64 {
        cfg.vdd - (leak_current_n(v_syn, cfg) / cfg.i_p0 - 1.0) / cfg.lambda_p
    };
    let residual = |v_syn: f64| -> f64 {
        let v_mem = mem_for(v_syn);
        if v_mem > cfg.vdd {
            return f64::INFINITY;
        }
        if v_mem < 0.0 {
            return f64::NEG_INFINITY;
        }
        shift_current(v_mem, v_syn, cfg) - leak_current_n(v_syn, cfg)
    };

    let mut lo = 0.0_f64;
    let mut hi = cfg.vdd;
    if residual(lo) < 0.0 {
        return Err(NeuronError::NoSteadyState(
            "shifter cannot supply the synapse leak even at v_syn = 0".into(),
        ));
    }
    if residual(hi) > 0.0 {
        return Err(NeuronError::NoSteadyState(
            "shifter still overdrives the synapse leak at v_syn = vdd".into(),
        ));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if residual(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * cfg.vdd {
            break;
        }
    }
    let v_syn = 0.5 * (lo + hi);
    let v_mem = mem_for(v_syn);
    if !(0.0..=cfg.vdd).contains(&v_mem) || !(0.0..=cfg.vdd).contains(&v_syn) {
        return Err(NeuronError::NoSteadyState(format!(
            "balance point ({v_syn}, {v_mem}) is outside the rails"
        )));
    }
    Ok(NeuronState::new(v_syn, v_mem))
}
