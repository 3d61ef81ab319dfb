//! The scalar current laws and their composition into per-node net currents.

use crate::{BiasConfig, CurrentBreakdown, DriveInput, NeuronState};

/// Synapse leak `i_n0 * (1 + lambda_n * v_syn)`.
///
/// Strictly positive and non-decreasing in `v_syn`.
pub fn leak_current_n(v_syn: f64, cfg: &BiasConfig) -> f64 {
    cfg.i_n0 * (1.0 + cfg.lambda_n * v_syn)
}

/// Soma charge current `i_p0 * (1 + lambda_p * (vdd - v_mem))`.
///
/// Strictly positive and non-increasing in `v_mem`.
pub fn leak_current_p(v_mem: f64, cfg: &BiasConfig) -> f64 {
    cfg.i_p0 * (1.0 + cfg.lambda_p * (cfg.vdd - v_mem))
}

/// Level-shifter current from the membrane node into the synapse node.
///
/// Zero at or below the onset `v_on`, then the soft exponential
/// `i_s * (exp((v_mem - v_syn - v_on) / v_slope) - 1)`, saturated at
/// [`BiasConfig::shift_ceiling`] to protect the exponential from overflow.
/// Continuous and non-decreasing in `v_mem - v_syn`.
pub fn shift_current(v_mem: f64, v_syn: f64, cfg: &BiasConfig) -> f64 {
    let x = v_mem - v_syn - cfg.v_on;
    if x <= 0.0 {
        return 0.0;
    }
    let ceiling = cfg.shift_ceiling();
    // exp() would overflow long before this bound triggers on its own.
    let arg = x / cfg.v_slope;
    if arg > 60.0 {
        return ceiling;
    }
    (cfg.i_s * (arg.exp() - 1.0)).min(ceiling)
}

/// Composes the current laws with the applied drive and the rail-saturation
/// rule: a net current that would push a node past a rail is zeroed at that
/// rail.
pub fn currents(state: &NeuronState, drive: &DriveInput, cfg: &BiasConfig) -> CurrentBreakdown {
    let i_n = leak_current_n(state.v_syn, cfg);
    let i_p = leak_current_p(state.v_mem, cfg);
    let i_shift = shift_current(state.v_mem, state.v_syn, cfg);

    let mut i_syn_net = drive.i_exc - drive.i_inh + i_shift - i_n;
    let mut i_mem_net = i_p - i_shift - drive.i_rst;

    if (state.v_syn >= cfg.vdd && i_syn_net > 0.0) || (state.v_syn <= 0.0 && i_syn_net < 0.0) {
        i_syn_net = 0.0;
    }
    if (state.v_mem >= cfg.vdd && i_mem_net > 0.0) || (state.v_mem <= 0.0 && i_mem_net < 0.0) {
        i_mem_net = 0.0;
    }

    CurrentBreakdown {
        i_exc: drive.i_exc,
        i_inh: drive.i_inh,
        i_n,
        i_p,
        i_shift,
        i_rst: drive.i_rst,
        i_syn_net,
        i_mem_net,
    }
}
