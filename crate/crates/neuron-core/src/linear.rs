//! Exact solutions of the decoupled affine node dynamics.
//!
//! With the level shifter off, each node obeys `C * dv/dt = a - b*v` with
//! constant coefficients over an interval of constant drive, which integrates
//! to an exponential approach (or a pure ramp when the modulation coefficient
//! is zero).

use crate::{BiasConfig, DriveInput, NeuronError, NeuronState};

/// One node's affine vector field `dv/dt = alpha - beta * v` with `beta >= 0`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct NodeFlow {
    pub alpha: f64,
    pub beta: f64,
}

impl NodeFlow {
    /// Synapse node with the level shifter carrying `i_shift = 0`.
    pub fn syn_diode_off(drive: &DriveInput, cfg: &BiasConfig) -> Self {
        NodeFlow {
            alpha: (drive.i_exc - drive.i_inh - cfg.i_n0) / cfg.c_syn,
            beta: cfg.i_n0 * cfg.lambda_n / cfg.c_syn,
        }
    }

    /// Membrane node with the level shifter carrying `i_shift = 0`.
    pub fn mem_diode_off(drive: &DriveInput, cfg: &BiasConfig) -> Self {
        NodeFlow {
            alpha: (cfg.i_p0 * (1.0 + cfg.lambda_p * cfg.vdd) - drive.i_rst) / cfg.c_mem,
            beta: cfg.i_p0 * cfg.lambda_p / cfg.c_mem,
        }
    }

    pub fn rate(&self, v: f64) -> f64 {
        self.alpha - self.beta * v
    }

    /// Exact value after `t` seconds from `v0`. Monotone in `t`.
    pub fn value_at(&self, v0: f64, t: f64) -> f64 {
        if self.beta == 0.0 {
            v0 + self.alpha * t
        } else {
            let v_inf = self.alpha / self.beta;
            v_inf + (v0 - v_inf) * (-self.beta * t).exp()
        }
    }

    /// Time at which the trajectory from `v0` reaches `target`, if it does.
    pub fn time_to_reach(&self, v0: f64, target: f64) -> Option<f64> {
        if target == v0 {
            return Some(0.0);
        }
        if self.beta == 0.0 {
            if self.alpha == 0.0 {
                return None;
            }
            let t = (target - v0) / self.alpha;
            return (t > 0.0).then_some(t);
        }
        let v_inf = self.alpha / self.beta;
        let from = v_inf - v0;
        let to = v_inf - target;
        // Reachable only if the target lies strictly between v0 and the
        // asymptote.
        if from == 0.0 || to / from <= 0.0 || to.abs() >= from.abs() {
            return None;
        }
        Some((from / to).ln() / self.beta)
    }
}

/// Advances both nodes by the exact solution of the decoupled affine ODEs.
///
/// The caller guarantees constant drive, a level shifter that stays off, and
/// no rail crossing over `dt`; violations that are detectable at the interval
/// endpoints are reported as [`NeuronError::RegimeViolation`].
pub fn step_exact_linear(
    state: &NeuronState,
    drive: &DriveInput,
    dt: f64,
    cfg: &BiasConfig,
) -> Result<NeuronState, NeuronError> {
    if !state.is_finite() {
        return Err(NeuronError::NonFiniteState {
            v_syn: state.v_syn,
            v_mem: state.v_mem,
        });
    }
    if !(dt >= 0.0) {
        return Err(NeuronError::RegimeViolation(format!(
            "negative step length {dt}"
        )));
    }
    if state.v_mem - state.v_syn > cfg.v_on {
        return Err(NeuronError::RegimeViolation(format!(
            "level shifter is conducting at the interval start \
             (v_mem - v_syn = {} > v_on = {})",
            state.v_mem - state.v_syn,
            cfg.v_on
        )));
    }
    if dt == 0.0 {
        return Ok(*state);
    }

    let syn = NodeFlow::syn_diode_off(drive, cfg);
    let mem = NodeFlow::mem_diode_off(drive, cfg);
    let next = NeuronState::new(
        syn.value_at(state.v_syn, dt),
        mem.value_at(state.v_mem, dt),
    );

    if next.v_mem - next.v_syn > cfg.v_on {
        return Err(NeuronError::RegimeViolation(format!(
            "level shifter turns on within the interval \
             (v_mem - v_syn = {} > v_on = {} at dt)",
            next.v_mem - next.v_syn,
            cfg.v_on
        )));
    }
    if !next.within_rails(cfg.vdd) {
        return Err(NeuronError::RegimeViolation(format!(
            "trajectory crosses a rail within the interval \
             (v_syn = {}, v_mem = {} at dt)",
            next.v_syn, next.v_mem
        )));
    }
    Ok(next)
}
