use serde::{Deserialize, Serialize};

use crate::NeuronError;

/// All electrical parameters of the behavioral neuron model.
///
/// Gate bias voltages of the physical circuit appear here only through the
/// currents they set. The shipped defaults use the published operating point
/// (1.2 V rail, 550 nA pulse amplitudes, 2 pA leaks, 22 fF / 18 fF
/// capacitors, 1 ms scan period) with the remaining free parameters of the
/// level shifter and the channel-length modulation calibrated once so that
/// four 24 ns excitatory spikes at 1 ms intervals make the neuron fire while
/// three do not. The same bias set is used for every firing pattern.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BiasConfig {
    /// Supply rail (V).
    pub vdd: f64,
    /// Synapse leak magnitude at `v_syn = 0` (A).
    pub i_n0: f64,
    /// Channel-length-modulation coefficient of the synapse leak (1/V).
    pub lambda_n: f64,
    /// Soma charge-current magnitude at `v_mem = vdd` (A).
    pub i_p0: f64,
    /// Channel-length-modulation coefficient of the soma charge current (1/V).
    pub lambda_p: f64,
    /// Excitatory pulse amplitude (A).
    pub i_pulse_exc: f64,
    /// Inhibitory pulse amplitude (A).
    pub i_pulse_inh: f64,
    /// RST pull-down amplitude (A); the circuit drives it from the same gate
    /// bias as the inhibitory pulses.
    pub i_pulse_rst: f64,
    /// Synapse capacitor (F).
    pub c_syn: f64,
    /// Membrane capacitor (F).
    pub c_mem: f64,
    /// Saturation scale of the level-shifter diode law (A).
    pub i_s: f64,
    /// Diode onset: the level shifter carries no current for
    /// `v_mem - v_syn <= v_on` (V).
    pub v_on: f64,
    /// Exponential slope of the diode law (V).
    pub v_slope: f64,
    /// Inverter switching threshold for the spike output (V).
    pub v_threshold: f64,
}

impl Default for BiasConfig {
    fn default() -> Self {
        Self {
            vdd: 1.2,
            i_n0: 2e-12,
            lambda_n: 6.0,
            i_p0: 2e-12,
            lambda_p: 0.2,
            i_pulse_exc: 550e-9,
            i_pulse_inh: 550e-9,
            i_pulse_rst: 550e-9,
            c_syn: 22e-15,
            c_mem: 18e-15,
            i_s: 2e-12,
            v_on: 0.06,
            v_slope: 0.03,
            v_threshold: 0.6,
        }
    }
}

impl BiasConfig {
    /// Ceiling applied to the diode exponential so extreme node separations
    /// cannot overflow; ten excitatory pulse amplitudes is far above any
    /// current the rest of the model can source.
    pub fn shift_ceiling(&self) -> f64 {
        10.0 * self.i_pulse_exc
    }

    pub fn validate(&self) -> Result<(), NeuronError> {
        let positive = [
            ("i_n0", self.i_n0),
            ("i_p0", self.i_p0),
            ("i_pulse_exc", self.i_pulse_exc),
            ("i_pulse_inh", self.i_pulse_inh),
            ("i_pulse_rst", self.i_pulse_rst),
            ("c_syn", self.c_syn),
            ("c_mem", self.c_mem),
            ("i_s", self.i_s),
            ("v_slope", self.v_slope),
            ("vdd", self.vdd),
        ];
        for (name, value) in positive {
            if !(value > 0.0) || !value.is_finite() {
                return Err(NeuronError::InvalidBias(format!(
                    "{name} must be strictly positive, got {value}"
                )));
            }
        }
        for (name, value) in [("lambda_n", self.lambda_n), ("lambda_p", self.lambda_p)] {
            if !(value >= 0.0) || !value.is_finite() {
                return Err(NeuronError::InvalidBias(format!(
                    "{name} must be non-negative, got {value}"
                )));
            }
        }
        if !(self.v_threshold > 0.0 && self.v_threshold < self.vdd) {
            return Err(NeuronError::InvalidBias(format!(
                "v_threshold must lie strictly inside (0, vdd), got {}",
                self.v_threshold
            )));
        }
        if !(self.v_on >= 0.0 && self.v_on < self.vdd) {
            return Err(NeuronError::InvalidBias(format!(
                "v_on must lie in [0, vdd), got {}",
                self.v_on
            )));
        }
        Ok(())
    }

    /// True when at least one modulation coefficient is strictly positive,
    /// the condition for a unique steady state.
    pub fn has_unique_fixed_point(&self) -> bool {
        self.lambda_n > 0.0 || self.lambda_p > 0.0
    }
}
