use serde::{Deserialize, Serialize};

/// Index of a neuron within the array.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NeuronId(pub u32);

impl NeuronId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Display for NeuronId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The pair of node voltages of one neuron.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NeuronState {
    pub v_syn: f64,
    pub v_mem: f64,
}

impl NeuronState {
    pub fn new(v_syn: f64, v_mem: f64) -> Self {
        Self { v_syn, v_mem }
    }

    pub fn is_finite(&self) -> bool {
        self.v_syn.is_finite() && self.v_mem.is_finite()
    }

    pub fn within_rails(&self, vdd: f64) -> bool {
        (0.0..=vdd).contains(&self.v_syn) && (0.0..=vdd).contains(&self.v_mem)
    }
}

/// Instantaneous externally applied pulse currents. Each component is either
/// zero or a sum of active pulse amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DriveInput {
    pub i_exc: f64,
    pub i_inh: f64,
    pub i_rst: f64,
}

impl DriveInput {
    pub const ZERO: DriveInput = DriveInput {
        i_exc: 0.0,
        i_inh: 0.0,
        i_rst: 0.0,
    };

    pub fn is_zero(&self) -> bool {
        self.i_exc == 0.0 && self.i_inh == 0.0 && self.i_rst == 0.0
    }
}

/// Every current in the model at one instant, plus the signed per-node nets.
///
/// Sign convention: the level-shifter current flows from the membrane node
/// into the synapse node, so
/// `i_syn_net = i_exc - i_inh + i_shift - i_n` and
/// `i_mem_net = i_p - i_shift - i_rst`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurrentBreakdown {
    pub i_exc: f64,
    pub i_inh: f64,
    pub i_n: f64,
    pub i_p: f64,
    pub i_shift: f64,
    pub i_rst: f64,
    pub i_syn_net: f64,
    pub i_mem_net: f64,
}
