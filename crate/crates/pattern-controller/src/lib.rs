//! Firing-pattern policies of the external digital controller.
//!
//! The silicon neuron keeps one fixed bias set; tonic firing, bursting and
//! spike-frequency adaptation all come from how the controller answers
//! active scan samples with RST pulses of varying width. The refractory
//! period is realized solely by the RST pulse width; no separate refractory
//! state exists.

mod command;
mod mode;
mod state;

pub use command::{command_to_event, ResetCommand};
pub use mode::ControllerMode;
pub use state::ControllerState;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ControllerError {
    #[error("invalid controller mode: {0}")]
    InvalidMode(String),
}
