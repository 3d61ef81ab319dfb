use neuron_core::Ps;
use serde::{Deserialize, Serialize};

use crate::ControllerError;

/// Per-neuron firing-pattern policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum ControllerMode {
    /// Never send feedback.
    Passive,
    /// Reset after every active sample.
    Tonic { rst_duration_ps: Ps },
    /// Withhold the reset until a run of consecutive active samples reaches
    /// `spikes_per_burst`; an inactive sample restarts the count.
    Burst {
        spikes_per_burst: u32,
        rst_duration_ps: Ps,
    },
    /// Reset after every active sample with a pulse that starts at
    /// `rst_init_ps` and grows by `rst_increment_ps` per emission, clamped at
    /// `rst_max_ps`. The adapted width persists through inactive samples
    /// unless `decay_after_inactive` many consecutive inactive samples occur,
    /// which restores `rst_init_ps` (off by default).
    Adaptation {
        rst_init_ps: Ps,
        rst_increment_ps: Ps,
        rst_max_ps: Ps,
        #[serde(default)]
        decay_after_inactive: Option<u32>,
    },
}

impl ControllerMode {
    pub fn validate(&self) -> Result<(), ControllerError> {
        match *self {
            ControllerMode::Passive => Ok(()),
            ControllerMode::Tonic { rst_duration_ps } => {
                if rst_duration_ps == 0 {
                    return Err(ControllerError::InvalidMode(
                        "tonic reset duration must be positive".into(),
                    ));
                }
                Ok(())
            }
            ControllerMode::Burst {
                spikes_per_burst,
                rst_duration_ps,
            } => {
                if spikes_per_burst < 1 {
                    return Err(ControllerError::InvalidMode(
                        "burst length must be at least one spike".into(),
                    ));
                }
                if rst_duration_ps == 0 {
                    return Err(ControllerError::InvalidMode(
                        "burst reset duration must be positive".into(),
                    ));
                }
                Ok(())
            }
            ControllerMode::Adaptation {
                rst_init_ps,
                rst_increment_ps,
                rst_max_ps,
                decay_after_inactive,
            } => {
                if rst_init_ps == 0 || rst_increment_ps == 0 {
                    return Err(ControllerError::InvalidMode(
                        "adaptation init and increment must be positive".into(),
                    ));
                }
                if rst_init_ps > rst_max_ps {
                    return Err(ControllerError::InvalidMode(format!(
                        "adaptation init {rst_init_ps} ps exceeds the maximum {rst_max_ps} ps"
                    )));
                }
                if decay_after_inactive == Some(0) {
                    return Err(ControllerError::InvalidMode(
                        "decay threshold must be at least one inactive sample".into(),
                    ));
                }
                Ok(())
            }
        }
    }
}
