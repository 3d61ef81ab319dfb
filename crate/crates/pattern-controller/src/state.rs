use aer_bus::AERSample;
use neuron_core::Ps;
use serde::{Deserialize, Serialize};

use crate::{ControllerError, ControllerMode, ResetCommand};

/// Per-neuron policy state: the consecutive-sample counters and the current
/// adapted reset width.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ControllerState {
    mode: ControllerMode,
    consecutive_active: u32,
    consecutive_inactive: u32,
    current_rst_ps: Ps,
}

impl ControllerState {
    pub fn new(mode: ControllerMode) -> Result<Self, ControllerError> {
        mode.validate()?;
        let current_rst_ps = match mode {
            ControllerMode::Adaptation { rst_init_ps, .. } => rst_init_ps,
            ControllerMode::Tonic { rst_duration_ps }
            | ControllerMode::Burst {
                rst_duration_ps, ..
            } => rst_duration_ps,
            ControllerMode::Passive => 0,
        };
        Ok(Self {
            mode,
            consecutive_active: 0,
            consecutive_inactive: 0,
            current_rst_ps,
        })
    }

    pub fn mode(&self) -> &ControllerMode {
        &self.mode
    }

    pub fn consecutive_active(&self) -> u32 {
        self.consecutive_active
    }

    pub fn current_rst_ps(&self) -> Ps {
        self.current_rst_ps
    }

    /// Consumes one scan sample of this neuron and possibly emits a reset.
    pub fn on_sample(&mut self, s: &AERSample) -> Option<ResetCommand> {
        if s.active {
            self.consecutive_inactive = 0;
        } else {
            self.consecutive_inactive += 1;
        }
        match self.mode {
            ControllerMode::Passive => None,
            ControllerMode::Tonic { rst_duration_ps } => {
                if s.active {
                    self.consecutive_active = 0;
                    Some(ResetCommand {
                        neuron: s.neuron,
                        issue_time_ps: s.time_ps,
                        duration_ps: rst_duration_ps,
                    })
                } else {
                    self.consecutive_active = 0;
                    None
                }
            }
            ControllerMode::Burst {
                spikes_per_burst,
                rst_duration_ps,
            } => {
                if s.active {
                    self.consecutive_active += 1;
                    if self.consecutive_active >= spikes_per_burst {
                        self.consecutive_active = 0;
                        Some(ResetCommand {
                            neuron: s.neuron,
                            issue_time_ps: s.time_ps,
                            duration_ps: rst_duration_ps,
                        })
                    } else {
                        None
                    }
                } else {
                    self.consecutive_active = 0;
                    None
                }
            }
            ControllerMode::Adaptation {
                rst_init_ps,
                rst_increment_ps,
                rst_max_ps,
                decay_after_inactive,
            } => {
                if s.active {
                    let command = ResetCommand {
                        neuron: s.neuron,
                        issue_time_ps: s.time_ps,
                        duration_ps: self.current_rst_ps,
                    };
                    self.current_rst_ps =
                        (self.current_rst_ps + rst_increment_ps).min(rst_max_ps);
                    Some(command)
                } else {
                    if let Some(threshold) = decay_after_inactive {
                        if self.consecutive_inactive >= threshold {
                            self.current_rst_ps = rst_init_ps;
                        }
                    }
                    None
                }
            }
        }
    }
}
