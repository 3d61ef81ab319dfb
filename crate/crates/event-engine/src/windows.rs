use neuron_core::{BiasConfig, DriveInput, Ps};

use crate::{PulseKind, SpikeEvent};

/// A half-open interval `[start, end)` of applied pulse current.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseWindow {
    pub start_ps: Ps,
    pub end_ps: Ps,
    pub kind: PulseKind,
    pub amplitude: f64,
}

impl PulseWindow {
    pub fn contains(&self, t: Ps) -> bool {
        self.start_ps <= t && t < self.end_ps
    }
}

/// Drive at instant `t`: per kind, the sum of amplitudes of windows containing
/// `t`. Overlapping same-kind pulses add like ideal current sources in
/// parallel.
pub fn active_drive(t: Ps, windows: &[PulseWindow]) -> DriveInput {
    let mut drive = DriveInput::ZERO;
    for w in windows {
        if w.contains(t) {
            match w.kind {
                PulseKind::Excitatory => drive.i_exc += w.amplitude,
                PulseKind::Inhibitory => drive.i_inh += w.amplitude,
                PulseKind::Reset => drive.i_rst += w.amplitude,
            }
        }
    }
    drive
}

/// The live pulse windows of one neuron.
#[derive(Debug, Default, Clone)]
pub struct ActiveWindows {
    windows: Vec<PulseWindow>,
}

impl ActiveWindows {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_event(&mut self, event: &SpikeEvent, cfg: &BiasConfig) {
        self.windows.push(PulseWindow {
            start_ps: event.time_ps,
            end_ps: event.time_ps + event.duration_ps,
            kind: event.kind,
            amplitude: event.kind.amplitude(cfg),
        });
    }

    pub fn drive_at(&self, t: Ps) -> DriveInput {
        active_drive(t, &self.windows)
    }

    /// Earliest window edge strictly after `t`, the next drive breakpoint.
    pub fn next_edge_after(&self, t: Ps) -> Option<Ps> {
        self.windows
            .iter()
            .flat_map(|w| [w.start_ps, w.end_ps])
            .filter(|&e| e > t)
            .min()
    }

    /// Discards windows that ended at or before `t`.
    pub fn prune(&mut self, t: Ps) {
        self.windows.retain(|w| w.end_ps > t);
    }

    pub fn is_empty(&self) -> bool {
        self.windows.is_empty()
    }

    pub fn windows(&self) -> &[PulseWindow] {
        &self.windows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn win(start: Ps, end: Ps, kind: PulseKind, amp: f64) -> PulseWindow {
        PulseWindow {
            start_ps: start,
            end_ps: end,
            kind,
            amplitude: amp,
        }
    }

    #[test]
    fn no_containing_window_means_zero_drive() {
        let ws = [win(10, 20, PulseKind::Excitatory, 550e-9)];
        assert_eq!(active_drive(25, &ws), DriveInput::ZERO);
        // End is exclusive.
        assert_eq!(active_drive(20, &ws), DriveInput::ZERO);
    }

    #[test]
    fn single_excitatory_window_contributes_its_amplitude() {
        let ws = [win(0, 24_000, PulseKind::Excitatory, 550e-9)];
        let d = active_drive(100, &ws);
        assert_eq!(d.i_exc, 550e-9);
        assert_eq!(d.i_inh, 0.0);
        assert_eq!(d.i_rst, 0.0);
    }

    #[test]
    fn overlapping_same_kind_pulses_sum() {
        let ws = [
            win(0, 24_000, PulseKind::Excitatory, 550e-9),
            win(10_000, 30_000, PulseKind::Excitatory, 550e-9),
        ];
        let d = active_drive(15_000, &ws);
        assert!((d.i_exc - 1.1e-6).abs() < 1e-18);
    }

    #[test]
    fn next_edge_walks_starts_and_ends() {
        let mut aw = ActiveWindows::new();
        let cfg = BiasConfig::default();
        let mut e = SpikeEvent::new(100, neuron_core::NeuronId(0), PulseKind::Excitatory, 50);
        aw.add_event(&e, &cfg);
        e.time_ps = 300;
        aw.add_event(&e, &cfg);
        assert_eq!(aw.next_edge_after(0), Some(100));
        assert_eq!(aw.next_edge_after(100), Some(150));
        assert_eq!(aw.next_edge_after(150), Some(300));
        assert_eq!(aw.next_edge_after(350), None);
    }

    #[test]
    fn prune_drops_expired_windows() {
        let mut aw = ActiveWindows::new();
        let cfg = BiasConfig::default();
        aw.add_event(
            &SpikeEvent::new(0, neuron_core::NeuronId(0), PulseKind::Reset, 10),
            &cfg,
        );
        aw.prune(10);
        assert!(aw.is_empty());
    }
}
