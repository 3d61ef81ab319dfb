use std::cmp::Reverse;
use std::collections::BinaryHeap;

use neuron_core::Ps;

use crate::{EngineError, SpikeEvent};

/// Pending events ordered by `(time, neuron, kind rank, seq)`.
#[derive(Debug, Default)]
pub struct EventQueue {
    heap: BinaryHeap<Reverse<Ordered>>,
    next_seq: u64,
    peak_len: usize,
}

#[derive(Debug, PartialEq, Eq)]
struct Ordered(SpikeEvent);

impl Ord for Ordered {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.order_key().cmp(&other.0.order_key())
    }
}

impl PartialOrd for Ordered {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl EventQueue {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts an event, stamping its sequence number. Events may not be
    /// scheduled in the past relative to `now`.
    pub fn schedule(&mut self, mut event: SpikeEvent, now: Ps) -> Result<(), EngineError> {
        if event.time_ps < now {
            return Err(EngineError::PastEvent {
                time: event.time_ps,
                now,
            });
        }
        if event.duration_ps == 0 {
            return Err(EngineError::ZeroDuration);
        }
        event.seq = self.next_seq;
        self.next_seq += 1;
        self.heap.push(Reverse(Ordered(event)));
        self.peak_len = self.peak_len.max(self.heap.len());
        Ok(())
    }

    pub fn pop(&mut self) -> Option<SpikeEvent> {
        self.heap.pop().map(|Reverse(Ordered(e))| e)
    }

    pub fn peek_time(&self) -> Option<Ps> {
        self.heap.peek().map(|Reverse(Ordered(e))| e.time_ps)
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    /// Largest number of simultaneously pending events seen so far.
    pub fn peak_len(&self) -> usize {
        self.peak_len
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::PulseKind;
    use neuron_core::NeuronId;

    fn ev(t: Ps, n: u32, kind: PulseKind) -> SpikeEvent {
        SpikeEvent::new(t, NeuronId(n), kind, 24_000)
    }

    #[test]
    fn schedule_then_pop_returns_the_event() {
        let mut q = EventQueue::new();
        q.schedule(ev(5, 0, PulseKind::Excitatory), 0).unwrap();
        let e = q.pop().unwrap();
        assert_eq!(e.time_ps, 5);
        assert_eq!(e.neuron, NeuronId(0));
        assert!(q.pop().is_none());
    }

    #[test]
    fn equal_keys_pop_in_insertion_order() {
        let mut q = EventQueue::new();
        let mut a = ev(10, 1, PulseKind::Excitatory);
        let mut b = ev(10, 1, PulseKind::Excitatory);
        a.duration_ps = 1;
        b.duration_ps = 2;
        q.schedule(a, 0).unwrap();
        q.schedule(b, 0).unwrap();
        assert_eq!(q.pop().unwrap().duration_ps, 1);
        assert_eq!(q.pop().unwrap().duration_ps, 2);
    }

    #[test]
    fn earlier_time_pops_first_regardless_of_insertion() {
        let mut q = EventQueue::new();
        q.schedule(ev(5_000_000_000, 0, PulseKind::Excitatory), 0)
            .unwrap();
        q.schedule(ev(1_000_000_000, 0, PulseKind::Excitatory), 0)
            .unwrap();
        assert_eq!(q.pop().unwrap().time_ps, 1_000_000_000);
    }

    #[test]
    fn reset_outranks_same_instant_inputs() {
        let mut q = EventQueue::new();
        q.schedule(ev(7, 3, PulseKind::Excitatory), 0).unwrap();
        q.schedule(ev(7, 3, PulseKind::Inhibitory), 0).unwrap();
        q.schedule(ev(7, 3, PulseKind::Reset), 0).unwrap();
        assert_eq!(q.pop().unwrap().kind, PulseKind::Reset);
        assert_eq!(q.pop().unwrap().kind, PulseKind::Inhibitory);
        assert_eq!(q.pop().unwrap().kind, PulseKind::Excitatory);
    }

    #[test]
    fn lower_neuron_id_pops_first_at_equal_time() {
        let mut q = EventQueue::new();
        q.schedule(ev(7, 9, PulseKind::Reset), 0).unwrap();
        q.schedule(ev(7, 2, PulseKind::Excitatory), 0).unwrap();
        assert_eq!(q.pop().unwrap().neuron, NeuronId(2));
    }

    #[test]
    fn past_events_are_rejected() {
        let mut q = EventQueue::new();
        let err = q.schedule(ev(5, 0, PulseKind::Excitatory), 10).unwrap_err();
        assert_eq!(err, EngineError::PastEvent { time: 5, now: 10 });
    }

    #[test]
    fn zero_duration_is_rejected() {
        let mut q = EventQueue::new();
        let mut e = ev(5, 0, PulseKind::Excitatory);
        e.duration_ps = 0;
        assert_eq!(q.schedule(e, 0).unwrap_err(), EngineError::ZeroDuration);
    }

    #[test]
    fn peak_depth_tracks_high_water_mark() {
        let mut q = EventQueue::new();
        for t in 0..5 {
            q.schedule(ev(t, 0, PulseKind::Excitatory), 0).unwrap();
        }
        q.pop();
        q.pop();
        assert_eq!(q.peak_len(), 5);
        assert_eq!(q.len(), 3);
    }
}
