//! Synchronous address-event readout.
//!
//! Instead of an arbiter, every neuron owns a fixed time slot within a
//! scanning period and drives the shared bus only during that slot, so
//! samples can never collide. The reader polls slots serially and sees, per
//! slot, one active-low level and the owner's address. Readout is
//! level-sampled: an excursion above threshold that falls entirely between
//! two of a neuron's slots is unobservable at this resolution.

mod address;
mod error;
mod sample;
mod schedule;

pub use address::{address_width, decode_address, encode_address, Address};
pub use error::AerError;
pub use sample::{sample, AERSample};
pub use schedule::ScanSchedule;
