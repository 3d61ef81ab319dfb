use neuron_core::NeuronId;
use serde::{Deserialize, Serialize};

use crate::AerError;

/// Dense binary bus address of a neuron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Address(pub u32);

impl std::fmt::Display for Address {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Bit width of the address lines for an array of `n_neurons`.
pub fn address_width(n_neurons: u32) -> u32 {
    if n_neurons <= 1 {
        1
    } else {
        u32::BITS - (n_neurons - 1).leading_zeros()
    }
}

pub fn encode_address(neuron: NeuronId, n_neurons: u32) -> Result<Address, AerError> {
    if neuron.0 >= n_neurons {
        return Err(AerError::NeuronOutOfRange {
            id: neuron.0,
            n_neurons,
        });
    }
    Ok(Address(neuron.0))
}

pub fn decode_address(address: Address, n_neurons: u32) -> Result<NeuronId, AerError> {
    if address.0 >= n_neurons {
        return Err(AerError::AddressOutOfRange {
            address: address.0,
            n_neurons,
        });
    }
    Ok(NeuronId(address.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn id_zero_round_trips() {
        let a = encode_address(NeuronId(0), 8).unwrap();
        assert_eq!(a, Address(0));
        assert_eq!(decode_address(a, 8).unwrap(), NeuronId(0));
    }

    #[test]
    fn id_five_in_an_eight_neuron_array_is_three_bits() {
        let a = encode_address(NeuronId(5), 8).unwrap();
        assert_eq!(a.0, 0b101);
        assert_eq!(address_width(8), 3);
        assert_eq!(decode_address(a, 8).unwrap(), NeuronId(5));
    }

    #[test]
    fn kilo_array_round_trips_bijectively() {
        let mut seen = std::collections::HashSet::new();
        for n in 0..1024 {
            let a = encode_address(NeuronId(n), 1024).unwrap();
            assert!(seen.insert(a.0));
            assert_eq!(decode_address(a, 1024).unwrap(), NeuronId(n));
        }
        assert_eq!(address_width(1024), 10);
    }

    #[test]
    fn out_of_range_decode_fails() {
        assert!(matches!(
            decode_address(Address(8), 8),
            Err(AerError::AddressOutOfRange { .. })
        ));
        assert!(matches!(
            encode_address(NeuronId(9), 8),
            Err(AerError::NeuronOutOfRange { .. })
        ));
    }

    #[test]
    fn width_handles_non_powers_of_two() {
        assert_eq!(address_width(1), 1);
        assert_eq!(address_width(2), 1);
        assert_eq!(address_width(3), 2);
        assert_eq!(address_width(1000), 10);
    }
}
