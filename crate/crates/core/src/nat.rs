use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{Num, One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision non-negative integer.
///
/// Thin newtype over [`BigUint`] that fixes the text encodings used by key
/// files: lowercase hexadecimal without leading zeros (`"0"` for zero), and
/// plain decimal via [`Display`](fmt::Display) / [`FromStr`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Nat(BigUint);

impl Nat {
    pub fn zero() -> Self {
        Nat(BigUint::zero())
    }

    pub fn one() -> Self {
        Nat(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Number of significant bits; zero has none.
    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    pub fn as_big(&self) -> &BigUint {
        &self.0
    }

    pub fn into_big(self) -> BigUint {
        self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.to_str_radix(16)
    }

    /// Parses canonical lowercase hex. Leading zeros, uppercase digits, signs
    /// and whitespace are all rejected so that the encoding stays bijective.
    pub fn from_hex(text: &str) -> Result<Self> {
        let canonical = !text.is_empty()
            && text.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
            && (text == "0" || !text.starts_with('0'));
        if !canonical {
            return Err(Error::Domain(format!("not canonical lowercase hex: {text:?}")));
        }
        BigUint::from_str_radix(text, 16)
            .map(Nat)
            .map_err(|e| Error::Domain(e.to_string()))
    }

    /// Minimal big-endian bytes; zero encodes as the empty slice.
    pub fn to_bytes_be(&self) -> Vec<u8> {
        if self.is_zero() {
            Vec::new()
        } else {
            self.0.to_bytes_be()
        }
    }

    pub fn from_bytes_be(bytes: &[u8]) -> Self {
        Nat(BigUint::from_bytes_be(bytes))
    }

    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.0).ok()
    }
}

impl From<BigUint> for Nat {
    fn from(value: BigUint) -> Self {
        Nat(value)
    }
}

impl From<Nat> for BigUint {
    fn from(value: Nat) -> Self {
        value.0
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for Nat {
            fn from(value: $t) -> Self {
                Nat(BigUint::from(value))
            }
        }
    )*};
}
from_prim!(u8, u16, u32, u64, u128, usize);

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Nat({})", self.0)
    }
}

impl fmt::LowerHex for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

impl FromStr for Nat {
    type Err = Error;

    /// Decimal digits only.
    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Domain(format!("not a decimal natural number: {s:?}")));
        }
        BigUint::from_str_radix(s, 10)
            .map(Nat)
            .map_err(|e| Error::Domain(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hex_encoding_is_canonical() {
        assert_eq!(Nat::zero().to_hex(), "0");
        assert_eq!(Nat::from(247u32).to_hex(), "f7");
        assert_eq!(Nat::from_hex("f7").unwrap(), Nat::from(247u32));
        assert_eq!(Nat::from_hex("0").unwrap(), Nat::zero());
        for bad in ["", "0f7", "F7", "+f7", " f7", "xyz", "00"] {
            assert!(Nat::from_hex(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn zero_has_empty_byte_encoding() {
        assert!(Nat::zero().to_bytes_be().is_empty());
        assert_eq!(Nat::from_bytes_be(&[]), Nat::zero());
        assert_eq!(Nat::from(0x0102u32).to_bytes_be(), vec![1, 2]);
    }

    proptest! {
        #[test]
        fn text_encodings_round_trip(bytes in proptest::collection::vec(any::<u8>(), 0..64)) {
            let n = Nat::from_bytes_be(&bytes);
            prop_assert_eq!(Nat::from_hex(&n.to_hex()).unwrap(), n.clone());
            prop_assert_eq!(n.to_string().parse::<Nat>().unwrap(), n);
        }
    }
}
