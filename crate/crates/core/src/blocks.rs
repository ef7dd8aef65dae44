//! Byte-stream segmentation shared by the RSA and ElGamal byte modes.
//!
//! A message is extended with a `0x01` terminator, zero-padded to a multiple
//! of the block width, and cut into big-endian integers. The block width is
//! `floor((bitlen(modulus) - 1) / 8)` bytes, so every block is below the
//! modulus.

use crate::error::{Error, Result};
use crate::nat::Nat;

const TERMINATOR: u8 = 0x01;

/// Plaintext block width in bytes for a modulus.
pub fn block_width(modulus: &Nat) -> Result<usize> {
    let bits = modulus.bits();
    match bits.saturating_sub(1) / 8 {
        0 => Err(Error::KeyTooSmall { bits }),
        w => Ok(w as usize),
    }
}

/// Number of blocks a message of `len` bytes occupies.
pub fn block_count(len: usize, width: usize) -> usize {
    (len + 1).div_ceil(width)
}

pub(crate) fn split(message: &[u8], width: usize) -> Vec<Nat> {
    let mut padded = Vec::with_capacity(block_count(message.len(), width) * width);
    padded.extend_from_slice(message);
    padded.push(TERMINATOR);
    padded.resize(padded.len().div_ceil(width) * width, 0);
    padded.chunks(width).map(Nat::from_bytes_be).collect()
}

pub(crate) fn join(blocks: &[Nat], width: usize) -> Result<Vec<u8>> {
    if blocks.is_empty() {
        return Err(Error::CorruptCiphertext("no blocks"));
    }
    let mut out = Vec::with_capacity(blocks.len() * width);
    for block in blocks {
        let bytes = block.to_bytes_be();
        if bytes.len() > width {
            return Err(Error::CorruptCiphertext("block wider than the plaintext width"));
        }
        out.resize(out.len() + width - bytes.len(), 0);
        out.extend_from_slice(&bytes);
    }
    let content = out.iter().rposition(|&b| b != 0);
    match content {
        // The terminator always sits in the final block.
        Some(end) if out[end] == TERMINATOR && out.len() - end <= width => {
            out.truncate(end);
            Ok(out)
        }
        _ => Err(Error::CorruptCiphertext("missing 0x01 terminator before padding")),
    }
}
