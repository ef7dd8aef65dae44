//! Least-significant-bit embedding into the colour channels of a raster.
//!
//! Payload bits are written most-significant bit first. Bit `k` goes into the
//! low bit of channel `k mod 3` (R, G, B) of pixel `k / 3`, pixels taken in
//! row-major order. Alpha is never touched.
//!
//! Two framings are offered: the text mode terminates the message with the
//! delimiter `#####`, and the binary-safe mode prefixes a 4-byte big-endian
//! length.

use crate::error::{Error, Result};
use crate::raster::Raster;

pub const DELIMITER: &[u8] = b"#####";
const LENGTH_HEADER_BYTES: usize = 4;

/// One bit per colour channel.
pub fn capacity_bits(raster: &Raster) -> u64 {
    3 * raster.pixels().len() as u64
}

fn check_capacity(cover: &Raster, payload_bytes: usize) -> Result<()> {
    let required_bits = payload_bytes as u64 * 8;
    let available_bits = capacity_bits(cover);
    if required_bits > available_bits {
        return Err(Error::Capacity { required_bits, available_bits });
    }
    Ok(())
}

/// Writes `payload` into the LSB plane starting at channel 0. Capacity must
/// already be checked.
fn write_bits(cover: &Raster, payload: &[u8]) -> Raster {
    let mut stego = cover.clone();
    let bits = payload.iter().flat_map(|&byte| (0..8).rev().map(move |i| (byte >> i) & 1));
    let channels = stego.pixels_mut().iter_mut().flat_map(|px| px[..3].iter_mut());
    for (channel, bit) in channels.zip(bits) {
        *channel = (*channel & !1) | bit;
    }
    stego
}

/// Iterator over the hidden bytes, eight channels at a time.
fn read_bytes(stego: &Raster) -> impl Iterator<Item = u8> + '_ {
    let lsbs: Vec<u8> = stego.pixels().iter().flat_map(|px| px[..3].iter().map(|c| c & 1)).collect();
    let whole = lsbs.len() / 8;
    (0..whole).map(move |i| lsbs[i * 8..i * 8 + 8].iter().fold(0u8, |acc, &b| (acc << 1) | b))
}

/// Hides `text` followed by `#####`.
///
/// Text that contains the delimiter, or ends in `#`, is refused: in both cases
/// the first delimiter occurrence would not mark the true end of the message.
pub fn embed_delimited(cover: &Raster, text: &[u8]) -> Result<Raster> {
    if text.windows(DELIMITER.len()).any(|w| w == DELIMITER) || text.last() == Some(&b'#') {
        return Err(Error::DelimiterCollision);
    }
    check_capacity(cover, text.len() + DELIMITER.len())?;
    let mut payload = text.to_vec();
    payload.extend_from_slice(DELIMITER);
    Ok(write_bits(cover, &payload))
}

/// Returns every byte before the first `#####`.
pub fn extract_delimited(stego: &Raster) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    for byte in read_bytes(stego) {
        out.push(byte);
        if out.ends_with(DELIMITER) {
            out.truncate(out.len() - DELIMITER.len());
            return Ok(out);
        }
    }
    Err(Error::NoMessage)
}

/// Hides a 4-byte big-endian length followed by `payload`.
pub fn embed_framed(cover: &Raster, payload: &[u8]) -> Result<Raster> {
    let len = u32::try_from(payload.len()).map_err(|_| Error::Capacity {
        required_bits: (payload.len() as u64 + 4) * 8,
        available_bits: capacity_bits(cover),
    })?;
    check_capacity(cover, payload.len() + LENGTH_HEADER_BYTES)?;
    let mut framed = Vec::with_capacity(payload.len() + LENGTH_HEADER_BYTES);
    framed.extend_from_slice(&len.to_be_bytes());
    framed.extend_from_slice(payload);
    Ok(write_bits(cover, &framed))
}

pub fn extract_framed(stego: &Raster) -> Result<Vec<u8>> {
    let mut bytes = read_bytes(stego);
    let mut header = [0u8; LENGTH_HEADER_BYTES];
    for slot in &mut header {
        *slot = bytes.next().ok_or(Error::CorruptFrame("cover too small for a length header"))?;
    }
    let len = u32::from_be_bytes(header) as u64;
    let available = capacity_bits(stego) / 8 - LENGTH_HEADER_BYTES as u64;
    if len > available {
        return Err(Error::CorruptFrame("declared length exceeds the cover's capacity"));
    }
    Ok(bytes.take(len as usize).collect())
}
