//! Encrypt-then-embed: seal a message with RSA or ElGamal, frame the
//! ciphertext in a [`CipherEnvelope`], and carry it in the LSB plane of a
//! cover image.
//!
//! # Envelope wire format
//!
//! ```text
//! offset  size  field
//! 0       4     magic "SCP1"
//! 4       1     cipher id: 0x01 RSA, 0x02 ElGamal
//! 5       4     logical block count, big-endian u32
//! 9       ...   entries: u16 big-endian length, then that many bytes
//! ```
//!
//! Each entry is a minimal big-endian integer (zero is the empty entry; a
//! leading zero byte is rejected). RSA stores one entry per block, ElGamal two
//! (`e1` then `e2`). Nothing may follow the last entry.

use rand::RngCore;

use crate::elgamal::{self, ElGamalCiphertext, ElGamalPrivateKey, ElGamalPublicKey};
use crate::error::{Error, Result};
use crate::lsb;
use crate::nat::Nat;
use crate::raster::Raster;
use crate::rsa::{self, RsaPrivateKey, RsaPublicKey};

pub const MAGIC: [u8; 4] = *b"SCP1";
const HEADER_LEN: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CipherId {
    Rsa,
    ElGamal,
}

impl CipherId {
    pub fn byte(self) -> u8 {
        match self {
            CipherId::Rsa => 0x01,
            CipherId::ElGamal => 0x02,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CipherId::Rsa => "rsa",
            CipherId::ElGamal => "elgamal",
        }
    }

    fn from_byte(b: u8) -> Option<Self> {
        match b {
            0x01 => Some(CipherId::Rsa),
            0x02 => Some(CipherId::ElGamal),
            _ => None,
        }
    }

    fn entries_per_block(self) -> usize {
        match self {
            CipherId::Rsa => 1,
            CipherId::ElGamal => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CipherEnvelope {
    Rsa(Vec<Nat>),
    ElGamal(Vec<ElGamalCiphertext>),
}

impl CipherEnvelope {
    pub fn cipher(&self) -> CipherId {
        match self {
            CipherEnvelope::Rsa(_) => CipherId::Rsa,
            CipherEnvelope::ElGamal(_) => CipherId::ElGamal,
        }
    }

    pub fn block_count(&self) -> usize {
        match self {
            CipherEnvelope::Rsa(blocks) => blocks.len(),
            CipherEnvelope::ElGamal(blocks) => blocks.len(),
        }
    }

    fn entries(&self) -> Vec<&Nat> {
        match self {
            CipherEnvelope::Rsa(blocks) => blocks.iter().collect(),
            CipherEnvelope::ElGamal(blocks) => blocks.iter().flat_map(|ct| [&ct.e1, &ct.e2]).collect(),
        }
    }
}

pub fn serialize_envelope(env: &CipherEnvelope) -> Result<Vec<u8>> {
    let count = u32::try_from(env.block_count()).map_err(|_| Error::Domain("too many blocks for an envelope".into()))?;
    let mut out = Vec::with_capacity(HEADER_LEN);
    out.extend_from_slice(&MAGIC);
    out.push(env.cipher().byte());
    out.extend_from_slice(&count.to_be_bytes());
    for value in env.entries() {
        let bytes = value.to_bytes_be();
        let len = u16::try_from(bytes.len()).map_err(|_| Error::Domain("block wider than 65535 bytes".into()))?;
        out.extend_from_slice(&len.to_be_bytes());
        out.extend_from_slice(&bytes);
    }
    Ok(out)
}

struct Reader<'a> {
    rest: &'a [u8],
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.rest.len() < n {
            return Err(Error::CorruptEnvelope("truncated"));
        }
        let (head, tail) = self.rest.split_at(n);
        self.rest = tail;
        Ok(head)
    }
}

pub fn parse_envelope(bytes: &[u8]) -> Result<CipherEnvelope> {
    if bytes.len() < MAGIC.len() || bytes[..MAGIC.len()] != MAGIC {
        return Err(Error::NotAStegoEnvelope);
    }
    let mut reader = Reader { rest: &bytes[MAGIC.len()..] };
    let cipher = CipherId::from_byte(reader.take(1)?[0]).ok_or(Error::CorruptEnvelope("unknown cipher id"))?;
    let count = u32::from_be_bytes(reader.take(4)?.try_into().unwrap()) as usize;
    let entries = count
        .checked_mul(cipher.entries_per_block())
        .filter(|&e| e.saturating_mul(2) <= reader.rest.len())
        .ok_or(Error::CorruptEnvelope("block count exceeds the data"))?;
    let mut values = Vec::with_capacity(entries);
    for _ in 0..entries {
        let len = u16::from_be_bytes(reader.take(2)?.try_into().unwrap()) as usize;
        let raw = reader.take(len)?;
        if raw.first() == Some(&0) {
            return Err(Error::CorruptEnvelope("non-minimal integer encoding"));
        }
        values.push(Nat::from_bytes_be(raw));
    }
    if !reader.rest.is_empty() {
        return Err(Error::CorruptEnvelope("trailing bytes"));
    }
    Ok(match cipher {
        CipherId::Rsa => CipherEnvelope::Rsa(values),
        CipherId::ElGamal => {
            let mut it = values.into_iter();
            let mut blocks = Vec::with_capacity(count);
            while let (Some(e1), Some(e2)) = (it.next(), it.next()) {
                blocks.push(ElGamalCiphertext { e1, e2 });
            }
            CipherEnvelope::ElGamal(blocks)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PublicKey {
    Rsa(RsaPublicKey),
    ElGamal(ElGamalPublicKey),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrivateKey {
    Rsa(RsaPrivateKey),
    ElGamal(ElGamalPrivateKey),
}

impl PublicKey {
    pub fn cipher(&self) -> CipherId {
        match self {
            PublicKey::Rsa(_) => CipherId::Rsa,
            PublicKey::ElGamal(_) => CipherId::ElGamal,
        }
    }

    pub fn modulus(&self) -> &Nat {
        match self {
            PublicKey::Rsa(k) => &k.n,
            PublicKey::ElGamal(k) => &k.r,
        }
    }
}

impl PrivateKey {
    pub fn cipher(&self) -> CipherId {
        match self {
            PrivateKey::Rsa(_) => CipherId::Rsa,
            PrivateKey::ElGamal(_) => CipherId::ElGamal,
        }
    }

    pub fn modulus(&self) -> &Nat {
        match self {
            PrivateKey::Rsa(k) => &k.n,
            PrivateKey::ElGamal(k) => &k.r,
        }
    }
}

pub fn seal<R: RngCore + ?Sized>(message: &[u8], key: &PublicKey, rng: &mut R) -> Result<CipherEnvelope> {
    Ok(match key {
        PublicKey::Rsa(k) => CipherEnvelope::Rsa(rsa::encrypt_bytes(message, k)?),
        PublicKey::ElGamal(k) => CipherEnvelope::ElGamal(elgamal::encrypt_bytes(message, k, rng)?),
    })
}

pub fn open(env: &CipherEnvelope, key: &PrivateKey) -> Result<Vec<u8>> {
    if env.cipher() != key.cipher() {
        return Err(Error::WrongKeyKind {
            expected: env.cipher().name(),
            found: key.cipher().name(),
        });
    }
    let max_len = key.modulus().bits().div_ceil(8) as usize;
    if env.entries().iter().any(|v| v.to_bytes_be().len() > max_len) {
        return Err(Error::CorruptCiphertext("block wider than the modulus"));
    }
    match (env, key) {
        (CipherEnvelope::Rsa(blocks), PrivateKey::Rsa(k)) => rsa::decrypt_bytes(blocks, k),
        (CipherEnvelope::ElGamal(blocks), PrivateKey::ElGamal(k)) => elgamal::decrypt_bytes(blocks, k),
        _ => unreachable!("cipher ids were compared above"),
    }
}

/// Encrypts `message`, frames it, and embeds it in a copy of `cover`.
pub fn hide<R: RngCore + ?Sized>(cover: &Raster, message: &[u8], key: &PublicKey, rng: &mut R) -> Result<Raster> {
    let envelope = seal(message, key, rng)?;
    lsb::embed_framed(cover, &serialize_envelope(&envelope)?)
}

/// Extracts the envelope carried by `stego` without decrypting it.
pub fn extract_envelope(stego: &Raster) -> Result<CipherEnvelope> {
    let bytes = match lsb::extract_framed(stego) {
        Err(Error::CorruptFrame(_)) => return Err(Error::NotAStegoEnvelope),
        other => other?,
    };
    parse_envelope(&bytes)
}

pub fn reveal(stego: &Raster, key: &PrivateKey) -> Result<Vec<u8>> {
    open(&extract_envelope(stego)?, key)
}
