//! ElGamal encryption over a safe-prime group.
//!
//! Key: secret `s`, public `z = g^s mod r`. A block `P < r` encrypts under a
//! fresh session exponent `l` to the pair `(g^l, z^l · P) mod r`. Decryption
//! recomputes the session key `Sk = e1^s` and multiplies `e2` by its inverse.

use rand::RngCore;

use crate::blocks;
use crate::dh::gen_params;
use crate::error::{Error, Result};
use crate::keyfile::KeyFile;
use crate::nat::Nat;
use crate::numtheory::{mod_inverse, mod_pow, random_between};

/// Public credentials `{r, g, z}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElGamalPublicKey {
    pub r: Nat,
    pub g: Nat,
    pub z: Nat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElGamalPrivateKey {
    pub s: Nat,
    pub r: Nat,
    pub g: Nat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElGamalCiphertext {
    pub e1: Nat,
    pub e2: Nat,
}

fn upper_exclusive(r: &Nat) -> Nat {
    Nat::from(r.as_big() - 1u32)
}

impl ElGamalPrivateKey {
    pub fn new(r: Nat, g: Nat, s: Nat) -> Result<Self> {
        if s <= Nat::one() || s >= upper_exclusive(&r) {
            return Err(Error::Domain("secret outside (1, r-1)".into()));
        }
        if g < Nat::from(2u32) || g >= r {
            return Err(Error::Domain("generator outside [2, r)".into()));
        }
        Ok(ElGamalPrivateKey { s, r, g })
    }

    pub fn public_key(&self) -> Result<ElGamalPublicKey> {
        Ok(ElGamalPublicKey {
            r: self.r.clone(),
            g: self.g.clone(),
            z: mod_pow(&self.g, &self.s, &self.r)?,
        })
    }

    pub fn to_key_file(&self) -> KeyFile {
        KeyFile::new()
            .text("kind", "elgamal-private")
            .nat("r", &self.r)
            .nat("g", &self.g)
            .nat("s", &self.s)
    }

    pub fn from_key_file(file: &KeyFile) -> Result<Self> {
        let mut v = file.expect_nats(Some("elgamal-private"), &["r", "g", "s"])?.into_iter();
        let (r, g, s) = (v.next().unwrap(), v.next().unwrap(), v.next().unwrap());
        Self::new(r, g, s)
    }
}

impl ElGamalPublicKey {
    pub fn to_key_file(&self) -> KeyFile {
        KeyFile::new()
            .text("kind", "elgamal-public")
            .nat("r", &self.r)
            .nat("g", &self.g)
            .nat("z", &self.z)
    }

    pub fn from_key_file(file: &KeyFile) -> Result<Self> {
        let mut v = file.expect_nats(Some("elgamal-public"), &["r", "g", "z"])?.into_iter();
        let (r, g, z) = (v.next().unwrap(), v.next().unwrap(), v.next().unwrap());
        if g < Nat::from(2u32) || g >= r || z.is_zero() || z >= r {
            return Err(Error::KeyFile("elgamal public values out of range".into()));
        }
        Ok(ElGamalPublicKey { r, g, z })
    }
}

/// Safe-prime modulus of `bits` bits, its smallest primitive root, and a
/// secret drawn uniformly from `(1, r-1)`.
pub fn keygen<R: RngCore + ?Sized>(bits: u64, rng: &mut R) -> Result<(ElGamalPublicKey, ElGamalPrivateKey)> {
    let params = gen_params(bits, rng)?;
    let r = params.p().clone();
    let s = random_between(&Nat::one(), &upper_exclusive(&r), rng)?;
    let private = ElGamalPrivateKey::new(r, params.g().clone(), s)?;
    Ok((private.public_key()?, private))
}

/// Encrypts with an explicit session exponent `l ∈ (1, r-1)`.
pub fn encrypt_block_with_session(p_msg: &Nat, key: &ElGamalPublicKey, l: &Nat) -> Result<ElGamalCiphertext> {
    if p_msg >= &key.r {
        return Err(Error::BlockTooLarge);
    }
    if l <= &Nat::one() || l >= &upper_exclusive(&key.r) {
        return Err(Error::Domain("session exponent outside (1, r-1)".into()));
    }
    let e1 = mod_pow(&key.g, l, &key.r)?;
    let session = mod_pow(&key.z, l, &key.r)?;
    let e2 = (session.as_big() * p_msg.as_big() % key.r.as_big()).into();
    Ok(ElGamalCiphertext { e1, e2 })
}

/// Encrypts one block under a fresh session exponent.
pub fn encrypt_block<R: RngCore + ?Sized>(p_msg: &Nat, key: &ElGamalPublicKey, rng: &mut R) -> Result<ElGamalCiphertext> {
    if p_msg >= &key.r {
        return Err(Error::BlockTooLarge);
    }
    let l = random_between(&Nat::one(), &upper_exclusive(&key.r), rng)?;
    encrypt_block_with_session(p_msg, key, &l)
}

pub fn decrypt_block(ct: &ElGamalCiphertext, key: &ElGamalPrivateKey) -> Result<Nat> {
    if ct.e1 >= key.r || ct.e2 >= key.r {
        return Err(Error::BlockTooLarge);
    }
    if ct.e1.is_zero() {
        return Err(Error::CorruptCiphertext("e1 is zero"));
    }
    let session = mod_pow(&ct.e1, &key.s, &key.r)?;
    let unmask = mod_inverse(&session, &key.r)?;
    Ok((ct.e2.as_big() * unmask.as_big() % key.r.as_big()).into())
}

pub fn encrypt_bytes<R: RngCore + ?Sized>(
    message: &[u8],
    key: &ElGamalPublicKey,
    rng: &mut R,
) -> Result<Vec<ElGamalCiphertext>> {
    let width = blocks::block_width(&key.r)?;
    blocks::split(message, width).iter().map(|m| encrypt_block(m, key, rng)).collect()
}

pub fn decrypt_bytes(cts: &[ElGamalCiphertext], key: &ElGamalPrivateKey) -> Result<Vec<u8>> {
    let width = blocks::block_width(&key.r)?;
    let plain = cts
        .iter()
        .map(|ct| match decrypt_block(ct, key) {
            Err(Error::BlockTooLarge) => Err(Error::CorruptCiphertext("component not below the modulus")),
            // r is prime, so a non-zero e1 always has an invertible session key.
            Err(Error::NotInvertible { .. }) => Err(Error::CorruptCiphertext("session key not invertible")),
            other => other,
        })
        .collect::<Result<Vec<_>>>()?;
    blocks::join(&plain, width)
}
