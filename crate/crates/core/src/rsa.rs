//! Textbook RSA: `C = M^e mod n`, `M = C^d mod n`.
//!
//! No padding scheme is applied to blocks. Byte messages are segmented by
//! [`crate::blocks`], which is a framing convention and not a security
//! measure. Do not use this for anything that needs real confidentiality.

use num_bigint::BigUint;
use num_traits::One;
use rand::RngCore;

use crate::blocks;
use crate::error::{Error, Result};
use crate::keyfile::KeyFile;
use crate::nat::Nat;
use crate::numtheory::{gcd, gen_prime_with_top_bits, is_probable_prime, mod_inverse, mod_pow, MILLER_RABIN_ROUNDS};

pub const DEFAULT_PUBLIC_EXPONENT: u32 = 65537;

/// `PU = {e, n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsaPublicKey {
    pub e: Nat,
    pub n: Nat,
}

/// `PR = {d, n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsaPrivateKey {
    pub d: Nat,
    pub n: Nat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsaKeyPair {
    pub public: RsaPublicKey,
    pub private: RsaPrivateKey,
    pub p: Nat,
    pub q: Nat,
    pub phi: Nat,
}

/// Builds a key pair from chosen primes and public exponent, with
/// `d = e⁻¹ mod (p-1)(q-1)`.
pub fn keygen_from_primes(p: &Nat, q: &Nat, e: &Nat) -> Result<RsaKeyPair> {
    if p == q {
        return Err(Error::Domain("p and q must differ".into()));
    }
    for prime in [p, q] {
        if !is_probable_prime(prime, MILLER_RABIN_ROUNDS) {
            return Err(Error::Domain(format!("{prime} is not prime")));
        }
    }
    let phi: Nat = ((p.as_big() - 1u32) * (q.as_big() - 1u32)).into();
    if e <= &Nat::one() || e >= &phi {
        return Err(Error::Domain(format!("e = {e} outside (1, {phi})")));
    }
    if !gcd(e, &phi).as_big().is_one() {
        return Err(Error::Domain(format!("e = {e} is not coprime to φ(n) = {phi}")));
    }
    let d = mod_inverse(e, &phi)?;
    let n: Nat = (p.as_big() * q.as_big()).into();
    Ok(RsaKeyPair {
        public: RsaPublicKey { e: e.clone(), n: n.clone() },
        private: RsaPrivateKey { d, n },
        p: p.clone(),
        q: q.clone(),
        phi,
    })
}

/// Random key pair whose modulus has exactly `bits` bits, built from two
/// `bits / 2`-bit primes. Primes are redrawn until `e` is coprime to φ(n).
pub fn keygen<R: RngCore + ?Sized>(bits: u64, e: &Nat, rng: &mut R) -> Result<RsaKeyPair> {
    if bits < 16 || bits % 2 != 0 {
        return Err(Error::Domain(format!("modulus size {bits} must be even and at least 16")));
    }
    if e.as_big() < &BigUint::from(3u32) || !e.as_big().bit(0) {
        return Err(Error::Domain(format!("public exponent {e} must be odd and at least 3")));
    }
    if e.bits() >= bits {
        return Err(Error::Domain(format!("public exponent {e} too large for a {bits}-bit modulus")));
    }
    loop {
        // Two top bits set on each prime keeps the product at full width.
        let p = gen_prime_with_top_bits(bits / 2, 2, rng);
        let q = gen_prime_with_top_bits(bits / 2, 2, rng);
        if p == q {
            continue;
        }
        let phi = (p.as_big() - 1u32) * (q.as_big() - 1u32);
        if e.as_big() >= &phi || !gcd(e, &phi.into()).as_big().is_one() {
            continue;
        }
        return keygen_from_primes(&p, &q, e);
    }
}

pub fn encrypt_block(m: &Nat, key: &RsaPublicKey) -> Result<Nat> {
    if m >= &key.n {
        return Err(Error::BlockTooLarge);
    }
    mod_pow(m, &key.e, &key.n)
}

pub fn decrypt_block(c: &Nat, key: &RsaPrivateKey) -> Result<Nat> {
    if c >= &key.n {
        return Err(Error::BlockTooLarge);
    }
    mod_pow(c, &key.d, &key.n)
}

pub fn encrypt_bytes(message: &[u8], key: &RsaPublicKey) -> Result<Vec<Nat>> {
    let width = blocks::block_width(&key.n)?;
    blocks::split(message, width).iter().map(|m| encrypt_block(m, key)).collect()
}

pub fn decrypt_bytes(ciphertext: &[Nat], key: &RsaPrivateKey) -> Result<Vec<u8>> {
    let width = blocks::block_width(&key.n)?;
    let plain = ciphertext
        .iter()
        .map(|c| match decrypt_block(c, key) {
            Err(Error::BlockTooLarge) => Err(Error::CorruptCiphertext("block not below the modulus")),
            other => other,
        })
        .collect::<Result<Vec<_>>>()?;
    blocks::join(&plain, width)
}

impl RsaPublicKey {
    pub fn to_key_file(&self) -> KeyFile {
        KeyFile::new().text("kind", "rsa-public").nat("n", &self.n).nat("e", &self.e)
    }

    pub fn from_key_file(file: &KeyFile) -> Result<Self> {
        let mut v = file.expect_nats(Some("rsa-public"), &["n", "e"])?.into_iter();
        let (n, e) = (v.next().unwrap(), v.next().unwrap());
        Ok(RsaPublicKey { e, n })
    }
}

impl RsaPrivateKey {
    pub fn to_key_file(&self) -> KeyFile {
        KeyFile::new().text("kind", "rsa-private").nat("n", &self.n).nat("d", &self.d)
    }

    pub fn from_key_file(file: &KeyFile) -> Result<Self> {
        let mut v = file.expect_nats(Some("rsa-private"), &["n", "d"])?.into_iter();
        let (n, d) = (v.next().unwrap(), v.next().unwrap());
        Ok(RsaPrivateKey { d, n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    fn textbook() -> RsaKeyPair {
        keygen_from_primes(&n(13), &n(19), &n(11)).unwrap()
    }

    #[test]
    fn worked_example() {
        let key = textbook();
        assert_eq!(key.public, RsaPublicKey { e: n(11), n: n(247) });
        assert_eq!(key.private, RsaPrivateKey { d: n(59), n: n(247) });
        assert_eq!(key.phi, n(216));
        assert_eq!(encrypt_block(&n(65), &key.public).unwrap(), n(221));
        assert_eq!(decrypt_block(&n(221), &key.private).unwrap(), n(65));
        for fixed in [0, 1] {
            assert_eq!(encrypt_block(&n(fixed), &key.public).unwrap(), n(fixed));
        }
        assert_eq!(decrypt_block(&n(0), &key.private).unwrap(), n(0));
        assert!(matches!(encrypt_block(&n(247), &key.public), Err(Error::BlockTooLarge)));
        assert!(matches!(decrypt_block(&n(300), &key.private), Err(Error::BlockTooLarge)));
    }

    #[test]
    fn keygen_from_primes_validates() {
        assert!(keygen_from_primes(&n(13), &n(19), &n(9)).is_err());
        assert!(keygen_from_primes(&n(13), &n(13), &n(5)).is_err());
        assert!(keygen_from_primes(&n(15), &n(19), &n(5)).is_err());
        assert!(keygen_from_primes(&n(13), &n(19), &n(1)).is_err());
        assert!(keygen_from_primes(&n(13), &n(19), &n(216)).is_err());
        let scan = (1..120u64).find(|d| 7 * d % 120 == 1).unwrap();
        assert_eq!(scan, 103);
        assert_eq!(keygen_from_primes(&n(11), &n(13), &n(7)).unwrap().private.d, n(103));
    }

    #[test]
    fn generated_keys_satisfy_invariants() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let e = Nat::from(DEFAULT_PUBLIC_EXPONENT);
        for bits in [16u64, 64, 128, 512] {
            let e = if bits == 16 { n(17) } else { e.clone() };
            let key = keygen(bits, &e, &mut rng).unwrap();
            assert_eq!(key.public.n.bits(), bits);
            assert_eq!(key.p.bits(), bits / 2);
            let ed = key.public.e.as_big() * key.private.d.as_big() % key.phi.as_big();
            assert!(ed.is_one());
        }
        assert!(keygen(15, &e, &mut rng).is_err());
        assert!(keygen(64, &n(4), &mut rng).is_err());
        assert!(keygen(16, &e, &mut rng).is_err());
        let a = keygen(128, &e, &mut ChaCha20Rng::seed_from_u64(8)).unwrap();
        let b = keygen(128, &e, &mut ChaCha20Rng::seed_from_u64(8)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn byte_mode_framing() {
        let key = textbook();
        assert!(matches!(encrypt_bytes(b"hi", &key.public), Err(Error::KeyTooSmall { .. })));
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let key = keygen(64, &Nat::from(DEFAULT_PUBLIC_EXPONENT), &mut rng).unwrap();
        assert_eq!(encrypt_bytes(b"abc", &key.public).unwrap().len(), 1);
        assert_eq!(encrypt_bytes(&[0x23; 14], &key.public).unwrap().len(), 3);
        assert!(matches!(decrypt_bytes(&[], &key.private), Err(Error::CorruptCiphertext(_))));
        let adversarial = [0x00, 0x01, 0x00, 0x01, 0x23, 0x01, 0x00, 0x00];
        let ct = encrypt_bytes(&adversarial, &key.public).unwrap();
        assert_eq!(decrypt_bytes(&ct, &key.private).unwrap(), adversarial);
    }

    #[test]
    fn byte_mode_round_trips_random_messages() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let key = keygen(128, &Nat::from(DEFAULT_PUBLIC_EXPONENT), &mut rng).unwrap();
        for _ in 0..500 {
            let len = rng.gen_range(1..=100);
            let msg: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
            let ct = encrypt_bytes(&msg, &key.public).unwrap();
            assert_eq!(ct.len(), blocks::block_count(len, 15));
            assert_eq!(decrypt_bytes(&ct, &key.private).unwrap(), msg);
        }
    }

    #[test]
    fn key_files() {
        let key = textbook();
        assert_eq!(key.public.to_key_file().to_string(), "kind=rsa-public\nn=f7\ne=b\n");
        assert_eq!(key.private.to_key_file().to_string(), "kind=rsa-private\nn=f7\nd=3b\n");
        let parsed = RsaPrivateKey::from_key_file(&KeyFile::parse("kind=rsa-private\nn=f7\nd=3b\n").unwrap()).unwrap();
        assert_eq!(parsed, key.private);
        assert!(RsaPublicKey::from_key_file(&key.private.to_key_file()).is_err());
    }
}
