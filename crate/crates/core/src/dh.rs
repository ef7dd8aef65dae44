//! Diffie-Hellman key agreement over a safe-prime group.
//!
//! Both parties share public parameters `(p, g)`. Each picks a private
//! exponent, publishes `g^private mod p`, and raises the peer's public value
//! to its own private exponent; both arrive at `g^(ab) mod p`.
//!
//! The shared secret is returned as a raw [`Nat`]; turning it into a
//! symmetric key is left to the caller.

use num_traits::One;
use rand::RngCore;

use crate::error::{Error, Result};
use crate::keyfile::KeyFile;
use crate::nat::Nat;
use crate::numtheory::{find_primitive_root, gen_safe_prime, mod_pow, random_between};

/// Public group parameters: safe prime `p = 2q + 1` and generator `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DhParams {
    p: Nat,
    g: Nat,
    q: Nat,
}

impl DhParams {
    /// Validates the triple: `p = 2q + 1` must be a safe prime and `g` a
    /// primitive root with `2 ≤ g < p`.
    pub fn new(p: Nat, g: Nat, q: Nat) -> Result<Self> {
        // Also checks primality of p and q.
        find_primitive_root(&p, &q)?;
        let two = Nat::from(2u32);
        if g < two || g >= p {
            return Err(Error::Domain(format!("generator {g} outside [2, p)")));
        }
        if mod_pow(&g, &two, &p)?.as_big().is_one() || mod_pow(&g, &q, &p)?.as_big().is_one() {
            return Err(Error::Domain(format!("{g} is not a primitive root modulo {p}")));
        }
        Ok(DhParams { p, g, q })
    }

    pub fn p(&self) -> &Nat {
        &self.p
    }

    pub fn g(&self) -> &Nat {
        &self.g
    }

    pub fn q(&self) -> &Nat {
        &self.q
    }

    pub fn to_key_file(&self) -> KeyFile {
        KeyFile::new().nat("p", &self.p).nat("g", &self.g).nat("q", &self.q)
    }

    pub fn from_key_file(file: &KeyFile) -> Result<Self> {
        let mut v = file.expect_nats(None, &["p", "g", "q"])?.into_iter();
        let (p, g, q) = (v.next().unwrap(), v.next().unwrap(), v.next().unwrap());
        Self::new(p, g, q)
    }
}

/// Fresh parameters with a `bits`-bit safe prime and its smallest primitive
/// root.
pub fn gen_params<R: RngCore + ?Sized>(bits: u64, rng: &mut R) -> Result<DhParams> {
    let (p, q) = gen_safe_prime(bits, rng)?;
    let g = find_primitive_root(&p, &q)?;
    Ok(DhParams { p, g, q })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DhKeyPair {
    private_key: Nat,
    public_key: Nat,
}

impl DhKeyPair {
    /// Derives the public half for a chosen private exponent in `(1, p-1)`.
    pub fn from_private(params: &DhParams, private_key: Nat) -> Result<Self> {
        let upper = Nat::from(params.p.as_big() - 1u32);
        if private_key <= Nat::one() || private_key >= upper {
            return Err(Error::Domain("private key outside (1, p-1)".into()));
        }
        let public_key = mod_pow(&params.g, &private_key, &params.p)?;
        Ok(DhKeyPair { private_key, public_key })
    }

    pub fn private_key(&self) -> &Nat {
        &self.private_key
    }

    pub fn public_key(&self) -> &Nat {
        &self.public_key
    }

    /// Parameters followed by `priv=` and `pub=`.
    pub fn to_key_file(&self, params: &DhParams) -> KeyFile {
        params.to_key_file().nat("priv", &self.private_key).nat("pub", &self.public_key)
    }

    pub fn from_key_file(file: &KeyFile) -> Result<(DhParams, Self)> {
        let mut v = file.expect_nats(None, &["p", "g", "q", "priv", "pub"])?.into_iter();
        let mut next = || v.next().unwrap();
        let params = DhParams::new(next(), next(), next())?;
        let pair = Self::from_private(&params, next())?;
        if pair.public_key != next() {
            return Err(Error::KeyFile("pub does not match g^priv mod p".into()));
        }
        Ok((params, pair))
    }
}

/// Samples a private exponent uniformly from `(1, p-1)`.
pub fn gen_keypair<R: RngCore + ?Sized>(params: &DhParams, rng: &mut R) -> Result<DhKeyPair> {
    let upper = Nat::from(params.p.as_big() - 1u32);
    let private_key = random_between(&Nat::one(), &upper, rng)?;
    DhKeyPair::from_private(params, private_key)
}

/// `peer_public^own_private mod p`.
pub fn shared_secret(params: &DhParams, own_private: &Nat, peer_public: &Nat) -> Result<Nat> {
    if peer_public.is_zero() || peer_public >= &params.p {
        return Err(Error::Domain("peer public value outside [1, p-1]".into()));
    }
    mod_pow(peer_public, own_private, &params.p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    fn small() -> DhParams {
        DhParams::new(n(23), n(5), n(11)).unwrap()
    }

    fn naive_pow(base: u64, exp: u64, m: u64) -> u64 {
        (0..exp).fold(1, |acc, _| acc * base % m)
    }

    #[test]
    fn textbook_exchange() {
        let params = small();
        assert_eq!(naive_pow(5, 6, 23), 8);
        assert_eq!(naive_pow(5, 15, 23), 19);
        let adam = DhKeyPair::from_private(&params, n(6)).unwrap();
        let bob = DhKeyPair::from_private(&params, n(15)).unwrap();
        assert_eq!(adam.public_key(), &n(8));
        assert_eq!(bob.public_key(), &n(19));
        // 5^(6·15) = 5^90 and 90 ≡ 2 (mod 22), so the secret is 5^2 mod 23.
        assert_eq!(naive_pow(5, 90 % 22, 23), 2);
        assert_eq!(shared_secret(&params, &n(6), &n(19)).unwrap(), n(2));
        assert_eq!(shared_secret(&params, &n(15), &n(8)).unwrap(), n(2));
        assert_eq!(shared_secret(&params, &n(1), &n(19)).unwrap(), n(19));
    }

    #[test]
    fn rejects_bad_inputs() {
        let params = small();
        assert!(shared_secret(&params, &n(6), &n(0)).is_err());
        assert!(shared_secret(&params, &n(6), &n(23)).is_err());
        assert!(DhKeyPair::from_private(&params, n(1)).is_err());
        assert!(DhKeyPair::from_private(&params, n(22)).is_err());
        assert!(DhParams::new(n(23), n(2), n(11)).is_err());
        assert!(DhParams::new(n(23), n(23), n(11)).is_err());
        assert!(DhParams::new(n(21), n(2), n(10)).is_err());
    }

    #[test]
    fn generated_params_hold_invariants() {
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        let params = gen_params(8, &mut rng).unwrap();
        let (p, g) = (params.p().to_u64().unwrap(), params.g().to_u64().unwrap());
        let mut x = 1;
        let mut seen = std::collections::HashSet::new();
        for _ in 0..p - 1 {
            seen.insert(x);
            x = x * g % p;
        }
        assert_eq!(seen.len() as u64, p - 1);
        for _ in 0..50 {
            let pair = gen_keypair(&params, &mut rng).unwrap();
            let a = pair.private_key().to_u64().unwrap();
            assert!(1 < a && a < p - 1);
            let pk = pair.public_key().to_u64().unwrap();
            assert!((1..p).contains(&pk));
        }
        let again = gen_params(64, &mut ChaCha20Rng::seed_from_u64(4)).unwrap();
        assert_eq!(again, gen_params(64, &mut ChaCha20Rng::seed_from_u64(4)).unwrap());
    }

    #[test]
    fn key_files_round_trip() {
        let params = small();
        let pair = DhKeyPair::from_private(&params, n(6)).unwrap();
        let text = pair.to_key_file(&params).to_string();
        assert_eq!(text, "p=17\ng=5\nq=b\npriv=6\npub=8\n");
        let (p2, k2) = DhKeyPair::from_key_file(&KeyFile::parse(&text).unwrap()).unwrap();
        assert_eq!((p2, k2), (params.clone(), pair));
        let tampered = KeyFile::parse("p=17\ng=5\nq=b\npriv=6\npub=9\n").unwrap();
        assert!(DhKeyPair::from_key_file(&tampered).is_err());
        assert_eq!(DhParams::from_key_file(&params.to_key_file()).unwrap(), params);
    }
}
