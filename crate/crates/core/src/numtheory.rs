//! Modular arithmetic and prime machinery shared by every cipher.
//!
//! Everything here is a pure function of its inputs plus an injected random
//! source. Prime search is single-threaded, so a seeded generator yields the
//! same primes on every run.

use std::cell::Cell;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::nat::Nat;

/// Miller-Rabin rounds used by prime generation.
pub const MILLER_RABIN_ROUNDS: u32 = 40;

/// The first thirteen primes as Miller-Rabin bases are a proof of primality
/// for every n below this bound.
const DETERMINISTIC_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const DETERMINISTIC_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

/// Trial division covers primes below this; it is also the sieve bound for
/// safe-prime search.
const SMALL_PRIME_LIMIT: u32 = 1 << 16;
const TRIAL_DIVISION_LIMIT: u32 = 256;

thread_local! {
    static MODEXP_CALLS: Cell<u64> = const { Cell::new(0) };
}

/// Number of [`mod_pow`] calls made on this thread so far.
pub fn modexp_count() -> u64 {
    MODEXP_CALLS.with(Cell::get)
}

/// Runs `f` and returns its result with the number of [`mod_pow`] calls it
/// made on the current thread.
pub fn count_modexps<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let before = modexp_count();
    let out = f();
    (out, modexp_count() - before)
}

/// `base^exponent mod modulus` by square-and-multiply.
pub fn mod_pow(base: &Nat, exponent: &Nat, modulus: &Nat) -> Result<Nat> {
    if modulus.is_zero() {
        return Err(Error::Domain("modulus must be at least 1".into()));
    }
    MODEXP_CALLS.with(|c| c.set(c.get() + 1));
    if let (Some(b), Some(e), Some(m)) = (base.to_u64(), exponent.to_u64(), modulus.to_u64()) {
        return Ok(pow_mod_u64(b, e, m).into());
    }
    Ok(base.as_big().modpow(exponent.as_big(), modulus.as_big()).into())
}

fn pow_mod_u64(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = u128::from(modulus);
    let mut acc = 1 % m;
    let mut sq = u128::from(base) % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * sq % m;
        }
        sq = sq * sq % m;
        exp >>= 1;
    }
    acc as u64
}

fn inverse_u64(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (i128::from(a % m), i128::from(m));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(i128::from(m)) as u64)
}

pub fn gcd(a: &Nat, b: &Nat) -> Nat {
    a.as_big().gcd(b.as_big()).into()
}

/// The inverse of `a` modulo `m`, in `1..m`, via the extended Euclidean
/// algorithm.
pub fn mod_inverse(a: &Nat, m: &Nat) -> Result<Nat> {
    if m.as_big() < &BigUint::from(2u32) {
        return Err(Error::Domain("modulus must be at least 2".into()));
    }
    let not_invertible = || Error::NotInvertible {
        value: a.to_string(),
        modulus: m.to_string(),
    };
    if let Some(small) = m.to_u64() {
        let a = (a.as_big() % m.as_big()).to_u64().unwrap_or(0);
        return inverse_u64(a, small).map(Nat::from).ok_or_else(not_invertible);
    }
    let (gcd, coefficient) = lehmer_gcd_coefficient(&(a.as_big() % m.as_big()), m.as_big());
    if !gcd.is_one() {
        return Err(not_invertible());
    }
    let inverse = coefficient.mod_floor(&BigInt::from(m.as_big().clone()));
    match inverse.to_biguint() {
        Some(v) => Ok(v.into()),
        None => unreachable!("mod_floor by a positive modulus is non-negative"),
    }
}

/// Extended Euclid on `(m, a)` with `a < m`, returning `gcd` and `t` such
/// that `t·a ≡ gcd (mod m)`.
///
/// Lehmer's method: runs of single-word quotient steps are simulated on the
/// leading 62 bits and applied to the full numbers as one 2×2 matrix, falling
/// back to a full division whenever the leading bits cannot decide the next
/// quotient.
fn lehmer_gcd_coefficient(a: &BigUint, m: &BigUint) -> (BigUint, BigInt) {
    let (mut hi, mut lo) = (m.clone(), a.clone());
    let (mut t_hi, mut t_lo) = (BigInt::zero(), BigInt::one());
    while !lo.is_zero() {
        let shift = hi.bits().saturating_sub(62);
        let mut top_hi = (&hi >> shift).to_i128().unwrap_or(0);
        let mut top_lo = (&lo >> shift).to_i128().unwrap_or(0);
        // new hi = x0·hi + y0·lo, new lo = x1·hi + y1·lo
        let (mut x0, mut y0, mut x1, mut y1) = (1i128, 0i128, 0i128, 1i128);
        while top_lo + x1 != 0 && top_lo + y1 != 0 {
            let q = (top_hi + x0) / (top_lo + x1);
            if q != (top_hi + y0) / (top_lo + y1) {
                break;
            }
            (x0, x1) = (x1, x0 - q * x1);
            (y0, y1) = (y1, y0 - q * y1);
            (top_hi, top_lo) = (top_lo, top_hi - q * top_lo);
        }
        if y0 == 0 {
            let (q, r) = hi.div_rem(&lo);
            let next_t = &t_hi - BigInt::from(q) * &t_lo;
            (hi, lo) = (lo, r);
            (t_hi, t_lo) = (t_lo, next_t);
        } else {
            let (bx0, by0, bx1, by1) = (BigInt::from(x0), BigInt::from(y0), BigInt::from(x1), BigInt::from(y1));
            let (h, l) = (BigInt::from(hi), BigInt::from(lo));
            let next_hi = &bx0 * &h + &by0 * &l;
            let next_lo = &bx1 * &h + &by1 * &l;
            let next_t_hi = &bx0 * &t_hi + &by0 * &t_lo;
            let next_t_lo = &bx1 * &t_hi + &by1 * &t_lo;
            hi = next_hi.to_biguint().expect("Lehmer remainders stay non-negative");
            lo = next_lo.to_biguint().expect("Lehmer remainders stay non-negative");
            (t_hi, t_lo) = (next_t_hi, next_t_lo);
        }
    }
    (hi, t_hi)
}

/// Primes below [`TRIAL_DIVISION_LIMIT`], built at compile time.
const TRIAL_PRIMES: [u32; 54] = {
    let mut out = [0u32; 54];
    let (mut count, mut candidate) = (0, 2);
    while candidate < TRIAL_DIVISION_LIMIT {
        let mut d = 2;
        let mut prime = true;
        while d * d <= candidate {
            if candidate % d == 0 {
                prime = false;
            }
            d += 1;
        }
        if prime {
            out[count] = candidate;
            count += 1;
        }
        candidate += 1;
    }
    assert!(count == 54);
    out
};

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = SMALL_PRIME_LIMIT as usize;
        let mut composite = vec![false; limit];
        let mut primes = Vec::new();
        for i in 2..limit {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j < limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// Miller-Rabin witness test; `true` means `base` proves `n` composite.
/// Requires odd `n > 3` and `n - 1 = odd * 2^twos`.
fn is_witness(base: &BigUint, n: &BigUint, n_minus_one: &BigUint, odd: &BigUint, twos: u64) -> bool {
    let mut x = base.modpow(odd, n);
    if x.is_one() || &x == n_minus_one {
        return false;
    }
    for _ in 1..twos {
        x = &x * &x % n;
        if &x == n_minus_one {
            return false;
        }
        if x.is_one() {
            return true;
        }
    }
    true
}

/// Probabilistic primality test: trial division by small primes, then
/// Miller-Rabin. Composites are reported prime with probability at most
/// `4^-rounds`; primes are never rejected.
///
/// Below roughly 3.3·10²⁴ the verdict is exact (a fixed deterministic base
/// set is used regardless of `rounds`). Above it, `rounds` bases are drawn
/// from a generator seeded by `n` itself, so the verdict is a pure function of
/// the input.
pub fn is_probable_prime(n: &Nat, rounds: u32) -> bool {
    let n = n.as_big();
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &p in &TRIAL_PRIMES {
        if n == &BigUint::from(p) {
            return true;
        }
        if (n % p).is_zero() {
            return false;
        }
    }
    if n < &BigUint::from(TRIAL_DIVISION_LIMIT * TRIAL_DIVISION_LIMIT) {
        return true;
    }

    let n_minus_one = n - 1u32;
    let twos = n_minus_one.trailing_zeros().unwrap_or(0);
    let odd = &n_minus_one >> twos;

    if n.to_u128().is_some_and(|v| v < DETERMINISTIC_BOUND) {
        return !DETERMINISTIC_BASES
            .iter()
            .any(|&b| is_witness(&BigUint::from(b), n, &n_minus_one, &odd, twos));
    }

    let low_word = n.iter_u64_digits().next().unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(low_word ^ n.bits());
    let span = n - 3u32;
    (0..rounds.max(1)).all(|_| {
        let base = random_below(&span, &mut rng) + 2u32;
        !is_witness(&base, n, &n_minus_one, &odd, twos)
    })
}

/// Uniform value in `[0, bound)`; `bound` must be positive.
pub(crate) fn random_below<R: RngCore + ?Sized>(bound: &BigUint, rng: &mut R) -> BigUint {
    debug_assert!(!bound.is_zero());
    let bits = (bound - 1u32).bits();
    if bits == 0 {
        return BigUint::zero();
    }
    let len = bits.div_ceil(8) as usize;
    let excess = (len as u64 * 8 - bits) as u32;
    let mut buf = vec![0u8; len];
    loop {
        rng.fill_bytes(&mut buf);
        buf[0] &= 0xff >> excess;
        let candidate = BigUint::from_bytes_be(&buf);
        if &candidate < bound {
            return candidate;
        }
    }
}

/// Uniform value strictly between `low` and `high`.
pub fn random_between<R: RngCore + ?Sized>(low: &Nat, high: &Nat, rng: &mut R) -> Result<Nat> {
    let (low, high) = (low.as_big(), high.as_big());
    if high <= low || high - low < BigUint::from(2u32) {
        return Err(Error::Domain("open interval contains no integer".into()));
    }
    let span = high - low - 1u32;
    Ok((low + 1u32 + random_below(&span, rng)).into())
}

/// Random integer with exactly `bits` significant bits, the top `top_ones`
/// bits and the low bit set.
fn random_odd_with_top_bits<R: RngCore + ?Sized>(bits: u64, top_ones: u64, rng: &mut R) -> BigUint {
    let mut candidate = random_below(&(BigUint::one() << bits), rng);
    for i in 0..top_ones {
        candidate.set_bit(bits - 1 - i, true);
    }
    candidate.set_bit(0, true);
    candidate
}

pub(crate) fn gen_prime_with_top_bits<R: RngCore + ?Sized>(bits: u64, top_ones: u64, rng: &mut R) -> Nat {
    loop {
        let candidate = Nat::from(random_odd_with_top_bits(bits, top_ones, rng));
        if is_probable_prime(&candidate, MILLER_RABIN_ROUNDS) {
            return candidate;
        }
    }
}

/// Odd probable prime with exactly `bits` significant bits.
pub fn gen_prime<R: RngCore + ?Sized>(bits: u64, rng: &mut R) -> Result<Nat> {
    if bits < 8 {
        return Err(Error::Domain(format!("prime size {bits} below the 8-bit minimum")));
    }
    Ok(gen_prime_with_top_bits(bits, 1, rng))
}

const SIEVE_WINDOW: usize = 1 << 14;

/// Safe prime `p = 2q + 1` with exactly `bits` significant bits; returns
/// `(p, q)`.
///
/// Candidates for `q` are scanned in windows starting at a random odd point;
/// each window is sieved so that neither `q` nor `2q + 1` has a small factor
/// before any exponentiation is spent on it.
pub fn gen_safe_prime<R: RngCore + ?Sized>(bits: u64, rng: &mut R) -> Result<(Nat, Nat)> {
    if bits < 8 {
        return Err(Error::Domain(format!("prime size {bits} below the 8-bit minimum")));
    }
    let q_bits = bits - 1;
    let q_limit = BigUint::one() << q_bits;
    let two = BigUint::from(2u32);
    loop {
        let start = random_odd_with_top_bits(q_bits, 1, rng);
        // Window slot i stands for q = start + 2i.
        let room = ((&q_limit - &start - 1u32) >> 1u32).to_usize().unwrap_or(usize::MAX);
        let width = room.saturating_add(1).min(SIEVE_WINDOW);
        let mut rejected = vec![false; width];
        for &s in small_primes().iter().skip(1) {
            // Sieve primes at or above `start` could equal q or p itself.
            if BigUint::from(s) >= start {
                break;
            }
            let s64 = u64::from(s);
            let r = (&start % s).to_u64().unwrap_or(0);
            let inv2 = (s64 + 1) / 2;
            // q ≡ 0 (mod s): start + 2i ≡ 0  →  i ≡ -r / 2.
            let first_q = (s64 - r) % s64 * inv2 % s64;
            // 2q + 1 ≡ 0 (mod s): q ≡ -1/2 ≡ s - inv2.
            let first_p = ((s64 - inv2) + s64 - r) % s64 * inv2 % s64;
            for first in [first_q, first_p] {
                let mut i = first as usize;
                while i < width {
                    rejected[i] = true;
                    i += s as usize;
                }
            }
        }
        for (i, _) in rejected.iter().enumerate().filter(|(_, &r)| !r) {
            let q = &start + BigUint::from(2 * i as u64);
            let p = &q * 2u32 + 1u32;
            // Fermat base 2 on p weeds out nearly every composite for the price
            // of one exponentiation.
            if !two.modpow(&(&p - 1u32), &p).is_one() {
                continue;
            }
            let (p, q) = (Nat::from(p), Nat::from(q));
            if is_probable_prime(&q, MILLER_RABIN_ROUNDS) && is_probable_prime(&p, MILLER_RABIN_ROUNDS) {
                return Ok((p, q));
            }
        }
    }
}

/// Smallest `g ≥ 2` generating the multiplicative group modulo the safe
/// prime `p = 2q + 1`.
///
/// The group order is `2q`, so `g` is a generator exactly when neither `g²`
/// nor `g^q` is 1.
pub fn find_primitive_root(p: &Nat, q: &Nat) -> Result<Nat> {
    let expected = q.as_big() * 2u32 + 1u32;
    if p.as_big() != &expected {
        return Err(Error::Domain(format!("{p} is not 2·{q} + 1")));
    }
    if !is_probable_prime(q, MILLER_RABIN_ROUNDS) || !is_probable_prime(p, MILLER_RABIN_ROUNDS) {
        return Err(Error::Domain(format!("{p} = 2·{q} + 1 is not a safe prime")));
    }
    let two = Nat::from(2u32);
    let mut g = BigUint::from(2u32);
    while &g < p.as_big() {
        let candidate = Nat::from(g.clone());
        if !mod_pow(&candidate, &two, p)?.as_big().is_one() && !mod_pow(&candidate, q, p)?.as_big().is_one() {
            return Ok(candidate);
        }
        g += 1u32;
    }
    Err(Error::Domain(format!("no primitive root modulo {p}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand_chacha::ChaCha20Rng;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    // Oracle: repeated multiplication, no squaring.
    fn naive_pow(base: u64, exp: u64, m: u64) -> u64 {
        let mut acc = 1 % m;
        for _ in 0..exp {
            acc = acc * (base % m) % m;
        }
        acc
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(naive_pow(65, 11, 247), 221);
        assert_eq!(mod_pow(&n(65), &n(11), &n(247)).unwrap(), n(221));
        assert_eq!(naive_pow(5, 6, 23), 8);
        assert_eq!(mod_pow(&n(5), &n(6), &n(23)).unwrap(), n(8));
        assert_eq!(mod_pow(&n(12345), &n(0), &n(97)).unwrap(), n(1));
        assert!(matches!(mod_pow(&n(2), &n(3), &n(0)), Err(Error::Domain(_))));
    }

    #[test]
    fn mod_pow_matches_naive_loop() {
        for m in [2u64, 3, 7, 23, 247, 65537] {
            for base in 0..64 {
                for exp in 0..64 {
                    assert_eq!(
                        mod_pow(&n(base), &n(exp), &n(m)).unwrap(),
                        n(naive_pow(base, exp, m)),
                        "{base}^{exp} mod {m}"
                    );
                }
            }
        }
    }

    #[test]
    fn word_and_bignum_paths_agree() {
        let mut rng = ChaCha20Rng::seed_from_u64(17);
        for _ in 0..2000 {
            let (b, e, m): (u64, u64, u64) = (rng.gen(), rng.gen(), rng.gen::<u64>().max(1));
            let big = BigUint::from(b).modpow(&BigUint::from(e), &BigUint::from(m));
            assert_eq!(mod_pow(&n(b), &n(e), &n(m)).unwrap(), Nat::from(big));
            if let Ok(inv) = mod_inverse(&n(b), &n(m.max(2))) {
                let check = u128::from(b) * u128::from(inv.to_u64().unwrap()) % u128::from(m.max(2));
                assert_eq!(check, 1);
            }
        }
        let prime: Nat = ((BigUint::one() << 127u32) - 1u32).into();
        let exp: Nat = (prime.as_big() - 1u32).into();
        for _ in 0..50 {
            let a: Nat = (random_below(prime.as_big(), &mut rng) + 1u32).into();
            assert_eq!(mod_pow(&a, &exp, &prime).unwrap(), n(1));
            let inv = mod_inverse(&a, &prime).unwrap();
            assert!((a.as_big() * inv.as_big() % prime.as_big()).is_one());
        }
    }

    // Oracle: textbook extended Euclid, one full division per step.
    fn plain_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
        let modulus = BigInt::from(m.clone());
        let (mut old_r, mut r) = (BigInt::from(a % m), modulus.clone());
        let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
        while !r.is_zero() {
            let q = &old_r / &r;
            let next_r = &old_r - &q * &r;
            old_r = std::mem::replace(&mut r, next_r);
            let next_s = &old_s - &q * &s;
            old_s = std::mem::replace(&mut s, next_s);
        }
        old_r.is_one().then(|| old_s.mod_floor(&modulus).to_biguint().unwrap())
    }

    #[test]
    fn lehmer_inverse_matches_plain_euclid() {
        let mut rng = ChaCha20Rng::seed_from_u64(23);
        for bits in [65u64, 100, 127, 256, 521, 1024, 2048] {
            for _ in 0..40 {
                let m = random_below(&(BigUint::one() << bits), &mut rng) | (BigUint::one() << (bits - 1));
                let a = random_below(&m, &mut rng);
                let got = mod_inverse(&a.clone().into(), &m.clone().into()).ok().map(Nat::into_big);
                assert_eq!(got, plain_inverse(&a, &m), "a={a} m={m}");
            }
        }
        // Consecutive Fibonacci numbers maximise the number of steps.
        let (mut f0, mut f1) = (BigUint::one(), BigUint::one());
        for _ in 0..400 {
            (f0, f1) = (f1.clone(), f0 + f1);
        }
        let got = mod_inverse(&f0.clone().into(), &f1.clone().into()).unwrap().into_big();
        assert_eq!(Some(got), plain_inverse(&f0, &f1));
    }

    #[test]
    fn mod_pow_is_counted() {
        let (_, calls) = count_modexps(|| {
            mod_pow(&n(3), &n(5), &n(7)).unwrap();
            mod_pow(&n(3), &n(5), &n(7)).unwrap();
        });
        assert_eq!(calls, 2);
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(&n(11), &n(216)).unwrap(), n(59));
        assert_eq!(mod_inverse(&n(1), &n(2)).unwrap(), n(1));
        assert_eq!(mod_inverse(&n(1), &n(1000)).unwrap(), n(1));
        let scan = (1..23u64).find(|x| 6 * x % 23 == 1).unwrap();
        assert_eq!(scan, 4);
        assert_eq!(mod_inverse(&n(6), &n(23)).unwrap(), n(4));
        assert!(matches!(mod_inverse(&n(9), &n(216)), Err(Error::NotInvertible { .. })));
        assert!(matches!(mod_inverse(&n(0), &n(7)), Err(Error::NotInvertible { .. })));
        assert!(matches!(mod_inverse(&n(1), &n(1)), Err(Error::Domain(_))));
        assert!(matches!(mod_inverse(&n(1), &n(0)), Err(Error::Domain(_))));
    }

    #[test]
    fn mod_inverse_holds_for_all_units_below_500() {
        for m in 2..500u64 {
            for a in 1..m {
                let expect_unit = gcd(&n(a), &n(m)) == n(1);
                match mod_inverse(&n(a), &n(m)) {
                    Ok(x) => {
                        assert!(expect_unit);
                        let x = x.to_u64().unwrap();
                        assert!(0 < x && x < m);
                        assert_eq!(a * x % m, 1 % m);
                    }
                    Err(_) => assert!(!expect_unit),
                }
            }
        }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&n(11), &n(216)), n(1));
        assert_eq!(gcd(&n(0), &n(7)), n(7));
        assert_eq!(gcd(&n(0), &n(0)), n(0));
        assert_eq!(gcd(&n(247), &n(216)), n(1));
        assert_eq!(gcd(&n(9), &n(216)), n(9));
    }

    #[test]
    fn primality_examples() {
        assert!(!is_probable_prime(&n(247), 40));
        assert!(is_probable_prime(&n(13), 40));
        assert!(is_probable_prime(&n(19), 40));
        assert!(!is_probable_prime(&n(0), 40));
        assert!(!is_probable_prime(&n(1), 40));
        assert!(is_probable_prime(&n(2), 40));
        // Carmichael numbers and a strong pseudoprime to bases 2..=37.
        for c in [561u64, 41041, 825265, 3215031751] {
            assert!(!is_probable_prime(&n(c), 1), "{c}");
        }
        let spsp: BigUint = "318665857834031151167461".parse().unwrap();
        assert!(!is_probable_prime(&spsp.into(), 1));
        // 2^127 - 1 is prime; 2^128 + 1 is not.
        let m127 = (BigUint::one() << 127u32) - 1u32;
        assert!(is_probable_prime(&m127.into(), 40));
        let f7 = (BigUint::one() << 128u32) + 1u32;
        assert!(!is_probable_prime(&f7.into(), 40));
    }

    #[test]
    fn gen_prime_postconditions() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        for _ in 0..20 {
            let p = gen_prime(8, &mut rng).unwrap().to_u64().unwrap();
            assert!((128..=255).contains(&p));
            assert!((2..p).take_while(|d| d * d <= p).all(|d| p % d != 0));
        }
        let big = gen_prime(512, &mut rng).unwrap();
        assert_eq!(big.bits(), 512);
        assert!(is_probable_prime(&big, 5));
        assert!(gen_prime(7, &mut rng).is_err());
    }

    #[test]
    fn gen_prime_is_seed_deterministic() {
        let a = gen_prime(256, &mut ChaCha20Rng::seed_from_u64(99)).unwrap();
        let b = gen_prime(256, &mut ChaCha20Rng::seed_from_u64(99)).unwrap();
        assert_eq!(a, b);
    }

    fn trial_prime(v: u64) -> bool {
        v >= 2 && (2..v).take_while(|d| d * d <= v).all(|d| v % d != 0)
    }

    #[test]
    fn safe_prime_postconditions() {
        assert!(trial_prime(23) && trial_prime(11));
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for _ in 0..20 {
            let (p, q) = gen_safe_prime(8, &mut rng).unwrap();
            let (p, q) = (p.to_u64().unwrap(), q.to_u64().unwrap());
            assert!((128..=255).contains(&p));
            assert_eq!(p, 2 * q + 1);
            assert!(trial_prime(p) && trial_prime(q), "{p} {q}");
        }
        for bits in [9u64, 12, 16, 24, 64] {
            let (p, q) = gen_safe_prime(bits, &mut rng).unwrap();
            assert_eq!(p.bits(), bits);
            assert_eq!(p.as_big(), &(q.as_big() * 2u32 + 1u32));
            if bits <= 32 {
                assert!(trial_prime(p.to_u64().unwrap()) && trial_prime(q.to_u64().unwrap()));
            } else {
                assert!(is_probable_prime(&p, 40) && is_probable_prime(&q, 40));
            }
        }
        let a = gen_safe_prime(64, &mut ChaCha20Rng::seed_from_u64(5)).unwrap();
        let b = gen_safe_prime(64, &mut ChaCha20Rng::seed_from_u64(5)).unwrap();
        assert_eq!(a, b);
    }

    // Oracle: multiplicative order by brute force.
    fn order(g: u64, p: u64) -> u64 {
        let mut x = g % p;
        let mut k = 1;
        while x != 1 {
            x = x * g % p;
            k += 1;
        }
        k
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!([2, 3, 4, 5].map(|g| order(g, 23)), [11, 11, 11, 22]);
        assert_eq!(find_primitive_root(&n(23), &n(11)).unwrap(), n(5));
        assert_eq!(find_primitive_root(&n(5), &n(2)).unwrap(), n(2));
        assert!(find_primitive_root(&n(23), &n(10)).is_err());
        assert!(find_primitive_root(&n(15), &n(7)).is_err());
    }

    #[test]
    fn primitive_roots_generate_full_group_below_1000() {
        for q in 2..500u64 {
            let p = 2 * q + 1;
            if !(trial_prime(q) && trial_prime(p)) {
                continue;
            }
            let g = find_primitive_root(&n(p), &n(q)).unwrap().to_u64().unwrap();
            let mut seen = std::collections::HashSet::new();
            let mut x = 1u64;
            for _ in 0..p - 1 {
                seen.insert(x);
                x = x * g % p;
            }
            assert_eq!(seen.len() as u64, p - 1, "g={g} p={p}");
            let smallest = (2..p).find(|&c| order(c, p) == p - 1).unwrap();
            assert_eq!(g, smallest);
        }
    }

    #[test]
    fn random_between_stays_inside() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..400 {
            let v = random_between(&n(1), &n(6), &mut rng).unwrap().to_u64().unwrap();
            assert!((2..=5).contains(&v));
            seen.insert(v);
        }
        assert_eq!(seen.len(), 4);
        assert!(random_between(&n(1), &n(2), &mut rng).is_err());
    }
}
