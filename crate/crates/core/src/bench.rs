//! Timing harness comparing RSA and ElGamal byte-mode encryption, plus the
//! CSV reports built on it and on the LSB quality metrics.

use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::blocks;
use crate::elgamal;
use crate::error::{Error, Result};
use crate::lsb;
use crate::metrics::{self, QualityReport};
use crate::nat::Nat;
use crate::numtheory::count_modexps;
use crate::pipeline::CipherId;
use crate::raster::Raster;
use crate::rsa;

pub const SUPPORTED_KEY_BITS: [u64; 3] = [512, 1024, 2048];
pub const MIN_REPETITIONS: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub cipher: CipherId,
    pub key_bits: u64,
    pub message_bytes: usize,
    pub repetitions: usize,
    pub mean_encrypt_s: f64,
    pub mean_decrypt_s: f64,
    /// Modular exponentiations per encrypted block.
    pub modexp_count_encrypt: u64,
    /// Modular exponentiations per decrypted block.
    pub modexp_count_decrypt: u64,
}

pub const BENCH_CSV_HEADER: [&str; 8] = [
    "cipher",
    "key_bits",
    "message_bytes",
    "repetitions",
    "mean_encrypt_s",
    "mean_decrypt_s",
    "modexp_count_encrypt",
    "modexp_count_decrypt",
];

impl BenchReport {
    pub fn csv_fields(&self) -> [String; 8] {
        [
            self.cipher.name().to_owned(),
            self.key_bits.to_string(),
            self.message_bytes.to_string(),
            self.repetitions.to_string(),
            format!("{:.9}", self.mean_encrypt_s),
            format!("{:.9}", self.mean_decrypt_s),
            self.modexp_count_encrypt.to_string(),
            self.modexp_count_decrypt.to_string(),
        ]
    }
}

/// Encrypt and decrypt closures over one generated key.
trait Subject {
    fn encrypt(&mut self, message: &[u8]) -> Result<usize>;
    fn decrypt(&mut self) -> Result<Vec<u8>>;
}

struct RsaSubject {
    key: rsa::RsaKeyPair,
    last: Vec<Nat>,
}

impl Subject for RsaSubject {
    fn encrypt(&mut self, message: &[u8]) -> Result<usize> {
        self.last = rsa::encrypt_bytes(message, &self.key.public)?;
        Ok(self.last.len())
    }

    fn decrypt(&mut self) -> Result<Vec<u8>> {
        rsa::decrypt_bytes(&self.last, &self.key.private)
    }
}

struct ElGamalSubject {
    public: elgamal::ElGamalPublicKey,
    private: elgamal::ElGamalPrivateKey,
    rng: ChaCha20Rng,
    last: Vec<elgamal::ElGamalCiphertext>,
}

impl Subject for ElGamalSubject {
    fn encrypt(&mut self, message: &[u8]) -> Result<usize> {
        self.last = elgamal::encrypt_bytes(message, &self.public, &mut self.rng)?;
        Ok(self.last.len())
    }

    fn decrypt(&mut self) -> Result<Vec<u8>> {
        elgamal::decrypt_bytes(&self.last, &self.private)
    }
}

/// Generates a seeded key for `cipher`, then times byte-mode encryption and
/// decryption of a fixed random message: one warm-up run followed by
/// `repetitions` timed runs. Exponentiations are counted on the warm-up run.
pub fn bench(cipher: CipherId, key_bits: u64, message_bytes: usize, repetitions: usize, seed: u64) -> Result<BenchReport> {
    if !SUPPORTED_KEY_BITS.contains(&key_bits) {
        return Err(Error::Domain(format!("key size {key_bits} not in {SUPPORTED_KEY_BITS:?}")));
    }
    if repetitions < MIN_REPETITIONS {
        return Err(Error::Domain(format!("at least {MIN_REPETITIONS} repetitions required")));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut subject: Box<dyn Subject> = match cipher {
        CipherId::Rsa => Box::new(RsaSubject {
            key: rsa::keygen(key_bits, &Nat::from(rsa::DEFAULT_PUBLIC_EXPONENT), &mut rng)?,
            last: Vec::new(),
        }),
        CipherId::ElGamal => {
            let (public, private) = elgamal::keygen(key_bits, &mut rng)?;
            let session_rng = ChaCha20Rng::seed_from_u64(rng.gen());
            Box::new(ElGamalSubject { public, private, rng: session_rng, last: Vec::new() })
        }
    };
    let message: Vec<u8> = (0..message_bytes).map(|_| rng.gen()).collect();

    let (blocks, encrypt_calls) = count_modexps(|| subject.encrypt(&message));
    let blocks = blocks? as u64;
    let (plain, decrypt_calls) = count_modexps(|| subject.decrypt());
    if plain? != message {
        return Err(Error::CorruptCiphertext("benchmark round trip failed"));
    }
    debug_assert_eq!(blocks, blocks::block_count(message_bytes, (key_bits as usize - 1) / 8) as u64);

    let (mut encrypt_total, mut decrypt_total) = (0.0, 0.0);
    for _ in 0..repetitions {
        let start = Instant::now();
        subject.encrypt(&message)?;
        let mid = Instant::now();
        subject.decrypt()?;
        encrypt_total += (mid - start).as_secs_f64();
        decrypt_total += mid.elapsed().as_secs_f64();
    }
    Ok(BenchReport {
        cipher,
        key_bits,
        message_bytes,
        repetitions,
        mean_encrypt_s: encrypt_total / repetitions as f64,
        mean_decrypt_s: decrypt_total / repetitions as f64,
        modexp_count_encrypt: encrypt_calls / blocks,
        modexp_count_decrypt: decrypt_calls / blocks,
    })
}

/// One [`bench`] row per `(cipher, key_bits)` pair, ciphers outermost.
pub fn bench_table(
    ciphers: &[CipherId],
    key_bits: &[u64],
    message_bytes: usize,
    repetitions: usize,
    seed: u64,
) -> Result<Vec<BenchReport>> {
    let mut rows = Vec::with_capacity(ciphers.len() * key_bits.len());
    for &cipher in ciphers {
        for &bits in key_bits {
            rows.push(bench(cipher, bits, message_bytes, repetitions, seed)?);
        }
    }
    Ok(rows)
}

pub fn write_bench_csv<W: Write>(out: W, rows: &[BenchReport]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    let to_io = |e: csv::Error| Error::Io(e.into());
    writer.write_record(BENCH_CSV_HEADER).map_err(to_io)?;
    for row in rows {
        writer.write_record(row.csv_fields()).map_err(to_io)?;
    }
    writer.flush()?;
    Ok(())
}

/// Embeds `message` with the delimited LSB encoder into every named cover
/// and measures the damage.
pub fn lsb_table(covers: &[(String, Raster)], message: &[u8]) -> Result<Vec<(String, QualityReport)>> {
    covers
        .iter()
        .map(|(name, cover)| {
            let stego = lsb::embed_delimited(cover, message)?;
            Ok((name.clone(), metrics::quality_report(cover, &stego)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unsupported_settings() {
        assert!(bench(CipherId::Rsa, 256, 10, 5, 0).is_err());
        assert!(bench(CipherId::Rsa, 512, 10, 4, 0).is_err());
    }

    #[test]
    fn counts_exponentiations_per_block() {
        let rsa = bench(CipherId::Rsa, 512, 300, 5, 1).unwrap();
        assert_eq!((rsa.modexp_count_encrypt, rsa.modexp_count_decrypt), (1, 1));
        let elgamal = bench(CipherId::ElGamal, 512, 300, 5, 1).unwrap();
        assert_eq!((elgamal.modexp_count_encrypt, elgamal.modexp_count_decrypt), (2, 1));
        assert!(rsa.mean_encrypt_s > 0.0 && elgamal.mean_decrypt_s > 0.0);
    }

    #[test]
    fn csv_layout() {
        let row = BenchReport {
            cipher: CipherId::ElGamal,
            key_bits: 1024,
            message_bytes: 64,
            repetitions: 10,
            mean_encrypt_s: 0.5,
            mean_decrypt_s: 0.25,
            modexp_count_encrypt: 2,
            modexp_count_decrypt: 1,
        };
        let mut out = Vec::new();
        write_bench_csv(&mut out, &[row]).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "cipher,key_bits,message_bytes,repetitions,mean_encrypt_s,mean_decrypt_s,modexp_count_encrypt,modexp_count_decrypt\n\
             elgamal,1024,64,10,0.500000000,0.250000000,2,1\n"
        );
    }

    #[test]
    fn lsb_table_has_one_row_per_cover() {
        let covers: Vec<(String, Raster)> = (0..3)
            .map(|i| (format!("c{i}.png"), Raster::filled(40, 40, [i * 50, 10, 200, 255])))
            .collect();
        let rows = lsb_table(&covers, b"hello").unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|(_, r)| r.psnr_db > 50.0));
    }
}
