//! Textbook public-key cryptography composed with least-significant-bit image
//! steganography.
//!
//! * [`numtheory`]: modular exponentiation and inverses, Miller-Rabin, prime and
//!   safe-prime generation, primitive roots.
//! * [`dh`], [`rsa`], [`elgamal`]: the three public-key schemes.
//! * [`raster`], [`lsb`], [`metrics`]: images, LSB embedding, MSE/PSNR.
//! * [`pipeline`]: encrypt a message, then hide the ciphertext in an image.
//! * [`bench`]: timing comparison of RSA and ElGamal and CSV reports.
//!
//! The cryptography is deliberately unpadded and variable-time. It exists to
//! study the schemes, not to protect data.
//!
//! ```
//! use stegocrypt::{Nat, rsa};
//!
//! let key = rsa::keygen_from_primes(&Nat::from(13u32), &Nat::from(19u32), &Nat::from(11u32))?;
//! assert_eq!(key.private.d, Nat::from(59u32));
//! let c = rsa::encrypt_block(&Nat::from(65u32), &key.public)?;
//! assert_eq!(rsa::decrypt_block(&c, &key.private)?, Nat::from(65u32));
//! # Ok::<(), stegocrypt::Error>(())
//! ```

pub mod bench;
pub mod blocks;
pub mod dh;
pub mod elgamal;
mod error;
pub mod keyfile;
pub mod lsb;
pub mod metrics;
mod nat;
pub mod numtheory;
pub mod pipeline;
pub mod raster;
pub mod rsa;

pub use error::{Error, Result};
pub use nat::Nat;
pub use raster::Raster;

// The guide's code listings are compiled and run as doc-tests, one module per
// chapter.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/number-theory.md")]
    mod number_theory {}
    #[doc = include_str!("../../../book/src/diffie-hellman.md")]
    mod diffie_hellman {}
    #[doc = include_str!("../../../book/src/rsa.md")]
    mod rsa {}
    #[doc = include_str!("../../../book/src/elgamal.md")]
    mod elgamal {}
    #[doc = include_str!("../../../book/src/lsb.md")]
    mod lsb {}
    #[doc = include_str!("../../../book/src/metrics.md")]
    mod metrics {}
    #[doc = include_str!("../../../book/src/pipeline.md")]
    mod pipeline {}
    #[doc = include_str!("../../../book/src/benchmarks.md")]
    mod benchmarks {}
}
