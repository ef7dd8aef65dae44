use std::io;

use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: String, modulus: String },

    #[error("block value is not smaller than the modulus")]
    BlockTooLarge,

    #[error("key too small: modulus of {bits} bits leaves no whole byte per block")]
    KeyTooSmall { bits: u64 },

    #[error("corrupt ciphertext: {0}")]
    CorruptCiphertext(&'static str),

    #[error("unsupported image format: {0}")]
    UnsupportedFormat(String),

    #[error("could not decode image: {0}")]
    Decode(String),

    #[error(
        "payload does not fit the cover: needs {required_bits} bits ({} bytes), \
         cover holds {available_bits} bits ({} bytes)",
        required_bits.div_ceil(8),
        available_bits / 8
    )]
    Capacity { required_bits: u64, available_bits: u64 },

    #[error("text collides with the end-of-message delimiter \"#####\"")]
    DelimiterCollision,

    #[error("no hidden message: delimiter not found")]
    NoMessage,

    #[error("corrupt frame: {0}")]
    CorruptFrame(&'static str),

    #[error("image does not carry a cipher envelope")]
    NotAStegoEnvelope,

    #[error("corrupt envelope: {0}")]
    CorruptEnvelope(&'static str),

    #[error("envelope was sealed with {found} but a {expected} key was supplied")]
    WrongKeyKind { expected: &'static str, found: &'static str },

    #[error("malformed key file: {0}")]
    KeyFile(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
