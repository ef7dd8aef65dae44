//! `stegocrypt` command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 when the inputs are
//! well-formed but the operation fails (bad key, missing message, I/O).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use stegocrypt::bench::{self, MIN_REPETITIONS};
use stegocrypt::dh;
use stegocrypt::elgamal::{self, ElGamalPrivateKey, ElGamalPublicKey};
use stegocrypt::keyfile::KeyFile;
use stegocrypt::lsb;
use stegocrypt::metrics;
use stegocrypt::pipeline::{self, CipherId, PrivateKey, PublicKey};
use stegocrypt::raster::{load_image, save_image};
use stegocrypt::rsa::{self, RsaPrivateKey, RsaPublicKey};
use stegocrypt::Nat;

#[derive(Debug, Parser)]
#[command(name = "stegocrypt", version, about = "Textbook public-key ciphers and LSB image steganography")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a key pair, writing <out>.pub and <out>.priv.
    Keygen(KeygenArgs),
    /// Run a Diffie-Hellman exchange between two parties and print it.
    DhDemo(DhDemoArgs),
    /// Encrypt a file into a cipher envelope.
    Encrypt(EncryptArgs),
    /// Decrypt a cipher envelope.
    Decrypt(DecryptArgs),
    /// Hide plain bytes in an image (delimited text mode by default).
    Embed(EmbedArgs),
    /// Recover bytes hidden by `embed`.
    Extract(ExtractArgs),
    /// Encrypt a file and hide the ciphertext in an image.
    Hide(HideArgs),
    /// Extract and decrypt a message hidden by `hide`.
    Reveal(RevealArgs),
    /// MSE and PSNR between two images, or an LSB table over several covers.
    Metrics(MetricsArgs),
    /// Time RSA against ElGamal and print a CSV report.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Cipher {
    Rsa,
    Elgamal,
}

impl From<Cipher> for CipherId {
    fn from(c: Cipher) -> Self {
        match c {
            Cipher::Rsa => CipherId::Rsa,
            Cipher::Elgamal => CipherId::ElGamal,
        }
    }
}

#[derive(Debug, Args)]
struct KeygenArgs {
    #[arg(long, value_enum)]
    cipher: Cipher,
    #[arg(long, default_value_t = 1024)]
    bits: u64,
    /// Output prefix.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    /// RSA public exponent (decimal).
    #[arg(long, default_value_t = rsa::DEFAULT_PUBLIC_EXPONENT as u64)]
    e: u64,
}

#[derive(Debug, Args)]
struct DhDemoArgs {
    #[arg(long, default_value_t = 64)]
    bits: u64,
    #[arg(long)]
    seed: Option<u64>,
    /// Also write <out>.params, <out>.adam and <out>.bob key files.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EncryptArgs {
    #[arg(long)]
    key: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct DecryptArgs {
    #[arg(long)]
    key: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
    /// Defaults to standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EmbedArgs {
    #[arg(long)]
    cover: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Length-prefixed binary-safe framing instead of the "#####" delimiter.
    #[arg(long)]
    framed: bool,
}

#[derive(Debug, Args)]
struct ExtractArgs {
    #[arg(long)]
    image: PathBuf,
    #[arg(long)]
    framed: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct HideArgs {
    #[arg(long)]
    cover: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    key: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct RevealArgs {
    #[arg(long)]
    image: PathBuf,
    #[arg(long)]
    key: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MetricsArgs {
    #[arg(long, required_unless_present = "lsb_table", conflicts_with = "lsb_table")]
    original: Option<PathBuf>,
    #[arg(long, required_unless_present = "lsb_table", conflicts_with = "lsb_table")]
    candidate: Option<PathBuf>,
    /// Embed --message into every cover and report one row per image.
    #[arg(long, requires = "message")]
    lsb_table: bool,
    #[arg(long)]
    message: Option<String>,
    /// Cover images for --lsb-table.
    #[arg(requires = "lsb_table")]
    images: Vec<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Cipher::Rsa, Cipher::Elgamal])]
    cipher: Vec<Cipher>,
    #[arg(long, value_delimiter = ',', default_values_t = [512u64, 1024])]
    bits: Vec<u64>,
    #[arg(long, default_value_t = 256)]
    message_bytes: usize,
    #[arg(long, default_value_t = 10)]
    repetitions: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(stegocrypt::Error),
}

impl From<stegocrypt::Error> for Failure {
    fn from(e: stegocrypt::Error) -> Self {
        Failure::Data(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Data(e.into())
    }
}

type Outcome = Result<(), Failure>;

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                1
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
        Err(Failure::Data(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> Outcome {
    match command {
        Command::Keygen(a) => keygen(a),
        Command::DhDemo(a) => dh_demo(a, stdout),
        Command::Encrypt(a) => encrypt(a),
        Command::Decrypt(a) => decrypt(a, stdout),
        Command::Embed(a) => embed(a),
        Command::Extract(a) => extract(a, stdout),
        Command::Hide(a) => hide(a),
        Command::Reveal(a) => reveal(a, stdout),
        Command::Metrics(a) => metrics_cmd(a, stdout),
        Command::Bench(a) => bench_cmd(a, stdout),
    }
}

fn rng_for(seed: Option<u64>) -> ChaCha20Rng {
    match seed {
        Some(seed) => ChaCha20Rng::seed_from_u64(seed),
        None => ChaCha20Rng::from_entropy(),
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

fn read_key_file(path: &Path) -> Result<KeyFile, Failure> {
    Ok(KeyFile::parse(&fs::read_to_string(path)?)?)
}

fn load_public_key(path: &Path) -> Result<PublicKey, Failure> {
    let file = read_key_file(path)?;
    match file.kind() {
        Some("rsa-public") => Ok(PublicKey::Rsa(RsaPublicKey::from_key_file(&file)?)),
        Some("elgamal-public") => Ok(PublicKey::ElGamal(ElGamalPublicKey::from_key_file(&file)?)),
        other => Err(stegocrypt::Error::KeyFile(format!("{}: not a public key (kind={other:?})", path.display())).into()),
    }
}

fn load_private_key(path: &Path) -> Result<PrivateKey, Failure> {
    let file = read_key_file(path)?;
    match file.kind() {
        Some("rsa-private") => Ok(PrivateKey::Rsa(RsaPrivateKey::from_key_file(&file)?)),
        Some("elgamal-private") => Ok(PrivateKey::ElGamal(ElGamalPrivateKey::from_key_file(&file)?)),
        other => Err(stegocrypt::Error::KeyFile(format!("{}: not a private key (kind={other:?})", path.display())).into()),
    }
}

fn write_output(path: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> Outcome {
    match path {
        Some(path) => fs::write(path, bytes)?,
        None => stdout.write_all(bytes)?,
    }
    Ok(())
}

fn keygen(a: KeygenArgs) -> Outcome {
    let mut rng = rng_for(a.seed);
    let (public, private) = match a.cipher {
        Cipher::Rsa => {
            let pair = rsa::keygen(a.bits, &Nat::from(a.e), &mut rng)?;
            (pair.public.to_key_file(), pair.private.to_key_file())
        }
        Cipher::Elgamal => {
            let (public, private) = elgamal::keygen(a.bits, &mut rng)?;
            (public.to_key_file(), private.to_key_file())
        }
    };
    fs::write(with_suffix(&a.out, ".pub"), public.to_string())?;
    fs::write(with_suffix(&a.out, ".priv"), private.to_string())?;
    Ok(())
}

fn dh_demo(a: DhDemoArgs, stdout: &mut dyn Write) -> Outcome {
    let mut rng = rng_for(a.seed);
    let params = dh::gen_params(a.bits, &mut rng)?;
    let adam = dh::gen_keypair(&params, &mut rng)?;
    let bob = dh::gen_keypair(&params, &mut rng)?;
    let adam_secret = dh::shared_secret(&params, adam.private_key(), bob.public_key())?;
    let bob_secret = dh::shared_secret(&params, bob.private_key(), adam.public_key())?;
    write!(
        stdout,
        "{}adam_pub={}\nbob_pub={}\nadam_secret={}\nbob_secret={}\nagree={}\n",
        params.to_key_file(),
        adam.public_key().to_hex(),
        bob.public_key().to_hex(),
        adam_secret.to_hex(),
        bob_secret.to_hex(),
        adam_secret == bob_secret
    )?;
    if let Some(prefix) = a.out {
        fs::write(with_suffix(&prefix, ".params"), params.to_key_file().to_string())?;
        fs::write(with_suffix(&prefix, ".adam"), adam.to_key_file(&params).to_string())?;
        fs::write(with_suffix(&prefix, ".bob"), bob.to_key_file(&params).to_string())?;
    }
    Ok(())
}

fn encrypt(a: EncryptArgs) -> Outcome {
    let key = load_public_key(&a.key)?;
    let message = fs::read(&a.input)?;
    let envelope = pipeline::seal(&message, &key, &mut rng_for(a.seed))?;
    fs::write(&a.out, pipeline::serialize_envelope(&envelope)?)?;
    Ok(())
}

fn decrypt(a: DecryptArgs, stdout: &mut dyn Write) -> Outcome {
    let key = load_private_key(&a.key)?;
    let envelope = pipeline::parse_envelope(&fs::read(&a.input)?)?;
    let message = pipeline::open(&envelope, &key)?;
    write_output(a.out.as_deref(), &message, stdout)
}

fn embed(a: EmbedArgs) -> Outcome {
    let cover = load_image(&a.cover)?;
    let payload = fs::read(&a.input)?;
    let stego = if a.framed {
        lsb::embed_framed(&cover, &payload)?
    } else {
        lsb::embed_delimited(&cover, &payload)?
    };
    save_image(&stego, &a.out)?;
    Ok(())
}

fn extract(a: ExtractArgs, stdout: &mut dyn Write) -> Outcome {
    let stego = load_image(&a.image)?;
    let payload = if a.framed {
        lsb::extract_framed(&stego)?
    } else {
        lsb::extract_delimited(&stego)?
    };
    write_output(a.out.as_deref(), &payload, stdout)
}

fn hide(a: HideArgs) -> Outcome {
    let cover = load_image(&a.cover)?;
    let key = load_public_key(&a.key)?;
    let message = fs::read(&a.input)?;
    let stego = pipeline::hide(&cover, &message, &key, &mut rng_for(a.seed))?;
    save_image(&stego, &a.out)?;
    Ok(())
}

fn reveal(a: RevealArgs, stdout: &mut dyn Write) -> Outcome {
    let stego = load_image(&a.image)?;
    let key = load_private_key(&a.key)?;
    let message = pipeline::reveal(&stego, &key)?;
    write_output(a.out.as_deref(), &message, stdout)
}

fn display_name(path: &Path) -> String {
    path.file_name().unwrap_or(path.as_os_str()).to_string_lossy().into_owned()
}

fn metrics_cmd(a: MetricsArgs, stdout: &mut dyn Write) -> Outcome {
    let rows = if a.lsb_table {
        if a.images.is_empty() {
            return Err(Failure::Usage("--lsb-table needs at least one cover image".into()));
        }
        let message = a.message.unwrap_or_default();
        let covers = a
            .images
            .iter()
            .map(|p| Ok((display_name(p), load_image(p)?)))
            .collect::<Result<Vec<_>, Failure>>()?;
        bench::lsb_table(&covers, message.as_bytes())?
    } else {
        let (Some(original), Some(candidate)) = (a.original, a.candidate) else {
            return Err(Failure::Usage("--original and --candidate are required".into()));
        };
        let report = metrics::quality_report(&load_image(&original)?, &load_image(&candidate)?)?;
        vec![(display_name(&candidate), report)]
    };
    metrics::write_csv(stdout, &rows)?;
    Ok(())
}

fn bench_cmd(a: BenchArgs, stdout: &mut dyn Write) -> Outcome {
    if let Some(bits) = a.bits.iter().find(|b| !bench::SUPPORTED_KEY_BITS.contains(b)) {
        return Err(Failure::Usage(format!("--bits {bits}: choose from {:?}", bench::SUPPORTED_KEY_BITS)));
    }
    if a.repetitions < MIN_REPETITIONS {
        return Err(Failure::Usage(format!("--repetitions must be at least {MIN_REPETITIONS}")));
    }
    let ciphers: Vec<CipherId> = a.cipher.iter().map(|&c| c.into()).collect();
    let rows = bench::bench_table(&ciphers, &a.bits, a.message_bytes, a.repetitions, a.seed)?;
    bench::write_bench_csv(stdout, &rows)?;
    Ok(())
}
