//! Public-key style encryption with randomized generalized inverses.
//!
//! The secret is a rank-deficient basis `F` (m×r, rank k < r) of the
//! dictionary's column space. The public key holds two generalized inverses
//! of `F` built from independent sketches, `Y₁ = Y*_{B1}` and the idempotent
//! `Y₂F = Y*_{B2} F`. A message `m` in the column space encrypts to
//!
//! ```text
//! c = Y₁ m + (I − Y₂F) w        (w fresh Gaussian noise)
//! ```
//!
//! and decrypts as `F c`: the noise term is annihilated because
//! `F Y₂ F = F`. The two-sided variant adds row-space factors `H*` and
//! works on whole matrices.
//!
//! This is a mathematical demonstrator; none of it is a security claim.

mod dictionary;
mod files;
mod probe;

pub use dictionary::{build_dictionary, min_separation, Dictionary, DEFAULT_DECODE_MARGIN};
pub use files::{
    read_ciphertext, read_dictionary, read_public_key, read_secret_key, sidecar_path, write_ciphertext, write_dictionary,
    write_public_key, write_secret_key, CiphertextFile, PublicKeyFile, SecretKeyFile, FILE_VERSION,
};
pub use probe::{attack_probe, ProbeReport};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Tolerance};
use crate::projector::{make_x, make_y_star, random_rank_preserving_sketch};
use crate::rng::GaussianStream;

/// Default required gap `r − k` between the key width and the dictionary rank.
pub const DEFAULT_RANK_GAP: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "one-sided")]
    OneSided,
    #[serde(rename = "two-sided")]
    TwoSided,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SecretKey {
    pub f: Matrix,
    /// Present only in two-sided mode.
    pub h_star: Option<Matrix>,
}

impl SecretKey {
    pub fn mode(&self) -> Mode {
        if self.h_star.is_some() {
            Mode::TwoSided
        } else {
            Mode::OneSided
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PublicKey {
    /// `Y*_{B1}`, r×m.
    pub y1: Matrix,
    /// `Y*_{B2} F`, r×r and idempotent.
    pub y2f: Matrix,
    /// `X_{D1}`, n×q.
    pub x1: Option<Matrix>,
    /// `H* X_{D2}`, q×q.
    pub hx2: Option<Matrix>,
    pub r: usize,
    pub k: usize,
}

impl PublicKey {
    pub fn mode(&self) -> Mode {
        if self.x1.is_some() {
            Mode::TwoSided
        } else {
            Mode::OneSided
        }
    }

    fn two_sided(&self) -> Result<(&Matrix, &Matrix)> {
        match (&self.x1, &self.hx2) {
            (Some(x1), Some(hx2)) => Ok((x1, hx2)),
            _ => Err(Error::InvalidParameter("public key is one-sided".into())),
        }
    }
}

/// Encrypted payload. The noise seed is kept for diagnostics only and is
/// ignored by equality.
#[derive(Clone, Debug)]
pub struct Ciphertext {
    pub payload: Matrix,
    pub nonce_seed: u64,
}

impl PartialEq for Ciphertext {
    fn eq(&self, other: &Self) -> bool {
        self.payload == other.payload
    }
}

#[derive(Clone, Copy, Debug)]
pub struct KeygenOptions {
    pub r: usize,
    pub two_sided: bool,
    /// Row-space key width; defaults to `r`.
    pub q: Option<usize>,
    /// Minimum `r − k` (and `q − k`); at least 1.
    pub min_gap: usize,
}

impl KeygenOptions {
    pub fn one_sided(r: usize) -> Self {
        Self {
            r,
            two_sided: false,
            q: None,
            min_gap: DEFAULT_RANK_GAP,
        }
    }

    pub fn two_sided(r: usize, q: usize) -> Self {
        Self {
            r,
            two_sided: true,
            q: Some(q),
            min_gap: DEFAULT_RANK_GAP,
        }
    }

    pub fn with_min_gap(mut self, gap: usize) -> Self {
        self.min_gap = gap;
        self
    }
}

pub fn keygen(dict: &Dictionary, r: usize, seed: u64, two_sided: bool, q: Option<usize>) -> Result<(SecretKey, PublicKey)> {
    let opts = KeygenOptions {
        r,
        two_sided,
        q,
        min_gap: DEFAULT_RANK_GAP,
    };
    keygen_with(dict, &opts, seed)
}

/// `F = AΩ`; `B₁, B₂` rank-k sketches with `rank(BᵢᵀF) = k`;
/// public key `(Y*_{B1}, Y*_{B2}F)`. Two-sided adds `H* = ΩᵀA` and
/// `(X_{D1}, H* X_{D2})`.
pub fn keygen_with(dict: &Dictionary, opts: &KeygenOptions, seed: u64) -> Result<(SecretKey, PublicKey)> {
    let tol = Tolerance::default();
    let k = dict.rank();
    let gap = opts.min_gap.max(1);
    if opts.r < k + gap {
        return Err(Error::InvalidParameter(format!(
            "key width r={} must be at least k+{gap}={} (k = dictionary rank)",
            opts.r,
            k + gap
        )));
    }
    let q = opts.q.unwrap_or(opts.r);
    if opts.two_sided && q < k + gap {
        return Err(Error::InvalidParameter(format!(
            "row key width q={q} must be at least k+{gap}={}",
            k + gap
        )));
    }

    let a = dict.matrix();
    let (m, n) = a.shape();
    let mut stream = GaussianStream::new(seed);
    let f = a.matmul(&stream.matrix(n, opts.r))?;
    let b1 = random_rank_preserving_sketch(&f, k, stream.fork())?;
    let b2 = random_rank_preserving_sketch(&f, k, stream.fork())?;
    let y1 = make_y_star(&b1, &f, &tol)?;
    let y2f = make_y_star(&b2, &f, &tol)?.matmul(&f)?;

    let (h_star, x1, hx2) = if opts.two_sided {
        let h = a.transpose().matmul(&stream.matrix(m, q))?;
        let h_star = h.transpose();
        let d1 = random_rank_preserving_sketch(&h, k, stream.fork())?;
        let d2 = random_rank_preserving_sketch(&h, k, stream.fork())?;
        let x1 = make_x(&d1, &h_star, &tol)?;
        let hx2 = h_star.matmul(&make_x(&d2, &h_star, &tol)?)?;
        (Some(h_star), Some(x1), Some(hx2))
    } else {
        (None, None, None)
    };

    Ok((
        SecretKey { f, h_star },
        PublicKey {
            y1,
            y2f,
            x1,
            hx2,
            r: opts.r,
            k,
        },
    ))
}

/// `c = Y₁ m + (I − Y₂F) w` with `w` drawn from `seed`.
pub fn encrypt(pk: &PublicKey, message: &[f64], seed: u64) -> Result<Ciphertext> {
    let w = GaussianStream::new(seed).vector(pk.r);
    let mut c = encrypt_with_noise(pk, message, &w)?;
    c.nonce_seed = seed;
    Ok(c)
}

/// Deterministic encryption with caller-supplied noise; `w = 0` yields the
/// particular solution `Y₁ m`.
pub fn encrypt_with_noise(pk: &PublicKey, message: &[f64], w: &[f64]) -> Result<Ciphertext> {
    if message.len() != pk.y1.cols() {
        return Err(Error::dim(
            "encrypt",
            format!("message length {}, key expects {}", message.len(), pk.y1.cols()),
        ));
    }
    if w.len() != pk.r {
        return Err(Error::dim("encrypt", format!("noise length {}, expected {}", w.len(), pk.r)));
    }
    let base = pk.y1.mul_vec(message)?;
    let leak = pk.y2f.mul_vec(w)?;
    let c: Vec<f64> = base
        .iter()
        .zip(w.iter().zip(&leak))
        .map(|(b, (wi, li))| b + wi - li)
        .collect();
    Ok(Ciphertext {
        payload: Matrix::column_vector(&c)?,
        nonce_seed: 0,
    })
}

/// Encrypts each column of an m×N message matrix with its own noise draw.
pub fn encrypt_columns(pk: &PublicKey, messages: &Matrix, seed: u64) -> Result<Ciphertext> {
    let mut stream = GaussianStream::new(seed);
    let cols = (0..messages.cols())
        .map(|j| {
            let w = stream.vector(pk.r);
            encrypt_with_noise(pk, &messages.column(j), &w).map(|c| c.payload.column(0))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Ciphertext {
        payload: Matrix::from_columns(&cols, pk.r)?,
        nonce_seed: seed,
    })
}

/// `F c`, column by column.
pub fn decrypt(sk: &SecretKey, c: &Ciphertext) -> Result<Matrix> {
    sk.f.matmul(&c.payload)
}

pub fn decrypt_vector(sk: &SecretKey, c: &Ciphertext) -> Result<Vec<f64>> {
    if c.payload.cols() != 1 {
        return Err(Error::dim(
            "decrypt_vector",
            format!("payload has {} columns", c.payload.cols()),
        ));
    }
    Ok(decrypt(sk, c)?.column(0))
}

/// `C = Y₁ M X₁ + W − Y₂F W H*X₂` with `W` (r×q) drawn from `seed`.
pub fn encrypt2(pk: &PublicKey, message: &Matrix, seed: u64) -> Result<Ciphertext> {
    let (_, hx2) = pk.two_sided()?;
    let w = GaussianStream::new(seed).matrix(pk.r, hx2.rows());
    let mut c = encrypt2_with_noise(pk, message, &w)?;
    c.nonce_seed = seed;
    Ok(c)
}

pub fn encrypt2_with_noise(pk: &PublicKey, message: &Matrix, w: &Matrix) -> Result<Ciphertext> {
    let (x1, hx2) = pk.two_sided()?;
    let base = Matrix::chain(&[&pk.y1, message, x1])?;
    let leak = Matrix::chain(&[&pk.y2f, w, hx2])?;
    Ok(Ciphertext {
        payload: base.add(w)?.sub(&leak)?,
        nonce_seed: 0,
    })
}

/// `F C H*`.
pub fn decrypt2(sk: &SecretKey, c: &Ciphertext) -> Result<Matrix> {
    let h_star = sk
        .h_star
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("secret key is one-sided".into()))?;
    Matrix::chain(&[&sk.f, &c.payload, h_star])
}

/// Bytes to ciphertext: one payload column per byte.
pub fn encrypt_bytes(pk: &PublicKey, dict: &Dictionary, bytes: &[u8], seed: u64) -> Result<Ciphertext> {
    if bytes.is_empty() {
        return Ok(Ciphertext {
            payload: Matrix::zeros(pk.r, 0),
            nonce_seed: seed,
        });
    }
    encrypt_columns(pk, &dict.encode_bytes(bytes)?, seed)
}

pub fn decrypt_bytes(sk: &SecretKey, dict: &Dictionary, c: &Ciphertext) -> Result<Vec<u8>> {
    if c.payload.cols() == 0 {
        return Ok(Vec::new());
    }
    dict.decode_bytes(&decrypt(sk, c)?)
}
