//! JSON key, ciphertext and dictionary sidecar files.
//!
//! Floats are written with the shortest representation that round-trips
//! the `f64` bit pattern, so keys reload bit-for-bit.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{Ciphertext, Dictionary, Mode, PublicKey, SecretKey, DEFAULT_DECODE_MARGIN};
use crate::error::{Error, Result};
use crate::linalg::{read_csv, write_csv, Matrix, Tolerance};

pub const FILE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SecretKeyFile {
    pub version: u32,
    pub mode: Mode,
    pub f: Matrix,
    pub h_star: Option<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PublicKeyFile {
    pub version: u32,
    pub mode: Mode,
    pub y1: Matrix,
    pub y2f: Matrix,
    pub x1: Option<Matrix>,
    pub hx2: Option<Matrix>,
    pub r: usize,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CiphertextFile {
    pub version: u32,
    pub payload: Matrix,
    /// Encrypted symbols, one payload column each in text mode.
    pub length: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct DictionarySidecar {
    symbol_map: String,
    decode_margin: f64,
}

fn check_version(v: u32) -> Result<()> {
    if v != FILE_VERSION {
        return Err(Error::Format(format!("unsupported file version {v}")));
    }
    Ok(())
}

impl From<&SecretKey> for SecretKeyFile {
    fn from(sk: &SecretKey) -> Self {
        Self {
            version: FILE_VERSION,
            mode: sk.mode(),
            f: sk.f.clone(),
            h_star: sk.h_star.clone(),
        }
    }
}

impl TryFrom<SecretKeyFile> for SecretKey {
    type Error = Error;

    fn try_from(file: SecretKeyFile) -> Result<Self> {
        check_version(file.version)?;
        if (file.mode == Mode::TwoSided) != file.h_star.is_some() {
            return Err(Error::Format("secret key mode does not match h_star".into()));
        }
        Ok(Self {
            f: file.f,
            h_star: file.h_star,
        })
    }
}

impl From<&PublicKey> for PublicKeyFile {
    fn from(pk: &PublicKey) -> Self {
        Self {
            version: FILE_VERSION,
            mode: pk.mode(),
            y1: pk.y1.clone(),
            y2f: pk.y2f.clone(),
            x1: pk.x1.clone(),
            hx2: pk.hx2.clone(),
            r: pk.r,
            k: pk.k,
        }
    }
}

impl TryFrom<PublicKeyFile> for PublicKey {
    type Error = Error;

    fn try_from(file: PublicKeyFile) -> Result<Self> {
        check_version(file.version)?;
        let two = file.mode == Mode::TwoSided;
        if two != file.x1.is_some() || two != file.hx2.is_some() {
            return Err(Error::Format("public key mode does not match x1/hx2".into()));
        }
        if file.y1.rows() != file.r || file.y2f.shape() != (file.r, file.r) {
            return Err(Error::Format(format!("public key shapes disagree with r = {}", file.r)));
        }
        Ok(Self {
            y1: file.y1,
            y2f: file.y2f,
            x1: file.x1,
            hx2: file.hx2,
            r: file.r,
            k: file.k,
        })
    }
}

impl From<&Ciphertext> for CiphertextFile {
    fn from(c: &Ciphertext) -> Self {
        Self {
            version: FILE_VERSION,
            length: c.payload.cols(),
            payload: c.payload.clone(),
        }
    }
}

impl TryFrom<CiphertextFile> for Ciphertext {
    type Error = Error;

    fn try_from(file: CiphertextFile) -> Result<Self> {
        check_version(file.version)?;
        if file.length != file.payload.cols() {
            return Err(Error::Format(format!(
                "ciphertext length {} but payload has {} columns",
                file.length,
                file.payload.cols()
            )));
        }
        Ok(Self {
            payload: file.payload,
            nonce_seed: 0,
        })
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

pub fn write_secret_key(path: impl AsRef<Path>, sk: &SecretKey) -> Result<()> {
    write_json(path.as_ref(), &SecretKeyFile::from(sk))
}

pub fn read_secret_key(path: impl AsRef<Path>) -> Result<SecretKey> {
    read_json::<SecretKeyFile>(path.as_ref())?.try_into()
}

pub fn write_public_key(path: impl AsRef<Path>, pk: &PublicKey) -> Result<()> {
    write_json(path.as_ref(), &PublicKeyFile::from(pk))
}

pub fn read_public_key(path: impl AsRef<Path>) -> Result<PublicKey> {
    read_json::<PublicKeyFile>(path.as_ref())?.try_into()
}

pub fn write_ciphertext(path: impl AsRef<Path>, c: &Ciphertext) -> Result<()> {
    write_json(path.as_ref(), &CiphertextFile::from(c))
}

pub fn read_ciphertext(path: impl AsRef<Path>) -> Result<Ciphertext> {
    read_json::<CiphertextFile>(path.as_ref())?.try_into()
}

/// `A.csv` pairs with `A.json`.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

/// Writes the matrix CSV and its sidecar.
pub fn write_dictionary(csv: impl AsRef<Path>, dict: &Dictionary) -> Result<()> {
    let csv = csv.as_ref();
    write_csv(csv, dict.matrix())?;
    write_json(
        &sidecar_path(csv),
        &DictionarySidecar {
            symbol_map: "implicit".into(),
            decode_margin: dict.decode_margin(),
        },
    )
}

/// Reads a dictionary CSV; the sidecar is optional and supplies the decode
/// margin (default [`DEFAULT_DECODE_MARGIN`]).
pub fn read_dictionary(csv: impl AsRef<Path>) -> Result<Dictionary> {
    let csv = csv.as_ref();
    let a = read_csv(csv)?;
    let side = sidecar_path(csv);
    let margin = if side.exists() {
        let sidecar: DictionarySidecar = read_json(&side)?;
        if sidecar.symbol_map != "implicit" {
            return Err(Error::Format(format!("unknown symbol_map {:?}", sidecar.symbol_map)));
        }
        sidecar.decode_margin
    } else {
        DEFAULT_DECODE_MARGIN
    };
    Dictionary::from_matrix(a, margin, &Tolerance::default())
}
