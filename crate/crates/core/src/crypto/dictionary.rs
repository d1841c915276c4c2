use crate::error::{Error, Result};
use crate::linalg::{rank_of, Matrix, Tolerance};
use crate::rng::GaussianStream;

pub const DEFAULT_DECODE_MARGIN: f64 = 1e-3;
const DICTIONARY_ATTEMPTS: usize = 64;

/// Rank-deficient code book. Column `j` encodes symbol `j`; in text mode
/// symbol `j` is the byte with value `j`.
#[derive(Clone, Debug)]
pub struct Dictionary {
    a: Matrix,
    k: usize,
    decode_margin: f64,
}

impl Dictionary {
    /// Validates rank deficiency (`k < m`, `k < n`) and column separation.
    pub fn from_matrix(a: Matrix, decode_margin: f64, tol: &Tolerance) -> Result<Self> {
        if !(decode_margin > 0.0 && decode_margin.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "decode margin must be positive, got {decode_margin}"
            )));
        }
        let (m, n) = a.shape();
        let k = rank_of(&a, tol).rank;
        if k == 0 || k >= m || k >= n {
            return Err(Error::InvalidParameter(format!(
                "dictionary must be rank-deficient with 0 < k < min(m, n); got rank {k} for {m}x{n}"
            )));
        }
        let separation = min_separation(&a);
        if separation <= decode_margin {
            return Err(Error::InvalidParameter(format!(
                "columns separated by {separation:e}, not more than margin {decode_margin:e}"
            )));
        }
        Ok(Self { a, k, decode_margin })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn decode_margin(&self) -> f64 {
        self.decode_margin
    }

    pub fn symbols(&self) -> usize {
        self.a.cols()
    }

    pub fn column(&self, j: usize) -> Result<Vec<f64>> {
        if j >= self.a.cols() {
            return Err(Error::IndexOutOfRange {
                axis: "column",
                index: j,
                len: self.a.cols(),
            });
        }
        Ok(self.a.column(j))
    }

    /// One dictionary column per byte, as an m×len matrix.
    pub fn encode_bytes(&self, bytes: &[u8]) -> Result<Matrix> {
        let cols = bytes
            .iter()
            .map(|&b| {
                if (b as usize) < self.a.cols() {
                    Ok(self.a.column(b as usize))
                } else {
                    Err(Error::UnmappedSymbol(b))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(&cols, self.a.rows())
    }

    /// Nearest column to `v`.
    ///
    /// Equidistant best candidates are ambiguous; otherwise the nearest
    /// distance must not exceed half the decode margin.
    pub fn decode_column(&self, v: &[f64]) -> Result<usize> {
        if v.len() != self.a.rows() {
            return Err(Error::dim(
                "decode",
                format!("vector of length {}, dictionary has {} rows", v.len(), self.a.rows()),
            ));
        }
        let mut best = (usize::MAX, f64::INFINITY);
        let mut second = (usize::MAX, f64::INFINITY);
        for j in 0..self.a.cols() {
            let d = (0..self.a.rows())
                .map(|i| (self.a[(i, j)] - v[i]).powi(2))
                .sum::<f64>()
                .sqrt();
            if d < best.1 {
                second = best;
                best = (j, d);
            } else if d < second.1 {
                second = (j, d);
            }
        }
        if second.0 != usize::MAX && (second.1 - best.1) <= 1e-9 * best.1.max(1e-300) {
            return Err(Error::AmbiguousDecode {
                first: best.0,
                second: second.0,
                distance: best.1,
            });
        }
        let limit = self.decode_margin / 2.0;
        if best.1 > limit {
            return Err(Error::DecodeMargin {
                column: best.0,
                distance: best.1,
                limit,
            });
        }
        Ok(best.0)
    }

    pub fn decode_symbol(&self, v: &[f64]) -> Result<u8> {
        let j = self.decode_column(v)?;
        u8::try_from(j).map_err(|_| Error::InvalidParameter(format!("column {j} is not a byte symbol")))
    }

    /// Decodes every column of an m×len matrix.
    pub fn decode_bytes(&self, plain: &Matrix) -> Result<Vec<u8>> {
        (0..plain.cols())
            .map(|j| {
                self.decode_symbol(&plain.column(j)).map_err(|e| match e {
                    Error::DecodeMargin { distance, limit, .. } => Error::DecodeMargin {
                        column: j,
                        distance,
                        limit,
                    },
                    other => other,
                })
            })
            .collect()
    }
}

/// `min_{i≠j} ‖aᵢ − aⱼ‖₂`; infinite for a single column.
pub fn min_separation(a: &Matrix) -> f64 {
    let cols: Vec<Vec<f64>> = (0..a.cols()).map(|j| a.column(j)).collect();
    let mut best = f64::INFINITY;
    for i in 0..cols.len() {
        for j in i + 1..cols.len() {
            let d2: f64 = cols[i].iter().zip(&cols[j]).map(|(x, y)| (x - y).powi(2)).sum();
            best = best.min(d2);
        }
    }
    best.sqrt()
}

/// `A = V C` with Gaussian `V` (m×k) and `C` (k×n), redrawn until the
/// rank and separation invariants hold.
pub fn build_dictionary(m: usize, k: usize, n: usize, seed: u64, decode_margin: f64) -> Result<Dictionary> {
    if k == 0 || k >= m || k >= n {
        return Err(Error::InvalidParameter(format!(
            "need 0 < k < m and k < n, got m={m}, k={k}, n={n}"
        )));
    }
    let tol = Tolerance::default();
    let mut stream = GaussianStream::new(seed);
    for _ in 0..DICTIONARY_ATTEMPTS {
        let v = stream.matrix(m, k);
        let c = stream.matrix(k, n);
        let a = v.matmul(&c)?;
        match Dictionary::from_matrix(a, decode_margin, &tol) {
            Ok(d) if d.k == k => return Ok(d),
            Ok(_) | Err(Error::InvalidParameter(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::DictionaryExhausted {
        attempts: DICTIONARY_ATTEMPTS,
    })
}
