//! Dense real matrices, SVD-backed pseudoinverse and numerical rank.

mod csv;
mod matrix;

pub use self::csv::{parse_csv, read_csv, to_csv, write_csv};
pub use self::matrix::Matrix;

use serde::Serialize;

use crate::error::{Error, Result};

/// Thresholds for numerical rank and for approximate matrix identities.
///
/// A singular value counts toward the rank when it exceeds
/// `max(absolute, relative * sigma_max * max(rows, cols))`. An identity
/// `X ≈ Y` holds when `‖X − Y‖_F <= max(absolute, residual * scale)`, where
/// `scale` is the Frobenius norm of the operand being reproduced.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub absolute: f64,
    pub relative: f64,
    pub residual: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            absolute: 1e-12,
            relative: f64::EPSILON,
            residual: 1e-10,
        }
    }
}

impl Tolerance {
    pub fn new(absolute: f64, relative: f64, residual: f64) -> Result<Self> {
        for (name, v) in [("absolute", absolute), ("relative", relative), ("residual", residual)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "tolerance {name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Self {
            absolute,
            relative,
            residual,
        })
    }

    /// Same rank cutoff, different identity threshold.
    pub fn with_residual(self, residual: f64) -> Result<Self> {
        Self::new(self.absolute, self.relative, residual)
    }

    pub fn rank_cutoff(&self, sigma_max: f64, rows: usize, cols: usize) -> f64 {
        self.absolute
            .max(self.relative * sigma_max * rows.max(cols) as f64)
    }

    pub fn bound(&self, scale: f64) -> f64 {
        self.absolute.max(self.residual * scale)
    }

    /// `‖lhs − rhs‖_F` within the bound scaled by `‖rhs‖_F`.
    pub fn approx_eq(&self, lhs: &Matrix, rhs: &Matrix) -> Result<bool> {
        Ok(lhs.distance(rhs)? <= self.bound(rhs.frobenius_norm()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankReport {
    pub rank: usize,
    /// Nonincreasing.
    pub singular_values: Vec<f64>,
    /// Cutoff actually applied.
    pub tolerance: f64,
}

/// Thin SVD `A = U diag(s) Vᵀ` with `s` nonincreasing.
///
/// Sign convention: the first entry of each column of `U` whose magnitude
/// exceeds `1e-14` is positive; the sign flip is absorbed into `Vᵀ`.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: Matrix,
    pub singular_values: Vec<f64>,
    pub vt: Matrix,
}

pub fn svd(a: &Matrix) -> Svd {
    let (m, n) = a.shape();
    let p = m.min(n);
    if p == 0 {
        return Svd {
            u: Matrix::zeros(m, 0),
            singular_values: Vec::new(),
            vt: Matrix::zeros(0, n),
        };
    }
    // Entries are finite by construction, for which the iteration converges.
    let dec = a.to_faer().thin_svd().expect("SVD of a finite matrix");
    let (fu, fs, fv) = (dec.U(), dec.S(), dec.V());
    let s: Vec<f64> = (0..p).map(|i| fs[i]).collect();
    let u = Matrix::from_fn(m, p, |i, j| fu[(i, j)]);
    let vt = Matrix::from_fn(p, n, |i, j| fv[(j, i)]);

    let flips: Vec<bool> = (0..p)
        .map(|j| {
            (0..m)
                .map(|i| u[(i, j)])
                .find(|v| v.abs() > 1e-14)
                .is_some_and(|v| v < 0.0)
        })
        .collect();
    let u = Matrix::from_fn(m, p, |i, j| if flips[j] { -u[(i, j)] } else { u[(i, j)] });
    let vt = Matrix::from_fn(p, n, |i, j| if flips[i] { -vt[(i, j)] } else { vt[(i, j)] });
    Svd {
        u,
        singular_values: s,
        vt,
    }
}

fn report_from(a: &Matrix, singular_values: Vec<f64>, tol: &Tolerance) -> RankReport {
    let sigma_max = singular_values.first().copied().unwrap_or(0.0);
    let cutoff = tol.rank_cutoff(sigma_max, a.rows(), a.cols());
    let rank = singular_values.iter().filter(|&&s| s > cutoff).count();
    RankReport {
        rank,
        singular_values,
        tolerance: cutoff,
    }
}

pub fn rank_of(a: &Matrix, tol: &Tolerance) -> RankReport {
    if a.is_empty() {
        return report_from(a, Vec::new(), tol);
    }
    let s = a.to_faer().singular_values().expect("SVD of a finite matrix");
    report_from(a, s, tol)
}

/// Moore–Penrose pseudoinverse; singular values at or below the rank cutoff
/// are treated as zero.
pub fn pinv(a: &Matrix, tol: &Tolerance) -> Matrix {
    let (m, n) = a.shape();
    if a.is_empty() {
        return Matrix::zeros(n, m);
    }
    let dec = svd(a);
    let report = report_from(a, dec.singular_values.clone(), tol);
    let k = report.rank;
    // A⁺ = V_k S_k⁻¹ U_kᵀ
    Matrix::from_fn(n, m, |i, j| {
        (0..k)
            .map(|l| dec.vt[(l, i)] * dec.u[(j, l)] / dec.singular_values[l])
            .sum()
    })
}

/// Outcome of the four Penrose equations, in their usual order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PenroseReport {
    /// `A A⁺ A = A`
    pub generalized_inverse: bool,
    /// `A⁺ A A⁺ = A⁺`
    pub reflexive: bool,
    /// `(A A⁺)ᵀ = A A⁺`
    pub column_symmetric: bool,
    /// `(A⁺ A)ᵀ = A⁺ A`
    pub row_symmetric: bool,
    pub residuals: [f64; 4],
}

impl PenroseReport {
    pub fn as_array(&self) -> [bool; 4] {
        [
            self.generalized_inverse,
            self.reflexive,
            self.column_symmetric,
            self.row_symmetric,
        ]
    }

    pub fn all(&self) -> bool {
        self.as_array().iter().all(|&b| b)
    }
}

pub fn check_penrose(a: &Matrix, aplus: &Matrix, tol: &Tolerance) -> Result<PenroseReport> {
    if aplus.shape() != (a.cols(), a.rows()) {
        return Err(Error::dim(
            "check_penrose",
            format!(
                "candidate is {}x{}, expected {}x{}",
                aplus.rows(),
                aplus.cols(),
                a.cols(),
                a.rows()
            ),
        ));
    }
    let a_ap = a.matmul(aplus)?;
    let ap_a = aplus.matmul(a)?;
    let checks = [
        (a_ap.matmul(a)?, a.clone()),
        (ap_a.matmul(aplus)?, aplus.clone()),
        (a_ap.transpose(), a_ap.clone()),
        (ap_a.transpose(), ap_a.clone()),
    ];
    let mut residuals = [0.0; 4];
    let mut ok = [false; 4];
    for (idx, (lhs, rhs)) in checks.iter().enumerate() {
        residuals[idx] = lhs.distance(rhs)?;
        ok[idx] = residuals[idx] <= tol.bound(rhs.frobenius_norm());
    }
    Ok(PenroseReport {
        generalized_inverse: ok[0],
        reflexive: ok[1],
        column_symmetric: ok[2],
        row_symmetric: ok[3],
        residuals,
    })
}
