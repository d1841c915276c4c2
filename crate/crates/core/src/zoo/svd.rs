use super::{FactorSource, ReducedForm};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Tolerance};

/// `F = U_k`, `G = S_k`, `H* = V_kᵀ`; exact when `k = rank(A)`.
pub fn reduced_svd(a: &Matrix, k: usize, tol: &Tolerance) -> Result<ReducedForm> {
    let rank = linalg::rank_of(a, tol).rank;
    if k == 0 || k > rank {
        return Err(Error::InvalidParameter(format!(
            "reduced SVD rank {k} must lie in 1..={rank}"
        )));
    }
    let dec = linalg::svd(a);
    let (m, n) = a.shape();
    Ok(ReducedForm {
        f: Matrix::from_fn(m, k, |i, j| dec.u[(i, j)]),
        g: Matrix::diagonal(&dec.singular_values[..k]),
        h_star: Matrix::from_fn(k, n, |i, j| dec.vt[(i, j)]),
        source: FactorSource::ReducedSvd,
    })
}
