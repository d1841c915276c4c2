use super::{FactorSource, ReducedForm};
use crate::error::{Error, Result};
use crate::linalg::{rank_of, Matrix, Tolerance};
use crate::rng::GaussianStream;
use crate::solver::{solve_mixing, SolverInputs};

/// Randomized range bases `F = AΩ` (m×r) and `H = AᵀΩ'` (n×q), with the
/// mixing matrix from [`solve_mixing`] on seeded rank-preserving sketches.
pub fn randomized_reduced(a: &Matrix, r: usize, q: usize, seed: u64, tol: &Tolerance) -> Result<ReducedForm> {
    let k = rank_of(a, tol).rank;
    if k == 0 {
        return Err(Error::RankPreservationUnachievable {
            target: 0,
            attempts: 0,
        });
    }
    if r < k || q < k {
        return Err(Error::InvalidParameter(format!(
            "sketch widths r={r}, q={q} must be at least rank(A)={k}"
        )));
    }
    let (m, n) = a.shape();
    let mut stream = GaussianStream::new(seed);
    let omega = stream.matrix(n, r);
    let omega_row = stream.matrix(m, q);
    let f = a.matmul(&omega)?;
    let h_star = a.transpose().matmul(&omega_row)?.transpose();
    let inputs = SolverInputs::new(a.clone(), f, h_star).with_seed(stream.fork());
    let triple = solve_mixing(&inputs, tol)?;
    Ok(ReducedForm {
        f: triple.f,
        g: triple.g,
        h_star: triple.h_star,
        source: FactorSource::Randomized,
    })
}
