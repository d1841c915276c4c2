//! Hidden projectors `F Y*` and `X H*` built from rank-preserving sketches.
//!
//! Given factors `F` (m×r) and `H*` (q×n) and sketches `B` (m×r), `D` (n×q),
//!
//! ```text
//! Y* = (BᵀF)⁺ Bᵀ        X = D (H*D)⁺
//! ```
//!
//! are generalized inverses (`F Y* F = F`, `H* X H* = H*`) whenever
//! `rank(BᵀF) = rank(F)` and `rank(H*D) = rank(H)`. The products `F Y*` and
//! `X H*` are then oblique projectors onto the column space of `F` and the
//! row space of `H*`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{pinv, rank_of, Matrix, Tolerance};
use crate::rng::GaussianStream;

pub const DEFAULT_SKETCH_ATTEMPTS: usize = 64;

/// Largest tolerated growth of `σ₁/σ_k` from `F` to `BᵀF` before a sketch
/// is redrawn.
pub const SKETCH_CONDITION_SLACK: f64 = 100.0;

/// `(Y*, X)` together with the sketches that produced them.
#[derive(Clone, Debug)]
pub struct GeneralizedInversePair {
    pub y_star: Matrix,
    pub x: Matrix,
    pub k: usize,
    pub b: Matrix,
    pub d: Matrix,
}

impl GeneralizedInversePair {
    /// Builds both inverses, failing fast if either sketch loses rank.
    pub fn build(b: &Matrix, f: &Matrix, h_star: &Matrix, d: &Matrix, tol: &Tolerance) -> Result<Self> {
        let y_star = make_y_star(b, f, tol)?;
        let x = make_x(d, h_star, tol)?;
        Ok(Self {
            k: rank_of(f, tol).rank,
            y_star,
            x,
            b: b.clone(),
            d: d.clone(),
        })
    }

    /// `F Y*`, the column-space projector.
    pub fn column_projector(&self, f: &Matrix) -> Result<Matrix> {
        f.matmul(&self.y_star)
    }

    /// `X H*`, the row-space projector.
    pub fn row_projector(&self, h_star: &Matrix) -> Result<Matrix> {
        self.x.matmul(h_star)
    }
}

/// `Y* = (BᵀF)⁺ Bᵀ`.
pub fn make_y_star(b: &Matrix, f: &Matrix, tol: &Tolerance) -> Result<Matrix> {
    if b.shape() != f.shape() {
        return Err(Error::dim(
            "make_y_star",
            format!("B is {}x{}, F is {}x{}", b.rows(), b.cols(), f.rows(), f.cols()),
        ));
    }
    let bt = b.transpose();
    let btf = bt.matmul(f)?;
    let expected = rank_of(f, tol).rank;
    let found = rank_of(&btf, tol).rank;
    if found < expected {
        return Err(Error::RankPreservation {
            which: "B*F",
            expected,
            found,
        });
    }
    pinv(&btf, tol).matmul(&bt)
}

/// `X = D (H*D)⁺`.
pub fn make_x(d: &Matrix, h_star: &Matrix, tol: &Tolerance) -> Result<Matrix> {
    if d.shape() != (h_star.cols(), h_star.rows()) {
        return Err(Error::dim(
            "make_x",
            format!(
                "D is {}x{}, H* is {}x{}",
                d.rows(),
                d.cols(),
                h_star.rows(),
                h_star.cols()
            ),
        ));
    }
    let hd = h_star.matmul(d)?;
    let expected = rank_of(h_star, tol).rank;
    let found = rank_of(&hd, tol).rank;
    if found < expected {
        return Err(Error::RankPreservation {
            which: "H*D",
            expected,
            found,
        });
    }
    d.matmul(&pinv(&hd, tol))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankPreservingCheck {
    pub rank_bf: usize,
    pub rank_hd: usize,
    pub rank_f: usize,
    pub rank_h: usize,
    pub target_k: usize,
    /// `rank(BᵀF) = rank(H*D) = target_k`
    pub holds: bool,
}

impl RankPreservingCheck {
    /// The stronger hypothesis that also pins `rank(F) = rank(H) = k`.
    pub fn full_condition_holds(&self) -> bool {
        self.holds && self.rank_f == self.target_k && self.rank_h == self.target_k
    }
}

pub fn check_rank_preserving(
    b: &Matrix,
    f: &Matrix,
    h_star: &Matrix,
    d: &Matrix,
    k: usize,
    tol: &Tolerance,
) -> Result<RankPreservingCheck> {
    let btf = b.transpose().matmul(f)?;
    let hd = h_star.matmul(d)?;
    let rank_bf = rank_of(&btf, tol).rank;
    let rank_hd = rank_of(&hd, tol).rank;
    Ok(RankPreservingCheck {
        rank_bf,
        rank_hd,
        rank_f: rank_of(f, tol).rank,
        rank_h: rank_of(h_star, tol).rank,
        target_k: k,
        holds: rank_bf == k && rank_hd == k,
    })
}

/// `‖P² − P‖_F` within the tolerance bound scaled by `‖P‖_F`.
pub fn is_idempotent(p: &Matrix, tol: &Tolerance) -> Result<bool> {
    if !p.is_square() {
        return Err(Error::dim(
            "is_idempotent",
            format!("{}x{} is not square", p.rows(), p.cols()),
        ));
    }
    tol.approx_eq(&p.matmul(p)?, p)
}

/// `Y* F = I = H* X`, which only holds in the full-rank regime.
pub fn check_projector_equation(
    y_star: &Matrix,
    f: &Matrix,
    h_star: &Matrix,
    x: &Matrix,
    tol: &Tolerance,
) -> Result<bool> {
    let yf = y_star.matmul(f)?;
    let hx = h_star.matmul(x)?;
    if yf.rows() != yf.cols() || hx.rows() != hx.cols() || yf.rows() != hx.rows() {
        return Ok(false);
    }
    let eye = Matrix::identity(yf.rows());
    Ok(tol.approx_eq(&yf, &eye)? && tol.approx_eq(&hx, &eye)?)
}

/// `(F Y*) A (X H*) = A`.
pub fn check_key_equation(
    a: &Matrix,
    f: &Matrix,
    y_star: &Matrix,
    x: &Matrix,
    h_star: &Matrix,
    tol: &Tolerance,
) -> Result<bool> {
    let rebuilt = Matrix::chain(&[f, y_star, a, x, h_star])?;
    tol.approx_eq(&rebuilt, a)
}

/// Draws a sketch `B` (same shape as `f`) of rank `k` with `rank(BᵀF) = k`.
///
/// The first `k` columns are i.i.d. standard normal; each remaining column is
/// a random combination of those. Draws repeat until rank preservation
/// holds and `BᵀF` is conditioned within [`SKETCH_CONDITION_SLACK`] of `F`,
/// or the attempt budget runs out; then the best rank-preserving draw wins.
pub fn random_rank_preserving_sketch(f: &Matrix, k: usize, seed: u64) -> Result<Matrix> {
    random_rank_preserving_sketch_with(f, k, seed, DEFAULT_SKETCH_ATTEMPTS, &Tolerance::default())
}

pub fn random_rank_preserving_sketch_with(
    f: &Matrix,
    k: usize,
    seed: u64,
    max_attempts: usize,
    tol: &Tolerance,
) -> Result<Matrix> {
    let (m, r) = f.shape();
    if k == 0 || k > r || k > m {
        return Err(Error::InvalidParameter(format!(
            "sketch rank {k} must lie in 1..={} for a {m}x{r} factor",
            m.min(r)
        )));
    }
    let f_sv = rank_of(f, tol).singular_values;
    let f_cond = condition(&f_sv, k);
    let mut stream = GaussianStream::new(seed);
    let mut best: Option<(f64, Matrix)> = None;
    for _ in 0..max_attempts {
        let basis = stream.matrix(m, k);
        let mixing = stream.matrix(k, r - k);
        let extra = basis.matmul(&mixing)?;
        let b = Matrix::from_fn(m, r, |i, j| {
            if j < k {
                basis[(i, j)]
            } else {
                extra[(i, j - k)]
            }
        });
        let report = rank_of(&b.transpose().matmul(f)?, tol);
        if report.rank != k {
            continue;
        }
        let cond = condition(&report.singular_values, k);
        if cond <= SKETCH_CONDITION_SLACK * f_cond {
            return Ok(b);
        }
        if best.as_ref().is_none_or(|(c, _)| cond < *c) {
            best = Some((cond, b));
        }
    }
    best.map(|(_, b)| b).ok_or(Error::RankPreservationUnachievable {
        target: k,
        attempts: max_attempts,
    })
}

/// `σ₁/σ_k`, infinite when fewer than `k` values are nonzero.
fn condition(sv: &[f64], k: usize) -> f64 {
    match sv.get(k - 1) {
        Some(&s) if s > 0.0 => sv[0] / s,
        _ => f64::INFINITY,
    }
}
