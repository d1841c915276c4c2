//! Solving `F G H* = A` for the mixing matrix `G`.
//!
//! With generalized inverses `Y*` and `X` of the factors, every solution is
//!
//! ```text
//! G = Y* A X + W − Y* F W H* X
//! ```
//!
//! for arbitrary `W` (r×q), and a solution exists exactly when
//! `F Y* A X H* = A`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{pinv, rank_of, Matrix, Tolerance};
use crate::projector::{random_rank_preserving_sketch, GeneralizedInversePair};
use crate::rng::GaussianStream;

/// Residual-correction passes applied when the first reconstruction misses
/// the tolerance.
pub const REFINEMENT_STEPS: usize = 3;

/// `A = F G H*` with `F` m×r, `G` r×q, `H*` q×n.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationTriple {
    pub f: Matrix,
    pub g: Matrix,
    pub h_star: Matrix,
}

impl FactorizationTriple {
    pub fn new(f: Matrix, g: Matrix, h_star: Matrix) -> Result<Self> {
        if f.cols() != g.rows() || g.cols() != h_star.rows() {
            return Err(Error::dim(
                "FactorizationTriple",
                format!(
                    "F {}x{}, G {}x{}, H* {}x{} do not chain",
                    f.rows(),
                    f.cols(),
                    g.rows(),
                    g.cols(),
                    h_star.rows(),
                    h_star.cols()
                ),
            ));
        }
        Ok(Self { f, g, h_star })
    }

    pub fn reconstruct(&self) -> Matrix {
        Matrix::chain(&[&self.f, &self.g, &self.h_star]).expect("shapes validated at construction")
    }
}

/// Inputs to [`solve_mixing`]. Omitted sketches are drawn from `seed`;
/// omitted `W` is zero, which yields the particular solution `Y* A X`.
#[derive(Clone, Debug)]
pub struct SolverInputs {
    pub a: Matrix,
    pub f: Matrix,
    pub h_star: Matrix,
    pub b: Option<Matrix>,
    pub d: Option<Matrix>,
    pub w: Option<Matrix>,
    pub seed: u64,
}

impl SolverInputs {
    pub fn new(a: Matrix, f: Matrix, h_star: Matrix) -> Self {
        Self {
            a,
            f,
            h_star,
            b: None,
            d: None,
            w: None,
            seed: 0,
        }
    }

    pub fn with_sketches(mut self, b: Matrix, d: Matrix) -> Self {
        self.b = Some(b);
        self.d = Some(d);
        self
    }

    pub fn with_w(mut self, w: Matrix) -> Self {
        self.w = Some(w);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// A solved triple together with the inverses used to build it.
#[derive(Clone, Debug)]
pub struct MixingSolution {
    pub triple: FactorizationTriple,
    pub inverses: GeneralizedInversePair,
    pub relative_residual: f64,
}

pub fn solve_mixing(inputs: &SolverInputs, tol: &Tolerance) -> Result<FactorizationTriple> {
    solve_mixing_detailed(inputs, tol).map(|s| s.triple)
}

pub fn solve_mixing_detailed(inputs: &SolverInputs, tol: &Tolerance) -> Result<MixingSolution> {
    let SolverInputs { a, f, h_star, .. } = inputs;
    let (m, n) = a.shape();
    if f.rows() != m || h_star.cols() != n {
        return Err(Error::dim(
            "solve_mixing",
            format!(
                "A is {m}x{n} but F is {}x{} and H* is {}x{}",
                f.rows(),
                f.cols(),
                h_star.rows(),
                h_star.cols()
            ),
        ));
    }
    let (r, q) = (f.cols(), h_star.rows());

    let mut seeds = GaussianStream::new(inputs.seed);
    let (b_seed, d_seed) = (seeds.fork(), seeds.fork());
    let b = match &inputs.b {
        Some(b) => b.clone(),
        None => random_rank_preserving_sketch(f, nonzero_rank(f, tol)?, b_seed)?,
    };
    let d = match &inputs.d {
        Some(d) => d.clone(),
        None => {
            let h = h_star.transpose();
            random_rank_preserving_sketch(&h, nonzero_rank(&h, tol)?, d_seed)?
        }
    };
    let inverses = GeneralizedInversePair::build(&b, f, h_star, &d, tol)?;
    let (y_star, x) = (&inverses.y_star, &inverses.x);

    let a_norm = a.frobenius_norm();
    let column_fit = f.matmul(y_star)?.matmul(a)?;
    if column_fit.distance(a)? > tol.bound(a_norm) {
        return Err(Error::Containment {
            space: "column",
            residual: relative(column_fit.distance(a)?, a_norm),
        });
    }
    let row_fit = a.matmul(x)?.matmul(h_star)?;
    if row_fit.distance(a)? > tol.bound(a_norm) {
        return Err(Error::Containment {
            space: "row",
            residual: relative(row_fit.distance(a)?, a_norm),
        });
    }

    let mut g = Matrix::chain(&[y_star, a, x])?;
    if let Some(w) = &inputs.w {
        if w.shape() != (r, q) {
            return Err(Error::dim(
                "solve_mixing",
                format!("W is {}x{}, expected {r}x{q}", w.rows(), w.cols()),
            ));
        }
        g = g.add(&homogeneous_part(f, h_star, y_star, x, w)?)?;
    }
    let mut triple = FactorizationTriple::new(f.clone(), g, h_star.clone())?;
    let mut err = triple.reconstruct().distance(a)?;
    // The W term cancels only up to rounding amplified by cond(BᵀF); that
    // error lies in F(·)H*, so Y* R X removes it. Steps are kept only while
    // they help, aiming well inside the bound.
    for _ in 0..REFINEMENT_STEPS {
        if err <= 0.01 * tol.bound(a_norm) {
            break;
        }
        let residual = a.sub(&triple.reconstruct())?;
        let g = triple.g.add(&Matrix::chain(&[y_star, &residual, x])?)?;
        let candidate = FactorizationTriple::new(f.clone(), g, h_star.clone())?;
        let candidate_err = candidate.reconstruct().distance(a)?;
        if candidate_err >= err {
            break;
        }
        triple = candidate;
        err = candidate_err;
    }
    if err > tol.bound(a_norm) {
        return Err(Error::Containment {
            space: "column/row",
            residual: relative(err, a_norm),
        });
    }
    Ok(MixingSolution {
        triple,
        inverses,
        relative_residual: relative(err, a_norm),
    })
}

fn nonzero_rank(m: &Matrix, tol: &Tolerance) -> Result<usize> {
    match rank_of(m, tol).rank {
        0 => Err(Error::RankPreservationUnachievable {
            target: 0,
            attempts: 0,
        }),
        k => Ok(k),
    }
}

fn relative(err: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        err / scale
    } else {
        err
    }
}

/// `G₀ = W − Y* F W H* X`, annihilated by `F (·) H*`.
pub fn homogeneous_part(
    f: &Matrix,
    h_star: &Matrix,
    y_star: &Matrix,
    x: &Matrix,
    w: &Matrix,
) -> Result<Matrix> {
    let inner = Matrix::chain(&[y_star, f, w, h_star, x])?;
    w.sub(&inner)
}

/// `g = F⁺a + (I − F⁺F)y`; `y = None` gives the minimum-norm solution.
pub fn solve_vector(f: &Matrix, a: &[f64], y: Option<&[f64]>, tol: &Tolerance) -> Result<Vec<f64>> {
    if a.len() != f.rows() {
        return Err(Error::dim(
            "solve_vector",
            format!("F has {} rows, a has length {}", f.rows(), a.len()),
        ));
    }
    let fp = pinv(f, tol);
    let particular = fp.mul_vec(a)?;
    let projection = f.mul_vec(&particular)?;
    let residual = norm2(&sub(&projection, a));
    if residual > tol.bound(norm2(a)) {
        return Err(Error::NoSolution {
            residual,
            projection,
        });
    }
    let Some(y) = y else {
        return Ok(particular);
    };
    if y.len() != f.cols() {
        return Err(Error::dim(
            "solve_vector",
            format!("F has {} columns, y has length {}", f.cols(), y.len()),
        ));
    }
    // (I − F⁺F) y = y − F⁺(F y)
    let fy = f.mul_vec(y)?;
    let back = fp.mul_vec(&fy)?;
    Ok(particular
        .iter()
        .zip(y.iter().zip(&back))
        .map(|(p, (yi, bi))| p + yi - bi)
        .collect())
}

/// Orthogonal projection `F F⁺ b` onto the column space of `F`.
pub fn project_onto_columns(f: &Matrix, b: &[f64], tol: &Tolerance) -> Result<Vec<f64>> {
    if b.len() != f.rows() {
        return Err(Error::dim(
            "project_onto_columns",
            format!("F has {} rows, b has length {}", f.rows(), b.len()),
        ));
    }
    f.mul_vec(&pinv(f, tol).mul_vec(b)?)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TripleReport {
    /// `‖FGH* − A‖_F / ‖A‖_F` (absolute when `A = 0`).
    pub relative_residual: f64,
    /// `‖F Y* F − F‖_F`
    pub err1: Option<f64>,
    /// `‖H* X H* − H*‖_F`
    pub err2: Option<f64>,
}

pub fn verify_triple(
    a: &Matrix,
    triple: &FactorizationTriple,
    inverses: Option<(&Matrix, &Matrix)>,
) -> Result<TripleReport> {
    let rebuilt = Matrix::chain(&[&triple.f, &triple.g, &triple.h_star])?;
    let relative_residual = relative(rebuilt.distance(a)?, a.frobenius_norm());
    let (err1, err2) = match inverses {
        Some((y_star, x)) => {
            let f = &triple.f;
            let h = &triple.h_star;
            (
                Some(Matrix::chain(&[f, y_star, f])?.distance(f)?),
                Some(Matrix::chain(&[h, x, h])?.distance(h)?),
            )
        }
        None => (None, None),
    };
    Ok(TripleReport {
        relative_residual,
        err1,
        err2,
    })
}

pub(crate) fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}
