#![allow(dead_code)]

use nalgebra::DMatrix;
use oblique::rng::{gaussian_matrix, GaussianStream};
use oblique::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random rank-`k` m×n matrix `V C`; the rank is known by construction.
pub fn low_rank(m: usize, n: usize, k: usize, seed: u64) -> Matrix {
    let mut s = GaussianStream::new(seed);
    let v = s.matrix(m, k);
    let c = s.matrix(k, n);
    v.matmul(&c).unwrap()
}

/// One instance of the mixing equation: `F = AΩ` (m×r), `H* = Ω'ᵀA` (q×n),
/// so both containments hold by construction.
#[derive(Clone, Debug)]
pub struct Instance {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub q: usize,
    pub a: Matrix,
    pub f: Matrix,
    pub h_star: Matrix,
    pub w: Matrix,
    pub seed: u64,
}

pub fn instance(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.random_range(1..=12);
    let n = rng.random_range(1..=12);
    let k = rng.random_range(1..=m.min(n));
    let r = rng.random_range(k..=k + 4);
    let q = rng.random_range(k..=k + 4);
    let a = low_rank(m, n, k, seed ^ 0xA5A5);
    let f = a.matmul(&gaussian_matrix(n, r, seed ^ 0x1111)).unwrap();
    let h_star = gaussian_matrix(q, m, seed ^ 0x2222).matmul(&a).unwrap();
    let w = gaussian_matrix(r, q, seed ^ 0x3333);
    Instance {
        m,
        n,
        k,
        r,
        q,
        a,
        f,
        h_star,
        w,
        seed,
    }
}

pub fn to_na(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.data())
}

pub fn from_na(m: &DMatrix<f64>) -> Matrix {
    Matrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// `(AᵀA)⁻¹Aᵀ` for full column rank, `Aᵀ(AAᵀ)⁻¹` for full row rank.
pub fn normal_equation_pinv(a: &Matrix) -> Matrix {
    let x = to_na(a);
    let p = if a.rows() >= a.cols() {
        (x.transpose() * &x).try_inverse().expect("full column rank") * x.transpose()
    } else {
        x.transpose() * (&x * x.transpose()).try_inverse().expect("full row rank")
    };
    from_na(&p)
}

pub fn rel(err: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        err / scale
    } else {
        err
    }
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
