use super::{FactorSource, ReducedForm};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Tolerance};

/// `Π A = L U` with partial pivoting.
#[derive(Clone, Debug)]
pub struct Lu {
    /// Row `i` of `Π A` is row `row_order[i]` of `A`.
    pub row_order: Vec<usize>,
    /// Unit lower triangular, multipliers bounded by 1 in magnitude.
    pub l: Matrix,
    pub u: Matrix,
}

impl Lu {
    pub fn permutation(&self) -> Matrix {
        let n = self.row_order.len();
        Matrix::from_fn(n, n, |i, j| if self.row_order[i] == j { 1.0 } else { 0.0 })
    }

    /// Solves `A x = b` by forward and back substitution.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.row_order.len();
        let mut y: Vec<f64> = self.row_order.iter().map(|&i| b[i]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.l[(i, j)] * y[j]).sum();
            y[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.u[(i, j)] * y[j]).sum();
            y[i] = (y[i] - s) / self.u[(i, i)];
        }
        y
    }
}

/// Gaussian elimination with partial pivoting on a square matrix.
///
/// A pivot whose magnitude does not exceed
/// `max(absolute, relative * n * max|a_ij|)` is reported as singular, with
/// the 1-based elimination step that hit it.
pub fn lu(a: &Matrix, tol: &Tolerance) -> Result<Lu> {
    if !a.is_square() || a.is_empty() {
        return Err(Error::dim(
            "lu",
            format!("{}x{} is not a nonempty square matrix", a.rows(), a.cols()),
        ));
    }
    let n = a.rows();
    let scale = a.data().iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let cutoff = tol.absolute.max(tol.relative * n as f64 * scale);

    let mut w: Vec<Vec<f64>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let mut l = vec![vec![0.0; n]; n];

    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| w[x][k].abs().total_cmp(&w[y][k].abs()).then(y.cmp(&x)))
            .expect("nonempty range");
        if w[p][k].abs() <= cutoff {
            return Err(Error::Singular { step: k + 1 });
        }
        w.swap(k, p);
        l.swap(k, p);
        order.swap(k, p);
        let pivot_row = w[k].clone();
        for i in k + 1..n {
            let factor = w[i][k] / pivot_row[k];
            l[i][k] = factor;
            w[i][k] = 0.0;
            for (x, p) in w[i][k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                *x -= factor * p;
            }
        }
    }
    for (i, row) in l.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    Ok(Lu {
        row_order: order,
        l: Matrix::from_fn(n, n, |i, j| l[i][j]),
        u: Matrix::from_fn(n, n, |i, j| w[i][j]),
    })
}

/// `F = Πᵀ`, `G = L`, `H* = U`.
pub fn lu_reduced(a: &Matrix, tol: &Tolerance) -> Result<ReducedForm> {
    let dec = lu(a, tol)?;
    Ok(ReducedForm {
        f: dec.permutation().transpose(),
        g: dec.l,
        h_star: dec.u,
        source: FactorSource::Lu,
    })
}

pub fn inverse(a: &Matrix, tol: &Tolerance) -> Result<Matrix> {
    let dec = lu(a, tol)?;
    let n = a.rows();
    let columns: Vec<Vec<f64>> = (0..n)
        .map(|j| dec.solve(&(0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect::<Vec<_>>()))
        .collect();
    Matrix::from_columns(&columns, n)
}

/// `F = M`, `G = B`, `H* = M⁻¹`.
pub fn similarity_form(m: &Matrix, b: &Matrix, tol: &Tolerance) -> Result<ReducedForm> {
    if m.shape() != b.shape() {
        return Err(Error::dim("similarity_form", "M and B must have equal shapes"));
    }
    Ok(ReducedForm {
        h_star: inverse(m, tol)?,
        f: m.clone(),
        g: b.clone(),
        source: FactorSource::Similarity,
    })
}

/// Whether `A = M B M⁻¹` within tolerance.
pub fn similarity_check(a: &Matrix, m: &Matrix, b: &Matrix, tol: &Tolerance) -> Result<bool> {
    if !a.is_square() || a.shape() != m.shape() || a.shape() != b.shape() {
        return Err(Error::dim(
            "similarity_check",
            "A, M and B must be square of the same size",
        ));
    }
    let form = similarity_form(m, b, tol)?;
    tol.approx_eq(&form.reconstruct()?, a)
}
