use super::{FactorSource, ReducedForm};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Tolerance};

/// Thin column-pivoted QR: `A Π = Q R` truncated to the numerical rank.
#[derive(Clone, Debug)]
pub struct Cpqr {
    /// m×k, orthonormal columns.
    pub q: Matrix,
    /// k×n upper trapezoidal, columns in pivoted order.
    pub r: Matrix,
    /// `permutation[j]` is the original index of pivoted column `j`.
    pub permutation: Vec<usize>,
    pub rank: usize,
}

impl Cpqr {
    pub fn r_diagonal(&self) -> Vec<f64> {
        (0..self.rank).map(|j| self.r[(j, j)]).collect()
    }

    /// `R Πᵀ`, i.e. R with its columns moved back to their original slots.
    pub fn r_unpermuted(&self) -> Matrix {
        let n = self.r.cols();
        let mut slot = vec![0; n];
        for (j, &orig) in self.permutation.iter().enumerate() {
            slot[orig] = j;
        }
        Matrix::from_fn(self.rank, n, |i, c| self.r[(i, slot[c])])
    }
}

/// Householder QR with greedy max-norm column pivoting (Businger–Golub).
///
/// Trailing column norms are recomputed at each step, so `|R_jj|` is the
/// largest remaining norm and the diagonal is nonincreasing. Elimination
/// stops once that norm falls to the rank cutoff.
pub fn cpqr(a: &Matrix, tol: &Tolerance) -> Result<Cpqr> {
    let (m, n) = a.shape();
    let mut cols: Vec<Vec<f64>> = (0..n).map(|j| a.column(j)).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut reflectors: Vec<Vec<f64>> = Vec::new();

    let tail_norm = |c: &[f64], from: usize| c[from..].iter().map(|v| v * v).sum::<f64>().sqrt();
    let largest = cols.iter().map(|c| tail_norm(c, 0)).fold(0.0, f64::max);
    let cutoff = tol.rank_cutoff(largest, m, n);

    for j in 0..m.min(n) {
        let (p, norm) = (j..n)
            .map(|c| (c, tail_norm(&cols[c], j)))
            .fold((j, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if norm <= cutoff {
            break;
        }
        cols.swap(j, p);
        perm.swap(j, p);

        let x = &cols[j][j..];
        let alpha = if x[0] >= 0.0 { -norm } else { norm };
        let mut v = x.to_vec();
        v[0] -= alpha;
        let vnorm = v.iter().map(|t| t * t).sum::<f64>().sqrt();
        if vnorm > 0.0 {
            v.iter_mut().for_each(|t| *t /= vnorm);
            for col in cols.iter_mut().skip(j) {
                let dot: f64 = v.iter().zip(&col[j..]).map(|(a, b)| a * b).sum();
                for (c, vi) in col[j..].iter_mut().zip(&v) {
                    *c -= 2.0 * dot * vi;
                }
            }
        }
        cols[j][j] = alpha;
        cols[j][j + 1..].iter_mut().for_each(|t| *t = 0.0);
        reflectors.push(v);
    }

    let k = reflectors.len();
    if k == 0 {
        return Err(Error::InvalidParameter("CPQR of a zero matrix".into()));
    }
    // Q e_c for c < k, applying the reflectors in reverse.
    let mut q_cols: Vec<Vec<f64>> = (0..k)
        .map(|c| (0..m).map(|i| if i == c { 1.0 } else { 0.0 }).collect())
        .collect();
    for (j, v) in reflectors.iter().enumerate().rev() {
        for col in q_cols.iter_mut() {
            let dot: f64 = v.iter().zip(&col[j..]).map(|(a, b)| a * b).sum();
            for (c, vi) in col[j..].iter_mut().zip(v) {
                *c -= 2.0 * dot * vi;
            }
        }
    }
    Ok(Cpqr {
        q: Matrix::from_fn(m, k, |i, c| q_cols[c][i]),
        r: Matrix::from_fn(k, n, |i, c| cols[c][i]),
        permutation: perm,
        rank: k,
    })
}

/// `F = Q(:,1:k)`, `G = I_k`, `H* = R(1:k,:) Πᵀ`.
pub fn cpqr_reduced(a: &Matrix, tol: &Tolerance) -> Result<ReducedForm> {
    let dec = cpqr(a, tol)?;
    Ok(ReducedForm {
        g: Matrix::identity(dec.rank),
        h_star: dec.r_unpermuted(),
        f: dec.q,
        source: FactorSource::Cpqr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_example_pivots_the_longer_column() {
        let a = Matrix::from_rows(&[[1.0, 1.0], [0.0, -1.0], [0.0, 0.0]]).unwrap();
        let dec = cpqr(&a, &Tolerance::default()).unwrap();
        assert_eq!(dec.rank, 2);
        assert_eq!(dec.permutation, vec![1, 0]);
        assert!((dec.r[(0, 0)] + 2f64.sqrt()).abs() < 1e-12);
        let form = cpqr_reduced(&a, &Tolerance::default()).unwrap();
        assert!(form.relative_residual(&a).unwrap() <= 1e-12);
    }

    #[test]
    fn identity_is_its_own_form() {
        let i3 = Matrix::identity(3);
        let form = cpqr_reduced(&i3, &Tolerance::default()).unwrap();
        assert_eq!(form.g, i3);
        assert!(form.relative_residual(&i3).unwrap() < 1e-15);
    }

    #[test]
    fn zero_matrix_rejected() {
        assert!(cpqr(&Matrix::zeros(3, 3), &Tolerance::default()).is_err());
    }
}
