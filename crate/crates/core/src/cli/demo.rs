//! Worked examples replayed by `oblique demo`.

use serde::Serialize;

use crate::error::Result;
use crate::linalg::{pinv, svd, Matrix, Tolerance};
use crate::projector::{make_x, make_y_star};
use crate::solver::{solve_mixing, SolverInputs};
use crate::zoo::{cpqr, cpqr_reduced, cur, inverse, lu, similarity_form, ColumnRowSelection};

/// One worked example: the largest entrywise deviation from the expected
/// values.
#[derive(Clone, Debug, Serialize)]
pub struct GoldenCheck {
    pub name: &'static str,
    pub deviation: f64,
}

impl GoldenCheck {
    pub fn passes(&self, tol: f64) -> bool {
        self.deviation <= tol
    }
}

fn mat<const C: usize>(rows: &[[f64; C]]) -> Matrix {
    Matrix::from_rows(rows).expect("literal matrix")
}

fn worst(pairs: &[(&Matrix, &Matrix)]) -> Result<f64> {
    pairs
        .iter()
        .try_fold(0.0_f64, |acc, (got, want)| Ok(acc.max(got.max_abs_diff(want)?)))
}

/// Runs every worked example and reports its deviation.
pub fn golden_suite() -> Result<Vec<GoldenCheck>> {
    let tol = Tolerance::default();
    let s2 = 2f64.sqrt();
    let mut out = Vec::new();
    let mut push = |name, deviation| out.push(GoldenCheck { name, deviation });

    // 2x2 similarity transform
    let a = mat(&[[1.0, 2.0], [3.0, 4.0]]);
    let m = mat(&[[0.0, 1.0], [1.0, 1.0]]);
    let b = mat(&[[2.0, 4.0], [2.0, 3.0]]);
    let form = similarity_form(&m, &b, &tol)?;
    push("similarity: M^-1", inverse(&m, &tol)?.max_abs_diff(&mat(&[[-1.0, 1.0], [1.0, 0.0]]))?);
    push("similarity: M B M^-1 = A", form.reconstruct()?.max_abs_diff(&a)?);

    // reduced SVD of a 3x2 matrix
    let a = mat(&[[1.0, 1.0], [1.0, -1.0], [1.0, 1.0]]);
    let dec = svd(&a);
    let sv = Matrix::row_vector(&dec.singular_values)?;
    push("svd: singular values (2, sqrt 2)", sv.max_abs_diff(&mat(&[[2.0, s2]]))?);

    // column pivoted QR
    let a = mat(&[[1.0, 1.0], [0.0, -1.0], [0.0, 0.0]]);
    let qr = cpqr(&a, &tol)?;
    let r_want = mat(&[[-s2, -s2 / 2.0], [0.0, s2 / 2.0]]);
    // R is unique up to the sign of each row
    let r_dev = (0..2)
        .map(|i| {
            let flip = if qr.r[(i, i)] * r_want[(i, i)] < 0.0 { -1.0 } else { 1.0 };
            (0..2).fold(0.0_f64, |acc, j| acc.max((flip * qr.r[(i, j)] - r_want[(i, j)]).abs()))
        })
        .fold(0.0_f64, f64::max);
    let pivot_dev = if qr.permutation == [1, 0] { 0.0 } else { f64::INFINITY };
    push("cpqr: R factor and pivot order", r_dev.max(pivot_dev));
    push("cpqr: Q R P^T = A", cpqr_reduced(&a, &tol)?.reconstruct()?.max_abs_diff(&a)?);

    // LU with partial pivoting
    let a = mat(&[[0.0, 1.0, 1.0], [1.0, 2.0, 1.0], [2.0, 7.0, 9.0]]);
    let f = lu(&a, &tol)?;
    let order_dev = if f.row_order == [2, 1, 0] { 0.0 } else { f64::INFINITY };
    let l = mat(&[[1.0, 0.0, 0.0], [0.5, 1.0, 0.0], [0.0, -2.0 / 3.0, 1.0]]);
    let u = mat(&[[2.0, 7.0, 9.0], [0.0, -1.5, -3.5], [0.0, 0.0, -4.0 / 3.0]]);
    push("lu: L and U factors", worst(&[(&f.l, &l), (&f.u, &u)])?.max(order_dev));

    // CUR on a rank-2 3x3 matrix
    let a = mat(&[[0.0, 1.0, 0.5], [1.0, 2.0, 1.5], [2.0, 7.0, 4.5]]);
    let sel = ColumnRowSelection::new(vec![0, 1], vec![0, 1])?;
    let c = cur(&a, &sel, &tol)?;
    push("cur: mixing matrix [[-2,1],[1,0]]", c.form.g.max_abs_diff(&mat(&[[-2.0, 1.0], [1.0, 0.0]]))?);
    push("cur: C U R = A", c.form.reconstruct()?.max_abs_diff(&a)?);

    // pseudoinverse of a column
    let f = mat(&[[1.0], [0.0], [1.0]]);
    push("pinv: column [1,0,1]", pinv(&f, &tol).max_abs_diff(&mat(&[[0.5, 0.0, 0.5]]))?);

    // full-rank generalized inverses
    let f = mat(&[[0.0, 1.0], [1.0, 2.0], [2.0, 7.0]]);
    let h = mat(&[[0.0, 1.0, 0.5], [1.0, 2.0, 1.5]]);
    let b = mat(&[[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]);
    let d = mat(&[[1.0, 0.0], [0.0, 1.0], [0.0, 1.0]]);
    let y = make_y_star(&b, &f, &tol)?;
    let x = make_x(&d, &h, &tol)?;
    let y_want = mat(&[[-1.5, 4.0 / 3.0, -1.0 / 6.0], [0.5, -1.0 / 3.0, 1.0 / 6.0]]);
    let x_want = mat(&[[-7.0 / 3.0, 1.0], [2.0 / 3.0, 0.0], [2.0 / 3.0, 0.0]]);
    push("full rank: Y*", y.max_abs_diff(&y_want)?);
    push("full rank: X", x.max_abs_diff(&x_want)?);
    let i2 = Matrix::identity(2);
    push("full rank: Y* F = I = H* X", worst(&[(&y.matmul(&f)?, &i2), (&h.matmul(&x)?, &i2)])?);

    // rank-deficient generalized inverses
    let f = mat(&[[0.0, 1.0, 0.5], [0.0, 2.0, 1.0]]);
    let b = mat(&[[1.0, 0.0, 1.0], [2.0, 0.0, 2.0]]);
    let d = mat(&[[1.0, 1.0], [0.0, 0.0], [1.0, 1.0]]);
    let y = make_y_star(&b, &f, &tol)?;
    let x = make_x(&d, &f, &tol)?;
    let y_want = mat(&[[0.0, 0.0], [4.0 / 25.0, 8.0 / 25.0], [2.0 / 25.0, 4.0 / 25.0]]);
    let x_want = mat(&[[0.4, 0.8], [0.0, 0.0], [0.4, 0.8]]);
    push("rank deficient: Y*", y.max_abs_diff(&y_want)?);
    push("rank deficient: X", x.max_abs_diff(&x_want)?);
    let yf_want = mat(&[[0.0, 0.0, 0.0], [0.0, 0.8, 0.4], [0.0, 0.4, 0.2]]);
    let hx_want = mat(&[[0.2, 0.4], [0.4, 0.8]]);
    push(
        "rank deficient: Y* F and H* X",
        worst(&[(&y.matmul(&f)?, &yf_want), (&f.matmul(&x)?, &hx_want)])?,
    );

    // mixing matrix of the rank-deficient system, with and without W
    let base = SolverInputs::new(f.clone(), f.clone(), f.clone()).with_sketches(b, d);
    let g0 = solve_mixing(&base, &tol)?;
    push("mixing: G = Y* A X", g0.g.max_abs_diff(&y_want)?);
    let w = mat(&[[1.0, -2.0], [0.5, 3.0], [-1.0, 0.25]]);
    let gw = solve_mixing(&base.with_w(w), &tol)?;
    push("mixing: F G H* = A for nonzero W", gw.reconstruct().max_abs_diff(&f)?);

    Ok(out)
}
