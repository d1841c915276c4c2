use super::{FactorSource, ReducedForm};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Tolerance};

/// One weighted rank-1 term `weight · column · rowᵀ`.
#[derive(Clone, Debug, PartialEq)]
pub struct OuterTerm {
    pub weight: f64,
    pub column: Vec<f64>,
    pub row: Vec<f64>,
}

impl OuterTerm {
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.column.len(), self.row.len(), |i, j| {
            self.weight * self.column[i] * self.row[j]
        })
    }
}

/// Splits a form with diagonal `G` into `Σ gᵢ fᵢ hᵢ*`.
///
/// Off-diagonal entries of `G` must vanish to within the tolerance bound
/// scaled by `‖G‖_F`.
pub fn outer_product_expand(form: &ReducedForm, tol: &Tolerance) -> Result<Vec<OuterTerm>> {
    let g = &form.g;
    if !g.is_square() {
        return Err(Error::dim(
            "outer_product_expand",
            format!("mixing matrix is {}x{}, not square", g.rows(), g.cols()),
        ));
    }
    let bound = tol.bound(g.frobenius_norm());
    for i in 0..g.rows() {
        for j in (0..g.cols()).filter(|&j| j != i) {
            if g[(i, j)].abs() > bound {
                return Err(Error::NotDiagonal {
                    row: i,
                    col: j,
                    value: g[(i, j)],
                });
            }
        }
    }
    Ok((0..g.rows())
        .map(|i| OuterTerm {
            weight: g[(i, i)],
            column: form.f.column(i),
            row: form.h_star.row(i).to_vec(),
        })
        .collect())
}

/// `A = B D` read as the reduced form with `G = I`.
pub fn outer_product_form(b: &Matrix, d: &Matrix) -> Result<ReducedForm> {
    if b.cols() != d.rows() {
        return Err(Error::dim(
            "outer_product_form",
            format!("B is {}x{}, D is {}x{}", b.rows(), b.cols(), d.rows(), d.cols()),
        ));
    }
    Ok(ReducedForm {
        f: b.clone(),
        g: Matrix::identity(b.cols()),
        h_star: d.clone(),
        source: FactorSource::OuterProduct,
    })
}

/// Sum of the terms, or `None` for an empty expansion.
pub fn sum_terms(terms: &[OuterTerm]) -> Option<Matrix> {
    let (first, rest) = terms.split_first()?;
    Some(
        rest.iter()
            .fold(first.to_matrix(), |acc, t| acc.add(&t.to_matrix()).expect("equal shapes")),
    )
}
