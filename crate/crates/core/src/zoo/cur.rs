use std::collections::HashSet;

use super::{FactorSource, ReducedForm};
use crate::error::{Error, Result};
use crate::linalg::{pinv, rank_of, Matrix, Tolerance};

/// Column indices `J` and row indices `I` (0-based) picked from `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnRowSelection {
    pub col_indices: Vec<usize>,
    pub row_indices: Vec<usize>,
}

impl ColumnRowSelection {
    pub fn new(col_indices: Vec<usize>, row_indices: Vec<usize>) -> Result<Self> {
        for (axis, idx) in [("column", &col_indices), ("row", &row_indices)] {
            if idx.is_empty() {
                return Err(Error::InvalidParameter(format!("empty {axis} selection")));
            }
            let mut seen = HashSet::new();
            if let Some(&dup) = idx.iter().find(|&&i| !seen.insert(i)) {
                return Err(Error::DuplicateIndex { axis, index: dup });
            }
        }
        Ok(Self {
            col_indices,
            row_indices,
        })
    }

    pub fn validate_for(&self, a: &Matrix) -> Result<()> {
        for (axis, idx, len) in [
            ("column", &self.col_indices, a.cols()),
            ("row", &self.row_indices, a.rows()),
        ] {
            if let Some(&bad) = idx.iter().find(|&&i| i >= len) {
                return Err(Error::IndexOutOfRange { axis, index: bad, len });
            }
        }
        Ok(())
    }
}

/// CUR in reduced form together with the ranks that decide exactness.
#[derive(Clone, Debug)]
pub struct CurForm {
    pub form: ReducedForm,
    pub rank_mixing: usize,
    pub rank_a: usize,
}

impl CurForm {
    /// `C (C⁺AR⁺) R = A` exactly iff `rank(C⁺AR⁺) = rank(A)`.
    pub fn is_exact(&self) -> bool {
        self.rank_mixing == self.rank_a
    }
}

/// `F = C = A(:,J)`, `G = C⁺ A R⁺`, `H* = R = A(I,:)`.
pub fn cur(a: &Matrix, sel: &ColumnRowSelection, tol: &Tolerance) -> Result<CurForm> {
    sel.validate_for(a)?;
    let c = a.select_columns(&sel.col_indices)?;
    let r = a.select_rows(&sel.row_indices)?;
    let g = Matrix::chain(&[&pinv(&c, tol), a, &pinv(&r, tol)])?;
    Ok(CurForm {
        rank_mixing: rank_of(&g, tol).rank,
        rank_a: rank_of(a, tol).rank,
        form: ReducedForm {
            f: c,
            g,
            h_star: r,
            source: FactorSource::Cur,
        },
    })
}
