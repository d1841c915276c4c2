//! Classical factorizations expressed in the reduced form `A = F G H*`.

mod cpqr;
mod cur;
mod lu;
mod outer;
mod randomized;
mod svd;

pub use cpqr::{cpqr, cpqr_reduced, Cpqr};
pub use cur::{cur, ColumnRowSelection, CurForm};
pub use lu::{inverse, lu, lu_reduced, similarity_check, similarity_form, Lu};
pub use outer::{outer_product_expand, outer_product_form, sum_terms, OuterTerm};
pub use randomized::randomized_reduced;
pub use svd::reduced_svd;

use serde::Serialize;

use crate::error::Result;
use crate::linalg::Matrix;
use crate::solver::FactorizationTriple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorSource {
    Similarity,
    ReducedSvd,
    Cpqr,
    Lu,
    Cur,
    OuterProduct,
    Randomized,
}

/// A factorization mapped onto `F G H*`, tagged with where it came from.
#[derive(Clone, Debug)]
pub struct ReducedForm {
    pub f: Matrix,
    pub g: Matrix,
    pub h_star: Matrix,
    pub source: FactorSource,
}

impl ReducedForm {
    pub fn reconstruct(&self) -> Result<Matrix> {
        Matrix::chain(&[&self.f, &self.g, &self.h_star])
    }

    /// `‖FGH* − A‖_F / ‖A‖_F`.
    pub fn relative_residual(&self, a: &Matrix) -> Result<f64> {
        let err = self.reconstruct()?.distance(a)?;
        let scale = a.frobenius_norm();
        Ok(if scale > 0.0 { err / scale } else { err })
    }

    pub fn rank(&self) -> usize {
        self.g.rows()
    }

    pub fn into_triple(self) -> Result<FactorizationTriple> {
        FactorizationTriple::new(self.f, self.g, self.h_star)
    }
}
