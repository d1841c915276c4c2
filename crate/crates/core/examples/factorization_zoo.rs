// SVD, column pivoted QR, LU, CUR, similarity and outer products, each
// written as F G H*.

use oblique::zoo::{
    cpqr_reduced, cur, lu_reduced, outer_product_expand, reduced_svd, similarity_form, sum_terms,
    ColumnRowSelection, ReducedForm,
};
use oblique::{Matrix, Result, Tolerance};

fn show(label: &str, form: &ReducedForm, a: &Matrix) -> Result<()> {
    println!("{label:>10}: rank {} residual {:.2e}", form.rank(), form.relative_residual(a)?);
    Ok(())
}

pub fn run_example() -> Result<()> {
    let tol = Tolerance::default();

    let a = Matrix::from_rows(&[[1.0, 1.0], [1.0, -1.0], [1.0, 1.0]])?;
    let svd = reduced_svd(&a, 2, &tol)?;
    show("svd", &svd, &a)?;
    let terms = outer_product_expand(&svd, &tol)?;
    let rebuilt = sum_terms(&terms).expect("two terms");
    println!("{:>10}: {} rank-one terms, error {:.2e}", "outer", terms.len(), rebuilt.distance(&a)?);

    let a = Matrix::from_rows(&[[1.0, 1.0], [0.0, -1.0], [0.0, 0.0]])?;
    show("cpqr", &cpqr_reduced(&a, &tol)?, &a)?;

    let a = Matrix::from_rows(&[[0.0, 1.0, 1.0], [1.0, 2.0, 1.0], [2.0, 7.0, 9.0]])?;
    let lu = lu_reduced(&a, &tol)?;
    show("lu", &lu, &a)?;
    println!("L =\n{}U =\n{}", lu.g, lu.h_star);

    let a = Matrix::from_rows(&[[0.0, 1.0, 0.5], [1.0, 2.0, 1.5], [2.0, 7.0, 4.5]])?;
    let c = cur(&a, &ColumnRowSelection::new(vec![0, 1], vec![0, 1])?, &tol)?;
    show("cur", &c.form, &a)?;
    println!("U =\n{}exact: {}", c.form.g, c.is_exact());

    let a = Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]])?;
    let m = Matrix::from_rows(&[[0.0, 1.0], [1.0, 1.0]])?;
    let b = Matrix::from_rows(&[[2.0, 4.0], [2.0, 3.0]])?;
    show("similarity", &similarity_form(&m, &b, &tol)?, &a)?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("factorization zoo example");
}
