// Generalized inverses built from sketches and the oblique projectors
// they induce.

use oblique::projector::{check_projector_equation, is_idempotent, make_x, make_y_star};
use oblique::{Matrix, Result, Tolerance};

pub fn run_example() -> Result<()> {
    let tol = Tolerance::default();

    // full rank: Y* F = I = H* X
    let f = Matrix::from_rows(&[[0.0, 1.0], [1.0, 2.0], [2.0, 7.0]])?;
    let h_star = Matrix::from_rows(&[[0.0, 1.0, 0.5], [1.0, 2.0, 1.5]])?;
    let b = Matrix::from_rows(&[[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])?;
    let d = Matrix::from_rows(&[[1.0, 0.0], [0.0, 1.0], [0.0, 1.0]])?;
    let y = make_y_star(&b, &f, &tol)?;
    let x = make_x(&d, &h_star, &tol)?;
    println!("Y* =\n{y}X =\n{x}");
    assert!(check_projector_equation(&y, &f, &h_star, &x, &tol)?);

    // rank deficient: no identity, but F Y* and X H* are still projectors
    let f = Matrix::from_rows(&[[0.0, 1.0, 0.5], [0.0, 2.0, 1.0]])?;
    let b = Matrix::from_rows(&[[1.0, 0.0, 1.0], [2.0, 0.0, 2.0]])?;
    let d = Matrix::from_rows(&[[1.0, 1.0], [0.0, 0.0], [1.0, 1.0]])?;
    let y = make_y_star(&b, &f, &tol)?;
    let x = make_x(&d, &f, &tol)?;
    let column = f.matmul(&y)?;
    let row = x.matmul(&f)?;
    println!("F Y* =\n{column}X H* =\n{row}");
    assert!(is_idempotent(&column, &tol)? && is_idempotent(&row, &tol)?);
    assert!(!check_projector_equation(&y, &f, &f, &x, &tol)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("hidden projectors example");
}
