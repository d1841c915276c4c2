// Numerical rank, the Moore-Penrose pseudoinverse and the four Penrose
// conditions.

use oblique::linalg::{check_penrose, pinv, rank_of};
use oblique::{Matrix, Result, Tolerance};

pub fn run_example() -> Result<()> {
    let tol = Tolerance::default();

    let f = Matrix::from_rows(&[[1.0], [0.0], [1.0]])?;
    let fp = pinv(&f, &tol);
    println!("pinv of [1 0 1]^T:\n{fp}");

    let a = Matrix::from_rows(&[[0.0, 1.0, 0.5], [1.0, 2.0, 1.5], [2.0, 7.0, 4.5]])?;
    let rank = rank_of(&a, &tol);
    println!("rank {} with singular values {:?}", rank.rank, rank.singular_values);

    let report = check_penrose(&a, &pinv(&a, &tol), &tol)?;
    println!("Penrose conditions hold: {:?}", report.as_array());
    assert!(report.all());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("pseudoinverse example");
}
