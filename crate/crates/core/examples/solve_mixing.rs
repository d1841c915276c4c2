// Every mixing matrix G with F G H* = A, and the vector case g = F⁺a.

use oblique::rng::gaussian_matrix;
use oblique::solver::{solve_mixing, solve_vector, SolverInputs};
use oblique::{Error, Matrix, Result, Tolerance};

pub fn run_example() -> Result<()> {
    let tol = Tolerance::default();

    // rank-2 A with oversized factors (r = 4, q = 3)
    let core = gaussian_matrix(6, 2, 1).matmul(&gaussian_matrix(2, 5, 2))?;
    let f = core.matmul(&gaussian_matrix(5, 4, 3))?;
    let h_star = gaussian_matrix(3, 6, 4).matmul(&core)?;

    let particular = solve_mixing(&SolverInputs::new(core.clone(), f.clone(), h_star.clone()).with_seed(7), &tol)?;
    let w = gaussian_matrix(4, 3, 5);
    let other = solve_mixing(
        &SolverInputs::new(core.clone(), f, h_star).with_seed(7).with_w(w),
        &tol,
    )?;
    println!(
        "two mixing matrices {:.3e} apart, both reconstruct A to {:.1e} and {:.1e}",
        particular.g.distance(&other.g)?,
        particular.reconstruct().distance(&core)? / core.frobenius_norm(),
        other.reconstruct().distance(&core)? / core.frobenius_norm(),
    );

    let col = Matrix::from_rows(&[[1.0], [0.0], [1.0]])?;
    let g = solve_vector(&col, &[2.0, 0.0, 2.0], None, &tol)?;
    println!("g = {g:?}");
    match solve_vector(&col, &[1.0, 1.0, 1.0], None, &tol) {
        Err(Error::NoSolution { projection, .. }) => println!("no solution; nearest reachable {projection:?}"),
        other => panic!("expected no solution, got {other:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("solve mixing example");
}
