// Randomized reduced form of a low-rank matrix from Gaussian range sketches.

use oblique::rng::gaussian_matrix;
use oblique::zoo::randomized_reduced;
use oblique::{Result, Tolerance};

pub fn run_example() -> Result<()> {
    let tol = Tolerance::default();
    let a = gaussian_matrix(40, 3, 11).matmul(&gaussian_matrix(3, 30, 12))?;
    for (r, q) in [(3, 3), (5, 4), (8, 8)] {
        let form = randomized_reduced(&a, r, q, 2024, &tol)?;
        println!("r={r} q={q}: G is {}x{}, residual {:.2e}", form.g.rows(), form.g.cols(), form.relative_residual(&a)?);
        assert!(form.relative_residual(&a)? <= 1e-10);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("randomized example");
}
