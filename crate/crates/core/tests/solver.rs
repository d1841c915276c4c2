mod common;

use common::{instance, low_rank, norm, rel};
use oblique::linalg::pinv;
use oblique::rng::{gaussian_matrix, gaussian_vector};
use oblique::solver::{project_onto_columns, solve_mixing, solve_mixing_detailed, solve_vector, SolverInputs};
use oblique::{Error, Matrix, Tolerance};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn any_w_reconstructs_a(seed in any::<u64>()) {
        let inst = instance(seed);
        let tol = Tolerance::default();
        let base = SolverInputs::new(inst.a.clone(), inst.f.clone(), inst.h_star.clone()).with_seed(seed);
        let g0 = solve_mixing(&base, &tol).unwrap().g;
        let scale = inst.a.frobenius_norm();
        let mut moved = false;
        for t in 0..20u64 {
            let w = gaussian_matrix(inst.r, inst.q, seed.wrapping_add(t));
            let triple = solve_mixing(&base.clone().with_w(w), &tol).unwrap();
            prop_assert!(rel(triple.reconstruct().distance(&inst.a).unwrap(), scale) <= 1e-10);
            moved |= triple.g.distance(&g0).unwrap() > 1e-8;
        }
        // G is unique only when r = q = k
        if inst.r > inst.k || inst.q > inst.k {
            prop_assert!(moved);
        }
    }

    #[test]
    fn column_space_violation_is_reported(m in 3usize..=10, n in 2usize..=10, seed in any::<u64>()) {
        // A has a column outside C(F)
        let f = gaussian_matrix(m, 1, seed);
        let a = gaussian_matrix(m, n, seed ^ 5);
        let h_star = a.clone();
        let err = solve_mixing(&SolverInputs::new(a, f, h_star).with_seed(seed), &Tolerance::default()).unwrap_err();
        let is_column = matches!(err, Error::Containment { space: "column", .. });
        prop_assert!(is_column, "{:?}", err);
    }

    #[test]
    fn row_space_violation_is_reported(m in 2usize..=10, n in 3usize..=10, seed in any::<u64>()) {
        let a = gaussian_matrix(m, n, seed);
        let f = a.clone();
        let h_star = gaussian_matrix(1, n, seed ^ 6);
        let err = solve_mixing(&SolverInputs::new(a, f, h_star).with_seed(seed), &Tolerance::default()).unwrap_err();
        let is_row = matches!(err, Error::Containment { space: "row", .. });
        prop_assert!(is_row, "{:?}", err);
    }

    #[test]
    fn minimum_norm_vector_solution(m in 2usize..=12, r in 1usize..=8, seed in any::<u64>()) {
        let k = 1 + (seed as usize) % m.min(r);
        let f = low_rank(m, r, k, seed);
        let a = f.mul_vec(&gaussian_vector(r, seed ^ 1)).unwrap();
        let tol = Tolerance::default();
        let g = solve_vector(&f, &a, None, &tol).unwrap();
        let fp = pinv(&f, &tol);
        for t in 0..100u64 {
            let y = gaussian_vector(r, seed.wrapping_add(t + 1));
            let other = solve_vector(&f, &a, Some(&y), &tol).unwrap();
            // the oracle form F⁺a + (I − F⁺F)y, written out here
            let fy = fp.mul_vec(&f.mul_vec(&y).unwrap()).unwrap();
            let oracle: Vec<f64> = g.iter().zip(y.iter().zip(&fy)).map(|(p, (yi, b))| p + yi - b).collect();
            let gap: Vec<f64> = other.iter().zip(&oracle).map(|(x, o)| x - o).collect();
            prop_assert!(norm(&gap) <= 1e-9 * norm(&oracle).max(1.0));
            let back = f.mul_vec(&other).unwrap();
            let res: Vec<f64> = back.iter().zip(&a).map(|(x, y)| x - y).collect();
            prop_assert!(norm(&res) <= 1e-9 * norm(&a).max(1.0));
            prop_assert!(norm(&g) <= norm(&other) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn projection_is_closest_point(m in 2usize..=12, r in 1usize..=8, seed in any::<u64>()) {
        let k = 1 + (seed as usize) % m.min(r);
        let f = low_rank(m, r, k, seed);
        let b = gaussian_vector(m, seed ^ 2);
        let p = project_onto_columns(&f, &b, &Tolerance::default()).unwrap();
        let best = norm(&b.iter().zip(&p).map(|(x, y)| x - y).collect::<Vec<_>>());
        for t in 0..100u64 {
            let z = gaussian_vector(r, seed.wrapping_add(t + 3));
            let fz = f.mul_vec(&z).unwrap();
            let d = norm(&b.iter().zip(&fz).map(|(x, y)| x - y).collect::<Vec<_>>());
            prop_assert!(best <= d * (1.0 + 1e-12) + 1e-12);
        }
    }
}

#[test]
fn identity_system_has_zero_errors() {
    let i = Matrix::identity(4);
    let sol = solve_mixing_detailed(&SolverInputs::new(i.clone(), i.clone(), i.clone()), &Tolerance::default()).unwrap();
    assert!(sol.triple.g.max_abs_diff(&i).unwrap() < 1e-12);
    assert!(sol.relative_residual < 1e-14);
}

#[test]
fn mismatched_w_shape_rejected() {
    let inst = instance(9);
    let w = Matrix::zeros(inst.r + 1, inst.q);
    let inputs = SolverInputs::new(inst.a, inst.f, inst.h_star).with_w(w);
    assert!(matches!(solve_mixing(&inputs, &Tolerance::default()), Err(Error::Dimension { .. })));
}
