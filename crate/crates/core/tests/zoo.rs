mod common;

use common::{low_rank, rel};
use oblique::linalg::{rank_of, svd};
use oblique::rng::gaussian_matrix;
use oblique::solver::verify_triple;
use oblique::zoo::{
    cpqr, cpqr_reduced, cur, lu, lu_reduced, outer_product_expand, outer_product_form, randomized_reduced, reduced_svd,
    similarity_form, sum_terms, ColumnRowSelection,
};
use oblique::{Matrix, Tolerance};
use proptest::prelude::*;

fn shape() -> impl Strategy<Value = (usize, usize, usize, u64)> {
    (1usize..=12, 1usize..=12, any::<u64>()).prop_flat_map(|(m, n, seed)| (Just(m), Just(n), 1..=m.min(n), Just(seed)))
}

fn residual_ok(a: &Matrix, f: oblique::zoo::ReducedForm) -> bool {
    let triple = f.into_triple().unwrap();
    verify_triple(a, &triple, None).unwrap().relative_residual <= 1e-10
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn svd_adapter((m, n, k, seed) in shape()) {
        let a = low_rank(m, n, k, seed);
        let tol = Tolerance::default();
        let form = reduced_svd(&a, k, &tol).unwrap();
        let report = rank_of(&a, &tol);
        for i in 0..k {
            prop_assert!((form.g[(i, i)] - report.singular_values[i]).abs() <= 1e-12 * report.singular_values[0].max(1.0));
        }
        prop_assert!(residual_ok(&a, form));
    }

    #[test]
    fn cpqr_adapter((m, n, k, seed) in shape()) {
        let a = low_rank(m, n, k, seed);
        let tol = Tolerance::default();
        let dec = cpqr(&a, &tol).unwrap();
        prop_assert_eq!(dec.rank, k);
        let diag = dec.r_diagonal();
        prop_assert!(diag.windows(2).all(|w| w[0].abs() >= w[1].abs() * (1.0 - 1e-12)));
        prop_assert!(residual_ok(&a, cpqr_reduced(&a, &tol).unwrap()));
    }

    #[test]
    fn lu_adapter(n in 1usize..=12, seed in any::<u64>()) {
        let a = gaussian_matrix(n, n, seed);
        let tol = Tolerance::default();
        let dec = lu(&a, &tol).unwrap();
        let pa = dec.permutation().matmul(&a).unwrap();
        let lu_prod = dec.l.matmul(&dec.u).unwrap();
        prop_assert!(pa.distance(&lu_prod).unwrap() <= 1e-12 * a.frobenius_norm());
        for i in 0..n {
            prop_assert_eq!(dec.l[(i, i)], 1.0);
            for j in 0..n {
                prop_assert!(dec.l[(i, j)].abs() <= 1.0);
                if j > i {
                    prop_assert_eq!(dec.l[(i, j)], 0.0);
                }
                if j < i {
                    prop_assert_eq!(dec.u[(i, j)], 0.0);
                }
            }
        }
        prop_assert!(residual_ok(&a, lu_reduced(&a, &tol).unwrap()));
    }

    #[test]
    fn similarity_adapter(n in 1usize..=12, seed in any::<u64>()) {
        let m = gaussian_matrix(n, n, seed);
        let b = gaussian_matrix(n, n, seed ^ 1);
        let tol = Tolerance::default();
        let form = similarity_form(&m, &b, &tol).unwrap();
        // oracle: A = M B M⁻¹ means A M = M B
        let a = form.reconstruct().unwrap();
        let lhs = a.matmul(&m).unwrap();
        let rhs = m.matmul(&b).unwrap();
        prop_assert!(rel(lhs.distance(&rhs).unwrap(), rhs.frobenius_norm()) <= 1e-9);
    }

    #[test]
    fn outer_product_adapter((m, n, k, seed) in shape()) {
        let b = gaussian_matrix(m, k, seed);
        let d = gaussian_matrix(k, n, seed ^ 1);
        let a = b.matmul(&d).unwrap();
        let form = outer_product_form(&b, &d).unwrap();
        let terms = outer_product_expand(&form, &Tolerance::default()).unwrap();
        prop_assert_eq!(terms.len(), k);
        let sum = sum_terms(&terms).unwrap();
        prop_assert!(rel(sum.distance(&a).unwrap(), a.frobenius_norm()) <= 1e-10);
        prop_assert!(residual_ok(&a, form));
    }

    #[test]
    fn randomized_adapter((m, n, k, seed) in shape(), extra_r in 0usize..=4, extra_q in 0usize..=4) {
        let a = low_rank(m, n, k, seed);
        let form = randomized_reduced(&a, k + extra_r, k + extra_q, seed ^ 9, &Tolerance::default()).unwrap();
        prop_assert!(residual_ok(&a, form));
    }

    #[test]
    fn cur_adapter_with_full_rank_selection((m, n, k, seed) in shape()) {
        let a = low_rank(m, n, k, seed);
        let tol = Tolerance::default();
        // with generic V C, any k columns and rows carry rank k
        let sel = ColumnRowSelection::new((0..k).collect(), (0..k).collect()).unwrap();
        let out = cur(&a, &sel, &tol).unwrap();
        prop_assert!(out.is_exact());
        prop_assert!(residual_ok(&a, out.form));
    }

    #[test]
    fn cur_exactness_iff_rank_condition((m, n, k, seed) in shape().prop_filter("needs k >= 2", |s| s.2 >= 2)) {
        let a = low_rank(m, n, k, seed);
        let tol = Tolerance::default();
        // too few columns: rank(U) < rank(A), reconstruction must fail
        let short = ColumnRowSelection::new((0..k - 1).collect(), (0..k).collect()).unwrap();
        let out = cur(&a, &short, &tol).unwrap();
        prop_assert!(!out.is_exact());
        let err = rel(out.form.reconstruct().unwrap().distance(&a).unwrap(), a.frobenius_norm());
        prop_assert!(err > 1e-8);

        let full = ColumnRowSelection::new((0..k).collect(), (0..k).collect()).unwrap();
        let out = cur(&a, &full, &tol).unwrap();
        prop_assert!(out.is_exact());
        let err = rel(out.form.reconstruct().unwrap().distance(&a).unwrap(), a.frobenius_norm());
        prop_assert!(err <= 1e-10);
    }
}

#[test]
fn lu_identity_is_trivial() {
    let i = Matrix::identity(4);
    let form = lu_reduced(&i, &Tolerance::default()).unwrap();
    assert_eq!(form.f, i);
    assert_eq!(form.g, i);
    assert_eq!(form.h_star, i);
}

#[test]
fn svd_sign_convention() {
    let a = gaussian_matrix(6, 4, 77);
    let dec = svd(&a);
    for j in 0..4 {
        let first = (0..6).map(|i| dec.u[(i, j)]).find(|v| v.abs() > 1e-14).unwrap();
        assert!(first > 0.0);
    }
}
