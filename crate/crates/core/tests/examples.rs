macro_rules! example {
    ($module:ident, $file:literal, $test:ident) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(pseudoinverse, "pseudoinverse.rs", pseudoinverse_example_runs);
example!(hidden_projectors, "hidden_projectors.rs", hidden_projectors_example_runs);
example!(solve_mixing, "solve_mixing.rs", solve_mixing_example_runs);
example!(factorization_zoo, "factorization_zoo.rs", factorization_zoo_example_runs);
example!(randomized, "randomized.rs", randomized_example_runs);
example!(encrypt_text, "encrypt_text.rs", encrypt_text_example_runs);
example!(two_sided, "two_sided.rs", two_sided_example_runs);
example!(key_files, "key_files.rs", key_files_example_runs);
