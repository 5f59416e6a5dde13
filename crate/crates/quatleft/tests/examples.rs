macro_rules! example_test {
    ($module:ident, $test:ident, $file:literal) => {
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

example_test!(forms_example, forms_example_runs, "forms.rs");
example_test!(charpoly_example, charpoly_example_runs, "charpoly.rs");
example_test!(solve_example, solve_isolated_example_runs, "solve_isolated.rs");
example_test!(manifold_example, manifold_example_runs, "manifold.rs");
example_test!(bounds_example, bounds_example_runs, "bounds.rs");
example_test!(verify_example, verify_example_runs, "verify.rs");
example_test!(block_example, block_diagonal_example_runs, "block_diagonal.rs");
example_test!(rank_example, rank_example_runs, "rank.rs");
