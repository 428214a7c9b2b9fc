macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));

            #[test]
            fn runs() {
                run_example().unwrap();
            }
        }
    };
}

example!(ideal_lattice, "ideal_lattice.rs");
example!(independence, "independence.rs");
example!(ore_condition, "ore_condition.rs");
example!(inverse_semigroup, "inverse_semigroup.rs");
example!(boundary_spectrum, "boundary_spectrum.rs");
example!(fock_expectation, "fock_expectation.rs");
example!(strong_covariance, "strong_covariance.rs");
example!(batch_report, "batch_report.rs");
