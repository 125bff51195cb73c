//! Every example must run to completion.

macro_rules! example {
    ($module:ident, $file:literal, $test:ident) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(favard_constants, "favard_constants.rs", favard_constants_runs);
example!(kernel_median, "kernel_median.rs", kernel_median_runs);
example!(extremal_witness, "extremal_witness.rs", extremal_witness_runs);
example!(threshold_dichotomy, "threshold_dichotomy.rs", threshold_dichotomy_runs);
example!(weighted_probe, "weighted_probe.rs", weighted_probe_runs);
example!(green_residual, "green_residual.rs", green_residual_runs);
example!(conclusion_table, "conclusion_table.rs", conclusion_table_runs);
example!(collocation_crosscheck, "collocation_crosscheck.rs", collocation_crosscheck_runs);
