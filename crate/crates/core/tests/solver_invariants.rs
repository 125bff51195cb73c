//! Cross-checks between the exact reduction, its float image, and grid collocation.

use minperiod::favard;
use minperiod::rational::{int, rat, Rational};
use minperiod::solver::{self, collocation, linalg, StepFunction};
use minperiod::witness;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn witness_tau(n: usize) -> StepFunction {
    let w = witness::build_witness(n, &int(1)).unwrap();
    StepFunction::new(vec![int(0), rat(1, 2), int(1)], vec![w.tau.first, w.tau.second]).unwrap()
}

/// Half singular (witness deviations at threshold), half random.
fn instances(rng: &mut ChaCha8Rng, count: usize) -> Vec<(usize, Rational, StepFunction)> {
    (0..count)
        .map(|i| {
            let n = rng.gen_range(1..=4);
            let l_crit = favard::favard(n).recip();
            if i % 2 == 0 {
                (n, l_crit, witness_tau(n))
            } else {
                let tau = StepFunction::random(rng, &int(1), 8, 64, &Rational::zero(), &int(1));
                (n, l_crit * rat(rng.gen_range(1..=300), 100), tau)
            }
        })
        .collect()
}

#[test]
fn exact_and_float_verdicts_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let zero = Rational::zero();
    for (n, l, tau) in instances(&mut rng, 50) {
        let sys = solver::reduce_system(n, &int(1), &l, &tau, &zero, &zero).unwrap();
        let det_zero = linalg::determinant(&sys.matrix).is_zero();
        let r = solver::uniqueness_margin(&sys);
        assert_eq!(det_zero, r.margin < 1e-8, "n = {n}, L = {l}, margin {}", r.margin);
    }
}

#[test]
fn collocation_converges_to_zero_exactly_on_singular_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let zero = Rational::zero();
    for (n, l, tau) in instances(&mut rng, 6) {
        let singular = linalg::determinant(&solver::reduce_system(n, &int(1), &l, &tau, &zero, &zero).unwrap().matrix).is_zero();
        let coeff = StepFunction::constant(l.clone(), int(1)).unwrap();
        let pts = collocation::collocation_margins(n, &int(1), &coeff, &tau, 7..=10);
        let orders = collocation::convergence_orders(&pts);
        let last = pts.last().unwrap().margin;
        if singular {
            assert!(orders.iter().all(|&o| o > 1.0), "n = {n}: orders {orders:?}");
            assert!(last < 1e-3, "n = {n}: {pts:?}");
        } else {
            let exact = solver::uniqueness_margin(&solver::reduce_system(n, &int(1), &l, &tau, &zero, &zero).unwrap()).margin;
            assert!(last > 1e-3 * exact.min(1.0), "n = {n}, L = {l}: {pts:?}");
            assert!(orders.iter().all(|o| o.abs() < 0.5), "n = {n}: orders {orders:?}");
        }
    }
}

#[test]
fn contraction_norm_bounded_by_threshold_ratio() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..20 {
        let n = rng.gen_range(1..=5);
        let eta = minperiod::rational::to_f64(&minperiod::kernels::min_abs_integral(n).unwrap().eta_star);
        let t = rat(rng.gen_range(1..=12), 4);
        let ratio = rat(rng.gen_range(1..=99), 100);
        let l = &ratio / (favard::favard(n) * minperiod::rational::pow(&t, n as u32));
        let tau = StepFunction::random(&mut rng, &t, 8, 64, &Rational::zero(), &t);
        let norm = collocation::contraction_norm(n, &t, &l, &tau, eta, 128);
        assert!(norm <= minperiod::rational::to_f64(&ratio) + 1e-6, "n = {n}: {norm}");
    }
}
