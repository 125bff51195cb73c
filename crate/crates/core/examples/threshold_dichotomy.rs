// Below 1/(K_n T^n) every step deviation gives a uniquely solvable problem;
// at the threshold the witness deviation has an exact kernel.

use minperiod::favard;
use minperiod::rational::{int, rat, Rational};
use minperiod::solver::{self, linalg, StepFunction};
use minperiod::witness;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let one = int(1);
    let zero = Rational::zero();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 1..=4 {
        let l_crit = favard::favard(n).recip();
        let below = &l_crit * rat(9, 10);
        let mut smallest = f64::INFINITY;
        for _ in 0..50 {
            let tau = StepFunction::random(&mut rng, &one, 8, 64, &zero, &one);
            let r = solver::uniqueness_margin(&solver::reduce_system(n, &one, &below, &tau, &zero, &zero)?);
            assert!(r.is_unique());
            smallest = smallest.min(r.margin);
        }
        let w = witness::build_witness(n, &one)?;
        let tau = StepFunction::new(vec![zero.clone(), rat(1, 2), one.clone()], vec![w.tau.first, w.tau.second])?;
        let sys = solver::reduce_system(n, &one, &l_crit, &tau, &zero, &zero)?;
        println!(
            "n = {n}: 50 random τ at L = {below} unique (smallest margin {smallest:.3e}); witness τ at L = {l_crit}: det = {}",
            linalg::determinant(&sys.matrix)
        );
    }

    // y' = 2 y(1/2) - 2 has the constant solution 1 and nothing else
    let tau = StepFunction::constant(rat(1, 2), one.clone())?;
    let s = solver::solve_periodic(1, &one, &int(2), &tau, &int(-2))?;
    println!("y(1/3) = {}", s.eval(&rat(1, 3)).expect("unique"));
    println!("{}", serde_json::to_string(&s.report)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("threshold_dichotomy example failed");
}
