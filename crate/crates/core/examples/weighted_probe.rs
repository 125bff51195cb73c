// First-order weighted problems y' = p(t) y(τ(t)): unique below total weight
// 4, singular at 4 for the two-pulse geometry, with the margin closing as the
// weight decreases to 4.

use minperiod::bounds;
use minperiod::rational::{int, rat, Rational};
use minperiod::solver::{self, StepFunction};
use num_traits::Zero;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in 1..=4 {
        println!("{}", bounds::weight_threshold(n, &int(1))?.describe());
    }

    let one = int(1);
    let tau = StepFunction::new(vec![Rational::zero(), rat(1, 2), one.clone()], vec![rat(3, 4), rat(1, 4)])?;
    let p = StepFunction::constant(rat(39, 10), one.clone())?;
    println!("constant p = 39/10: {:?}", solver::solve_weighted(1, &one, &p, &tau)?.status);

    let (p, tau) = solver::concentration_instance(&Rational::zero(), &rat(1, 10))?;
    println!("two pulses, ∫p = {}: {:?}", p.integral(), solver::solve_weighted(1, &one, &p, &tau)?.status);
    for k in 1..=6u32 {
        let eps = rat(1, 1 << k);
        let (p, tau) = solver::concentration_instance(&eps, &rat(1, 10 * (k as i64 + 1)))?;
        let r = solver::solve_weighted(1, &one, &p, &tau)?;
        println!("∫p = {:<8} margin {:.4e} ({:?})", p.integral().to_string(), r.margin, r.status);
    }

    // second order: 4/K_1 = 16 is the bound, 8 is comfortably below it
    let p = StepFunction::constant(int(8), one.clone())?;
    println!("n = 2, p = 8: {:?}", solver::solve_weighted(2, &one, &p, &tau)?.status);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("weighted_probe example failed");
}
