// Grid collocation as an independent float check of the exact verdicts, and
// the norm of the discretised fixed-point operator.

use minperiod::favard;
use minperiod::kernels;
use minperiod::rational::{self, int, rat};
use minperiod::solver::{collocation, StepFunction};
use minperiod::witness;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let one = int(1);
    for n in 1..=3 {
        let w = witness::build_witness(n, &one)?;
        let tau = StepFunction::new(vec![rat(0, 1), rat(1, 2), one.clone()], vec![w.tau.first, w.tau.second])?;
        let at = StepFunction::constant(w.l_crit.clone(), one.clone())?;
        let below = StepFunction::constant(&w.l_crit * rat(1, 2), one.clone())?;
        let singular = collocation::collocation_margins(n, &one, &at, &tau, 5..=8);
        let regular = collocation::collocation_margins(n, &one, &below, &tau, 5..=8);
        let orders: Vec<String> = collocation::convergence_orders(&singular).iter().map(|o| format!("{o:.2}")).collect();
        println!(
            "n = {n}: margin at threshold {:.2e} -> {:.2e} (orders {}), at half threshold {:.3}",
            singular[0].margin,
            singular[singular.len() - 1].margin,
            orders.join(", "),
            regular[regular.len() - 1].margin
        );

        let eta = rational::to_f64(&kernels::min_abs_integral(n)?.eta_star);
        let l = favard::favard(n).recip() * rat(99, 100);
        println!("      operator norm at L K_n = 0.99: {:.6}", collocation::contraction_norm(n, &one, &l, &tau, eta, 256));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("collocation_crosscheck example failed");
}
