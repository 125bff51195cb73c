// The kernel φ_n and the constant ξ that minimises ∫|φ_n − ξ|.

use minperiod::kernels::{self, KernelPhi};
use minperiod::rational::rat;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let phi = KernelPhi::new(3, 200)?;
    for u in [rat(0, 1), rat(1, 8), rat(1, 4), rat(1, 2)] {
        let exact = phi.eval(&u);
        let series = phi.eval_series(minperiod::rational::to_f64(&u));
        println!("φ_3(2π·{u}) = {}·π^{} ≈ {:.12} (series {:.12})", exact.coeff, exact.pi_power, exact.to_f64(), series);
    }

    for n in 1..=6 {
        let m = kernels::min_abs_integral(n)?;
        let exact = match &m.value_exact {
            Some(v) => format!("{}·π^{}", v.coeff, v.pi_power),
            None => "not rational in π".into(),
        };
        println!(
            "n = {n}: ξ* = {}·π^{}, min = {:.12} [{exact}], K_n(2π)^n = {:.12}",
            m.xi_star.coeff,
            m.xi_star.pi_power,
            m.value,
            minperiod::favard::scaled_favard_f64(n)
        );
    }

    let mut samples = Vec::new();
    KernelPhi::new(2, 64)?.write_samples_csv(5, &mut samples)?;
    print!("{}", String::from_utf8(samples)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("kernel_median example failed");
}
