// The Green function of x^{(n)} = f with x(0) = x(T) = 0: the normalisation
// T^{n-1}/n! reproduces f exactly, T^n/n! is off by a factor T.

use minperiod::kernels::{self, GreenEval};
use minperiod::poly::Polynomial;
use minperiod::rational::{int, rat};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = Polynomial::new(vec![int(1), int(-3), rat(1, 2)]);
    for n in 2..=5 {
        let t = rat(5, 2);
        let g = GreenEval::new(n, t.clone())?;
        let r = kernels::green_residual(&g, &f, 128)?;
        let printed = GreenEval::with_scale(n, t.clone(), kernels::green_scale_printed(n, &t))?;
        let rp = kernels::green_residual(&printed, &f, 128)?;
        println!(
            "n = {n}, T = {t}: residual {:.1e} (boundary exact {}), with T^n/n! residual {:.3}",
            r.relative_residual, r.boundary_exact, rp.relative_residual
        );
    }
    let g = GreenEval::new(3, int(1))?;
    println!("u = {}", g.solve(&f));
    println!("G(1/2, 1/4) = {}", g.eval(&rat(1, 2), &rat(1, 4))?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("green_residual example failed");
}
