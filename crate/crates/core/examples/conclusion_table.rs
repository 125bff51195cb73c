// Period and weight thresholds, compared with the published summary.

use minperiod::bounds;
use minperiod::rational::int;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (n, l) in [(1, int(1)), (2, int(32)), (3, int(2)), (8, int(1))] {
        let b = bounds::min_period_bound(n, &l)?;
        println!(
            "n = {n}, L = {l}: {}; α(n) = {:.6}, without deviation T >= {:.6}",
            b.describe(),
            b.alpha_approx.unwrap_or(f64::NAN),
            b.ode_bound_approx.unwrap_or(f64::NAN)
        );
    }
    let rows = bounds::conclusion_table(6)?;
    let mut csv = Vec::new();
    bounds::write_table_csv(&rows, &mut csv)?;
    print!("{}", String::from_utf8(csv)?);
    let flagged: Vec<_> = rows.iter().filter(|r| r.erratum_flag).collect();
    println!("{} rows differ from the printed values", flagged.len());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("conclusion_table example failed");
}
