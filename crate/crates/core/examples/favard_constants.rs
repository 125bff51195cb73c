// Favard constants by three independent routes, and the alternating series
// they sum.

use minperiod::favard::{self, Route};
use minperiod::rational;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let table = favard::favard_table_checked(8)?;
    for (n, entry) in &table.entries {
        println!("K_{n:<2} = {:<14} agreeing routes: {}", entry.value.to_string(), entry.routes_agreeing.len());
    }

    // each route on its own, far past the printed range
    let k30: Vec<_> = Route::ALL.iter().map(|&r| favard::favard_table(30, r).get(30).cloned()).collect();
    assert!(k30.windows(2).all(|w| w[0] == w[1]));
    println!("K_30 = {}", k30[0].as_ref().expect("computed"));

    for n in [1, 4, 8] {
        let s = favard::favard_series_numeric(n, 1e-12)?;
        let exact = favard::scaled_favard_f64(n);
        println!(
            "n = {n}: series {:.15} with {} terms (bound {:.1e}), exact {:.15}",
            s.value, s.terms_used, s.tail_bound, exact
        );
    }
    println!("K_12 (2π)^12 = {:.12}, 4/π = {:.12}", favard::scaled_favard_f64(12), 4.0 / std::f64::consts::PI);

    let mut csv = Vec::new();
    table.write_csv(&mut csv)?;
    print!("{}", String::from_utf8(csv)?);
    println!("K_6 as float: {:e}", rational::to_f64(&favard::favard(6)));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("favard_constants example failed");
}
