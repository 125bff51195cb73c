// A non-constant periodic solution exactly at the threshold L = 1/(K_n T^n),
// checked in rational arithmetic, and what a tampered copy looks like.

use minperiod::rational::{int, rat};
use minperiod::witness;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (n, t) in [(2, int(1)), (3, rat(5, 2)), (5, rat(1, 3))] {
        let w = witness::build_witness(n, &t)?;
        let report = witness::verify_witness(&w);
        let (amp, _) = w.amplitude();
        println!(
            "n = {n}, T = {t}: L_crit = {}, C = {}, sigma = {}, tau = ({}, {}), amplitude {amp}, verified {}",
            w.l_crit,
            w.c,
            w.sigma,
            w.tau.first,
            w.tau.second,
            report.all_pass()
        );
        assert!(report.all_pass());
    }

    let mut w = witness::build_witness(2, &int(1))?;
    let delta = rat(1, 1000);
    w.c += &delta;
    w.y = w.y.add_constant(&delta);
    let report = witness::verify_witness(&w);
    let f = report.first_failure.expect("tampered witness fails");
    println!("tampered: {:?} fails ({}), discrepancy {}", f.check, f.detail, f.discrepancy);

    let w = witness::build_witness(4, &int(1))?;
    let mut csv = Vec::new();
    w.write_samples_csv(8, &mut csv)?;
    print!("{}", String::from_utf8(csv)?);
    println!("{}", serde_json::to_string(&w.tau)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("extremal_witness example failed");
}
