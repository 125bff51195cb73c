//! The acceptance checks, one function per criterion.
//!
//! Each check is deterministic for a given seed. [`run_all`] runs them on
//! separate threads and returns results ordered by criterion index.

use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{self, Family};
use crate::favard::{self, Route};
use crate::kernels::{self, GreenEval};
use crate::piecewise::PiecewisePolynomial;
use crate::poly::Polynomial;
use crate::rational::{self, int, rat, Rational};
use crate::solver::{self, collocation, linalg, SolveStatus, StepFunction};
use crate::witness;

pub const CRITERIA: usize = 11;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionResult {
    /// `criterion  5 PASS witness-sharpness: …`
    pub fn line(&self) -> String {
        format!("criterion {:>2} {} {}: {}", self.index, if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

pub fn name(index: usize) -> &'static str {
    match index {
        1 => "exact-constants",
        2 => "series-identity",
        3 => "limit",
        4 => "kernel-minimization",
        5 => "witness-sharpness",
        6 => "threshold-dichotomy",
        7 => "contraction-certificate",
        8 => "green-function",
        9 => "weighted-thresholds",
        10 => "conclusion-table",
        11 => "favard-inequality",
        _ => "unknown",
    }
}

fn budget(index: usize) -> Option<Duration> {
    match index {
        1 => Some(Duration::from_secs(1)),
        2 => Some(Duration::from_secs(5)),
        4 | 5 => Some(Duration::from_secs(30)),
        6 => Some(Duration::from_secs(120)),
        _ => None,
    }
}

type Check = Result<String, String>;

pub fn run(index: usize, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let outcome = match index {
        1 => exact_constants(),
        2 => series_identity(),
        3 => limit(),
        4 => kernel_minimization(),
        5 => witness_sharpness(),
        6 => threshold_dichotomy(&mut rng),
        7 => contraction_certificate(&mut rng),
        8 => green_function(),
        9 => weighted_thresholds(&mut rng),
        10 => conclusion_table(),
        11 => favard_inequality(&mut rng),
        _ => Err(format!("no criterion {index}")),
    };
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(b) = budget(index) {
        if elapsed > b {
            passed = false;
            detail = format!("{detail}; exceeded {} s budget", b.as_secs());
        }
    }
    CriterionResult { index, name: name(index), passed, detail, elapsed }
}

/// All criteria, in parallel, ordered by index.
pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    std::thread::scope(|s| {
        let handles: Vec<_> = (1..=CRITERIA).map(|i| s.spawn(move || run(i, seed))).collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread panicked")).collect()
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact_constants() -> Check {
    let tables: Vec<_> = Route::ALL.iter().map(|&r| (r, favard::favard_table(30, r))).collect();
    for n in 1..=30 {
        let reference = tables[0].1.get(n).ok_or(format!("n = {n} missing"))?;
        for (route, t) in &tables[1..] {
            let v = t.get(n).ok_or(format!("n = {n} missing from {route}"))?;
            ensure(v == reference, || format!("n = {n}: {route} gives {v}, {} gives {reference}", tables[0].0))?;
        }
    }
    let printed = [rat(1, 4), rat(1, 32), rat(1, 192), rat(5, 6144), rat(1, 7680), rat(61, 2949120)];
    for (n, p) in (1..).zip(&printed) {
        let v = favard::favard(n);
        ensure(&v == p, || format!("K_{n} = {v}, expected {p}"))?;
    }
    Ok("3 routes agree for n = 1..30; K_1..K_6 match".into())
}

fn series_identity() -> Check {
    let mut worst: f64 = 0.0;
    for n in 1..=8 {
        let s = favard::favard_series_numeric(n, 1e-13).map_err(|e| e.to_string())?;
        let exact = favard::scaled_favard_f64(n);
        let err = (s.value - exact).abs();
        ensure(err < 1e-10, || format!("n = {n}: |series - exact| = {err:e}"))?;
        ensure(err <= s.tail_bound, || format!("n = {n}: error {err:e} exceeds reported bound {:e}", s.tail_bound))?;
        worst = worst.max(err);
    }
    Ok(format!("n = 1..8, max error {worst:.1e} within reported tail bounds"))
}

fn limit() -> Check {
    let v = favard::scaled_favard_f64(12);
    let gap = (v - 4.0 / std::f64::consts::PI).abs();
    ensure(gap < 1e-5, || format!("|K_12 (2π)^12 - 4/π| = {gap:e}"))?;
    Ok(format!("|K_12 (2π)^12 - 4/π| = {gap:.2e}"))
}

fn kernel_minimization() -> Check {
    let mut worst: f64 = 0.0;
    for n in 1..=8 {
        let m = kernels::min_abs_integral(n).map_err(|e| e.to_string())?;
        let err = (m.value - favard::scaled_favard_f64(n)).abs();
        ensure(err < 1e-8, || format!("n = {n}: |min - K_n (2π)^n| = {err:e}"))?;
        worst = worst.max(err);
    }
    let m1 = kernels::min_abs_integral(1).map_err(|e| e.to_string())?;
    ensure(m1.xi_star.coeff.is_zero(), || format!("n = 1: ξ* = {:?}", m1.xi_star))?;
    let half_pi = kernels::PiMultiple { coeff: rat(1, 2), pi_power: 1 };
    ensure(m1.value_exact.as_ref() == Some(&half_pi), || format!("n = 1: value {:?}", m1.value_exact))?;
    Ok(format!("n = 1..8 within {worst:.1e}; n = 1 exactly π/2 at ξ* = 0"))
}

fn witness_sharpness() -> Check {
    let mut count = 0;
    for n in 1..=10 {
        for t in [int(1), rat(5, 2), rat(1, 3)] {
            let w = witness::build_witness(n, &t).map_err(|e| format!("n = {n}, T = {t}: {e}"))?;
            let r = witness::verify_witness(&w);
            ensure(r.all_pass(), || format!("n = {n}, T = {t}: {:?}", r.first_failure))?;
            count += 1;
        }
    }
    Ok(format!("{count} witnesses pass all four exact checks"))
}

fn witness_tau(n: usize, period: &Rational) -> Result<StepFunction, String> {
    let w = witness::build_witness(n, period).map_err(|e| e.to_string())?;
    StepFunction::new(vec![Rational::zero(), period / int(2), period.clone()], vec![w.tau.first, w.tau.second]).map_err(|e| e.to_string())
}

fn threshold_dichotomy(rng: &mut ChaCha8Rng) -> Check {
    let one = int(1);
    let zero = Rational::zero();
    for n in 1..=4 {
        let l_crit = favard::favard(n).recip();
        let below = &l_crit * rat(9, 10);
        for i in 0..200 {
            let tau = StepFunction::random(rng, &one, 8, 64, &zero, &one);
            let sys = solver::reduce_system(n, &one, &below, &tau, &zero, &zero).map_err(|e| e.to_string())?;
            let det = linalg::determinant(&sys.matrix);
            ensure(!det.is_zero(), || format!("n = {n}, instance {i}: singular below threshold"))?;
        }
        let sys = solver::reduce_system(n, &one, &l_crit, &witness_tau(n, &one)?, &zero, &zero).map_err(|e| e.to_string())?;
        let det = linalg::determinant(&sys.matrix);
        ensure(det.is_zero(), || format!("n = {n}: witness determinant {det} at threshold"))?;
    }
    Ok("n = 1..4: 800 random deviations unique at 0.9/K_n; witness determinant 0 at 1/K_n".into())
}

fn contraction_certificate(rng: &mut ChaCha8Rng) -> Check {
    let mut worst_gap = f64::NEG_INFINITY;
    let periods = [rat(1, 2), int(1), rat(5, 2), int(3)];
    let mut etas = Vec::new();
    for n in 1..=4 {
        etas.push(rational::to_f64(&kernels::min_abs_integral(n).map_err(|e| e.to_string())?.eta_star));
    }
    for i in 0..50 {
        let n = rng.gen_range(1..=4);
        let t = periods[rng.gen_range(0..periods.len())].clone();
        let ratio = rat(rng.gen_range(1..=99), 100);
        let l = &ratio / (favard::favard(n) * rational::pow(&t, n as u32));
        let tau = StepFunction::random(rng, &t, 8, 64, &Rational::zero(), &t);
        let norm = collocation::contraction_norm(n, &t, &l, &tau, etas[n - 1], 256);
        let bound = rational::to_f64(&ratio);
        ensure(norm <= bound + 1e-6, || format!("instance {i} (n = {n}, T = {t}): norm {norm} > {bound}"))?;
        worst_gap = worst_gap.max(norm - bound);
    }
    Ok(format!("50 instances, max(norm - L K_n T^n) = {worst_gap:.2e}"))
}

fn green_function() -> Check {
    let f = Polynomial::new(vec![rat(1, 3), int(-2), rat(3, 7)]);
    let mut worst: f64 = 0.0;
    for n in 2..=5 {
        for t in [int(1), rat(5, 2)] {
            let g = GreenEval::new(n, t.clone()).map_err(|e| e.to_string())?;
            let r = kernels::green_residual(&g, &f, 512).map_err(|e| e.to_string())?;
            ensure(r.relative_residual < 1e-6, || format!("n = {n}, T = {t}: residual {:e}", r.relative_residual))?;
            ensure(r.boundary_exact, || format!("n = {n}, T = {t}: boundary conditions fail"))?;
            worst = worst.max(r.relative_residual);
        }
    }
    Ok(format!("n = 2..5, grid 512: max relative residual {worst:.1e}; boundary conditions exact"))
}

fn weighted_thresholds(rng: &mut ChaCha8Rng) -> Check {
    let one = int(1);
    let zero = Rational::zero();
    let mut done = 0;
    while done < 100 {
        let tau = StepFunction::random(rng, &one, 6, 32, &zero, &one);
        let raw = StepFunction::random(rng, &one, 6, 32, &zero, &one);
        if raw.integral().is_zero() {
            continue;
        }
        let p = raw.scale(&(rat(39, 10) / raw.integral()));
        let r = solver::solve_weighted(1, &one, &p, &tau).map_err(|e| e.to_string())?;
        ensure(r.status == SolveStatus::Unique, || format!("instance {done}: {:?}", r.status))?;
        done += 1;
    }
    let (p, tau) = solver::concentration_instance(&zero, &rat(1, 10)).map_err(|e| e.to_string())?;
    let r = solver::solve_weighted(1, &one, &p, &tau).map_err(|e| e.to_string())?;
    ensure(r.status == SolveStatus::NontrivialKernel, || format!("mass 4: {:?}", r.status))?;
    let mut margins = Vec::new();
    for k in 1..=8u32 {
        let eps = rat(1, 1 << k);
        let (p, tau) = solver::concentration_instance(&eps, &rat(1, 10 * (k as i64 + 1))).map_err(|e| e.to_string())?;
        let r = solver::solve_weighted(1, &one, &p, &tau).map_err(|e| e.to_string())?;
        ensure(r.status == SolveStatus::Unique, || format!("mass 4 + 2^-{k}: {:?}", r.status))?;
        margins.push(r.margin);
    }
    ensure(margins.windows(2).all(|w| w[1] < w[0]), || format!("margins not decreasing: {margins:?}"))?;
    Ok(format!(
        "100 instances at mass 3.9 unique; margin {:.2e} -> {:.2e} as mass -> 4, singular at 4",
        margins[0],
        margins[margins.len() - 1]
    ))
}

fn conclusion_table() -> Check {
    let rows = bounds::conclusion_table(5).map_err(|e| e.to_string())?;
    let expect_l = [int(4), int(32), int(192), rat(6144, 5), int(7680)];
    let expect_p = [int(4), int(16), int(128), int(768), rat(24576, 5)];
    for r in &rows {
        let e = match r.family {
            Family::L => &expect_l[r.n - 1],
            Family::P => &expect_p[r.n - 1],
        };
        ensure(&r.threshold == e, || format!("{:?}_{} = {}, expected {e}", r.family, r.n, r.threshold))?;
    }
    let flagged: Vec<String> = rows
        .iter()
        .filter(|r| r.erratum_flag)
        .map(|r| format!("{:?}_{}: {} vs printed {}", r.family, r.n, r.threshold, r.paper_value.as_ref().map(|v| v.to_string()).unwrap_or_default()))
        .collect();
    let expected = ["L_3: 192 vs printed 132", "P_5: 24576/5 vs printed 24776/5"];
    ensure(flagged == expected, || format!("flagged rows {flagged:?}"))?;
    Ok(format!("10 rows reproduced; flagged {}", flagged.join("; ")))
}

/// A random zero-mean step function on `[0, 1]` integrated `n` times.
fn random_admissible(rng: &mut ChaCha8Rng, n: usize) -> (PiecewisePolynomial, Rational) {
    let one = int(1);
    loop {
        let g = StepFunction::random(rng, &one, 8, 64, &int(-1), &one);
        let mean = g.integral();
        let values: Vec<Rational> = g.values().iter().map(|v| v - &mean).collect();
        let sup = values.iter().map(rational::abs).max().expect("non-empty");
        if sup.is_zero() {
            continue;
        }
        let g = StepFunction::new(g.breakpoints().to_vec(), values).expect("same partition");
        let mut x = g.to_piecewise();
        for _ in 0..n {
            x = x.periodic_antiderivative().expect("zero mean");
        }
        return (x, sup);
    }
}

fn grid_abs_max(x: &PiecewisePolynomial, points: usize) -> Rational {
    let mut best = Rational::zero();
    let mut probe = |t: Rational| {
        let v = rational::abs(&x.eval(&t));
        if v > best {
            best = v;
        }
    };
    for k in 0..points {
        probe(rat(k as i64, points as i64));
    }
    for b in x.breakpoints() {
        probe(b.clone());
    }
    best
}

fn favard_inequality(rng: &mut ChaCha8Rng) -> Check {
    let mut closest = Vec::new();
    for n in 1..=5 {
        let k = favard::favard(n);
        let mut largest = Rational::zero();
        for i in 0..500 {
            let (x, sup) = random_admissible(rng, n);
            let m = grid_abs_max(&x, 512);
            let ratio = &m / (&k * &sup);
            ensure(ratio <= int(1), || format!("n = {n}, instance {i}: max|x| / (K_n sup|x^(n)|) = {ratio}"))?;
            if ratio > largest {
                largest = ratio;
            }
        }
        closest.push(format!("{:.6}", rational::to_f64(&largest)));
        let w = witness::build_witness(n, &int(1)).map_err(|e| e.to_string())?;
        let x = w.normalized_extremal();
        let top = x.nth_derivative(n);
        let sup = top.pieces().iter().map(|p| rational::abs(&p.coeff(0))).max().unwrap_or_default();
        let e = x.extrema(&rat(1, 1 << 40));
        let m = if e.max.abs() > e.min.abs() { e.max.abs() } else { e.min.abs() };
        ensure(e.exact && m == &k * &sup, || format!("n = {n}: witness max|x| = {m}, K_n sup|x^(n)| = {}", &k * &sup))?;
    }
    Ok(format!(
        "2500 random functions satisfy the bound (largest ratio per n: {}); witnesses attain equality",
        closest.join(", ")
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_are_ordered_and_named() {
        let r = run(3, 0);
        assert!(r.passed, "{}", r.line());
        assert!(r.line().starts_with("criterion  3 PASS limit: "));
        assert_eq!(name(12), "unknown");
        assert!(!run(12, 0).passed);
    }
}
