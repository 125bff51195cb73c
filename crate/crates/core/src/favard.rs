//! Favard constants `K_n`.
//!
//! `K_n` is the best constant in `max |x| <= K_n sup |x^{(n)}|` over zero-mean
//! 1-periodic functions. Three exact routes are provided and must agree bit for
//! bit:
//!
//! * closed form through Bernoulli numbers (odd `n`) and Euler numbers (even `n`),
//! * the quadratic recurrence `K_{n+1} = (1/(8(n+1))) Σ_{k=0}^{n} K_k K_{n-k}`,
//! * Taylor coefficients of `sec(t/4) + tan(t/4)`.
//!
//! A floating-point route sums the odd-reciprocal series for `K_n (2π)^n`
//! with a rigorous tail bracket.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::fmt;
use std::io::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::bernoulli;
use crate::rational::{self, Rational};
use crate::series::PowerSeries;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    ClosedForm,
    Recurrence,
    Generating,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::ClosedForm, Route::Recurrence, Route::Generating];

    pub fn name(self) -> &'static str {
        match self {
            Route::ClosedForm => "closed_form",
            Route::Recurrence => "recurrence",
            Route::Generating => "generating",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `K_n` from Bernoulli/Euler numbers.
pub fn favard_closed_form(n: usize) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    if n % 2 == 1 {
        let b = bernoulli::bernoulli_numbers(n + 1);
        let num = rational::from_bigint(BigInt::from(2).pow(n as u32 + 1) - 1) * b[n + 1].abs();
        let den = BigInt::from(2).pow(n as u32 - 1) * rational::factorial(n as u32 + 1);
        num / rational::from_bigint(den)
    } else {
        let e = bernoulli::euler_numbers(n);
        let den = BigInt::from(4).pow(n as u32) * rational::factorial(n as u32);
        Rational::new(e[n].abs(), den)
    }
}

/// Shorthand for the closed form, the route used by the rest of the crate.
pub fn favard(n: usize) -> Rational {
    favard_closed_form(n)
}

fn closed_form_all(n_max: usize) -> Vec<Rational> {
    let b = bernoulli::bernoulli_numbers(n_max + 1);
    let e = bernoulli::euler_numbers(n_max);
    (0..=n_max)
        .map(|n| {
            if n == 0 {
                Rational::one()
            } else if n % 2 == 1 {
                let num = rational::from_bigint(BigInt::from(2).pow(n as u32 + 1) - 1) * b[n + 1].abs();
                num / rational::from_bigint(BigInt::from(2).pow(n as u32 - 1) * rational::factorial(n as u32 + 1))
            } else {
                Rational::new(e[n].abs(), BigInt::from(4).pow(n as u32) * rational::factorial(n as u32))
            }
        })
        .collect()
}

fn recurrence_all(n_max: usize) -> Vec<Rational> {
    let mut k = vec![Rational::one(), rational::rat(1, 4)];
    for n in 1..n_max {
        let s: Rational = (0..=n).map(|j| &k[j] * &k[n - j]).sum();
        k.push(s / rational::int(8 * (n as i64 + 1)));
    }
    k.truncate(n_max + 1);
    k
}

fn generating_all(n_max: usize) -> Vec<Rational> {
    let order = n_max + 1;
    let sec = PowerSeries::cos(order).recip();
    let tan = &PowerSeries::sin(order) * &sec;
    let g = (&sec + &tan).dilate(&rational::rat(1, 4));
    g.coeffs().to_vec()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FavardEntry {
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    pub routes_agreeing: BTreeSet<Route>,
}

/// `n -> K_n` for `n = 0..=n_max`, with the routes that produced each value.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FavardTable {
    pub entries: BTreeMap<usize, FavardEntry>,
}

pub fn favard_table(n_max: usize, route: Route) -> FavardTable {
    let values = match route {
        Route::ClosedForm => closed_form_all(n_max),
        Route::Recurrence => recurrence_all(n_max),
        Route::Generating => generating_all(n_max),
    };
    FavardTable {
        entries: values
            .into_iter()
            .enumerate()
            .map(|(n, value)| (n, FavardEntry { value, routes_agreeing: BTreeSet::from([route]) }))
            .collect(),
    }
}

/// All three routes, merged; fails on the first disagreement.
pub fn favard_table_checked(n_max: usize) -> Result<FavardTable, Error> {
    Route::ALL
        .iter()
        .map(|&r| favard_table(n_max, r))
        .try_fold(FavardTable::default(), |acc, t| acc.merge(&t))
}

impl FavardTable {
    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.entries.get(&n).map(|e| &e.value)
    }

    /// Union of two tables. Shared indices must hold identical values.
    pub fn merge(mut self, other: &FavardTable) -> Result<FavardTable, Error> {
        for (n, e) in &other.entries {
            match self.entries.get_mut(n) {
                Some(mine) if mine.value != e.value => {
                    return Err(Error::RouteDisagreement {
                        n: *n,
                        detail: format!(
                            "{:?} gives {} but {:?} gives {}",
                            mine.routes_agreeing, mine.value, e.routes_agreeing, e.value
                        ),
                    });
                }
                Some(mine) => mine.routes_agreeing.extend(e.routes_agreeing.iter().copied()),
                None => {
                    self.entries.insert(*n, e.clone());
                }
            }
        }
        Ok(self)
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), Error> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["n", "K_n", "K_n_float", "routes"])?;
        for (n, e) in &self.entries {
            let routes: Vec<&str> = e.routes_agreeing.iter().map(|r| r.name()).collect();
            out.write_record([
                n.to_string(),
                e.value.to_string(),
                format!("{:e}", rational::to_f64(&e.value)),
                routes.join(";"),
            ])?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(n, e)| {
                serde_json::json!({
                    "n": n,
                    "K_n": e.value.to_string(),
                    "K_n_float": rational::to_f64(&e.value),
                    "routes": e.routes_agreeing.iter().map(|r| r.name()).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

/// Floating-point evaluation of `K_n (2π)^n` by its odd-reciprocal series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesApprox {
    pub n: usize,
    pub value: f64,
    pub terms_used: usize,
    /// Upper bound on `|value - K_n (2π)^n|`.
    pub tail_bound: f64,
}

/// Sums `(4/π) Σ_k (-1)^{(n+1)(k+1)} / (2k-1)^{n+1}`.
///
/// The omitted tail is bracketed rather than dropped. For odd `n` all terms
/// are positive and integral comparison gives
/// `∫_{K+1}^∞ f <= Σ_{k>K} f(k) <= ∫_K^∞ f` with `f(x) = (2x-1)^{-(n+1)}`;
/// for even `n` the tail alternates and lies between `f(K+1) - f(K+2)` and
/// `f(K+1)` in absolute value. The midpoint of the bracket is added to the
/// partial sum and half its width is the reported bound, together with a
/// rounding allowance for the summation.
pub fn favard_series_numeric(n: usize, rel_tol: f64) -> Result<SeriesApprox, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("series route needs n >= 1".into()));
    }
    if rel_tol.is_nan() || rel_tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("rel_tol must be positive, got {rel_tol}")));
    }
    let p = (n + 1) as i32;
    let f = |k: f64| (2.0 * k - 1.0).powi(-p);
    let tail_int = |x: f64| (2.0 * x - 1.0).powi(-(n as i32)) / (2.0 * n as f64);
    let alternating = n.is_multiple_of(2);
    let half_width = |k: f64| {
        if alternating {
            f(k + 2.0) / 2.0
        } else {
            (tail_int(k) - tail_int(k + 1.0)) / 2.0
        }
    };
    // The value is at least (4/π)(1 - 3^{-(n+1)}) >= 1.
    let scale = 4.0 / PI;
    let mut terms = 1usize;
    while scale * half_width(terms as f64) > rel_tol {
        terms *= 2;
    }
    let (mut lo, mut hi) = (terms / 2, terms);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if scale * half_width(mid as f64) > rel_tol {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let terms = hi.max(1);

    // Neumaier-compensated, smallest terms first.
    let (mut partial, mut carry) = (0.0f64, 0.0f64);
    for k in (1..=terms).rev() {
        let sign = if alternating && k % 2 == 0 { -1.0 } else { 1.0 };
        let term = sign * f(k as f64);
        let t = partial + term;
        carry += if partial.abs() >= term.abs() { (partial - t) + term } else { (term - t) + partial };
        partial = t;
    }
    partial += carry;
    let kf = terms as f64;
    let tail_mid = if alternating {
        let s = if (terms + 1) % 2 == 0 { -1.0 } else { 1.0 };
        s * (f(kf + 1.0) - f(kf + 2.0) / 2.0)
    } else {
        (tail_int(kf) + tail_int(kf + 1.0)) / 2.0
    };
    let value = scale * (partial + tail_mid);
    // Each term carries about (n + 1) roundings from `powi`.
    let rounding = (n as f64 + 8.0) * f64::EPSILON * value.abs();
    Ok(SeriesApprox { n, value, terms_used: terms, tail_bound: scale * half_width(kf) + rounding })
}

/// `K_n (2π)^n` as a float, from the exact constant.
pub fn scaled_favard_f64(n: usize) -> f64 {
    rational::to_f64(&favard(n)) * (2.0 * PI).powi(n as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn closed_form_examples() {
        assert_eq!(favard_closed_form(1), rat(1, 4));
        assert_eq!(favard_closed_form(4), rat(5, 6144));
        assert_eq!(favard_closed_form(6), rat(61, 2949120));
        assert_eq!(favard_closed_form(0), int(1));
    }

    #[test]
    fn tabulated_values() {
        let expect = [rat(1, 4), rat(1, 32), rat(1, 192), rat(5, 6144), rat(1, 7680), rat(61, 2949120)];
        for route in Route::ALL {
            let t = favard_table(6, route);
            for (i, v) in expect.iter().enumerate() {
                assert_eq!(t.get(i + 1), Some(v), "{route} n = {}", i + 1);
            }
            assert_eq!(t.get(0), Some(&int(1)));
        }
    }

    #[test]
    fn one_recurrence_step() {
        // K_2 = (K_0 K_1 + K_1 K_0) / 16
        let k2 = (rat(1, 4) + rat(1, 4)) / int(16);
        assert_eq!(k2, rat(1, 32));
        assert_eq!(favard_table(2, Route::Recurrence).get(2), Some(&k2));
    }

    #[test]
    fn generating_coefficients() {
        let t = favard_table(5, Route::Generating);
        // tan x = x + x^3/3 + 2x^5/15 with x = t/4
        assert_eq!(t.get(3), Some(&(rat(1, 3) * rat(1, 64))));
        assert_eq!(t.get(5), Some(&(rat(2, 15) * rat(1, 1024))));
    }

    #[test]
    fn routes_agree_to_30() {
        let t = favard_table_checked(30).unwrap();
        for e in t.entries.values() {
            assert_eq!(e.routes_agreeing.len(), 3);
        }
    }

    #[test]
    fn disagreement_is_reported() {
        let a = favard_table(3, Route::ClosedForm);
        let mut b = favard_table(3, Route::Recurrence);
        b.entries.get_mut(&2).unwrap().value = rat(1, 31);
        match a.merge(&b) {
            Err(Error::RouteDisagreement { n, .. }) => assert_eq!(n, 2),
            other => panic!("expected disagreement, got {other:?}"),
        }
    }

    #[test]
    fn series_known_values() {
        let s1 = favard_series_numeric(1, 1e-12).unwrap();
        assert!((s1.value - PI / 2.0).abs() < 1e-11);
        let s2 = favard_series_numeric(2, 1e-12).unwrap();
        assert!((s2.value - PI * PI / 8.0).abs() < 1e-11);
        let s12 = favard_series_numeric(12, 1e-12).unwrap();
        assert!((s12.value - 4.0 / PI).abs() < 1e-5);
    }

    #[test]
    fn series_tail_bound_is_honest() {
        for n in 1..=10 {
            for tol in [1e-4, 1e-7, 1e-10] {
                let s = favard_series_numeric(n, tol).unwrap();
                let exact = scaled_favard_f64(n);
                assert!((s.value - exact).abs() <= s.tail_bound + 1e-12, "n = {n}, tol = {tol}");
                assert!(s.tail_bound <= tol * s.value * 1.01, "n = {n}");
            }
        }
    }

    #[test]
    fn series_rejects_bad_input() {
        assert!(favard_series_numeric(0, 1e-3).is_err());
        assert!(favard_series_numeric(3, 0.0).is_err());
    }

    #[test]
    fn convergence_to_four_over_pi() {
        for n in 4..=30 {
            let gap = (scaled_favard_f64(n) - 4.0 / PI).abs();
            // Past n ~ 28 the gap is below double-precision resolution.
            let slack = 16.0 * f64::EPSILON;
            assert!(gap <= 4.0 / PI * 1.2 * 3f64.powi(-(n as i32 + 1)) + slack, "n = {n}");
        }
    }

    #[test]
    fn csv_export() {
        let t = favard_table_checked(2).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some("n,K_n,K_n_float,routes"));
        assert_eq!(lines.next(), Some("0,1,1e0,closed_form;recurrence;generating"));
        assert!(lines.next().unwrap().starts_with("1,1/4,"));
    }
}
