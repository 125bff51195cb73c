//! Period, Lipschitz and weight thresholds.
//!
//! A non-constant `T`-periodic solution of `x^{(n)}(t) = (Fx)(t)` with `F`
//! Lipschitz (constant `L`, max-norm) forces `L K_n T^n ≥ 1`; the same bound
//! holds for equations with maxima. With weights `p_i` bounding the
//! oscillation of `(Fx)_i / p_i`, every component weight needs
//! `‖p_i‖ ≥ 4` (`n = 1`) or `‖p_i‖ > 4 / (K_{n-1} T^{n-1})` (`n ≥ 2`).
//! All bounds are attained.

use std::io::Write;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::favard::favard;
use crate::rational::{self, Rational};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// Lower bound on `T^n` for given `L`.
    MinPeriod,
    /// Lower bound on `L` for given `T`.
    LipschitzThreshold,
    /// Lower bound on `‖p‖_{L1}` for given `T`.
    WeightThreshold,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundResult {
    pub kind: BoundKind,
    pub n: usize,
    #[serde(rename = "L", with = "rational::serde_opt", skip_serializing_if = "Option::is_none")]
    pub l: Option<Rational>,
    #[serde(rename = "T", with = "rational::serde_opt", skip_serializing_if = "Option::is_none")]
    pub period: Option<Rational>,
    /// Exact threshold: on `T^n`, on `L`, or on `‖p‖` depending on `kind`.
    #[serde(with = "rational::serde_str")]
    pub threshold: Rational,
    pub threshold_approx: f64,
    /// `>` rather than `≥`.
    pub strict: bool,
    /// For `MinPeriod`: the bound on `T` itself, exact when the `n`-th root is rational.
    #[serde(with = "rational::serde_opt", skip_serializing_if = "Option::is_none")]
    pub period_bound: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period_bound_approx: Option<f64>,
    /// `α(n) = K_n^{-1/n}`, so that `T ≥ α(n) / L^{1/n}`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_approx: Option<f64>,
    /// Without deviations the sharp bound is `T ≥ 2π / L^{1/n}`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ode_bound_approx: Option<f64>,
}

impl BoundResult {
    /// One-line human form, e.g. `T >= 4` or `T^3 >= 1/96 (T >= 0.2184...)`.
    pub fn describe(&self) -> String {
        let rel = if self.strict { ">" } else { ">=" };
        match self.kind {
            BoundKind::MinPeriod => {
                if self.n == 1 {
                    return format!("T {rel} {}", self.threshold);
                }
                match &self.period_bound {
                    Some(t) => format!("T^{} {rel} {} (T {rel} {t})", self.n, self.threshold),
                    None => format!(
                        "T^{} {rel} {} (T {rel} {:.12} approx)",
                        self.n,
                        self.threshold,
                        self.period_bound_approx.unwrap_or(f64::NAN)
                    ),
                }
            }
            BoundKind::LipschitzThreshold => format!("L {rel} {}", self.threshold),
            BoundKind::WeightThreshold => format!("||p||_L1 {rel} {}", self.threshold),
        }
    }
}

fn exact_root(r: &Rational, n: u32) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let root = |x: &BigInt| {
        let y = x.nth_root(n);
        (num_traits::pow(y.clone(), n as usize) == *x).then_some(y)
    };
    Some(Rational::new(root(r.numer())?, root(r.denom())?))
}

/// `α(n) = K_n^{-1/n}`.
pub fn alpha(n: usize) -> f64 {
    rational::to_f64(&favard(n)).powf(-1.0 / n as f64)
}

/// Non-constant `T`-periodic solutions require `T^n ≥ 1 / (L K_n)`.
pub fn min_period_bound(n: usize, l: &Rational) -> Result<BoundResult, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("order must be >= 1".into()));
    }
    if !l.is_positive() {
        return Err(Error::InvalidArgument(format!("L must be positive, got {l}")));
    }
    let threshold = (l * favard(n)).recip();
    let lf = rational::to_f64(l);
    Ok(BoundResult {
        kind: BoundKind::MinPeriod,
        n,
        l: Some(l.clone()),
        period: None,
        threshold_approx: rational::to_f64(&threshold),
        period_bound: exact_root(&threshold, n as u32),
        period_bound_approx: Some(rational::to_f64(&threshold).powf(1.0 / n as f64)),
        alpha_approx: Some(alpha(n)),
        ode_bound_approx: Some(2.0 * std::f64::consts::PI / lf.powf(1.0 / n as f64)),
        threshold,
        strict: false,
    })
}

/// Non-constant `T`-periodic solutions require `L ≥ 1 / (K_n T^n)`.
pub fn lipschitz_threshold(n: usize, period: &Rational) -> Result<BoundResult, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("order must be >= 1".into()));
    }
    if !period.is_positive() {
        return Err(Error::InvalidArgument(format!("T must be positive, got {period}")));
    }
    let threshold = (favard(n) * rational::pow(period, n as u32)).recip();
    Ok(BoundResult {
        kind: BoundKind::LipschitzThreshold,
        n,
        l: None,
        period: Some(period.clone()),
        threshold_approx: rational::to_f64(&threshold),
        threshold,
        strict: false,
        period_bound: None,
        period_bound_approx: None,
        alpha_approx: None,
        ode_bound_approx: None,
    })
}

/// Bound on each component weight: `≥ 4` for `n = 1`, `> 4 / (K_{n-1} T^{n-1})` for `n ≥ 2`.
pub fn weight_threshold(n: usize, period: &Rational) -> Result<BoundResult, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("order must be >= 1".into()));
    }
    if !period.is_positive() {
        return Err(Error::InvalidArgument(format!("T must be positive, got {period}")));
    }
    let threshold = if n == 1 {
        rational::int(4)
    } else {
        rational::int(4) / (favard(n - 1) * rational::pow(period, n as u32 - 1))
    };
    Ok(BoundResult {
        kind: BoundKind::WeightThreshold,
        n,
        l: None,
        period: Some(period.clone()),
        threshold_approx: rational::to_f64(&threshold),
        threshold,
        strict: n >= 2,
        period_bound: None,
        period_bound_approx: None,
        alpha_approx: None,
        ode_bound_approx: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// `L_n T^n ≥ …`
    L,
    /// `𝒫_n T^{n-1} > …`
    P,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConclusionRow {
    pub family: Family,
    pub n: usize,
    /// Coefficient of `1/T^n` (family `L`) or `1/T^{n-1}` (family `P`).
    #[serde(with = "rational::serde_str")]
    pub threshold: Rational,
    pub threshold_approx: f64,
    pub strict: bool,
    /// The value as printed in the published summary, where one exists.
    #[serde(with = "rational::serde_opt")]
    pub paper_value: Option<Rational>,
    pub erratum_flag: bool,
}

const PRINTED_L: [(i64, i64); 5] = [(4, 1), (32, 1), (132, 1), (6144, 5), (7680, 1)];
const PRINTED_P: [(i64, i64); 5] = [(4, 1), (16, 1), (128, 1), (768, 1), (24776, 5)];

/// Both threshold families for `n = 1..=n_max` at `T = 1`, compared against
/// the printed values, which are kept verbatim.
pub fn conclusion_table(n_max: usize) -> Result<Vec<ConclusionRow>, Error> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be >= 1".into()));
    }
    let one = rational::int(1);
    let mut rows = Vec::with_capacity(2 * n_max);
    for (family, printed) in [(Family::L, &PRINTED_L), (Family::P, &PRINTED_P)] {
        for n in 1..=n_max {
            let b = match family {
                Family::L => lipschitz_threshold(n, &one)?,
                Family::P => weight_threshold(n, &one)?,
            };
            let paper_value = printed.get(n - 1).map(|&(p, q)| rational::rat(p, q));
            rows.push(ConclusionRow {
                family,
                n,
                erratum_flag: paper_value.as_ref().is_some_and(|v| *v != b.threshold),
                threshold_approx: b.threshold_approx,
                strict: b.strict,
                threshold: b.threshold,
                paper_value,
            });
        }
    }
    Ok(rows)
}

pub fn write_table_csv<W: Write>(rows: &[ConclusionRow], w: W) -> Result<(), Error> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["family", "n", "threshold", "threshold_approx", "strict", "paper_value", "erratum_flag"])?;
    for r in rows {
        out.write_record([
            format!("{:?}", r.family),
            r.n.to_string(),
            r.threshold.to_string(),
            format!("{:.17e}", r.threshold_approx),
            r.strict.to_string(),
            r.paper_value.as_ref().map(|v| v.to_string()).unwrap_or_default(),
            r.erratum_flag.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// `α(n) < α(n+1)`, decided exactly as `K_n^{n+1} > K_{n+1}^n`.
pub fn alpha_increases(n: usize) -> bool {
    let lhs = rational::pow(&favard(n), n as u32 + 1);
    let rhs = rational::pow(&favard(n + 1), n as u32);
    !lhs.is_zero() && lhs > rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::witness;

    #[test]
    fn period_examples() {
        let b = min_period_bound(1, &int(1)).unwrap();
        assert_eq!(b.threshold, int(4));
        assert_eq!(b.describe(), "T >= 4");
        let b = min_period_bound(2, &int(32)).unwrap();
        assert_eq!(b.threshold, int(1));
        assert_eq!(b.period_bound, Some(int(1)));
        let b = min_period_bound(3, &int(2)).unwrap();
        assert_eq!(b.threshold, int(96));
        assert_eq!(b.period_bound, None);
        assert!((b.period_bound_approx.unwrap() - 96f64.cbrt()).abs() < 1e-12);
        assert!(min_period_bound(2, &int(0)).is_err());
        assert!(min_period_bound(2, &int(-3)).is_err());
    }

    #[test]
    fn weight_examples() {
        let b = weight_threshold(2, &int(1)).unwrap();
        assert_eq!((b.threshold, b.strict), (int(16), true));
        let b = weight_threshold(4, &int(1)).unwrap();
        assert_eq!((b.threshold, b.strict), (int(768), true));
        for t in [int(1), rat(7, 3)] {
            let b = weight_threshold(1, &t).unwrap();
            assert_eq!((b.threshold, b.strict), (int(4), false));
        }
        assert_eq!(weight_threshold(3, &int(2)).unwrap().threshold, int(32));
    }

    #[test]
    fn bound_attained_by_witness() {
        for n in 1..=10 {
            for t in [int(1), rat(5, 2), rat(1, 3)] {
                let w = witness::build_witness(n, &t).unwrap();
                let b = min_period_bound(n, &w.l_crit).unwrap();
                assert_eq!(b.threshold, rational::pow(&t, n as u32));
                assert_eq!(b.period_bound, Some(t.clone()));
            }
        }
    }

    #[test]
    fn alpha_monotone() {
        for n in 1..=30 {
            assert!(alpha_increases(n), "n = {n}");
        }
        assert!((alpha(1) - 4.0).abs() < 1e-12);
        // the ratio to 2π approaches 1 like (π/4)^{1/n}
        for n in [12, 20, 30] {
            let r = alpha(n) / (2.0 * std::f64::consts::PI);
            assert!((r - (std::f64::consts::PI / 4.0).powf(1.0 / n as f64)).abs() < 1e-6, "n = {n}");
        }
    }

    #[test]
    fn table_flags_two_rows() {
        let rows = conclusion_table(5).unwrap();
        let flagged: Vec<_> = rows.iter().filter(|r| r.erratum_flag).map(|r| (r.family, r.n, r.threshold.clone())).collect();
        assert_eq!(flagged, vec![(Family::L, 3, int(192)), (Family::P, 5, rat(24576, 5))]);
        let l: Vec<_> = rows.iter().filter(|r| r.family == Family::L).map(|r| r.threshold.clone()).collect();
        assert_eq!(l, vec![int(4), int(32), int(192), rat(6144, 5), int(7680)]);
        let rows = conclusion_table(7).unwrap();
        assert!(rows.iter().filter(|r| r.n > 5).all(|r| r.paper_value.is_none() && !r.erratum_flag));
    }

    #[test]
    fn table_csv() {
        let mut buf = Vec::new();
        write_table_csv(&conclusion_table(5).unwrap(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("family,n,threshold,threshold_approx,strict,paper_value,erratum_flag\n"));
        assert!(text.contains("L,3,192,"));
        assert!(text.contains(",132,true"));
        assert!(text.contains("P,5,24576/5,"));
    }
}
