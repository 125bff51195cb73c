//! The convolution kernel `φ_n`, its best constant shift, and the Green
//! function of the periodic auxiliary problem.
//!
//! `φ_n(t) = (1/π) Σ_{k>=1} k^{-n} cos(k t - nπ/2)` is evaluated through the
//! Fourier expansion of the periodic Bernoulli functions,
//!
//! ```text
//! φ_n(2πu) = -(2π)^{n-1} ℬ_n(u) / n!,
//! ```
//!
//! so every value is a rational multiple of a power of π. [`PiMultiple`]
//! keeps the two parts separate. The truncated series is kept as an
//! independent evaluator and the two are cross-checked in the tests.
//!
//! Substituting `s = 2πu` turns the shift minimization into
//! `min_ξ ∫_0^{2π} |φ_n - ξ| = (2π)^n / n! · min_η ∫_0^1 |B_n(u) - η| du`
//! with `ξ = -(2π)^{n-1} η / n!`; the minimizing `η` is a median of `B_n`.

use std::f64::consts::PI;
use std::io::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bernoulli;
use crate::piecewise::PiecewisePolynomial;
use crate::poly::Polynomial;
use crate::rational::{self, Rational};
use crate::Error;

/// `coeff · π^pi_power`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiMultiple {
    #[serde(with = "rational::serde_str")]
    pub coeff: Rational,
    pub pi_power: u32,
}

impl PiMultiple {
    pub fn to_f64(&self) -> f64 {
        rational::to_f64(&self.coeff) * PI.powi(self.pi_power as i32)
    }
}

/// `-(2^{n-1} / n!)`: the factor taking `ℬ_n(u)` to the π-coefficient of `φ_n(2πu)`.
fn phi_factor(n: usize) -> Rational {
    -Rational::new(BigInt::from(2).pow(n as u32 - 1), rational::factorial(n as u32))
}

/// `φ_n(2πu) / π^{n-1}` as an exact rational, right-continuous at `u = 0`.
pub fn phi_eval(n: usize, u: &Rational) -> Result<PiMultiple, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("kernel index must be >= 1".into()));
    }
    if u.is_negative() || u >= &Rational::one() {
        return Err(Error::InvalidArgument(format!("u = {u} outside [0, 1)")));
    }
    Ok(PiMultiple {
        coeff: phi_factor(n) * bernoulli::bernoulli_polynomial(n).eval(u),
        pi_power: n as u32 - 1,
    })
}

/// Truncated Fourier series `(1/π) Σ_{k=1}^{terms} k^{-n} cos(k t - nπ/2)`.
pub fn phi_series(n: usize, t: f64, terms: usize) -> f64 {
    let shift = n as f64 * PI / 2.0;
    let s: f64 = (1..=terms)
        .rev()
        .map(|k| {
            let k = k as f64;
            k.powi(-(n as i32)) * (k * t - shift).cos()
        })
        .sum();
    s / PI
}

/// Bound on the omitted part of [`phi_series`] for `n >= 2`:
/// `(1/π) Σ_{k>K} k^{-n} <= (1/π) K^{1-n} / (n-1)`.
pub fn phi_series_tail(n: usize, terms: usize) -> f64 {
    assert!(n >= 2, "tail bound needs absolute convergence");
    (terms as f64).powi(1 - n as i32) / ((n - 1) as f64) / PI
}

/// `φ_n` on one period in the coordinate `u = t / (2π)`.
#[derive(Clone, Debug)]
pub struct KernelPhi {
    pub n: usize,
    /// `φ_n(2πu) / π^{n-1}` as a piecewise polynomial in `u`.
    pub closed_form: PiecewisePolynomial,
    pub series_truncation: usize,
}

impl KernelPhi {
    pub fn new(n: usize, series_truncation: usize) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidArgument("kernel index must be >= 1".into()));
        }
        let closed_form = bernoulli::periodic_bernoulli(n, Rational::one()).scale(&phi_factor(n));
        Ok(KernelPhi { n, closed_form, series_truncation })
    }

    pub fn eval(&self, u: &Rational) -> PiMultiple {
        PiMultiple { coeff: self.closed_form.eval(u), pi_power: self.n as u32 - 1 }
    }

    pub fn eval_series(&self, u: f64) -> f64 {
        phi_series(self.n, 2.0 * PI * u, self.series_truncation)
    }

    /// `∫_0^{2π} φ_n(s) ds / π^n`; zero for every `n`.
    pub fn period_integral_coeff(&self) -> Rational {
        // ds = 2π du
        self.closed_form.period_integral() * rational::int(2)
    }

    /// CSV rows `u, phi_n_coeff, pi_power, float_value` at `u = k / samples`.
    pub fn write_samples_csv<W: Write>(&self, samples: usize, w: W) -> Result<(), Error> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["u", "phi_n_coeff", "pi_power", "float_value"])?;
        for k in 0..samples {
            let u = rational::rat(k as i64, samples as i64);
            let v = self.eval(&u);
            out.write_record([u.to_string(), v.coeff.to_string(), v.pi_power.to_string(), format!("{:.17e}", v.to_f64())])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Best constant shift for `∫_0^{2π} |φ_n(s) - ξ| ds`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MedianSplit {
    pub n: usize,
    /// The minimizing shift `ξ*`.
    pub xi_star: PiMultiple,
    /// `ξ*` expressed as a level of `B_n`: `ξ* = -(2π)^{n-1} η* / n!`.
    #[serde(with = "rational::serde_str")]
    pub eta_star: Rational,
    /// `min_ξ ∫_0^{2π} |φ_n - ξ|`.
    pub value: f64,
    /// Exact value when the median and every root were found exactly.
    pub value_exact: Option<PiMultiple>,
    /// Bound on the error of `value` coming from root enclosures and the
    /// bracketing of `η*`.
    pub error_bound: f64,
}

const ROOT_TOL_EXP: i32 = 40;

fn root_tol() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2).pow(ROOT_TOL_EXP as u32))
}

/// `∫_0^1 |B_n(u) - η| du` with an error bound.
pub fn bernoulli_abs_deviation(n: usize, eta: &Rational) -> (Rational, Rational) {
    bernoulli::periodic_bernoulli(n, Rational::one()).abs_deviation_integral(eta, &root_tol())
}

/// `∫_0^{2π} |φ_n(s) - ξ| ds` at `ξ = -(2π)^{n-1} η / n!`.
pub fn abs_deviation_integral(n: usize, eta: &Rational) -> f64 {
    let (v, _) = bernoulli_abs_deviation(n, eta);
    rational::to_f64(&v) * (2.0 * PI).powi(n as i32) / rational::to_f64(&rational::from_bigint(rational::factorial(n as u32)))
}

/// Lebesgue measure (in `u`, so out of 1) of `{u: B_n(u) <= η}`, i.e. of
/// `{s: φ_n(s) >= ξ}` divided by `2π`.
pub fn bernoulli_sublevel(n: usize, eta: &Rational) -> (Rational, Rational) {
    bernoulli::periodic_bernoulli(n, Rational::one()).sublevel_measure(eta, &root_tol())
}

/// Solves `min_ξ ∫_0^{2π} |φ_n(s) - ξ| ds`.
///
/// The minimizer is the median of `φ_n`, found by bisection on the measure of
/// the sublevel set computed from exact root isolation. At each step the
/// simplest rational in the current bracket is tried as an exact median;
/// when it succeeds the value is exact.
pub fn min_abs_integral(n: usize) -> Result<MedianSplit, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("kernel index must be >= 1".into()));
    }
    let f = bernoulli::periodic_bernoulli(n, Rational::one());
    let tol = root_tol();
    let half = rational::rat(1, 2);
    let ext = f.extrema(&tol);
    let (mut lo, mut hi) = (ext.min.clone(), ext.max.clone());
    let stop = Rational::new(BigInt::one(), BigInt::from(10).pow(15));
    let mut exact_eta = None;
    for _ in 0..200 {
        let candidate = rational::simplest_between(&lo, &hi);
        let (m, err) = f.sublevel_measure(&candidate, &tol);
        if err.is_zero() && m == half {
            exact_eta = Some(candidate);
            break;
        }
        if &hi - &lo <= stop {
            break;
        }
        let mid = (&lo + &hi) / rational::int(2);
        let (m, _) = f.sublevel_measure(&mid, &tol);
        if m < half {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let eta = exact_eta.clone().unwrap_or_else(|| (&lo + &hi) / rational::int(2));
    let (integral, err) = f.abs_deviation_integral(&eta, &tol);
    let nfact = rational::from_bigint(rational::factorial(n as u32));
    // (2π)^n / n! · I = (2^n / n!) I · π^n
    let coeff = &integral * rational::from_bigint(BigInt::from(2).pow(n as u32)) / &nfact;
    let value = rational::to_f64(&coeff) * PI.powi(n as i32);
    let pi_scale = (2.0 * PI).powi(n as i32) / rational::to_f64(&nfact);
    // The objective is flat to first order at the median; an η off by δ costs
    // at most 2|δ| · (measure imbalance) <= 2|δ|.
    let eta_err = if exact_eta.is_some() { 0.0 } else { rational::to_f64(&(&hi - &lo)) };
    let error_bound = pi_scale * (rational::to_f64(&err) + 2.0 * eta_err);
    let exact = exact_eta.is_some() && err.is_zero();
    Ok(MedianSplit {
        n,
        xi_star: PiMultiple { coeff: phi_factor(n) * &eta, pi_power: n as u32 - 1 },
        eta_star: eta,
        value,
        value_exact: exact.then_some(PiMultiple { coeff, pi_power: n as u32 }),
        error_bound,
    })
}

/// Green function of `x^{(n)} = f` on `[0, T]` with `x(0) = x(T) = 0` and
/// `x^{(i)}(0) = x^{(i)}(T)` for `i = 1..n-2`:
///
/// ```text
/// G(t, s) = scale · (B_n(t/T) - B_n(0) - ℬ_n((t-s)/T) + B_n(1 - s/T)),
/// ```
///
/// with `scale = T^{n-1} / n!`.
#[derive(Clone, Debug)]
pub struct GreenEval {
    pub n: usize,
    pub period: Rational,
    pub scale: Rational,
    bn: Polynomial,
}

/// `T^{n-1} / n!`, the normalization that makes `∫ G f` an n-fold antiderivative.
pub fn green_scale(n: usize, period: &Rational) -> Rational {
    rational::pow(period, n as u32 - 1) / rational::from_bigint(rational::factorial(n as u32))
}

/// `T^n / n!`, the prefactor as printed in the source of the representation.
/// Off by a factor of `T`; kept so the discrepancy can be demonstrated.
pub fn green_scale_printed(n: usize, period: &Rational) -> Rational {
    rational::pow(period, n as u32) / rational::from_bigint(rational::factorial(n as u32))
}

impl GreenEval {
    pub fn new(n: usize, period: Rational) -> Result<Self, Error> {
        let scale = green_scale(n, &period);
        GreenEval::with_scale(n, period, scale)
    }

    pub fn with_scale(n: usize, period: Rational, scale: Rational) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::InvalidArgument("Green function needs n >= 2".into()));
        }
        if !period.is_positive() {
            return Err(Error::InvalidArgument(format!("period must be positive, got {period}")));
        }
        Ok(GreenEval { n, period, scale, bn: bernoulli::bernoulli_polynomial(n) })
    }

    pub fn eval(&self, t: &Rational, s: &Rational) -> Result<Rational, Error> {
        let zero = Rational::zero();
        if t < &zero || t > &self.period || s < &zero || s > &self.period {
            return Err(Error::InvalidArgument(format!("(t, s) = ({t}, {s}) outside [0, {}]^2", self.period)));
        }
        let tt = t / &self.period;
        let ss = s / &self.period;
        let v = self.bn.eval(&tt) - self.bn.coeff(0) - self.bn.eval(&rational::frac(&(&tt - &ss)))
            + self.bn.eval(&(Rational::one() - &ss));
        Ok(&self.scale * v)
    }

    /// `u(t) = ∫_0^T G(t, s) f(s) ds` as an exact polynomial in `t` on `[0, T]`.
    pub fn solve(&self, f: &Polynomial) -> Polynomial {
        let period = &self.period;
        let inv = period.recip();
        let zero = Rational::zero();
        let one = Rational::one();
        let total = f.integrate(&zero, period);
        // (B_n(t/T) - B_n(0)) ∫ f
        let mut u = (&self.bn.compose_affine(&inv, &zero) - &Polynomial::constant(self.bn.coeff(0))).scale(&total);
        // ∫_0^T B_n(1 - s/T) f(s) ds
        let reflected = &self.bn.compose_affine(&-&inv, &one) * f;
        u = &u + &Polynomial::constant(reflected.integrate(&zero, period));
        // - ∫_0^t B_n((t-s)/T) f(s) ds - ∫_t^T B_n((t-s)/T + 1) f(s) ds
        let near = convolve_segment(&self.bn.compose_affine(&inv, &zero), f, Segment::ZeroToT);
        let far = convolve_segment(&self.bn.compose_affine(&inv, &one), f, Segment::TToPeriod(period.clone()));
        u = &(&u - &near) - &far;
        u.scale(&self.scale)
    }
}

/// Residual of `u = ∫ G(·, s) f(s) ds` sampled on a uniform grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GreenResidual {
    pub n: usize,
    #[serde(rename = "T", with = "rational::serde_str")]
    pub period: Rational,
    pub grid: usize,
    /// `max |D^n u - f| / max |f|` over interior grid points.
    pub relative_residual: f64,
    /// `u(0) = u(T) = 0` and `u^{(i)}(0) = u^{(i)}(T)` for `i = 1..n-2`, exactly.
    pub boundary_exact: bool,
    /// Grid values agree with the symbolic solution.
    pub matches_symbolic: bool,
}

/// Interpolatory weights on `d + 1` equispaced nodes of `[0, 1]`.
fn quadrature_weights(d: usize) -> Vec<Rational> {
    let nodes: Vec<Rational> = (0..=d).map(|j| rational::rat(j as i64, d.max(1) as i64)).collect();
    let a: Vec<Vec<Rational>> = (0..=d).map(|k| nodes.iter().map(|x| rational::pow(x, k as u32)).collect()).collect();
    let b: Vec<Rational> = (0..=d).map(|k| rational::rat(1, k as i64 + 1)).collect();
    crate::solver::linalg::solve(&a, &b).expect("Vandermonde is invertible")
}

/// Weights `w` with `Σ w_j p(x_j) = p^{(order)}(0)` for every polynomial of
/// degree `< offsets.len()`, unit spacing.
fn stencil(offsets: &[i64], order: usize) -> Vec<Rational> {
    let m = offsets.len();
    let a: Vec<Vec<Rational>> = (0..m).map(|k| offsets.iter().map(|&x| rational::pow(&rational::int(x), k as u32)).collect()).collect();
    let b: Vec<Rational> = (0..m)
        .map(|k| if k == order { rational::from_bigint(rational::factorial(order as u32)) } else { Rational::zero() })
        .collect();
    crate::solver::linalg::solve(&a, &b).expect("distinct offsets")
}

/// Evaluates `u` at `grid + 1` nodes through `G` alone (exact interpolatory
/// quadrature on each side of the diagonal) and differentiates with exact
/// finite-difference stencils.
pub fn green_residual(g: &GreenEval, f: &Polynomial, grid: usize) -> Result<GreenResidual, Error> {
    if grid < 2 {
        return Err(Error::InvalidArgument("grid must have at least 2 cells".into()));
    }
    let n = g.n;
    let deg = n + f.degree().unwrap_or(0);
    let w = quadrature_weights(deg);
    let period = &g.period;
    let h = period / rational::int(grid as i64);
    let integrate = |t: &Rational, a: &Rational, b: &Rational| -> Result<Rational, Error> {
        let mut acc = Rational::zero();
        if a == b {
            return Ok(acc);
        }
        for (j, wj) in w.iter().enumerate() {
            let s = a + (b - a) * rational::rat(j as i64, deg as i64);
            acc += wj * g.eval(t, &s)? * f.eval(&s);
        }
        Ok(acc * (b - a))
    };
    let zero = Rational::zero();
    let mut u = Vec::with_capacity(grid + 1);
    for k in 0..=grid {
        let t = &h * rational::int(k as i64);
        u.push(integrate(&t, &zero, &t)? + integrate(&t, &t, period)?);
    }

    let symbolic = g.solve(f);
    let matches_symbolic = u.iter().enumerate().all(|(k, v)| *v == symbolic.eval(&(&h * rational::int(k as i64))));

    let r = deg.div_ceil(2).max(n.div_ceil(2)) as i64;
    let central: Vec<i64> = (-r..=r).collect();
    let cw = stencil(&central, n);
    let hn = rational::pow(&h, n as u32);
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for k in r..=(grid as i64 - r) {
        let d: Rational = central.iter().zip(&cw).map(|(o, c)| c * &u[(k + o) as usize]).sum::<Rational>() / &hn;
        let fk = f.eval(&(&h * rational::int(k)));
        worst = worst.max(rational::to_f64(&(d - &fk)).abs());
        scale = scale.max(rational::to_f64(&fk).abs());
    }

    let one_sided: Vec<i64> = (0..=deg as i64).collect();
    let mut boundary_exact = u[0].is_zero() && u[grid].is_zero();
    for i in 1..n.saturating_sub(1) {
        let sw = stencil(&one_sided, i);
        let back: Vec<i64> = one_sided.iter().map(|o| -o).collect();
        let bw = stencil(&back, i);
        let left: Rational = one_sided.iter().zip(&sw).map(|(o, c)| c * &u[*o as usize]).sum();
        let right: Rational = back.iter().zip(&bw).map(|(o, c)| c * &u[(grid as i64 + o) as usize]).sum();
        boundary_exact &= left == right;
    }
    Ok(GreenResidual {
        n,
        period: period.clone(),
        grid,
        relative_residual: if scale > 0.0 { worst / scale } else { worst },
        boundary_exact,
        matches_symbolic,
    })
}

enum Segment {
    ZeroToT,
    TToPeriod(Rational),
}

/// `∫ p(t - s) f(s) ds` over `s ∈ [0, t]` or `[t, T]`, as a polynomial in `t`.
fn convolve_segment(p: &Polynomial, f: &Polynomial, seg: Segment) -> Polynomial {
    // p(t - s) = Σ_j t^j q_j(s),  q_j(s) = Σ_{k>=j} p_k C(k, j) (-s)^{k-j}
    let deg = p.degree().unwrap_or(0);
    let mut out = Polynomial::zero();
    for j in 0..=deg {
        let mut q = vec![Rational::zero(); deg - j + 1];
        for k in j..=deg {
            let c = p.coeff(k) * rational::from_bigint(rational::binomial(k as u32, j as u32));
            q[k - j] = if (k - j) % 2 == 0 { c } else { -c };
        }
        let anti = (&Polynomial::new(q) * f).antiderivative();
        let integral = match &seg {
            // Q(t) - Q(0), and Q(0) = 0
            Segment::ZeroToT => anti.clone(),
            Segment::TToPeriod(period) => &Polynomial::constant(anti.eval(period)) - &anti,
        };
        out = &out + &(&Polynomial::monomial(Rational::one(), j) * &integral);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::favard;
    use crate::rational::{int, rat};

    #[test]
    fn phi_examples() {
        assert_eq!(phi_eval(1, &rat(1, 4)).unwrap(), PiMultiple { coeff: rat(1, 4), pi_power: 0 });
        // φ_2(0) = -π/6
        assert_eq!(phi_eval(2, &int(0)).unwrap(), PiMultiple { coeff: rat(-1, 6), pi_power: 1 });
        assert_eq!(phi_eval(3, &int(0)).unwrap().coeff, int(0));
        assert!(phi_eval(0, &int(0)).is_err());
        assert!(phi_eval(2, &int(1)).is_err());
    }

    #[test]
    fn phi_matches_brute_force_series() {
        // φ_2(0) by a million-term sum
        let s = phi_series(2, 0.0, 1_000_000);
        assert!((s + PI / 6.0).abs() < 1e-6);
        // φ_1(π/2) = 1/4
        let s = phi_series(1, PI / 2.0, 1_000_000);
        assert!((s - 0.25).abs() < 1e-6);
    }

    #[test]
    fn kernel_zero_mean() {
        for n in 1..=10 {
            assert!(KernelPhi::new(n, 10).unwrap().period_integral_coeff().is_zero());
        }
    }

    #[test]
    fn median_low_orders() {
        let m1 = min_abs_integral(1).unwrap();
        assert_eq!(m1.xi_star.coeff, int(0));
        assert_eq!(m1.value_exact, Some(PiMultiple { coeff: rat(1, 2), pi_power: 1 }));
        let m2 = min_abs_integral(2).unwrap();
        assert_eq!(m2.xi_star, PiMultiple { coeff: rat(1, 48), pi_power: 1 });
        assert_eq!(m2.value_exact, Some(PiMultiple { coeff: rat(1, 8), pi_power: 2 }));
    }

    #[test]
    fn median_matches_favard_constant() {
        for n in 1..=8 {
            let m = min_abs_integral(n).unwrap();
            let expect = favard::scaled_favard_f64(n);
            assert!((m.value - expect).abs() < 1e-8, "n = {n}: {} vs {expect}", m.value);
            // K_n = (value / π^n) · (1 / 2^n)
            if let Some(v) = &m.value_exact {
                let k = &v.coeff / rational::from_bigint(BigInt::from(2).pow(n as u32));
                assert_eq!(k, favard::favard(n), "n = {n}");
            }
        }
    }

    #[test]
    fn median_splits_period_in_half() {
        for n in 1..=6 {
            let m = min_abs_integral(n).unwrap();
            let (measure, err) = bernoulli_sublevel(n, &m.eta_star);
            let gap = rational::to_f64(&(measure - rat(1, 2))).abs();
            assert!(gap <= rational::to_f64(&err) + 1e-9, "n = {n}");
        }
    }

    #[test]
    fn green_residual_vanishes_with_corrected_scale() {
        let f = Polynomial::new(vec![rat(1, 3), int(-2), rat(3, 7)]);
        for n in 2..=5 {
            for period in [int(1), rat(5, 2)] {
                let g = GreenEval::new(n, period.clone()).unwrap();
                let r = green_residual(&g, &f, 64).unwrap();
                assert_eq!(r.relative_residual, 0.0, "n = {n}");
                assert!(r.boundary_exact && r.matches_symbolic, "n = {n}: {r:?}");
            }
            let printed = GreenEval::with_scale(n, rat(5, 2), green_scale_printed(n, &rat(5, 2))).unwrap();
            let r = green_residual(&printed, &f, 64).unwrap();
            assert!((r.relative_residual - 1.5).abs() < 1e-12, "n = {n}: {r:?}");
        }
    }

    #[test]
    fn green_examples() {
        let g = GreenEval::new(2, int(1)).unwrap();
        assert_eq!(g.eval(&int(0), &rat(1, 3)).unwrap(), int(0));
        assert_eq!(g.eval(&rat(1, 2), &rat(1, 2)).unwrap(), rat(-1, 4));
        assert!(g.eval(&int(2), &int(0)).is_err());
        assert!(GreenEval::new(1, int(1)).is_err());
    }

    #[test]
    fn green_solution_is_exact() {
        for n in 2..=6 {
            for period in [int(1), rat(5, 2), rat(1, 3)] {
                let g = GreenEval::new(n, period.clone()).unwrap();
                let f = Polynomial::new(vec![rat(1, 3), int(-2), rat(3, 7), int(1)]);
                let u = g.solve(&f);
                let mut d = u.clone();
                for _ in 0..n {
                    d = d.derivative();
                }
                assert_eq!(d, f, "n = {n}, T = {period}");
                assert!(u.eval(&int(0)).is_zero());
                assert!(u.eval(&period).is_zero());
                let mut p = u.clone();
                for i in 1..=n.saturating_sub(2) {
                    p = p.derivative();
                    assert_eq!(p.eval(&int(0)), p.eval(&period), "derivative {i}");
                }
            }
        }
    }

    #[test]
    fn printed_prefactor_fails_off_unit_period() {
        let period = rat(5, 2);
        let g = GreenEval::with_scale(3, period.clone(), green_scale_printed(3, &period)).unwrap();
        let f = Polynomial::constant(int(1));
        let d = g.solve(&f).derivative().derivative().derivative();
        assert_eq!(d, f.scale(&period));
    }

    #[test]
    fn samples_csv_header() {
        let mut buf = Vec::new();
        KernelPhi::new(2, 0).unwrap().write_samples_csv(4, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("u,phi_n_coeff,pi_power,float_value\n0,-1/6,1,"));
        assert_eq!(s.lines().count(), 5);
    }
}
