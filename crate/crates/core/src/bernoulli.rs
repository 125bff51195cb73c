//! Bernoulli and Euler numbers, Bernoulli polynomials and their periodic
//! extensions.
//!
//! Sign convention: `B_1 = -1/2`, so that `B_n = B_n(0)` for every `n`.
//! Euler numbers are the secant numbers with alternating sign
//! (`E_0 = 1`, `E_2 = -1`, `E_4 = 5`, odd indices zero).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::piecewise::PiecewisePolynomial;
use crate::poly::Polynomial;
use crate::rational::{self, Rational};

/// `B_0..=B_n` from the defining recurrence `Σ_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        let s: Rational = (0..m)
            .map(|j| &b[j] * rational::from_bigint(rational::binomial(m as u32 + 1, j as u32)))
            .sum();
        b.push(-s / rational::int(m as i64 + 1));
    }
    b
}

/// Tangent numbers `T_1, T_3, ..., T_{2k-1}`: `tan x = Σ T_{2j-1} x^{2j-1}/(2j-1)!`.
fn tangent_numbers(k: usize) -> Vec<BigInt> {
    if k == 0 {
        return Vec::new();
    }
    let mut t = vec![BigInt::zero(); k];
    t[0] = BigInt::one();
    for j in 1..k {
        t[j] = &t[j - 1] * BigInt::from(j);
    }
    for i in 1..k {
        for j in i..k {
            t[j] = &t[j - 1] * BigInt::from(j - i) + &t[j] * BigInt::from(j - i + 2);
        }
    }
    t
}

/// `B_0..=B_n` through integer tangent numbers:
/// `B_{2k} = (-1)^{k-1} 2k T_{2k-1} / (4^k (4^k - 1))`.
pub fn bernoulli_numbers_tangent(n: usize) -> Vec<Rational> {
    let tangents = tangent_numbers(n / 2);
    (0..=n)
        .map(|m| match m {
            0 => Rational::one(),
            1 => rational::rat(-1, 2),
            _ if m % 2 == 1 => Rational::zero(),
            _ => {
                let k = m / 2;
                let four_k = BigInt::from(4).pow(k as u32);
                let num = BigInt::from(2 * k) * &tangents[k - 1];
                let den = &four_k * (&four_k - BigInt::one());
                let v = Rational::new(num, den);
                if k % 2 == 1 {
                    v
                } else {
                    -v
                }
            }
        })
        .collect()
}

/// `E_0..=E_n` from `Σ_{j even} C(m, j) E_j = 0` for even `m >= 2`.
pub fn euler_numbers(n: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); n + 1];
    e[0] = BigInt::one();
    for m in (2..=n).step_by(2) {
        let s: BigInt = (0..m).step_by(2).map(|j| rational::binomial(m as u32, j as u32) * &e[j]).sum();
        e[m] = -s;
    }
    e
}

/// Precomputed Bernoulli and Euler numbers up to a fixed index.
///
/// Built once by the caller and passed around; there is no global cache.
#[derive(Clone, Debug)]
pub struct BernoulliEulerCache {
    bernoulli: Vec<Rational>,
    euler: Vec<BigInt>,
}

impl BernoulliEulerCache {
    pub fn new(n: usize) -> Self {
        BernoulliEulerCache { bernoulli: bernoulli_numbers(n), euler: euler_numbers(n) }
    }

    pub fn max_index(&self) -> usize {
        self.bernoulli.len() - 1
    }

    pub fn bernoulli(&self, k: usize) -> &Rational {
        &self.bernoulli[k]
    }

    pub fn euler(&self, k: usize) -> &BigInt {
        &self.euler[k]
    }

    pub fn bernoulli_polynomial(&self, n: usize) -> Polynomial {
        polynomial_from_numbers(&self.bernoulli, n)
    }
}

fn polynomial_from_numbers(b: &[Rational], n: usize) -> Polynomial {
    // B_n(t) = Σ_k C(n, k) B_k t^{n-k}
    let mut coeffs = vec![Rational::zero(); n + 1];
    for (k, bk) in b.iter().enumerate().take(n + 1) {
        coeffs[n - k] = bk * rational::from_bigint(rational::binomial(n as u32, k as u32));
    }
    Polynomial::new(coeffs)
}

/// The Bernoulli polynomial `B_n(t)`.
pub fn bernoulli_polynomial(n: usize) -> Polynomial {
    polynomial_from_numbers(&bernoulli_numbers(n), n)
}

/// `ℬ_n(t) = B_n(t - floor(t))`.
pub fn periodic_bernoulli_eval(n: usize, t: &Rational) -> Rational {
    bernoulli_polynomial(n).eval(&rational::frac(t))
}

/// `ℬ_n(t/T)` as a `T`-periodic piecewise polynomial.
pub fn periodic_bernoulli(n: usize, period: Rational) -> PiecewisePolynomial {
    PiecewisePolynomial::single(bernoulli_polynomial(n), period)
}
