//! Truncated formal power series with rational coefficients.

use std::ops::{Add, Mul};

use num_traits::Zero;

use crate::rational::{self, Rational};

/// Coefficients `c_0..c_{N-1}` of a series truncated at order `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order, Rational::zero());
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn from_fn(order: usize, f: impl Fn(usize) -> Rational) -> Self {
        PowerSeries { coeffs: (0..order).map(f).collect() }
    }

    pub fn cos(order: usize) -> Self {
        PowerSeries::from_fn(order, |k| {
            if k % 2 == 1 {
                return Rational::zero();
            }
            let v = rational::from_bigint(rational::factorial(k as u32)).recip();
            if (k / 2) % 2 == 0 {
                v
            } else {
                -v
            }
        })
    }

    pub fn sin(order: usize) -> Self {
        PowerSeries::from_fn(order, |k| {
            if k % 2 == 0 {
                return Rational::zero();
            }
            let v = rational::from_bigint(rational::factorial(k as u32)).recip();
            if (k / 2) % 2 == 0 {
                v
            } else {
                -v
            }
        })
    }

    /// Multiplicative inverse by triangular back-substitution. Needs `c_0 != 0`.
    pub fn recip(&self) -> Self {
        let n = self.order();
        let c0 = self.coeffs[0].clone();
        assert!(!c0.is_zero(), "series not invertible");
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        out.push(c0.recip());
        for k in 1..n {
            let s: Rational = (1..=k).map(|j| &self.coeffs[j] * &out[k - j]).sum();
            out.push(-s / &c0);
        }
        PowerSeries { coeffs: out }
    }

    /// Substitutes `x -> a x`, i.e. scales coefficient `k` by `a^k`.
    pub fn dilate(&self, a: &Rational) -> Self {
        let mut pw = Rational::from_integer(1.into());
        let mut out = Vec::with_capacity(self.order());
        for c in &self.coeffs {
            out.push(c * &pw);
            pw *= a;
        }
        PowerSeries { coeffs: out }
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries { coeffs: (0..n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect() }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        let coeffs = (0..n)
            .map(|k| (0..=k).map(|j| &self.coeffs[j] * &rhs.coeffs[k - j]).sum())
            .collect();
        PowerSeries { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn secant_and_tangent() {
        let sec = PowerSeries::cos(8).recip();
        assert_eq!(sec.coeffs()[..7], [int(1), int(0), rat(1, 2), int(0), rat(5, 24), int(0), rat(61, 720)]);
        let tan = &PowerSeries::sin(8) * &sec;
        assert_eq!(tan.coeffs()[..8], [int(0), int(1), int(0), rat(1, 3), int(0), rat(2, 15), int(0), rat(17, 315)]);
    }

    #[test]
    fn reciprocal_round_trip() {
        let c = PowerSeries::cos(10);
        let one = &c * &c.recip();
        assert_eq!(one, PowerSeries::new(vec![int(1)], 10));
    }

    #[test]
    fn dilation() {
        let s = PowerSeries::new(vec![int(1), int(1), int(1)], 3).dilate(&rat(1, 4));
        assert_eq!(s.coeffs(), &[int(1), rat(1, 4), rat(1, 16)]);
    }
}
