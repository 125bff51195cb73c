//! Finite exact reduction of the periodic problem
//! `y^{(n)}(t) = c(t) y(τ(t)) + f(t)`, `y^{(i)}(0) = y^{(i)}(T)`,
//! for step-valued `c`, `τ` and `f`.
//!
//! A periodic solution has the representation
//! `y(t) = c_0 + ∫_0^T K(s) y^{(n)}(t - s) ds` with
//! `K(s) = -(T^{n-1}/n!) (ℬ_n(s/T) - η)` for any constant `η`, provided
//! `y^{(n)}` has zero mean. Since `y(τ(·))` only takes the values
//! `v_j = y(s_j)` at the distinct values `s_j` of `τ`, evaluating the
//! representation at each `s_i` closes a linear system in `(v, c_0)`. The
//! kernel integrals over intervals are exact through `ℬ_{n+1}`.

use num_traits::{Signed, Zero};

use crate::bernoulli;
use crate::piecewise::PiecewisePolynomial;
use crate::poly::Polynomial;
use crate::rational::{self, Rational};
use crate::Error;

use super::step::StepFunction;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Cell {
    a: Rational,
    b: Rational,
    coeff: Rational,
    forcing: Rational,
    sample: usize,
}

#[derive(Clone, Debug)]
pub struct ReducedSystem {
    pub n: usize,
    pub period: Rational,
    /// Kernel shift, in units of `ℬ_n`.
    pub eta: Rational,
    /// The distinct values `s_j` of `τ`.
    pub sample_points: Vec<Rational>,
    /// Unknowns `(y(s_1), …, y(s_m), c_0)`; the last row is the zero-mean constraint.
    pub matrix: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
    cells: Vec<Cell>,
    bn1: Polynomial,
}

impl ReducedSystem {
    pub fn constraint_row(&self) -> &[Rational] {
        self.matrix.last().expect("constraint row")
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    /// `∫_0^T K(s) 1_{[a,b)}((t - s) mod T) ds`.
    fn conv(&self, t: &Rational, a: &Rational, b: &Rational) -> Rational {
        convolve_indicator(self.n, &self.period, &self.eta, &self.bn1, t, a, b)
    }

    /// `y(t)` for the unknown vector `x`, through the integral representation.
    pub fn reconstruct(&self, x: &[Rational], t: &Rational) -> Rational {
        let c0 = &x[x.len() - 1];
        c0 + self
            .cells
            .iter()
            .map(|c| (&c.coeff * &x[c.sample] + &c.forcing) * self.conv(t, &c.a, &c.b))
            .sum::<Rational>()
    }

    /// `y^{(n)}` as a step function for the unknown vector `x`.
    pub fn top_derivative(&self, x: &[Rational]) -> StepFunction {
        let mut b = vec![Rational::zero()];
        b.extend(self.cells.iter().map(|c| c.b.clone()));
        let v = self.cells.iter().map(|c| &c.coeff * &x[c.sample] + &c.forcing).collect();
        StepFunction::new(b, v).expect("cells partition the period")
    }

    /// `y` as an exact piecewise polynomial, built by repeated periodic
    /// integration of `y^{(n)}` rather than from the kernel.
    pub fn to_piecewise(&self, x: &[Rational]) -> Result<PiecewisePolynomial, Error> {
        let mut y = self.top_derivative(x).to_piecewise();
        for _ in 0..self.n {
            y = y.periodic_antiderivative()?;
        }
        let zero = Rational::zero();
        let shift = self.reconstruct(x, &zero) - y.eval(&zero);
        Ok(y.add_constant(&shift))
    }
}

pub(crate) fn convolve_indicator(
    n: usize,
    period: &Rational,
    eta: &Rational,
    bn1: &Polynomial,
    t: &Rational,
    a: &Rational,
    b: &Rational,
) -> Rational {
    let p = |x: Rational| bn1.eval(&rational::frac(&(x / period)));
    let tn = rational::pow(period, n as u32);
    let tn1 = rational::pow(period, n as u32 - 1);
    let fact = rational::from_bigint(rational::factorial(n as u32));
    let fact1 = rational::from_bigint(rational::factorial(n as u32 + 1));
    -(tn / fact1) * (p(t - a) - p(t - b)) + eta * tn1 / fact * (b - a)
}

/// General reduction with coefficient `c`, deviation `τ` and optional forcing `f`.
pub fn reduce(
    n: usize,
    period: &Rational,
    coeff: &StepFunction,
    tau: &StepFunction,
    forcing: Option<&StepFunction>,
    eta: &Rational,
) -> Result<ReducedSystem, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("order must be >= 1".into()));
    }
    if !period.is_positive() {
        return Err(Error::InvalidArgument(format!("period must be positive, got {period}")));
    }
    tau.check_deviation(period)?;
    if coeff.period() != period {
        return Err(Error::InvalidArgument("coefficient and deviation have different periods".into()));
    }
    let zero_forcing = StepFunction::constant(Rational::zero(), period.clone())?;
    let forcing = forcing.unwrap_or(&zero_forcing);
    if forcing.period() != period {
        return Err(Error::InvalidArgument("forcing and deviation have different periods".into()));
    }

    let sample_points = tau.range();
    let breakpoints = tau.refine_with(&[coeff, forcing]);
    let cells: Vec<Cell> = breakpoints
        .windows(2)
        .map(|w| {
            let s = tau.eval(&w[0]);
            Cell {
                a: w[0].clone(),
                b: w[1].clone(),
                coeff: coeff.eval(&w[0]).clone(),
                forcing: forcing.eval(&w[0]).clone(),
                sample: sample_points.binary_search(s).expect("value in range"),
            }
        })
        .collect();

    let m = sample_points.len();
    let bn1 = bernoulli::bernoulli_polynomial(n + 1);
    let mut sys = ReducedSystem {
        n,
        period: period.clone(),
        eta: eta.clone(),
        sample_points,
        matrix: Vec::with_capacity(m + 1),
        rhs: Vec::with_capacity(m + 1),
        cells,
        bn1,
    };
    for i in 0..m {
        let si = sys.sample_points[i].clone();
        let mut row = vec![Rational::zero(); m + 1];
        row[i] += rational::int(1);
        row[m] = -rational::int(1);
        let mut rhs = Rational::zero();
        for c in &sys.cells {
            let k = sys.conv(&si, &c.a, &c.b);
            row[c.sample] -= &c.coeff * &k;
            rhs += &c.forcing * k;
        }
        sys.matrix.push(row);
        sys.rhs.push(rhs);
    }
    let mut row = vec![Rational::zero(); m + 1];
    for c in &sys.cells {
        row[c.sample] += &c.coeff * (&c.b - &c.a);
    }
    sys.matrix.push(row);
    sys.rhs.push(-forcing.integral());
    Ok(sys)
}

/// `y^{(n)} = L y(τ) + C`.
pub fn reduce_system(
    n: usize,
    period: &Rational,
    l: &Rational,
    tau: &StepFunction,
    c: &Rational,
    eta: &Rational,
) -> Result<ReducedSystem, Error> {
    if l.is_negative() {
        return Err(Error::InvalidArgument(format!("L must be non-negative, got {l}")));
    }
    let coeff = StepFunction::constant(l.clone(), period.clone())?;
    let forcing = StepFunction::constant(c.clone(), period.clone())?;
    reduce(n, period, &coeff, tau, Some(&forcing), eta)
}

/// `y^{(n)} = p (y(τ) + C)`.
pub fn reduce_weighted(
    n: usize,
    period: &Rational,
    p: &StepFunction,
    tau: &StepFunction,
    c: &Rational,
    eta: &Rational,
) -> Result<ReducedSystem, Error> {
    p.check_weight(period)?;
    let forcing = p.scale(c);
    reduce(n, period, p, tau, Some(&forcing), eta)
}
