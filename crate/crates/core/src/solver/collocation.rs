//! Floating-point collocation on a uniform grid of `N` cells, independent of
//! the exact reduction. The solution is represented by its values at cell
//! midpoints, `y(τ(t))` takes the value of the cell containing `τ(t)`, and
//! coefficient and deviation are sampled at cell midpoints, so any measurable
//! `τ` can be handled approximately.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::bernoulli;
use crate::poly::Polynomial;
use crate::rational::{self, Rational};

use super::linalg;
use super::step::StepFunction;

struct Grid {
    n: usize,
    cells: usize,
    period: f64,
    eta: f64,
    bn1: Polynomial,
}

impl Grid {
    fn new(n: usize, period: &Rational, cells: usize, eta: f64) -> Self {
        Grid { n, cells, period: rational::to_f64(period), eta, bn1: bernoulli::bernoulli_polynomial(n + 1) }
    }

    fn h(&self) -> f64 {
        self.period / self.cells as f64
    }

    /// Kernel integrated over the offsets `((d - 1/2) h, (d + 1/2) h]`.
    fn offsets(&self) -> Vec<f64> {
        let n = self.n as i32;
        let fact: f64 = (1..=self.n).map(|k| k as f64).product();
        let tn = self.period.powi(n);
        let b = |x: f64| self.bn1.eval_f64(x - x.floor());
        (0..self.cells)
            .map(|d| {
                let hi = (d as f64 + 0.5) / self.cells as f64;
                let lo = (d as f64 - 0.5) / self.cells as f64;
                -(tn / (fact * (n as f64 + 1.0))) * (b(hi) - b(lo)) + self.eta * self.period.powi(n - 1) / fact * self.h()
            })
            .collect()
    }

    /// `(coefficient, column)` per cell from midpoint samples.
    fn sample(&self, coeff: &StepFunction, tau: &StepFunction) -> Vec<(f64, usize)> {
        let h = self.h();
        (0..self.cells)
            .map(|k| {
                let mid = midpoint(coeff.period(), k, self.cells);
                let c = rational::to_f64(coeff.eval(&mid));
                let s = rational::to_f64(tau.eval(&mid));
                let col = ((s / h).floor() as usize).min(self.cells - 1);
                (c, col)
            })
            .collect()
    }
}

fn midpoint(period: &Rational, k: usize, cells: usize) -> Rational {
    period * rational::rat(2 * k as i64 + 1, 2 * cells as i64)
}

/// The `(N+1) × (N+1)` collocation matrix of the homogeneous problem
/// `y^{(n)} = c(t) y(τ(t))`, unknowns `(y(m_0), …, y(m_{N-1}), c_0)`.
pub fn collocation_matrix(n: usize, period: &Rational, coeff: &StepFunction, tau: &StepFunction, cells: usize) -> DMatrix<f64> {
    let g = Grid::new(n, period, cells, 0.0);
    let d = g.offsets();
    let s = g.sample(coeff, tau);
    let mut m = DMatrix::<f64>::zeros(cells + 1, cells + 1);
    for i in 0..cells {
        m[(i, i)] += 1.0;
        m[(i, cells)] = -1.0;
        for (k, &(c, col)) in s.iter().enumerate() {
            m[(i, col)] -= c * d[(i + cells - k) % cells];
        }
    }
    let h = g.h();
    for &(c, col) in &s {
        m[(cells, col)] += c * h;
    }
    m
}

#[derive(Clone, Debug, Serialize)]
pub struct CollocationPoint {
    pub cells: usize,
    pub margin: f64,
    pub norm: f64,
}

/// Smallest and largest singular values of the collocation matrix on grids
/// `2^k`, `k ∈ ks`.
pub fn collocation_margins(
    n: usize,
    period: &Rational,
    coeff: &StepFunction,
    tau: &StepFunction,
    ks: impl IntoIterator<Item = u32>,
) -> Vec<CollocationPoint> {
    ks.into_iter()
        .map(|k| {
            let cells = 1usize << k;
            let (margin, norm) = linalg::singular_value_range(&collocation_matrix(n, period, coeff, tau, cells));
            CollocationPoint { cells, margin, norm }
        })
        .collect()
}

/// Observed order `log2(margin_k / margin_{k+1})` between consecutive grids.
pub fn convergence_orders(points: &[CollocationPoint]) -> Vec<f64> {
    points.windows(2).map(|w| (w[0].margin / w[1].margin).log2()).collect()
}

/// Induced `L∞` norm (maximum absolute row sum) of the discretized operator
/// `(Az)(t) = L ∫_0^T (K(s) - ξ) z(τ(t - s)) ds`, with the kernel shift `eta`
/// in units of `ℬ_n`.
pub fn contraction_norm(n: usize, period: &Rational, l: &Rational, tau: &StepFunction, eta: f64, cells: usize) -> f64 {
    let g = Grid::new(n, period, cells, eta);
    let d = g.offsets();
    let ones = StepFunction::constant(rational::int(1), period.clone()).expect("constant");
    let s = g.sample(&ones, tau);
    let l = rational::to_f64(l);
    let mut row = vec![0.0; cells];
    let mut best: f64 = 0.0;
    for i in 0..cells {
        row.iter_mut().for_each(|x| *x = 0.0);
        for (k, &(_, col)) in s.iter().enumerate() {
            row[col] += d[(i + cells - k) % cells];
        }
        best = best.max(l * row.iter().map(|x| x.abs()).sum::<f64>());
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::witness;

    fn witness_tau(n: usize) -> StepFunction {
        let w = witness::build_witness(n, &int(1)).unwrap();
        StepFunction::new(vec![int(0), rat(1, 2), int(1)], vec![w.tau.first, w.tau.second]).unwrap()
    }

    #[test]
    fn witness_margin_shrinks_with_grid() {
        for n in 1..=3 {
            let l = crate::favard::favard(n).recip();
            let coeff = StepFunction::constant(l, int(1)).unwrap();
            let pts = collocation_margins(n, &int(1), &coeff, &witness_tau(n), 5..=8);
            for w in pts.windows(2) {
                assert!(w[1].margin < w[0].margin, "n = {n}: {pts:?}");
            }
            assert!(pts.last().unwrap().margin < 0.05, "n = {n}: {pts:?}");
        }
    }

    #[test]
    fn below_threshold_margin_stays_away_from_zero() {
        let coeff = StepFunction::constant(int(16), int(1)).unwrap();
        let pts = collocation_margins(2, &int(1), &coeff, &witness_tau(2), 5..=8);
        assert!(pts.iter().all(|p| p.margin > 1e-2), "{pts:?}");
    }

    #[test]
    fn contraction_norm_at_optimal_shift() {
        for n in 1..=4 {
            let ms = crate::kernels::min_abs_integral(n).unwrap();
            let eta = rational::to_f64(&ms.eta_star);
            let k = crate::favard::favard(n);
            let l = k.recip() * rat(9, 10);
            let norm = contraction_norm(n, &int(1), &l, &witness_tau(n), eta, 256);
            assert!(norm <= 0.9 + 1e-6, "n = {n}: {norm}");
            // the witness deviation nearly saturates the bound
            assert!(norm > 0.85, "n = {n}: {norm}");
        }
    }
}
