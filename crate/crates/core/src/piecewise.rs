//! Exact piecewise polynomials on one period.
//!
//! A [`PiecewisePolynomial`] describes a `T`-periodic function through its
//! restriction to `[0, T)`. Breakpoints and pieces live in the normalized
//! coordinate `u = t / T`, so the breakpoints always run from `0` to `1`.
//! Evaluation is right-continuous: at a breakpoint the piece to the right is
//! used, and `u = 1` wraps around to the first piece.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::Polynomial;
use crate::rational::{self, Rational};
use crate::roots::{self, RootEnclosure};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewisePolynomial {
    breakpoints: Vec<Rational>,
    pieces: Vec<Polynomial>,
    period: Rational,
}

/// Extreme values of a piecewise polynomial over one period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extrema {
    pub min: Rational,
    pub max: Rational,
    /// Every candidate point (breakpoint limits and critical points) was exact.
    pub exact: bool,
}

impl PiecewisePolynomial {
    pub fn new(breakpoints: Vec<Rational>, pieces: Vec<Polynomial>, period: Rational) -> Result<Self, Error> {
        if !period.is_positive() {
            return Err(Error::InvalidArgument(format!("period must be positive, got {period}")));
        }
        if breakpoints.len() < 2 || breakpoints.len() != pieces.len() + 1 {
            return Err(Error::InvalidArgument(
                "need one piece per subinterval and at least two breakpoints".into(),
            ));
        }
        if !breakpoints[0].is_zero() || !breakpoints.last().unwrap().is_one() {
            return Err(Error::InvalidArgument("breakpoints must start at 0 and end at 1".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("breakpoints must be strictly increasing".into()));
        }
        Ok(PiecewisePolynomial { breakpoints, pieces, period })
    }

    /// A single polynomial in `u = t/T` over the whole period.
    pub fn single(piece: Polynomial, period: Rational) -> Self {
        PiecewisePolynomial::new(vec![Rational::zero(), Rational::one()], vec![piece], period)
            .expect("valid single piece")
    }

    pub fn constant(c: Rational, period: Rational) -> Self {
        PiecewisePolynomial::single(Polynomial::constant(c), period)
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Polynomial] {
        &self.pieces
    }

    pub fn period(&self) -> &Rational {
        &self.period
    }

    fn piece_index(&self, u: &Rational) -> usize {
        // Last piece whose left breakpoint is <= u.
        let k = self.breakpoints.partition_point(|b| b <= u);
        k.saturating_sub(1).min(self.pieces.len() - 1)
    }

    /// Value at `t`, right-continuous, argument reduced modulo the period.
    pub fn eval(&self, t: &Rational) -> Rational {
        let u = rational::frac(&(t / &self.period));
        self.pieces[self.piece_index(&u)].eval(&u)
    }

    /// Left limit at `t`.
    pub fn eval_left(&self, t: &Rational) -> Rational {
        let mut u = rational::frac(&(t / &self.period));
        if u.is_zero() {
            u = Rational::one();
        }
        let k = self.breakpoints.partition_point(|b| b < &u);
        self.pieces[k.saturating_sub(1)].eval(&u)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let p = rational::to_f64(&self.period);
        let u = (t / p).rem_euclid(1.0);
        let k = self
            .breakpoints
            .partition_point(|b| rational::to_f64(b) <= u)
            .saturating_sub(1)
            .min(self.pieces.len() - 1);
        self.pieces[k].eval_f64(u)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_pieces(|p| p.scale(c))
    }

    pub fn add_constant(&self, c: &Rational) -> Self {
        self.map_pieces(|p| p + &Polynomial::constant(c.clone()))
    }

    fn map_pieces(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        PiecewisePolynomial {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(f).collect(),
            period: self.period.clone(),
        }
    }

    /// Restates the function on a finer partition (a superset of the breakpoints).
    fn refine_to(&self, breakpoints: &[Rational]) -> Vec<Polynomial> {
        breakpoints
            .windows(2)
            .map(|w| self.pieces[self.piece_index(&w[0])].clone())
            .collect()
    }

    fn common_breakpoints(&self, other: &Self) -> Vec<Rational> {
        let mut all: Vec<Rational> = self.breakpoints.iter().chain(other.breakpoints.iter()).cloned().collect();
        all.sort();
        all.dedup();
        all
    }

    /// Pointwise combination over the common refinement. Periods must match.
    pub fn zip_with(&self, other: &Self, f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> Result<Self, Error> {
        if self.period != other.period {
            return Err(Error::InvalidArgument("period mismatch".into()));
        }
        let bps = self.common_breakpoints(other);
        let a = self.refine_to(&bps);
        let b = other.refine_to(&bps);
        let pieces = a.iter().zip(&b).map(|(x, y)| f(x, y)).collect();
        Ok(PiecewisePolynomial { breakpoints: bps, pieces, period: self.period.clone() })
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.zip_with(other, |a, b| a - b)
    }

    /// `t -> f(t - offset)`, with `offset` in the same units as `t`.
    pub fn shift(&self, offset: &Rational) -> Self {
        let c = rational::frac(&(offset / &self.period));
        if c.is_zero() {
            return self.clone();
        }
        // New function at u equals old at frac(u - c).
        let one = Rational::one();
        let mut bps: Vec<Rational> = self.breakpoints.iter().map(|b| rational::frac(&(b + &c))).collect();
        bps.push(Rational::zero());
        bps.push(one.clone());
        bps.sort();
        bps.dedup();
        let pieces = bps
            .windows(2)
            .map(|w| {
                let old_left = rational::frac(&(&w[0] - &c));
                let k = self.piece_index(&old_left);
                // u in [w0, w1) maps to u - c or u - c + 1.
                let delta = if w[0] >= c { -&c } else { &one - &c };
                self.pieces[k].compose_affine(&one, &delta)
            })
            .collect();
        PiecewisePolynomial { breakpoints: bps, pieces, period: self.period.clone() }
    }

    /// Derivative with respect to `t`; exact away from breakpoints.
    pub fn derivative(&self) -> Self {
        let inv = self.period.recip();
        self.map_pieces(|p| p.derivative().scale(&inv))
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |f, _| f.derivative())
    }

    /// Continuous antiderivative in `t` on `[0, T)`, vanishing at `t = 0`.
    ///
    /// The periodic extension is continuous only when the integral over a
    /// period is zero.
    pub fn antiderivative(&self) -> Self {
        let mut acc = Rational::zero();
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for (w, p) in self.breakpoints.windows(2).zip(&self.pieces) {
            let a = p.antiderivative().scale(&self.period);
            let shift = &acc - a.eval(&w[0]);
            acc = a.eval(&w[1]) + &shift;
            pieces.push(&a + &Polynomial::constant(shift));
        }
        PiecewisePolynomial { breakpoints: self.breakpoints.clone(), pieces, period: self.period.clone() }
    }

    /// Integral over one full period.
    pub fn period_integral(&self) -> Rational {
        self.breakpoints
            .windows(2)
            .zip(&self.pieces)
            .map(|(w, p)| p.integrate(&w[0], &w[1]))
            .sum::<Rational>()
            * &self.period
    }

    pub fn mean(&self) -> Rational {
        self.period_integral() / &self.period
    }

    /// `∫_a^b f(t) dt` for `a <= b`, wrapping periodically.
    pub fn integrate(&self, a: &Rational, b: &Rational) -> Result<Rational, Error> {
        if a > b {
            return Err(Error::InvalidArgument(format!("integration bounds reversed: {a} > {b}")));
        }
        let anti = self.antiderivative();
        let total = self.period_integral();
        let cumulative = |t: &Rational| {
            let q = t / &self.period;
            let whole = rational::from_bigint(rational::floor(&q));
            &whole * &total + anti.eval(t)
        };
        Ok(cumulative(b) - cumulative(a))
    }

    /// Periodic antiderivative with zero mean. Requires zero mean input.
    pub fn periodic_antiderivative(&self) -> Result<Self, Error> {
        if !self.period_integral().is_zero() {
            return Err(Error::InvalidArgument("periodic antiderivative needs a zero-mean function".into()));
        }
        let a = self.antiderivative();
        let m = a.mean();
        Ok(a.add_constant(&-m))
    }

    /// Exact min and max over one period, including one-sided limits at breakpoints.
    pub fn extrema(&self, tol: &Rational) -> Extrema {
        let mut exact = true;
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        let mut push = |v: Rational| {
            if lo.as_ref().is_none_or(|l| &v < l) {
                lo = Some(v.clone());
            }
            if hi.as_ref().is_none_or(|h| &v > h) {
                hi = Some(v);
            }
        };
        for (w, p) in self.breakpoints.windows(2).zip(&self.pieces) {
            push(p.eval(&w[0]));
            push(p.eval(&w[1]));
            for r in roots::isolate_roots(&p.derivative(), &w[0], &w[1], tol) {
                if r.is_exact() {
                    push(p.eval(&r.lo));
                } else {
                    exact = false;
                    push(p.eval(&r.mid()));
                }
            }
        }
        Extrema { min: lo.unwrap(), max: hi.unwrap(), exact }
    }

    /// `max |f|` on the grid `t_k = k T / m`, `k = 0..m`, plus all breakpoints.
    pub fn grid_abs_max(&self, m: usize) -> Rational {
        let mut best = Rational::zero();
        let den = rational::int(m as i64);
        for k in 0..m {
            let u = rational::int(k as i64) / &den;
            let v = self.pieces[self.piece_index(&u)].eval(&u).abs();
            if v > best {
                best = v;
            }
        }
        for (w, p) in self.breakpoints.windows(2).zip(&self.pieces) {
            best = best.max(p.eval(&w[0]).abs()).max(p.eval(&w[1]).abs());
        }
        best
    }

    /// Lebesgue measure (in `t` units) of `{t in [0,T): f(t) <= level}`.
    ///
    /// Returns the measure estimate and an error bound from root enclosures.
    pub fn sublevel_measure(&self, level: &Rational, tol: &Rational) -> (Rational, Rational) {
        let mut measure = Rational::zero();
        let mut err = Rational::zero();
        for (w, p) in self.breakpoints.windows(2).zip(&self.pieces) {
            let q = p - &Polynomial::constant(level.clone());
            let (m, e) = sign_partition(&q, &w[0], &w[1], tol)
                .into_iter()
                .filter(|seg| !seg.positive)
                .fold((Rational::zero(), Rational::zero()), |(m, e), seg| (m + seg.len(), e + seg.uncertainty));
            measure += m;
            err += e;
        }
        (measure * &self.period, err * &self.period)
    }

    /// `∫_0^T |f(t) - level| dt`, exact up to the root enclosures.
    ///
    /// Returns the value and an error bound (enclosure width times a local
    /// Lipschitz bound of the integrand).
    pub fn abs_deviation_integral(&self, level: &Rational, tol: &Rational) -> (Rational, Rational) {
        let mut total = Rational::zero();
        let mut err = Rational::zero();
        for (w, p) in self.breakpoints.windows(2).zip(&self.pieces) {
            let q = p - &Polynomial::constant(level.clone());
            let anti = q.antiderivative();
            let lip = q.derivative_bound(&w[0], &w[1]) + q.eval(&w[0]).abs().max(q.eval(&w[1]).abs());
            for seg in sign_partition(&q, &w[0], &w[1], tol) {
                let v = anti.eval(&seg.b) - anti.eval(&seg.a);
                total += if seg.positive { v } else { -v };
                err += &seg.uncertainty * &lip * &seg.uncertainty;
            }
        }
        (total * &self.period, err * &self.period)
    }
}

struct SignSegment {
    a: Rational,
    b: Rational,
    positive: bool,
    uncertainty: Rational,
}

impl SignSegment {
    fn len(&self) -> Rational {
        &self.b - &self.a
    }
}

/// Splits `[a, b]` into maximal segments of constant sign of `q`, with segment
/// endpoints at root-enclosure midpoints.
fn sign_partition(q: &Polynomial, a: &Rational, b: &Rational, tol: &Rational) -> Vec<SignSegment> {
    let roots: Vec<RootEnclosure> = roots::isolate_roots(q, a, b, tol);
    let mut cuts: Vec<(Rational, Rational)> = vec![(a.clone(), Rational::zero())];
    for r in &roots {
        cuts.push((r.mid(), r.width()));
    }
    cuts.push((b.clone(), Rational::zero()));
    let mut out = Vec::new();
    for w in cuts.windows(2) {
        if w[0].0 >= w[1].0 {
            continue;
        }
        let mid = (&w[0].0 + &w[1].0) / rational::int(2);
        out.push(SignSegment {
            a: w[0].0.clone(),
            b: w[1].0.clone(),
            positive: q.eval(&mid).is_positive(),
            uncertainty: &w[0].1 + &w[1].1,
        });
    }
    out
}

#[derive(Serialize, Deserialize)]
struct Wire {
    #[serde(with = "rational::serde_vec")]
    breakpoints: Vec<Rational>,
    pieces: Vec<Vec<String>>,
    #[serde(with = "rational::serde_str")]
    period: Rational,
}

impl Serialize for PiecewisePolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire {
            breakpoints: self.breakpoints.clone(),
            pieces: self
                .pieces
                .iter()
                .map(|p| p.coeffs().iter().map(|c| c.to_string()).collect())
                .collect(),
            period: self.period.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PiecewisePolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = Wire::deserialize(d)?;
        let pieces = w
            .pieces
            .iter()
            .map(|cs| {
                cs.iter()
                    .map(|c| rational::parse(c))
                    .collect::<Result<Vec<_>, _>>()
                    .map(Polynomial::new)
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        PiecewisePolynomial::new(w.breakpoints, pieces, w.period).map_err(D::Error::custom)
    }
}
