use num_traits::{Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::piecewise::PiecewisePolynomial;
use crate::poly::Polynomial;
use crate::rational::{self, Rational};
use crate::Error;

/// A function on `[0, T]` taking one rational value per interval of a finite
/// rational partition `0 = b_0 < b_1 < … < b_k = T`.
///
/// Values are right-continuous: `b_i` belongs to interval `i`, and `T` itself
/// to the last one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepFunction {
    #[serde(with = "rational::serde_vec")]
    breakpoints: Vec<Rational>,
    #[serde(with = "rational::serde_vec")]
    values: Vec<Rational>,
}

impl StepFunction {
    pub fn new(breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<Self, Error> {
        if breakpoints.len() < 2 || breakpoints.len() != values.len() + 1 {
            return Err(Error::InvalidArgument(format!(
                "{} breakpoints do not bound {} values",
                breakpoints.len(),
                values.len()
            )));
        }
        if !breakpoints[0].is_zero() {
            return Err(Error::InvalidArgument(format!("partition must start at 0, got {}", breakpoints[0])));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("breakpoints must be strictly increasing".into()));
        }
        Ok(StepFunction { breakpoints, values })
    }

    pub fn constant(value: Rational, period: Rational) -> Result<Self, Error> {
        Self::new(vec![Rational::zero(), period], vec![value])
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn period(&self) -> &Rational {
        self.breakpoints.last().expect("non-empty partition")
    }

    /// `(a, b, value)` for each interval.
    pub fn intervals(&self) -> impl Iterator<Item = (&Rational, &Rational, &Rational)> {
        self.breakpoints.windows(2).zip(&self.values).map(|(w, v)| (&w[0], &w[1], v))
    }

    pub fn eval(&self, t: &Rational) -> &Rational {
        let k = self.breakpoints[1..self.breakpoints.len() - 1].partition_point(|b| b <= t);
        &self.values[k]
    }

    pub fn integral(&self) -> Rational {
        self.intervals().map(|(a, b, v)| (b - a) * v).sum()
    }

    /// Sorted distinct values.
    pub fn range(&self) -> Vec<Rational> {
        let mut v = self.values.clone();
        v.sort();
        v.dedup();
        v
    }

    /// Checks that the values lie in `[0, T]`, as a deviating argument must.
    pub fn check_deviation(&self, period: &Rational) -> Result<(), Error> {
        if self.period() != period {
            return Err(Error::InvalidArgument(format!("deviation defined on [0, {}], expected [0, {period}]", self.period())));
        }
        match self.values.iter().find(|v| v.is_negative() || *v > period) {
            Some(v) => Err(Error::DeviationOutOfRange { value: v.to_string(), period: period.to_string() }),
            None => Ok(()),
        }
    }

    pub fn check_weight(&self, period: &Rational) -> Result<(), Error> {
        if self.period() != period {
            return Err(Error::InvalidArgument(format!("weight defined on [0, {}], expected [0, {period}]", self.period())));
        }
        match self.values.iter().find(|v| v.is_negative()) {
            Some(v) => Err(Error::NegativeWeight(v.to_string())),
            None => Ok(()),
        }
    }

    /// Common refinement with another partition of the same interval.
    pub fn refine_with(&self, others: &[&StepFunction]) -> Vec<Rational> {
        let mut b: Vec<Rational> = self.breakpoints.clone();
        for o in others {
            b.extend(o.breakpoints.iter().cloned());
        }
        b.sort();
        b.dedup();
        b
    }

    pub fn scale(&self, c: &Rational) -> Self {
        StepFunction { breakpoints: self.breakpoints.clone(), values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn to_piecewise(&self) -> PiecewisePolynomial {
        let period = self.period().clone();
        let b = self.breakpoints.iter().map(|x| x / &period).collect();
        let pieces = self.values.iter().map(|v| Polynomial::constant(v.clone())).collect();
        PiecewisePolynomial::new(b, pieces, period).expect("step partition is valid")
    }

    /// Random step function with at most `max_pieces` intervals, breakpoints on
    /// the grid `T/den`, and values `lo + (hi - lo) j / den`.
    pub fn random<R: Rng>(rng: &mut R, period: &Rational, max_pieces: usize, den: i64, lo: &Rational, hi: &Rational) -> Self {
        let pieces = rng.gen_range(1..=max_pieces.min(den as usize));
        let mut cuts: Vec<i64> = Vec::with_capacity(pieces + 1);
        while cuts.len() < pieces - 1 {
            let c = rng.gen_range(1..den);
            if !cuts.contains(&c) {
                cuts.push(c);
            }
        }
        cuts.sort_unstable();
        let mut breakpoints = vec![Rational::zero()];
        breakpoints.extend(cuts.iter().map(|&c| period * rational::rat(c, den)));
        breakpoints.push(period.clone());
        let values = (0..pieces).map(|_| lo + (hi - lo) * rational::rat(rng.gen_range(0..=den), den)).collect();
        StepFunction { breakpoints, values }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn sample() -> StepFunction {
        StepFunction::new(vec![int(0), rat(1, 3), int(1)], vec![int(2), int(5)]).unwrap()
    }

    #[test]
    fn evaluation_is_right_continuous() {
        let s = sample();
        assert_eq!(s.eval(&int(0)), &int(2));
        assert_eq!(s.eval(&rat(1, 3)), &int(5));
        assert_eq!(s.eval(&int(1)), &int(5));
        assert_eq!(s.integral(), rat(2, 3) + rat(10, 3));
    }

    #[test]
    fn validation() {
        assert!(StepFunction::new(vec![int(0), int(1)], vec![]).is_err());
        assert!(StepFunction::new(vec![int(1), int(2)], vec![int(0)]).is_err());
        assert!(StepFunction::new(vec![int(0), int(1), int(1)], vec![int(0), int(0)]).is_err());
        assert!(matches!(sample().check_deviation(&int(1)), Err(Error::DeviationOutOfRange { .. })));
        let neg = StepFunction::constant(int(-1), int(1)).unwrap();
        assert!(matches!(neg.check_weight(&int(1)), Err(Error::NegativeWeight(_))));
    }

    #[test]
    fn json_round_trip() {
        let s = sample();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"breakpoints":["0","1/3","1"],"values":["2","5"]}"#);
        assert_eq!(serde_json::from_str::<StepFunction>(&j).unwrap(), s);
    }

    #[test]
    fn random_stays_in_range() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let s = StepFunction::random(&mut rng, &rat(5, 2), 8, 64, &int(0), &rat(5, 2));
            assert!(s.values().len() <= 8);
            s.check_deviation(&rat(5, 2)).unwrap();
        }
    }
}
