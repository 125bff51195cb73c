//! Unique solvability of scalar periodic problems with step-valued deviations
//! and weights.
//!
//! The exact route reduces the problem to a small rational linear system (see
//! [`reduce`]); its determinant decides solvability. A float SVD of the same
//! matrix gives a margin, and an independent grid collocation (see
//! [`collocation`]) cross-checks the verdict.

pub mod collocation;
pub mod linalg;
pub mod reduce;
pub mod step;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::rational::{self, Rational};
use crate::Error;

pub use reduce::{reduce, reduce_system, reduce_weighted, ReducedSystem};
pub use step::StepFunction;

/// Relative band below which a nonsingular system is reported as near-singular.
pub const NEAR_SINGULAR: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Unique,
    NontrivialKernel,
    NearSingular,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Provenance {
    pub route: &'static str,
    #[serde(with = "rational::serde_str")]
    pub eta: Rational,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport {
    pub status: SolveStatus,
    /// Smallest singular value of the float image of the reduced matrix.
    pub margin: f64,
    /// Largest singular value.
    pub norm: f64,
    #[serde(with = "rational::serde_str")]
    pub determinant: Rational,
    #[serde(with = "rational::serde_vec")]
    pub sample_points: Vec<Rational>,
    /// `y(s_j)`: the solution when unique, a kernel vector when not.
    #[serde(with = "rational::serde_opt_vec")]
    pub solution_samples: Option<Vec<Rational>>,
    /// Additive constant `c_0` of the representation, when solved.
    #[serde(with = "rational::serde_opt")]
    pub constant: Option<Rational>,
    pub provenance: Provenance,
}

impl SolveReport {
    pub fn is_unique(&self) -> bool {
        self.status != SolveStatus::NontrivialKernel
    }
}

/// Scales a kernel vector so that its largest entry in absolute value is `±1`
/// and its first nonzero entry is positive.
fn normalize(mut v: Vec<Rational>) -> Vec<Rational> {
    let big = v.iter().map(rational::abs).max().unwrap_or_else(Rational::zero);
    if big.is_zero() {
        return v;
    }
    let first_neg = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let s = if first_neg { -big } else { big };
    for x in v.iter_mut() {
        *x /= &s;
    }
    v
}

/// Exact determinant test, with the float singular values as margin.
pub fn uniqueness_margin(sys: &ReducedSystem) -> SolveReport {
    let determinant = linalg::determinant(&sys.matrix);
    let (margin, norm) = linalg::singular_value_range(&linalg::to_dmatrix(&sys.matrix));
    let m = sys.sample_points.len();
    let (status, solution_samples) = if determinant.is_zero() {
        let kernel = linalg::nullspace(&sys.matrix).into_iter().next().expect("singular matrix has a kernel");
        (SolveStatus::NontrivialKernel, Some(normalize(kernel[..m].to_vec())))
    } else if margin < NEAR_SINGULAR * norm {
        (SolveStatus::NearSingular, None)
    } else {
        (SolveStatus::Unique, None)
    };
    SolveReport {
        status,
        margin,
        norm,
        determinant,
        sample_points: sys.sample_points.clone(),
        solution_samples,
        constant: None,
        provenance: Provenance { route: "exact_reduction", eta: sys.eta.clone(), dim: sys.dim() },
    }
}

/// A solved instance: the report plus what is needed to evaluate `y` anywhere.
#[derive(Clone, Debug)]
pub struct Solved {
    pub report: SolveReport,
    pub system: ReducedSystem,
    /// Unknown vector `(y(s_1), …, y(s_m), c_0)`, present when unique.
    pub unknowns: Option<Vec<Rational>>,
}

impl Solved {
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        self.unknowns.as_ref().map(|x| self.system.reconstruct(x, t))
    }
}

fn finish(system: ReducedSystem) -> Solved {
    let mut report = uniqueness_margin(&system);
    let unknowns = if report.status == SolveStatus::NontrivialKernel {
        None
    } else {
        linalg::solve(&system.matrix, &system.rhs)
    };
    if let Some(x) = &unknowns {
        let m = system.sample_points.len();
        report.solution_samples = Some(x[..m].to_vec());
        report.constant = Some(x[m].clone());
    }
    Solved { report, system, unknowns }
}

/// `y^{(n)} = L y(τ(t)) + C` with periodic boundary conditions.
pub fn solve_periodic(n: usize, period: &Rational, l: &Rational, tau: &StepFunction, c: &Rational) -> Result<Solved, Error> {
    Ok(finish(reduce_system(n, period, l, tau, c, &Rational::zero())?))
}

/// Verdict for the homogeneous weighted problem `y^{(n)} = p(t) y(τ(t))`.
pub fn solve_weighted(n: usize, period: &Rational, p: &StepFunction, tau: &StepFunction) -> Result<SolveReport, Error> {
    Ok(uniqueness_margin(&reduce_weighted(n, period, p, tau, &Rational::zero(), &Rational::zero())?))
}

/// First-order weight with total mass `4 + eps` split between two pulses of
/// width `width` centered at `T/4` and `3T/4` (`T = 1`). While the solution
/// rises across the first pulse, `τ` samples the upper plateau (`1/2`);
/// across the second it samples the lower one (`0`). At `eps = 0` the
/// homogeneous problem has the two-level kernel vector, for every width.
pub fn concentration_instance(eps: &Rational, width: &Rational) -> Result<(StepFunction, StepFunction), Error> {
    let q = rational::rat(1, 4);
    let h = width / rational::int(2);
    if !width.is_positive() || h >= q {
        return Err(Error::InvalidArgument(format!("width must lie in (0, 1/2), got {width}")));
    }
    let zero = Rational::zero();
    let one = rational::int(1);
    let half = rational::rat(1, 2);
    let b = vec![zero.clone(), &q - &h, &q + &h, rational::int(3) * &q - &h, rational::int(3) * &q + &h, one];
    let mass = (rational::int(4) + eps) / rational::int(2) / width;
    let p = StepFunction::new(b.clone(), vec![zero.clone(), mass.clone(), zero.clone(), mass, zero.clone()])?;
    let tau = StepFunction::new(b, vec![zero.clone(), half.clone(), half, zero.clone(), zero])?;
    Ok((p, tau))
}

/// An instance file: `{"n", "T", "L" | "p", "tau", "C"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub n: usize,
    #[serde(rename = "T", with = "rational::serde_str")]
    pub period: Rational,
    #[serde(rename = "L", with = "rational::serde_opt", default, skip_serializing_if = "Option::is_none")]
    pub l: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<StepFunction>,
    pub tau: StepFunction,
    #[serde(rename = "C", with = "rational::serde_str", default = "Rational::zero")]
    pub c: Rational,
}

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::Schema { path: path.into(), message: message.into() }
}

fn field_rational(v: &Value, path: &str) -> Result<Rational, Error> {
    let s = v.as_str().ok_or_else(|| schema(path, "expected a rational string such as \"5/2\""))?;
    rational::parse(s).map_err(|e| schema(path, e.to_string()))
}

fn field_step(v: &Value, path: &str) -> Result<StepFunction, Error> {
    let obj = v.as_object().ok_or_else(|| schema(path, "expected an object with breakpoints and values"))?;
    let list = |key: &str| -> Result<Vec<Rational>, Error> {
        let p = format!("{path}.{key}");
        let arr = obj.get(key).and_then(Value::as_array).ok_or_else(|| schema(&p, "expected an array"))?;
        arr.iter().enumerate().map(|(i, x)| field_rational(x, &format!("{p}[{i}]"))).collect()
    };
    StepFunction::new(list("breakpoints")?, list("values")?).map_err(|e| schema(path, e.to_string()))
}

impl Instance {
    /// Parses and validates, reporting the offending field path on error.
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let v: Value = serde_json::from_str(text).map_err(|e| schema("$", e.to_string()))?;
        let obj = v.as_object().ok_or_else(|| schema("$", "expected an object"))?;
        for key in obj.keys() {
            if !["n", "T", "L", "p", "tau", "C"].contains(&key.as_str()) {
                return Err(schema(&format!("$.{key}"), "unknown field"));
            }
        }
        let n = obj
            .get("n")
            .and_then(Value::as_u64)
            .filter(|&n| n >= 1)
            .ok_or_else(|| schema("$.n", "expected a positive integer"))? as usize;
        let period = field_rational(obj.get("T").ok_or_else(|| schema("$.T", "missing"))?, "$.T")?;
        if !period.is_positive() {
            return Err(schema("$.T", "period must be positive"));
        }
        let l = obj.get("L").map(|x| field_rational(x, "$.L")).transpose()?;
        let p = obj.get("p").map(|x| field_step(x, "$.p")).transpose()?;
        match (&l, &p) {
            (None, None) => return Err(schema("$", "one of L or p is required")),
            (Some(_), Some(_)) => return Err(schema("$", "L and p are mutually exclusive")),
            _ => {}
        }
        if let Some(l) = &l {
            if l.is_negative() {
                return Err(schema("$.L", "must be non-negative"));
            }
        }
        let tau = field_step(obj.get("tau").ok_or_else(|| schema("$.tau", "missing"))?, "$.tau")?;
        if tau.period() != &period {
            return Err(schema("$.tau.breakpoints", format!("must end at T = {period}")));
        }
        if let Some((i, _)) = tau.values().iter().enumerate().find(|(_, v)| v.is_negative() || *v > &period) {
            return Err(schema(&format!("$.tau.values[{i}]"), format!("outside [0, {period}]")));
        }
        if let Some(p) = &p {
            if p.period() != &period {
                return Err(schema("$.p.breakpoints", format!("must end at T = {period}")));
            }
            if let Some((i, _)) = p.values().iter().enumerate().find(|(_, v)| v.is_negative()) {
                return Err(schema(&format!("$.p.values[{i}]"), "weight must be non-negative"));
            }
        }
        let c = obj.get("C").map(|x| field_rational(x, "$.C")).transpose()?.unwrap_or_else(Rational::zero);
        Ok(Instance { n, period, l, p, tau, c })
    }

    pub fn solve(&self) -> Result<Solved, Error> {
        match (&self.l, &self.p) {
            (Some(l), _) => solve_periodic(self.n, &self.period, l, &self.tau, &self.c),
            (None, Some(p)) => Ok(finish(reduce_weighted(self.n, &self.period, p, &self.tau, &self.c, &Rational::zero())?)),
            (None, None) => Err(Error::InvalidArgument("instance needs L or p".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::favard;
    use crate::rational::{int, rat};
    use crate::witness;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn witness_tau(n: usize, period: &Rational) -> StepFunction {
        let w = witness::build_witness(n, period).unwrap();
        StepFunction::new(vec![int(0), period / int(2), period.clone()], vec![w.tau.first, w.tau.second]).unwrap()
    }

    #[test]
    fn witness_deviation_is_singular_at_threshold() {
        let tau = witness_tau(2, &int(1));
        let sys = reduce_system(2, &int(1), &int(32), &tau, &int(0), &int(0)).unwrap();
        assert!(linalg::determinant(&sys.matrix).is_zero());
        let r = uniqueness_margin(&sys);
        assert_eq!(r.status, SolveStatus::NontrivialKernel);
        let v = r.solution_samples.unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v[0], -&v[1]);

        let sys = reduce_system(2, &int(1), &int(16), &tau, &int(0), &int(0)).unwrap();
        assert!(!linalg::determinant(&sys.matrix).is_zero());
        assert_eq!(uniqueness_margin(&sys).status, SolveStatus::Unique);
    }

    #[test]
    fn witness_kernel_matches_witness_values() {
        for n in 1..=6 {
            for period in [int(1), rat(5, 2)] {
                let w = witness::build_witness(n, &period).unwrap();
                let tau = witness_tau(n, &period);
                let r = solve_periodic(n, &period, &w.l_crit, &tau, &int(0)).unwrap().report;
                assert_eq!(r.status, SolveStatus::NontrivialKernel, "n = {n}, T = {period}");
                let v = r.solution_samples.unwrap();
                let expect: Vec<Rational> = r.sample_points.iter().map(|s| w.y.eval(s)).collect();
                assert_eq!(normalize(expect), v);
            }
        }
    }

    #[test]
    fn constant_deviation() {
        let tau = StepFunction::constant(rat(1, 2), int(1)).unwrap();
        let s = solve_periodic(1, &int(1), &int(2), &tau, &int(-2)).unwrap();
        assert_eq!(s.report.status, SolveStatus::Unique);
        assert_eq!(s.report.solution_samples, Some(vec![int(1)]));
        for t in [int(0), rat(1, 3), rat(7, 8)] {
            assert_eq!(s.eval(&t), Some(int(1)));
        }
        for n in 1..=5 {
            let l = favard::favard(n).recip() * rat(1, 2);
            let tau = StepFunction::constant(int(0), int(1)).unwrap();
            let s = solve_periodic(n, &int(1), &l, &tau, &int(3)).unwrap();
            assert_eq!(s.eval(&rat(2, 7)), Some(-int(3) / &l));
        }
    }

    #[test]
    fn reconstruction_solves_the_equation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=4 {
            for _ in 0..5 {
                let period = rat(3, 2);
                let tau = StepFunction::random(&mut rng, &period, 6, 32, &int(0), &period);
                let l = favard::favard(n).recip() / rational::pow(&period, n as u32) * rat(3, 4);
                let c = rat(-5, 7);
                let s = solve_periodic(n, &period, &l, &tau, &c).unwrap();
                let x = s.unknowns.clone().unwrap();
                let y = s.system.to_piecewise(&x).unwrap();
                // representation and repeated integration agree
                for t in [int(0), rat(1, 5), rat(9, 8), rat(4, 3)] {
                    assert_eq!(s.eval(&t).unwrap(), y.eval(&t));
                }
                // y^{(n)} = L y(τ) + C on every cell
                let top = y.nth_derivative(n);
                for b in tau.refine_with(&[]).windows(2) {
                    let mid = (&b[0] + &b[1]) / int(2);
                    assert_eq!(top.eval(&mid), &l * y.eval(tau.eval(&mid)) + &c);
                }
                // below threshold the only solution is the constant
                assert_eq!(y.eval(&rat(1, 3)), -&c / &l);
            }
        }
    }

    #[test]
    fn random_deviations_below_threshold_are_unique() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let l = int(192) * rat(9, 10);
        for _ in 0..200 {
            let tau = StepFunction::random(&mut rng, &int(1), 8, 64, &int(0), &int(1));
            let sys = reduce_system(3, &int(1), &l, &tau, &int(0), &int(0)).unwrap();
            let r = uniqueness_margin(&sys);
            assert_eq!(r.status, SolveStatus::Unique, "{tau:?}");
            assert!(r.margin > 1e-8);
        }
    }

    #[test]
    fn verdict_independent_of_kernel_shift() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=4 {
            let l_crit = favard::favard(n).recip();
            let mut cases = vec![witness_tau(n, &int(1))];
            cases.extend((0..3).map(|_| StepFunction::random(&mut rng, &int(1), 5, 16, &int(0), &int(1))));
            for tau in cases {
                for l in [l_crit.clone(), &l_crit * rat(1, 2), &l_crit * int(3)] {
                    let verdicts: Vec<bool> = [int(0), rat(1, 3), int(-2), rat(7, 5), rat(-1, 48)]
                        .iter()
                        .map(|eta| linalg::determinant(&reduce_system(n, &int(1), &l, &tau, &int(0), eta).unwrap().matrix).is_zero())
                        .collect();
                    assert!(verdicts.iter().all(|&v| v == verdicts[0]), "n = {n}, L = {l}");
                }
            }
        }
    }

    #[test]
    fn rejects_out_of_range_deviation() {
        let tau = StepFunction::constant(int(2), int(1)).unwrap();
        assert!(matches!(reduce_system(1, &int(1), &int(1), &tau, &int(0), &int(0)), Err(Error::DeviationOutOfRange { .. })));
        let tau = StepFunction::constant(int(0), int(1)).unwrap();
        assert!(reduce_system(1, &int(1), &int(-1), &tau, &int(0), &int(0)).is_err());
    }

    #[test]
    fn weighted_first_order_sharpness() {
        let (p, tau) = concentration_instance(&int(0), &rat(1, 10)).unwrap();
        assert_eq!(solve_weighted(1, &int(1), &p, &tau).unwrap().status, SolveStatus::NontrivialKernel);
        let mut last = f64::INFINITY;
        for k in 1..=6 {
            let eps = rat(1, 1 << k);
            let (p, tau) = concentration_instance(&eps, &rat(1, 10 * (k + 1))).unwrap();
            assert_eq!(p.integral(), int(4) + &eps);
            let r = solve_weighted(1, &int(1), &p, &tau).unwrap();
            assert_eq!(r.status, SolveStatus::Unique);
            assert!(r.margin < last, "k = {k}");
            last = r.margin;
        }
    }

    #[test]
    fn weighted_below_threshold() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let tau = StepFunction::random(&mut rng, &int(1), 6, 32, &int(0), &int(1));
            let raw = StepFunction::random(&mut rng, &int(1), 6, 32, &int(0), &int(1));
            if raw.integral().is_zero() {
                continue;
            }
            let p = raw.scale(&(rat(39, 10) / raw.integral()));
            assert_eq!(solve_weighted(1, &int(1), &p, &tau).unwrap().status, SolveStatus::Unique);
        }
        let p = StepFunction::constant(int(8), int(1)).unwrap();
        let tau = witness_tau(2, &int(1));
        assert_eq!(solve_weighted(2, &int(1), &p, &tau).unwrap().status, SolveStatus::Unique);
        let neg = StepFunction::constant(int(-1), int(1)).unwrap();
        assert!(matches!(solve_weighted(1, &int(1), &neg, &tau), Err(Error::NegativeWeight(_))));
    }

    #[test]
    fn instance_schema_paths() {
        let ok = r#"{"n":2,"T":"1","L":"32","tau":{"breakpoints":["0","1/2","1"],"values":["3/4","1/4"]}}"#;
        let inst = Instance::from_json(ok).unwrap();
        assert_eq!(inst.solve().unwrap().report.status, SolveStatus::NontrivialKernel);
        let cases = [
            (r#"{"n":0,"T":"1","L":"1","tau":{"breakpoints":["0","1"],"values":["0"]}}"#, "$.n"),
            (r#"{"n":1,"T":1,"L":"1","tau":{"breakpoints":["0","1"],"values":["0"]}}"#, "$.T"),
            (r#"{"n":1,"T":"1","L":"1","tau":{"breakpoints":["0","1"],"values":["x"]}}"#, "$.tau.values[0]"),
            (r#"{"n":1,"T":"1","L":"1","tau":{"breakpoints":["0","1"],"values":["2"]}}"#, "$.tau.values[0]"),
            (r#"{"n":1,"T":"1","tau":{"breakpoints":["0","1"],"values":["0"]}}"#, "$"),
            (r#"{"n":1,"T":"1","L":"1","tau":{"breakpoints":["0","1"],"values":["0"]},"x":1}"#, "$.x"),
            (r#"{"n":1,"T":"1","p":{"breakpoints":["0","1"],"values":["-1"]},"tau":{"breakpoints":["0","1"],"values":["0"]}}"#, "$.p.values[0]"),
        ];
        for (text, path) in cases {
            match Instance::from_json(text) {
                Err(Error::Schema { path: p, .. }) => assert_eq!(p, path, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn report_json() {
        let tau = witness_tau(2, &int(1));
        let r = solve_periodic(2, &int(1), &int(32), &tau, &int(0)).unwrap().report;
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["status"], "nontrivial_kernel");
        assert_eq!(v["determinant"], "0");
        assert_eq!(v["provenance"]["route"], "exact_reduction");
    }
}
