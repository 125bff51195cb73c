//! Real root isolation for rational polynomials on a bounded interval.
//!
//! Roots are counted with a Sturm sequence of the square-free part and then
//! narrowed by bisection to rational enclosures. Whenever the simplest rational
//! inside an enclosure is an exact root it is reported as such; the extremal
//! constructions in this crate have rational critical points and rely on this.

use num_traits::{Signed, Zero};

use crate::poly::Polynomial;
use crate::rational::{self, Rational};

/// A root of a polynomial known to lie in `[lo, hi]`; `lo == hi` when exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootEnclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootEnclosure {
    pub fn exact(r: Rational) -> Self {
        RootEnclosure { lo: r.clone(), hi: r }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }
}

struct Sturm {
    chain: Vec<Polynomial>,
}

impl Sturm {
    fn new(p: &Polynomial) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(-&r);
        }
        Sturm { chain }
    }

    fn sign_changes(&self, t: &Rational) -> usize {
        let mut changes = 0;
        let mut last = 0i8;
        for q in &self.chain {
            let v = q.eval(t);
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    changes += 1;
                }
                last = s;
            }
        }
        changes
    }

    /// Number of distinct roots in the half-open interval `(a, b]`.
    fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.sign_changes(a).saturating_sub(self.sign_changes(b))
    }
}

/// Isolates all distinct real roots of `p` in the closed interval `[a, b]`.
///
/// Each returned enclosure has width at most `tol` unless it is exact. The
/// zero polynomial has no isolated roots and yields an empty list.
pub fn isolate_roots(p: &Polynomial, a: &Rational, b: &Rational, tol: &Rational) -> Vec<RootEnclosure> {
    assert!(a <= b);
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sf = p.square_free();
    let sturm = Sturm::new(&sf);
    let mut out = Vec::new();
    if sf.eval(a).is_zero() {
        out.push(RootEnclosure::exact(a.clone()));
    }
    let mut stack = vec![(a.clone(), b.clone())];
    let mut isolated = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        let k = sturm.count(&lo, &hi);
        if k == 0 {
            continue;
        }
        if k == 1 {
            isolated.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / rational::int(2);
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    for (lo, hi) in isolated {
        out.push(refine(&sf, lo, hi, tol));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

// `sf` has exactly one root in (lo, hi].
fn refine(sf: &Polynomial, mut lo: Rational, mut hi: Rational, tol: &Rational) -> RootEnclosure {
    let two = rational::int(2);
    if sf.eval(&hi).is_zero() {
        return RootEnclosure::exact(hi);
    }
    let mut sign_hi = sf.eval(&hi).is_positive();
    // Non-simple roots of the original polynomial are simple in the square-free part,
    // so the sign changes across the root.
    loop {
        let candidate = rational::simplest_between(&lo, &hi);
        if candidate != lo && sf.eval(&candidate).is_zero() {
            return RootEnclosure::exact(candidate);
        }
        if &hi - &lo <= *tol {
            return RootEnclosure { lo, hi };
        }
        let mid = (&lo + &hi) / &two;
        let v = sf.eval(&mid);
        if v.is_zero() {
            return RootEnclosure::exact(mid);
        }
        if v.is_positive() == sign_hi {
            hi = mid;
            sign_hi = v.is_positive();
        } else {
            lo = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn rational_roots_are_exact() {
        // (12t - 1)(4t - 3)
        let q = &p(&[-1, 12]) * &p(&[-3, 4]);
        let roots = isolate_roots(&q, &int(0), &int(1), &rat(1, 1 << 40));
        assert_eq!(roots, vec![RootEnclosure::exact(rat(1, 12)), RootEnclosure::exact(rat(3, 4))]);
    }

    #[test]
    fn irrational_roots_are_enclosed() {
        // t^2 - 1/2 on [0, 1]
        let q = Polynomial::new(vec![rat(-1, 2), int(0), int(1)]);
        let tol = rat(1, 1 << 40);
        let roots = isolate_roots(&q, &int(0), &int(1), &tol);
        assert_eq!(roots.len(), 1);
        let r = &roots[0];
        assert!(!r.is_exact() && r.width() <= tol);
        let s = rational::to_f64(&r.mid());
        assert!((s - 0.5f64.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn repeated_roots_and_endpoints() {
        let q = &(&p(&[0, 1]) * &p(&[-1, 2])) * &p(&[-1, 2]);
        let roots = isolate_roots(&q, &int(0), &int(1), &rat(1, 1000));
        assert_eq!(roots, vec![RootEnclosure::exact(int(0)), RootEnclosure::exact(rat(1, 2))]);
        assert!(isolate_roots(&p(&[3]), &int(0), &int(1), &rat(1, 10)).is_empty());
    }
}
