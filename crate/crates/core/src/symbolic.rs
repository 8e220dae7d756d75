//! A minimal sparse multivariate polynomial over exact rationals.
//!
//! The nonexistence certificates only ever manipulate polynomials of total
//! degree at most three in a handful of named variables, so a `BTreeMap`
//! keyed by monomial is plenty. The one nontrivial primitive is the shift
//! criterion: after substituting `v -> v + lower_bound(v)` for every
//! variable, a polynomial with nonnegative coefficients is nonnegative on
//! the whole box `v >= lower_bound(v)`, and strictly positive there if its
//! constant term is positive.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Var = &'static str;

/// A power product of variables, e.g. `a * k^2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Monomial(BTreeMap<Var, u32>);

impl Monomial {
    fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    fn var(v: Var) -> Self {
        let mut m = BTreeMap::new();
        m.insert(v, 1);
        Monomial(m)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (&v, &e) in &other.0 {
            *m.entry(v).or_insert(0) += e;
        }
        Monomial(m)
    }

    fn is_constant(&self) -> bool {
        self.0.is_empty()
    }
}

/// A sparse polynomial with `BigRational` coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly::default();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn int(c: i64) -> Self {
        Poly::constant(BigRational::from(BigInt::from(c)))
    }

    /// `p/q` as a constant polynomial.
    pub fn frac(p: i64, q: i64) -> Self {
        Poly::constant(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn var(v: Var) -> Self {
        let mut p = Poly::default();
        p.terms.insert(Monomial::var(v), BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        self.mul(&Poly::constant(c.clone()))
    }

    fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::constant(BigRational::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Replaces every occurrence of `v` with `replacement`.
    pub fn substitute(&self, v: Var, replacement: &Poly) -> Poly {
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = rest.0.remove(v).unwrap_or(0);
            let mut piece = Poly::default();
            piece.terms.insert(rest, c.clone());
            out = out.add(&piece.mul(&replacement.pow(e)));
        }
        out
    }

    /// Evaluates at a full assignment; variables missing from `point` keep
    /// the polynomial symbolic, which is an error for evaluation, so they
    /// are treated as zero. Callers bind every variable in practice.
    pub fn eval(&self, point: &BTreeMap<Var, BigRational>) -> BigRational {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (&v, &e) in &m.0 {
                let value = point.get(v).cloned().unwrap_or_else(BigRational::zero);
                for _ in 0..e {
                    term *= &value;
                }
            }
            total += term;
        }
        total
    }

    /// The terms as `((variable, exponent) list, coefficient)` pairs in
    /// monomial order.
    pub fn terms(&self) -> Vec<(Vec<(Var, u32)>, BigRational)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.0.iter().map(|(&v, &e)| (v, e)).collect(), c.clone()))
            .collect()
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = Vec::new();
        for m in self.terms.keys() {
            for &v in m.0.keys() {
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
        }
        vars.sort_unstable();
        vars
    }

    /// Shifts every bounded variable to its lower bound: `v -> v + lb`.
    pub fn shift_to_bounds(&self, bounds: &[(Var, i64)]) -> Poly {
        let mut out = self.clone();
        for &(v, lb) in bounds {
            let replacement = Poly::var(v).add(&Poly::int(lb));
            out = out.substitute(v, &replacement);
        }
        out
    }

    /// Sufficient certificate that the polynomial is `>= 0` on the box
    /// `v >= lb` for every `(v, lb)` in `bounds`: after shifting, all
    /// coefficients are nonnegative. Every variable of the polynomial must
    /// appear in `bounds` for the criterion to be meaningful.
    pub fn nonneg_on(&self, bounds: &[(Var, i64)]) -> bool {
        if !self.variables().iter().all(|v| bounds.iter().any(|(b, _)| b == v)) {
            return false;
        }
        let shifted = self.shift_to_bounds(bounds);
        shifted.terms.values().all(|c| !c.is_negative())
    }

    /// Sufficient certificate for strict positivity on the same box: the
    /// shifted polynomial has nonnegative coefficients and a positive
    /// constant term.
    pub fn positive_on(&self, bounds: &[(Var, i64)]) -> bool {
        if !self.variables().iter().all(|v| bounds.iter().any(|(b, _)| b == v)) {
            return false;
        }
        let shifted = self.shift_to_bounds(bounds);
        let all_nonneg = shifted.terms.values().all(|c| !c.is_negative());
        let constant_positive = shifted
            .terms
            .iter()
            .any(|(m, c)| m.is_constant() && c.is_positive());
        all_nonneg && constant_positive
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: Var) -> Poly {
        Poly::var(name)
    }

    #[test]
    fn arithmetic_basics() {
        let p = v("x").add(&Poly::int(2)).mul(&v("x").sub(&Poly::int(2)));
        // (x+2)(x-2) = x^2 - 4
        let expect = v("x").mul(&v("x")).sub(&Poly::int(4));
        assert_eq!(p, expect);
        assert!(p.sub(&expect).is_zero());
    }

    #[test]
    fn substitution() {
        // x^2 at x = k + 1 gives k^2 + 2k + 1.
        let p = v("x").mul(&v("x")).substitute("x", &v("k").add(&Poly::int(1)));
        let expect = v("k")
            .mul(&v("k"))
            .add(&v("k").scale(&BigRational::from(BigInt::from(2))))
            .add(&Poly::int(1));
        assert_eq!(p, expect);
    }

    #[test]
    fn eval_binds_variables() {
        let p = v("a").mul(&v("k")).add(&Poly::int(3));
        let point: BTreeMap<Var, BigRational> = [
            ("a", BigRational::from(BigInt::from(4))),
            ("k", BigRational::from(BigInt::from(5))),
        ]
        .into_iter()
        .collect();
        assert_eq!(p.eval(&point), BigRational::from(BigInt::from(23)));
    }

    #[test]
    fn shift_positivity_criterion() {
        // (e+1)k + 8 > 0 for e >= 2, k >= 5.
        let p = v("e").add(&Poly::int(1)).mul(&v("k")).add(&Poly::int(8));
        assert!(p.positive_on(&[("e", 2), ("k", 5)]));
        // k - 100 is not provably positive for k >= 5.
        let q = v("k").sub(&Poly::int(100));
        assert!(!q.positive_on(&[("k", 5)]));
        // but it is for k >= 101.
        assert!(q.positive_on(&[("k", 101)]));
    }

    #[test]
    fn positivity_requires_bounds_for_all_vars() {
        let p = v("a").add(&Poly::int(1));
        assert!(!p.positive_on(&[("k", 5)]));
    }

    #[test]
    fn nonneg_allows_zero_constant() {
        let p = v("k").sub(&Poly::int(5));
        assert!(p.nonneg_on(&[("k", 5)]));
        assert!(!p.positive_on(&[("k", 5)]));
    }
}
