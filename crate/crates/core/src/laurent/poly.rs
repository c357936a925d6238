use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::LaurentError;

/// Exponent vector of a Laurent monomial.
pub type Exponents = Vec<i32>;

/// A Laurent polynomial in `m` variables with rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vector, so equality is
/// structural and iteration order is canonical. No zero coefficient is ever
/// stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    vars: usize,
    terms: BTreeMap<Exponents, BigRational>,
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L[{}]({})", self.vars, self)
    }
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LaurentPolynomial {
    pub fn zero(vars: usize) -> Self {
        LaurentPolynomial { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: usize) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn constant(vars: usize, c: BigRational) -> Self {
        Self::monomial(vars, vec![0; vars], c)
    }

    pub fn from_int(vars: usize, c: i64) -> Self {
        Self::constant(vars, rat(c))
    }

    pub fn monomial(vars: usize, exps: Exponents, c: BigRational) -> Self {
        assert_eq!(exps.len(), vars, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPolynomial { vars, terms }
    }

    /// The unit monomial `t^e`.
    pub fn unit_monomial(exps: Exponents) -> Self {
        let vars = exps.len();
        Self::monomial(vars, exps, BigRational::one())
    }

    /// The variable `t_i` (0-based).
    pub fn variable(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        Self::unit_monomial(e)
    }

    /// Builds from `(exponents, integer coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (Exponents, i64)>>(vars: usize, terms: I) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, rat(c));
        }
        p
    }

    pub fn from_rational_terms<I: IntoIterator<Item = (Exponents, BigRational)>>(vars: usize, terms: I) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: BigRational) {
        debug_assert_eq!(e.len(), self.vars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn variable_count(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&vec![0; self.vars]).is_some_and(|c| c.is_one())
    }

    /// Nonzero scalar times a monomial.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coefficient(&self, e: &[i32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    fn check(&self, other: &Self) -> Result<(), LaurentError> {
        if self.vars != other.vars {
            Err(LaurentError::VariableCountMismatch { left: self.vars, right: other.vars })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut out = Self::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        LaurentPolynomial { vars: self.vars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    /// Multiplies by the monomial `t^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        LaurentPolynomial {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.vars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact substitution at a point with nonzero rational coordinates.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational, LaurentError> {
        if point.len() != self.vars {
            return Err(LaurentError::VariableCountMismatch { left: self.vars, right: point.len() });
        }
        if let Some(i) = point.iter().position(Zero::is_zero) {
            return Err(LaurentError::ZeroCoordinate(i));
        }
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k != 0 {
                    v *= x.pow(k);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Sum of coefficients (value at the trivial character).
    pub fn augmentation(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |a, c| a + c)
    }

    /// Applies the monomial ring map `t^e -> s^{A e}`, where `map` is a
    /// `target x vars` integer matrix.
    pub fn push_forward(&self, map: &[Vec<i64>], target: usize) -> Self {
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let img: Exponents = (0..target)
                .map(|i| map[i].iter().zip(e).map(|(a, &b)| a * i64::from(b)).sum::<i64>() as i32)
                .collect();
            out.add_term(img, c.clone());
        }
        out
    }

    /// Re-reads the polynomial in `total` variables, placing its own
    /// variables at `offset..offset + vars`.
    pub fn embed(&self, total: usize, offset: usize) -> Self {
        assert!(offset + self.vars <= total);
        LaurentPolynomial {
            vars: total,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut full = vec![0; total];
                    full[offset..offset + self.vars].copy_from_slice(e);
                    (full, c.clone())
                })
                .collect(),
        }
    }

    /// Per-variable minimum exponents (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Exponents {
        let mut m: Option<Exponents> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.vars])
    }

    pub fn max_exponents(&self) -> Exponents {
        let mut m: Option<Exponents> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.max(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.vars])
    }

    /// Shifts so that every variable has minimum exponent zero; returns the
    /// shift that was removed.
    pub fn to_polynomial(&self) -> (Self, Exponents) {
        let mins = self.min_exponents();
        let neg: Exponents = mins.iter().map(|x| -x).collect();
        (self.shift(&neg), mins)
    }

    pub fn leading(&self) -> Option<(&Exponents, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / divisor` in the Laurent ring, if it exists.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.vars, divisor.vars);
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.vars));
        }
        let (b, mu) = divisor.to_polynomial();
        let (mut r, nu) = self.to_polynomial();
        let (lb_e, lb_c) = b.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut q = Self::zero(self.vars);
        while let Some((le, lc)) = r.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Exponents = le.iter().zip(&lb_e).map(|(a, b)| a - b).collect();
            if qe.iter().any(|&x| x < 0) {
                return None;
            }
            let qc = lc / &lb_c;
            let term = Self::monomial(self.vars, qe, qc);
            r = &r - &(&term * &b);
            q = &q + &term;
        }
        let back: Exponents = nu.iter().zip(&mu).map(|(a, b)| a - b).collect();
        Some(q.shift(&back))
    }

    /// Divides out the gcd of the coefficients and the monomial content, and
    /// fixes the sign of the leading coefficient. Associates in the Laurent
    /// ring map to the same value.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let (p, _) = self.to_polynomial();
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in p.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut s = BigRational::new(den_lcm, num_gcd);
        if p.leading().unwrap().1.is_negative() {
            s = -s;
        }
        p.scale(&s)
    }

    // Univariate helpers.

    /// `max exponent - min exponent` for a univariate polynomial; `None`
    /// for zero.
    pub fn span(&self) -> Option<u32> {
        assert_eq!(self.vars, 1, "span is univariate");
        let lo = *self.terms.keys().next()?.first()?;
        let hi = self.terms.keys().next_back()?[0];
        Some((hi - lo) as u32)
    }

    /// Univariate normal form: nonzero constant term, monic.
    pub fn normalize_univariate(&self) -> Self {
        assert_eq!(self.vars, 1);
        if self.is_zero() {
            return self.clone();
        }
        let (p, _) = self.to_polynomial();
        let lc = p.leading().unwrap().1.clone();
        p.scale(&lc.recip())
    }

    /// Univariate division with remainder: `self = q * d + r` with
    /// `span(r) < span(d)`.
    pub fn divrem_univariate(&self, d: &Self) -> (Self, Self) {
        assert_eq!(self.vars, 1);
        assert_eq!(d.vars, 1);
        assert!(!d.is_zero(), "division by zero");
        if self.is_zero() {
            return (Self::zero(1), Self::zero(1));
        }
        let (b, mu) = d.to_polynomial();
        let (a, nu) = self.to_polynomial();
        let (db, lcb) = {
            let (e, c) = b.leading().unwrap();
            (e[0], c.clone())
        };
        let mut r = a;
        let mut q = Self::zero(1);
        while let Some((e, c)) = r.leading().map(|(e, c)| (e[0], c.clone())) {
            if e < db {
                break;
            }
            let term = Self::monomial(1, vec![e - db], c / &lcb);
            r = &r - &(&term * &b);
            q = &q + &term;
        }
        // self = t^nu a, d = t^mu b: self = (t^{nu-mu} q) d + t^nu r
        (q.shift(&[nu[0] - mu[0]]), r.shift(&nu))
    }

    pub fn gcd_univariate(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem_univariate(&b);
            a = b;
            b = r;
        }
        a.normalize_univariate()
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: Self) -> LaurentPolynomial {
        self.try_add(rhs).expect("variable count mismatch")
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: Self) -> LaurentPolynomial {
        self.try_sub(rhs).expect("variable count mismatch")
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: Self) -> LaurentPolynomial {
        self.try_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(&rat(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(vars: usize, i: usize) -> LaurentPolynomial {
        LaurentPolynomial::variable(vars, i)
    }

    fn one(vars: usize) -> LaurentPolynomial {
        LaurentPolynomial::one(vars)
    }

    #[test]
    fn difference_of_squares() {
        let x = t(1, 0);
        let p = &(&x - &one(1)) * &(&x + &one(1));
        assert_eq!(p, LaurentPolynomial::from_terms(1, [(vec![2], 1), (vec![0], -1)]));
    }

    #[test]
    fn additive_identity() {
        let p = &t(2, 0) - &LaurentPolynomial::from_int(2, 3);
        assert_eq!(&p + &LaurentPolynomial::zero(2), p);
    }

    #[test]
    fn unit_inverse() {
        let inv = LaurentPolynomial::unit_monomial(vec![-1]);
        assert!((&inv * &t(1, 0)).is_one());
    }

    #[test]
    fn mismatched_variable_counts() {
        assert_eq!(
            t(1, 0).try_add(&t(2, 0)),
            Err(LaurentError::VariableCountMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn evaluate_with_inverse_power() {
        // t1 t2^-1 - 1 at (2, 1/2) = 3
        let p = LaurentPolynomial::from_terms(2, [(vec![1, -1], 1), (vec![0, 0], -1)]);
        let pt = [rat(2), BigRational::new(1.into(), 2.into())];
        assert_eq!(p.evaluate(&pt).unwrap(), rat(3));
    }

    #[test]
    fn evaluate_at_trivial_character_sums_coefficients() {
        let p = LaurentPolynomial::from_terms(3, [(vec![1, -2, 0], 5), (vec![0, 0, 3], -2), (vec![0, 0, 0], 7)]);
        assert_eq!(p.evaluate(&[rat(1), rat(1), rat(1)]).unwrap(), rat(10));
        assert_eq!(p.augmentation(), rat(10));
        let aug = &t(1, 0) - &one(1);
        assert!(aug.evaluate(&[rat(1)]).unwrap().is_zero());
    }

    #[test]
    fn exact_division_multivariate() {
        let a = &(&t(2, 0) - &one(2)) * &(&t(2, 1) + &LaurentPolynomial::unit_monomial(vec![-1, 2]));
        let b = &t(2, 0) - &one(2);
        let q = a.div_exact(&b).unwrap();
        assert_eq!(&q * &b, a);
        assert!(t(2, 0).div_exact(&(&t(2, 1) - &one(2))).is_none());
    }

    #[test]
    fn univariate_gcd() {
        let a = &t(1, 0) - &one(1);
        let b = &t(1, 0).pow(2) - &one(1);
        assert_eq!(a.gcd_univariate(&b), a);
    }

    #[test]
    fn primitive_part_is_associate_invariant() {
        let p = LaurentPolynomial::from_terms(2, [(vec![1, 0], 4), (vec![0, 1], -6)]);
        let q = p.shift(&[-3, 2]).scale(&BigRational::new((-5).into(), 7.into()));
        assert_eq!(p.primitive_part(), q.primitive_part());
    }

    fn small_poly(vars: usize) -> impl Strategy<Value = LaurentPolynomial> {
        prop::collection::vec((prop::collection::vec(-2i32..3, vars), -3i64..4), 0..5)
            .prop_map(move |ts| LaurentPolynomial::from_terms(vars, ts))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(2), b in small_poly(2), c in small_poly(2)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn division_recovers_factor(a in small_poly(2), b in small_poly(2)) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.div_exact(&b), Some(a));
        }

        #[test]
        fn univariate_divrem_contract(a in small_poly(1), d in small_poly(1)) {
            prop_assume!(!d.is_zero());
            let (q, r) = a.divrem_univariate(&d);
            prop_assert_eq!(&(&q * &d) + &r, a);
            if let Some(s) = r.span() {
                prop_assert!(s < d.span().unwrap());
            }
        }

        #[test]
        fn evaluation_is_a_ring_map(a in small_poly(2), b in small_poly(2), x in 1i64..5, y in -4i64..-1) {
            let pt = [rat(x), BigRational::new(1.into(), y.into())];
            let lhs = (&a * &b).evaluate(&pt).unwrap();
            prop_assert_eq!(lhs, a.evaluate(&pt).unwrap() * b.evaluate(&pt).unwrap());
        }
    }
}
