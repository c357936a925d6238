//! Fox free differential calculus and Alexander matrices.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::laurent::{rat, LaurentMatrix, LaurentPolynomial};
use crate::presentation::{LatticeMap, Presentation, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoxError {
    #[error("quotient does not kill relator {relator}")]
    QuotientInvalid { relator: usize },
    #[error("quotient has {got} generator images, presentation has {expected} generators")]
    GeneratorCountMismatch { expected: usize, got: usize },
}

impl FoxError {
    pub fn code(&self) -> &'static str {
        match self {
            FoxError::QuotientInvalid { .. } => "QuotientInvalid",
            FoxError::GeneratorCountMismatch { .. } => "GeneratorCountMismatch",
        }
    }
}

/// An element of the integral group ring of a free group.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::identity(), 1)
    }

    pub fn from_word(w: Word, c: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &i64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, &a) in &self.terms {
            for (v, &b) in &other.terms {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }

    /// Left multiplication by a group element.
    pub fn left_mul(&self, g: &Word) -> Self {
        let mut out = Self::zero();
        for (w, &c) in &self.terms {
            out.add_term(g.mul(w), c);
        }
        out
    }

    /// Image in the Laurent ring under `w -> t^{q(w)}`.
    pub fn push_forward(&self, q: &LatticeMap) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero(q.target_rank);
        for (w, &c) in &self.terms {
            out.add_term(exponents(&q.image_of(w)), rat(c));
        }
        out
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            if k > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            let a = c.unsigned_abs();
            match (a, w.is_identity()) {
                (_, true) => write!(f, "{a}")?,
                (1, false) => write!(f, "{w}")?,
                _ => write!(f, "{a}*{w}")?,
            }
        }
        Ok(())
    }
}

fn exponents(v: &[i64]) -> Vec<i32> {
    v.iter().map(|&x| i32::try_from(x).expect("exponent fits in i32")).collect()
}

/// `d w / d x_gen` in the integral group ring.
pub fn fox_derivative(w: &Word, gen: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::identity();
    for l in w.letters() {
        if l.gen == gen {
            // d(x^k) = 1 + x + .. + x^{k-1}, and d(x^-k) = -(x^-1 + .. + x^-k)
            if l.exp > 0 {
                for j in 0..l.exp {
                    out.add_term(prefix.mul(&Word::power_of(gen, j)), 1);
                }
            } else {
                for j in 1..=-l.exp {
                    out.add_term(prefix.mul(&Word::power_of(gen, -j)), -1);
                }
            }
        }
        prefix = prefix.mul(&Word::power_of(l.gen, l.exp));
    }
    out
}

/// Checks `sum_i (dw/dx_i)(x_i - 1) = w - 1` in the integral group ring.
pub fn fundamental_identity_check(w: &Word) -> bool {
    let n = w.max_generator().map_or(0, |g| g + 1);
    let mut lhs = GroupRingElement::zero();
    for i in 0..n {
        let xi = GroupRingElement::from_word(Word::generator(i), 1).sub(&GroupRingElement::one());
        lhs = lhs.add(&fox_derivative(w, i).mul(&xi));
    }
    let rhs = GroupRingElement::from_word(w.clone(), 1).sub(&GroupRingElement::one());
    lhs == rhs
}

/// Relators x generators matrix of pushed-forward Fox derivatives.
pub fn alexander_matrix(p: &Presentation, q: &LatticeMap) -> Result<LaurentMatrix, FoxError> {
    let n = p.generator_count();
    if q.generator_count() != n {
        return Err(FoxError::GeneratorCountMismatch { expected: n, got: q.generator_count() });
    }
    if let Some(relator) = q.first_unkilled(p) {
        return Err(FoxError::QuotientInvalid { relator });
    }
    let rows = p
        .relators()
        .iter()
        .map(|r| (0..n).map(|i| fox_derivative(r, i).push_forward(q)).collect())
        .collect();
    Ok(LaurentMatrix::from_rows(q.target_rank, n, rows).expect("uniform shape"))
}

/// The column `(t^{q(x_i)} - 1)_i` as a `1 x n` row.
pub fn augmentation_row(q: &LatticeMap) -> LaurentMatrix {
    let m = q.target_rank;
    let row = q
        .images
        .iter()
        .map(|v| &LaurentPolynomial::unit_monomial(exponents(v)) - &LaurentPolynomial::one(m))
        .collect();
    LaurentMatrix::from_rows(m, q.generator_count(), vec![row]).expect("uniform shape")
}
