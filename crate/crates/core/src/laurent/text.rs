//! Canonical text form: terms in descending lexicographic order of exponent
//! vector, e.g. `3*t1^2*t2^-1 - 1`. Univariate polynomials use `t`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{LaurentError, LaurentPolynomial};

fn var_name(vars: usize, i: usize) -> String {
    if vars == 1 {
        "t".to_string()
    } else {
        format!("t{}", i + 1)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let vars = self.variable_count();
        for (k, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| if x == 1 { var_name(vars, i) } else { format!("{}^{x}", var_name(vars, i)) })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, message: &str) -> Result<T, LaurentError> {
        Err(LaurentError::Parse { position: self.pos, message: message.to_string() })
    }

    fn integer(&mut self) -> Result<BigInt, LaurentError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse().unwrap())
    }

    fn signed_int(&mut self) -> Result<i32, LaurentError> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let n: i64 = self.integer()?.try_into().map_err(|_| LaurentError::Parse {
            position: self.pos,
            message: "exponent out of range".into(),
        })?;
        let n = if neg { -n } else { n };
        i32::try_from(n).map_err(|_| LaurentError::Parse { position: self.pos, message: "exponent out of range".into() })
    }
}

/// Parses the canonical text form (and any reordering of it) into a
/// polynomial in `vars` variables.
pub fn parse_polynomial(text: &str, vars: usize) -> Result<LaurentPolynomial, LaurentError> {
    let mut c = Cursor { s: text.as_bytes(), pos: 0 };
    let mut out = LaurentPolynomial::zero(vars);
    let mut first = true;
    loop {
        let sign = match c.peek() {
            None if first => return c.err("empty polynomial"),
            None => break,
            Some(b'+') if !first => {
                c.pos += 1;
                1
            }
            Some(b'-') => {
                c.pos += 1;
                -1
            }
            Some(_) if first => 1,
            Some(_) => return c.err("expected '+' or '-'"),
        };
        first = false;
        let mut coef = BigRational::from_integer(BigInt::from(sign));
        let mut exps = vec![0i32; vars];
        loop {
            match c.peek() {
                Some(d) if d.is_ascii_digit() => {
                    let num = c.integer()?;
                    let den = if c.peek() == Some(b'/') {
                        c.pos += 1;
                        c.integer()?
                    } else {
                        BigInt::one()
                    };
                    if den.is_zero() {
                        return c.err("zero denominator");
                    }
                    coef *= BigRational::new(num, den);
                }
                Some(b't') => {
                    c.pos += 1;
                    let idx = if c.s.get(c.pos).is_some_and(u8::is_ascii_digit) {
                        let i: usize = c.integer()?.try_into().unwrap_or(usize::MAX);
                        if i == 0 || i > vars {
                            return c.err("variable index out of range");
                        }
                        i - 1
                    } else if vars == 1 {
                        0
                    } else {
                        return c.err("bare 't' needs a single variable");
                    };
                    let e = if c.peek() == Some(b'^') {
                        c.pos += 1;
                        c.signed_int()?
                    } else {
                        1
                    };
                    exps[idx] += e;
                }
                _ => return c.err("expected a coefficient or variable"),
            }
            if c.peek() == Some(b'*') {
                c.pos += 1;
            } else {
                break;
            }
        }
        out.add_term(exps, coef);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_rendering() {
        let p = LaurentPolynomial::from_terms(2, [(vec![2, -1], 3), (vec![0, 0], -1)]);
        assert_eq!(p.to_string(), "3*t1^2*t2^-1 - 1");
        let q = LaurentPolynomial::from_terms(1, [(vec![0], 1), (vec![1], -1)]);
        assert_eq!(q.to_string(), "-t + 1");
        assert_eq!(LaurentPolynomial::zero(3).to_string(), "0");
    }

    #[test]
    fn rational_coefficients() {
        let p = parse_polynomial("-3/2*t2 + 1/3", 2).unwrap();
        assert_eq!(p.to_string(), "-3/2*t2 + 1/3");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_polynomial("t3", 2).is_err());
        assert!(parse_polynomial("", 1).is_err());
        assert!(parse_polynomial("t +", 1).is_err());
    }

    proptest! {
        #[test]
        fn text_round_trip(
            ts in prop::collection::vec((prop::collection::vec(-3i32..4, 3), -5i64..6), 0..6)
        ) {
            let p = LaurentPolynomial::from_terms(3, ts);
            prop_assert_eq!(parse_polynomial(&p.to_string(), 3).unwrap(), p);
        }
    }
}
