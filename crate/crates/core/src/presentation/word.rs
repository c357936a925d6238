use std::fmt;

use serde::{Deserialize, Serialize};

/// A syllable `x_gen^exp` of a free-group word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub exp: i64,
}

impl Letter {
    pub fn new(gen: usize, exp: i64) -> Self {
        Letter { gen, exp }
    }
}

/// An element of a free group in syllable normal form.
///
/// Adjacent syllables always carry distinct generators and no syllable has a
/// zero exponent, so two words are equal as group elements iff they are equal
/// as values. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn generator(gen: usize) -> Self {
        Word::power_of(gen, 1)
    }

    pub fn power_of(gen: usize, exp: i64) -> Self {
        if exp == 0 {
            Word::identity()
        } else {
            Word { letters: vec![Letter::new(gen, exp)] }
        }
    }

    /// Builds a word from arbitrary syllables, reducing freely.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Builds a word from `(generator, exponent)` pairs.
    pub fn from_pairs(pairs: &[(usize, i64)]) -> Self {
        Word::from_letters(pairs.iter().map(|&(g, e)| Letter::new(g, e)))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Length as a product of `x^{±1}` symbols.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|l| l.exp.unsigned_abs()).sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    fn push(&mut self, l: Letter) {
        if l.exp == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some(last) if last.gen == l.gen => {
                last.exp += l.exp;
                if last.exp == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push(l),
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| Letter::new(l.gen, -l.exp)).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `x y x^-1 y^-1`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.mul(y).mul(&x.inverse()).mul(&y.inverse())
    }

    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.mul(self).mul(&g.inverse())
    }

    /// Exponent-sum vector over `n` generators.
    pub fn exponent_vector(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for l in &self.letters {
            v[l.gen] += l.exp;
        }
        v
    }

    /// Expands into `±1` steps: `(gen, +1 | -1)`.
    pub fn unit_steps(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.letters.iter().flat_map(|l| {
            let s = l.exp.signum();
            std::iter::repeat_n((l.gen, s), l.exp.unsigned_abs() as usize)
        })
    }

    /// Renders using generator names; inverses use `^-k`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

/// Returns the freely reduced form of `w`.
///
/// `Word` values are kept reduced by construction, so this rebuilds from the
/// syllables and is the identity on every value; it exists for callers that
/// assemble syllable lists by hand.
pub fn free_reduce(w: &Word) -> Word {
    Word::from_letters(w.letters.iter().copied())
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return write!(f, "1");
        }
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = self.names.get(l.gen).map(String::as_str).unwrap_or("?");
            if l.exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{}", l.exp)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l.exp == 1 {
                write!(f, "x{}", l.gen)?;
            } else {
                write!(f, "x{}^{}", l.gen, l.exp)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cancels_adjacent_inverse() {
        // a a^-1 b -> b
        let w = Word::from_pairs(&[(0, 1), (0, -1), (1, 1)]);
        assert_eq!(w, Word::generator(1));
    }

    #[test]
    fn identity_reduces_to_identity() {
        assert_eq!(free_reduce(&Word::identity()), Word::identity());
    }

    #[test]
    fn inner_cancellation_merges() {
        // a b b^-1 a -> a^2
        let w = Word::from_pairs(&[(0, 1), (1, 1), (1, -1), (0, 1)]);
        assert_eq!(w, Word::power_of(0, 2));
    }

    #[test]
    fn commutator_shape() {
        let c = Word::commutator(&Word::generator(0), &Word::generator(1));
        assert_eq!(c, Word::from_pairs(&[(0, 1), (1, 1), (0, -1), (1, -1)]));
        assert_eq!(c.exponent_vector(2), vec![0, 0]);
    }

    fn raw_letters() -> impl Strategy<Value = Vec<(usize, i64)>> {
        prop::collection::vec((0usize..3, prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2)]), 0..24)
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent_and_shortens(pairs in raw_letters()) {
            let raw_len: u64 = pairs.iter().map(|p| p.1.unsigned_abs()).sum();
            let w = Word::from_pairs(&pairs);
            prop_assert_eq!(free_reduce(&w), w.clone());
            prop_assert!(w.length() <= raw_len);
            for pair in w.letters().windows(2) {
                prop_assert_ne!(pair[0].gen, pair[1].gen);
            }
        }

        #[test]
        fn inverse_cancels(pairs in raw_letters()) {
            let w = Word::from_pairs(&pairs);
            prop_assert!(w.mul(&w.inverse()).is_identity());
        }
    }
}
