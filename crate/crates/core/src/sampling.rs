//! Seeded sampling of rational characters.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::laurent::Character;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Trials per box size; the box side doubles after each batch.
pub const BATCH: usize = 16;

/// Independent stream for one trial, so results do not depend on the
/// order in which trials run.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Box bound `B` for a trial: `2, 4, 8, ..` per batch, capped at `2^20`.
pub fn box_bound(trial: usize) -> i64 {
    1i64 << (1 + (trial / BATCH).min(19))
}

/// A character with coordinates `p/q`, `p in +-{1..B}`, `q in {1..B}`,
/// never the trivial one (for `m >= 1`).
pub fn sample_character<R: Rng>(rng: &mut R, m: usize, bound: i64) -> Character {
    loop {
        let coords: Vec<BigRational> = (0..m)
            .map(|_| {
                let p = rng.gen_range(1..=bound) * if rng.gen_bool(0.5) { 1 } else { -1 };
                let q = rng.gen_range(1..=bound);
                BigRational::new(BigInt::from(p), BigInt::from(q))
            })
            .collect();
        let c = Character::Rational(coords);
        if m == 0 || !c.is_trivial() {
            return c;
        }
    }
}

/// The trivial character and characters with coordinates in `{1, -1}`:
/// all of them when there are at most 64, otherwise the trivial one, each
/// single sign flip and the all-negative one.
pub fn special_points(m: usize) -> Vec<(String, Character)> {
    let sign = |neg: &dyn Fn(usize) -> bool| {
        Character::from_ints(&(0..m).map(|i| if neg(i) { -1 } else { 1 }).collect::<Vec<_>>()).expect("nonzero")
    };
    let mut out = vec![("trivial".to_string(), Character::trivial(m))];
    if m <= 6 {
        for mask in 1u64..(1 << m) {
            out.push(("order-2".to_string(), sign(&|i| mask >> i & 1 == 1)));
        }
    } else {
        for k in 0..m {
            out.push(("order-2".to_string(), sign(&|i| i == k)));
        }
        out.push(("order-2".to_string(), sign(&|_| true)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_nontrivial() {
        let a = sample_character(&mut trial_rng(7, 3), 2, 2);
        let b = sample_character(&mut trial_rng(7, 3), 2, 2);
        assert_eq!(a, b);
        for t in 0..200 {
            assert!(!sample_character(&mut trial_rng(1, t), 1, 1).is_trivial());
        }
    }

    #[test]
    fn boxes_double() {
        assert_eq!(box_bound(0), 2);
        assert_eq!(box_bound(BATCH), 4);
        assert_eq!(box_bound(1_000_000), 1 << 20);
    }

    #[test]
    fn special_point_counts() {
        assert_eq!(special_points(2).len(), 4);
        assert_eq!(special_points(12).len(), 14);
        assert_eq!(special_points(0).len(), 1);
    }
}
