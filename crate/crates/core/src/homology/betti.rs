use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{HomologyError, TwistedComplex};
use crate::laurent::Character;

/// Betti numbers of a complex evaluated at one character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiProfile {
    pub character: Character,
    pub betti: Vec<usize>,
    pub chain_ranks: Vec<usize>,
    /// `rank d_j` for `j = 1..=top`.
    pub differential_ranks: Vec<usize>,
}

impl BettiProfile {
    /// `b_j`, zero outside the complex.
    pub fn get(&self, j: usize) -> usize {
        self.betti.get(j).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti.iter().enumerate().map(|(j, &b)| if j % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    /// True when `b_0 = .. = b_r = 0`.
    pub fn vanishes_through(&self, r: usize) -> bool {
        (0..=r).all(|j| self.get(j) == 0)
    }
}

fn betti_from_ranks(c: &TwistedComplex, ranks: &[usize]) -> Vec<usize> {
    let r = |j: usize| if j == 0 { 0 } else { ranks.get(j - 1).copied().unwrap_or(0) };
    (0..=c.top_degree()).map(|j| c.rank(j) - r(j) - r(j + 1)).collect()
}

/// `b_j(rho) = c_j - rank d_j(rho) - rank d_{j+1}(rho)`.
pub fn twisted_betti(c: &TwistedComplex, rho: &Character) -> Result<BettiProfile, HomologyError> {
    let ranks = match rho {
        Character::Generic => generic_ranks(c),
        Character::Rational(coords) => {
            if coords.len() != c.variable_count() {
                return Err(HomologyError::CharacterDimension { expected: c.variable_count(), got: coords.len() });
            }
            c.differentials().par_iter().map(|d| d.rank_at(rho)).collect::<Result<Vec<_>, _>>()?
        }
    };
    Ok(BettiProfile {
        character: rho.clone(),
        betti: betti_from_ranks(c, &ranks),
        chain_ranks: c.ranks().to_vec(),
        differential_ranks: ranks,
    })
}

/// Generic ranks of all differentials.
///
/// Evaluations give lower bounds. Since `d_j d_{j+1} = 0` over the fraction
/// field, `rank d_j <= c_j - rank d_{j+1}` and `rank d_j <= c_{j-1} -
/// rank d_{j-1}`, so lower bounds on the neighbours give upper bounds. Only
/// differentials left with a gap go through symbolic elimination.
pub fn generic_ranks(c: &TwistedComplex) -> Vec<usize> {
    let ds = c.differentials();
    let top = ds.len();
    let mut lo: Vec<usize> = ds.par_iter().map(|d| d.rank_lower_bound(3)).collect();
    let upper = |lo: &[usize], j: usize| -> usize {
        let d = &ds[j];
        let mut u = d.rows().min(d.cols());
        if j > 0 {
            u = u.min(c.rank(j) - lo[j - 1]);
        }
        if j + 1 < top {
            u = u.min(c.rank(j + 1) - lo[j + 1]);
        }
        u
    };
    let gaps: Vec<usize> = (0..top).filter(|&j| lo[j] < upper(&lo, j)).collect();
    let more: Vec<(usize, usize)> = gaps.par_iter().map(|&j| (j, ds[j].rank_lower_bound(12))).collect();
    for (j, r) in more {
        lo[j] = lo[j].max(r);
    }
    let gaps: Vec<usize> = (0..top).filter(|&j| lo[j] < upper(&lo, j)).collect();
    let exact: Vec<(usize, usize)> = gaps.par_iter().map(|&j| (j, ds[j].rank_by_elimination())).collect();
    for (j, r) in exact {
        lo[j] = r;
    }
    lo
}

/// Kunneth convolution of per-factor Betti profiles over a field.
pub fn kunneth_convolution(profiles: &[Vec<usize>]) -> Vec<usize> {
    let mut acc = vec![1usize];
    for p in profiles {
        let mut out = vec![0; acc.len() + p.len().max(1) - 1];
        for (i, &a) in acc.iter().enumerate() {
            for (j, &b) in p.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        acc = out;
    }
    acc
}
