use serde::{Deserialize, Serialize};

use super::{presentation_complex, twisted_betti, HomologyError};
use crate::laurent::Character;
use crate::presentation::{integer_smith, EpimorphismToZm, Letter, Presentation, Word};

/// Consistency of the index-2 cover with twisted homology at `t = +-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub index: usize,
    pub subgroup_generators: usize,
    pub subgroup_relators: usize,
    pub subgroup_b1: usize,
    /// `(character label, b_1)` for each character of order dividing 2.
    pub twisted_b1: Vec<(String, usize)>,
    pub twisted_sum: usize,
    pub consistent: bool,
}

/// Reidemeister-Schreier presentation of `nu^-1(kZ)` for `nu` onto `Z`.
///
/// The transversal is `x0^j` for a generator whose image is a unit mod
/// `k`; Schreier generators that are trivial words become relators.
pub fn reidemeister_schreier(p: &Presentation, nu: &EpimorphismToZm, k: usize) -> Result<Presentation, HomologyError> {
    if nu.target_rank() != 1 {
        return Err(HomologyError::NotUnivariate(nu.target_rank()));
    }
    let k = k as i64;
    let img: Vec<i64> = nu.images().iter().map(|v| v[0]).collect();
    let x0 = img
        .iter()
        .position(|&a| num_integer::Integer::gcd(&a.rem_euclid(k), &k) == 1)
        .ok_or(HomologyError::NoTransversal { index: k as usize })?;
    let a0 = img[x0].rem_euclid(k);
    // T_c = x0^{j(c)} with j(c) * a0 = c mod k
    let reps: Vec<Word> = (0..k)
        .map(|c| {
            let j = (0..k).find(|&j| (j * a0).rem_euclid(k) == c).expect("a0 is a unit");
            Word::power_of(x0, j)
        })
        .collect();
    let n = p.generator_count();
    let sg = |c: i64, x: usize| (c as usize) * n + x;
    let mut names = Vec::with_capacity(n * k as usize);
    for c in 0..k {
        for name in p.generator_names() {
            names.push(format!("{name}_{c}"));
        }
    }
    let mut relators = Vec::new();
    for c in 0..k {
        for x in 0..n {
            let target = (c + img[x]).rem_euclid(k);
            let w = reps[c as usize].mul(&Word::generator(x)).mul(&reps[target as usize].inverse());
            if w.is_identity() {
                relators.push(Word::generator(sg(c, x)));
            }
        }
    }
    for r in p.relators() {
        for start in 0..k {
            let mut c = start;
            let mut letters = Vec::new();
            for (x, s) in r.unit_steps() {
                if s > 0 {
                    letters.push(Letter::new(sg(c, x), 1));
                    c = (c + img[x]).rem_euclid(k);
                } else {
                    c = (c - img[x]).rem_euclid(k);
                    letters.push(Letter::new(sg(c, x), -1));
                }
            }
            relators.push(Word::from_letters(letters));
        }
    }
    Ok(Presentation::new(names, relators)?)
}

/// Ordinary first Betti number from the relator exponent matrix.
pub fn first_betti(p: &Presentation) -> usize {
    let n = p.generator_count();
    n - integer_smith(&p.exponent_matrix(), n).rank
}

/// Compares `b_1` of the index-2 subgroup with the sum of twisted `b_1`
/// over the characters `t -> 1` and `t -> -1`.
pub fn finite_cover_oracle(p: &Presentation, nu: &EpimorphismToZm) -> Result<CoverReport, HomologyError> {
    let sub = reidemeister_schreier(p, nu, 2)?;
    let subgroup_b1 = first_betti(&sub);
    let c = presentation_complex(p, nu.as_map())?;
    let mut twisted_b1 = Vec::new();
    for v in [1, -1] {
        let rho = Character::from_ints(&[v])?;
        twisted_b1.push((rho.to_string(), twisted_betti(&c, &rho)?.get(1)));
    }
    let twisted_sum = twisted_b1.iter().map(|(_, b)| b).sum();
    Ok(CoverReport {
        index: 2,
        subgroup_generators: sub.generator_count(),
        subgroup_relators: sub.relator_count(),
        subgroup_b1,
        twisted_b1,
        twisted_sum,
        consistent: subgroup_b1 == twisted_sum,
    })
}
