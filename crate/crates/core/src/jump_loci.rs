//! Characteristic varieties: membership, determinantal ideals, and fullness.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::GroupModel;
use crate::fox::alexander_matrix;
use crate::homology::{kunneth_convolution, tensor_all, twisted_betti, HomologyError, TwistedComplex};
use crate::laurent::{Character, LaurentError, LaurentPolynomial, DEFAULT_MINOR_CEILING};
use crate::presentation::{abelianize, integer_smith, LatticeMap, Presentation};
use crate::sampling::{sample_character, special_points, trial_rng};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JumpLociError {
    #[error("degree {degree} needs an aspherical chain model; this one only computes group homology through degree 1")]
    UnsupportedDegree { degree: usize },
    #[error("depth must be at least 1")]
    BadDepth,
    #[error("degree {r} does not match the {factors} factors")]
    DegreeMismatch { r: usize, factors: usize },
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

impl JumpLociError {
    pub fn code(&self) -> &'static str {
        match self {
            JumpLociError::UnsupportedDegree { .. } => "UnsupportedDegree",
            JumpLociError::BadDepth => "BadDepth",
            JumpLociError::DegreeMismatch { .. } => "DegreeMismatch",
            JumpLociError::Homology(e) => e.code(),
            JumpLociError::Laurent(e) => e.code(),
        }
    }
}

/// Is `dim H_s(G, C_rho) >= t`?
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpLocusQuery {
    pub degree: usize,
    pub depth: usize,
    pub character: Character,
}

fn check_degree(model: &GroupModel, degree: usize) -> Result<(), JumpLociError> {
    if degree >= 2 && !model.is_aspherical() {
        return Err(JumpLociError::UnsupportedDegree { degree });
    }
    Ok(())
}

/// Membership of a character (on the full torus of `model`) in `V^s_t`.
pub fn in_variety(model: &GroupModel, q: &JumpLocusQuery) -> Result<bool, JumpLociError> {
    if q.depth == 0 {
        return Err(JumpLociError::BadDepth);
    }
    check_degree(model, q.degree)?;
    let b = twisted_betti(&model.full_complex()?, &q.character)?;
    Ok(b.get(q.degree) >= q.depth)
}

/// Generators of the ideal cutting out `V^1_t` away from the trivial
/// character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct V1Ideal {
    pub depth: usize,
    pub minor_size: usize,
    /// Distinct nonzero minors, each normalized up to units.
    pub generators: Vec<String>,
    pub zero_ideal: bool,
    pub unit_ideal: bool,
    /// `b_1` at the trivial character, where the ideal does not apply.
    pub trivial_character_b1: usize,
    pub caveats: Vec<String>,
    #[serde(skip)]
    pub polynomials: Vec<LaurentPolynomial>,
}

/// For `rho != 1`, `b_1(rho) = n - 1 - rank A(rho)`, so `b_1 >= t` iff every
/// minor of size `n - t` of the Alexander matrix `A` vanishes at `rho`.
pub fn v1_ideal(p: &Presentation, depth: usize) -> Result<V1Ideal, JumpLociError> {
    v1_ideal_with_ceiling(p, depth, DEFAULT_MINOR_CEILING)
}

pub fn v1_ideal_with_ceiling(p: &Presentation, depth: usize, ceiling: u128) -> Result<V1Ideal, JumpLociError> {
    if depth == 0 {
        return Err(JumpLociError::BadDepth);
    }
    let ab = abelianize(p);
    let a = alexander_matrix(p, &LatticeMap::from_abelian(&ab)).map_err(HomologyError::from)?;
    let n = p.generator_count();
    let k = n.saturating_sub(depth);
    let mut polys: Vec<LaurentPolynomial> = if k > a.rows().min(a.cols()) {
        Vec::new()
    } else {
        a.minors(k, ceiling)?.into_iter().filter(|m| !m.is_zero()).map(|m| m.primitive_part()).collect()
    };
    polys.sort_by_key(|x| x.to_string());
    polys.dedup();
    let unit_ideal = polys.iter().any(LaurentPolynomial::is_unit);
    let trivial_character_b1 = n - integer_smith(&p.exponent_matrix(), n).rank;
    let mut caveats = vec![format!(
        "the trivial character is excluded from the zero set; there b_1 = {trivial_character_b1}"
    )];
    if ab.has_torsion() {
        caveats.push("the abelianization has torsion; only the identity component of the character torus is described".into());
    }
    Ok(V1Ideal {
        depth,
        minor_size: k,
        generators: polys.iter().map(ToString::to_string).collect(),
        zero_ideal: polys.is_empty(),
        unit_ideal,
        trivial_character_b1,
        caveats,
        polynomials: polys,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FullnessStatus {
    Full,
    NotFull,
    /// The method's hypotheses fail; no claim either way.
    NotConcluded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FullnessMethod {
    GenericRank,
    KunnethProduct,
    EulerCurve,
}

/// `b_s` at one explicitly checked character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCheck {
    pub label: String,
    pub character: Character,
    pub betti: usize,
    /// Lower bound predicted by the method (`1` unless stated otherwise).
    pub bound: usize,
    pub passed: bool,
}

/// Whether `V^s_1` is the whole character torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullnessVerdict {
    pub status: FullnessStatus,
    pub is_full: bool,
    pub method: FullnessMethod,
    pub degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generic_betti: Option<Vec<usize>>,
    /// Largest `t` with `b_s(generic) >= t`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generic_depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler_characteristic: Option<i64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub factors: Vec<FullnessVerdict>,
    pub special_points: Vec<PointCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub samples: Vec<PointCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

fn check_points(c: &TwistedComplex, degree: usize, points: Vec<(String, Character)>) -> Result<Vec<PointCheck>, JumpLociError> {
    points
        .into_iter()
        .map(|(label, character)| {
            let betti = twisted_betti(c, &character)?.get(degree);
            Ok(PointCheck { label, character, betti, bound: 1, passed: betti >= 1 })
        })
        .collect()
}

fn finish(mut v: FullnessVerdict) -> FullnessVerdict {
    if v.status == FullnessStatus::Full && v.special_points.iter().chain(&v.samples).any(|p| !p.passed) {
        v.status = FullnessStatus::NotConcluded;
        v.reason = Some("a checked character violates the predicted lower bound".into());
    }
    v.is_full = v.status == FullnessStatus::Full;
    v
}

/// Decides `V^s_1 = T` from the generic Betti number `b_s`.
///
/// `V^s_1` is Zariski closed and `b_s(rho) >= b_s(generic)` everywhere, so
/// the torus is full iff `b_s(generic) >= 1`.
pub fn is_full_generic(model: &GroupModel, degree: usize) -> Result<FullnessVerdict, JumpLociError> {
    check_degree(model, degree)?;
    let c = model.full_complex()?;
    let generic = twisted_betti(&c, &Character::Generic)?;
    let bs = generic.get(degree);
    let status = if bs >= 1 { FullnessStatus::Full } else { FullnessStatus::NotFull };
    Ok(finish(FullnessVerdict {
        status,
        is_full: false,
        method: FullnessMethod::GenericRank,
        degree,
        generic_depth: Some(bs),
        generic_betti: Some(generic.betti),
        euler_characteristic: None,
        factors: Vec::new(),
        special_points: check_points(&c, degree, special_points(c.variable_count()))?,
        samples: Vec::new(),
        reason: (bs == 0).then(|| format!("generic b_{degree} is 0")),
    }))
}

/// `V^1_1 = T`. Curve groups with negative Euler characteristic are full
/// without elimination: `b_0 = b_2 = 0` off the trivial character forces
/// `b_1 = -chi`.
pub fn is_full_v1(model: &GroupModel) -> Result<FullnessVerdict, JumpLociError> {
    match model.curve_euler() {
        Some(chi) if chi < 0 => {
            let c = model.full_complex()?;
            Ok(finish(FullnessVerdict {
                status: FullnessStatus::Full,
                is_full: false,
                method: FullnessMethod::EulerCurve,
                degree: 1,
                generic_betti: None,
                generic_depth: Some((-chi) as usize),
                euler_characteristic: Some(chi),
                factors: Vec::new(),
                special_points: check_points(&c, 1, special_points(c.variable_count()))?,
                samples: Vec::new(),
                reason: None,
            }))
        }
        _ => is_full_generic(model, 1),
    }
}

/// Sufficient criterion for `V^r_1` of a product of `r` factors: each
/// factor has `V^1_1` full, and then `H_r` of the product contains the
/// tensor product of the factors' `H_1` at every character.
pub fn is_full_vr_product(factors: &[GroupModel], r: usize, seed: u64) -> Result<FullnessVerdict, JumpLociError> {
    if r != factors.len() {
        return Err(JumpLociError::DegreeMismatch { r, factors: factors.len() });
    }
    let verdicts = factors.iter().map(is_full_v1).collect::<Result<Vec<_>, _>>()?;
    let complexes = factors.iter().map(GroupModel::full_complex).collect::<Result<Vec<_>, _>>()?;
    let product = tensor_all(&complexes)?;
    let not_full = verdicts.iter().position(|v| !v.is_full);
    let mut v = FullnessVerdict {
        status: FullnessStatus::Full,
        is_full: false,
        method: FullnessMethod::KunnethProduct,
        degree: r,
        generic_betti: None,
        generic_depth: None,
        euler_characteristic: None,
        factors: verdicts,
        special_points: Vec::new(),
        samples: Vec::new(),
        reason: None,
    };
    if let Some(i) = not_full {
        v.status = FullnessStatus::NotConcluded;
        v.reason = Some(format!("factor {} not full", i + 1));
        return Ok(finish(v));
    }
    let generic: Vec<Vec<usize>> = complexes
        .iter()
        .map(|c| twisted_betti(c, &Character::Generic).map(|b| b.betti))
        .collect::<Result<_, _>>()?;
    let mut conv = kunneth_convolution(&generic);
    conv.resize(product.top_degree() + 1, 0);
    v.generic_depth = conv.get(r).copied();
    v.generic_betti = Some(conv);
    v.special_points = check_points(&product, r, special_points(product.variable_count()))?;
    v.samples = kunneth_spot_check(&complexes, &product, r, seed, 4)?;
    Ok(finish(v))
}

/// Samples characters of the product torus and compares `b_r` of the
/// product with the product of the factors' `b_1`.
pub fn kunneth_spot_check(
    factors: &[TwistedComplex],
    product: &TwistedComplex,
    r: usize,
    seed: u64,
    count: usize,
) -> Result<Vec<PointCheck>, JumpLociError> {
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let rho = sample_character(&mut trial_rng(seed, k as u64), product.variable_count(), 16);
        let mut offset = 0;
        let mut bound = 1;
        for f in factors {
            let part = rho.restrict(offset, offset + f.variable_count());
            offset += f.variable_count();
            bound *= twisted_betti(f, &part)?.get(1);
        }
        let betti = twisted_betti(product, &rho)?.get(r);
        out.push(PointCheck { label: "sample".into(), character: rho, betti, bound, passed: betti >= bound && bound >= 1 });
    }
    Ok(out)
}
