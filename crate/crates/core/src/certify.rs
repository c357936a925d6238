//! Certificates that the kernel of a map onto `Z^m` is not of type `FP_r`,
//! and the sampling probe for vanishing of twisted homology.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::GroupModel;
use crate::homology::{kernel_homology_univariate, twisted_betti, HomologyError, KernelHomologyReport};
use crate::jump_loci::{
    is_full_generic, is_full_v1, is_full_vr_product, FullnessMethod, FullnessVerdict, JumpLociError, PointCheck,
};
use crate::laurent::Character;
use crate::presentation::{EpimorphismToZm, PresentationError};
use crate::sampling::{box_bound, sample_character, trial_rng};

pub const TOOL_VERSION: &str = concat!("charvar ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertifyError {
    #[error("the homomorphism is trivial")]
    TrivialNu,
    #[error("fullness of the jump locus was not established: {}", .0.reason.as_deref().unwrap_or("no reason recorded"))]
    FullnessNotEstablished(Box<FullnessVerdict>),
    #[error("the Kunneth strategy needs a direct product")]
    NotAProduct,
    #[error("degree must be at least 1")]
    BadDegree,
    #[error("trials must be at least 1")]
    BadTrials,
    #[error("expected a map onto Z, got Z^{0}")]
    NotUnivariate(usize),
    #[error(transparent)]
    JumpLoci(#[from] JumpLociError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

impl CertifyError {
    pub fn code(&self) -> &'static str {
        match self {
            CertifyError::TrivialNu => "TrivialNu",
            CertifyError::FullnessNotEstablished(_) => "FullnessNotEstablished",
            CertifyError::NotAProduct => "NotAProduct",
            CertifyError::BadDegree => "BadDegree",
            CertifyError::BadTrials => "BadTrials",
            CertifyError::NotUnivariate(_) => "NotUnivariate",
            CertifyError::JumpLoci(e) => e.code(),
            CertifyError::Homology(e) => e.code(),
            CertifyError::Presentation(e) => e.code(),
        }
    }
}

/// Validates generator images, reporting a zero map as `TrivialNu`.
pub fn validate_nu(model: &GroupModel, m: usize, images: Vec<Vec<i64>>) -> Result<EpimorphismToZm, CertifyError> {
    model.epimorphism(m, images).map_err(|e| match e {
        PresentationError::ZeroMap => CertifyError::TrivialNu,
        e => CertifyError::Presentation(e),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    GenericRank,
    KunnethProduct,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conclusion {
    #[serde(rename = "H_leq_r_infinite")]
    HLeqRInfinite,
    #[serde(rename = "not_FP_r")]
    NotFpR,
    #[serde(rename = "not_commensurable_FP_r")]
    NotCommensurableFpR,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Citation {
    pub id: String,
    pub statement: String,
}

fn cite(id: &str, statement: &str) -> Citation {
    Citation { id: id.to_string(), statement: statement.to_string() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub name: String,
    pub generators: Vec<String>,
    pub relator_count: usize,
    pub aspherical: bool,
}

impl GroupDescriptor {
    pub fn of(model: &GroupModel) -> Self {
        GroupDescriptor {
            name: model.name.clone(),
            generators: model.presentation().generator_names().to_vec(),
            relator_count: model.presentation().relator_count(),
            aspherical: model.is_aspherical(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NuDescriptor {
    pub target_rank: usize,
    pub images: Vec<Vec<i64>>,
}

impl From<&EpimorphismToZm> for NuDescriptor {
    fn from(nu: &EpimorphismToZm) -> Self {
        NuDescriptor { target_rank: nu.target_rank(), images: nu.images().to_vec() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub method: FullnessMethod,
    pub generic_betti: Vec<usize>,
    pub special_points: Vec<PointCheck>,
    pub fullness: FullnessVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub group: GroupDescriptor,
    pub nu: NuDescriptor,
    pub r: usize,
    pub conclusions: Vec<Conclusion>,
    pub evidence: Evidence,
    pub citations: Vec<Citation>,
    pub seed: u64,
    pub tool_version: String,
}

impl Certificate {
    pub fn infinite_through_r(&self) -> bool {
        self.conclusions.contains(&Conclusion::HLeqRInfinite)
    }
}

/// Establishes that `V^r_1(G)` is the whole torus and derives that
/// `N = ker nu` has infinite-dimensional `H_{<=r}(N; Q)`, so `N` is not
/// `FP_r`, nor commensurable up to finite kernels with an `FP_r` group.
///
/// The criterion only obstructs; a failed hypothesis is reported as an
/// error and never as a claim that `N` is `FP_r`.
pub fn certify_non_fp(
    model: &GroupModel,
    nu: &EpimorphismToZm,
    r: usize,
    strategy: Strategy,
    seed: u64,
) -> Result<Certificate, CertifyError> {
    if nu.as_map().is_zero() {
        return Err(CertifyError::TrivialNu);
    }
    if r == 0 {
        return Err(CertifyError::BadDegree);
    }
    let verdict = match strategy {
        Strategy::GenericRank if r == 1 => is_full_v1(model)?,
        Strategy::GenericRank => is_full_generic(model, r)?,
        Strategy::KunnethProduct => {
            if model.factors().is_empty() {
                return Err(CertifyError::NotAProduct);
            }
            is_full_vr_product(model.factors(), r, seed)?
        }
    };
    if !verdict.is_full {
        return Err(CertifyError::FullnessNotEstablished(Box::new(verdict)));
    }
    let method_citation = match verdict.method {
        FullnessMethod::GenericRank => cite(
            "generic-rank-semicontinuity",
            "rank of an evaluated Laurent matrix is at most its rank over the fraction field, with equality on a nonempty Zariski open set; so b_r(rho) >= b_r(generic) for every rho",
        ),
        FullnessMethod::EulerCurve => cite(
            "euler-curve-fullness",
            "for a curve group with chi < 0, b_0 and b_2 vanish at nontrivial characters, so b_1 = -chi there and V^1_1 is the whole torus",
        ),
        FullnessMethod::KunnethProduct => cite(
            "kunneth-product-fullness",
            "if V^1_1 of each of r factors is the whole torus, then H_r of the product contains the tensor product of the factors' H_1 at every character, so V^r_1 is the whole torus",
        ),
    };
    let citations = vec![
        method_citation,
        cite(
            "generic-vanishing",
            "if H_{<=r}(N; C) is finite-dimensional then H_{<=r}(G, C_{nu*rho}) = 0 for rho in a nonempty Zariski open subset of Hom(Z^m, C*)",
        ),
        cite(
            "fullness-implies-infinite-kernel-homology",
            "if V^r_1(G) is the whole character torus and nu is nontrivial then H_{<=r}(N; C) is infinite-dimensional, hence N is not FP_r",
        ),
        cite(
            "fp-invariance-under-commensurability",
            "FP_r passes to and from finite-index subgroups and across maps with finite kernel, so N is not commensurable up to finite kernels with an FP_r group",
        ),
    ];
    Ok(Certificate {
        group: GroupDescriptor::of(model),
        nu: nu.into(),
        r,
        conclusions: vec![Conclusion::HLeqRInfinite, Conclusion::NotFpR, Conclusion::NotCommensurableFpR],
        evidence: Evidence {
            method: verdict.method,
            generic_betti: verdict.generic_betti.clone().unwrap_or_default(),
            special_points: verdict.special_points.clone(),
            fullness: verdict,
        },
        citations,
        seed,
        tool_version: TOOL_VERSION.to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeSample {
    pub trial: usize,
    pub box_bound: i64,
    pub character: Character,
    /// `b_0 ..= b_r` at the pulled-back character.
    pub betti: Vec<usize>,
    pub vanishing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub r: usize,
    pub trials: usize,
    pub seed: u64,
    pub vanishing: usize,
    /// Degrees above this are homology of the chain model only.
    pub group_homology_through: usize,
    pub samples: Vec<ProbeSample>,
}

/// Samples characters `rho` of `Z^m` and computes `b_{<=r}(G, nu*rho)` by
/// evaluating the chain model pushed forward along `nu`.
pub fn generic_vanishing_probe(
    model: &GroupModel,
    nu: &EpimorphismToZm,
    r: usize,
    trials: usize,
    seed: u64,
) -> Result<ProbeReport, CertifyError> {
    if trials == 0 {
        return Err(CertifyError::BadTrials);
    }
    let c = model.complex(nu.as_map())?;
    let m = nu.target_rank();
    let samples = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let bound = box_bound(trial);
            let rho = sample_character(&mut trial_rng(seed, trial as u64), m, bound);
            let b = twisted_betti(&c, &rho)?;
            let betti: Vec<usize> = (0..=r).map(|j| b.get(j)).collect();
            let vanishing = b.vanishes_through(r);
            Ok(ProbeSample { trial, box_bound: bound, character: rho, betti, vanishing })
        })
        .collect::<Result<Vec<_>, HomologyError>>()?;
    Ok(ProbeReport {
        r,
        trials,
        seed,
        vanishing: samples.iter().filter(|s| s.vanishing).count(),
        group_homology_through: if c.is_aspherical() { c.top_degree() } else { 1 },
        samples,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub certificate_r: usize,
    pub certificate_infinite: bool,
    pub report_infinite: bool,
    pub same_nu: bool,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    pub group: GroupDescriptor,
    pub nu: NuDescriptor,
    pub top_degree: usize,
    pub homology: KernelHomologyReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
}

/// Exact homology of `ker nu` for `nu` onto `Z`, in degrees `0..=top_degree`,
/// optionally checked against a certificate for the same data.
pub fn kernel_report_univariate(
    model: &GroupModel,
    nu: &EpimorphismToZm,
    top_degree: usize,
    certificate: Option<&Certificate>,
) -> Result<KernelReport, CertifyError> {
    if nu.target_rank() != 1 {
        return Err(CertifyError::NotUnivariate(nu.target_rank()));
    }
    let c = model.complex(nu.as_map())?;
    let mut homology = kernel_homology_univariate(&c)?;
    homology.degrees.truncate(top_degree + 1);
    let cross_check = certificate.map(|cert| {
        let report_infinite = homology.infinite_through(cert.r);
        let same_nu = cert.nu == NuDescriptor::from(nu);
        let checkable = same_nu && top_degree >= cert.r;
        CrossCheck {
            certificate_r: cert.r,
            certificate_infinite: cert.infinite_through_r(),
            report_infinite,
            same_nu,
            consistent: !checkable || !cert.infinite_through_r() || report_infinite,
        }
    });
    Ok(KernelReport { group: GroupDescriptor::of(model), nu: nu.into(), top_degree, homology, cross_check })
}
