//! Catalog of groups with chain models: surface groups, free groups, direct
//! products, right-angled Artin groups and their Bestvina-Brady maps, flag
//! complexes, and the numerology of products of double covers.

mod graph;
mod pencil;

pub use graph::{flag_complex, parse_graph, raag_complex, reduced_homology, salvetti_complex, Graph, SimplicialComplex};
pub use pencil::{branch_monodromy_check, pencil_numerology, riemann_hurwitz_audit, PencilData, RiemannHurwitzAudit};

use serde::Serialize;
use thiserror::Error;

use crate::fox::FoxError;
use crate::homology::{presentation_complex, tensor_all, HomologyError, TwistedComplex};
use crate::presentation::{
    abelianize, AbelianData, EpimorphismToZm, LatticeMap, Presentation, PresentationError, Word,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("genus must be at least 1")]
    ZeroGenus,
    #[error("need at least {need} factors, got {got}")]
    TooFewFactors { got: usize, need: usize },
    #[error("factor {index} has genus {genus}; branched double covers need genus at least 2")]
    GenusTooSmall { index: usize, genus: u32 },
    #[error("bad edge ({u}, {v}): {reason}")]
    InvalidEdge { u: usize, v: usize, reason: &'static str },
    #[error("graph line {line}: {message}")]
    GraphParse { line: usize, message: String },
    #[error("the graph has no vertices")]
    EmptyGraph,
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

impl ConstructionError {
    pub fn code(&self) -> &'static str {
        match self {
            ConstructionError::ZeroGenus => "ZeroGenus",
            ConstructionError::TooFewFactors { .. } => "TooFewFactors",
            ConstructionError::GenusTooSmall { .. } => "GenusTooSmall",
            ConstructionError::InvalidEdge { .. } => "InvalidEdge",
            ConstructionError::GraphParse { .. } => "GraphParse",
            ConstructionError::EmptyGraph => "EmptyGraph",
            ConstructionError::UnknownPreset(_) => "UnknownPreset",
            ConstructionError::Presentation(e) => e.code(),
        }
    }
}

/// How homology of a group model is computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ChainModel {
    /// The presentation 2-complex.
    Presentation,
    /// Tensor product of the factors' models.
    Product { factors: Vec<GroupModel> },
    /// The cube complex of a right-angled Artin group.
    Salvetti { graph: Graph },
}

/// A group together with the chain model used for its homology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupModel {
    pub name: String,
    presentation: Presentation,
    #[serde(skip)]
    abelian: AbelianData,
    aspherical: bool,
    curve_euler: Option<i64>,
    #[serde(skip)]
    chain: ChainModel,
}

impl GroupModel {
    /// A user-supplied presentation: no asphericity tag, since asphericity
    /// of a presentation complex cannot be decided in general.
    pub fn from_presentation(name: impl Into<String>, p: Presentation) -> Self {
        let abelian = abelianize(&p);
        GroupModel {
            name: name.into(),
            presentation: p,
            abelian,
            aspherical: false,
            curve_euler: None,
            chain: ChainModel::Presentation,
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn abelian(&self) -> &AbelianData {
        &self.abelian
    }

    pub fn is_aspherical(&self) -> bool {
        self.aspherical
    }

    /// Euler characteristic when the group is the fundamental group of a
    /// curve.
    pub fn curve_euler(&self) -> Option<i64> {
        self.curve_euler
    }

    pub fn chain_model(&self) -> &ChainModel {
        &self.chain
    }

    /// Direct factors; empty unless the model is a product.
    pub fn factors(&self) -> &[GroupModel] {
        match &self.chain {
            ChainModel::Product { factors } => factors,
            _ => &[],
        }
    }

    /// Rank of the torsion-free part of the abelianization.
    pub fn torus_dimension(&self) -> usize {
        self.abelian.torsion_free_rank
    }

    /// The quotient onto the free part of the abelianization.
    pub fn full_map(&self) -> LatticeMap {
        LatticeMap::from_abelian(&self.abelian)
    }

    /// Chain model twisted through `q`, which must kill every relator.
    pub fn complex(&self, q: &LatticeMap) -> Result<TwistedComplex, HomologyError> {
        if q.generator_count() != self.presentation.generator_count() {
            return Err(FoxError::GeneratorCountMismatch {
                expected: self.presentation.generator_count(),
                got: q.generator_count(),
            }
            .into());
        }
        if let Some(relator) = q.first_unkilled(&self.presentation) {
            return Err(FoxError::QuotientInvalid { relator }.into());
        }
        match &self.chain {
            ChainModel::Presentation => Ok(presentation_complex(&self.presentation, q)?.with_aspherical(self.aspherical)),
            ChainModel::Product { factors } => {
                let parts = factors.iter().map(|f| f.complex(&f.full_map())).collect::<Result<Vec<_>, _>>()?;
                let joint = tensor_all(&parts)?;
                Ok(joint.push_forward(&self.coordinate_map(q), q.target_rank))
            }
            ChainModel::Salvetti { graph } => {
                let c = salvetti_complex(graph);
                Ok(c.push_forward(&self.coordinate_map(q), q.target_rank))
            }
        }
    }

    /// The chain model over the full character torus.
    pub fn full_complex(&self) -> Result<TwistedComplex, HomologyError> {
        self.complex(&self.full_map())
    }

    /// `q` written on abelianization coordinates: `target x m`, equal to
    /// the image matrix times the section.
    fn coordinate_map(&self, q: &LatticeMap) -> Vec<Vec<i64>> {
        let m = self.abelian.torsion_free_rank;
        (0..q.target_rank)
            .map(|i| {
                (0..m)
                    .map(|l| q.images.iter().zip(&self.abelian.section).map(|(img, s)| img[i] * s[l]).sum())
                    .collect()
            })
            .collect()
    }

    /// Validates `images` as a map onto `Z^m`.
    pub fn epimorphism(&self, m: usize, images: Vec<Vec<i64>>) -> Result<EpimorphismToZm, PresentationError> {
        EpimorphismToZm::new(&self.presentation, m, images)
    }

    /// Every generator to `1 in Z`.
    pub fn diagonal_map(&self) -> Result<EpimorphismToZm, PresentationError> {
        self.epimorphism(1, vec![vec![1]; self.presentation.generator_count()])
    }
}

/// `<a_1, b_1, .., a_g, b_g | prod [a_i, b_i]>`.
pub fn surface_group(genus: u32) -> Result<GroupModel, ConstructionError> {
    if genus == 0 {
        return Err(ConstructionError::ZeroGenus);
    }
    let g = genus as usize;
    let names = (1..=g).flat_map(|i| [format!("a{i}"), format!("b{i}")]).collect();
    let mut rel = Word::identity();
    for i in 0..g {
        rel = rel.mul(&Word::commutator(&Word::generator(2 * i), &Word::generator(2 * i + 1)));
    }
    let p = Presentation::new(names, vec![rel])?;
    Ok(GroupModel {
        name: format!("surface(g={genus})"),
        abelian: AbelianData::identity(2 * g),
        presentation: p,
        aspherical: true,
        curve_euler: Some(2 - 2 * i64::from(genus)),
        chain: ChainModel::Presentation,
    })
}

/// Free group of rank `n`.
pub fn free_group(n: usize) -> Result<GroupModel, ConstructionError> {
    let names: Vec<String> = if n <= 3 {
        ["a", "b", "c"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    };
    let p = Presentation::new(names, Vec::new())?;
    Ok(GroupModel {
        name: format!("free(n={n})"),
        abelian: AbelianData::identity(n),
        presentation: p,
        aspherical: true,
        curve_euler: None,
        chain: ChainModel::Presentation,
    })
}

/// Fundamental group of a genus-`g` surface with `n >= 1` punctures: free
/// of rank `2g + n - 1`.
pub fn punctured_surface_group(genus: u32, punctures: u32) -> Result<GroupModel, ConstructionError> {
    if punctures == 0 {
        return surface_group(genus);
    }
    let rank = 2 * genus as usize + punctures as usize - 1;
    let mut m = free_group(rank)?;
    m.name = format!("punctured-surface(g={genus},n={punctures})");
    m.curve_euler = Some(2 - 2 * i64::from(genus) - i64::from(punctures));
    Ok(m)
}

/// Direct product. Generators of factor `f` (counted from 1) are renamed
/// `<name>_<f>`; factors commute with one another.
pub fn direct_product(factors: Vec<GroupModel>) -> Result<GroupModel, ConstructionError> {
    if factors.len() < 2 {
        return Err(ConstructionError::TooFewFactors { got: factors.len(), need: 2 });
    }
    let mut names = Vec::new();
    let mut relators = Vec::new();
    let mut ranges = Vec::new();
    for (f, factor) in factors.iter().enumerate() {
        let base = names.len();
        let p = factor.presentation();
        names.extend(p.generator_names().iter().map(|n| format!("{n}_{}", f + 1)));
        for r in p.relators() {
            relators.push(Word::from_letters(
                r.letters().iter().map(|l| crate::presentation::Letter::new(l.gen + base, l.exp)),
            ));
        }
        ranges.push(base..names.len());
    }
    for (i, ri) in ranges.iter().enumerate() {
        for rj in &ranges[i + 1..] {
            for x in ri.clone() {
                for y in rj.clone() {
                    relators.push(Word::commutator(&Word::generator(x), &Word::generator(y)));
                }
            }
        }
    }
    let abelian = AbelianData::direct_sum(&factors.iter().map(|f| f.abelian.clone()).collect::<Vec<_>>());
    Ok(GroupModel {
        name: format!("product({})", factors.iter().map(|f| f.name.as_str()).collect::<Vec<_>>().join(", ")),
        presentation: Presentation::new(names, relators)?,
        abelian,
        aspherical: factors.iter().all(|f| f.aspherical),
        curve_euler: None,
        chain: ChainModel::Product { factors },
    })
}

/// Right-angled Artin group: a generator per vertex, a commutator per edge.
pub fn raag(g: &Graph) -> Result<GroupModel, ConstructionError> {
    if g.vertex_count() == 0 {
        return Err(ConstructionError::EmptyGraph);
    }
    let names = (0..g.vertex_count()).map(|v| format!("v{v}")).collect();
    let relators = g.edges().iter().map(|&(u, v)| Word::commutator(&Word::generator(u), &Word::generator(v))).collect();
    Ok(GroupModel {
        name: format!("raag(v={}, e={})", g.vertex_count(), g.edges().len()),
        presentation: Presentation::new(names, relators)?,
        abelian: AbelianData::identity(g.vertex_count()),
        aspherical: true,
        curve_euler: None,
        chain: ChainModel::Salvetti { graph: g.clone() },
    })
}

/// A right-angled Artin group with the map sending every generator to `1`.
#[derive(Clone, Debug)]
pub struct BestvinaBrady {
    pub group: GroupModel,
    pub nu: EpimorphismToZm,
    /// For a disconnected graph the kernel is not even finitely generated.
    pub connected: bool,
}

pub fn bestvina_brady(g: &Graph) -> Result<BestvinaBrady, ConstructionError> {
    let group = raag(g)?;
    let nu = group.diagonal_map()?;
    Ok(BestvinaBrady { group, nu, connected: g.is_connected() })
}

/// The map of a product of surface groups onto `Z^2` in which every factor
/// sends `a1 -> (1,0)`, `b1 -> (0,1)` and its other generators to zero.
pub fn pencil_map(group: &GroupModel) -> Result<EpimorphismToZm, PresentationError> {
    let names = group.presentation().generator_names();
    let images = names
        .iter()
        .map(|n| {
            let base = n.split('_').next().unwrap_or(n);
            match base {
                "a1" => vec![1, 0],
                "b1" => vec![0, 1],
                _ => vec![0, 0],
            }
        })
        .collect();
    group.epimorphism(2, images)
}

/// Named examples: `surface`, `product-surface`, `torus`, `free`,
/// `bb-octahedron`, `stallings`.
pub fn preset(name: &str, genera: &[u32], rank: usize) -> Result<GroupModel, ConstructionError> {
    match name {
        "surface" => surface_group(*genera.first().unwrap_or(&2)),
        "torus" => surface_group(1),
        "free" => free_group(rank),
        "product-surface" => {
            let gs: &[u32] = if genera.is_empty() { &[2, 2, 2] } else { genera };
            direct_product(gs.iter().map(|&g| surface_group(g)).collect::<Result<Vec<_>, _>>()?)
        }
        "bb-octahedron" => raag(&Graph::octahedron()),
        "stallings" => direct_product(vec![free_group(2)?, free_group(2)?, free_group(2)?]),
        _ => Err(ConstructionError::UnknownPreset(name.to_string())),
    }
}

pub const PRESETS: [&str; 6] = ["surface", "product-surface", "torus", "free", "bb-octahedron", "stallings"];
