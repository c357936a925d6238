use std::collections::BTreeMap;

use num_rational::{BigRational, Ratio};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{HomologyError, TwistedComplex};
use crate::laurent::linalg::Echelon;
use crate::laurent::{rat, smith_univariate};

/// Whether a degree's homology is group homology or only that of the chain
/// model (presentation 2-complexes need not be aspherical).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HomologyKind {
    Group,
    PresentationComplex,
}

/// Structure of `H_j(C)` as a module over `Q[t, t^-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelDegree {
    pub degree: usize,
    pub free_rank: usize,
    pub torsion_factors: Vec<String>,
    pub torsion_dimension: u64,
    pub infinite_dimensional: bool,
    pub kind: HomologyKind,
}

/// Homology of the infinite cyclic cover, degree by degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelHomologyReport {
    pub degrees: Vec<KernelDegree>,
}

impl KernelHomologyReport {
    pub fn degree(&self, j: usize) -> Option<&KernelDegree> {
        self.degrees.get(j)
    }

    /// True when some degree `<= r` is infinite-dimensional over `Q`.
    pub fn infinite_through(&self, r: usize) -> bool {
        self.degrees.iter().take(r + 1).any(|d| d.infinite_dimensional)
    }
}

/// Exact homology over the principal ideal domain `Q[t, t^-1]`.
///
/// `H_j` has free rank `c_j - rank d_j - rank d_{j+1}` and the torsion of
/// `coker d_{j+1}`, because `C_j / ker d_j` embeds in a free module.
pub fn kernel_homology_univariate(c: &TwistedComplex) -> Result<KernelHomologyReport, HomologyError> {
    if c.variable_count() != 1 {
        return Err(HomologyError::NotUnivariate(c.variable_count()));
    }
    let smiths = c.differentials().iter().map(smith_univariate).collect::<Result<Vec<_>, _>>()?;
    let rank = |j: usize| if j == 0 { 0 } else { smiths.get(j - 1).map_or(0, |s| s.rank) };
    let degrees = (0..=c.top_degree())
        .map(|j| {
            let free_rank = c.rank(j) - rank(j) - rank(j + 1);
            let (torsion_factors, torsion_dimension) = match smiths.get(j) {
                Some(s) => (s.torsion_factors().iter().map(ToString::to_string).collect(), s.torsion_dimension()),
                None => (Vec::new(), 0),
            };
            let kind = if j <= 1 || c.is_aspherical() { HomologyKind::Group } else { HomologyKind::PresentationComplex };
            KernelDegree {
                degree: j,
                free_rank,
                torsion_factors,
                torsion_dimension,
                infinite_dimensional: free_rank > 0,
                kind,
            }
        })
        .collect();
    Ok(KernelHomologyReport { degrees })
}

pub const DEFAULT_WINDOW_MEMORY: u64 = 256 << 20;

/// Homology dimensions of one truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowRow {
    pub radius: usize,
    pub cells: Vec<usize>,
    pub dimensions: Vec<usize>,
}

fn translate_count(m: usize, r: usize) -> usize {
    (2 * r + 1).pow(m as u32)
}

/// Rough byte count for the truncation at radius `r`.
pub fn window_memory_estimate(c: &TwistedComplex, r: usize) -> u64 {
    let t = translate_count(c.variable_count(), r) as u64;
    let mut terms = 0u64;
    for d in c.differentials() {
        for i in 0..d.rows() {
            for p in d.row(i) {
                terms += p.term_count() as u64;
            }
        }
    }
    let cells: u64 = c.ranks().iter().map(|&x| x as u64).sum();
    // a sparse entry holds an index and a small rational; each cell a vector
    (cells * 48 + terms * 64) * t
}

/// Dimensions of rational homology of the box truncations of the cover, for
/// radii `1..=k`.
///
/// The truncation at radius `r` keeps the translates `v` with `|v| <= r` in
/// the sup norm, and keeps a cell only if every cell of its boundary is
/// kept, so each truncation is a genuine subcomplex.
pub fn window_homology(c: &TwistedComplex, k: usize, memory_ceiling: u64) -> Result<Vec<WindowRow>, HomologyError> {
    let m = c.variable_count();
    if !(1..=2).contains(&m) {
        return Err(HomologyError::UnsupportedWindowRank(m));
    }
    if k == 0 {
        return Err(HomologyError::BadRadius);
    }
    let estimate = window_memory_estimate(c, k);
    if estimate > memory_ceiling {
        return Err(HomologyError::WindowTooLarge { radius: k, estimate, ceiling: memory_ceiling });
    }
    Ok((1..=k).map(|r| window_at(c, r)).collect())
}

fn window_at(c: &TwistedComplex, r: usize) -> WindowRow {
    let m = c.variable_count();
    let side = 2 * r + 1;
    let count = translate_count(m, r);
    let ri = r as i64;
    let pos = |v: &[i64]| -> Option<usize> {
        let mut idx = 0;
        for &x in v {
            if x.abs() > ri {
                return None;
            }
            idx = idx * side + (x + ri) as usize;
        }
        Some(idx)
    };
    let coords = |mut idx: usize| -> Vec<i64> {
        let mut v = vec![0; m];
        for slot in v.iter_mut().rev() {
            *slot = (idx % side) as i64 - ri;
            idx /= side;
        }
        v
    };
    // kept[j][basis * count + translate] = index among kept cells of degree j
    let mut kept: Vec<Vec<Option<usize>>> = vec![(0..c.rank(0) * count).map(Some).collect()];
    let mut ranks = Vec::new();
    for j in 1..=c.top_degree() {
        let d = c.differential(j).expect("degree in range");
        let below = &kept[j - 1];
        let mut here = vec![None; c.rank(j) * count];
        let mut next = 0;
        let mut ech = Echelon::new();
        for i in 0..c.rank(j) {
            for tr in 0..count {
                let v = coords(tr);
                let mut col: BTreeMap<usize, BigRational> = BTreeMap::new();
                let mut inside = true;
                'rows: for row in 0..d.rows() {
                    for (e, coef) in d.get(row, i).terms() {
                        let w: Vec<i64> = v.iter().zip(e).map(|(a, &b)| a + i64::from(b)).collect();
                        match pos(&w).and_then(|p| below[row * count + p]) {
                            Some(target) => {
                                let slot = col.entry(target).or_insert_with(|| rat(0));
                                *slot += coef;
                            }
                            None => {
                                inside = false;
                                break 'rows;
                            }
                        }
                    }
                }
                if inside {
                    here[i * count + tr] = Some(next);
                    next += 1;
                    ech.insert(col.into_iter().filter(|(_, x)| !x.is_zero()).collect());
                }
            }
        }
        ranks.push(ech.rank());
        kept.push(here);
    }
    let cells: Vec<usize> = kept.iter().map(|k| k.iter().filter(|x| x.is_some()).count()).collect();
    let rk = |j: usize| if j == 0 { 0 } else { ranks.get(j - 1).copied().unwrap_or(0) };
    let dimensions = (0..cells.len()).map(|j| cells[j] - rk(j) - rk(j + 1)).collect();
    WindowRow { radius: r, cells, dimensions }
}

/// Growth per added translate over the last step in degree `j`:
/// the dimension increment divided by the increment in the number of
/// translates. For a free summand of rank `f` this tends to `f`.
pub fn window_slope(rows: &[WindowRow], m: usize, j: usize) -> Option<Ratio<i64>> {
    let [.., a, b] = rows else { return None };
    let da = *b.dimensions.get(j)? as i64 - *a.dimensions.get(j)? as i64;
    let dt = translate_count(m, b.radius) as i64 - translate_count(m, a.radius) as i64;
    Some(Ratio::new(da, dt))
}
