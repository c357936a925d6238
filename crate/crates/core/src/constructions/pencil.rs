use serde::{Deserialize, Serialize};

use super::ConstructionError;

/// Riemann-Hurwitz for a double cover `C -> E` of an elliptic curve with
/// simple ramification: `chi(C) = 2 chi(E) - sum_{p in R} (e_p - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RiemannHurwitzAudit {
    pub genus: u32,
    pub euler_cover: i64,
    pub degree: i64,
    pub euler_base: i64,
    pub ramification_points: u64,
    pub ramification_index: i64,
    pub rhs: i64,
    pub holds: bool,
}

pub fn riemann_hurwitz_audit(genus: u32) -> RiemannHurwitzAudit {
    let g = i64::from(genus);
    let euler_cover = 2 - 2 * g;
    let (degree, euler_base, index) = (2, 0, 2);
    let points = (2 * g - 2).max(0) as u64;
    let rhs = degree * euler_base - points as i64 * (index - 1);
    RiemannHurwitzAudit {
        genus,
        euler_cover,
        degree,
        euler_base,
        ramification_points: points,
        ramification_index: index,
        rhs,
        holds: euler_cover == rhs,
    }
}

/// Counts attached to the product of `r` double covers of one elliptic
/// curve, summed through the group law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilData {
    pub r: usize,
    pub genera: Vec<u32>,
    pub branch_sizes: Vec<u64>,
    pub ramification_sizes: Vec<u64>,
    pub critical_points: u64,
    pub euler_x: i64,
    pub fiber_dimension: usize,
    pub finiteness_verdict: Option<String>,
    pub notes: Vec<String>,
    pub riemann_hurwitz: Vec<RiemannHurwitzAudit>,
    /// The higher homotopy module of the generic fibre, as a statement.
    pub homotopy_module: Option<String>,
    pub cd_lower_bound: Option<usize>,
}

pub fn pencil_numerology(genera: &[u32]) -> Result<PencilData, ConstructionError> {
    let r = genera.len();
    if r < 2 {
        return Err(ConstructionError::TooFewFactors { got: r, need: 2 });
    }
    if let Some((index, &genus)) = genera.iter().enumerate().find(|(_, &g)| g < 2) {
        return Err(ConstructionError::GenusTooSmall { index, genus });
    }
    let branch_sizes: Vec<u64> = genera.iter().map(|&g| 2 * u64::from(g) - 2).collect();
    let ramification_sizes = branch_sizes.clone();
    let critical_points = ramification_sizes.iter().product();
    let euler_x = genera.iter().map(|&g| 2 - 2 * i64::from(g)).product();
    let mut notes = Vec::new();
    let (finiteness_verdict, homotopy_module, cd_lower_bound) = if r >= 3 {
        (
            Some(format!("F_{} but not FP_{}", r - 1, r)),
            Some(format!(
                "pi_{}(H) is a free Z[pi_1(H)]-module on a basis indexed by C(h) x Z^2, |C(h)| = {}",
                r - 1,
                critical_points
            )),
            Some(r),
        )
    } else {
        notes.push("no finiteness verdict: the total space must have dimension at least 3".to_string());
        (None, None, None)
    };
    Ok(PencilData {
        r,
        genera: genera.to_vec(),
        branch_sizes,
        ramification_sizes,
        critical_points,
        euler_x,
        fiber_dimension: r - 1,
        finiteness_verdict,
        notes,
        riemann_hurwitz: genera.iter().map(|&g| riemann_hurwitz_audit(g)).collect(),
        homotopy_module,
        cd_lower_bound,
    })
}

/// Checks a double-cover datum over `E - B`: every small loop around a
/// branch point must map to `1` in `Z/2`, and their sum (which equals a
/// commutator in `pi_1`) must vanish. The two torus classes are
/// unconstrained.
pub fn branch_monodromy_check(genus: u32, branch: &[u8], torus: &[u8; 2]) -> bool {
    let _ = torus;
    if genus < 2 || branch.len() as u64 != 2 * u64::from(genus) - 2 {
        return false;
    }
    let all_odd = branch.iter().all(|&a| a % 2 == 1);
    let sum: u64 = branch.iter().map(|&a| u64::from(a % 2)).sum();
    all_odd && sum.is_multiple_of(2)
}
