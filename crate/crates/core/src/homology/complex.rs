use serde::{Deserialize, Serialize};

use super::HomologyError;
use crate::fox::{alexander_matrix, augmentation_row};
use crate::laurent::{LaurentMatrix, LaurentPolynomial};
use crate::presentation::{LatticeMap, Presentation};

/// A finite chain complex of free modules over `Q[Z^m]`.
///
/// `differentials[j - 1]` is `d_j : C_j -> C_{j-1}`, stored as a
/// `c_{j-1} x c_j` matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedComplex {
    variable_count: usize,
    ranks: Vec<usize>,
    differentials: Vec<LaurentMatrix>,
    aspherical: bool,
}

impl TwistedComplex {
    /// Validates shapes and checks `d_j d_{j+1} = 0` exactly.
    pub fn new(variable_count: usize, ranks: Vec<usize>, differentials: Vec<LaurentMatrix>) -> Result<Self, HomologyError> {
        if ranks.is_empty() {
            return Err(HomologyError::Shape("a complex needs at least degree 0".into()));
        }
        if differentials.len() + 1 != ranks.len() {
            return Err(HomologyError::Shape(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                differentials.len()
            )));
        }
        for (j, d) in differentials.iter().enumerate() {
            if d.variable_count() != variable_count {
                return Err(HomologyError::Shape(format!("d_{} has {} variables", j + 1, d.variable_count())));
            }
            if d.rows() != ranks[j] || d.cols() != ranks[j + 1] {
                return Err(HomologyError::Shape(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    j + 1,
                    d.rows(),
                    d.cols(),
                    ranks[j],
                    ranks[j + 1]
                )));
            }
        }
        for j in 1..differentials.len() {
            let prod = differentials[j - 1].try_mul(&differentials[j])?;
            if !prod.is_zero() {
                return Err(HomologyError::NotAComplex { degree: j });
            }
        }
        Ok(TwistedComplex { variable_count, ranks, differentials, aspherical: false })
    }

    /// The one-cell complex `Lambda` in degree 0.
    pub fn point(variable_count: usize) -> Self {
        TwistedComplex { variable_count, ranks: vec![1], differentials: Vec::new(), aspherical: true }
    }

    /// Marks whether homology of this complex is group homology in every
    /// degree, not only in degrees 0 and 1.
    pub fn with_aspherical(mut self, aspherical: bool) -> Self {
        self.aspherical = aspherical;
        self
    }

    pub fn is_aspherical(&self) -> bool {
        self.aspherical
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    /// `c_j`, zero outside the stored range.
    pub fn rank(&self, j: usize) -> usize {
        self.ranks.get(j).copied().unwrap_or(0)
    }

    /// `d_j` for `1 <= j <= top`.
    pub fn differential(&self, j: usize) -> Option<&LaurentMatrix> {
        if j == 0 {
            None
        } else {
            self.differentials.get(j - 1)
        }
    }

    pub fn differentials(&self) -> &[LaurentMatrix] {
        &self.differentials
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().enumerate().map(|(j, &c)| if j % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    /// Substitutes `t_i -> t^{map column i}`; `map` is `target x m`.
    pub fn push_forward(&self, map: &[Vec<i64>], target: usize) -> Self {
        TwistedComplex {
            variable_count: target,
            ranks: self.ranks.clone(),
            differentials: self.differentials.iter().map(|d| d.push_forward(map, target)).collect(),
            aspherical: self.aspherical,
        }
    }

    /// Drops trailing zero-rank degrees, keeping degree 0.
    pub fn trimmed(mut self) -> Self {
        while self.ranks.len() > 1 && *self.ranks.last().unwrap() == 0 {
            self.ranks.pop();
            self.differentials.pop();
        }
        self
    }
}

#[derive(Deserialize)]
struct ComplexRepr {
    variable_count: usize,
    ranks: Vec<usize>,
    differentials: Vec<LaurentMatrix>,
    #[serde(default)]
    aspherical: bool,
}

impl<'de> Deserialize<'de> for TwistedComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ComplexRepr::deserialize(d)?;
        TwistedComplex::new(r.variable_count, r.ranks, r.differentials)
            .map(|c| c.with_aspherical(r.aspherical))
            .map_err(serde::de::Error::custom)
    }
}

/// `Lambda^s -> Lambda^n -> Lambda` for a presentation with `n` generators
/// and `s` relators, twisted through `q`.
pub fn presentation_complex(p: &Presentation, q: &LatticeMap) -> Result<TwistedComplex, HomologyError> {
    let d2 = alexander_matrix(p, q)?.transpose();
    let d1 = augmentation_row(q);
    TwistedComplex::new(q.target_rank, vec![1, p.generator_count(), p.relator_count()], vec![d1, d2])
}

/// Tensor product over the joint ring; the variables of `a` come first.
pub fn tensor_complex(a: &TwistedComplex, b: &TwistedComplex) -> Result<TwistedComplex, HomologyError> {
    let vars = a.variable_count + b.variable_count;
    let da: Vec<LaurentMatrix> = a.differentials.iter().map(|d| d.embed(vars, 0)).collect();
    let db: Vec<LaurentMatrix> = b.differentials.iter().map(|d| d.embed(vars, a.variable_count)).collect();
    let top = a.top_degree() + b.top_degree();
    // blocks of degree k are the pairs (p, k - p) in increasing p
    let blocks = |k: usize| -> Vec<(usize, usize)> {
        (0..=k).filter(|&p| p <= a.top_degree() && k - p <= b.top_degree()).map(|p| (p, k - p)).collect()
    };
    let block_rank = |(p, q): (usize, usize)| a.rank(p) * b.rank(q);
    let ranks: Vec<usize> = (0..=top).map(|k| blocks(k).into_iter().map(block_rank).sum()).collect();
    let mut differentials = Vec::with_capacity(top);
    for k in 1..=top {
        let mut d = LaurentMatrix::zeros(ranks[k - 1], ranks[k], vars);
        let target = blocks(k - 1);
        let offset_of = |pq: (usize, usize)| -> usize {
            target.iter().take_while(|&&x| x != pq).map(|&x| block_rank(x)).sum()
        };
        let mut col = 0;
        for (p, q) in blocks(k) {
            if p >= 1 {
                let m = da[p - 1].kron(&LaurentMatrix::identity(b.rank(q), vars));
                place(&mut d, &m, offset_of((p - 1, q)), col);
            }
            if q >= 1 {
                let mut m = LaurentMatrix::identity(a.rank(p), vars).kron(&db[q - 1]);
                if p % 2 == 1 {
                    m = m.map_entries(vars, |x| -x);
                }
                place(&mut d, &m, offset_of((p, q - 1)), col);
            }
            col += block_rank((p, q));
        }
        differentials.push(d);
    }
    Ok(TwistedComplex::new(vars, ranks, differentials)?
        .with_aspherical(a.aspherical && b.aspherical)
        .trimmed())
}

fn place(d: &mut LaurentMatrix, block: &LaurentMatrix, row0: usize, col0: usize) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let v = block.get(i, j);
            if !v.is_zero() {
                d.set(row0 + i, col0 + j, v.clone());
            }
        }
    }
}

/// Iterated tensor product; an empty list gives the point.
pub fn tensor_all(parts: &[TwistedComplex]) -> Result<TwistedComplex, HomologyError> {
    let mut acc = TwistedComplex::point(0);
    for c in parts {
        acc = tensor_complex(&acc, c)?;
    }
    Ok(acc)
}

/// `(t - 1)` as a complex: the circle.
pub fn circle_complex() -> TwistedComplex {
    let d = LaurentMatrix::from_rows(
        1,
        1,
        vec![vec![&LaurentPolynomial::variable(1, 0) - &LaurentPolynomial::one(1)]],
    )
    .expect("1x1");
    TwistedComplex::new(1, vec![1, 1], vec![d]).expect("valid").with_aspherical(true)
}
