//! Exact linear algebra over `Q` on sparse rows.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

/// A sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow = Vec<(usize, BigRational)>;

pub fn sparse_from_dense(row: &[BigRational]) -> SparseRow {
    row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, v.clone())).collect()
}

// a - c * b
fn axpy(a: &SparseRow, c: &BigRational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row echelon basis.
#[derive(Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the basis; returns whether it was independent.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        loop {
            let Some((lead, lv)) = row.first().cloned() else { return false };
            match self.pivots.get(&lead) {
                Some(p) => {
                    // pivot rows are normalized to leading coefficient 1
                    row = axpy(&row, &lv, p);
                }
                None => {
                    let inv = lv.recip();
                    let row = row.into_iter().map(|(j, v)| (j, v * &inv)).collect();
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }
}

/// Rank of a dense rational matrix.
pub fn rank_dense(rows: &[Vec<BigRational>]) -> usize {
    rank_sparse(rows.iter().map(|r| sparse_from_dense(r)))
}

pub fn rank_sparse<I: IntoIterator<Item = SparseRow>>(rows: I) -> usize {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}
