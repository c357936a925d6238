use serde::{Deserialize, Serialize};

use super::Presentation;

/// Smith normal form `P A Q = D` of an integer matrix, with inverses of the
/// unimodular transforms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSmith {
    pub diagonal: Vec<i64>,
    pub rank: usize,
    pub p: Vec<Vec<i64>>,
    pub p_inv: Vec<Vec<i64>>,
    pub q: Vec<Vec<i64>>,
    pub q_inv: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

struct Work {
    a: Vec<Vec<i64>>,
    p: Vec<Vec<i64>>,
    p_inv: Vec<Vec<i64>>,
    q: Vec<Vec<i64>>,
    q_inv: Vec<Vec<i64>>,
}

impl Work {
    // row_i += c * row_k
    fn add_row(&mut self, i: usize, k: usize, c: i64) {
        if c == 0 {
            return;
        }
        for j in 0..self.a[0].len() {
            self.a[i][j] += c * self.a[k][j];
        }
        for j in 0..self.p.len() {
            self.p[i][j] += c * self.p[k][j];
        }
        for row in self.p_inv.iter_mut() {
            row[k] -= c * row[i];
        }
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        self.a.swap(i, k);
        self.p.swap(i, k);
        for row in self.p_inv.iter_mut() {
            row.swap(i, k);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -*x;
        }
        for x in self.p[i].iter_mut() {
            *x = -*x;
        }
        for row in self.p_inv.iter_mut() {
            row[i] = -row[i];
        }
    }

    // col_j += c * col_k
    fn add_col(&mut self, j: usize, k: usize, c: i64) {
        if c == 0 {
            return;
        }
        for row in self.a.iter_mut() {
            row[j] += c * row[k];
        }
        for row in self.q.iter_mut() {
            row[j] += c * row[k];
        }
        let rj = self.q_inv[j].clone();
        for (x, y) in self.q_inv[k].iter_mut().zip(rj) {
            *x -= c * y;
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(j, k);
        }
        for row in self.q.iter_mut() {
            row.swap(j, k);
        }
        self.q_inv.swap(j, k);
    }
}

/// Smith normal form over `Z`. Diagonal entries are nonnegative and form a
/// divisibility chain; zeros trail.
pub fn integer_smith(matrix: &[Vec<i64>], cols: usize) -> IntegerSmith {
    let rows = matrix.len();
    let mut w = Work {
        a: if rows == 0 { Vec::new() } else { matrix.to_vec() },
        p: identity(rows),
        p_inv: identity(rows),
        q: identity(cols),
        q_inv: identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = w.a[i][j].abs();
                if v != 0 && best.is_none_or(|(bi, bj)| v < w.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.a[i][t] != 0 {
                    let c = w.a[i][t].div_euclid(w.a[t][t]);
                    w.add_row(i, t, -c);
                    if w.a[i][t] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if w.a[t][j] != 0 {
                    let c = w.a[t][j].div_euclid(w.a[t][t]);
                    w.add_col(j, t, -c);
                    if w.a[t][j] != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // move the smallest remaining entry of row/col t onto the pivot
                let mut m = (t, t);
                for i in t..rows {
                    if w.a[i][t] != 0 && w.a[i][t].abs() < w.a[m.0][m.1].abs() {
                        m = (i, t);
                    }
                }
                for j in t..cols {
                    if w.a[t][j] != 0 && w.a[t][j].abs() < w.a[m.0][m.1].abs() {
                        m = (t, j);
                    }
                }
                w.swap_rows(t, m.0);
                w.swap_cols(t, m.1);
                continue;
            }
            // divisibility of the trailing block
            let piv = w.a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| w.a[i][j] % piv != 0));
            match bad {
                Some(i) => w.add_row(t, i, 1),
                None => break,
            }
        }
        if w.a[t][t] < 0 {
            w.negate_row(t);
        }
        t += 1;
    }
    let diagonal: Vec<i64> = (0..rows.min(cols)).map(|i| w.a[i][i]).collect();
    let rank = diagonal.iter().filter(|&&d| d != 0).count();
    IntegerSmith { diagonal, rank, p: w.p, p_inv: w.p_inv, q: w.q, q_inv: w.q_inv }
}

/// `H_1(G; Z) = Z^m + torsion`, with coordinates for the free part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianData {
    pub torsion_free_rank: usize,
    pub torsion_invariants: Vec<i64>,
    /// `m x n`: generator exponent vectors to `Z^m` coordinates.
    pub projection: Vec<Vec<i64>>,
    /// `n x m`: for each coordinate, a generator exponent vector projecting
    /// to the corresponding unit vector.
    pub section: Vec<Vec<i64>>,
}

impl AbelianData {
    /// `Z^n` with identity coordinates (free abelianization, no torsion).
    pub fn identity(n: usize) -> Self {
        AbelianData { torsion_free_rank: n, torsion_invariants: Vec::new(), projection: identity(n), section: identity(n) }
    }

    pub fn generator_count(&self) -> usize {
        self.section.len()
    }

    pub fn project(&self, exponents: &[i64]) -> Vec<i64> {
        self.projection.iter().map(|row| row.iter().zip(exponents).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn has_torsion(&self) -> bool {
        !self.torsion_invariants.is_empty()
    }

    /// Block-diagonal abelianization of a direct product.
    pub fn direct_sum(parts: &[AbelianData]) -> Self {
        let n: usize = parts.iter().map(|p| p.generator_count()).sum();
        let m: usize = parts.iter().map(|p| p.torsion_free_rank).sum();
        let mut projection = vec![vec![0; n]; m];
        let mut section = vec![vec![0; m]; n];
        let mut torsion = Vec::new();
        let (mut r0, mut c0) = (0, 0);
        for part in parts {
            for (i, row) in part.projection.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    projection[r0 + i][c0 + j] = v;
                }
            }
            for (j, row) in part.section.iter().enumerate() {
                for (i, &v) in row.iter().enumerate() {
                    section[c0 + j][r0 + i] = v;
                }
            }
            torsion.extend(part.torsion_invariants.iter().copied());
            r0 += part.torsion_free_rank;
            c0 += part.generator_count();
        }
        // Invariant factors of a direct sum need re-normalizing into a chain.
        let diag: Vec<Vec<i64>> = (0..torsion.len())
            .map(|i| (0..torsion.len()).map(|j| if i == j { torsion[i] } else { 0 }).collect())
            .collect();
        let snf = integer_smith(&diag, torsion.len());
        let torsion_invariants = snf.diagonal.into_iter().filter(|&d| d > 1).collect();
        AbelianData { torsion_free_rank: m, torsion_invariants, projection, section }
    }
}

/// Abelianization via the Smith form of the relator exponent matrix.
pub fn abelianize(p: &Presentation) -> AbelianData {
    let n = p.generator_count();
    let rel = p.exponent_matrix();
    let snf = integer_smith(&rel, n);
    // rowspace(R) Q = rowspace(D): coordinates are x -> x Q.
    let free: Vec<usize> = (0..n).filter(|&j| j >= snf.diagonal.len() || snf.diagonal[j] == 0).collect();
    let torsion_invariants = snf.diagonal.iter().copied().filter(|&d| d > 1).collect();
    let projection = free.iter().map(|&j| (0..n).map(|i| snf.q[i][j]).collect()).collect();
    let section = (0..n).map(|i| free.iter().map(|&j| snf.q_inv[j][i]).collect()).collect();
    AbelianData { torsion_free_rank: free.len(), torsion_invariants, projection, section }
}
