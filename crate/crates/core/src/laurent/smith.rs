//! Smith normal form over the principal ideal domain `Q[t, t^-1]`.


use super::{LaurentError, LaurentMatrix, LaurentPolynomial};

/// `P M Q = D` over `Q[t, t^-1]`.
///
/// The matrix is read as a presentation with one relation per row, so the
/// presented module is `Lambda^cols / rowspace(M)`, isomorphic to
/// `Lambda^free_rank + sum Lambda/(f_i)`. Nonzero diagonal entries are
/// normalized to monic polynomials with nonzero constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithFormUnivariate {
    pub diagonal: Vec<LaurentPolynomial>,
    pub rank: usize,
    pub p: LaurentMatrix,
    pub p_inv: LaurentMatrix,
    pub q: LaurentMatrix,
    pub q_inv: LaurentMatrix,
    rows: usize,
    cols: usize,
}

impl SmithFormUnivariate {
    /// Nonzero diagonal entries, each dividing the next.
    pub fn invariant_factors(&self) -> &[LaurentPolynomial] {
        &self.diagonal[..self.rank]
    }

    /// Invariant factors that are not units.
    pub fn torsion_factors(&self) -> Vec<LaurentPolynomial> {
        self.invariant_factors().iter().filter(|f| !f.is_one()).cloned().collect()
    }

    /// Free rank of the presented module.
    pub fn free_rank(&self) -> usize {
        self.cols - self.rank
    }

    /// Free rank of the column-convention cokernel `Lambda^rows / im M`.
    pub fn column_cokernel_free_rank(&self) -> usize {
        self.rows - self.rank
    }

    /// `dim_Q` of the torsion part: the sum of the degree spans.
    pub fn torsion_dimension(&self) -> u64 {
        self.invariant_factors().iter().map(|f| u64::from(f.span().unwrap_or(0))).sum()
    }
}

struct Work {
    a: Vec<Vec<LaurentPolynomial>>,
    p: Vec<Vec<LaurentPolynomial>>,
    p_inv: Vec<Vec<LaurentPolynomial>>,
    q: Vec<Vec<LaurentPolynomial>>,
    q_inv: Vec<Vec<LaurentPolynomial>>,
}

fn ident(n: usize) -> Vec<Vec<LaurentPolynomial>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { LaurentPolynomial::one(1) } else { LaurentPolynomial::zero(1) }).collect())
        .collect()
}

fn axpy_row(row: &mut [LaurentPolynomial], c: &LaurentPolynomial, src: &[LaurentPolynomial]) {
    for (x, y) in row.iter_mut().zip(src) {
        if !y.is_zero() {
            *x = &*x + &(c * y);
        }
    }
}

impl Work {
    fn add_row(&mut self, i: usize, k: usize, c: &LaurentPolynomial) {
        if c.is_zero() {
            return;
        }
        let src = self.a[k].clone();
        axpy_row(&mut self.a[i], c, &src);
        let src = self.p[k].clone();
        axpy_row(&mut self.p[i], c, &src);
        let neg = -c;
        for row in self.p_inv.iter_mut() {
            let v = &row[k] + &(&neg * &row[i]);
            row[k] = v;
        }
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i != k {
            self.a.swap(i, k);
            self.p.swap(i, k);
            for row in self.p_inv.iter_mut() {
                row.swap(i, k);
            }
        }
    }

    fn scale_row(&mut self, i: usize, u: &LaurentPolynomial, u_inv: &LaurentPolynomial) {
        for x in self.a[i].iter_mut() {
            *x = &*x * u;
        }
        for x in self.p[i].iter_mut() {
            *x = &*x * u;
        }
        for row in self.p_inv.iter_mut() {
            row[i] = &row[i] * u_inv;
        }
    }

    fn add_col(&mut self, j: usize, k: usize, c: &LaurentPolynomial) {
        if c.is_zero() {
            return;
        }
        for row in self.a.iter_mut() {
            let v = &row[j] + &(c * &row[k]);
            row[j] = v;
        }
        for row in self.q.iter_mut() {
            let v = &row[j] + &(c * &row[k]);
            row[j] = v;
        }
        let src = self.q_inv[j].clone();
        let neg = -c;
        axpy_row(&mut self.q_inv[k], &neg, &src);
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j != k {
            for row in self.a.iter_mut() {
                row.swap(j, k);
            }
            for row in self.q.iter_mut() {
                row.swap(j, k);
            }
            self.q_inv.swap(j, k);
        }
    }
}

fn norm(p: &LaurentPolynomial) -> Option<u32> {
    p.span()
}

/// Smith normal form of a matrix over `Q[t, t^-1]`.
pub fn smith_univariate(m: &LaurentMatrix) -> Result<SmithFormUnivariate, LaurentError> {
    if m.variable_count() != 1 {
        return Err(LaurentError::NotUnivariate(m.variable_count()));
    }
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work { a: m.to_rows(), p: ident(rows), p_inv: ident(rows), q: ident(cols), q_inv: ident(cols) };
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize, u32)> = None;
        for i in t..rows {
            for j in t..cols {
                if let Some(s) = norm(&w.a[i][j]) {
                    if best.is_none_or(|b| s < b.2) {
                        best = Some((i, j, s));
                    }
                }
            }
        }
        let Some((bi, bj, _)) = best else { break };
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        loop {
            let piv = w.a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if !w.a[i][t].is_zero() {
                    let (q, r) = w.a[i][t].divrem_univariate(&piv);
                    w.add_row(i, t, &-&q);
                    dirty |= !r.is_zero();
                }
            }
            for j in t + 1..cols {
                if !w.a[t][j].is_zero() {
                    let (q, r) = w.a[t][j].divrem_univariate(&piv);
                    w.add_col(j, t, &-&q);
                    dirty |= !r.is_zero();
                }
            }
            if dirty {
                let mut m = (t, t, norm(&w.a[t][t]).unwrap());
                for i in t + 1..rows {
                    if let Some(s) = norm(&w.a[i][t]) {
                        if s < m.2 {
                            m = (i, t, s);
                        }
                    }
                }
                for j in t + 1..cols {
                    if let Some(s) = norm(&w.a[t][j]) {
                        if s < m.2 {
                            m = (t, j, s);
                        }
                    }
                }
                w.swap_rows(t, m.0);
                w.swap_cols(t, m.1);
                continue;
            }
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !w.a[i][j].is_zero() && !w.a[i][j].divrem_univariate(&piv).1.is_zero()));
            match bad {
                Some(i) => w.add_row(t, i, &LaurentPolynomial::one(1)),
                None => break,
            }
        }
        // normalize the pivot to a monic polynomial with nonzero constant term
        let piv = &w.a[t][t];
        let (_, shift) = piv.to_polynomial();
        let lc = piv.leading().unwrap().1.clone();
        let u = LaurentPolynomial::monomial(1, vec![-shift[0]], lc.recip());
        let u_inv = LaurentPolynomial::monomial(1, vec![shift[0]], lc);
        w.scale_row(t, &u, &u_inv);
        t += 1;
    }
    let diagonal: Vec<LaurentPolynomial> = (0..rows.min(cols)).map(|i| w.a[i][i].clone()).collect();
    let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
    let build = |rows_: Vec<Vec<LaurentPolynomial>>, n: usize| LaurentMatrix::from_rows(1, n, rows_);
    Ok(SmithFormUnivariate {
        diagonal,
        rank,
        p: build(w.p, rows)?,
        p_inv: build(w.p_inv, rows)?,
        q: build(w.q, cols)?,
        q_inv: build(w.q_inv, cols)?,
        rows,
        cols,
    })
}
