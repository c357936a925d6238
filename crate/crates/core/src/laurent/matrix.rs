use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::linalg::{rank_sparse, sparse_from_dense};
use super::poly::rat;
use super::{parse_polynomial, Character, LaurentError, LaurentPolynomial};

/// Default ceiling on the number of minors `minors` will enumerate.
pub const DEFAULT_MINOR_CEILING: u128 = 20_000;

/// A dense matrix over the Laurent ring in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    vars: usize,
    data: Vec<LaurentPolynomial>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize, vars: usize) -> Self {
        LaurentMatrix { rows, cols, vars, data: vec![LaurentPolynomial::zero(vars); rows * cols] }
    }

    pub fn identity(n: usize, vars: usize) -> Self {
        let mut m = Self::zeros(n, n, vars);
        for i in 0..n {
            m.set(i, i, LaurentPolynomial::one(vars));
        }
        m
    }

    /// Builds from rows; `cols` is needed when there are no rows.
    pub fn from_rows(vars: usize, cols: usize, rows: Vec<Vec<LaurentPolynomial>>) -> Result<Self, LaurentError> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LaurentError::Shape(format!("row of length {} in a {cols}-column matrix", row.len())));
            }
            for p in row {
                if p.variable_count() != vars {
                    return Err(LaurentError::VariableCountMismatch { left: vars, right: p.variable_count() });
                }
                data.push(p);
            }
        }
        Ok(LaurentMatrix { rows: nrows, cols, vars, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn variable_count(&self) -> usize {
        self.vars
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPolynomial {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPolynomial) {
        assert_eq!(p.variable_count(), self.vars);
        self.data[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[LaurentPolynomial] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<LaurentPolynomial>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(LaurentPolynomial::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.vars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        if self.vars != other.vars {
            return Err(LaurentError::VariableCountMismatch { left: self.vars, right: other.vars });
        }
        if self.cols != other.rows {
            return Err(LaurentError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols, self.vars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + &(a * b);
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        LaurentMatrix { data: self.data.iter().map(|p| p.scale(c)).collect(), ..self.clone() }
    }

    /// Kronecker product; both factors must already share the variable set.
    pub fn kron(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols, self.vars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn map_entries(&self, vars: usize, f: impl Fn(&LaurentPolynomial) -> LaurentPolynomial) -> Self {
        LaurentMatrix { rows: self.rows, cols: self.cols, vars, data: self.data.iter().map(f).collect() }
    }

    pub fn push_forward(&self, map: &[Vec<i64>], target: usize) -> Self {
        self.map_entries(target, |p| p.push_forward(map, target))
    }

    pub fn embed(&self, total: usize, offset: usize) -> Self {
        self.map_entries(total, |p| p.embed(total, offset))
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<Vec<Vec<BigRational>>, LaurentError> {
        (0..self.rows).map(|i| self.row(i).iter().map(|p| p.evaluate(point)).collect()).collect()
    }

    /// Rank at a character. At a rational point this is the rank of the
    /// evaluated matrix; at the generic point it is the rank over the field
    /// of fractions.
    pub fn rank_at(&self, rho: &Character) -> Result<usize, LaurentError> {
        match rho {
            Character::Rational(coords) => {
                if coords.len() != self.vars {
                    return Err(LaurentError::VariableCountMismatch { left: self.vars, right: coords.len() });
                }
                let mut rows = Vec::with_capacity(self.rows);
                for i in 0..self.rows {
                    let vals = self.row(i).iter().map(|p| p.evaluate(coords)).collect::<Result<Vec<_>, _>>()?;
                    rows.push(sparse_from_dense(&vals));
                }
                Ok(rank_sparse(rows))
            }
            Character::Generic => Ok(self.rank_generic()),
        }
    }

    /// Best lower bound for the generic rank from a few fixed evaluation
    /// points.
    pub fn rank_lower_bound(&self, points: usize) -> usize {
        let full = self.rows.min(self.cols);
        let mut best = 0;
        for k in 0..points {
            let r = self.rank_at(&probe_point(self.vars, k)).expect("probe point is valid");
            best = best.max(r);
            if best == full {
                break;
            }
        }
        best
    }

    /// Generic rank. A full-rank evaluation settles it; otherwise runs
    /// fraction-free elimination.
    pub fn rank_generic(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        if self.rank_lower_bound(3) == self.rows.min(self.cols) {
            return self.rows.min(self.cols);
        }
        self.rank_by_elimination()
    }

    /// Bareiss elimination over the Laurent ring. Every intermediate entry
    /// is a minor of the input, so divisions by the previous pivot are exact.
    pub fn rank_by_elimination(&self) -> usize {
        bareiss(self.to_rows(), self.vars).0
    }

    /// Exact determinant of a square matrix.
    pub fn determinant(&self) -> Result<LaurentPolynomial, LaurentError> {
        if self.rows != self.cols {
            return Err(LaurentError::Shape(format!("determinant of {}x{}", self.rows, self.cols)));
        }
        if self.rows == 0 {
            return Ok(LaurentPolynomial::one(self.vars));
        }
        let (rank, det) = bareiss(self.to_rows(), self.vars);
        Ok(if rank == self.rows { det } else { LaurentPolynomial::zero(self.vars) })
    }

    /// All `k x k` minors, rows-major over lexicographic index subsets.
    pub fn minors(&self, k: usize, ceiling: u128) -> Result<Vec<LaurentPolynomial>, LaurentError> {
        if k == 0 {
            return Ok(vec![LaurentPolynomial::one(self.vars)]);
        }
        if k > self.rows.min(self.cols) {
            return Err(LaurentError::Shape(format!("{k}x{k} minors of a {}x{} matrix", self.rows, self.cols)));
        }
        let count = binomial(self.rows, k).saturating_mul(binomial(self.cols, k));
        if count > ceiling {
            return Err(LaurentError::TooManyMinors { count, ceiling });
        }
        let row_sets = subsets(self.rows, k);
        let col_sets = subsets(self.cols, k);
        let mut out = Vec::with_capacity(count as usize);
        for rs in &row_sets {
            for cs in &col_sets {
                let sub = rs.iter().map(|&i| cs.iter().map(|&j| self.get(i, j).clone()).collect()).collect();
                let m = LaurentMatrix::from_rows(self.vars, k, sub)?;
                out.push(m.determinant()?);
            }
        }
        Ok(out)
    }

    pub fn to_text(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(ToString::to_string).collect()).collect()
    }

    pub fn from_text(vars: usize, cols: usize, rows: &[Vec<String>]) -> Result<Self, LaurentError> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_polynomial(s, vars)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(vars, cols, parsed)
    }
}

/// Serialized form: dimensions plus canonical text entries.
#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    variable_count: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for LaurentMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixRepr { rows: self.rows, cols: self.cols, variable_count: self.vars, entries: self.to_text() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = MatrixRepr::deserialize(d)?;
        let m = LaurentMatrix::from_text(r.variable_count, r.cols, &r.entries).map_err(serde::de::Error::custom)?;
        if m.rows != r.rows {
            return Err(serde::de::Error::custom("row count mismatch"));
        }
        Ok(m)
    }
}

/// Deterministic evaluation points with distinct, non-unit coordinates.
pub(crate) fn probe_point(vars: usize, k: usize) -> Character {
    const PRIMES: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let coords = (0..vars)
        .map(|i| {
            let p = PRIMES[(i + 5 * k) % PRIMES.len()];
            let q = PRIMES[(3 * i + k + 1) % PRIMES.len()];
            let sign = if (i + k) % 3 == 2 { -1 } else { 1 };
            BigRational::new((sign * (p * (k as i64 + 1) + i as i64)).into(), q.into()) + rat(k as i64 + 1)
        })
        .map(|x| if num_traits::Zero::is_zero(&x) { rat(7) } else { x })
        .collect();
    Character::Rational(coords)
}

fn bareiss(mut a: Vec<Vec<LaurentPolynomial>>, vars: usize) -> (usize, LaurentPolynomial) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut prev = LaurentPolynomial::one(vars);
    let mut sign = 1i64;
    let mut k = 0;
    while k < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, p) in row.iter().enumerate().skip(k) {
                if !p.is_zero() && best.is_none_or(|(bi, bj)| p.term_count() < a[bi][bj].term_count()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        if bi != k {
            a.swap(bi, k);
            sign = -sign;
        }
        if bj != k {
            for row in a.iter_mut() {
                row.swap(bj, k);
            }
            sign = -sign;
        }
        let pivot = a[k][k].clone();
        for i in k + 1..rows {
            let aik = a[i][k].clone();
            for j in k + 1..cols {
                let num = &(&pivot * &a[i][j]) - &(&aik * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = LaurentPolynomial::zero(vars);
        }
        prev = pivot;
        k += 1;
    }
    (k, prev.scale(&rat(sign)))
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(vars: usize, s: &str) -> LaurentPolynomial {
        parse_polynomial(s, vars).unwrap()
    }

    fn torus_alexander() -> LaurentMatrix {
        LaurentMatrix::from_rows(2, 2, vec![vec![p(2, "1 - t2"), p(2, "t1 - 1")]]).unwrap()
    }

    #[test]
    fn augmentation_rank() {
        let m = LaurentMatrix::from_rows(1, 1, vec![vec![p(1, "t - 1")]]).unwrap();
        assert_eq!(m.rank_at(&Character::Generic).unwrap(), 1);
        assert_eq!(m.rank_at(&Character::trivial(1)).unwrap(), 0);
    }

    #[test]
    fn torus_alexander_generic_rank() {
        let m = torus_alexander();
        assert_eq!(m.rank_at(&Character::Generic).unwrap(), 1);
        assert_eq!(m.rank_by_elimination(), 1);
    }

    #[test]
    fn zero_matrix_rank() {
        let m = LaurentMatrix::zeros(3, 2, 2);
        assert_eq!(m.rank_at(&Character::Generic).unwrap(), 0);
        assert_eq!(m.rank_at(&Character::from_ints(&[2, 5]).unwrap()).unwrap(), 0);
    }

    #[test]
    fn minors_examples() {
        let m = torus_alexander();
        assert_eq!(m.minors(1, DEFAULT_MINOR_CEILING).unwrap(), vec![p(2, "1 - t2"), p(2, "t1 - 1")]);
        let d = LaurentMatrix::from_rows(1, 2, vec![vec![p(1, "t"), p(1, "0")], vec![p(1, "0"), p(1, "t")]]).unwrap();
        assert_eq!(d.minors(2, DEFAULT_MINOR_CEILING).unwrap(), vec![p(1, "t^2")]);
        assert_eq!(d.minors(0, DEFAULT_MINOR_CEILING).unwrap(), vec![LaurentPolynomial::one(1)]);
    }

    #[test]
    fn minor_ceiling() {
        let m = LaurentMatrix::zeros(10, 10, 1);
        assert_eq!(
            m.minors(5, 1000).unwrap_err(),
            LaurentError::TooManyMinors { count: 252 * 252, ceiling: 1000 }
        );
    }

    #[test]
    fn determinant_by_expansion() {
        // [[t1, 1, 0], [1, t2, 1], [0, 1, t1]] -> t1^2 t2 - 2 t1
        let m = LaurentMatrix::from_rows(
            2,
            3,
            vec![
                vec![p(2, "t1"), p(2, "1"), p(2, "0")],
                vec![p(2, "1"), p(2, "t2"), p(2, "1")],
                vec![p(2, "0"), p(2, "1"), p(2, "t1")],
            ],
        )
        .unwrap();
        assert_eq!(m.determinant().unwrap(), p(2, "t1^2*t2 - 2*t1"));
    }

    #[test]
    fn rank_deficient_needs_elimination() {
        // rows proportional over the fraction field but not at every point
        let m = LaurentMatrix::from_rows(
            2,
            2,
            vec![vec![p(2, "t1 - 1"), p(2, "t2 - 1")], vec![p(2, "t1^2 - t1"), p(2, "t1*t2 - t1")]],
        )
        .unwrap();
        assert_eq!(m.rank_generic(), 1);
    }

    #[test]
    fn serde_round_trip() {
        let m = torus_alexander();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<LaurentMatrix>(&s).unwrap(), m);
    }

    fn small_matrix() -> impl Strategy<Value = LaurentMatrix> {
        let entry = prop::collection::vec((prop::collection::vec(-1i32..2, 2), -2i64..3), 0..3)
            .prop_map(|ts| LaurentPolynomial::from_terms(2, ts));
        (1usize..4, 1usize..4).prop_flat_map(move |(r, c)| {
            prop::collection::vec(prop::collection::vec(entry.clone(), c), r)
                .prop_map(move |rows| LaurentMatrix::from_rows(2, c, rows).unwrap())
        })
    }

    // Independent route: generic rank is the size of the largest nonzero minor.
    fn rank_by_minors(m: &LaurentMatrix) -> usize {
        (1..=m.rows().min(m.cols()))
            .rev()
            .find(|&k| m.minors(k, u128::MAX).unwrap().iter().any(|d| !d.is_zero()))
            .unwrap_or(0)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn elimination_matches_minors(m in small_matrix()) {
            prop_assert_eq!(m.rank_by_elimination(), rank_by_minors(&m));
            prop_assert_eq!(m.rank_generic(), rank_by_minors(&m));
        }

        #[test]
        fn pointwise_rank_bounded_by_generic(m in small_matrix(), a in -4i64..5, b in 1i64..6) {
            prop_assume!(a != 0);
            let rho = Character::Rational(vec![rat(a), BigRational::new(1.into(), b.into())]);
            prop_assert!(m.rank_at(&rho).unwrap() <= m.rank_generic());
        }
    }
}
