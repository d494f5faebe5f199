//! Exact sparse linear algebra over the coefficient rings.

mod echelon;
mod kernel;
mod snf;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::coeff::{ExactRing, Field, Integers, PrimeField, Rationals, Ring};
use crate::error::{Error, Result};

pub use echelon::{rank_field, rank_integral};
pub use kernel::{kernel_basis, solve_in_span};
pub use snf::{determinant, invariant_factors, normalize_diagonal, smith_with_transforms, SmithForm};

/// A sparse vector: `(index, value)` pairs sorted by index, no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// A `rows x cols` matrix with only nonzero entries stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix<E> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), E>,
}

impl<E: Clone> SparseMatrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    /// Sum duplicate triplets and drop zeros.
    pub fn from_triplets<R: Ring<Elem = E>>(
        ring: &R,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, E)>,
    ) -> Result<Self> {
        let mut m = Self::zeros(rows, cols);
        for (i, j, v) in triplets {
            m.add_at(ring, i, j, &v)?;
        }
        Ok(m)
    }

    pub fn add_at<R: Ring<Elem = E>>(&mut self, ring: &R, i: usize, j: usize, v: &E) -> Result<()> {
        if i >= self.rows {
            return Err(Error::IndexOutOfRange { index: i, max: self.rows });
        }
        if j >= self.cols {
            return Err(Error::IndexOutOfRange { index: j, max: self.cols });
        }
        if ring.is_zero(v) {
            return Ok(());
        }
        let sum = match self.entries.get(&(i, j)) {
            Some(old) => ring.add(old, v),
            None => v.clone(),
        };
        if ring.is_zero(&sum) {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), sum);
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&E> {
        self.entries.get(&(i, j))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &E)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn transpose(&self) -> Self {
        let entries = self.entries.iter().map(|(&(i, j), v)| ((j, i), v.clone())).collect();
        SparseMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn map<R: Ring>(&self, target: &R, f: impl Fn(&E) -> R::Elem) -> SparseMatrix<R::Elem> {
        let entries = self
            .entries
            .iter()
            .map(|(&k, v)| (k, f(v)))
            .filter(|(_, v)| !target.is_zero(v))
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn row_vectors(&self) -> Vec<SparseVec<E>> {
        let mut out = vec![Vec::new(); self.rows];
        for (&(i, j), v) in &self.entries {
            out[i].push((j, v.clone()));
        }
        out
    }

    pub fn column_vectors(&self) -> Vec<SparseVec<E>> {
        let mut out = vec![Vec::new(); self.cols];
        for (&(i, j), v) in &self.entries {
            out[j].push((i, v.clone()));
        }
        out
    }

    /// `self * other`.
    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch(self.cols, other.rows));
        }
        let other_rows = other.row_vectors();
        let mut out = Self::zeros(self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            for (j, b) in &other_rows[k] {
                out.add_at(ring, i, *j, &ring.mul(a, b))?;
            }
        }
        Ok(out)
    }

    pub fn to_dense<R: Ring<Elem = E>>(&self, ring: &R) -> Vec<Vec<E>> {
        let mut out = vec![vec![ring.zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn to_json<R: Ring<Elem = E>>(&self, ring: &R) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|(&(i, j), v)| (i, j, ring.render(v))).collect(),
        }
    }
}

impl<E: fmt::Debug> fmt::Debug for SparseMatrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix({}x{}, {:?})", self.rows, self.cols, self.entries)
    }
}

impl SparseMatrix<BigInt> {
    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        let triplets = json
            .entries
            .iter()
            .map(|(i, j, s)| {
                s.trim().parse::<BigInt>().map(|v| (*i, *j, v)).map_err(|_| Error::Parse(format!("bad integer {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_triplets(&Integers::new(0), json.rows, json.cols, triplets)
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let triplets = rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &v)| (i, j, BigInt::from(v))));
        Self::from_triplets(&Integers::new(0), r, c, triplets).expect("indices in range")
    }
}

/// Sparse triplet dump; coefficients are rendered as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

/// Rings over which ranks, invariant factors and kernels are computed exactly.
pub trait LinAlg: ExactRing {
    /// Euclidean quotient: `a - quo(a, b) * b` is smaller than `b`.
    fn quo(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Euclidean size comparison between nonzero elements.
    fn smaller(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn rank(&self, m: &SparseMatrix<Self::Elem>) -> usize;
    /// Nonzero invariant factors, each dividing the next. Over a field these are all 1.
    fn invariant_factors(&self, m: &SparseMatrix<Self::Elem>) -> Vec<BigInt>;
}

fn shorter_side<E: Clone>(m: &SparseMatrix<E>) -> Vec<SparseVec<E>> {
    if m.rows() <= m.cols() {
        m.column_vectors()
    } else {
        m.row_vectors()
    }
}

impl LinAlg for Integers {
    fn quo(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a.div_floor(b)
    }
    fn smaller(&self, a: &BigInt, b: &BigInt) -> bool {
        a.abs() < b.abs()
    }
    fn rank(&self, m: &SparseMatrix<BigInt>) -> usize {
        rank_integral(shorter_side(m))
    }
    fn invariant_factors(&self, m: &SparseMatrix<BigInt>) -> Vec<BigInt> {
        invariant_factors(m)
    }
}

/// Scale a rational vector by the lcm of its denominators.
fn clear_denominators(v: SparseVec<BigRational>) -> SparseVec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    v.into_iter().map(|(i, x)| (i, (x * BigRational::from_integer(l.clone())).to_integer())).collect()
}

impl LinAlg for Rationals {
    fn quo(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a / b
    }
    fn smaller(&self, _a: &BigRational, _b: &BigRational) -> bool {
        false
    }
    fn rank(&self, m: &SparseMatrix<BigRational>) -> usize {
        rank_integral(shorter_side(m).into_iter().map(clear_denominators).collect())
    }
    fn invariant_factors(&self, m: &SparseMatrix<BigRational>) -> Vec<BigInt> {
        vec![BigInt::one(); self.rank(m)]
    }
}

impl LinAlg for PrimeField {
    fn quo(&self, a: &u64, b: &u64) -> u64 {
        self.mul(a, &self.inv(b))
    }
    fn smaller(&self, _a: &u64, _b: &u64) -> bool {
        false
    }
    fn rank(&self, m: &SparseMatrix<u64>) -> usize {
        rank_field(self, shorter_side(m))
    }
    fn invariant_factors(&self, m: &SparseMatrix<u64>) -> Vec<BigInt> {
        vec![BigInt::one(); self.rank(m)]
    }
}

/// `x + c * y` on sorted sparse vectors.
pub(crate) fn axpy<R: Ring>(ring: &R, x: &[(usize, R::Elem)], c: &R::Elem, y: &[(usize, R::Elem)]) -> SparseVec<R::Elem> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            let v = ring.mul(c, &y[j].1);
            if !ring.is_zero(&v) {
                out.push((y[j].0, v));
            }
            j += 1;
        } else {
            let v = ring.add(&x[i].1, &ring.mul(c, &y[j].1));
            if !ring.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_sum_and_drop_zeros() {
        let z = Integers::new(0);
        let m = SparseMatrix::from_triplets(&z, 2, 2, [(0, 0, 1.into()), (0, 0, (-1).into()), (1, 1, 3.into())]).unwrap();
        assert_eq!(m.nnz(), 1);
        assert!(SparseMatrix::from_triplets(&z, 2, 2, [(2, 0, BigInt::one())]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = SparseMatrix::from_dense(&[vec![2, 4], vec![6, 8]]);
        let j = m.to_json(&Integers::new(0));
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(text, r#"{"rows":2,"cols":2,"entries":[[0,0,"2"],[0,1,"4"],[1,0,"6"],[1,1,"8"]]}"#);
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(SparseMatrix::from_json(&back).unwrap(), m);
    }

    #[test]
    fn ranks_over_each_ring() {
        let m = SparseMatrix::from_dense(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(Integers::new(0).rank(&m), 2);
        let f2 = PrimeField::new(2, 0).unwrap();
        assert_eq!(f2.rank(&m.map(&f2, |x| f2.from_int(x))), 0);
        let q = Rationals::new(0);
        let mq = m.map(&q, |x| q.from_int(x));
        assert_eq!(q.rank(&mq), 2);
        let singular = SparseMatrix::from_dense(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(Integers::new(0).rank(&singular), 1);
    }
}
