use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SparseMatrix;

/// Nonzero invariant factors of an integer matrix, each dividing the next.
///
/// Sparse elimination with smallest-magnitude pivots (ties broken by
/// Markowitz cost), followed by normalization of the diagonal.
pub fn invariant_factors(m: &SparseMatrix<BigInt>) -> Vec<BigInt> {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.rows()];
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (i, j, v) in m.entries() {
        rows[i].insert(j, v.clone());
        cols[j].insert(i);
    }
    let mut diag = Vec::new();
    loop {
        let mut best: Option<(usize, usize)> = None;
        let mut best_key = None;
        'scan: for (r, row) in rows.iter().enumerate() {
            for (&c, v) in row {
                let cost = (row.len() - 1) * (cols[c].len() - 1);
                let key = (v.magnitude(), cost);
                if best_key.as_ref().is_none_or(|b| key < *b) {
                    let stop = key.0.is_one() && cost == 0;
                    best = Some((r, c));
                    best_key = Some(key);
                    if stop {
                        break 'scan;
                    }
                }
            }
        }
        let Some((r, c)) = best else { break };
        let a = rows[r][&c].clone();
        let prow: Vec<(usize, BigInt)> = rows[r].iter().map(|(&j, v)| (j, v.clone())).collect();
        let mut clean = true;
        let others: Vec<usize> = cols[c].iter().copied().filter(|&i| i != r).collect();
        for r2 in others {
            let q = rows[r2][&c].div_floor(&a);
            for (j, v) in &prow {
                let cur = rows[r2].get(j).cloned().unwrap_or_default();
                let new = cur - &q * v;
                if new.is_zero() {
                    rows[r2].remove(j);
                    cols[*j].remove(&r2);
                } else {
                    rows[r2].insert(*j, new);
                    cols[*j].insert(r2);
                }
            }
            if rows[r2].contains_key(&c) {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        let mut done = true;
        for (j, b) in prow.iter().filter(|(j, _)| *j != c) {
            let rem = b.mod_floor(&a);
            if rem.is_zero() {
                rows[r].remove(j);
                cols[*j].remove(&r);
            } else {
                rows[r].insert(*j, rem);
                done = false;
            }
        }
        if done {
            rows[r].clear();
            cols[c].clear();
            diag.push(a.abs());
        }
    }
    normalize_diagonal(diag)
}

/// Turn a diagonal of nonzero integers into the divisibility chain of the same matrix.
pub fn normalize_diagonal(mut diag: Vec<BigInt>) -> Vec<BigInt> {
    for d in diag.iter_mut() {
        *d = d.abs();
    }
    diag.retain(|d| !d.is_zero());
    diag.sort();
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            if !(&diag[j] % &diag[i]).is_zero() {
                let g = diag[i].gcd(&diag[j]);
                let l = diag[i].lcm(&diag[j]);
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    diag
}

/// `U m V = D` with `U`, `V` unimodular and `D` diagonal in Smith form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    /// The first `min(rows, cols)` diagonal entries of `D`.
    pub diagonal: Vec<BigInt>,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    /// Recompute `U m V`, compare with `D`, and check both determinants are units.
    pub fn verify(&self, m: &SparseMatrix<BigInt>) -> bool {
        let a = dense(m);
        let uav = matmul(&matmul(&self.u, &a, m.rows()), &self.v, m.cols());
        let diagonal_ok = uav.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, x)| if i == j { *x == self.diagonal[i] } else { x.is_zero() })
        });
        let chain_ok = self.diagonal.windows(2).all(|w| w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && (&w[1] % &w[0]).is_zero());
        diagonal_ok && chain_ok && determinant(&self.u).abs().is_one() && determinant(&self.v).abs().is_one()
    }
}

fn dense(m: &SparseMatrix<BigInt>) -> Vec<Vec<BigInt>> {
    let mut a = vec![vec![BigInt::zero(); m.cols()]; m.rows()];
    for (i, j, v) in m.entries() {
        a[i][j] = v.clone();
    }
    a
}

fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], inner: usize) -> Vec<Vec<BigInt>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j])).collect())
        .collect()
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn row_axpy(a: &mut [Vec<BigInt>], target: usize, q: &BigInt, source: usize) {
    let src = a[source].clone();
    for (x, s) in a[target].iter_mut().zip(&src) {
        *x -= q * s;
    }
}

fn col_axpy(a: &mut [Vec<BigInt>], target: usize, q: &BigInt, source: usize) {
    for row in a.iter_mut() {
        let s = row[source].clone();
        row[target] -= q * s;
    }
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Dense Smith normal form with transformation matrices.
pub fn smith_with_transforms(m: &SparseMatrix<BigInt>) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = dense(m);
    let mut u = identity(rows);
    let mut v = identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if !x.is_zero() && pivot.is_none_or(|(pi, pj)| x.magnitude() < a[pi][pj].magnitude()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);
            let p = a[t][t].clone();
            let mut changed = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&p);
                    row_axpy(&mut a, i, &q, t);
                    row_axpy(&mut u, i, &q, t);
                    changed |= !a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&p);
                    col_axpy(&mut a, j, &q, t);
                    col_axpy(&mut v, j, &q, t);
                    changed |= !a[t][j].is_zero();
                }
            }
            if changed {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| a[i][t + 1..].iter().any(|x| !(x % &p).is_zero()));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, t, &minus_one, i);
                    row_axpy(&mut u, t, &minus_one, i);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    let diagonal = (0..rows.min(cols)).map(|i| a[i][i].clone()).collect();
    SmithForm { u, v, diagonal }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = x / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(invariant_factors(&SparseMatrix::from_dense(&[vec![1, 0], vec![0, 1]])), ints(&[1, 1]));
        assert_eq!(invariant_factors(&SparseMatrix::from_dense(&[vec![2, 4], vec![6, 8]])), ints(&[2, 4]));
        assert_eq!(invariant_factors(&SparseMatrix::from_dense(&[vec![0, 0], vec![0, 0]])), ints(&[]));
        assert_eq!(normalize_diagonal(ints(&[4, 6])), ints(&[2, 12]));
    }

    #[test]
    fn transforms_verify() {
        let m = SparseMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_with_transforms(&m);
        assert!(s.verify(&m));
        assert_eq!(s.invariant_factors(), ints(&[2, 6, 12]));
        assert_eq!(invariant_factors(&m), ints(&[2, 6, 12]));
    }

    #[test]
    fn bareiss_determinant() {
        let a = vec![ints(&[2, 0, 1]), ints(&[1, 3, 2]), ints(&[1, 1, 2])];
        assert_eq!(determinant(&a), BigInt::from(6));
        assert_eq!(determinant(&[ints(&[0, 1]), ints(&[1, 0])]), BigInt::from(-1));
    }

    /// Product of the first k invariant factors equals the gcd of k x k minors.
    fn determinantal_divisors(a: &[Vec<i64>]) -> Vec<BigInt> {
        let (r, c) = (a.len(), a[0].len());
        let mut out = Vec::new();
        for k in 1..=r.min(c) {
            let mut g = BigInt::zero();
            for rs in subsets(r, k) {
                for cs in subsets(c, k) {
                    let minor: Vec<Vec<BigInt>> =
                        rs.iter().map(|&i| cs.iter().map(|&j| BigInt::from(a[i][j])).collect()).collect();
                    g = g.gcd(&determinant(&minor));
                }
            }
            out.push(g);
        }
        out
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect()).collect()
    }

    proptest! {
        #[test]
        fn matches_determinantal_divisors(rows in 1usize..4, cols in 1usize..4, seed in proptest::collection::vec(-6i64..7, 16)) {
            let a: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect()).collect();
            let m = SparseMatrix::from_dense(&a);
            let f = invariant_factors(&m);
            let dd = determinantal_divisors(&a);
            let mut prod = BigInt::one();
            for (k, d) in dd.iter().enumerate() {
                if d.is_zero() {
                    prop_assert!(f.len() <= k);
                    break;
                }
                prod *= &f[k];
                prop_assert_eq!(&prod, d);
            }
            let s = smith_with_transforms(&m);
            prop_assert!(s.verify(&m));
            prop_assert_eq!(s.invariant_factors(), f);
        }
    }
}
