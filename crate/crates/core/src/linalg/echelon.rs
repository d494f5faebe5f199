use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SparseVec;
use crate::coeff::Field;

/// Rank of a family of sparse vectors over a field, by incremental elimination.
pub fn rank_field<F: Field>(f: &F, vectors: Vec<SparseVec<F::Elem>>) -> usize {
    let mut pivots: HashMap<usize, SparseVec<F::Elem>> = HashMap::new();
    for mut v in vectors {
        while let Some((lead, a)) = v.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => v = super::axpy(f, &v, &f.neg(&a), p),
                None => {
                    let inv = f.inv(&a);
                    let normalized = v.into_iter().map(|(i, x)| (i, f.mul(&x, &inv))).collect();
                    pivots.insert(lead, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn content(v: &[(usize, BigInt)]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, (_, x)| g.gcd(x))
}

fn primitive(mut v: SparseVec<BigInt>) -> SparseVec<BigInt> {
    let g = content(&v);
    if !g.is_zero() && !g.is_one() {
        for (_, x) in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    if v.first().is_some_and(|(_, x)| x.is_negative()) {
        for (_, x) in v.iter_mut() {
            *x = -&*x;
        }
    }
    v
}

/// `a * x - b * y` on sorted integer vectors.
fn combine(a: &BigInt, x: &[(usize, BigInt)], b: &BigInt, y: &[(usize, BigInt)]) -> SparseVec<BigInt> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if i >= x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank over the rationals of integer vectors, fraction-free.
pub fn rank_integral(vectors: Vec<SparseVec<BigInt>>) -> usize {
    let mut pivots: HashMap<usize, SparseVec<BigInt>> = HashMap::new();
    for v in vectors {
        let mut v = primitive(v);
        while let Some((lead, a)) = v.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => {
                    let g = a.gcd(&p[0].1);
                    let (pa, aa) = (&p[0].1 / &g, &a / &g);
                    v = primitive(combine(&pa, &v, &aa, p));
                }
                None => {
                    pivots.insert(lead, v);
                    break;
                }
            }
        }
    }
    pivots.len()
}
