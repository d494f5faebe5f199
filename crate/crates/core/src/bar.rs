//! The reduced bar complex `B_p = I^{(x) p}` of an augmented algebra whose
//! augmentation ideal has a basis closed under multiplication up to scalars.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::{Basis, MultTable, MAX_TABLE_N};
use crate::coeff::Ring;
use crate::diagram::MultiplicationOutcome;
use crate::error::{Error, Result};
use crate::homology::{complex_homology, ChainComplex, DegreeHomology};
use crate::linalg::{LinAlg, SparseMatrix};

/// Largest number of stored entries allowed in one bar differential.
pub const BAR_ENTRY_LIMIT: usize = 10_000_000;

/// Products `x_a x_b = delta^k x_c` (or zero) on a basis of the augmentation ideal.
#[derive(Clone, Debug)]
pub struct IdealProducts {
    dim: usize,
    table: Vec<Option<(usize, u32)>>,
}

impl IdealProducts {
    pub fn new(dim: usize, f: impl Fn(usize, usize) -> Option<(usize, u32)> + Sync) -> IdealProducts {
        let table = (0..dim * dim).into_par_iter().map(|k| f(k / dim, k % dim)).collect();
        IdealProducts { dim, table }
    }

    /// Augmentation ideal of `dTL_n`: every diagram except the all-propagating one.
    pub fn dilute(n: usize) -> Result<IdealProducts> {
        let basis = Basis::new(n);
        let full = basis.full_index();
        let ideal: Vec<usize> = (0..basis.len()).filter(|&i| i != full).collect();
        let position = |g: usize| if g < full { g } else { g - 1 };
        let table = if n <= MAX_TABLE_N { Some(MultTable::new(basis.clone())?) } else { None };
        Ok(IdealProducts::new(ideal.len(), |a, b| {
            let (ga, gb) = (ideal[a], ideal[b]);
            let prod = match &table {
                Some(t) => t.product(ga, gb),
                None => match basis.get(ga).multiply(basis.get(gb)).expect("same n") {
                    MultiplicationOutcome::Annihilated => None,
                    MultiplicationOutcome::Product { loops, diagram } => Some((basis.index_of(&diagram)?, loops)),
                },
            };
            prod.map(|(g, loops)| (position(g), loops))
        }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn product(&self, a: usize, b: usize) -> Option<(usize, u32)> {
        self.table[a * self.dim + b]
    }
}

/// Stored entries of `d_p`, or `None` on overflow.
fn entries_needed(dim: usize, p: usize) -> Option<usize> {
    dim.checked_pow(p as u32)?.checked_mul(p.saturating_sub(1))
}

/// Largest `P` whose `Tor_P` stays within the size guard.
pub fn max_bar_degree(dim: usize) -> usize {
    let mut p = 0;
    while entries_needed(dim, p + 2).is_some_and(|e| e <= BAR_ENTRY_LIMIT) && p < 64 {
        p += 1;
    }
    p
}

fn differential<R: Ring>(products: &IdealProducts, ring: &R, p: usize) -> Result<SparseMatrix<R::Elem>> {
    let dim = products.dim;
    let rows = dim.pow(p as u32 - 1);
    let cols = dim.pow(p as u32);
    let triplets: Vec<(usize, usize, R::Elem)> = (0..cols)
        .into_par_iter()
        .flat_map_iter(|col| {
            let mut digits = vec![0usize; p];
            let mut rest = col;
            for k in (0..p).rev() {
                digits[k] = rest % dim;
                rest /= dim;
            }
            (1..p)
                .filter_map(move |i| {
                    let (c, loops) = products.product(digits[i - 1], digits[i])?;
                    let row = digits[..i - 1]
                        .iter()
                        .chain(std::iter::once(&c))
                        .chain(&digits[i + 1..])
                        .fold(0usize, |acc, &x| acc * dim + x);
                    let sign = if i % 2 == 0 { ring.one() } else { ring.neg(&ring.one()) };
                    Some((row, col, ring.mul(&sign, &ring.delta_pow(loops))))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    SparseMatrix::from_triplets(ring, rows, cols, triplets)
}

/// Degrees `0 ..= top` of the reduced bar complex; `d_1` is zero.
pub fn bar_complex<R: Ring>(products: &IdealProducts, ring: &R, top: usize) -> Result<ChainComplex<R>> {
    if let Some(p) = (2..=top).find(|&p| entries_needed(products.dim, p).is_none_or(|e| e > BAR_ENTRY_LIMIT)) {
        return Err(Error::SizeGuardExceeded {
            dim: entries_needed(products.dim, p).unwrap_or(usize::MAX),
            limit: BAR_ENTRY_LIMIT,
        });
    }
    let ranks: BTreeMap<i64, usize> = (0..=top).map(|p| (p as i64, products.dim.pow(p as u32))).collect();
    let mut boundaries = BTreeMap::new();
    for p in 2..=top {
        boundaries.insert(p as i64, differential(products, ring, p)?);
    }
    ChainComplex::new(ring.clone(), ranks, boundaries)
}

/// `Tor_p(1, 1)` for `0 <= p <= max_degree`.
pub fn bar_tor<R: LinAlg>(products: &IdealProducts, ring: &R, max_degree: usize) -> Result<Vec<DegreeHomology>> {
    let c = bar_complex(products, ring, max_degree + 1)?;
    let h = complex_homology(&c)?;
    Ok((0..=max_degree as i64)
        .map(|p| h.get(p).cloned().unwrap_or(DegreeHomology { degree: p, betti: 0, torsion: vec![] }))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Integers, PrimeField, Rationals};

    #[test]
    fn n1_has_one_idempotent() {
        let prods = IdealProducts::dilute(1).unwrap();
        assert_eq!(prods.dim(), 1);
        assert_eq!(prods.product(0, 0), Some((0, 0)));
        for delta in [0, 1, 2] {
            let tor = bar_tor(&prods, &Integers::new(delta), 5).unwrap();
            assert!(tor[0].is_ground_ring());
            assert!(tor[1..].iter().all(DegreeHomology::is_zero));
        }
    }

    #[test]
    fn n2_vanishes() {
        let prods = IdealProducts::dilute(2).unwrap();
        assert_eq!(prods.dim(), 8);
        let f2 = PrimeField::new(2, 0).unwrap();
        let tor = bar_tor(&prods, &f2, 3).unwrap();
        assert_eq!(tor.iter().map(|h| h.betti).collect::<Vec<_>>(), vec![1, 0, 0, 0]);
        let q = Rationals::new(-1);
        let tor = bar_tor(&prods, &q, 2).unwrap();
        assert_eq!(tor.iter().map(|h| h.betti).collect::<Vec<_>>(), vec![1, 0, 0]);
    }

    #[test]
    fn guard() {
        let prods = IdealProducts::new(1000, |_, _| None);
        assert!(matches!(bar_tor(&prods, &Integers::new(0), 3), Err(Error::SizeGuardExceeded { .. })));
        assert_eq!(max_bar_degree(8), 5);
    }
}
