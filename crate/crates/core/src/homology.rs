//! Chain complexes of free modules and their homology.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeff::{Integers, Ring, RingKind};
use crate::error::{Error, Result};
use crate::linalg::{LinAlg, MatrixJson, SparseMatrix};

/// Dump of a complex: ranks and boundary triplets keyed by degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub schema_version: u32,
    pub ring: RingKind,
    pub ranks: BTreeMap<i64, usize>,
    pub boundaries: BTreeMap<i64, MatrixJson>,
}

impl ComplexJson {
    /// Integer complexes only; polynomial dumps are write-only.
    pub fn to_integral(&self) -> Result<ChainComplex<Integers>> {
        if self.ring != RingKind::Integers {
            return Err(Error::Config(format!("expected an integer complex, found {}", self.ring)));
        }
        let boundaries = self
            .boundaries
            .iter()
            .map(|(&p, m)| Ok((p, SparseMatrix::from_json(m)?)))
            .collect::<Result<_>>()?;
        ChainComplex::new(Integers::new(0), self.ranks.clone(), boundaries)
    }
}

/// Free modules `C_p` given by rank, with boundary matrices `d_p : C_p -> C_{p-1}`.
#[derive(Clone, Debug)]
pub struct ChainComplex<R: Ring> {
    ring: R,
    ranks: BTreeMap<i64, usize>,
    boundaries: BTreeMap<i64, SparseMatrix<R::Elem>>,
}

impl<R: Ring> ChainComplex<R> {
    /// Degrees absent from `ranks` are zero.
    pub fn new(
        ring: R,
        ranks: BTreeMap<i64, usize>,
        boundaries: BTreeMap<i64, SparseMatrix<R::Elem>>,
    ) -> Result<Self> {
        let c = ChainComplex { ring, ranks, boundaries };
        for (&p, d) in &c.boundaries {
            if d.cols() != c.rank(p) {
                return Err(Error::SizeMismatch(d.cols(), c.rank(p)));
            }
            if d.rows() != c.rank(p - 1) {
                return Err(Error::SizeMismatch(d.rows(), c.rank(p - 1)));
            }
        }
        Ok(c)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rank(&self, p: i64) -> usize {
        self.ranks.get(&p).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &BTreeMap<i64, usize> {
        &self.ranks
    }

    /// Smallest and largest degree with a nonzero term.
    pub fn support(&self) -> Option<(i64, i64)> {
        let mut nz = self.ranks.iter().filter(|(_, &r)| r > 0).map(|(&p, _)| p);
        let lo = nz.next()?;
        let hi = nz.next_back().unwrap_or(lo);
        Some((lo, hi))
    }

    pub fn boundary(&self, p: i64) -> SparseMatrix<R::Elem> {
        self.boundaries.get(&p).cloned().unwrap_or_else(|| SparseMatrix::zeros(self.rank(p - 1), self.rank(p)))
    }

    pub fn boundaries(&self) -> &BTreeMap<i64, SparseMatrix<R::Elem>> {
        &self.boundaries
    }

    pub fn check_d_squared(&self) -> Result<()> {
        for (&p, d) in &self.boundaries {
            if let Some(prev) = self.boundaries.get(&(p - 1)) {
                if !prev.mul(&self.ring, d)?.is_zero() {
                    return Err(Error::D2NotZero(p - 1));
                }
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().map(|(&p, &r)| if p.rem_euclid(2) == 0 { r as i64 } else { -(r as i64) }).sum()
    }

    pub fn map_ring<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> ChainComplex<S> {
        ChainComplex {
            ring: target.clone(),
            ranks: self.ranks.clone(),
            boundaries: self.boundaries.iter().map(|(&p, d)| (p, d.map(target, &f))).collect(),
        }
    }

    /// `Hom(C, k)` as a chain complex in negated degrees, so that its
    /// homology in degree `-p` is the cohomology in degree `p`.
    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            schema_version: 1,
            ring: self.ring.descriptor(),
            ranks: self.ranks.clone(),
            boundaries: self.boundaries.iter().map(|(&p, d)| (p, d.to_json(&self.ring))).collect(),
        }
    }

    pub fn dual(&self) -> ChainComplex<R> {
        let ranks = self.ranks.iter().map(|(&p, &r)| (-p, r)).collect();
        let boundaries = self.boundaries.iter().map(|(&p, d)| (1 - p, d.transpose())).collect();
        ChainComplex { ring: self.ring.clone(), ranks, boundaries }
    }
}

mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
    }
}

/// Homology in one degree: free rank plus torsion invariants (each > 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHomology {
    pub degree: i64,
    pub betti: usize,
    #[serde(with = "bigint_strings")]
    pub torsion: Vec<BigInt>,
}

impl DegreeHomology {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn is_ground_ring(&self) -> bool {
        self.betti == 1 && self.torsion.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyResult {
    pub ring: RingKind,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyResult {
    pub fn get(&self, degree: i64) -> Option<&DegreeHomology> {
        self.degrees.iter().find(|h| h.degree == degree)
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.iter().all(DegreeHomology::is_zero)
    }

    /// The ground ring in degree 0 and nothing elsewhere.
    pub fn concentrated_in_zero(&self) -> bool {
        self.degrees.iter().all(|h| if h.degree == 0 { h.is_ground_ring() } else { h.is_zero() })
            && self.get(0).is_some()
    }

    /// Betti numbers in degree order.
    pub fn bettis(&self) -> Vec<usize> {
        self.degrees.iter().map(|h| h.betti).collect()
    }
}

/// Rank and invariant factors of every boundary, then `H_p` degreewise.
pub fn complex_homology<R: LinAlg>(c: &ChainComplex<R>) -> Result<HomologyResult> {
    c.check_d_squared()?;
    let Some((lo, hi)) = c.support() else {
        return Ok(HomologyResult { ring: c.ring().descriptor(), degrees: Vec::new() });
    };
    let factors: BTreeMap<i64, Vec<BigInt>> = c
        .boundaries()
        .par_iter()
        .map(|(&p, d)| (p, c.ring().invariant_factors(d)))
        .collect();
    let rank_of = |p: i64| factors.get(&p).map_or(0, Vec::len);
    let degrees = (lo..=hi)
        .map(|p| {
            let betti = c.rank(p) - rank_of(p) - rank_of(p + 1);
            let torsion = factors.get(&(p + 1)).map_or_else(Vec::new, |f| f.iter().filter(|x| !x.is_one()).cloned().collect());
            DegreeHomology { degree: p, betti, torsion }
        })
        .collect();
    Ok(HomologyResult { ring: c.ring().descriptor(), degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::PrimeField;

    fn z() -> Integers {
        Integers::new(0)
    }

    #[test]
    fn multiplication_by_two() {
        let d1 = SparseMatrix::from_dense(&[vec![2]]);
        let c = ChainComplex::new(z(), BTreeMap::from([(0, 1), (1, 1)]), BTreeMap::from([(1, d1)])).unwrap();
        let h = complex_homology(&c).unwrap();
        assert_eq!(h.get(1).unwrap().betti, 0);
        assert!(h.get(1).unwrap().torsion.is_empty());
        assert_eq!(h.get(0).unwrap().torsion, vec![BigInt::from(2)]);
        assert_eq!(h.get(0).unwrap().betti, 0);
        let f2 = PrimeField::new(2, 0).unwrap();
        let h2 = complex_homology(&c.map_ring(&f2, |x| f2.from_int(x))).unwrap();
        assert_eq!(h2.bettis(), vec![1, 1]);
    }

    #[test]
    fn zero_differentials() {
        let c = ChainComplex::new(z(), BTreeMap::from([(0, 3), (1, 2), (2, 1)]), BTreeMap::new()).unwrap();
        assert_eq!(complex_homology(&c).unwrap().bettis(), vec![3, 2, 1]);
    }

    #[test]
    fn rejects_bad_shapes_and_nonzero_squares() {
        let d1 = SparseMatrix::from_dense(&[vec![1]]);
        assert!(ChainComplex::new(z(), BTreeMap::from([(0, 2), (1, 1)]), BTreeMap::from([(1, d1.clone())])).is_err());
        let c = ChainComplex::new(
            z(),
            BTreeMap::from([(0, 1), (1, 1), (2, 1)]),
            BTreeMap::from([(1, d1.clone()), (2, d1)]),
        )
        .unwrap();
        assert!(matches!(complex_homology(&c), Err(Error::D2NotZero(1))));
    }

    #[test]
    fn dual_complex_gives_cohomology() {
        let d1 = SparseMatrix::from_dense(&[vec![2]]);
        let c = ChainComplex::new(z(), BTreeMap::from([(0, 1), (1, 1)]), BTreeMap::from([(1, d1)])).unwrap();
        let h = complex_homology(&c.dual()).unwrap();
        assert_eq!(h.get(-1).unwrap().torsion, vec![BigInt::from(2)]);
        assert!(h.get(0).unwrap().is_zero());
    }

    #[test]
    fn json_dump_round_trips() {
        let d1 = SparseMatrix::from_dense(&[vec![2, 0], vec![1, 3]]);
        let c = ChainComplex::new(z(), BTreeMap::from([(0, 2), (1, 2)]), BTreeMap::from([(1, d1)])).unwrap();
        let text = serde_json::to_string(&c.to_json()).unwrap();
        assert!(text.contains(r#""ring":"Z""#));
        let back: ComplexJson = serde_json::from_str(&text).unwrap();
        let c2 = back.to_integral().unwrap();
        assert_eq!(c2.ranks(), c.ranks());
        assert_eq!(c2.boundary(1), c.boundary(1));
    }
}
