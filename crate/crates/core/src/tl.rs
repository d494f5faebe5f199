//! The classical Temperley-Lieb algebra `TL_n(delta)`: the perfect matchings
//! inside the dilute basis, whose products never vanish.

use std::fmt;
use std::str::FromStr;

use crate::bar::{bar_tor, IdealProducts};
use crate::diagram::{enumerate_basis, Diagram, MultiplicationOutcome};
use crate::error::{Error, Result};
use crate::homology::DegreeHomology;
use crate::linalg::LinAlg;

/// A diagram with no isolated vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TLDiagram(Diagram);

impl TLDiagram {
    pub fn new(d: Diagram) -> Result<TLDiagram> {
        match d.isolated().first() {
            Some(slot) => Err(Error::UncoveredVertex(slot.to_string())),
            None => Ok(TLDiagram(d)),
        }
    }

    pub fn identity(n: usize) -> TLDiagram {
        TLDiagram(Diagram::all_propagating(n))
    }

    pub fn diagram(&self) -> &Diagram {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }
}

impl fmt::Display for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for TLDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<TLDiagram> {
        TLDiagram::new(s.parse()?)
    }
}

pub fn tl_basis(n: usize) -> Vec<TLDiagram> {
    enumerate_basis(n).into_iter().filter(Diagram::is_perfect).map(TLDiagram).collect()
}

/// Product as `(loops, diagram)`.
pub fn tl_multiply(a: &TLDiagram, b: &TLDiagram) -> Result<(u32, TLDiagram)> {
    match a.0.multiply(&b.0)? {
        MultiplicationOutcome::Product { loops, diagram } => Ok((loops, TLDiagram(diagram))),
        MultiplicationOutcome::Annihilated => unreachable!("perfect matchings have no middle endpoints"),
    }
}

/// Products on the basis of the augmentation ideal (every diagram but the identity).
pub fn tl_ideal_products(n: usize) -> IdealProducts {
    let identity = TLDiagram::identity(n);
    let ideal: Vec<TLDiagram> = tl_basis(n).into_iter().filter(|d| *d != identity).collect();
    IdealProducts::new(ideal.len(), |a, b| {
        let (loops, c) = tl_multiply(&ideal[a], &ideal[b]).expect("same n");
        Some((ideal.binary_search(&c).expect("product lies in the ideal"), loops))
    })
}

pub fn tl_bar_tor<R: LinAlg>(n: usize, ring: &R, max_degree: usize) -> Result<Vec<DegreeHomology>> {
    bar_tor(&tl_ideal_products(n), ring, max_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{PrimeField, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn catalan_counts() {
        assert_eq!(tl_basis(2).len(), 2);
        assert_eq!(tl_basis(3).len(), 5);
        assert_eq!(tl_basis(4).len(), 14);
        let full = enumerate_basis(3);
        assert!(tl_basis(3).iter().all(|d| full.contains(d.diagram())));
    }

    #[test]
    fn products() {
        let u: TLDiagram = "D2:(L1,L2)(R1,R2)".parse().unwrap();
        assert_eq!(tl_multiply(&u, &u).unwrap(), (1, u.clone()));
        assert_eq!(tl_multiply(&TLDiagram::identity(2), &u).unwrap(), (0, u));
        assert!("D2:(L1,R1)".parse::<TLDiagram>().is_err());
    }

    #[test]
    fn associativity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=4 {
            let b = tl_basis(n);
            for _ in 0..200 {
                let (x, y, z) = (&b[rng.gen_range(0..b.len())], &b[rng.gen_range(0..b.len())], &b[rng.gen_range(0..b.len())]);
                let (l1, xy) = tl_multiply(x, y).unwrap();
                let (l2, left) = tl_multiply(&xy, z).unwrap();
                let (l3, yz) = tl_multiply(y, z).unwrap();
                let (l4, right) = tl_multiply(x, &yz).unwrap();
                assert_eq!((l1 + l2, left), (l3 + l4, right));
            }
        }
    }

    #[test]
    fn dual_numbers_at_delta_zero() {
        let f2 = PrimeField::new(2, 0).unwrap();
        let tor = tl_bar_tor(2, &f2, 4).unwrap();
        assert_eq!(tor.iter().map(|h| h.betti).collect::<Vec<_>>(), vec![1, 1, 1, 1, 1]);
        let q = Rationals::new(1);
        let tor = tl_bar_tor(2, &q, 3).unwrap();
        assert_eq!(tor.iter().map(|h| h.betti).collect::<Vec<_>>(), vec![1, 0, 0, 0]);
    }
}
