//! The algebra `dTL_n(delta)` as finitely supported linear combinations of
//! diagrams, plus an indexed basis and a precomputed product table.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::coeff::Ring;
use crate::diagram::{enumerate_basis, Diagram, MultiplicationOutcome};
use crate::error::{Error, Result};
use crate::ideal::IdealBasis;

/// An element of `dTL_n(delta)` over the ring `R`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<R: Ring> {
    ring: R,
    n: usize,
    terms: BTreeMap<Diagram, R::Elem>,
}

impl<R: Ring> AlgebraElement<R> {
    pub fn zero(ring: &R, n: usize) -> Self {
        AlgebraElement { ring: ring.clone(), n, terms: BTreeMap::new() }
    }

    pub fn from_diagram(ring: &R, d: Diagram) -> Self {
        let mut terms = BTreeMap::new();
        let n = d.n();
        terms.insert(d, ring.one());
        AlgebraElement { ring: ring.clone(), n, terms }
    }

    pub fn from_terms(ring: &R, n: usize, terms: impl IntoIterator<Item = (Diagram, R::Elem)>) -> Result<Self> {
        let mut x = Self::zero(ring, n);
        for (d, c) in terms {
            if d.n() != n {
                return Err(Error::SizeMismatch(n, d.n()));
            }
            x.add_term(d, &c);
        }
        Ok(x)
    }

    /// The unit: the sum over all `2^n` ways of deleting edges from the
    /// all-propagating diagram.
    pub fn identity(ring: &R, n: usize) -> Self {
        let full = Diagram::all_propagating(n);
        let mut x = Self::zero(ring, n);
        for mask in 0u32..(1 << n) {
            let edges: Vec<_> = full.edges().into_iter().enumerate().filter(|(j, _)| mask & (1 << j) == 0).map(|(_, e)| e).collect();
            let d = Diagram::from_edges(n, &edges).expect("sub-diagram of a planar diagram");
            x.add_term(d, &ring.one());
        }
        x
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &R::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &Diagram) -> R::Elem {
        self.terms.get(d).cloned().unwrap_or_else(|| self.ring.zero())
    }

    fn add_term(&mut self, d: Diagram, c: &R::Elem) {
        if self.ring.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(v) => {
                *v = self.ring.add(v, c);
                if self.ring.is_zero(v) {
                    self.terms.remove(&d);
                }
            }
            None => {
                self.terms.insert(d, c.clone());
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::MixedRing(format!("{:?}", self.ring), format!("{:?}", other.ring)));
        }
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Self::zero(&self.ring, self.n);
        for (d, v) in &self.terms {
            out.add_term(d.clone(), &self.ring.mul(c, v));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&self.ring.neg(&self.ring.one())))
    }

    /// Bilinear extension of the diagram product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.ring, self.n);
        for (d1, c1) in &self.terms {
            for (d2, c2) in &other.terms {
                if let MultiplicationOutcome::Product { loops, diagram } = d1.multiply(d2)? {
                    let c = self.ring.mul(&self.ring.mul(c1, c2), &self.ring.delta_pow(loops));
                    out.add_term(diagram, &c);
                }
            }
        }
        Ok(out)
    }

    /// Coefficient of the all-propagating diagram.
    pub fn augmentation(&self) -> R::Elem {
        self.coefficient(&Diagram::all_propagating(self.n))
    }
}

/// Augmentation of a single diagram: 1 on the all-propagating diagram, else 0.
pub fn diagram_augmentation(d: &Diagram) -> bool {
    d.propagating_count() == d.n()
}

/// Basis of the two-sided ideal `I`: diagrams with fewer than `n` propagating edges.
pub fn augmentation_ideal_basis(n: usize) -> IdealBasis {
    let diagrams = enumerate_basis(n).into_iter().filter(|d| d.propagating_count() < n).collect();
    IdealBasis::new(n, "I", diagrams)
}

/// The diagram basis of `dTL_n` with fast index lookup.
#[derive(Debug)]
pub struct Basis {
    n: usize,
    diagrams: Vec<Diagram>,
    index: HashMap<Diagram, usize>,
}

impl Basis {
    pub fn new(n: usize) -> Arc<Basis> {
        let diagrams = enumerate_basis(n);
        let index = diagrams.iter().enumerate().map(|(i, d)| (d.clone(), i)).collect();
        Arc::new(Basis { n, diagrams, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    pub fn diagrams(&self) -> &[Diagram] {
        &self.diagrams
    }

    pub fn get(&self, i: usize) -> &Diagram {
        &self.diagrams[i]
    }

    pub fn index_of(&self, d: &Diagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    /// Index of the all-propagating diagram.
    pub fn full_index(&self) -> usize {
        self.index_of(&Diagram::all_propagating(self.n)).expect("in basis")
    }
}

const ANNIHILATED: u32 = u32::MAX;
const INDEX_BITS: u32 = 24;

/// All products of basis diagrams, stored as `(index, loops)` or annihilated.
pub struct MultTable {
    basis: Arc<Basis>,
    entries: Vec<u32>,
}

/// Largest `n` for which a full table is built (2188^2 entries at n = 5).
pub const MAX_TABLE_N: usize = 5;

impl MultTable {
    pub fn new(basis: Arc<Basis>) -> Result<MultTable> {
        if basis.n() > MAX_TABLE_N {
            return Err(Error::SizeGuardExceeded { dim: basis.len() * basis.len(), limit: 2188 * 2188 });
        }
        let size = basis.len();
        let entries = (0..size)
            .into_par_iter()
            .flat_map_iter(|a| {
                let basis = &basis;
                (0..size).map(move |b| match basis.get(a).multiply(basis.get(b)).expect("same n") {
                    MultiplicationOutcome::Annihilated => ANNIHILATED,
                    MultiplicationOutcome::Product { loops, diagram } => {
                        let idx = basis.index_of(&diagram).expect("product is a basis diagram") as u32;
                        idx | (loops << INDEX_BITS)
                    }
                })
            })
            .collect();
        Ok(MultTable { basis, entries })
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    /// `(index, loops)` of `basis[a] * basis[b]`, or `None` when annihilated.
    #[inline]
    pub fn product(&self, a: usize, b: usize) -> Option<(usize, u32)> {
        let e = self.entries[a * self.basis.len() + b];
        (e != ANNIHILATED).then_some(((e & ((1 << INDEX_BITS) - 1)) as usize, e >> INDEX_BITS))
    }
}
