//! Left ideals spanned by subsets of the diagram basis.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::diagram::{Diagram, MultiplicationOutcome, Slot};
use crate::error::{Error, Result};
use crate::link::{left_link_state, right_link_state, LinkState, Site};

/// A left ideal (or module) stored extensionally as a sorted set of basis diagrams.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealBasis {
    n: usize,
    label: String,
    diagrams: Vec<Diagram>,
}

impl IdealBasis {
    pub fn new(n: usize, label: impl Into<String>, mut diagrams: Vec<Diagram>) -> IdealBasis {
        debug_assert!(diagrams.iter().all(|d| d.n() == n));
        diagrams.sort();
        diagrams.dedup();
        IdealBasis { n, label: label.into(), diagrams }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> IdealBasis {
        self.label = label.into();
        self
    }

    pub fn diagrams(&self) -> &[Diagram] {
        &self.diagrams
    }

    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    pub fn contains(&self, d: &Diagram) -> bool {
        self.diagrams.binary_search(d).is_ok()
    }

    pub fn same_members(&self, other: &IdealBasis) -> bool {
        self.diagrams == other.diagrams
    }

    /// First `(d, m)` with `d * m` nonzero and outside the ideal, if any.
    pub fn left_closure_witness(&self, algebra_basis: &[Diagram]) -> Option<(Diagram, Diagram)> {
        for d in algebra_basis {
            for m in &self.diagrams {
                if let MultiplicationOutcome::Product { diagram, .. } = d.multiply(m).expect("same n") {
                    if !self.contains(&diagram) {
                        return Some((d.clone(), m.clone()));
                    }
                }
            }
        }
        None
    }
}

/// `J_p`: diagrams whose right link state is reachable from `p` by splices.
pub fn ideal_j(algebra_basis: &[Diagram], p: &LinkState) -> IdealBasis {
    let closure = p.splice_closure();
    let diagrams = algebra_basis.iter().filter(|d| closure.contains(&right_link_state(d))).cloned().collect();
    IdealBasis::new(p.n(), format!("J_{{{p}}}"), diagrams)
}

/// Label `K_{R1,R3}` for a set of 1-based right vertices.
pub fn k_label(s: &BTreeSet<usize>) -> String {
    let names: Vec<String> = s.iter().map(|j| format!("R{j}")).collect();
    format!("K_{{{}}}", names.join(","))
}

/// `K_S`: diagrams whose isolated right vertices are exactly `S` (1-based).
pub fn ideal_k(algebra_basis: &[Diagram], n: usize, s: &BTreeSet<usize>) -> Result<IdealBasis> {
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(&j) = s.iter().find(|&&j| j == 0 || j > n) {
        return Err(Error::IndexOutOfRange { index: j, max: n });
    }
    let diagrams = algebra_basis
        .iter()
        .filter(|d| (1..=n).all(|j| d.is_isolated(Slot::R(j)) == s.contains(&j)))
        .cloned()
        .collect();
    Ok(IdealBasis::new(n, k_label(s), diagrams))
}

/// `L_i`: no isolated right vertex and a cup joining `Ri` and `R(i+1)`.
pub fn ideal_l(algebra_basis: &[Diagram], n: usize, i: usize) -> Result<IdealBasis> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, max: n.saturating_sub(1) });
    }
    let diagrams = algebra_basis
        .iter()
        .filter(|d| (1..=n).all(|j| !d.is_isolated(Slot::R(j))) && d.partner(Slot::R(i)) == Some(Slot::R(i + 1)))
        .cloned()
        .collect();
    Ok(IdealBasis::new(n, format!("L_{i}"), diagrams))
}

/// Set intersection of ideals spanned by basis subsets.
pub fn intersect(ideals: &[IdealBasis]) -> Result<IdealBasis> {
    let (first, rest) = ideals.split_first().ok_or(Error::EmptySubset)?;
    let mut members: Vec<Diagram> = first.diagrams.clone();
    for other in rest {
        if other.n != first.n {
            return Err(Error::SizeMismatch(first.n, other.n));
        }
        members.retain(|d| other.contains(d));
    }
    let label = ideals.iter().map(|j| j.label.as_str()).collect::<Vec<_>>().join("∩");
    Ok(IdealBasis::new(first.n, label, members))
}

fn check_even(n: usize) -> Result<()> {
    if n % 2 == 1 || n == 0 {
        return Err(Error::OddCupModule(n));
    }
    Ok(())
}

/// `Cup(n)`: diagrams with right cups at `(1,2), (3,4), .., (n-1, n)`.
pub fn cup_module(algebra_basis: &[Diagram], n: usize) -> Result<IdealBasis> {
    check_even(n)?;
    let diagrams = algebra_basis
        .iter()
        .filter(|d| (1..n).step_by(2).all(|i| d.partner(Slot::R(i)) == Some(Slot::R(i + 1))))
        .cloned()
        .collect();
    Ok(IdealBasis::new(n, format!("Cup({n})"), diagrams))
}

/// Right link state with cups `(1,2), (3,4), ..` (n even).
pub fn cup_link_state(n: usize) -> LinkState {
    let sites = (0..n).map(|i| Site::Cup(i ^ 1)).collect();
    LinkState::new(sites).expect("adjacent cups are valid")
}

/// `d_cup`: isolated left column, right cups `(1,2), (3,4), ..`.
pub fn cup_diagram(n: usize) -> Result<Diagram> {
    check_even(n)?;
    let edges: Vec<_> = (1..n).step_by(2).map(|i| (Slot::R(i), Slot::R(i + 1))).collect();
    Diagram::from_edges(n, &edges)
}

/// Keep only the left-column cups of `d`: same left link state, right column isolated.
pub fn left_part(d: &Diagram) -> Diagram {
    let edges: Vec<_> = d.edges().into_iter().filter(|(a, b)| a.is_left() && b.is_left()).collect();
    Diagram::from_edges(d.n(), &edges).expect("subset of a planar matching")
}

/// The isomorphism `K_full <-> Cup(n)` given by right multiplication by
/// `d_cup` and by `d -> d_l`.
#[derive(Clone, Debug)]
pub struct CupIso {
    pub n: usize,
    pub full: IdealBasis,
    pub cup: IdealBasis,
    pub forward: BTreeMap<Diagram, Diagram>,
    pub backward: BTreeMap<Diagram, Diagram>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CupIsoReport {
    pub n: usize,
    /// Every `d * d_cup` is a single diagram with no loop factor.
    pub forward_loop_free: bool,
    pub backward_after_forward_is_identity: bool,
    pub forward_after_backward_is_identity: bool,
    /// `backward(a d) = a backward(d)` for every basis diagram `a`.
    pub backward_left_linear: bool,
    pub members_unpropagating: bool,
}

impl CupIsoReport {
    pub fn passed(&self) -> bool {
        self.forward_loop_free
            && self.backward_after_forward_is_identity
            && self.forward_after_backward_is_identity
            && self.backward_left_linear
            && self.members_unpropagating
    }
}

pub fn cup_iso_maps(algebra_basis: &[Diagram], n: usize) -> Result<CupIso> {
    let d_cup = cup_diagram(n)?;
    let full_set: BTreeSet<usize> = (1..=n).collect();
    let full = ideal_k(algebra_basis, n, &full_set)?;
    let cup = cup_module(algebra_basis, n)?;
    let mut forward = BTreeMap::new();
    for d in full.diagrams() {
        if let MultiplicationOutcome::Product { loops: 0, diagram } = d.multiply(&d_cup)? {
            forward.insert(d.clone(), diagram);
        }
    }
    let backward = cup.diagrams().iter().map(|d| (d.clone(), left_part(d))).collect();
    Ok(CupIso { n, full, cup, forward, backward })
}

impl CupIso {
    pub fn verify(&self, algebra_basis: &[Diagram]) -> CupIsoReport {
        let forward_loop_free = self.forward.len() == self.full.len();
        let backward_after_forward_is_identity = self
            .full
            .diagrams()
            .iter()
            .all(|d| self.forward.get(d).and_then(|f| self.backward.get(f)) == Some(d));
        let forward_after_backward_is_identity = self
            .cup
            .diagrams()
            .iter()
            .all(|d| self.backward.get(d).and_then(|b| self.forward.get(b)) == Some(d));
        let backward_left_linear = algebra_basis.iter().all(|a| {
            self.cup.diagrams().iter().all(|d| {
                let lhs = a.multiply(d).expect("same n");
                let rhs = a.multiply(&self.backward[d]).expect("same n");
                match (lhs, rhs) {
                    (MultiplicationOutcome::Annihilated, MultiplicationOutcome::Annihilated) => true,
                    (
                        MultiplicationOutcome::Product { loops: l1, diagram: d1 },
                        MultiplicationOutcome::Product { loops: l2, diagram: d2 },
                    ) => l1 == l2 && self.backward.get(&d1) == Some(&d2),
                    _ => false,
                }
            })
        });
        let members_unpropagating = self
            .full
            .diagrams()
            .iter()
            .chain(self.cup.diagrams())
            .all(|d| d.propagating_count() == 0);
        CupIsoReport {
            n: self.n,
            forward_loop_free,
            backward_after_forward_is_identity,
            forward_after_backward_is_identity,
            backward_left_linear,
            members_unpropagating,
        }
    }
}

/// Splice-minimal right link state among the members, when the ideal is `J_p` for it.
pub fn generating_link_state(algebra_basis: &[Diagram], ideal: &IdealBasis) -> Option<LinkState> {
    let states: BTreeSet<LinkState> = ideal.diagrams().iter().map(right_link_state).collect();
    let top = states.iter().max_by_key(|p| (p.defects().len(), std::cmp::Reverse((*p).clone())))?.clone();
    ideal_j(algebra_basis, &top).same_members(ideal).then_some(top)
}

/// Left link states of a module's members (useful for reporting).
pub fn left_states(ideal: &IdealBasis) -> BTreeSet<LinkState> {
    ideal.diagrams().iter().map(left_link_state).collect()
}
