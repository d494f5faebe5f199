//! Idempotent generators `e_p` for the ideals `J_p`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::diagram::{Diagram, MultiplicationOutcome, Slot};
use crate::error::{Error, Result};
use crate::ideal::{ideal_j, IdealBasis};
use crate::link::{right_link_state, LinkState, Site};

/// Which half of the sesqui-diagram an edge in the glued column belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum EdgeSource {
    LinkState,
    Diagram,
}

/// A non-propagating edge in the glued column, 1-based with `i < k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ColumnEdge {
    pub source: EdgeSource,
    pub i: usize,
    pub k: usize,
}

impl ColumnEdge {
    fn new(source: EdgeSource, a: usize, b: usize) -> ColumnEdge {
        ColumnEdge { source, i: a.min(b), k: a.max(b) }
    }
}

/// Where a path starting at a defect `j'` of `p` stops.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PathEnd {
    /// At a vertex of the glued column with no further edge.
    Column(usize),
    /// At a right vertex of `e`.
    Right(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectPath {
    pub start: usize,
    pub end: PathEnd,
    pub column_edges: Vec<ColumnEdge>,
}

/// A link state `p` glued along the left column of a diagram `e`.
#[derive(Clone, Debug)]
pub struct SesquiDiagram<'a> {
    pub p: &'a LinkState,
    pub e: &'a Diagram,
}

impl<'a> SesquiDiagram<'a> {
    pub fn new(p: &'a LinkState, e: &'a Diagram) -> Result<Self> {
        if p.n() != e.n() {
            return Err(Error::SizeMismatch(p.n(), e.n()));
        }
        Ok(SesquiDiagram { p, e })
    }

    /// All non-propagating edges of the glued column.
    pub fn column_edges(&self) -> Vec<ColumnEdge> {
        let mut out: Vec<ColumnEdge> =
            self.p.cups().into_iter().map(|(i, k)| ColumnEdge::new(EdgeSource::LinkState, i, k)).collect();
        for (a, b) in self.e.edges() {
            if let (Slot::L(i), Slot::L(k)) = (a, b) {
                out.push(ColumnEdge::new(EdgeSource::Diagram, i, k));
            }
        }
        out.sort();
        out
    }

    /// Follow the unique path leaving the defect `j'` of `p`.
    pub fn defect_path(&self, j: usize) -> DefectPath {
        let mut column_edges = Vec::new();
        let mut cur = j;
        let mut next = EdgeSource::Diagram;
        let end = loop {
            match next {
                EdgeSource::Diagram => match self.e.partner(Slot::L(cur)) {
                    None => break PathEnd::Column(cur),
                    Some(Slot::R(k)) => break PathEnd::Right(k),
                    Some(Slot::L(k)) => {
                        column_edges.push(ColumnEdge::new(EdgeSource::Diagram, cur, k));
                        cur = k;
                        next = EdgeSource::LinkState;
                    }
                },
                EdgeSource::LinkState => match self.p.site(cur) {
                    Site::Cup(k0) => {
                        column_edges.push(ColumnEdge::new(EdgeSource::LinkState, cur, k0 + 1));
                        cur = k0 + 1;
                        next = EdgeSource::Diagram;
                    }
                    _ => break PathEnd::Column(cur),
                },
            }
        };
        DefectPath { start: j, end, column_edges }
    }
}

/// The four idempotent conditions for `(p, e)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Conditions {
    /// `e` has right link state `p`.
    pub c1: bool,
    /// Isolated vertices of `p` are isolated on both sides of `e`.
    pub c2: bool,
    /// Each defect `j'` is joined to the right vertex `j`.
    pub c3: bool,
    /// Each column edge lies on exactly one defect path.
    pub c4: bool,
}

impl Conditions {
    pub fn all(&self) -> bool {
        self.c1 && self.c2 && self.c3 && self.c4
    }

    pub fn as_array(&self) -> [bool; 4] {
        [self.c1, self.c2, self.c3, self.c4]
    }
}

pub fn check_conditions(p: &LinkState, e: &Diagram) -> Result<Conditions> {
    let s = SesquiDiagram::new(p, e)?;
    let c1 = right_link_state(e) == *p;
    let c2 = p.isolated().into_iter().all(|j| e.is_isolated(Slot::L(j)) && e.is_isolated(Slot::R(j)));
    let paths: Vec<DefectPath> = p.defects().into_iter().map(|j| s.defect_path(j)).collect();
    let c3 = paths.iter().all(|path| path.end == PathEnd::Right(path.start));
    let mut hits: BTreeMap<ColumnEdge, usize> = s.column_edges().into_iter().map(|c| (c, 0)).collect();
    for c in paths.iter().flat_map(|path| &path.column_edges) {
        *hits.entry(*c).or_default() += 1;
    }
    let c4 = hits.values().all(|&h| h == 1);
    Ok(Conditions { c1, c2, c3, c4 })
}

/// First diagram in canonical order satisfying all four conditions for `p`.
pub fn find_idempotent(algebra_basis: &[Diagram], p: &LinkState) -> Result<Diagram> {
    if !p.has_defect() {
        return Err(Error::NoDefect(p.to_string()));
    }
    algebra_basis
        .iter()
        .filter(|e| e.n() == p.n() && right_link_state(e) == *p)
        .find(|e| check_conditions(p, e).map(|c| c.all()).unwrap_or(false))
        .cloned()
        .ok_or_else(|| Error::NoIdempotentFound(p.to_string()))
}

/// `y * e = y` with no loop factor for every member `y`.
pub fn verify_unit(ideal: &IdealBasis, e: &Diagram) -> bool {
    ideal.diagrams().iter().all(|y| unit_failure(y, e).is_none())
}

fn unit_failure(y: &Diagram, e: &Diagram) -> Option<MultiplicationOutcome> {
    match y.multiply(e) {
        Ok(MultiplicationOutcome::Product { loops: 0, diagram }) if diagram == *y => None,
        Ok(other) => Some(other),
        Err(_) => Some(MultiplicationOutcome::Annihilated),
    }
}

/// First member `y` with `y * e != y`, with the offending product.
pub fn unit_witness(ideal: &IdealBasis, e: &Diagram) -> Option<(Diagram, MultiplicationOutcome)> {
    ideal.diagrams().iter().find_map(|y| unit_failure(y, e).map(|o| (y.clone(), o)))
}

pub fn is_idempotent(e: &Diagram) -> bool {
    matches!(e.multiply(e), Ok(MultiplicationOutcome::Product { loops: 0, ref diagram }) if diagram == e)
}

/// Evidence that an ideal is `A e` with `e` idempotent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorCertificate {
    pub label: String,
    pub generator: Diagram,
    pub ideal_size: usize,
    pub in_ideal: bool,
    pub idempotent: bool,
    pub unit: bool,
}

impl GeneratorCertificate {
    pub fn passed(&self) -> bool {
        self.in_ideal && self.idempotent && self.unit
    }
}

pub fn assert_idempotent_generator(ideal: &IdealBasis, e: &Diagram) -> Result<GeneratorCertificate> {
    let cert = GeneratorCertificate {
        label: ideal.label().to_string(),
        generator: e.clone(),
        ideal_size: ideal.len(),
        in_ideal: ideal.contains(e),
        idempotent: is_idempotent(e),
        unit: verify_unit(ideal, e),
    };
    if cert.passed() {
        Ok(cert)
    } else {
        Err(Error::GeneratorFailed {
            label: cert.label,
            in_ideal: cert.in_ideal,
            idempotent: cert.idempotent,
            unit: cert.unit,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotentCertificate {
    pub p: LinkState,
    pub e: Diagram,
    pub conditions: [bool; 4],
    pub unit_verified: bool,
}

impl IdempotentCertificate {
    /// All conditions imply the unit property.
    pub fn consistent(&self) -> bool {
        !self.conditions.iter().all(|&c| c) || self.unit_verified
    }
}

/// Search for `e_p` and check it against `J_p`.
pub fn certify(algebra_basis: &[Diagram], p: &LinkState) -> Result<IdempotentCertificate> {
    let e = find_idempotent(algebra_basis, p)?;
    let conditions = check_conditions(p, &e)?.as_array();
    let unit_verified = verify_unit(&ideal_j(algebra_basis, p), &e);
    let cert = IdempotentCertificate { p: p.clone(), e, conditions, unit_verified };
    if !cert.consistent() {
        return Err(Error::CertificateFailed(format!("e_{p} fails the unit check")));
    }
    Ok(cert)
}

/// Mirror `p` on the right, with propagating edges at defects and an isolated
/// left column elsewhere. Satisfies every condition except, when `p` has a
/// cup, the last one.
pub fn naive_candidate(p: &LinkState) -> Diagram {
    let mut edges: Vec<(Slot, Slot)> = p.defects().into_iter().map(|j| (Slot::L(j), Slot::R(j))).collect();
    edges.extend(p.cups().into_iter().map(|(i, k)| (Slot::R(i), Slot::R(k))));
    Diagram::from_edges(p.n(), &edges).expect("mirror of a link state is planar")
}
