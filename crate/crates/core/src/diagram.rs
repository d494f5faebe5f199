//! Dilute Temperley-Lieb diagrams and their product.
//!
//! A diagram on `n` rows is a planar partial matching of the `2n` slots
//! `L1..Ln` (left column) and `R1..Rn` (right column). Internally the slots
//! are numbered around the boundary of the rectangle, `L1..Ln` then `Rn..R1`,
//! which turns planarity into a nesting check on a line.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const NONE: u8 = u8::MAX;

/// Largest supported column height.
pub const MAX_N: usize = 100;

/// A vertex slot, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    L(usize),
    R(usize),
}

impl Slot {
    /// Position in the boundary order `L1..Ln, Rn..R1`, 0-based.
    pub fn position(self, n: usize) -> Result<usize> {
        match self {
            Slot::L(i) if (1..=n).contains(&i) => Ok(i - 1),
            Slot::R(j) if (1..=n).contains(&j) => Ok(2 * n - j),
            _ => Err(Error::SlotOutOfRange { slot: self.to_string(), n }),
        }
    }

    pub fn from_position(pos: usize, n: usize) -> Slot {
        if pos < n {
            Slot::L(pos + 1)
        } else {
            Slot::R(2 * n - pos)
        }
    }

    pub fn is_left(self) -> bool {
        matches!(self, Slot::L(_))
    }

    pub fn index(self) -> usize {
        match self {
            Slot::L(i) | Slot::R(i) => i,
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::L(i) => write!(f, "L{i}"),
            Slot::R(j) => write!(f, "R{j}"),
        }
    }
}

impl FromStr for Slot {
    type Err = Error;

    fn from_str(s: &str) -> Result<Slot> {
        let s = s.trim();
        let (side, idx) = s.split_at(s.len().min(1));
        let idx: usize = idx.parse().map_err(|_| Error::Parse(format!("bad slot {s:?}")))?;
        match side {
            "L" => Ok(Slot::L(idx)),
            "R" => Ok(Slot::R(idx)),
            _ => Err(Error::Parse(format!("bad slot {s:?}"))),
        }
    }
}

/// A dilute Temperley-Lieb `n`-diagram.
///
/// Equality is equality of matchings. The total order compares `n`, then the
/// sorted list of edges in boundary positions lexicographically; it is the
/// canonical basis order used for every matrix in the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    n: u8,
    partner: Box<[u8]>,
}

impl Diagram {
    /// Build a diagram from an edge list and an isolated list that together
    /// partition the `2n` slots.
    pub fn new(n: usize, edges: &[(Slot, Slot)], isolated: &[Slot]) -> Result<Diagram> {
        let d = Self::build(n, edges, isolated)?;
        for pos in 0..2 * n {
            let slot = Slot::from_position(pos, n);
            if d.partner[pos] == NONE && !isolated.contains(&slot) {
                return Err(Error::UncoveredVertex(slot.to_string()));
            }
        }
        Ok(d)
    }

    /// Build a diagram from its edges; unlisted slots are isolated.
    pub fn from_edges(n: usize, edges: &[(Slot, Slot)]) -> Result<Diagram> {
        Self::build(n, edges, &[])
    }

    fn build(n: usize, edges: &[(Slot, Slot)], isolated: &[Slot]) -> Result<Diagram> {
        if n == 0 || n > MAX_N {
            return Err(Error::Parse(format!("column height {n} out of range 1..={MAX_N}")));
        }
        let mut partner = vec![NONE; 2 * n];
        let mut seen = vec![false; 2 * n];
        let mut claim = |slot: Slot| -> Result<usize> {
            let pos = slot.position(n)?;
            if std::mem::replace(&mut seen[pos], true) {
                return Err(Error::DuplicateVertex(slot.to_string()));
            }
            Ok(pos)
        };
        for &(a, b) in edges {
            if a == b {
                return Err(Error::SelfEdge(a.to_string()));
            }
            let (pa, pb) = (claim(a)?, claim(b)?);
            partner[pa] = pb as u8;
            partner[pb] = pa as u8;
        }
        for &s in isolated {
            claim(s)?;
        }
        check_planar(n, &partner)?;
        Ok(Diagram { n: n as u8, partner: partner.into_boxed_slice() })
    }

    pub(crate) fn from_partner_unchecked(n: usize, partner: Vec<u8>) -> Diagram {
        debug_assert_eq!(partner.len(), 2 * n);
        debug_assert!(check_planar(n, &partner).is_ok());
        Diagram { n: n as u8, partner: partner.into_boxed_slice() }
    }

    /// The diagram with no edges at all.
    pub fn empty(n: usize) -> Diagram {
        Diagram { n: n as u8, partner: vec![NONE; 2 * n].into_boxed_slice() }
    }

    /// The diagram with the `n` horizontal propagating edges `Lj - Rj`.
    pub fn all_propagating(n: usize) -> Diagram {
        let partner: Vec<u8> = (0..2 * n).map(|p| (2 * n - 1 - p) as u8).collect();
        Diagram { n: n as u8, partner: partner.into_boxed_slice() }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub(crate) fn partner_at(&self, pos: usize) -> Option<usize> {
        let q = self.partner[pos];
        (q != NONE).then_some(q as usize)
    }

    pub fn partner(&self, slot: Slot) -> Option<Slot> {
        let pos = slot.position(self.n()).ok()?;
        self.partner_at(pos).map(|q| Slot::from_position(q, self.n()))
    }

    pub fn is_isolated(&self, slot: Slot) -> bool {
        self.partner(slot).is_none()
    }

    /// Edges as pairs of boundary positions `(a, b)`, `a < b`, sorted.
    pub fn position_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(a, &b)| b != NONE && (b as usize) > a)
            .map(|(a, &b)| (a, b as usize))
    }

    /// Edges in text order: each pair ordered `L1 < .. < Ln < R1 < .. < Rn`,
    /// pairs sorted by the same order.
    pub fn edges(&self) -> Vec<(Slot, Slot)> {
        let n = self.n();
        let mut out: Vec<(Slot, Slot)> = self
            .position_edges()
            .map(|(a, b)| {
                let (x, y) = (Slot::from_position(a, n), Slot::from_position(b, n));
                if x <= y { (x, y) } else { (y, x) }
            })
            .collect();
        out.sort();
        out
    }

    pub fn isolated(&self) -> Vec<Slot> {
        let n = self.n();
        let mut out: Vec<Slot> = (0..2 * n)
            .filter(|&p| self.partner[p] == NONE)
            .map(|p| Slot::from_position(p, n))
            .collect();
        out.sort();
        out
    }

    /// Number of edges with one endpoint in each column.
    pub fn propagating_count(&self) -> usize {
        let n = self.n();
        (0..n).filter(|&p| self.partner_at(p).is_some_and(|q| q >= n)).count()
    }

    /// Whether this diagram has an edge at every slot.
    pub fn is_perfect(&self) -> bool {
        self.partner.iter().all(|&q| q != NONE)
    }

    /// Mirror image: swaps the two columns.
    pub fn reflect(&self) -> Diagram {
        let m = 2 * self.n();
        let mut partner = vec![NONE; m];
        for (p, &q) in self.partner.iter().enumerate() {
            if q != NONE {
                partner[m - 1 - p] = (m - 1 - q as usize) as u8;
            }
        }
        Diagram { n: self.n, partner: partner.into_boxed_slice() }
    }

    /// Canonical encoding: `n` plus the sorted 1-based boundary-position pairs.
    pub fn encoding(&self) -> (usize, Vec<(usize, usize)>) {
        (self.n(), self.position_edges().map(|(a, b)| (a + 1, b + 1)).collect())
    }

    /// Product `self * other`: `other` is glued to the right of `self`.
    pub fn multiply(&self, other: &Diagram) -> Result<MultiplicationOutcome> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        Ok(DoubleDiagram::new(self, other)?.outcome())
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            n: self.n(),
            edges: self.edges().into_iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
            isolated: self.isolated().into_iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn from_json(json: &DiagramJson) -> Result<Diagram> {
        let edges = json
            .edges
            .iter()
            .map(|[a, b]| Ok((a.parse()?, b.parse()?)))
            .collect::<Result<Vec<_>>>()?;
        let isolated = json.isolated.iter().map(|s| s.parse()).collect::<Result<Vec<Slot>>>()?;
        Diagram::new(json.n, &edges, &isolated)
    }
}

impl Ord for Diagram {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.position_edges().cmp(other.position_edges()))
    }
}

impl PartialOrd for Diagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{}:", self.n)?;
        for (a, b) in self.edges() {
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Diagram {
    type Err = Error;

    /// Parses `D<n>:(A,B)(C,D)...`; unlisted slots are isolated.
    fn from_str(s: &str) -> Result<Diagram> {
        let bad = || Error::Parse(format!("bad diagram {s:?}"));
        let body = s.trim().strip_prefix('D').ok_or_else(bad)?;
        let (n, mut rest) = body.split_once(':').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        let mut edges = Vec::new();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(bad)?;
            let (pair, tail) = inner.split_once(')').ok_or_else(bad)?;
            let (a, b) = pair.split_once(',').ok_or_else(bad)?;
            edges.push((a.parse()?, b.parse()?));
            rest = tail;
        }
        Diagram::from_edges(n, &edges)
    }
}

/// JSON mirror of a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub n: usize,
    pub edges: Vec<[String; 2]>,
    pub isolated: Vec<String>,
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = DiagramJson::deserialize(d)?;
        Diagram::from_json(&json).map_err(serde::de::Error::custom)
    }
}

/// Nesting check on boundary positions; reports a crossing pair.
fn check_planar(n: usize, partner: &[u8]) -> Result<()> {
    let mut open: Vec<usize> = Vec::new();
    for (pos, &q) in partner.iter().enumerate() {
        if q == NONE {
            continue;
        }
        let q = q as usize;
        if q > pos {
            open.push(pos);
        } else {
            let top = open.pop().expect("closing position has an opener");
            if top != q {
                let name = |p: usize| Slot::from_position(p, n).to_string();
                return Err(Error::NonPlanar {
                    first: (name(q), name(pos)),
                    second: (name(top), name(partner[top] as usize)),
                });
            }
        }
    }
    Ok(())
}

/// All planar partial matchings on `2n` slots, in canonical order.
pub fn enumerate_basis(n: usize) -> Vec<Diagram> {
    assert!((1..=MAX_N).contains(&n), "column height {n} out of range");
    let m = 2 * n;
    let mut out = Vec::new();
    let mut partner = vec![NONE; m];
    let mut open = Vec::new();
    fn go(pos: usize, m: usize, n: usize, partner: &mut Vec<u8>, open: &mut Vec<usize>, out: &mut Vec<Diagram>) {
        if pos == m {
            if open.is_empty() {
                out.push(Diagram::from_partner_unchecked(n, partner.clone()));
            }
            return;
        }
        // Not enough positions left to close every open chord.
        if open.len() > m - pos {
            return;
        }
        go(pos + 1, m, n, partner, open, out);
        open.push(pos);
        go(pos + 1, m, n, partner, open, out);
        open.pop();
        if let Some(top) = open.pop() {
            partner[top] = pos as u8;
            partner[pos] = top as u8;
            go(pos + 1, m, n, partner, open, out);
            partner[top] = NONE;
            partner[pos] = NONE;
            open.push(top);
        }
    }
    go(0, m, n, &mut partner, &mut open, &mut out);
    out.sort();
    out
}

/// Result of multiplying two diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiplicationOutcome {
    Annihilated,
    /// `delta^loops * diagram`.
    Product { loops: u32, diagram: Diagram },
}

impl MultiplicationOutcome {
    pub fn diagram(&self) -> Option<&Diagram> {
        match self {
            MultiplicationOutcome::Annihilated => None,
            MultiplicationOutcome::Product { diagram, .. } => Some(diagram),
        }
    }

    pub fn loops(&self) -> Option<u32> {
        match self {
            MultiplicationOutcome::Annihilated => None,
            MultiplicationOutcome::Product { loops, .. } => Some(*loops),
        }
    }
}

impl fmt::Display for MultiplicationOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultiplicationOutcome::Annihilated => write!(f, "0"),
            MultiplicationOutcome::Product { loops, diagram } => write!(f, "delta^{loops} * {diagram}"),
        }
    }
}

/// Vertex of a double diagram, 0-based row index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DVertex {
    Left(usize),
    Middle(usize),
    Right(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    /// A path joining two outer vertices: becomes an edge of the product.
    Through,
    /// A closed loop in the middle column.
    Cycle,
    /// A path with at least one edge and an end in the middle column.
    Floating,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub kind: ComponentKind,
    /// Vertices in traversal order.
    pub vertices: Vec<DVertex>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Factor {
    First,
    Second,
}

impl Factor {
    fn other(self) -> Factor {
        match self {
            Factor::First => Factor::Second,
            Factor::Second => Factor::First,
        }
    }
}

/// Two diagrams glued along the right column of the first factor.
///
/// Every middle vertex carries at most one edge from each factor and outer
/// vertices at most one edge, so components are simple paths or cycles and
/// are traced explicitly.
pub struct DoubleDiagram<'a> {
    first: &'a Diagram,
    second: &'a Diagram,
    n: usize,
}

struct Trace {
    partner: Vec<u8>,
    loops: u32,
    floating: bool,
    components: Vec<Component>,
}

impl<'a> DoubleDiagram<'a> {
    pub fn new(first: &'a Diagram, second: &'a Diagram) -> Result<Self> {
        if first.n != second.n {
            return Err(Error::SizeMismatch(first.n(), second.n()));
        }
        Ok(DoubleDiagram { first, second, n: first.n() })
    }

    fn step(&self, v: DVertex, factor: Factor) -> Option<DVertex> {
        let n = self.n;
        match factor {
            Factor::First => {
                let pos = match v {
                    DVertex::Left(i) => i,
                    DVertex::Middle(j) => 2 * n - 1 - j,
                    DVertex::Right(_) => return None,
                };
                let q = self.first.partner_at(pos)?;
                Some(if q < n { DVertex::Left(q) } else { DVertex::Middle(2 * n - 1 - q) })
            }
            Factor::Second => {
                let pos = match v {
                    DVertex::Middle(j) => j,
                    DVertex::Right(j) => 2 * n - 1 - j,
                    DVertex::Left(_) => return None,
                };
                let q = self.second.partner_at(pos)?;
                Some(if q < n { DVertex::Middle(q) } else { DVertex::Right(2 * n - 1 - q) })
            }
        }
    }

    fn slot(&self, v: DVertex) -> usize {
        match v {
            DVertex::Left(i) => i,
            DVertex::Middle(j) => self.n + j,
            DVertex::Right(j) => 2 * self.n + j,
        }
    }

    /// Walk from `start` leaving through `factor`, alternating factors.
    /// Returns the end vertex, whether the walk closed up, and the path.
    fn walk(&self, start: DVertex, factor: Factor, seen: &mut [bool], path: Option<&mut Vec<DVertex>>) -> (DVertex, bool) {
        let mut cur = start;
        let mut fac = factor;
        seen[self.slot(start)] = true;
        let mut path = path;
        if let Some(p) = path.as_deref_mut() {
            p.push(start);
        }
        while let Some(next) = self.step(cur, fac) {
            if next == start {
                return (start, true);
            }
            seen[self.slot(next)] = true;
            if let Some(p) = path.as_deref_mut() {
                p.push(next);
            }
            cur = next;
            fac = fac.other();
        }
        (cur, false)
    }

    fn trace(&self, record: bool) -> Trace {
        let n = self.n;
        let mut seen = vec![false; 3 * n];
        let mut out = Trace { partner: vec![NONE; 2 * n], loops: 0, floating: false, components: Vec::new() };
        let result_pos = |v: DVertex| match v {
            DVertex::Left(i) => i,
            DVertex::Right(j) => 2 * n - 1 - j,
            DVertex::Middle(_) => unreachable!(),
        };
        let starts = (0..n)
            .map(|i| (DVertex::Left(i), Factor::First))
            .chain((0..n).map(|j| (DVertex::Right(j), Factor::Second)));
        for (start, factor) in starts {
            if seen[self.slot(start)] || self.step(start, factor).is_none() {
                continue;
            }
            let mut path = Vec::new();
            let (end, _) = self.walk(start, factor, &mut seen, record.then_some(&mut path));
            let kind = if matches!(end, DVertex::Middle(_)) {
                out.floating = true;
                ComponentKind::Floating
            } else {
                let (a, b) = (result_pos(start), result_pos(end));
                out.partner[a] = b as u8;
                out.partner[b] = a as u8;
                ComponentKind::Through
            };
            if record {
                out.components.push(Component { kind, vertices: path });
            }
        }
        for j in 0..n {
            let v = DVertex::Middle(j);
            if seen[self.slot(v)] {
                continue;
            }
            let has_first = self.step(v, Factor::First).is_some();
            let has_second = self.step(v, Factor::Second).is_some();
            if !has_first && !has_second {
                continue;
            }
            let mut path = Vec::new();
            let first_dir = if has_first { Factor::First } else { Factor::Second };
            let (_, closed) = self.walk(v, first_dir, &mut seen, record.then_some(&mut path));
            let kind = if closed {
                out.loops += 1;
                ComponentKind::Cycle
            } else {
                out.floating = true;
                if has_first && has_second {
                    // The walk stopped in one direction; finish the other side.
                    let mut back = Vec::new();
                    self.walk(v, Factor::Second, &mut seen, record.then_some(&mut back));
                    if record {
                        back.reverse();
                        back.pop();
                        back.extend(path);
                        path = back;
                    }
                }
                ComponentKind::Floating
            };
            if record {
                out.components.push(Component { kind, vertices: path });
            }
        }
        out
    }

    /// Connected components with at least one edge.
    pub fn components(&self) -> Vec<Component> {
        self.trace(true).components
    }

    pub fn outcome(&self) -> MultiplicationOutcome {
        let t = self.trace(false);
        if t.floating {
            MultiplicationOutcome::Annihilated
        } else {
            MultiplicationOutcome::Product {
                loops: t.loops,
                diagram: Diagram::from_partner_unchecked(self.n, t.partner),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn d(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    #[test]
    fn make_diagram_examples() {
        let u = Diagram::new(2, &[(Slot::L(1), Slot::L(2)), (Slot::R(1), Slot::R(2))], &[]).unwrap();
        assert_eq!(u.to_string(), "D2:(L1,L2)(R1,R2)");
        let crossing = Diagram::new(2, &[(Slot::L(1), Slot::R(2)), (Slot::L(2), Slot::R(1))], &[]);
        assert!(matches!(crossing, Err(Error::NonPlanar { .. })));
        let six = Diagram::new(
            6,
            &[(Slot::L(1), Slot::L(3)), (Slot::L(4), Slot::R(1)), (Slot::L(5), Slot::R(5)), (Slot::R(3), Slot::R(4))],
            &[Slot::L(2), Slot::L(6), Slot::R(2), Slot::R(6)],
        )
        .unwrap();
        assert_eq!(six.propagating_count(), 2);
        assert_eq!(six.to_string(), "D6:(L1,L3)(L4,R1)(L5,R5)(R3,R4)");
    }

    #[test]
    fn make_diagram_errors() {
        assert!(matches!(
            Diagram::new(2, &[(Slot::L(1), Slot::L(2))], &[Slot::L(1), Slot::R(1), Slot::R(2)]),
            Err(Error::DuplicateVertex(_))
        ));
        assert!(matches!(Diagram::from_edges(2, &[(Slot::L(1), Slot::L(1))]), Err(Error::SelfEdge(_))));
        assert!(matches!(Diagram::new(1, &[], &[Slot::L(1)]), Err(Error::UncoveredVertex(_))));
        assert!(matches!(Diagram::from_edges(2, &[(Slot::L(3), Slot::R(1))]), Err(Error::SlotOutOfRange { .. })));
        match Diagram::from_edges(3, &[(Slot::L(1), Slot::R(2)), (Slot::L(2), Slot::R(1))]) {
            Err(Error::NonPlanar { first, second }) => {
                let mut pair = [first, second];
                pair.sort();
                assert_eq!(pair[0], ("L1".to_string(), "R2".to_string()));
                assert_eq!(pair[1], ("L2".to_string(), "R1".to_string()));
            }
            other => panic!("expected NonPlanar, got {other:?}"),
        }
    }

    #[test]
    fn small_bases() {
        assert_eq!(enumerate_basis(1).len(), 2);
        assert_eq!(enumerate_basis(2).len(), 9);
        assert_eq!(enumerate_basis(3).len(), 51);
        let b = enumerate_basis(3);
        assert!(b.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn example_products() {
        let u = d("D2:(L1,L2)(R1,R2)");
        assert_eq!(u.multiply(&u).unwrap(), MultiplicationOutcome::Product { loops: 1, diagram: u.clone() });
        assert_eq!(
            d("D2:(L2,R1)").multiply(&d("D2:(L1,R2)")).unwrap(),
            MultiplicationOutcome::Product { loops: 0, diagram: d("D2:(L2,R2)") }
        );
        assert_eq!(d("D2:(L1,R1)(L2,R2)").multiply(&d("D2:(L1,R1)")).unwrap(), MultiplicationOutcome::Annihilated);
        assert_eq!(u.multiply(&d("D2:(R1,R2)")).unwrap(), MultiplicationOutcome::Annihilated);
        assert!(matches!(u.multiply(&Diagram::empty(3)), Err(Error::SizeMismatch(2, 3))));
    }

    #[test]
    fn component_listing() {
        let u = d("D2:(L1,L2)(R1,R2)");
        let comps = DoubleDiagram::new(&u, &u).unwrap().components();
        let kinds: Vec<_> = comps.iter().map(|c| c.kind).collect();
        assert_eq!(kinds, vec![ComponentKind::Through, ComponentKind::Through, ComponentKind::Cycle]);
        let float = d("D2:(L1,L2)(R1,R2)");
        let comps = DoubleDiagram::new(&float, &d("D2:(R1,R2)")).unwrap().components();
        let floating: Vec<_> = comps.iter().filter(|c| c.kind == ComponentKind::Floating).collect();
        assert_eq!(floating.len(), 1);
        assert_eq!(floating[0].vertices.len(), 2);
    }

    #[test]
    fn text_and_json_round_trip() {
        for dia in enumerate_basis(3) {
            let text = dia.to_string();
            assert_eq!(text.parse::<Diagram>().unwrap(), dia);
            let json = serde_json::to_string(&dia).unwrap();
            let back: Diagram = serde_json::from_str(&json).unwrap();
            assert_eq!(back, dia);
            assert_eq!(serde_json::to_string(&back).unwrap(), json);
        }
        assert_eq!(
            serde_json::to_string(&d("D2:(L1,R1)")).unwrap(),
            r#"{"n":2,"edges":[["L1","R1"]],"isolated":["L2","R2"]}"#
        );
        assert!("D2:(L1,R1".parse::<Diagram>().is_err());
        assert!("X2:".parse::<Diagram>().is_err());
    }

    #[test]
    fn reflection_swaps_columns() {
        let six = d("D6:(L1,L3)(L4,R1)(L5,R5)(R3,R4)");
        assert_eq!(six.reflect().to_string(), "D6:(L1,R4)(L3,L4)(L5,R5)(R1,R3)");
        assert_eq!(six.reflect().reflect(), six);
    }
}
