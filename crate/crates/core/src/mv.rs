//! The idempotent left cover of the augmentation ideal, its Mayer-Vietoris
//! complex, and the functors `1 (x)_A -` and `Hom_A(-, 1)` applied to it.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{augmentation_ideal_basis, diagram_augmentation, Basis, MultTable, MAX_TABLE_N};
use crate::coeff::{Integers, Ring};
use crate::diagram::{Diagram, MultiplicationOutcome};
use crate::error::{Error, Result};
use crate::homology::{complex_homology, ChainComplex, DegreeHomology, HomologyResult};
use crate::ideal::{
    cup_iso_maps, cup_module, generating_link_state, ideal_k, ideal_l, intersect, CupIsoReport, IdealBasis,
};
use crate::idempotent::{assert_idempotent_generator, find_idempotent, GeneratorCertificate};
use crate::linalg::{kernel_basis, solve_in_span, LinAlg, SparseMatrix, SparseVec};
use crate::link::LinkState;

/// Why an intersection of cover ideals is `A e` for an idempotent `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GeneratorWitness {
    Idempotent { link_state: LinkState, certificate: GeneratorCertificate },
    /// `Cup(n)`, isomorphic to `K_{R1..Rn}` through the cup maps.
    CupTransport { link_state: LinkState, full: GeneratorCertificate, iso: CupIsoReport },
}

impl GeneratorWitness {
    pub fn generator(&self) -> &Diagram {
        match self {
            GeneratorWitness::Idempotent { certificate, .. } => &certificate.generator,
            GeneratorWitness::CupTransport { full, .. } => &full.generator,
        }
    }

    pub fn augmentation_vanishes(&self) -> bool {
        !diagram_augmentation(self.generator())
    }
}

/// A nonempty intersection `J_S` of cover ideals, indexed by `S`.
#[derive(Clone, Debug, Serialize)]
pub struct CoverSummand {
    pub subset: Vec<usize>,
    pub ideal: IdealBasis,
    pub witness: GeneratorWitness,
}

#[derive(Clone, Debug, Serialize)]
pub struct Cover {
    pub n: usize,
    pub ideals: Vec<IdealBasis>,
    /// Ordered by subset size, then lexicographically.
    pub summands: Vec<CoverSummand>,
}

impl Cover {
    pub fn width(&self) -> usize {
        self.ideals.len()
    }

    pub fn summands_of_size(&self, p: usize) -> impl Iterator<Item = &CoverSummand> {
        self.summands.iter().filter(move |s| s.subset.len() == p)
    }

    pub fn union(&self) -> BTreeSet<Diagram> {
        self.ideals.iter().flat_map(|j| j.diagrams().iter().cloned()).collect()
    }
}

/// `K_S` for every nonempty `S`, by size then lexicographically, then `L_1 .. L_{n-1}`.
pub fn cover_ideals(algebra_basis: &[Diagram], n: usize) -> Vec<IdealBasis> {
    let mut subsets: Vec<BTreeSet<usize>> =
        (1u64..1 << n).map(|mask| (1..=n).filter(|j| mask & (1 << (j - 1)) != 0).collect()).collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
    let mut out: Vec<IdealBasis> =
        subsets.iter().map(|s| ideal_k(algebra_basis, n, s).expect("nonempty subset in range")).collect();
    out.extend((1..n).map(|i| ideal_l(algebra_basis, n, i).expect("index in range")));
    out
}

/// Certify `ideal` as principal on an idempotent.
pub fn witness_for(algebra_basis: &[Diagram], n: usize, ideal: &IdealBasis) -> Result<GeneratorWitness> {
    let p = generating_link_state(algebra_basis, ideal).ok_or_else(|| Error::CertificateFailed(ideal.label().into()))?;
    if p.has_defect() || p.cups().is_empty() {
        let e = if p.has_defect() { find_idempotent(algebra_basis, &p)? } else { Diagram::empty(n) };
        let certificate = assert_idempotent_generator(ideal, &e)?;
        return Ok(GeneratorWitness::Idempotent { link_state: p, certificate });
    }
    let cup = cup_module(algebra_basis, n)?;
    if !cup.same_members(ideal) {
        return Err(Error::CertificateFailed(ideal.label().into()));
    }
    let iso = cup_iso_maps(algebra_basis, n)?;
    let report = iso.verify(algebra_basis);
    if !report.passed() {
        return Err(Error::CertificateFailed(format!("{} (cup maps)", ideal.label())));
    }
    let full = assert_idempotent_generator(&iso.full, &Diagram::empty(n))?;
    Ok(GeneratorWitness::CupTransport { link_state: p, full, iso: report })
}

/// Build the cover of `I` and certify every nonempty intersection.
pub fn build_cover(basis: &Basis) -> Result<Cover> {
    let n = basis.n();
    if n == 0 {
        return Err(Error::IndexOutOfRange { index: 0, max: 0 });
    }
    let b = basis.diagrams();
    let ideals = cover_ideals(b, n);
    let union: BTreeSet<Diagram> = ideals.iter().flat_map(|j| j.diagrams().iter().cloned()).collect();
    let target = augmentation_ideal_basis(n);
    if union.len() != target.len() || !target.diagrams().iter().all(|d| union.contains(d)) {
        return Err(Error::CertificateFailed("union of the cover".into()));
    }
    // Extend only nonempty intersections.
    let mut found: Vec<(Vec<usize>, IdealBasis)> = Vec::new();
    let mut stack: Vec<(Vec<usize>, IdealBasis)> =
        ideals.iter().enumerate().rev().map(|(i, j)| (vec![i], j.clone())).collect();
    while let Some((subset, inter)) = stack.pop() {
        let last = *subset.last().unwrap();
        for j in (last + 1..ideals.len()).rev() {
            let next = intersect(&[inter.clone(), ideals[j].clone()])?;
            if !next.is_empty() {
                let mut s = subset.clone();
                s.push(j);
                stack.push((s, next));
            }
        }
        found.push((subset, inter));
    }
    found.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    let summands = found
        .into_par_iter()
        .map(|(subset, ideal)| {
            let witness = witness_for(b, n, &ideal)?;
            Ok(CoverSummand { subset, ideal, witness })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Cover { n, ideals, summands })
}

/// Basis label of a cell in the complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CellLabel {
    /// The generator of `A/I` in degree -1.
    Unit,
    /// `diagram` in the summand indexed by `subset`; degree 0 uses the empty subset.
    Cell { subset: Vec<usize>, diagram: Diagram },
}

/// One summand of `C_p` for `p >= 0`.
#[derive(Clone, Debug)]
pub struct Block {
    pub subset: Vec<usize>,
    pub offset: usize,
    /// Global basis indices of the members, increasing.
    pub members: Vec<usize>,
}

impl Block {
    fn local(&self, global: usize) -> Option<usize> {
        self.members.binary_search(&global).ok()
    }
}

/// The Mayer-Vietoris complex `0 <- A/I <- A <- C_1 <- C_2 <- ..` with
/// `C_p` the sum of the nonzero `p`-fold intersections.
#[derive(Clone, Debug)]
pub struct MvComplex {
    pub n: usize,
    blocks: BTreeMap<i64, Vec<Block>>,
    /// Coefficients are 0, 1 or -1.
    integral: ChainComplex<Integers>,
}

impl MvComplex {
    pub fn build(cover: &Cover, basis: &Basis) -> Result<MvComplex> {
        let n = cover.n;
        let mut blocks: BTreeMap<i64, Vec<Block>> = BTreeMap::new();
        blocks.insert(0, vec![Block { subset: Vec::new(), offset: 0, members: (0..basis.len()).collect() }]);
        for s in &cover.summands {
            let p = s.subset.len() as i64;
            let list = blocks.entry(p).or_default();
            let offset = list.last().map_or(0, |b: &Block| b.offset + b.members.len());
            let mut members: Vec<usize> =
                s.ideal.diagrams().iter().map(|d| basis.index_of(d).expect("basis diagram")).collect();
            members.sort_unstable();
            list.push(Block { subset: s.subset.clone(), offset, members });
        }
        let mut ranks: BTreeMap<i64, usize> =
            blocks.iter().map(|(&p, bs)| (p, bs.iter().map(|b| b.members.len()).sum())).collect();
        ranks.insert(-1, 1);
        let z = Integers::new(0);
        let mut boundaries = BTreeMap::new();
        let full = basis.full_index();
        boundaries.insert(0, SparseMatrix::from_triplets(&z, 1, basis.len(), [(0, full, BigInt::from(1))])?);
        for (&p, list) in blocks.iter().filter(|(&p, _)| p >= 1) {
            let below = &blocks[&(p - 1)];
            let lookup: HashMap<&[usize], &Block> = below.iter().map(|b| (b.subset.as_slice(), b)).collect();
            let mut triplets = Vec::new();
            for b in list {
                for (t, _) in b.subset.iter().enumerate() {
                    let mut face = b.subset.clone();
                    face.remove(t);
                    let target = lookup.get(face.as_slice()).expect("faces of nonzero intersections are nonzero");
                    let sign = if t % 2 == 0 { 1 } else { -1 };
                    for (k, &g) in b.members.iter().enumerate() {
                        let row = target.offset + target.local(g).expect("intersection is contained in its faces");
                        triplets.push((row, b.offset + k, BigInt::from(sign)));
                    }
                }
            }
            boundaries.insert(p, SparseMatrix::from_triplets(&z, ranks[&(p - 1)], ranks[&p], triplets)?);
        }
        let integral = ChainComplex::new(z, ranks, boundaries)?;
        Ok(MvComplex { n, blocks, integral })
    }

    pub fn blocks(&self, p: i64) -> &[Block] {
        self.blocks.get(&p).map_or(&[], Vec::as_slice)
    }

    pub fn top_degree(&self) -> i64 {
        *self.blocks.keys().next_back().unwrap_or(&0)
    }

    pub fn ranks(&self) -> &BTreeMap<i64, usize> {
        self.integral.ranks()
    }

    pub fn labels(&self, p: i64, basis: &Basis) -> Vec<CellLabel> {
        if p == -1 {
            return vec![CellLabel::Unit];
        }
        self.blocks(p)
            .iter()
            .flat_map(|b| {
                b.members.iter().map(|&g| CellLabel::Cell { subset: b.subset.clone(), diagram: basis.get(g).clone() })
            })
            .collect()
    }

    /// The full complex, degrees -1 to the top, over `ring`.
    pub fn chain_complex<R: Ring>(&self, ring: &R) -> ChainComplex<R> {
        self.integral.map_ring(ring, |x| ring.from_int(x))
    }

    /// The truncation `C_{>= 0}`, a projective resolution of the trivial module.
    pub fn resolution<R: Ring>(&self, ring: &R) -> ChainComplex<R> {
        let ranks = self.ranks().iter().filter(|(&p, _)| p >= 0).map(|(&p, &r)| (p, r)).collect();
        let boundaries = self
            .integral
            .boundaries()
            .iter()
            .filter(|(&p, _)| p >= 1)
            .map(|(&p, d)| (p, d.map(ring, |x| ring.from_int(x))))
            .collect();
        ChainComplex::new(ring.clone(), ranks, boundaries).expect("shapes already checked")
    }

    /// Notes where the complex differs from the short displayed shapes.
    pub fn shape_notes(&self, cover: &Cover) -> Vec<String> {
        let n = self.n;
        let mut notes = Vec::new();
        if n % 2 == 1 && n >= 5 {
            let p = (n / 2) as i64;
            let labels: Vec<&str> = cover.summands_of_size(p as usize).map(|s| s.ideal.label()).collect();
            if !labels.is_empty() {
                notes.push(format!(
                    "odd n = {n}: degree {p} = floor(n/2) is nonzero (rank {}, summands {}); the shortened \
                     odd-n shape ending at L_{{floor(n/2)-1}} in degree floor(n/2)-1 does not hold here, \
                     the complex follows the generic definition over all index subsets",
                    self.ranks().get(&p).copied().unwrap_or(0),
                    labels.join(", ")
                ));
            }
        }
        notes
    }
}

/// Full complex over `ring`.
pub fn build_mv_complex<R: Ring>(cover: &Cover, basis: &Basis, ring: &R) -> Result<ChainComplex<R>> {
    Ok(MvComplex::build(cover, basis)?.chain_complex(ring))
}

/// Homology of the full complex; acyclic means every degree vanishes.
pub fn verify_acyclic<R: LinAlg>(mv: &MvComplex, ring: &R) -> Result<HomologyResult> {
    complex_homology(&mv.chain_complex(ring))
}

/// How the basis of `I` and the all-propagating diagram act on each cell of `C_{>= 0}`.
#[derive(Clone, Debug)]
pub struct ActionData {
    /// Smallest `a` with `delta^a y = d m` for some `d` in `I` and `m` in the same summand.
    min_loops: BTreeMap<i64, Vec<Option<u32>>>,
    /// The product of the all-propagating diagram with each cell: column index and loops.
    full_action: BTreeMap<i64, Vec<Option<(usize, u32)>>>,
}

enum Products<'a> {
    Table(&'a MultTable),
    Direct(&'a Basis),
}

impl Products<'_> {
    fn get(&self, a: usize, b: usize) -> Option<(usize, u32)> {
        match self {
            Products::Table(t) => t.product(a, b),
            Products::Direct(basis) => match basis.get(a).multiply(basis.get(b)).expect("same n") {
                MultiplicationOutcome::Annihilated => None,
                MultiplicationOutcome::Product { loops, diagram } => Some((basis.index_of(&diagram)?, loops)),
            },
        }
    }
}

impl ActionData {
    pub fn compute(mv: &MvComplex, basis: &Basis, table: Option<&MultTable>) -> ActionData {
        let products = match table {
            Some(t) => Products::Table(t),
            None => Products::Direct(basis),
        };
        let full = basis.full_index();
        let ideal: Vec<usize> = (0..basis.len()).filter(|&i| i != full).collect();
        let mut min_loops = BTreeMap::new();
        let mut full_action = BTreeMap::new();
        for (&p, list) in &mv.blocks {
            let per_block: Vec<(Vec<Option<u32>>, Vec<Option<(usize, u32)>>)> = list
                .par_iter()
                .map(|b| {
                    let mut mins = vec![None::<u32>; b.members.len()];
                    for &m in &b.members {
                        for &d in &ideal {
                            if let Some((y, loops)) = products.get(d, m) {
                                let k = b.local(y).expect("left ideal is closed");
                                mins[k] = Some(mins[k].map_or(loops, |v| v.min(loops)));
                            }
                        }
                    }
                    let fulls = b
                        .members
                        .iter()
                        .map(|&m| {
                            products.get(full, m).map(|(y, loops)| (b.offset + b.local(y).expect("closed"), loops))
                        })
                        .collect();
                    (mins, fulls)
                })
                .collect();
            let (mins, fulls): (Vec<_>, Vec<_>) = per_block.into_iter().unzip();
            min_loops.insert(p, mins.concat());
            full_action.insert(p, fulls.concat());
        }
        ActionData { min_loops, full_action }
    }

    pub fn min_loops(&self, p: i64) -> &[Option<u32>] {
        self.min_loops.get(&p).map_or(&[], Vec::as_slice)
    }
}

/// Everything needed for the functor computations at one `n`.
pub struct Resolution {
    pub basis: Arc<Basis>,
    pub cover: Cover,
    pub complex: MvComplex,
    pub action: ActionData,
}

impl Resolution {
    pub fn new(n: usize) -> Result<Resolution> {
        let basis = Basis::new(n);
        let cover = build_cover(&basis)?;
        let complex = MvComplex::build(&cover, &basis)?;
        let table = if n <= MAX_TABLE_N { Some(MultTable::new(basis.clone())?) } else { None };
        let action = ActionData::compute(&complex, &basis, table.as_ref());
        Ok(Resolution { basis, cover, complex, action })
    }
}

/// `1 (x)_A C_{>= 0}`: the term structure of each quotient and a complex over
/// the ground ring whose homology is `Tor`.
#[derive(Clone, Debug)]
pub struct TensorResult<R: Ring> {
    /// `1 (x)_A C_p` as a module: free rank and torsion.
    pub terms: Vec<DegreeHomology>,
    /// Mapping cone of `I C -> C`, quasi-isomorphic to `1 (x)_A C`.
    pub cone: ChainComplex<R>,
}

fn relation_generators<R: Ring>(ring: &R, mins: &[Option<u32>]) -> Vec<(usize, R::Elem)> {
    mins.iter()
        .enumerate()
        .filter_map(|(k, m)| m.map(|a| (k, ring.delta_pow(a))))
        .filter(|(_, c)| !ring.is_zero(c))
        .collect()
}

pub fn tensor_trivial<R: LinAlg>(mv: &MvComplex, action: &ActionData, ring: &R) -> Result<TensorResult<R>> {
    let c = mv.resolution(ring);
    let top = mv.top_degree();
    let rel: BTreeMap<i64, Vec<(usize, R::Elem)>> =
        (0..=top).map(|p| (p, relation_generators(ring, action.min_loops(p)))).collect();
    let rel_len = |p: i64| rel.get(&p).map_or(0, Vec::len);
    let terms = (0..=top)
        .map(|p| {
            let rels = &rel[&p];
            let torsion = rels
                .iter()
                .filter(|(_, x)| !ring.is_unit(x))
                .map(|(_, x)| ring.to_bigint(x))
                .collect::<Vec<_>>();
            DegreeHomology { degree: p, betti: c.rank(p) - rels.len(), torsion: crate::linalg::normalize_diagonal(torsion) }
        })
        .collect();
    let mut ranks = BTreeMap::new();
    for p in 0..=top + 1 {
        ranks.insert(p, c.rank(p) + rel_len(p - 1));
    }
    let mut boundaries = BTreeMap::new();
    for p in 1..=top + 1 {
        let rows = ranks[&(p - 1)];
        let cols = ranks[&p];
        let mut m = SparseMatrix::zeros(rows, cols);
        let cp = c.rank(p);
        for (i, j, v) in c.boundary(p).entries() {
            m.add_at(ring, i, j, v)?;
        }
        if let Some(rs) = rel.get(&(p - 1)) {
            for (k, (y, cy)) in rs.iter().enumerate() {
                m.add_at(ring, *y, cp + k, cy)?;
            }
            if p >= 2 {
                let below: HashMap<usize, (usize, &R::Elem)> =
                    rel[&(p - 2)].iter().enumerate().map(|(k, (y, cy))| (*y, (k, cy))).collect();
                let d = c.boundary(p - 1);
                let cols_d = d.column_vectors();
                let cq = c.rank(p - 1);
                for (k, (y, cy)) in rs.iter().enumerate() {
                    for (y2, v) in &cols_d[*y] {
                        let (k2, cy2) = below.get(y2).ok_or(Error::NotSubcomplex(p - 1))?;
                        let coeff = ring.exact_div(&ring.mul(v, cy), cy2).ok_or(Error::NotSubcomplex(p - 1))?;
                        m.add_at(ring, cq + k2, cp + k, &ring.neg(&coeff))?;
                    }
                }
            }
        }
        boundaries.insert(p, m);
    }
    let cone = ChainComplex::new(ring.clone(), ranks, boundaries)?;
    Ok(TensorResult { terms, cone })
}

/// `Tor_p(1, 1)` for `p >= 0` from the tensored resolution.
pub fn tor_from_resolution<R: LinAlg>(mv: &MvComplex, action: &ActionData, ring: &R) -> Result<Vec<DegreeHomology>> {
    let t = tensor_trivial(mv, action, ring)?;
    let h = complex_homology(&t.cone)?;
    Ok((0..=mv.top_degree()).map(|p| h.get(p).cloned().unwrap_or(DegreeHomology { degree: p, betti: 0, torsion: vec![] })).collect())
}

/// `Hom_A(C_{>= 0}, 1)` with explicit bases.
#[derive(Clone, Debug)]
pub struct HomResult<R: Ring> {
    /// For each degree, a basis of `Hom_A(C_p, 1)` as functionals on the cells of `C_p`.
    pub bases: BTreeMap<i64, Vec<SparseVec<R::Elem>>>,
    /// The cochain complex placed in degree `-p`.
    pub cochain: ChainComplex<R>,
}

impl<R: Ring> HomResult<R> {
    pub fn dimension(&self, p: i64) -> usize {
        self.bases.get(&p).map_or(0, Vec::len)
    }
}

fn hom_block<R: LinAlg>(ring: &R, block: &Block, mins: &[Option<u32>], fulls: &[Option<(usize, u32)>]) -> Result<Vec<SparseVec<R::Elem>>> {
    let size = block.members.len();
    let mut rows: Vec<Vec<(usize, R::Elem)>> = Vec::new();
    for k in 0..size {
        if let Some(a) = mins[block.offset + k] {
            rows.push(vec![(k, ring.delta_pow(a))]);
        }
        match fulls[block.offset + k] {
            None => rows.push(vec![(k, ring.neg(&ring.one()))]),
            Some((y, a)) => rows.push(vec![(y - block.offset, ring.delta_pow(a)), (k, ring.neg(&ring.one()))]),
        }
    }
    let mut m = SparseMatrix::zeros(rows.len(), size);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row {
            m.add_at(ring, i, *j, v)?;
        }
    }
    Ok(kernel_basis(ring, &m)
        .into_iter()
        .map(|v| v.into_iter().map(|(k, x)| (block.offset + k, x)).collect())
        .collect())
}

/// Solve `f(d m) = eps(d) f(m)` on every summand, then assemble the cochain complex.
pub fn hom_trivial<R: LinAlg>(mv: &MvComplex, action: &ActionData, ring: &R) -> Result<HomResult<R>> {
    let c = mv.resolution(ring);
    let top = mv.top_degree();
    let mut bases = BTreeMap::new();
    let mut per_block: BTreeMap<i64, Vec<Vec<SparseVec<R::Elem>>>> = BTreeMap::new();
    for p in 0..=top {
        let mins = action.min_loops(p);
        let fulls = action.full_action.get(&p).map_or(&[][..], Vec::as_slice);
        let blocks = mv
            .blocks(p)
            .par_iter()
            .map(|b| hom_block(ring, b, mins, fulls))
            .collect::<Result<Vec<_>>>()?;
        bases.insert(p, blocks.concat());
        per_block.insert(p, blocks);
    }
    let ranks = (0..=top).map(|p| (-p, bases[&p].len())).collect();
    let mut boundaries = BTreeMap::new();
    for p in 0..top {
        let d = c.boundary(p + 1);
        let mut m = SparseMatrix::zeros(bases[&(p + 1)].len(), bases[&p].len());
        let d_rows = d.row_vectors();
        for (col, f) in bases[&p].iter().enumerate() {
            // f . d_{p+1} as a functional on C_{p+1}
            let mut g: BTreeMap<usize, R::Elem> = BTreeMap::new();
            for (j, fj) in f {
                for (i, v) in &d_rows[*j] {
                    let e = g.entry(*i).or_insert_with(|| ring.zero());
                    *e = ring.add(e, &ring.mul(v, fj));
                }
            }
            let g: SparseVec<R::Elem> = g.into_iter().filter(|(_, v)| !ring.is_zero(v)).collect();
            let mut row_base = 0;
            for (b, kb) in mv.blocks(p + 1).iter().zip(&per_block[&(p + 1)]) {
                let part: SparseVec<R::Elem> = g
                    .iter()
                    .filter(|(i, _)| *i >= b.offset && *i < b.offset + b.members.len())
                    .map(|(i, v)| (i - b.offset, v.clone()))
                    .collect();
                let local: Vec<SparseVec<R::Elem>> =
                    kb.iter().map(|v| v.iter().map(|(i, x)| (i - b.offset, x.clone())).collect()).collect();
                let x = solve_in_span(ring, &local, b.members.len(), &part).ok_or(Error::NotSubcomplex(p + 1))?;
                for (k, v) in x {
                    m.add_at(ring, row_base + k, col, &v)?;
                }
                row_base += kb.len();
            }
        }
        boundaries.insert(-p, m);
    }
    let cochain = ChainComplex::new(ring.clone(), ranks, boundaries)?;
    Ok(HomResult { bases, cochain })
}

/// `Ext^p(1, 1)` for `p >= 0` from the resolution.
pub fn ext_from_resolution<R: LinAlg>(mv: &MvComplex, action: &ActionData, ring: &R) -> Result<Vec<DegreeHomology>> {
    let h = hom_trivial(mv, action, ring)?;
    let coh = complex_homology(&h.cochain)?;
    Ok((0..=mv.top_degree())
        .map(|p| {
            let mut d = coh.get(-p).cloned().unwrap_or(DegreeHomology { degree: -p, betti: 0, torsion: vec![] });
            d.degree = p;
            d
        })
        .collect())
}

/// Per-summand comparison of the generator's augmentation with the functor values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummandCheck {
    pub degree: i64,
    pub label: String,
    pub generator_augmentation_zero: bool,
    pub tensor_zero: bool,
    pub hom_zero: bool,
}

impl SummandCheck {
    pub fn consistent(&self) -> bool {
        self.generator_augmentation_zero == (self.tensor_zero && self.hom_zero)
    }
}

pub fn summand_checks<R: LinAlg>(
    cover: &Cover,
    mv: &MvComplex,
    action: &ActionData,
    ring: &R,
) -> Result<Vec<SummandCheck>> {
    let witnesses: HashMap<&[usize], &CoverSummand> = cover.summands.iter().map(|s| (s.subset.as_slice(), s)).collect();
    let mut out = Vec::new();
    for p in 0..=mv.top_degree() {
        let mins = action.min_loops(p);
        let fulls = action.full_action.get(&p).map_or(&[][..], Vec::as_slice);
        for b in mv.blocks(p) {
            let range = b.offset..b.offset + b.members.len();
            let tensor_zero = mins[range].iter().all(|m| m.is_some_and(|a| ring.is_unit(&ring.delta_pow(a))));
            let hom_zero = hom_block(ring, b, mins, fulls)?.is_empty();
            let (label, generator_augmentation_zero) = match witnesses.get(b.subset.as_slice()) {
                Some(s) => (s.ideal.label().to_string(), s.witness.augmentation_vanishes()),
                None => ("A".to_string(), false),
            };
            out.push(SummandCheck { degree: p, label, generator_augmentation_zero, tensor_zero, hom_zero });
        }
    }
    Ok(out)
}
