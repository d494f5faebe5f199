use super::{axpy, LinAlg, SparseMatrix, SparseVec};

#[derive(Clone)]
struct Column<E> {
    values: SparseVec<E>,
    transform: SparseVec<E>,
}

fn entry<E: Clone>(c: &Column<E>, r: usize) -> Option<E> {
    c.values.binary_search_by_key(&r, |(i, _)| *i).ok().map(|k| c.values[k].1.clone())
}

/// Lower echelon form by unimodular column operations.
///
/// Returns the pivot columns keyed by their leading row, and the columns that
/// reduced to zero. Each column carries the combination of inputs producing it.
fn reduce_columns<R: LinAlg>(
    ring: &R,
    columns: Vec<SparseVec<R::Elem>>,
    nrows: usize,
) -> (Vec<(usize, Column<R::Elem>)>, Vec<Column<R::Elem>>) {
    let mut active: Vec<Column<R::Elem>> = columns
        .into_iter()
        .enumerate()
        .map(|(j, values)| Column { values, transform: vec![(j, ring.one())] })
        .collect();
    let mut pivots = Vec::new();
    for r in 0..nrows {
        loop {
            let hits: Vec<usize> = (0..active.len()).filter(|&k| entry(&active[k], r).is_some()).collect();
            if hits.is_empty() {
                break;
            }
            if hits.len() == 1 {
                pivots.push((r, active.swap_remove(hits[0])));
                break;
            }
            let mut best = hits[0];
            for &k in &hits[1..] {
                if ring.smaller(&entry(&active[k], r).unwrap(), &entry(&active[best], r).unwrap()) {
                    best = k;
                }
            }
            let a = entry(&active[best], r).unwrap();
            let pivot = active[best].clone();
            for &k in hits.iter().filter(|&&k| k != best) {
                let b = entry(&active[k], r).unwrap();
                let q = ring.neg(&ring.quo(&b, &a));
                let col = &mut active[k];
                col.values = axpy(ring, &col.values, &q, &pivot.values);
                col.transform = axpy(ring, &col.transform, &q, &pivot.transform);
            }
        }
    }
    (pivots, active)
}

/// Basis of `{x : m x = 0}` by unimodular column reduction.
///
/// Over the integers the result is a basis of the saturated kernel lattice.
pub fn kernel_basis<R: LinAlg>(ring: &R, m: &SparseMatrix<R::Elem>) -> Vec<SparseVec<R::Elem>> {
    let (_, null) = reduce_columns(ring, m.column_vectors(), m.rows());
    let mut out: Vec<SparseVec<R::Elem>> = null.into_iter().map(|c| c.transform).collect();
    out.sort_by(|a, b| a.iter().map(|(i, _)| *i).cmp(b.iter().map(|(i, _)| *i)));
    out
}

/// Coefficients `x` with `sum_j x_j columns[j] = target`, if they exist.
///
/// The columns must be linearly independent.
pub fn solve_in_span<R: LinAlg>(
    ring: &R,
    columns: &[SparseVec<R::Elem>],
    nrows: usize,
    target: &SparseVec<R::Elem>,
) -> Option<SparseVec<R::Elem>> {
    let (pivots, _) = reduce_columns(ring, columns.to_vec(), nrows);
    let mut rest = target.clone();
    let mut coeffs: SparseVec<R::Elem> = Vec::new();
    for (r, col) in &pivots {
        let Some(t) = rest.iter().find(|(i, _)| i == r).map(|(_, v)| v.clone()) else { continue };
        let q = ring.exact_div(&t, &entry(col, *r).unwrap())?;
        rest = axpy(ring, &rest, &ring.neg(&q), &col.values);
        coeffs = axpy(ring, &coeffs, &q, &col.transform);
    }
    rest.is_empty().then_some(coeffs)
}
