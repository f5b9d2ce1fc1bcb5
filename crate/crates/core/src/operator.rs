//! Sparse complex operators over an enumerated basis.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex;

use crate::error::Error;
use crate::graph::Graph;
use crate::pair::PairBasis;
use crate::sector::SectorBasis;
use crate::state::StateVector;

pub type Amplitude = Complex<f64>;

const ZERO: Amplitude = Complex::new(0.0, 0.0);
const ONE: Amplitude = Complex::new(1.0, 0.0);

/// A finite orthonormal basis an operator can be defined over.
pub trait Space {
    fn dim(&self) -> usize;
    /// True when both describe the same basis in the same order.
    fn same_space(&self, other: &Self) -> bool;
    /// Human-readable name of basis element `i`.
    fn describe(&self, i: usize) -> String;
}

impl Space for SectorBasis {
    fn dim(&self) -> usize {
        self.len()
    }

    fn same_space(&self, other: &Self) -> bool {
        // A sector is determined by its universe.
        self.universe() == other.universe()
    }

    fn describe(&self, i: usize) -> String {
        alloc::format!("{:?}", self.graph(i))
    }
}

/// Sparse operator stored by columns; each column holds `(row, value)` pairs
/// with strictly increasing rows and no exact zeros.
#[derive(Clone, Debug)]
pub struct Operator<S> {
    space: Arc<S>,
    columns: Vec<Vec<(u32, Amplitude)>>,
}

/// Operator over a sector of graphs.
pub type LinearOperator = Operator<SectorBasis>;

/// Operator over ordered pairs of graphs.
pub type PairOperator = Operator<PairBasis>;

pub(crate) type SparseVec = Vec<(u32, Amplitude)>;

/// Sorts by index, merges duplicates and drops exact zeros.
pub(crate) fn normalize(mut v: SparseVec) -> SparseVec {
    v.sort_unstable_by_key(|&(i, _)| i);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, a) in v {
        match out.last_mut() {
            Some((j, b)) if *j == i => *b += a,
            _ => out.push((i, a)),
        }
    }
    out.retain(|&(_, a)| a != ZERO);
    out
}

impl<S: Space> Operator<S> {
    pub fn zero(space: &Arc<S>) -> Self {
        Operator { space: Arc::clone(space), columns: alloc::vec![Vec::new(); space.dim()] }
    }

    pub fn identity(space: &Arc<S>) -> Self {
        let columns = (0..space.dim()).map(|i| alloc::vec![(i as u32, ONE)]).collect();
        Operator { space: Arc::clone(space), columns }
    }

    /// Builds an operator from `(row, column, value)` triplets; duplicates
    /// accumulate.
    pub fn from_entries(
        space: &Arc<S>,
        entries: impl IntoIterator<Item = (usize, usize, Amplitude)>,
    ) -> Self {
        let mut columns: Vec<SparseVec> = alloc::vec![Vec::new(); space.dim()];
        for (r, c, a) in entries {
            columns[c].push((r as u32, a));
        }
        Operator::from_columns(space, columns)
    }

    pub(crate) fn from_columns(space: &Arc<S>, columns: Vec<SparseVec>) -> Self {
        debug_assert_eq!(columns.len(), space.dim());
        let columns = columns.into_iter().map(normalize).collect();
        Operator { space: Arc::clone(space), columns }
    }

    pub fn space(&self) -> &Arc<S> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, col: usize) -> &[(u32, Amplitude)] {
        &self.columns[col]
    }

    pub fn get(&self, row: usize, col: usize) -> Amplitude {
        let c = &self.columns[col];
        c.binary_search_by_key(&(row as u32), |&(r, _)| r).map_or(ZERO, |i| c[i].1)
    }

    /// Nonzero entries as `(row, column, value)`, sorted by row then column.
    pub fn entries(&self) -> Vec<(usize, usize, Amplitude)> {
        let mut out: Vec<_> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, a)| (r as usize, c, a)))
            .collect();
        out.sort_unstable_by_key(|&(r, c, _)| (r, c));
        out
    }

    fn check_space(&self, other: &Self) -> Result<(), Error> {
        if Arc::ptr_eq(&self.space, &other.space) || self.space.same_space(&other.space) {
            Ok(())
        } else {
            Err(Error::BasisMismatch)
        }
    }

    pub fn adjoint(&self) -> Self {
        let mut columns: Vec<SparseVec> = alloc::vec![Vec::new(); self.dim()];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, a) in col {
                columns[r as usize].push((c as u32, a.conj()));
            }
        }
        // Rows were visited in increasing column order, so each new column
        // is already sorted.
        Operator { space: Arc::clone(&self.space), columns }
    }

    /// Sparse matrix-vector product on basis indices.
    pub(crate) fn apply_sparse(&self, v: &[(u32, Amplitude)]) -> SparseVec {
        let mut acc = Vec::new();
        for &(k, b) in v {
            acc.extend(self.columns[k as usize].iter().map(|&(r, a)| (r, a * b)));
        }
        normalize(acc)
    }

    /// The product `self · other`.
    pub fn compose(&self, other: &Self) -> Result<Self, Error> {
        self.check_space(other)?;
        let columns = other.columns.iter().map(|col| self.apply_sparse(col)).collect();
        Ok(Operator { space: Arc::clone(&self.space), columns })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Amplitude, Amplitude) -> Amplitude) -> Result<Self, Error> {
        self.check_space(other)?;
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    match (a.get(i), b.get(j)) {
                        (Some(&(ra, x)), Some(&(rb, y))) if ra == rb => {
                            out.push((ra, f(x, y)));
                            i += 1;
                            j += 1;
                        }
                        (Some(&(ra, x)), Some(&(rb, _))) if ra < rb => {
                            out.push((ra, f(x, ZERO)));
                            i += 1;
                        }
                        (Some(&(ra, x)), None) => {
                            out.push((ra, f(x, ZERO)));
                            i += 1;
                        }
                        (_, Some(&(rb, y))) => {
                            out.push((rb, f(ZERO, y)));
                            j += 1;
                        }
                        (None, None) => unreachable!(),
                    }
                }
                out.retain(|&(_, z)| z != ZERO);
                out
            })
            .collect();
        Ok(Operator { space: Arc::clone(&self.space), columns })
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: Amplitude) -> Self {
        let columns = self
            .columns
            .iter()
            .map(|col| col.iter().map(|&(r, a)| (r, a * c)).filter(|&(_, a)| a != ZERO).collect())
            .collect();
        Operator { space: Arc::clone(&self.space), columns }
    }

    pub fn trace(&self) -> Amplitude {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, Error> {
        let d = self.sub(other)?;
        Ok(d.max_abs())
    }

    pub fn max_abs(&self) -> f64 {
        self.columns.iter().flatten().map(|(_, a)| a.norm()).fold(0.0, f64::max)
    }

    /// `max(|A†A - I|, |AA† - I|)` entrywise.
    pub fn unitarity_residual(&self) -> f64 {
        let id = Operator::identity(&self.space);
        let adj = self.adjoint();
        let left = adj.compose(self).and_then(|p| p.max_abs_diff(&id)).unwrap_or(f64::INFINITY);
        let right = self.compose(&adj).and_then(|p| p.max_abs_diff(&id)).unwrap_or(f64::INFINITY);
        left.max(right)
    }

    pub fn is_unitary(&self, eps: f64) -> bool {
        self.unitarity_residual() <= eps
    }

    /// True iff every column holds exactly one entry equal to 1 and no row is
    /// hit twice.
    pub fn is_permutation(&self) -> bool {
        let mut hit = alloc::vec![false; self.dim()];
        for col in &self.columns {
            match col.as_slice() {
                [(r, a)] if *a == ONE && !hit[*r as usize] => hit[*r as usize] = true,
                _ => return false,
            }
        }
        true
    }

    /// Largest entry of the commutator `[self, other]`.
    pub fn commutator_residual(&self, other: &Self) -> Result<f64, Error> {
        let ab = self.compose(other)?;
        let ba = other.compose(self)?;
        ab.max_abs_diff(&ba)
    }
}

impl Operator<SectorBasis> {
    pub fn basis(&self) -> &Arc<SectorBasis> {
        &self.space
    }

    /// The rank-one operator `|g⟩⟨h|`.
    pub fn dyad(basis: &Arc<SectorBasis>, g: &Graph, h: &Graph) -> Result<Self, Error> {
        let r = basis.require_index(g)?;
        let c = basis.require_index(h)?;
        Ok(Operator::from_entries(basis, [(r, c, ONE)]))
    }

    /// Builds an operator from entries keyed by graphs.
    pub fn from_graph_entries<'a>(
        basis: &Arc<SectorBasis>,
        entries: impl IntoIterator<Item = (&'a Graph, &'a Graph, Amplitude)>,
    ) -> Result<Self, Error> {
        let mut triplets = Vec::new();
        for (row, col, a) in entries {
            triplets.push((basis.require_index(row)?, basis.require_index(col)?, a));
        }
        Ok(Operator::from_entries(basis, triplets))
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector, Error> {
        let mut v = Vec::new();
        for (g, a) in psi.support() {
            v.push((self.space.require_index(g)? as u32, *a));
        }
        let out = self.apply_sparse(&normalize(v));
        Ok(out.into_iter().map(|(r, a)| (self.space.graph(r as usize).clone(), a)).collect())
    }

    /// True iff every nonzero entry joins graphs with the same vertex set.
    pub fn is_vertex_preserving(&self) -> bool {
        let b = &self.space;
        self.columns.iter().enumerate().all(|(c, col)| {
            let vs = b.graph(c).vertex_set();
            col.iter().all(|&(r, _)| b.graph(r as usize).vertex_set() == vs)
        })
    }
}
