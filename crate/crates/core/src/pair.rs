//! Ordered pairs of graphs and the tensorial extension `U ⊗ I`.
//!
//! The pair space holds two independent copies of a sector. No consistency
//! is required between components. Its partial trace at `v` reduces each
//! component at `v` with that component's own disks, and vanishes when
//! either component does.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::{Graph, VertexId};
use crate::operator::{LinearOperator, Operator, PairOperator, Space};
use crate::sector::SectorBasis;
use crate::trace::{DyadReducer, ReducibleSpace, SectorReducer};

#[derive(Clone, Debug)]
pub struct PairBasis {
    left: Arc<SectorBasis>,
    right: Arc<SectorBasis>,
}

impl PairBasis {
    /// Both components must range over the same vertices.
    pub fn new(left: Arc<SectorBasis>, right: Arc<SectorBasis>) -> Result<Self, Error> {
        if left.universe().vertex_count() != right.universe().vertex_count() {
            return Err(Error::BasisMismatch);
        }
        Ok(PairBasis { left, right })
    }

    pub fn left(&self) -> &Arc<SectorBasis> {
        &self.left
    }

    pub fn right(&self) -> &Arc<SectorBasis> {
        &self.right
    }

    pub fn len(&self) -> usize {
        self.left.len() * self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, l: usize, r: usize) -> usize {
        l * self.right.len() + r
    }

    pub fn components(&self, i: usize) -> (usize, usize) {
        (i / self.right.len(), i % self.right.len())
    }

    pub fn pair(&self, i: usize) -> (&Graph, &Graph) {
        let (l, r) = self.components(i);
        (self.left.graph(l), self.right.graph(r))
    }

    pub fn index_of(&self, g: &Graph, h: &Graph) -> Option<usize> {
        Some(self.index(self.left.index_of(g)?, self.right.index_of(h)?))
    }
}

impl Space for PairBasis {
    fn dim(&self) -> usize {
        self.len()
    }

    fn same_space(&self, other: &Self) -> bool {
        self.left.same_space(&other.left) && self.right.same_space(&other.right)
    }

    fn describe(&self, i: usize) -> String {
        let (g, h) = self.pair(i);
        alloc::format!("({g:?}, {h:?})")
    }
}

pub struct PairReducer<'a> {
    basis: &'a PairBasis,
    left: SectorReducer<'a>,
    right: SectorReducer<'a>,
}

impl DyadReducer for PairReducer<'_> {
    fn vertex_count(&self) -> usize {
        self.left.vertex_count()
    }

    fn reduce(&mut self, g: usize, h: usize, v: VertexId, radius: u32) -> Option<(usize, usize)> {
        let (gl, gr) = self.basis.components(g);
        let (hl, hr) = self.basis.components(h);
        let (gl2, hl2) = self.left.reduce(gl, hl, v, radius)?;
        let (gr2, hr2) = self.right.reduce(gr, hr, v, radius)?;
        Some((self.basis.index(gl2, gr2), self.basis.index(hl2, hr2)))
    }
}

impl ReducibleSpace for PairBasis {
    type Reducer<'a> = PairReducer<'a>;

    fn reducer(&self) -> PairReducer<'_> {
        PairReducer {
            basis: self,
            left: SectorReducer::new(&self.left),
            right: SectorReducer::new(&self.right),
        }
    }
}

/// `U ⊗ I` on pairs whose left component lives in `U`'s sector and whose
/// right component is drawn from `right`.
pub fn tensor_extension(u: &LinearOperator, right: &Arc<SectorBasis>) -> Result<PairOperator, Error> {
    let pairs = Arc::new(PairBasis::new(Arc::clone(u.basis()), Arc::clone(right))?);
    let nr = right.len();
    let mut columns = Vec::with_capacity(pairs.len());
    for l in 0..u.dim() {
        for r in 0..nr {
            columns.push(u.column(l).iter().map(|&(row, a)| ((row as usize * nr + r) as u32, a)).collect());
        }
    }
    Ok(Operator::from_columns(&pairs, columns))
}
