//! The generalized partial trace.
//!
//! For a dyad `|G⟩⟨H|`, vertex `v` and radius `r`, let `D` be the union of
//! the radius-`r` disks of `v` in `G` and in `H`. The reduced dyad is
//! `|G_D⟩⟨H_D|` when the corestrictions of `G` and `H` outside `D` coincide,
//! and zero otherwise. The map is extended linearly.
//!
//! `G_D` keeps the border vertices of `D`, unlabelled. When `G` and `H` have
//! different borders, the default [`TraceConvention::SharedBorder`] keeps
//! the union of both border sets on both sides; see its documentation.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::graph::{self, Graph, VertexId, VertexSet};
use crate::operator::{Operator, Space};
use crate::sector::SectorBasis;

/// Stateful evaluator of reduced dyads on basis indices. Implementations may
/// memoize, so they are created per sweep and not shared.
pub trait DyadReducer {
    /// Number of vertices `v` ranges over.
    fn vertex_count(&self) -> usize;

    /// The reduced dyad of `|g⟩⟨h|`, or `None` when it vanishes.
    fn reduce(&mut self, g: usize, h: usize, v: VertexId, radius: u32) -> Option<(usize, usize)>;
}

/// A space on which the generalized partial trace is defined.
pub trait ReducibleSpace: Space {
    type Reducer<'a>: DyadReducer
    where
        Self: 'a;

    fn reducer(&self) -> Self::Reducer<'_>;
}

const SPLIT_CACHE_LIMIT: usize = 1 << 23;

/// How border vertices enter a reduced off-diagonal dyad.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TraceConvention {
    /// Both sides keep the border vertices of `D` in either graph; a vertex
    /// bordering `D` in only one graph appears as an isolated unlabelled
    /// vertex on the other side. Reduction is then stable under a second
    /// reduction at a smaller radius, so the identity is `(m, m)`-causal.
    #[default]
    SharedBorder,
    /// Each side keeps only its own border vertices.
    Literal,
}

/// Memoizing reducer over a sector.
pub struct SectorReducer<'a> {
    basis: &'a SectorBasis,
    convention: TraceConvention,
    subsets: usize,
    splits: Vec<u64>,
    disks: BTreeMap<u32, Vec<Option<VertexSet>>>,
}

impl<'a> SectorReducer<'a> {
    pub fn new(basis: &'a SectorBasis) -> Self {
        SectorReducer::with_convention(basis, TraceConvention::default())
    }

    pub fn with_convention(basis: &'a SectorBasis, convention: TraceConvention) -> Self {
        let n = basis.universe().vertex_count();
        let subsets = 1usize << n.min(usize::BITS as usize - 1);
        let splits = match basis.len().checked_mul(subsets) {
            Some(len) if n < 32 && len <= SPLIT_CACHE_LIMIT => alloc::vec![u64::MAX; len],
            _ => Vec::new(),
        };
        SectorReducer { basis, convention, subsets, splits, disks: BTreeMap::new() }
    }

    fn uncached(basis: &'a SectorBasis, convention: TraceConvention) -> Self {
        SectorReducer { basis, convention, subsets: 0, splits: Vec::new(), disks: BTreeMap::new() }
    }

    pub fn basis(&self) -> &'a SectorBasis {
        self.basis
    }

    /// Radius-`r` disk of `v` in basis graph `g`.
    pub fn disk(&mut self, g: usize, v: VertexId, r: u32) -> VertexSet {
        let nv = self.basis.universe().vertex_count();
        let table = self
            .disks
            .entry(r)
            .or_insert_with(|| alloc::vec![None; self.basis.len() * nv]);
        let slot = &mut table[g * nv + usize::from(v.0)];
        *slot.get_or_insert_with(|| {
            graph::disk_vertices(self.basis.graph(g), VertexSet::singleton(v), r)
        })
    }

    /// Indices of `restrict(g, d)` and `corestrict(g, d)`.
    pub fn split(&mut self, g: usize, d: VertexSet) -> (usize, usize) {
        let graph = self.basis.graph(g);
        let d = d.intersection(graph.vertex_set());
        let compute = |basis: &SectorBasis| {
            let r = basis.index_of(&graph::restrict(graph, d)).expect("sector closed under restriction");
            let c = basis.index_of(&graph::corestrict(graph, d)).expect("sector closed under corestriction");
            (r, c)
        };
        if self.splits.is_empty() {
            return compute(self.basis);
        }
        let key = g * self.subsets + d.0 as usize;
        let cached = self.splits[key];
        if cached != u64::MAX {
            return ((cached >> 32) as usize, (cached & 0xffff_ffff) as usize);
        }
        let (r, c) = compute(self.basis);
        self.splits[key] = (r as u64) << 32 | c as u64;
        (r, c)
    }

    /// Adds `extra` to basis graph `i` as isolated unlabelled vertices.
    fn pad(&self, i: usize, extra: VertexSet) -> usize {
        if extra.is_empty() {
            return i;
        }
        let x = self.basis.graph(i);
        let padded = Graph::new(
            x.labelled_vertices().iter().copied().chain(extra.iter().map(|v| (v, None))),
            x.edges().iter().copied(),
        )
        .expect("padding adds fresh vertices");
        self.basis.index_of(&padded).expect("sector closed under padding")
    }
}

impl DyadReducer for SectorReducer<'_> {
    fn vertex_count(&self) -> usize {
        self.basis.universe().vertex_count()
    }

    fn reduce(&mut self, g: usize, h: usize, v: VertexId, radius: u32) -> Option<(usize, usize)> {
        let d = self.disk(g, v, radius).union(self.disk(h, v, radius));
        let (gr, gc) = self.split(g, d);
        let (hr, hc) = self.split(h, d);
        if gc != hc {
            return None;
        }
        if self.convention == TraceConvention::Literal || g == h {
            return Some((gr, hr));
        }
        // Equal corestrictions give equal vertex sets outside `d`, so each
        // border vertex of one graph is also a vertex of the other.
        let bg = graph::border_vertices(self.basis.graph(g), d);
        let bh = graph::border_vertices(self.basis.graph(h), d);
        Some((self.pad(gr, bh.difference(bg)), self.pad(hr, bg.difference(bh))))
    }
}

impl ReducibleSpace for SectorBasis {
    type Reducer<'a> = SectorReducer<'a>;

    fn reducer(&self) -> SectorReducer<'_> {
        SectorReducer::new(self)
    }
}

/// Reduced dyad of `|g⟩⟨h|` over a sector, without memoization.
pub fn reduce_dyad(
    basis: &SectorBasis,
    convention: TraceConvention,
    g: usize,
    h: usize,
    v: VertexId,
    radius: u32,
) -> Option<(usize, usize)> {
    SectorReducer::uncached(basis, convention).reduce(g, h, v, radius)
}

/// The generalized partial trace `ρ ↦ ρ^r_v`.
pub fn partial_trace<S: ReducibleSpace>(rho: &Operator<S>, v: VertexId, radius: u32) -> Operator<S> {
    let mut reducer = rho.space().reducer();
    partial_trace_with(&mut reducer, rho, v, radius)
}

/// The partial trace with an explicit reducer.
pub fn partial_trace_with<S: Space, R: DyadReducer>(
    reducer: &mut R,
    rho: &Operator<S>,
    v: VertexId,
    radius: u32,
) -> Operator<S> {
    let mut entries = Vec::new();
    for h in 0..rho.dim() {
        for &(g, a) in rho.column(h) {
            if let Some((gr, hr)) = reducer.reduce(g as usize, h, v, radius) {
                entries.push((gr, hr, a));
            }
        }
    }
    Operator::from_entries(rho.space(), entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{e, g};
    use crate::operator::LinearOperator;
    use crate::universe::Universe;
    use alloc::sync::Arc;
    use num_complex::Complex;

    fn basis3() -> Arc<SectorBasis> {
        let u = Universe::from_names(&["a", "b", "c"], &["0", "1"], 2).unwrap();
        Arc::new(SectorBasis::enumerate(&u, 100_000).unwrap())
    }

    #[test]
    fn diagonal_dyad_reduces_to_its_disk() {
        let b = basis3();
        let x = g(&[(0, Some(0)), (1, Some(1)), (2, Some(1))], &[e(0, 0, 1, 0), e(1, 1, 2, 0)]);
        let rho = LinearOperator::dyad(&b, &x, &x).unwrap();
        let red = partial_trace(&rho, VertexId(0), 0);
        let disk = g(&[(0, Some(0)), (1, None)], &[e(0, 0, 1, 0)]);
        assert_eq!(red.max_abs_diff(&LinearOperator::dyad(&b, &disk, &disk).unwrap()).unwrap(), 0.0);
        assert_eq!(red.trace(), rho.trace());
    }

    #[test]
    fn off_diagonal_with_distinct_complements_vanishes() {
        let b = basis3();
        let x = g(&[(0, Some(0)), (1, Some(1))], &[]);
        let y = g(&[(0, Some(0)), (1, Some(0))], &[]);
        let rho = LinearOperator::dyad(&b, &x, &y).unwrap();
        assert_eq!(partial_trace(&rho, VertexId(0), 2).nnz(), 0);
        // Traced out at b's own disk the dyad survives.
        let kept = partial_trace(&rho, VertexId(1), 0);
        assert_eq!(kept.nnz(), 1);
        assert_eq!(kept.trace(), Complex::new(0.0, 0.0));
    }

    #[test]
    fn shared_border_pads_the_side_without_that_border() {
        let b = basis3();
        // G = {a-b, c}, H = {a-c, b}. At c with radius 1, D = {a, c} and b
        // borders D in G only.
        let x = g(&[(0, Some(0)), (1, Some(0)), (2, Some(0))], &[e(0, 0, 1, 0)]);
        let y = g(&[(0, Some(0)), (1, Some(0)), (2, Some(0))], &[e(0, 0, 2, 0)]);
        let (xi, yi) = (b.index_of(&x).unwrap(), b.index_of(&y).unwrap());
        let c = VertexId(2);

        let lit = reduce_dyad(&b, TraceConvention::Literal, xi, yi, c, 1).unwrap();
        assert_eq!(b.graph(lit.0), &g(&[(0, Some(0)), (1, None), (2, Some(0))], &[e(0, 0, 1, 0)]));
        assert_eq!(b.graph(lit.1), &g(&[(0, Some(0)), (2, Some(0))], &[e(0, 0, 2, 0)]));
        // Reducing again compares b in one complement against nothing.
        assert_eq!(reduce_dyad(&b, TraceConvention::Literal, lit.0, lit.1, c, 1), None);

        let shared = reduce_dyad(&b, TraceConvention::SharedBorder, xi, yi, c, 1).unwrap();
        assert_eq!(shared.0, lit.0);
        assert_eq!(b.graph(shared.1), &g(&[(0, Some(0)), (1, None), (2, Some(0))], &[e(0, 0, 2, 0)]));
        assert_eq!(reduce_dyad(&b, TraceConvention::SharedBorder, shared.0, shared.1, c, 1), Some(shared));
    }

    #[test]
    fn cached_and_uncached_reductions_agree() {
        let b = basis3();
        let mut cached = b.reducer();
        for gi in (0..b.len()).step_by(7) {
            for hi in (0..b.len()).step_by(11) {
                for r in 0..3 {
                    let v = VertexId((gi + hi) as u8 % 3);
                    assert_eq!(cached.reduce(gi, hi, v, r), reduce_dyad(&b, TraceConvention::SharedBorder, gi, hi, v, r));
                }
            }
        }
    }
}
