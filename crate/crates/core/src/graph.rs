//! Labelled port graphs and their algebra.
//!
//! A graph has a finite vertex set, a partial labelling and a set of edges
//! between `(vertex, port)` slots, no two edges sharing a slot. Vertices are
//! identified by their index in a finite universe (at most 64 of them), which
//! lets vertex sets be plain bitmasks.
//!
//! Graphs are stored in canonical form: vertices ascending, edges normalized
//! and sorted. The derived ordering is therefore a total order on labelled
//! graphs, and [`canonical_key`] produces an encoding with the same order.

use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u8);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Port(pub u16);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub u16);

/// A `(vertex, port)` attachment point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub vertex: VertexId,
    pub port: Port,
}

impl Slot {
    pub const fn new(vertex: VertexId, port: Port) -> Self {
        Slot { vertex, port }
    }
}

/// An unordered pair of distinct slots, stored with the smaller slot first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    lo: Slot,
    hi: Slot,
}

impl Edge {
    /// Returns `None` when both slots coincide.
    pub fn new(a: Slot, b: Slot) -> Option<Self> {
        match a.cmp(&b) {
            core::cmp::Ordering::Less => Some(Edge { lo: a, hi: b }),
            core::cmp::Ordering::Greater => Some(Edge { lo: b, hi: a }),
            core::cmp::Ordering::Equal => None,
        }
    }

    pub fn slots(&self) -> (Slot, Slot) {
        (self.lo, self.hi)
    }

    /// The slot at the other end, if `s` is one of the endpoints.
    pub fn opposite(&self, s: Slot) -> Option<Slot> {
        if s == self.lo {
            Some(self.hi)
        } else if s == self.hi {
            Some(self.lo)
        } else {
            None
        }
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.lo.vertex == v || self.hi.vertex == v
    }

    pub fn is_loop(&self) -> bool {
        self.lo.vertex == self.hi.vertex
    }
}

/// A set of vertices of a universe with at most 64 elements.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: VertexId) -> Self {
        VertexSet(1u64 << v.0)
    }

    /// The first `n` vertices of a universe.
    pub fn prefix(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.0 >> v.0 & 1 == 1
    }

    pub fn insert(&mut self, v: VertexId) {
        self.0 |= 1u64 << v.0;
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Vertices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = VertexId> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros() as u8;
            bits &= bits - 1;
            Some(VertexId(v))
        })
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|v| v.0)).finish()
    }
}

/// A labelled port graph in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Graph {
    vertices: Vec<(VertexId, Option<Label>)>,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn empty() -> Self {
        Graph::default()
    }

    /// Builds a graph, checking that vertices are distinct, endpoints exist
    /// and no two edges share a slot.
    pub fn new(
        vertices: impl IntoIterator<Item = (VertexId, Option<Label>)>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, Error> {
        let mut vertices: Vec<_> = vertices.into_iter().collect();
        vertices.sort_unstable_by_key(|(v, _)| *v);
        if let Some(w) = vertices.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateVertex(w[0].0));
        }
        let mut edges: Vec<_> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        let g = Graph { vertices, edges };
        g.validate()?;
        Ok(g)
    }

    /// Builds a graph from parts already in canonical form.
    pub(crate) fn from_sorted(vertices: Vec<(VertexId, Option<Label>)>, edges: Vec<Edge>) -> Self {
        let g = Graph { vertices, edges };
        debug_assert!(g.validate().is_ok(), "invalid graph {g:?}");
        debug_assert!(g.vertices.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(g.edges.windows(2).all(|w| w[0] < w[1]));
        g
    }

    fn validate(&self) -> Result<(), Error> {
        let vs = self.vertex_set();
        let mut used: Vec<Slot> = Vec::with_capacity(2 * self.edges.len());
        for e in &self.edges {
            let (a, b) = e.slots();
            for s in [a, b] {
                if !vs.contains(s.vertex) {
                    return Err(Error::MissingEndpoint(s.vertex));
                }
                used.push(s);
            }
        }
        used.sort_unstable();
        if let Some(w) = used.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::SlotReused(w[0]));
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().map(|(v, _)| *v).collect()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().map(|(v, _)| *v)
    }

    /// Vertices with their (possibly undefined) labels, ascending.
    pub fn labelled_vertices(&self) -> &[(VertexId, Option<Label>)] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search_by_key(&v, |(u, _)| *u).is_ok()
    }

    /// The label of `v`; `None` when `v` is absent or unlabelled.
    pub fn label(&self, v: VertexId) -> Option<Label> {
        self.vertices
            .binary_search_by_key(&v, |(u, _)| *u)
            .ok()
            .and_then(|i| self.vertices[i].1)
    }

    /// The slot joined to `s`, if `s` is occupied.
    pub fn partner(&self, s: Slot) -> Option<Slot> {
        self.edges.iter().find_map(|e| e.opposite(s))
    }

    pub fn is_occupied(&self, s: Slot) -> bool {
        self.partner(s).is_some()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .map(|e| {
                let (a, b) = e.slots();
                usize::from(a.vertex == v) + usize::from(b.vertex == v)
            })
            .sum()
    }

    /// Vertices adjacent to some vertex of `s` (not including `s` itself
    /// unless reached through an edge).
    pub fn neighbours(&self, s: VertexSet) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for e in &self.edges {
            let (a, b) = e.slots();
            if s.contains(a.vertex) {
                out.insert(b.vertex);
            }
            if s.contains(b.vertex) {
                out.insert(a.vertex);
            }
        }
        out
    }

    /// Replaces the label of `v`, which must be a vertex of the graph.
    pub fn with_label(&self, v: VertexId, label: Option<Label>) -> Graph {
        let mut g = self.clone();
        if let Ok(i) = g.vertices.binary_search_by_key(&v, |(u, _)| *u) {
            g.vertices[i].1 = label;
        }
        g
    }

    /// Applies `f` to every defined label.
    pub fn map_labels(&self, mut f: impl FnMut(VertexId, Label) -> Label) -> Graph {
        let vertices = self
            .vertices
            .iter()
            .map(|&(v, l)| (v, l.map(|l| f(v, l))))
            .collect();
        Graph { vertices, edges: self.edges.clone() }
    }

    /// Replaces the edge set. Fails if the new edges break the slot invariant.
    pub fn with_edges(&self, edges: impl IntoIterator<Item = Edge>) -> Result<Graph, Error> {
        Graph::new(self.vertices.iter().copied(), edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, (v, l)) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match l {
                Some(l) => write!(f, "{}[{}]", v.0, l.0)?,
                None => write!(f, "{}[_]", v.0)?,
            }
        }
        if !self.edges.is_empty() {
            f.write_str(";")?;
            for (i, e) in self.edges.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                let (a, b) = e.slots();
                write!(f, "{}.{}-{}.{}", a.vertex.0, a.port.0, b.vertex.0, b.port.0)?;
            }
        }
        f.write_str(">")
    }
}

/// True iff labels agree wherever both are defined on shared vertices, and
/// every slot at a shared vertex that is occupied in both graphs is joined
/// to the same far slot.
pub fn consistent(g: &Graph, h: &Graph) -> bool {
    let shared = g.vertex_set().intersection(h.vertex_set());
    if shared.is_empty() {
        return true;
    }
    for v in shared.iter() {
        if let (Some(a), Some(b)) = (g.label(v), h.label(v)) {
            if a != b {
                return false;
            }
        }
    }
    for e in g.edges() {
        let (a, b) = e.slots();
        for (s, far) in [(a, b), (b, a)] {
            if shared.contains(s.vertex) {
                if let Some(other) = h.partner(s) {
                    if other != far {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Union of two consistent graphs.
pub fn union(g: &Graph, h: &Graph) -> Result<Graph, Error> {
    if !consistent(g, h) {
        return Err(Error::Inconsistent);
    }
    let mut vertices = Vec::with_capacity(g.vertices.len() + h.vertices.len());
    let (mut i, mut j) = (0, 0);
    while i < g.vertices.len() || j < h.vertices.len() {
        match (g.vertices.get(i), h.vertices.get(j)) {
            (Some(&(u, lu)), Some(&(w, lw))) if u == w => {
                vertices.push((u, lu.or(lw)));
                i += 1;
                j += 1;
            }
            (Some(&(u, lu)), Some(&(w, _))) if u < w => {
                vertices.push((u, lu));
                i += 1;
            }
            (Some(_), Some(&(w, lw))) => {
                vertices.push((w, lw));
                j += 1;
            }
            (Some(&(u, lu)), None) => {
                vertices.push((u, lu));
                i += 1;
            }
            (None, Some(&(w, lw))) => {
                vertices.push((w, lw));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    let mut edges: Vec<Edge> = g.edges.iter().chain(h.edges.iter()).copied().collect();
    edges.sort_unstable();
    edges.dedup();
    Ok(Graph::from_sorted(vertices, edges))
}

/// Vertices reachable from `s ∩ V(g)` in at most `radius` steps.
pub fn disk_vertices(g: &Graph, s: VertexSet, radius: u32) -> VertexSet {
    let mut disk = s.intersection(g.vertex_set());
    for _ in 0..radius {
        let next = disk.union(g.neighbours(disk));
        if next == disk {
            break;
        }
        disk = next;
    }
    disk
}

/// Radius-one neighbours of `s ∩ V(g)` outside `s`.
pub fn border_vertices(g: &Graph, s: VertexSet) -> VertexSet {
    let inner = s.intersection(g.vertex_set());
    g.neighbours(inner).difference(inner)
}

/// Subgraph induced by `d` and its border vertices, keeping every edge with
/// an endpoint in `d` and the labels of `d` only.
pub fn restrict(g: &Graph, d: VertexSet) -> Graph {
    let inner = d.intersection(g.vertex_set());
    let border = g.neighbours(inner).difference(inner);
    let keep = inner.union(border);
    let vertices = g
        .vertices
        .iter()
        .filter(|(v, _)| keep.contains(*v))
        .map(|&(v, l)| (v, if inner.contains(v) { l } else { None }))
        .collect();
    let edges = g
        .edges
        .iter()
        .filter(|e| {
            let (a, b) = e.slots();
            inner.contains(a.vertex) || inner.contains(b.vertex)
        })
        .copied()
        .collect();
    Graph::from_sorted(vertices, edges)
}

/// Subgraph induced by the vertices outside `d`, with their labels and the
/// edges internal to them.
pub fn corestrict(g: &Graph, d: VertexSet) -> Graph {
    let vertices = g
        .vertices
        .iter()
        .filter(|(v, _)| !d.contains(*v))
        .copied()
        .collect();
    let edges = g
        .edges
        .iter()
        .filter(|e| {
            let (a, b) = e.slots();
            !d.contains(a.vertex) && !d.contains(b.vertex)
        })
        .copied()
        .collect();
    Graph::from_sorted(vertices, edges)
}

/// Injective, totally ordered encoding of a labelled graph.
///
/// Layout: per vertex `[id + 1, label + 1 or 0]`, a `0` separator, then per
/// edge `[id + 1, port, id + 1, port]`. The order on keys coincides with the
/// order on [`Graph`], and the empty graph has the smallest key.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key(Vec<u32>);

impl Key {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

pub fn canonical_key(g: &Graph) -> Key {
    let mut k = Vec::with_capacity(2 * g.vertices.len() + 1 + 4 * g.edges.len());
    for &(v, l) in &g.vertices {
        k.push(u32::from(v.0) + 1);
        k.push(l.map_or(0, |l| u32::from(l.0) + 1));
    }
    k.push(0);
    for e in &g.edges {
        let (a, b) = e.slots();
        k.extend([
            u32::from(a.vertex.0) + 1,
            u32::from(a.port.0),
            u32::from(b.vertex.0) + 1,
            u32::from(b.port.0),
        ]);
    }
    Key(k)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use alloc::vec;

    pub(crate) fn v(i: u8) -> VertexId {
        VertexId(i)
    }

    pub(crate) fn e(a: u8, i: u16, b: u8, j: u16) -> Edge {
        Edge::new(Slot::new(VertexId(a), Port(i)), Slot::new(VertexId(b), Port(j))).unwrap()
    }

    pub(crate) fn g(vs: &[(u8, Option<u16>)], es: &[Edge]) -> Graph {
        Graph::new(vs.iter().map(|&(v, l)| (VertexId(v), l.map(Label))), es.iter().copied()).unwrap()
    }

    fn path() -> Graph {
        // a[0] - b[1] - c[2] with a.0-b.0 and b.1-c.0
        g(&[(0, Some(0)), (1, Some(1)), (2, Some(2))], &[e(0, 0, 1, 0), e(1, 1, 2, 0)])
    }

    #[test]
    fn rejects_shared_slot_and_missing_endpoint() {
        let r = Graph::new(
            [(v(0), None), (v(1), None), (v(2), None)],
            [e(0, 0, 1, 0), e(0, 0, 2, 0)],
        );
        assert_eq!(r, Err(Error::SlotReused(Slot::new(v(0), Port(0)))));
        let r = Graph::new([(v(0), None)], [e(0, 0, 1, 0)]);
        assert_eq!(r, Err(Error::MissingEndpoint(v(1))));
        let r = Graph::new([(v(0), None), (v(0), None)], []);
        assert_eq!(r, Err(Error::DuplicateVertex(v(0))));
        assert!(Edge::new(Slot::new(v(0), Port(1)), Slot::new(v(0), Port(1))).is_none());
    }

    #[test]
    fn self_loop_between_two_ports_is_legal() {
        let h = g(&[(0, None)], &[e(0, 0, 0, 1)]);
        assert_eq!(h.degree(v(0)), 2);
    }

    #[test]
    fn consistency_examples() {
        assert!(consistent(&g(&[(0, Some(0))], &[]), &g(&[(1, Some(1))], &[])));
        assert!(!consistent(&g(&[(0, Some(0))], &[]), &g(&[(0, Some(1))], &[])));
        let ab = g(&[(0, None), (1, None)], &[e(0, 0, 1, 0)]);
        let ac = g(&[(0, None), (2, None)], &[e(0, 0, 2, 0)]);
        assert!(!consistent(&ab, &ac));
        assert!(consistent(&g(&[(0, Some(0))], &[]), &g(&[(0, None)], &[])));
    }

    #[test]
    fn union_examples() {
        let u = union(&g(&[(0, Some(0))], &[]), &g(&[(1, Some(1))], &[])).unwrap();
        assert_eq!(u, g(&[(0, Some(0)), (1, Some(1))], &[]));
        let ab = g(&[(0, None), (1, None)], &[e(0, 0, 1, 0)]);
        let u = union(&g(&[(0, Some(0))], &[]), &ab).unwrap();
        assert_eq!(u, g(&[(0, Some(0)), (1, None)], &[e(0, 0, 1, 0)]));
        let ac = g(&[(0, None), (2, None)], &[e(0, 0, 2, 0)]);
        assert_eq!(union(&ab, &ac), Err(Error::Inconsistent));
    }

    #[test]
    fn disks_on_a_path() {
        let p = path();
        let a = VertexSet::singleton(v(0));
        assert_eq!(disk_vertices(&p, a, 0), a);
        assert_eq!(disk_vertices(&p, a, 1), [v(0), v(1)].into_iter().collect());
        assert_eq!(disk_vertices(&p, a, 2), p.vertex_set());
        assert_eq!(disk_vertices(&p, a, 7), p.vertex_set());
        assert_eq!(border_vertices(&p, a), VertexSet::singleton(v(1)));
        // Absent vertices contribute nothing.
        assert_eq!(disk_vertices(&p, VertexSet::singleton(v(5)), 3), VertexSet::EMPTY);
    }

    #[test]
    fn restrict_and_corestrict_on_a_path() {
        let p = path();
        let a = VertexSet::singleton(v(0));
        assert_eq!(restrict(&p, a), g(&[(0, Some(0)), (1, None)], &[e(0, 0, 1, 0)]));
        assert_eq!(corestrict(&p, a), g(&[(1, Some(1)), (2, Some(2))], &[e(1, 1, 2, 0)]));
        assert_eq!(restrict(&p, p.vertex_set()), p);
        assert_eq!(restrict(&p, VertexSet::EMPTY), Graph::empty());
        assert_eq!(corestrict(&p, VertexSet::EMPTY), p);
        assert_eq!(corestrict(&p, p.vertex_set()), Graph::empty());
    }

    #[test]
    fn keys() {
        let p = path();
        assert_eq!(canonical_key(&p), canonical_key(&p.clone()));
        assert_ne!(
            canonical_key(&g(&[(0, Some(0))], &[])),
            canonical_key(&g(&[(0, None)], &[]))
        );
        let x = Graph::new([(v(0), None), (v(1), None)], [e(0, 0, 1, 1)]).unwrap();
        let y = Graph::new([(v(1), None), (v(0), None)], [e(1, 1, 0, 0)]).unwrap();
        assert_eq!(canonical_key(&x), canonical_key(&y));
        assert_eq!(canonical_key(&Graph::empty()).as_slice(), &[0]);
    }

    #[test]
    fn vertex_set_iteration_is_ascending() {
        let s: VertexSet = [v(5), v(1), v(63)].into_iter().collect();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![v(1), v(5), v(63)]);
        assert_eq!(s.len(), 3);
        assert_eq!(VertexSet::prefix(3).0, 0b111);
        assert_eq!(VertexSet::prefix(64).0, u64::MAX);
    }
}
