//! Exhaustive enumeration of every graph over a finite universe.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::{Edge, Graph, Label, Port, Slot, VertexId, VertexSet};
use crate::universe::Universe;

/// All graphs with vertices in the universe, in canonical order.
///
/// For a marked universe only mark-consistent graphs are included. Both kinds
/// of sector are closed under restriction, corestriction and the generalized
/// partial trace.
#[derive(Clone, Debug)]
pub struct SectorBasis {
    universe: Universe,
    graphs: Vec<Graph>,
    blocks: BTreeMap<VertexSet, Vec<u32>>,
}

impl SectorBasis {
    /// Enumerates the sector, refusing when it has more than `cap` elements.
    pub fn enumerate(universe: &Universe, cap: usize) -> Result<Self, Error> {
        let count = sector_size(universe);
        if count > cap as u128 {
            return Err(Error::CapExceeded { count, cap });
        }
        let mut graphs = Vec::with_capacity(count as usize);
        let n = universe.vertex_count();
        for mask in 0..(1u64 << n) {
            enumerate_vertex_set(universe, VertexSet(mask), &mut graphs);
        }
        graphs.sort_unstable();
        debug_assert!(graphs.windows(2).all(|w| w[0] != w[1]));
        debug_assert_eq!(graphs.len() as u128, count);
        let mut blocks: BTreeMap<VertexSet, Vec<u32>> = BTreeMap::new();
        for (i, g) in graphs.iter().enumerate() {
            blocks.entry(g.vertex_set()).or_default().push(i as u32);
        }
        Ok(SectorBasis { universe: universe.clone(), graphs, blocks })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn graph(&self, i: usize) -> &Graph {
        &self.graphs[i]
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    pub fn index_of(&self, g: &Graph) -> Option<usize> {
        self.graphs.binary_search(g).ok()
    }

    pub fn require_index(&self, g: &Graph) -> Result<usize, Error> {
        self.index_of(g).ok_or_else(|| Error::OutsideBasis(g.clone()))
    }

    /// Partition of the basis by exact vertex set.
    pub fn blocks(&self) -> &BTreeMap<VertexSet, Vec<u32>> {
        &self.blocks
    }
}

/// Number of graphs in the sector of `universe`, computed combinatorially.
/// Saturates at `u128::MAX`.
pub fn sector_size(universe: &Universe) -> u128 {
    let n = universe.vertex_count() as u32;
    let sigma = universe.base_label_names().len() as i128;
    let p = u64::from(universe.base_port_count());
    let mut total: Option<i128> = Some(0);
    for w in 0..=n {
        let per = if universe.is_marked() {
            marked_count(w, sigma, p)
        } else {
            (|| {
                let labels = (sigma + 1).checked_pow(w)?;
                labels.checked_mul(telephone(u64::from(w) * p)?)
            })()
        };
        total = (|| total?.checked_add(binomial(u64::from(n), u64::from(w))?.checked_mul(per?)?))();
    }
    total.map_or(u128::MAX, |t| t as u128)
}

/// Marked graphs on a fixed set of `w` vertices. Each vertex carries an
/// effective mark; a slot `(u, (i, b))` may only join a vertex whose mark is
/// `b`, and unlabelled vertices of mark 1 must not be isolated.
fn marked_count(w: u32, sigma: i128, p: u64) -> Option<i128> {
    let mut sum = 0i128;
    for ones in 0..=w {
        let zeros = w - ones;
        let mut inner = 0i128;
        for z in 0..=ones {
            let mut ni = 0i128;
            for y in 0..=z {
                let m = compatible_matchings(u64::from(zeros) * p, u64::from(ones - y) * p)?;
                let term = binomial(u64::from(z), u64::from(y))?.checked_mul(m)?;
                ni = if y % 2 == 0 { ni.checked_add(term)? } else { ni.checked_sub(term)? };
            }
            let t = binomial(u64::from(ones), u64::from(z))?
                .checked_mul(sigma.checked_pow(ones - z)?)?
                .checked_mul(ni)?;
            inner = inner.checked_add(t)?;
        }
        let t = binomial(u64::from(w), u64::from(ones))?
            .checked_mul((sigma + 1).checked_pow(zeros)?)?
            .checked_mul(inner)?;
        sum = sum.checked_add(t)?;
    }
    Some(sum)
}

/// Matchings when `a` slots sit on mark-0 vertices and `b` on mark-1
/// vertices, each vertex offering every port with both port marks.
fn compatible_matchings(a: u64, b: u64) -> Option<i128> {
    // (0,0) slots pair among themselves, (1,1) likewise, (0,1) with (1,0).
    let mut cross = 0i128;
    for k in 0..=a.min(b) {
        let t = binomial(a, k)?.checked_mul(binomial(b, k)?)?.checked_mul(factorial(k)?)?;
        cross = cross.checked_add(t)?;
    }
    telephone(a)?.checked_mul(telephone(b)?)?.checked_mul(cross)
}

/// Number of matchings of the complete graph on `k` points.
fn telephone(k: u64) -> Option<i128> {
    let (mut prev, mut cur) = (1i128, 1i128);
    for j in 1..k {
        let next = cur.checked_add((j as i128).checked_mul(prev)?)?;
        prev = cur;
        cur = next;
    }
    Some(cur)
}

fn binomial(n: u64, k: u64) -> Option<i128> {
    if k > n {
        return Some(0);
    }
    let mut r = 1i128;
    for i in 0..k {
        r = r.checked_mul((n - i) as i128)? / (i as i128 + 1);
    }
    Some(r)
}

fn factorial(k: u64) -> Option<i128> {
    (1..=k).try_fold(1i128, |acc, i| acc.checked_mul(i as i128))
}

fn enumerate_vertex_set(universe: &Universe, w: VertexSet, out: &mut Vec<Graph>) {
    let vs: Vec<VertexId> = w.iter().collect();
    let ports = universe.port_count();
    let sigma = universe.base_label_names().len() as u16;
    if !universe.is_marked() {
        let slots: Vec<Slot> = vs
            .iter()
            .flat_map(|&v| (0..ports).map(move |p| Slot::new(v, Port(p))))
            .collect();
        let matchings = matchings(&slots, |_, _| true);
        for labels in label_assignments(&vs, |_| (0..sigma).map(Label).collect()) {
            for edges in &matchings {
                out.push(Graph::from_sorted(labels.clone(), edges.clone()));
            }
        }
        return;
    }
    // Marked: fix an effective mark per vertex, then draw compatible slots.
    for marks in 0..(1u64 << vs.len()) {
        let mark_of = |v: VertexId| {
            let i = vs.iter().position(|&u| u == v).unwrap();
            marks >> i & 1 == 1
        };
        let slots: Vec<Slot> = vs
            .iter()
            .flat_map(|&v| (0..ports).map(move |p| Slot::new(v, Port(p))))
            .collect();
        let matchings = matchings(&slots, |s, t| {
            let port_mark = |s: Slot| s.port.0 & 1 == 1;
            port_mark(s) == mark_of(t.vertex) && port_mark(t) == mark_of(s.vertex)
        });
        let choices = |v: VertexId| {
            let a = u16::from(mark_of(v));
            (0..sigma).map(|x| Label(2 * x + a)).collect()
        };
        for labels in label_assignments(&vs, choices) {
            for edges in &matchings {
                let isolated_marked_blank = labels.iter().any(|&(v, l)| {
                    l.is_none() && mark_of(v) && !edges.iter().any(|e| e.touches(v))
                });
                if !isolated_marked_blank {
                    out.push(Graph::from_sorted(labels.clone(), edges.clone()));
                }
            }
        }
    }
}

/// Every partial labelling of `vs`, each vertex either unlabelled or given
/// one of `choices(v)`.
fn label_assignments(
    vs: &[VertexId],
    choices: impl Fn(VertexId) -> Vec<Label>,
) -> Vec<Vec<(VertexId, Option<Label>)>> {
    let mut acc: Vec<Vec<(VertexId, Option<Label>)>> = alloc::vec![Vec::new()];
    for &v in vs {
        let opts: Vec<Option<Label>> =
            core::iter::once(None).chain(choices(v).into_iter().map(Some)).collect();
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |&l| {
                    let mut p = prefix.clone();
                    p.push((v, l));
                    p
                })
            })
            .collect();
    }
    acc
}

/// All matchings on `slots` (sorted ascending) using only pairs allowed by
/// `compatible`. Each matching is returned as a sorted edge list.
fn matchings(slots: &[Slot], compatible: impl Fn(Slot, Slot) -> bool) -> Vec<Vec<Edge>> {
    fn go(
        free: &mut Vec<bool>,
        slots: &[Slot],
        start: usize,
        current: &mut Vec<Edge>,
        out: &mut Vec<Vec<Edge>>,
        compatible: &dyn Fn(Slot, Slot) -> bool,
    ) {
        let Some(i) = (start..slots.len()).find(|&i| free[i]) else {
            let mut edges = current.clone();
            edges.sort_unstable();
            out.push(edges);
            return;
        };
        free[i] = false;
        // Leave slot i empty.
        go(free, slots, i + 1, current, out, compatible);
        for j in i + 1..slots.len() {
            if free[j] && compatible(slots[i], slots[j]) {
                free[j] = false;
                current.push(Edge::new(slots[i], slots[j]).expect("distinct slots"));
                go(free, slots, i + 1, current, out, compatible);
                current.pop();
                free[j] = true;
            }
        }
        free[i] = true;
    }
    let mut out = Vec::new();
    let mut free = alloc::vec![true; slots.len()];
    go(&mut free, slots, 0, &mut Vec::new(), &mut out, &compatible);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{e, g};

    fn universe(nv: usize, ns: usize, np: u16) -> Universe {
        let names = ["a", "b", "c", "d"];
        let labels = ["0", "1", "2"];
        Universe::from_names(&names[..nv], &labels[..ns], np).unwrap()
    }

    #[test]
    fn one_vertex_one_label_one_port() {
        let s = SectorBasis::enumerate(&universe(1, 1, 1), 100).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.graph(0), &Graph::empty());
        assert_eq!(s.graph(1), &g(&[(0, None)], &[]));
        assert_eq!(s.graph(2), &g(&[(0, Some(0))], &[]));
    }

    #[test]
    fn one_vertex_two_ports_has_self_loops() {
        let s = SectorBasis::enumerate(&universe(1, 1, 2), 100).unwrap();
        assert_eq!(s.len(), 5);
        assert!(s.index_of(&g(&[(0, Some(0))], &[e(0, 0, 0, 1)])).is_some());
    }

    #[test]
    fn counts_match_the_closed_form() {
        // Brute-force counts computed independently by enumerating all port
        // matchings and filtering mark consistency.
        for (nv, ns, np, plain, marked) in
            [(1, 1, 1, 3, 4), (1, 1, 2, 5, 8), (2, 2, 2, 103, 684), (3, 1, 2, 741, 21376)]
        {
            let u = universe(nv, ns, np);
            assert_eq!(sector_size(&u), plain, "{nv},{ns},{np}");
            assert_eq!(sector_size(&u.marked()), marked, "marked {nv},{ns},{np}");
        }
        let s = SectorBasis::enumerate(&universe(2, 2, 2).marked(), 1000).unwrap();
        assert_eq!(s.len(), 684);
        assert!(s.graphs().iter().all(|g| s.universe().admits(g)));
    }

    #[test]
    fn cap_is_enforced_with_the_count() {
        let r = SectorBasis::enumerate(&universe(2, 2, 2), 50);
        assert_eq!(r.unwrap_err(), Error::CapExceeded { count: 103, cap: 50 });
    }

    #[test]
    fn blocks_partition_by_vertex_set() {
        let s = SectorBasis::enumerate(&universe(2, 2, 2), 1000).unwrap();
        let total: usize = s.blocks().values().map(Vec::len).sum();
        assert_eq!(total, s.len());
        assert_eq!(s.blocks()[&VertexSet::EMPTY], alloc::vec![0]);
        for (vs, members) in s.blocks() {
            assert!(members.iter().all(|&i| s.graph(i as usize).vertex_set() == *vs));
        }
    }
}
