use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex;

use super::{toggle_label, toggle_port};
use crate::error::Error;
use crate::graph::{Edge, Graph, Slot, VertexId, VertexSet};
use crate::operator::LinearOperator;
use crate::sector::SectorBasis;

/// True when marking `u` would make some far end collide with an edge
/// already occupying the toggled slot.
fn conflicts(g: &Graph, u: VertexId) -> bool {
    g.edges().iter().any(|e| {
        let (a, b) = e.slots();
        [(a, b), (b, a)].into_iter().any(|(s, far)| {
            s.vertex == u && g.is_occupied(Slot::new(far.vertex, toggle_port(far.port)))
        })
    })
}

/// The mark operation on a single basis graph.
pub fn mu_graph(g: &Graph, u: VertexId) -> Graph {
    if !g.contains(u) || conflicts(g, u) {
        return g.clone();
    }
    let toggle = |s: Slot| Slot::new(s.vertex, toggle_port(s.port));
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = e.slots();
            let (a, b) = if e.is_loop() && a.vertex == u {
                (toggle(a), toggle(b))
            } else if a.vertex == u {
                (a, toggle(b))
            } else if b.vertex == u {
                (toggle(a), b)
            } else {
                (a, b)
            };
            Edge::new(a, b).expect("toggling keeps slots distinct")
        })
        .collect();
    g.with_label(u, g.label(u).map(toggle_label))
        .with_edges(edges)
        .expect("no conflict means no shared slot")
}

/// `μ_S = ∏_{u∈S} μ_u` on one graph, as a product in ascending vertex
/// order.
pub fn mu_set_graph(g: &Graph, s: VertexSet) -> Graph {
    let order: Vec<VertexId> = s.iter().collect();
    order.iter().rev().fold(g.clone(), |acc, &u| mu_graph(&acc, u))
}

fn permutation(basis: &Arc<SectorBasis>, f: impl Fn(&Graph) -> Graph) -> Result<LinearOperator, Error> {
    let mut entries = Vec::with_capacity(basis.len());
    for (col, g) in basis.graphs().iter().enumerate() {
        entries.push((basis.require_index(&f(g))?, col, Complex::new(1.0, 0.0)));
    }
    Ok(LinearOperator::from_entries(basis, entries))
}

/// `μ_u` over a marked sector.
pub fn mu(basis: &Arc<SectorBasis>, u: VertexId) -> Result<LinearOperator, Error> {
    permutation(basis, |g| mu_graph(g, u))
}

/// `μ_S` over a marked sector.
pub fn mu_product(basis: &Arc<SectorBasis>, s: VertexSet) -> Result<LinearOperator, Error> {
    permutation(basis, |g| mu_set_graph(g, s))
}
