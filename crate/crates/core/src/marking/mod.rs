//! Marked graphs, the mark operator and the constructive decomposition.
//!
//! In a marked universe every label and port code carries a mark bit in its
//! low bit. A marked graph mirrors the mark of each vertex onto the opposite
//! port of every incident edge. An unlabelled vertex has no mark of its own:
//! its effective mark is the common mark of those opposite ports, and an
//! isolated unlabelled vertex counts as unmarked.

mod extension;
mod mu;
mod phi;
mod structure;

pub use extension::marked_extension;
pub use mu::{mu, mu_graph, mu_product, mu_set_graph};
pub use phi::{phi, phi_inv, GatePair};
pub use structure::{
    check_inverse_causal, check_one_causal, decompose_and_verify, gate, DecomposeOptions,
    Decomposition, DecompositionReport, GateReport, OneCausalOutcome,
};

use alloc::vec::Vec;

use crate::graph::{Edge, Graph, Label, Port, Slot, VertexId, VertexSet};

pub(crate) fn label_mark(l: Label) -> bool {
    l.0 & 1 == 1
}

pub(crate) fn port_mark(p: Port) -> bool {
    p.0 & 1 == 1
}

pub(crate) fn toggle_label(l: Label) -> Label {
    Label(l.0 ^ 1)
}

pub(crate) fn toggle_port(p: Port) -> Port {
    Port(p.0 ^ 1)
}

/// Effective mark of `u` in `g`: `Some(bit)` when all mark sources agree,
/// `None` on disagreement. Absent or isolated unlabelled vertices read as
/// unmarked.
pub fn effective_mark(g: &Graph, u: VertexId) -> Option<bool> {
    let mut mark = g.label(u).map(label_mark);
    for e in g.edges() {
        let (a, b) = e.slots();
        for (s, far) in [(a, b), (b, a)] {
            if s.vertex == u {
                let m = port_mark(far.port);
                match mark {
                    None => mark = Some(m),
                    Some(x) if x != m => return None,
                    _ => {}
                }
            }
        }
    }
    Some(mark.unwrap_or(false))
}

/// True iff every vertex has a well-defined effective mark.
pub fn is_mark_consistent(g: &Graph) -> bool {
    g.vertices().all(|u| effective_mark(g, u).is_some())
}

/// Vertices whose effective mark is 1.
pub fn marked_vertices(g: &Graph) -> VertexSet {
    g.vertices().filter(|&u| effective_mark(g, u) == Some(true)).collect()
}

/// Identifies a plain graph with the marked graph carrying only 0 marks.
pub fn embed(g: &Graph) -> Graph {
    let vertices = g
        .labelled_vertices()
        .iter()
        .map(|&(v, l)| (v, l.map(|l| Label(2 * l.0))))
        .collect();
    let edges = g.edges().iter().map(|e| map_ports(e, |p| Port(2 * p.0))).collect();
    Graph::from_sorted(vertices, edges)
}

/// Inverse of [`embed`]; `None` if any label or port carries mark 1.
pub fn strip(g: &Graph) -> Option<Graph> {
    let mut vertices = Vec::with_capacity(g.vertex_count());
    for &(v, l) in g.labelled_vertices() {
        if l.is_some_and(label_mark) {
            return None;
        }
        vertices.push((v, l.map(|l| Label(l.0 / 2))));
    }
    let mut edges = Vec::with_capacity(g.edges().len());
    for e in g.edges() {
        let (a, b) = e.slots();
        if port_mark(a.port) || port_mark(b.port) {
            return None;
        }
        edges.push(map_ports(e, |p| Port(p.0 / 2)));
    }
    Some(Graph::from_sorted(vertices, edges))
}

// Port maps used here are strictly monotone, so normalization is preserved.
fn map_ports(e: &Edge, f: impl Fn(Port) -> Port) -> Edge {
    let (a, b) = e.slots();
    Edge::new(Slot::new(a.vertex, f(a.port)), Slot::new(b.vertex, f(b.port))).expect("distinct")
}
