use alloc::string::String;
use core::fmt;

use crate::causal::CausalityViolation;
use crate::graph::{Graph, Slot, VertexId};

/// Errors produced by the graph algebra, the operator layer and the
/// verification procedures.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A vertex appears twice in a graph description.
    DuplicateVertex(VertexId),
    /// An edge endpoint refers to a vertex that is not in the graph.
    MissingEndpoint(VertexId),
    /// Two distinct edges share a slot.
    SlotReused(Slot),
    /// An edge joins a slot to itself.
    DegenerateEdge(Slot),
    /// Union of graphs that disagree on a label or a slot.
    Inconsistent,
    /// Universe construction failed.
    InvalidUniverse(String),
    /// A graph uses a vertex, label or port outside its universe.
    OutsideUniverse(Graph),
    /// Sector enumeration would exceed the configured cap.
    CapExceeded { count: u128, cap: usize },
    /// Generalized tensor of two supports containing an inconsistent pair.
    InconsistentSupport { left: Graph, right: Graph },
    /// Operands live over different bases.
    BasisMismatch,
    /// A graph is not an element of the operand's basis.
    OutsideBasis(Graph),
    /// An operator or parameter matrix failed the unitarity check.
    NotUnitary { residual: f64 },
    /// An operator maps a graph onto graphs with a different vertex set.
    NotVertexPreserving,
    /// A marked graph violates mark consistency.
    InvalidMarkedGraph(Graph),
    /// A pair handed to the inverse embedding is not in its image.
    OutsideImage,
    /// The marked extension left the embedded subspace at this element.
    StabilityViolation(Graph),
    /// No causality certificate was found within the search bound.
    NotCausal(CausalityViolation),
    /// The gate product did not reproduce the operator on this graph.
    ReconstructionMismatch { graph: Graph, residual: f64 },
    /// A gate or check was asked for something its inputs cannot provide.
    Precondition(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DuplicateVertex(v) => write!(f, "vertex {} listed twice", v.0),
            Error::MissingEndpoint(v) => write!(f, "edge endpoint {} is not a vertex of the graph", v.0),
            Error::SlotReused(s) => write!(f, "slot {}.{} used by two edges", s.vertex.0, s.port.0),
            Error::DegenerateEdge(s) => write!(f, "edge joins slot {}.{} to itself", s.vertex.0, s.port.0),
            Error::Inconsistent => f.write_str("graphs are not consistent"),
            Error::InvalidUniverse(msg) => write!(f, "invalid universe: {msg}"),
            Error::OutsideUniverse(g) => write!(f, "graph {g:?} does not fit the universe"),
            Error::CapExceeded { count, cap } => {
                write!(f, "sector has {count} basis elements, cap is {cap}")
            }
            Error::InconsistentSupport { left, right } => {
                write!(f, "inconsistent support pair {left:?} and {right:?}")
            }
            Error::BasisMismatch => f.write_str("operands are defined over different bases"),
            Error::OutsideBasis(g) => write!(f, "graph {g:?} is not in the basis"),
            Error::NotUnitary { residual } => write!(f, "not unitary (residual {residual:e})"),
            Error::NotVertexPreserving => f.write_str("operator is not vertex preserving"),
            Error::InvalidMarkedGraph(g) => write!(f, "graph {g:?} violates mark consistency"),
            Error::OutsideImage => f.write_str("pair is outside the image of the embedding"),
            Error::StabilityViolation(g) => {
                write!(f, "marked extension leaves the embedded subspace at {g:?}")
            }
            Error::NotCausal(v) => write!(f, "not causal: {v}"),
            Error::ReconstructionMismatch { graph, residual } => {
                write!(f, "reconstruction mismatch at {graph:?} (residual {residual:e})")
            }
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
