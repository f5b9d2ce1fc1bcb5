//! Concrete vertex-preserving unitaries: local gates, circuits of them, a
//! fixed-structure shift, and one deliberately non-causal operator.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex;

use crate::error::Error;
use crate::graph::{Edge, Graph, Label, Port, Slot, VertexId};
use crate::operator::{Amplitude, LinearOperator};
use crate::sector::SectorBasis;
use crate::universe::Universe;

const ONE: Amplitude = Complex::new(1.0, 0.0);

#[derive(Clone, Debug)]
pub enum GateKind {
    /// Row-major `|Σ|×|Σ|` unitary applied to the label of `site`.
    LabelUnitary { site: VertexId, matrix: Vec<Amplitude> },
    /// Toggles the loop `site.0–site.1` when `site` carries label 1.
    ControlledToggle { site: VertexId },
    /// Swaps the labels across an edge `site.i–v.j`.
    NeighborSwap { site: VertexId, i: Port, j: Port },
    /// Rotates labels along a fixed cycle joined port 0 to port 1.
    CycleShift { cycle: Vec<VertexId> },
    /// Exchanges `⟨a[0],b[0]⟩` and `⟨a[1],b[1]⟩`.
    JointFlip { a: VertexId, b: VertexId },
    Custom(LinearOperator),
}

#[derive(Clone, Debug)]
pub struct GateDescriptor {
    pub name: String,
    pub kind: GateKind,
}

impl GateDescriptor {
    pub fn new(name: &str, kind: GateKind) -> Self {
        GateDescriptor { name: name.to_string(), kind }
    }
}

fn require_plain(basis: &SectorBasis) -> Result<(), Error> {
    if basis.universe().is_marked() {
        return Err(Error::Precondition("zoo gates act on unmarked sectors"));
    }
    Ok(())
}

fn permutation(basis: &Arc<SectorBasis>, f: impl Fn(&Graph) -> Graph) -> Result<LinearOperator, Error> {
    let mut entries = Vec::with_capacity(basis.len());
    for (col, g) in basis.graphs().iter().enumerate() {
        entries.push((basis.require_index(&f(g))?, col, ONE));
    }
    Ok(LinearOperator::from_entries(basis, entries))
}

pub fn pauli_x() -> Vec<Amplitude> {
    vec![Complex::new(0.0, 0.0), ONE, ONE, Complex::new(0.0, 0.0)]
}

pub fn hadamard() -> Vec<Amplitude> {
    let s = Complex::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
    vec![s, s, s, -s]
}

/// Applies `w` to the label of `u`; graphs where `u` is absent or
/// unlabelled are fixed.
pub fn build_label_unitary(
    basis: &Arc<SectorBasis>,
    w: &[Amplitude],
    u: VertexId,
    eps: f64,
) -> Result<LinearOperator, Error> {
    require_plain(basis)?;
    let k = basis.universe().label_count();
    if w.len() != k * k {
        return Err(Error::Precondition("label matrix must be |Σ|×|Σ|"));
    }
    let mut residual: f64 = 0.0;
    for a in 0..k {
        for b in 0..k {
            let dot: Amplitude = (0..k).map(|r| w[r * k + a].conj() * w[r * k + b]).sum();
            let target = if a == b { 1.0 } else { 0.0 };
            residual = residual.max((dot - target).norm());
        }
    }
    if residual > eps {
        return Err(Error::NotUnitary { residual });
    }
    let mut entries = Vec::new();
    for (col, g) in basis.graphs().iter().enumerate() {
        match g.label(u) {
            Some(l) => {
                for out in 0..k {
                    let a = w[out * k + usize::from(l.0)];
                    if a != Complex::new(0.0, 0.0) {
                        let h = g.with_label(u, Some(Label(out as u16)));
                        entries.push((basis.require_index(&h)?, col, a));
                    }
                }
            }
            None => entries.push((col, col, ONE)),
        }
    }
    Ok(LinearOperator::from_entries(basis, entries))
}

/// Creates or removes the loop `u.0–u.1` when `u` has label 1 and both
/// ports are otherwise free.
pub fn build_controlled_toggle(basis: &Arc<SectorBasis>, u: VertexId) -> Result<LinearOperator, Error> {
    require_plain(basis)?;
    let uni = basis.universe();
    if uni.port_count() < 2 || uni.label_count() < 2 {
        return Err(Error::Precondition("controlled toggle needs two ports and two labels"));
    }
    let (p0, p1) = (Slot::new(u, Port(0)), Slot::new(u, Port(1)));
    let lp = Edge::new(p0, p1).expect("distinct ports");
    permutation(basis, |g| {
        if g.label(u) != Some(Label(1)) {
            return g.clone();
        }
        if g.edges().contains(&lp) {
            g.with_edges(g.edges().iter().copied().filter(|e| *e != lp)).expect("removal is valid")
        } else if !g.is_occupied(p0) && !g.is_occupied(p1) {
            g.with_edges(g.edges().iter().copied().chain([lp])).expect("both ports free")
        } else {
            g.clone()
        }
    })
}

/// Swaps the labels of `u` and its neighbour across `u.i–v.j` when both
/// are labelled.
pub fn build_neighbor_swap(basis: &Arc<SectorBasis>, u: VertexId, i: Port, j: Port) -> Result<LinearOperator, Error> {
    require_plain(basis)?;
    permutation(basis, |g| match g.partner(Slot::new(u, i)) {
        Some(s) if s.port == j && s.vertex != u => match (g.label(u), g.label(s.vertex)) {
            (Some(a), Some(b)) => g.with_label(u, Some(b)).with_label(s.vertex, Some(a)),
            _ => g.clone(),
        },
        _ => g.clone(),
    })
}

/// Rotates labels one step along `cycle` on graphs whose edge set is
/// exactly `{c_k.0 – c_{k+1}.1}`; other graphs are fixed.
pub fn build_cycle_shift(basis: &Arc<SectorBasis>, cycle: &[VertexId]) -> Result<LinearOperator, Error> {
    require_plain(basis)?;
    if cycle.len() < 2 || basis.universe().port_count() < 2 {
        return Err(Error::Precondition("cycle shift needs two vertices and two ports"));
    }
    let mut structure: Vec<Edge> = (0..cycle.len())
        .map(|k| {
            let next = cycle[(k + 1) % cycle.len()];
            Edge::new(Slot::new(cycle[k], Port(0)), Slot::new(next, Port(1)))
                .ok_or(Error::Precondition("cycle repeats a vertex"))
        })
        .collect::<Result<_, _>>()?;
    structure.sort_unstable();
    permutation(basis, |g| {
        if g.edges() != structure.as_slice() {
            return g.clone();
        }
        let mut out = g.clone();
        for k in 0..cycle.len() {
            out = out.with_label(cycle[(k + 1) % cycle.len()], g.label(cycle[k]));
        }
        out
    })
}

/// Exchanges `⟨a[0],b[0]⟩` and `⟨a[1],b[1]⟩` (no edges) and fixes every
/// other graph. It correlates vertices with disjoint disks, so it is not
/// causal.
pub fn joint_flip(basis: &Arc<SectorBasis>, a: VertexId, b: VertexId) -> Result<LinearOperator, Error> {
    require_plain(basis)?;
    let make = |l| Graph::new([(a, Some(Label(l))), (b, Some(Label(l)))], []);
    let (g0, g1) = (make(0)?, make(1)?);
    permutation(basis, |g| {
        if *g == g0 {
            g1.clone()
        } else if *g == g1 {
            g0.clone()
        } else {
            g.clone()
        }
    })
}

pub fn build(basis: &Arc<SectorBasis>, gate: &GateDescriptor, eps: f64) -> Result<LinearOperator, Error> {
    match &gate.kind {
        GateKind::LabelUnitary { site, matrix } => build_label_unitary(basis, matrix, *site, eps),
        GateKind::ControlledToggle { site } => build_controlled_toggle(basis, *site),
        GateKind::NeighborSwap { site, i, j } => build_neighbor_swap(basis, *site, *i, *j),
        GateKind::CycleShift { cycle } => build_cycle_shift(basis, cycle),
        GateKind::JointFlip { a, b } => joint_flip(basis, *a, *b),
        GateKind::Custom(op) => {
            if !op.basis().universe().eq(basis.universe()) {
                return Err(Error::BasisMismatch);
            }
            Ok(op.clone())
        }
    }
}

/// Product of `gates` applied in listed order: the first gate acts first.
pub fn build_circuit(basis: &Arc<SectorBasis>, gates: &[GateDescriptor], eps: f64) -> Result<LinearOperator, Error> {
    gates
        .iter()
        .try_fold(LinearOperator::identity(basis), |acc, g| build(basis, g, eps)?.compose(&acc))
}

/// A named catalog entry with the sector it ships on.
#[derive(Clone, Debug)]
pub struct ZooEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub vertices: usize,
    pub labels: usize,
    pub ports: u16,
    pub gates: Vec<GateDescriptor>,
    /// Measured `n` for `m = 1` on the shipped sector; `None` for the
    /// negative control.
    pub expected_n: Option<u32>,
}

impl ZooEntry {
    pub fn is_causal(&self) -> bool {
        self.expected_n.is_some()
    }

    pub fn universe(&self) -> Universe {
        let names = ["a", "b", "c", "d", "e", "f"];
        let labels: Vec<String> = (0..self.labels).map(|l| l.to_string()).collect();
        Universe::new(
            names[..self.vertices].iter().map(|s| s.to_string()).collect(),
            labels,
            self.ports,
        )
        .expect("catalog universes are valid")
    }

    pub fn build(&self, cap: usize, eps: f64) -> Result<(Arc<SectorBasis>, LinearOperator), Error> {
        let basis = Arc::new(SectorBasis::enumerate(&self.universe(), cap)?);
        let op = build_circuit(&basis, &self.gates, eps)?;
        Ok((basis, op))
    }
}

const A: VertexId = VertexId(0);
const B: VertexId = VertexId(1);
const C: VertexId = VertexId(2);

fn label(site: VertexId, matrix: Vec<Amplitude>, name: &str) -> GateDescriptor {
    GateDescriptor::new(name, GateKind::LabelUnitary { site, matrix })
}

fn toggle(site: VertexId) -> GateDescriptor {
    GateDescriptor::new("toggle", GateKind::ControlledToggle { site })
}

fn swap(site: VertexId) -> GateDescriptor {
    GateDescriptor::new("swap", GateKind::NeighborSwap { site, i: Port(0), j: Port(1) })
}

/// Every catalog entry. All but `joint-flip` are causal on their sector.
pub fn catalog() -> Vec<ZooEntry> {
    let e = |name, summary, vertices, labels, gates, expected_n| ZooEntry {
        name,
        summary,
        vertices,
        labels,
        ports: 2,
        gates,
        expected_n,
    };
    vec![
        e("identity", "the identity", 2, 2, vec![], Some(1)),
        e("label-flip-a", "X on the label of a", 2, 2, vec![label(A, pauli_x(), "x")], Some(1)),
        e("hadamard-a", "Hadamard on the label of a", 2, 2, vec![label(A, hadamard(), "h")], Some(1)),
        e("toggle-a", "loop toggle at a controlled by label 1", 2, 2, vec![toggle(A)], Some(1)),
        e(
            "toggle-circuit",
            "Hadamard at a, then the controlled toggle at a",
            2,
            2,
            vec![label(A, hadamard(), "h"), toggle(A)],
            Some(1),
        ),
        e("swap-a", "label swap across a.0-b.1", 2, 2, vec![swap(A)], Some(1)),
        e("toggle-pair", "controlled toggles at a and b", 2, 2, vec![toggle(A), toggle(B)], Some(1)),
        e("swap-pair", "label swaps at a then at b", 2, 2, vec![swap(A), swap(B)], Some(1)),
        e(
            "cycle-shift-3",
            "label rotation along the cycle a.0-b.1, b.0-c.1, c.0-a.1",
            3,
            1,
            vec![GateDescriptor::new("shift", GateKind::CycleShift { cycle: vec![A, B, C] })],
            Some(1),
        ),
        e(
            "joint-flip",
            "swaps <a[0],b[0]> and <a[1],b[1]>; not causal",
            2,
            2,
            vec![GateDescriptor::new("flip", GateKind::JointFlip { a: A, b: B })],
            None,
        ),
    ]
}

