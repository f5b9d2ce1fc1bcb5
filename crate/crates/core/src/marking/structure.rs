use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{embed, marked_extension, mu, mu_product};
use crate::causal::{find_radius, is_causal, min_local_radius, require_radius, CausalityCertificate, CausalityViolation};
use crate::error::Error;
use crate::graph::VertexId;
use crate::operator::LinearOperator;
use crate::sector::SectorBasis;
use crate::state::StateVector;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecomposeOptions {
    /// Output radius at which a causality certificate is sought.
    pub m: u32,
    pub n_max: u32,
    /// Largest localization radius tried for each gate.
    pub r_max: u32,
    pub eps: f64,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { m: 1, n_max: 3, r_max: 3, eps: crate::DEFAULT_EPS }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GateReport {
    pub vertex: VertexId,
    pub unitarity_residual: f64,
    /// Smallest measured localization radius at the gate's own vertex.
    pub local_radius: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub extension: LinearOperator,
    /// `K_u` for every vertex of the universe, ascending.
    pub gates: Vec<(VertexId, LinearOperator)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionReport {
    pub certificate: CausalityCertificate,
    pub gates: Vec<GateReport>,
    pub max_commutator_residual: f64,
    /// Largest `|U|G⟩ − (∏μ)(∏K)|G⟩|` entry over unmarked basis graphs.
    pub reconstruction_residual: f64,
    pub reconstruction_unitarity_residual: f64,
    /// Difference between the gate product in ascending and descending
    /// vertex order.
    pub order_residual: f64,
    pub checked_graphs: usize,
}

/// `K_u = U′† μ_u U′` for a marked extension `U′`.
pub fn gate(u: VertexId, extension: &LinearOperator) -> Result<LinearOperator, Error> {
    extension.adjoint().compose(&mu(extension.basis(), u)?)?.compose(extension)
}

fn product<'a>(mut ops: impl Iterator<Item = &'a LinearOperator>, basis: &Arc<SectorBasis>) -> Result<LinearOperator, Error> {
    ops.try_fold(LinearOperator::identity(basis), |acc, k| acc.compose(k))
}

/// Builds the gates `K_u` of `u` over `marked` and checks that
/// `(∏μ_u)(∏K_u)` reproduces `u` on every unmarked basis graph.
pub fn decompose_and_verify(
    u: &LinearOperator,
    marked: &Arc<SectorBasis>,
    options: &DecomposeOptions,
) -> Result<(Decomposition, DecompositionReport), Error> {
    let eps = options.eps;
    let residual = u.unitarity_residual();
    if residual > eps {
        return Err(Error::NotUnitary { residual });
    }
    if !u.is_vertex_preserving() {
        return Err(Error::NotVertexPreserving);
    }
    let certificate = require_radius(u, options.m, options.n_max, eps)?;
    let extension = marked_extension(u, marked)?;

    let vertices: Vec<VertexId> = marked.universe().all_vertices().iter().collect();
    let mut gates = Vec::with_capacity(vertices.len());
    for &v in &vertices {
        gates.push((v, gate(v, &extension)?));
    }

    let mut max_commutator_residual: f64 = 0.0;
    for (i, (_, a)) in gates.iter().enumerate() {
        for (_, b) in &gates[i + 1..] {
            max_commutator_residual = max_commutator_residual.max(a.commutator_residual(b)?);
        }
    }

    let forward = product(gates.iter().map(|(_, k)| k), marked)?;
    let backward = product(gates.iter().rev().map(|(_, k)| k), marked)?;
    let order_residual = forward.max_abs_diff(&backward)?;
    let all_marks = mu_product(marked, marked.universe().all_vertices())?;
    let reconstruction = all_marks.compose(&forward)?;

    let plain = u.basis();
    let mut reconstruction_residual: f64 = 0.0;
    for g in plain.graphs() {
        let expected: StateVector = u
            .apply(&StateVector::basis(g.clone()))?
            .iter()
            .map(|(h, a)| (embed(h), *a))
            .collect();
        let actual = reconstruction.apply(&StateVector::basis(embed(g)))?;
        let r = expected.max_abs_diff(&actual);
        if r > eps {
            return Err(Error::ReconstructionMismatch { graph: g.clone(), residual: r });
        }
        reconstruction_residual = reconstruction_residual.max(r);
    }

    let gate_reports = gates
        .iter()
        .map(|(v, k)| GateReport {
            vertex: *v,
            unitarity_residual: k.unitarity_residual(),
            local_radius: min_local_radius(k, *v, options.r_max, eps),
        })
        .collect();

    let report = DecompositionReport {
        certificate,
        gates: gate_reports,
        max_commutator_residual,
        reconstruction_residual,
        reconstruction_unitarity_residual: reconstruction.unitarity_residual(),
        order_residual,
        checked_graphs: plain.len(),
    };
    Ok((Decomposition { extension, gates }, report))
}

/// A causality certificate for `U†` at output radius `m`.
pub fn check_inverse_causal(u: &LinearOperator, m: u32, n_max: u32, eps: f64) -> Result<CausalityCertificate, Error> {
    require_radius(&u.adjoint(), m, n_max, eps)
}

/// Outcome of the 1-causality test and the follow-up full causality runs.
#[derive(Clone, Debug, PartialEq)]
pub struct OneCausalOutcome {
    pub one_causal: Result<CausalityCertificate, CausalityViolation>,
    /// One entry per output radius `m ≤ m_max`, present only when the
    /// 1-causality check passed.
    pub certificates: Vec<(u32, Option<CausalityCertificate>)>,
}

impl OneCausalOutcome {
    pub fn is_one_causal(&self) -> bool {
        self.one_causal.is_ok()
    }

    /// 1-causal, and causal for every tested `m`.
    pub fn passed(&self) -> bool {
        self.is_one_causal() && self.certificates.iter().all(|(_, c)| c.is_some())
    }
}

/// Checks `(UρU†)¹_v = (UρⁿU†)¹_v` on all dyads; when it holds, searches a
/// certificate for every `m ≤ m_max` with `n ≤ n_max`.
pub fn check_one_causal(u: &LinearOperator, n: u32, m_max: u32, n_max: u32, eps: f64) -> OneCausalOutcome {
    let one_causal = is_causal(u, 1, n, eps);
    let certificates = if one_causal.is_ok() {
        (0..=m_max).map(|m| (m, find_radius(u, m, n_max, eps))).collect()
    } else {
        Vec::new()
    };
    OneCausalOutcome { one_causal, certificates }
}
