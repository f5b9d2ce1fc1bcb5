//! Result documents written by the command-line tool.
//!
//! Every artifact records the run configuration, including the seed, and
//! the SHA-256 of each input file.

use qcgd_core::causal::{CausalityCertificate, CausalityViolation, LocalityViolation};
use qcgd_core::{Amplitude, SectorBasis, Universe};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::formats::{InputRecord, UniverseSpec};
use crate::notation;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub config: RunConfig,
    pub inputs: Vec<InputRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub m: u32,
    pub n: u32,
    pub verified_dyad_count: u64,
    pub max_residual: f64,
}

impl From<&CausalityCertificate> for CertificateJson {
    fn from(c: &CausalityCertificate) -> Self {
        CertificateJson { m: c.m, n: c.n, verified_dyad_count: c.verified_dyad_count, max_residual: c.max_residual }
    }
}

/// The first failing `(G, H, v)` triple of a causality sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CausalWitness {
    pub m: u32,
    pub n: u32,
    pub row: String,
    pub col: String,
    pub vertex: String,
    pub residual: f64,
}

impl CausalWitness {
    pub fn new(basis: &SectorBasis, v: &CausalityViolation) -> Self {
        let u = basis.universe();
        CausalWitness {
            m: v.m,
            n: v.n,
            row: notation::format(u, basis.graph(v.row)),
            col: notation::format(u, basis.graph(v.col)),
            vertex: u.vertex_name(v.vertex).to_string(),
            residual: v.residual,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalWitness {
    pub row: String,
    pub col: String,
    pub actual: [f64; 2],
    pub expected: [f64; 2],
}

fn pair(a: Amplitude) -> [f64; 2] {
    [a.re, a.im]
}

impl LocalWitness {
    pub fn new(basis: &SectorBasis, v: &LocalityViolation) -> Self {
        let u = basis.universe();
        LocalWitness {
            row: notation::format(u, basis.graph(v.row)),
            col: notation::format(u, basis.graph(v.col)),
            actual: pair(v.actual),
            expected: pair(v.expected),
        }
    }
}

/// Output of `verify causal`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CausalReport {
    pub kind: String,
    pub provenance: Provenance,
    pub universe: UniverseSpec,
    pub operator_sha256: String,
    pub m: u32,
    /// The requested `n`, or the search bound when `n` was searched.
    pub n: u32,
    pub verified: bool,
    pub certificate: Option<CertificateJson>,
    pub witness: Option<CausalWitness>,
    /// Largest residual over random density operators, when sampled.
    pub sampled_residual: Option<f64>,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalReport {
    pub kind: String,
    pub provenance: Provenance,
    pub universe: UniverseSpec,
    pub operator_sha256: String,
    pub vertex: String,
    pub radius: u32,
    pub localized: bool,
    pub min_radius: Option<u32>,
    pub witness: Option<LocalWitness>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualReport {
    pub kind: String,
    pub provenance: Provenance,
    pub universe: UniverseSpec,
    pub vertex: String,
    pub certificate: Option<CertificateJson>,
    pub witness: Option<CausalWitness>,
    /// `max |Tr(Aρ) − Tr(Aρ^m_v)|` over basis dyads.
    pub observable_dual_residual: f64,
    /// Whether `U†AU` is `n`-localized; absent when no certificate.
    pub heisenberg_localized: Option<bool>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateEntry {
    pub vertex: String,
    pub file: String,
    pub sha256: String,
    pub unitarity_residual: f64,
    pub local_radius: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecomposeManifest {
    pub kind: String,
    pub provenance: Provenance,
    pub universe: UniverseSpec,
    pub operator_sha256: String,
    pub certificate: CertificateJson,
    pub gates: Vec<GateEntry>,
    pub max_commutator_residual: f64,
    pub reconstruction_residual: f64,
    pub reconstruction_unitarity_residual: f64,
    pub order_residual: f64,
    pub checked_graphs: usize,
    pub log: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZooManifest {
    pub kind: String,
    pub provenance: Provenance,
    pub name: String,
    pub summary: String,
    pub universe: UniverseSpec,
    pub sector_size: usize,
    pub gates: Vec<String>,
    pub operator_file: String,
    pub operator_sha256: String,
    pub unitarity_residual: f64,
    pub vertex_preserving: bool,
    /// Causality at `m = 1`, searched up to `n_max`.
    pub certificate: Option<CertificateJson>,
    pub witness: Option<CausalWitness>,
    pub inverse_certificate: Option<CertificateJson>,
    /// Smallest `n ≤ n_max` for each output radius `m ≤ m_max`.
    pub radius_by_m: Vec<(u32, Option<u32>)>,
    pub expected_n: Option<u32>,
    /// Smallest localization radius at each vertex, up to `r_max`.
    pub local_radii: Vec<(String, Option<u32>)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorReport {
    pub kind: String,
    pub provenance: Provenance,
    pub universe: UniverseSpec,
    pub count: usize,
    pub graphs: Vec<String>,
}

impl SectorReport {
    pub fn new(provenance: Provenance, basis: &SectorBasis) -> Self {
        let u: &Universe = basis.universe();
        SectorReport {
            kind: "sector".into(),
            provenance,
            universe: UniverseSpec::from_universe(u),
            count: basis.len(),
            graphs: basis.graphs().iter().map(|g| notation::format(u, g)).collect(),
        }
    }
}
