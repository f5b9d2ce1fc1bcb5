//! JSON file formats for universes, graphs, states and operators.
//!
//! A graph is `{"vertices": [{"id": "a", "label": "0"}], "edges": [[["a", 0],
//! ["b", 1]]]}` with `"label": null` for unlabelled vertices. Over a marked
//! universe vertices gain `"mark": true` and slots a third element, the port
//! mark. States and operators carry their universe and list terms in
//! canonical order, keyed by graph notation.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use qcgd_core::{Amplitude, Edge, Graph, LinearOperator, SectorBasis, Slot, StateVector, Universe};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::artifacts::Provenance;
use crate::error::{Error, Result};
use crate::notation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniverseSpec {
    pub vertices: Vec<String>,
    pub labels: Vec<String>,
    pub ports: u16,
    #[serde(default, skip_serializing_if = "is_false")]
    pub marked: bool,
}

fn is_false(b: &bool) -> bool {
    !*b
}

impl UniverseSpec {
    pub fn from_universe(u: &Universe) -> Self {
        UniverseSpec {
            vertices: u.vertex_names().to_vec(),
            labels: u.base_label_names().to_vec(),
            ports: u.base_port_count(),
            marked: u.is_marked(),
        }
    }

    pub fn to_universe(&self) -> Result<Universe> {
        let u = Universe::new(self.vertices.clone(), self.labels.clone(), self.ports)
            .map_err(|e| Error::Config(e.to_string()))?;
        notation::check_names(&u)?;
        Ok(if self.marked { u.marked() } else { u })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: String,
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub mark: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SlotJson {
    Plain(String, u16),
    Marked(String, u16, bool),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<[SlotJson; 2]>,
}

impl GraphJson {
    pub fn from_graph(u: &Universe, g: &Graph) -> Self {
        let slot = |s: Slot| {
            let name = u.vertex_name(s.vertex).to_string();
            let (p, m) = u.port_parts(s.port);
            if u.is_marked() {
                SlotJson::Marked(name, p, m)
            } else {
                SlotJson::Plain(name, p)
            }
        };
        let vertices = g
            .labelled_vertices()
            .iter()
            .map(|&(v, l)| {
                let (label, mark) = match l {
                    Some(l) => {
                        let (name, m) = u.label_parts(l);
                        (Some(name.to_string()), m)
                    }
                    None => (None, false),
                };
                VertexJson { id: u.vertex_name(v).to_string(), label, mark }
            })
            .collect();
        let edges = g
            .edges()
            .iter()
            .map(|e| {
                let (a, b) = e.slots();
                [slot(a), slot(b)]
            })
            .collect();
        GraphJson { vertices, edges }
    }

    pub fn to_graph(&self, u: &Universe) -> Result<Graph> {
        let bad = |msg: String| Error::Malformed { path: "graph".into(), msg };
        let vertex = |id: &str| u.vertex_id(id).ok_or_else(|| bad(format!("unknown vertex {id:?}")));
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            let label = match &v.label {
                None if v.mark => return Err(bad(format!("unlabelled vertex {} carries a mark", v.id))),
                None => None,
                Some(l) => Some(u.label_code(l, v.mark).ok_or_else(|| bad(format!("unknown label {l:?}")))?),
            };
            vertices.push((vertex(&v.id)?, label));
        }
        let slot = |s: &SlotJson| -> Result<Slot> {
            let (id, p, m) = match s {
                SlotJson::Plain(id, p) => (id, *p, false),
                SlotJson::Marked(id, p, m) => (id, *p, *m),
            };
            let port = u.port_code(p, m).ok_or_else(|| bad(format!("port {p} outside the universe")))?;
            Ok(Slot { vertex: vertex(id)?, port })
        };
        let mut edges = Vec::with_capacity(self.edges.len());
        for [a, b] in &self.edges {
            edges.push(Edge::new(slot(a)?, slot(b)?).ok_or_else(|| bad("degenerate edge".into()))?);
        }
        let g = Graph::new(vertices, edges).map_err(|e| bad(e.to_string()))?;
        if !u.admits(&g) {
            return Err(bad(format!("{} does not fit the universe", notation::format(u, &g))));
        }
        Ok(g)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub key: String,
    pub graph: GraphJson,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub universe: UniverseSpec,
    pub terms: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl StateFile {
    pub fn new(u: &Universe, psi: &StateVector) -> Self {
        let terms = psi
            .support()
            .map(|(g, a)| TermJson {
                key: notation::format(u, g),
                graph: GraphJson::from_graph(u, g),
                re: a.re,
                im: a.im,
            })
            .collect();
        StateFile { universe: UniverseSpec::from_universe(u), terms, provenance: None }
    }

    pub fn decode(&self) -> Result<(Universe, StateVector)> {
        let u = self.universe.to_universe()?;
        let mut psi = StateVector::zero();
        for t in &self.terms {
            let g = t.graph.to_graph(&u)?;
            if notation::parse(&u, &t.key)? != g {
                return Err(Error::Malformed { path: "state".into(), msg: format!("key {} disagrees with its graph", t.key) });
            }
            psi.add(g, Amplitude::new(t.re, t.im));
        }
        Ok((u, psi))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryJson {
    pub row: String,
    pub col: String,
    pub re: f64,
    pub im: f64,
}

/// Sparse operator over the sector of `universe`, entries ordered by
/// column then row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorFile {
    pub universe: UniverseSpec,
    pub dim: usize,
    pub entries: Vec<EntryJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl OperatorFile {
    pub fn new(op: &LinearOperator) -> Self {
        let basis = op.basis();
        let u = basis.universe();
        let mut entries = Vec::with_capacity(op.nnz());
        for col in 0..op.dim() {
            for &(row, a) in op.column(col) {
                entries.push(EntryJson {
                    row: notation::format(u, basis.graph(row as usize)),
                    col: notation::format(u, basis.graph(col)),
                    re: a.re,
                    im: a.im,
                });
            }
        }
        OperatorFile { universe: UniverseSpec::from_universe(u), dim: op.dim(), entries, provenance: None }
    }

    pub fn decode(&self, cap: usize) -> Result<LinearOperator> {
        let u = self.universe.to_universe()?;
        let basis = Arc::new(SectorBasis::enumerate(&u, cap)?);
        if basis.len() != self.dim {
            return Err(Error::Malformed {
                path: "operator".into(),
                msg: format!("dim {} but the sector has {} elements", self.dim, basis.len()),
            });
        }
        let mut triplets = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let row = basis.require_index(&notation::parse(&u, &e.row)?)?;
            let col = basis.require_index(&notation::parse(&u, &e.col)?)?;
            triplets.push((row, col, Amplitude::new(e.re, e.im)));
        }
        Ok(LinearOperator::from_entries(&basis, triplets))
    }
}

/// A file read from disk along with its SHA-256.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputRecord {
    pub path: String,
    pub sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<(T, InputRecord)> {
    let bytes = fs::read(path).map_err(|source| Error::Read { path: path.into(), source })?;
    let value = serde_json::from_slice(&bytes)
        .map_err(|source| Error::Json { path: path.display().to_string(), source })?;
    Ok((value, InputRecord { path: path.display().to_string(), sha256: sha256_hex(&bytes) }))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| Error::Write { path: dir.into(), source })?;
    }
    fs::write(path, text).map_err(|source| Error::Write { path: path.into(), source })
}

pub fn load_universe(path: &Path) -> Result<(Universe, InputRecord)> {
    let (spec, rec): (UniverseSpec, _) = read_json(path)?;
    Ok((spec.to_universe()?, rec))
}

pub fn load_state(path: &Path) -> Result<(Universe, StateVector, InputRecord)> {
    let (file, rec): (StateFile, _) = read_json(path)?;
    let (u, psi) = file.decode().map_err(|e| relabel(e, path))?;
    Ok((u, psi, rec))
}

pub fn load_operator(path: &Path, cap: usize) -> Result<(LinearOperator, InputRecord)> {
    let (file, rec): (OperatorFile, _) = read_json(path)?;
    let op = file.decode(cap).map_err(|e| relabel(e, path))?;
    Ok((op, rec))
}

fn relabel(e: Error, path: &Path) -> Error {
    match e {
        Error::Malformed { msg, .. } => Error::Malformed { path: path.display().to_string(), msg },
        other => other,
    }
}
