use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use qcgd_core::causal::{
    causality_residual_on, dual_causality_check, dual_localization_residual, is_causal, locality_violation,
    min_local_radius, CausalityViolation,
};
use qcgd_core::marking::{self, decompose_and_verify, DecomposeOptions};
use qcgd_core::trace::partial_trace;
use qcgd_core::zoo::{self, ZooEntry};
use qcgd_core::{Graph, LinearOperator, SectorBasis, StateVector, Universe, VertexId};
use serde::Serialize;

use crate::artifacts::*;
use crate::config::{RunConfig, CONFIG_ENV};
use crate::error::{Error, Result};
use crate::formats::{self, sha256_hex, to_json, write_text, GraphJson, InputRecord, OperatorFile, StateFile, UniverseSpec};
use crate::{export, notation, random};

#[derive(Parser, Debug)]
#[command(author, version, about = "Causal unitary dynamics on port graphs over finite sectors", long_about = None)]
pub struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true, env = CONFIG_ENV)]
    pub config: Option<PathBuf>,
    /// Universe file, overriding the configured universe.
    #[arg(long, global = true)]
    pub universe: Option<PathBuf>,
    #[arg(long, global = true)]
    pub eps: Option<f64>,
    #[arg(long, global = true)]
    pub nmax: Option<u32>,
    #[arg(long, global = true)]
    pub mmax: Option<u32>,
    #[arg(long, global = true)]
    pub rmax: Option<u32>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest sector to enumerate.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Output file, or directory for `decompose`. JSON goes to stdout when
    /// absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate the sector of the configured universe.
    Sector {
        #[command(subcommand)]
        cmd: SectorCmd,
    },
    /// States: tensor products and partial traces.
    State {
        #[command(subcommand)]
        cmd: StateCmd,
    },
    /// Operator algebra.
    Op {
        #[command(subcommand)]
        cmd: OpCmd,
    },
    /// Causality, localization and dual causality checks.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Mark operators, the pair map and marked extensions.
    Mark {
        #[command(subcommand)]
        cmd: MarkCmd,
    },
    /// Decompose a causal unitary into mark operators and local gates.
    Decompose {
        #[arg(long)]
        op: PathBuf,
        /// Output radius of the causality certificate.
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// Built-in example dynamics.
    Zoo {
        #[command(subcommand)]
        cmd: ZooCmd,
    },
    /// Render a state for figures.
    Export {
        #[command(subcommand)]
        cmd: ExportCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum SectorCmd {
    Enumerate,
}

/// A state argument is a state file or a graph literal such as `<a[0]>`.
#[derive(Subcommand, Debug)]
pub enum StateCmd {
    Tensor { left: String, right: String },
    /// Partial trace of `|ψ⟩⟨ψ|`, written as an operator.
    Trace {
        #[arg(long)]
        state: String,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        radius: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum OpCmd {
    Apply {
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        state: String,
    },
    /// `left ∘ right`: right acts first.
    Compose { left: PathBuf, right: PathBuf },
    Adjoint {
        #[arg(long)]
        op: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Exhaustive causality check; searches `n ≤ nmax` when `--n` is absent.
    Causal {
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: Option<u32>,
        /// Random density operators to corroborate a certificate with.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Localization at a vertex; reports the smallest radius up to rmax.
    Local {
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long, default_value_t = 0)]
        radius: u32,
    },
    /// Checks that `U†AU` is n-localized for an m-localized `A`.
    Dual {
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        observable: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum MarkCmd {
    /// The mark operator at a vertex over the marked sector.
    Mu {
        #[arg(long)]
        vertex: String,
    },
    /// Splits a marked graph into its unmarked part and marked remainder.
    Phi { graph: String },
    /// The marked extension of an operator.
    Extend {
        #[arg(long)]
        op: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum ZooCmd {
    List,
    Build { name: String },
}

#[derive(Subcommand, Debug)]
pub enum ExportCmd {
    Dot { state: String },
    Json { state: String },
}

/// Whether a command verified what it was asked to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Verified,
    Failed,
}

impl Outcome {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Verified
        } else {
            Outcome::Failed
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Verified => 0,
            Outcome::Failed => 1,
        }
    }
}

struct Context {
    cfg: RunConfig,
    inputs: Vec<InputRecord>,
    out: Option<PathBuf>,
}

impl Context {
    fn new(cli: &Cli) -> Result<Self> {
        let mut inputs = Vec::new();
        let mut cfg = match &cli.config {
            Some(path) => {
                let (cfg, rec) = RunConfig::load(path)?;
                inputs.push(rec);
                cfg
            }
            None => RunConfig::default(),
        };
        if let Some(path) = &cli.universe {
            let (u, rec) = formats::load_universe(path)?;
            cfg.universe = UniverseSpec::from_universe(&u);
            inputs.push(rec);
        }
        cfg.eps = cli.eps.unwrap_or(cfg.eps);
        cfg.n_max = cli.nmax.unwrap_or(cfg.n_max);
        cfg.m_max = cli.mmax.unwrap_or(cfg.m_max);
        cfg.r_max = cli.rmax.unwrap_or(cfg.r_max);
        cfg.seed = cli.seed.unwrap_or(cfg.seed);
        cfg.cap = cli.cap.unwrap_or(cfg.cap);
        cfg.validate()?;
        Ok(Context { cfg, inputs, out: cli.out.clone() })
    }

    fn provenance(&self, extra: &[&InputRecord]) -> Provenance {
        let mut inputs = self.inputs.clone();
        inputs.extend(extra.iter().map(|r| (*r).clone()));
        Provenance { config: self.cfg.clone(), inputs }
    }

    fn sector(&self, u: &Universe) -> Result<Arc<SectorBasis>> {
        Ok(Arc::new(SectorBasis::enumerate(u, self.cfg.cap)?))
    }

    fn operator(&self, path: &Path) -> Result<(LinearOperator, InputRecord)> {
        formats::load_operator(path, self.cfg.cap)
    }

    /// A state file, or a graph literal over the configured universe.
    fn state(&self, arg: &str) -> Result<(Universe, StateVector, Option<InputRecord>)> {
        if arg.starts_with('<') || arg.starts_with('⟨') {
            let u = self.cfg.universe()?;
            let g = notation::parse(&u, arg)?;
            return Ok((u, StateVector::basis(g), None));
        }
        let (u, psi, rec) = formats::load_state(Path::new(arg))?;
        Ok((u, psi, Some(rec)))
    }

    /// Writes `doc` to `--out` and `summary` to stdout, or `doc` to stdout
    /// and `summary` to stderr.
    fn emit(&self, doc: &str, summary: &str) -> Result<()> {
        match &self.out {
            Some(path) => {
                write_text(path, doc)?;
                println!("{summary}");
            }
            None => {
                print!("{doc}");
                eprintln!("{summary}");
            }
        }
        Ok(())
    }

    fn emit_json<T: Serialize>(&self, doc: &T, summary: &str) -> Result<()> {
        self.emit(&to_json(doc), summary)
    }

    fn emit_operator(&self, op: &LinearOperator, extra: &[&InputRecord], summary: &str) -> Result<()> {
        let mut file = OperatorFile::new(op);
        file.provenance = Some(self.provenance(extra));
        self.emit_json(&file, summary)
    }

    fn emit_state(&self, u: &Universe, psi: &StateVector, extra: &[&InputRecord], summary: &str) -> Result<()> {
        let mut file = StateFile::new(u, psi);
        file.provenance = Some(self.provenance(extra));
        self.emit_json(&file, summary)
    }
}

fn vertex(u: &Universe, name: &str) -> Result<VertexId> {
    u.vertex_id(name).ok_or_else(|| Error::Config(format!("unknown vertex {name:?}")))
}

fn same_universe(a: &Universe, b: &Universe) -> Result<()> {
    if a != b {
        return Err(Error::BasisMismatch(format!(
            "universes differ: {:?} vs {:?}",
            UniverseSpec::from_universe(a),
            UniverseSpec::from_universe(b)
        )));
    }
    Ok(())
}

fn describe(op: &LinearOperator, g: &Graph) -> String {
    notation::format(op.basis().universe(), g)
}

pub fn run(cli: Cli) -> Result<Outcome> {
    let ctx = Context::new(&cli)?;
    match cli.command {
        Command::Sector { cmd: SectorCmd::Enumerate } => {
            let basis = ctx.sector(&ctx.cfg.universe()?)?;
            let report = SectorReport::new(ctx.provenance(&[]), &basis);
            ctx.emit_json(&report, &format!("{} graphs", basis.len()))?;
            Ok(Outcome::Verified)
        }
        Command::State { cmd } => state(&ctx, cmd),
        Command::Op { cmd } => op(&ctx, cmd),
        Command::Verify { cmd } => verify(&ctx, cmd),
        Command::Mark { cmd } => mark(&ctx, cmd),
        Command::Decompose { op, m } => decompose(&ctx, &op, m),
        Command::Zoo { cmd } => zoo_cmd(&ctx, cmd),
        Command::Export { cmd } => {
            let (arg, as_dot) = match &cmd {
                ExportCmd::Dot { state } => (state, true),
                ExportCmd::Json { state } => (state, false),
            };
            let (u, psi, _) = ctx.state(arg)?;
            let doc = if as_dot { export::dot(&u, &psi) } else { export::json(&u, &psi) };
            ctx.emit(&doc, &format!("{} terms", psi.support().count()))?;
            Ok(Outcome::Verified)
        }
    }
}

fn state(ctx: &Context, cmd: StateCmd) -> Result<Outcome> {
    match cmd {
        StateCmd::Tensor { left, right } => {
            let (u, a, ra) = ctx.state(&left)?;
            let (w, b, rb) = ctx.state(&right)?;
            same_universe(&u, &w)?;
            let psi = a.tensor(&b)?;
            let extra: Vec<&InputRecord> = ra.iter().chain(rb.iter()).collect();
            ctx.emit_state(&u, &psi, &extra, &format!("{} terms, norm² {:.12}", psi.len(), psi.norm_sqr()))?;
        }
        StateCmd::Trace { state, vertex: name, radius } => {
            let (u, psi, rec) = ctx.state(&state)?;
            let basis = ctx.sector(&u)?;
            let mut entries = Vec::new();
            for (g, a) in psi.support() {
                for (h, b) in psi.support() {
                    entries.push((g, h, a * b.conj()));
                }
            }
            let rho = LinearOperator::from_graph_entries(&basis, entries)?;
            let reduced = partial_trace(&rho, vertex(&u, &name)?, radius);
            let t = reduced.trace();
            let extra: Vec<&InputRecord> = rec.iter().collect();
            ctx.emit_operator(&reduced, &extra, &format!("{} entries, trace {}", reduced.nnz(), export::amplitude(t)))?;
        }
    }
    Ok(Outcome::Verified)
}

fn op(ctx: &Context, cmd: OpCmd) -> Result<Outcome> {
    match cmd {
        OpCmd::Apply { op, state } => {
            let (a, ra) = ctx.operator(&op)?;
            let (u, psi, rs) = ctx.state(&state)?;
            same_universe(a.basis().universe(), &u)?;
            let out = a.apply(&psi)?;
            let extra: Vec<&InputRecord> = std::iter::once(&ra).chain(rs.iter()).collect();
            ctx.emit_state(&u, &out, &extra, &format!("{} terms, norm² {:.12}", out.len(), out.norm_sqr()))?;
        }
        OpCmd::Compose { left, right } => {
            let (a, ra) = ctx.operator(&left)?;
            let (b, rb) = ctx.operator(&right)?;
            let c = a.compose(&b)?;
            ctx.emit_operator(&c, &[&ra, &rb], &format!("{} entries", c.nnz()))?;
        }
        OpCmd::Adjoint { op } => {
            let (a, ra) = ctx.operator(&op)?;
            let d = a.adjoint();
            ctx.emit_operator(&d, &[&ra], &format!("{} entries", d.nnz()))?;
        }
    }
    Ok(Outcome::Verified)
}

/// Causality at `(m, n)`, or the smallest `n ≤ n_max`, returning the last
/// violation on failure.
fn search(u: &LinearOperator, m: u32, n: Option<u32>, n_max: u32, eps: f64) -> std::result::Result<qcgd_core::causal::CausalityCertificate, CausalityViolation> {
    let range = match n {
        Some(n) => n..=n,
        None => 0..=n_max,
    };
    let mut last = None;
    for n in range {
        match is_causal(u, m, n, eps) {
            Ok(c) => return Ok(c),
            Err(v) => last = Some(v),
        }
    }
    Err(last.expect("nonempty radius range"))
}

fn verify(ctx: &Context, cmd: VerifyCmd) -> Result<Outcome> {
    let eps = ctx.cfg.eps;
    match cmd {
        VerifyCmd::Causal { op, m, n, samples } => {
            let (u, rec) = ctx.operator(&op)?;
            let basis = u.basis().clone();
            let result = search(&u, m, n, ctx.cfg.n_max, eps);
            let mut sampled_residual = None;
            if let (Ok(cert), true) = (&result, samples > 0) {
                let mut rng = random::rng(ctx.cfg.seed);
                let mut worst: f64 = 0.0;
                for _ in 0..samples {
                    let rho = random::random_density(&basis, 3, 6, &mut rng);
                    for v in basis.universe().all_vertices().iter() {
                        worst = worst.max(causality_residual_on(&u, &rho, v, cert.m, cert.n)?);
                    }
                }
                sampled_residual = Some(worst);
            }
            let verified = result.is_ok() && sampled_residual.is_none_or(|r| r <= eps);
            let (certificate, witness) = match &result {
                Ok(c) => (Some(CertificateJson::from(c)), None),
                Err(v) => (None, Some(CausalWitness::new(&basis, v))),
            };
            let summary = match (&certificate, &witness) {
                (Some(c), _) => format!(
                    "causal at (m={}, n={}): {} dyads, max residual {:e}{}",
                    c.m,
                    c.n,
                    c.verified_dyad_count,
                    c.max_residual,
                    sampled_residual.map_or(String::new(), |r| format!(", sampled residual {r:e}"))
                ),
                (None, Some(w)) => format!(
                    "not causal at (m={}, n={}): |{}⟩⟨{}| at vertex {}, residual {:e}",
                    w.m, w.n, w.row, w.col, w.vertex, w.residual
                ),
                _ => unreachable!(),
            };
            let report = CausalReport {
                kind: "causality".into(),
                provenance: ctx.provenance(&[&rec]),
                universe: UniverseSpec::from_universe(basis.universe()),
                operator_sha256: rec.sha256.clone(),
                m,
                n: n.unwrap_or(ctx.cfg.n_max),
                verified,
                certificate,
                witness,
                sampled_residual,
                samples,
            };
            ctx.emit_json(&report, &summary)?;
            Ok(Outcome::from_bool(verified))
        }
        VerifyCmd::Local { op, vertex: name, radius } => {
            let (a, rec) = ctx.operator(&op)?;
            let v = vertex(a.basis().universe(), &name)?;
            let violation = locality_violation(&a, v, radius, eps);
            let min_radius = min_local_radius(&a, v, ctx.cfg.r_max.max(radius), eps);
            let witness = violation.as_ref().map(|w| LocalWitness::new(a.basis(), w));
            let summary = match &witness {
                None => format!("{radius}-localized at {name}; smallest radius {min_radius:?}"),
                Some(w) => format!(
                    "not {radius}-localized at {name}: entry ({}, {}) is {:?}, expected {:?}",
                    w.row, w.col, w.actual, w.expected
                ),
            };
            let report = LocalReport {
                kind: "localization".into(),
                provenance: ctx.provenance(&[&rec]),
                universe: UniverseSpec::from_universe(a.basis().universe()),
                operator_sha256: rec.sha256.clone(),
                vertex: name,
                radius,
                localized: witness.is_none(),
                min_radius,
                witness,
            };
            ctx.emit_json(&report, &summary)?;
            Ok(Outcome::from_bool(report.localized))
        }
        VerifyCmd::Dual { op, observable, vertex: name, m, n } => {
            let (u, ru) = ctx.operator(&op)?;
            let (a, ra) = ctx.operator(&observable)?;
            same_universe(u.basis().universe(), a.basis().universe())?;
            let v = vertex(u.basis().universe(), &name)?;
            let observable_dual_residual = dual_localization_residual(&a, v, m);
            let (certificate, witness, heisenberg_localized) = match is_causal(&u, m, n, eps) {
                Ok(c) => {
                    let ok = dual_causality_check(&u, &c, &a, v, eps)?;
                    (Some(CertificateJson::from(&c)), None, Some(ok))
                }
                Err(w) => (None, Some(CausalWitness::new(u.basis(), &w)), None),
            };
            let verified = heisenberg_localized == Some(true);
            let summary = match (heisenberg_localized, &witness) {
                (Some(true), _) => format!("U†AU is {n}-localized at {name}"),
                (Some(false), _) => format!("U†AU is not {n}-localized at {name}"),
                (None, Some(w)) => format!("no certificate at (m={m}, n={n}): |{}⟩⟨{}| at {}", w.row, w.col, w.vertex),
                _ => unreachable!(),
            };
            let report = DualReport {
                kind: "dual-causality".into(),
                provenance: ctx.provenance(&[&ru, &ra]),
                universe: UniverseSpec::from_universe(u.basis().universe()),
                vertex: name,
                certificate,
                witness,
                observable_dual_residual,
                heisenberg_localized,
                verified,
            };
            ctx.emit_json(&report, &summary)?;
            Ok(Outcome::from_bool(verified))
        }
    }
}

#[derive(Serialize)]
struct PhiJson {
    kind: &'static str,
    provenance: Provenance,
    input: String,
    first: String,
    second: String,
    first_graph: GraphJson,
    second_graph: GraphJson,
}

fn mark(ctx: &Context, cmd: MarkCmd) -> Result<Outcome> {
    match cmd {
        MarkCmd::Mu { vertex: name } => {
            let marked = ctx.sector(&ctx.cfg.universe()?.marked())?;
            let mu = marking::mu(&marked, vertex(marked.universe(), &name)?)?;
            ctx.emit_operator(&mu, &[], &format!("mu_{name} over {} marked graphs", marked.len()))?;
        }
        MarkCmd::Phi { graph } => {
            let plain = ctx.cfg.universe()?;
            let marked = plain.marked();
            let g = notation::parse(&marked, &graph)?;
            let pair = marking::phi(&g)?;
            let doc = PhiJson {
                kind: "phi",
                provenance: ctx.provenance(&[]),
                input: notation::format(&marked, &g),
                first: notation::format(&plain, &pair.first),
                second: notation::format(&marked, &pair.second),
                first_graph: GraphJson::from_graph(&plain, &pair.first),
                second_graph: GraphJson::from_graph(&marked, &pair.second),
            };
            let summary = format!("{} ↦ ({}, {})", doc.input, doc.first, doc.second);
            ctx.emit_json(&doc, &summary)?;
        }
        MarkCmd::Extend { op } => {
            let (u, rec) = ctx.operator(&op)?;
            let marked = ctx.sector(&u.basis().universe().marked())?;
            let ext = marking::marked_extension(&u, &marked)?;
            let summary = format!("extension over {} marked graphs, unitarity residual {:e}", marked.len(), ext.unitarity_residual());
            ctx.emit_operator(&ext, &[&rec], &summary)?;
        }
    }
    Ok(Outcome::Verified)
}

fn decompose(ctx: &Context, op: &Path, m: u32) -> Result<Outcome> {
    let dir = ctx.out.clone().ok_or_else(|| Error::Config("decompose needs --out <directory>".into()))?;
    let (u, rec) = ctx.operator(op)?;
    let plain = u.basis().universe();
    let marked = ctx.sector(&plain.marked())?;
    let opts = DecomposeOptions { m, n_max: ctx.cfg.n_max, r_max: ctx.cfg.r_max, eps: ctx.cfg.eps };
    let (dec, report) = match decompose_and_verify(&u, &marked, &opts) {
        Ok(r) => r,
        Err(qcgd_core::Error::NotCausal(v)) => {
            let w = CausalWitness::new(u.basis(), &v);
            println!("not causal at (m={}, n={}): |{}⟩⟨{}| at vertex {}", w.m, w.n, w.row, w.col, w.vertex);
            return Ok(Outcome::Failed);
        }
        Err(qcgd_core::Error::ReconstructionMismatch { graph, residual }) => {
            println!("reconstruction fails at {} with residual {residual:e}", describe(&u, &graph));
            return Ok(Outcome::Failed);
        }
        Err(e) => return Err(e.into()),
    };
    let provenance = ctx.provenance(&[&rec]);

    let mut gates = Vec::new();
    for ((v, k), g) in dec.gates.iter().zip(&report.gates) {
        let name = plain.vertex_name(*v);
        let file = format!("K_{name}.json");
        let mut doc = OperatorFile::new(k);
        doc.provenance = Some(provenance.clone());
        let text = to_json(&doc);
        write_text(&dir.join(&file), &text)?;
        gates.push(GateEntry {
            vertex: name.to_string(),
            file,
            sha256: sha256_hex(text.as_bytes()),
            unitarity_residual: g.unitarity_residual,
            local_radius: g.local_radius,
        });
    }

    // Per-graph reconstruction residuals, recomputed from the written gates.
    let all = marking::mu_product(&marked, marked.universe().all_vertices())?;
    let product = dec.gates.iter().try_fold(LinearOperator::identity(&marked), |acc, (_, k)| acc.compose(k))?;
    let recon = all.compose(&product)?;
    let mut log = String::new();
    for g in u.basis().graphs() {
        let expected: StateVector = u
            .apply(&StateVector::basis(g.clone()))?
            .iter()
            .map(|(h, a)| (marking::embed(h), *a))
            .collect();
        let actual = recon.apply(&StateVector::basis(marking::embed(g)))?;
        log.push_str(&format!("{} {:.3e}\n", describe(&u, g), expected.max_abs_diff(&actual)));
    }
    let log_file = "reconstruction.log";
    write_text(&dir.join(log_file), &log)?;

    let manifest = DecomposeManifest {
        kind: "decomposition".into(),
        provenance,
        universe: UniverseSpec::from_universe(plain),
        operator_sha256: rec.sha256.clone(),
        certificate: CertificateJson::from(&report.certificate),
        gates,
        max_commutator_residual: report.max_commutator_residual,
        reconstruction_residual: report.reconstruction_residual,
        reconstruction_unitarity_residual: report.reconstruction_unitarity_residual,
        order_residual: report.order_residual,
        checked_graphs: report.checked_graphs,
        log: log_file.into(),
    };
    write_text(&dir.join("manifest.json"), &to_json(&manifest))?;
    let radii: Vec<String> =
        manifest.gates.iter().map(|g| format!("{}:{}", g.vertex, g.local_radius.map_or("none".into(), |r| r.to_string()))).collect();
    println!(
        "certificate (m={}, n={}); gate radii {}; commutator residual {:e}; reconstruction residual {:e}",
        manifest.certificate.m,
        manifest.certificate.n,
        radii.join(" "),
        manifest.max_commutator_residual,
        manifest.reconstruction_residual
    );
    Ok(Outcome::Verified)
}

#[derive(Serialize)]
struct ZooListing {
    name: &'static str,
    summary: &'static str,
    vertices: usize,
    labels: usize,
    ports: u16,
    gates: Vec<String>,
    expected_n: Option<u32>,
}

fn zoo_cmd(ctx: &Context, cmd: ZooCmd) -> Result<Outcome> {
    match cmd {
        ZooCmd::List => {
            let list: Vec<ZooListing> = zoo::catalog()
                .into_iter()
                .map(|e| ZooListing {
                    name: e.name,
                    summary: e.summary,
                    vertices: e.vertices,
                    labels: e.labels,
                    ports: e.ports,
                    gates: e.gates.iter().map(|g| g.name.clone()).collect(),
                    expected_n: e.expected_n,
                })
                .collect();
            let summary: Vec<String> = list.iter().map(|e| format!("{:<16} {}", e.name, e.summary)).collect();
            ctx.emit_json(&list, &summary.join("\n"))?;
            Ok(Outcome::Verified)
        }
        ZooCmd::Build { name } => {
            let entry = zoo::catalog()
                .into_iter()
                .find(|e| e.name == name)
                .ok_or_else(|| Error::Config(format!("no zoo entry named {name:?}; try `zoo list`")))?;
            zoo_build(ctx, &entry)
        }
    }
}

fn zoo_build(ctx: &Context, entry: &ZooEntry) -> Result<Outcome> {
    let out = ctx.out.clone().ok_or_else(|| Error::Config("zoo build needs --out <file>".into()))?;
    let eps = ctx.cfg.eps;
    let (basis, u) = entry.build(ctx.cfg.cap, eps)?;
    let provenance = ctx.provenance(&[]);
    let mut file = OperatorFile::new(&u);
    file.provenance = Some(provenance.clone());
    let text = to_json(&file);
    write_text(&out, &text)?;

    let result = search(&u, 1, None, ctx.cfg.n_max, eps);
    let inverse = search(&u.adjoint(), 1, None, ctx.cfg.n_max, eps).ok();
    let universe = basis.universe();
    let local_radii = universe
        .all_vertices()
        .iter()
        .map(|v| (universe.vertex_name(v).to_string(), min_local_radius(&u, v, ctx.cfg.r_max, eps)))
        .collect();
    let manifest = ZooManifest {
        kind: "zoo".into(),
        provenance,
        name: entry.name.into(),
        summary: entry.summary.into(),
        universe: UniverseSpec::from_universe(universe),
        sector_size: basis.len(),
        gates: entry.gates.iter().map(|g| g.name.clone()).collect(),
        operator_file: out.display().to_string(),
        operator_sha256: sha256_hex(text.as_bytes()),
        unitarity_residual: u.unitarity_residual(),
        vertex_preserving: u.is_vertex_preserving(),
        certificate: result.as_ref().ok().map(CertificateJson::from),
        witness: result.as_ref().err().map(|v| CausalWitness::new(&basis, v)),
        inverse_certificate: inverse.as_ref().map(CertificateJson::from),
        radius_by_m: (0..=ctx.cfg.m_max).map(|m| (m, search(&u, m, None, ctx.cfg.n_max, eps).ok().map(|c| c.n))).collect(),
        expected_n: entry.expected_n,
        local_radii,
    };
    let manifest_path = out.with_extension("manifest.json");
    write_text(&manifest_path, &to_json(&manifest))?;
    let found = manifest.certificate.as_ref().map(|c| c.n);
    println!(
        "{}: {} graphs, n for m=1: {}, expected {}",
        entry.name,
        basis.len(),
        found.map_or("none".into(), |n| n.to_string()),
        entry.expected_n.map_or("none".into(), |n| n.to_string())
    );
    Ok(Outcome::from_bool(found == entry.expected_n && manifest.vertex_preserving && manifest.unitarity_residual <= eps))
}

