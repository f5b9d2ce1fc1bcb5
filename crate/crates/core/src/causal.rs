//! Causality, localization and their dual forms.
//!
//! Causality of `U` at radii `(m, n)` means `(UρU†)^m_v = (Uρ^n_vU†)^m_v`
//! for every `ρ` and every vertex `v`. Both sides are linear in `ρ`, so the
//! checker sweeps basis dyads `|G⟩⟨H|` only. An operator `A` is
//! `r`-localized at `v` when `⟨H|A|G⟩ = ⟨H_D|A|G_D⟩·⟨H̄_D|Ḡ_D⟩` with `D` the
//! union of the radius-`r` disks of `v` in `G` and `H`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex;

use crate::error::Error;
use crate::graph::{VertexId, VertexSet};
use crate::operator::{Amplitude, LinearOperator, Operator, Space};
use crate::trace::{partial_trace, DyadReducer, ReducibleSpace, SectorReducer};

const ZERO: Amplitude = Complex::new(0.0, 0.0);

/// Exhaustive evidence that `U` is causal at `(m, n)` on its sector.
#[derive(Clone, Debug, PartialEq)]
pub struct CausalityCertificate {
    pub m: u32,
    pub n: u32,
    /// Number of `(G, H, v)` triples checked.
    pub verified_dyad_count: u64,
    pub max_residual: f64,
}

/// First `(G, H, v)` triple, in canonical order, at which the causality
/// identity fails.
#[derive(Clone, Debug, PartialEq)]
pub struct CausalityViolation {
    pub m: u32,
    pub n: u32,
    pub row: usize,
    pub col: usize,
    pub row_graph: String,
    pub col_graph: String,
    pub vertex: VertexId,
    pub residual: f64,
}

impl fmt::Display for CausalityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(m={}, n={}) fails on |{}⟩⟨{}| at vertex {} with residual {:e}",
            self.m, self.n, self.row_graph, self.col_graph, self.vertex.0, self.residual
        )
    }
}

type Entries = Vec<(usize, usize, Amplitude)>;

fn merge(out: &mut Entries) {
    out.sort_unstable_by_key(|&(r, c, _)| (r, c));
    let mut w = 0;
    for i in 0..out.len() {
        if w > 0 && out[w - 1].0 == out[i].0 && out[w - 1].1 == out[i].1 {
            let a = out[i].2;
            out[w - 1].2 += a;
        } else {
            out[w] = out[i];
            w += 1;
        }
    }
    out.truncate(w);
}

/// `(U|g⟩⟨h|U†)^m_v` as merged `(row, col, value)` entries.
fn conjugate_and_reduce<S: Space, R: DyadReducer>(
    reducer: &mut R,
    u: &Operator<S>,
    g: usize,
    h: usize,
    v: VertexId,
    m: u32,
    out: &mut Entries,
) {
    out.clear();
    for &(i, a) in u.column(g) {
        for &(j, b) in u.column(h) {
            if let Some((ri, rj)) = reducer.reduce(i as usize, j as usize, v, m) {
                out.push((ri, rj, a * b.conj()));
            }
        }
    }
    merge(out);
}

fn entries_residual(a: &Entries, b: &Entries) -> f64 {
    let (mut i, mut j) = (0, 0);
    let mut worst: f64 = 0.0;
    while i < a.len() || j < b.len() {
        let ka = a.get(i).map(|e| (e.0, e.1));
        let kb = b.get(j).map(|e| (e.0, e.1));
        let d = match (ka, kb) {
            (Some(x), Some(y)) if x == y => {
                i += 1;
                j += 1;
                a[i - 1].2 - b[j - 1].2
            }
            (Some(x), Some(y)) if x < y => {
                i += 1;
                a[i - 1].2
            }
            (Some(_), None) => {
                i += 1;
                a[i - 1].2
            }
            _ => {
                j += 1;
                b[j - 1].2
            }
        };
        worst = worst.max(d.norm());
    }
    worst
}

/// Checks causality at `(m, n)` on every basis dyad and every vertex,
/// sweeping `(G, H, v)` in canonical order and stopping at the first
/// violation.
pub fn is_causal<S: ReducibleSpace>(
    u: &Operator<S>,
    m: u32,
    n: u32,
    eps: f64,
) -> Result<CausalityCertificate, CausalityViolation> {
    is_causal_with(&mut u.space().reducer(), u, m, n, eps)
}

/// [`is_causal`] with an explicit reducer.
pub fn is_causal_with<S: Space, R: DyadReducer>(
    reducer: &mut R,
    u: &Operator<S>,
    m: u32,
    n: u32,
    eps: f64,
) -> Result<CausalityCertificate, CausalityViolation> {
    let space = u.space();
    let nv = reducer.vertex_count();
    let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
    let mut count = 0u64;
    let mut max_residual: f64 = 0.0;
    for g in 0..u.dim() {
        for h in 0..u.dim() {
            for vi in 0..nv {
                let v = VertexId(vi as u8);
                conjugate_and_reduce(reducer, u, g, h, v, m, &mut lhs);
                rhs.clear();
                if let Some((gn, hn)) = reducer.reduce(g, h, v, n) {
                    conjugate_and_reduce(reducer, u, gn, hn, v, m, &mut rhs);
                }
                let residual = entries_residual(&lhs, &rhs);
                count += 1;
                if residual > eps {
                    return Err(CausalityViolation {
                        m,
                        n,
                        row: g,
                        col: h,
                        row_graph: space.describe(g),
                        col_graph: space.describe(h),
                        vertex: v,
                        residual,
                    });
                }
                max_residual = max_residual.max(residual);
            }
        }
    }
    Ok(CausalityCertificate { m, n, verified_dyad_count: count, max_residual })
}

/// Smallest `n ≤ n_max` for which [`is_causal`] certifies `(m, n)`.
pub fn find_radius<S: ReducibleSpace>(
    u: &Operator<S>,
    m: u32,
    n_max: u32,
    eps: f64,
) -> Option<CausalityCertificate> {
    (0..=n_max).find_map(|n| is_causal(u, m, n, eps).ok())
}

/// Like [`find_radius`] but returns the violation at `n_max` on failure.
pub fn require_radius<S: ReducibleSpace>(
    u: &Operator<S>,
    m: u32,
    n_max: u32,
    eps: f64,
) -> Result<CausalityCertificate, Error> {
    let mut last = None;
    for n in 0..=n_max {
        match is_causal(u, m, n, eps) {
            Ok(cert) => return Ok(cert),
            Err(v) => last = Some(v),
        }
    }
    Err(last.map_or(Error::Precondition("empty radius range"), Error::NotCausal))
}

/// Residual of the causality identity on one operator `rho` at vertex `v`,
/// computed with the operator algebra rather than the dyad sweep.
pub fn causality_residual_on<S: ReducibleSpace>(
    u: &Operator<S>,
    rho: &Operator<S>,
    v: VertexId,
    m: u32,
    n: u32,
) -> Result<f64, Error> {
    let ud = u.adjoint();
    let lhs = partial_trace(&u.compose(rho)?.compose(&ud)?, v, m);
    let rhs = partial_trace(&u.compose(&partial_trace(rho, v, n))?.compose(&ud)?, v, m);
    lhs.max_abs_diff(&rhs)
}

/// An entry `⟨H|A|G⟩` that differs from its localized prediction.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalityViolation {
    pub row: usize,
    pub col: usize,
    pub actual: Amplitude,
    pub expected: Amplitude,
}

impl LocalityViolation {
    pub fn residual(&self) -> f64 {
        (self.actual - self.expected).norm()
    }
}

/// First entry, ordered by `(column, row)`, violating `r`-localization of
/// `a` at `v`, or `None` when `a` is `r`-localized.
///
/// Only two kinds of entries can fail: nonzero entries, checked directly,
/// and entries whose row and column share a corestriction outside `D`.
/// The latter are found by grouping basis graphs by their split at each
/// candidate `D`, so the cost stays near-linear in the sector size.
pub fn locality_violation(a: &LinearOperator, v: VertexId, r: u32, eps: f64) -> Option<LocalityViolation> {
    let basis = a.basis();
    let mut reducer = SectorReducer::new(basis);
    let mut worst: Option<LocalityViolation> = None;
    let mut note = |row: usize, col: usize, actual: Amplitude, expected: Amplitude| {
        if (actual - expected).norm() > eps && worst.as_ref().is_none_or(|w| (col, row) < (w.col, w.row)) {
            worst = Some(LocalityViolation { row, col, actual, expected });
        }
    };

    for g in 0..a.dim() {
        for &(h, x) in a.column(g) {
            let h = h as usize;
            let expected = reducer.reduce(g, h, v, r).map_or(ZERO, |(gr, hr)| a.get(hr, gr));
            note(h, g, x, expected);
        }
    }

    let disks: Vec<VertexSet> = (0..a.dim()).map(|g| reducer.disk(g, v, r)).collect();
    let all = basis.universe().all_vertices();
    let mut d = VertexSet::EMPTY;
    loop {
        // Graphs whose disk lies in `d` but which extend beyond it, keyed by
        // their corestriction outside `d`.
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (g, disk) in disks.iter().enumerate() {
            if disk.is_subset(d) && !basis.graph(g).vertex_set().is_subset(d) {
                groups.entry(reducer.split(g, d).1).or_default().push(g);
            }
        }
        for members in groups.values() {
            for &g in members {
                for &h in members {
                    if disks[g].union(disks[h]) == d {
                        let (gr, hr) = reducer.reduce(g, h, v, r).expect("equal corestrictions");
                        note(h, g, a.get(h, g), a.get(hr, gr));
                    }
                }
            }
        }
        if d == all {
            break;
        }
        // Next subset of `all` in increasing order.
        d = VertexSet(d.0.wrapping_sub(all.0) & all.0);
    }
    worst
}

pub fn is_localized(a: &LinearOperator, v: VertexId, r: u32, eps: f64) -> bool {
    locality_violation(a, v, r, eps).is_none()
}

/// Smallest `r ≤ r_max` at which `a` is `r`-localized at `v`.
pub fn min_local_radius(a: &LinearOperator, v: VertexId, r_max: u32, eps: f64) -> Option<u32> {
    (0..=r_max).find(|&r| is_localized(a, v, r, eps))
}

/// Largest gap `|Tr(Aρ) − Tr(Aρ^r_v)|` over all basis dyads `ρ`.
pub fn dual_localization_residual(a: &LinearOperator, v: VertexId, r: u32) -> f64 {
    let basis = a.basis();
    let mut reducer = SectorReducer::new(basis);
    let mut worst: f64 = 0.0;
    for g in 0..a.dim() {
        for h in 0..a.dim() {
            // Tr(A|g⟩⟨h|) = ⟨h|A|g⟩.
            let full = a.get(h, g);
            let reduced = reducer.reduce(g, h, v, r).map_or(ZERO, |(gr, hr)| a.get(hr, gr));
            worst = worst.max((full - reduced).norm());
        }
    }
    worst
}

/// True iff `Tr(Aρ) = Tr(Aρ^r_v)` within `eps` for every basis dyad.
pub fn dual_localization_check(a: &LinearOperator, v: VertexId, r: u32, eps: f64) -> bool {
    dual_localization_residual(a, v, r) <= eps
}

/// Given a certificate `(m, n)` for `u`, checks that `U†AU` is
/// `n`-localized at `v` for an `m`-localized `a`. The certificate is taken
/// on trust; pass one produced by [`is_causal`] for this `u`.
pub fn dual_causality_check(
    u: &LinearOperator,
    certificate: &CausalityCertificate,
    a: &LinearOperator,
    v: VertexId,
    eps: f64,
) -> Result<bool, Error> {
    if !is_localized(a, v, certificate.m, eps) {
        return Err(Error::Precondition("operator is not m-localized at the vertex"));
    }
    let heisenberg = u.adjoint().compose(a)?.compose(u)?;
    Ok(is_localized(&heisenberg, v, certificate.n, eps))
}
