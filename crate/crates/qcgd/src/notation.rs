//! Compact text form of a graph: `<a[0],b[_];a.0-b.1>`.
//!
//! Vertices are listed with their label in brackets, `_` when unlabelled.
//! Edges follow the semicolon as `vertex.port-vertex.port`. Over a marked
//! universe a trailing `*` sets the mark bit on a label or a port. The
//! parser also accepts `⟨ ⟩`, `⊥` and `–`.

use qcgd_core::{Edge, Graph, Label, Port, Slot, Universe, VertexId};

use crate::error::{Error, Result};

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_')
}

/// Rejects universes whose names cannot be written in notation.
pub fn check_names(u: &Universe) -> Result<()> {
    for v in u.vertex_names() {
        if !is_name(v) {
            return Err(Error::Config(format!("vertex name {v:?} must be alphanumeric or '_'")));
        }
    }
    for l in u.base_label_names() {
        if !is_name(l) || l == "_" {
            return Err(Error::Config(format!("label name {l:?} must be alphanumeric and not '_'")));
        }
    }
    Ok(())
}

fn mark(out: &mut String, m: bool) {
    if m {
        out.push('*');
    }
}

fn slot(u: &Universe, s: Slot, out: &mut String) {
    let (p, m) = u.port_parts(s.port);
    out.push_str(u.vertex_name(s.vertex));
    out.push('.');
    out.push_str(&p.to_string());
    mark(out, m);
}

pub fn format(u: &Universe, g: &Graph) -> String {
    let mut out = String::from("<");
    for (i, &(v, l)) in g.labelled_vertices().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(u.vertex_name(v));
        out.push('[');
        match l {
            None => out.push('_'),
            Some(l) => {
                let (name, m) = u.label_parts(l);
                out.push_str(name);
                mark(&mut out, m);
            }
        }
        out.push(']');
    }
    if !g.edges().is_empty() {
        out.push(';');
        for (i, e) in g.edges().iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let (a, b) = e.slots();
            slot(u, a, &mut out);
            out.push('-');
            slot(u, b, &mut out);
        }
    }
    out.push('>');
    out
}

fn split_mark(s: &str) -> (&str, bool) {
    match s.strip_suffix('*') {
        Some(rest) => (rest, true),
        None => (s, false),
    }
}

pub fn parse(u: &Universe, text: &str) -> Result<Graph> {
    let fail = |msg: String| Error::Notation { text: text.to_string(), msg };
    let cleaned: String = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '⟨' => '<',
            '⟩' => '>',
            '⊥' => '_',
            '–' => '-',
            c => c,
        })
        .collect();
    let body = cleaned
        .strip_prefix('<')
        .and_then(|s| s.strip_suffix('>'))
        .ok_or_else(|| fail("expected <...>".into()))?;
    let (vpart, epart) = body.split_once(';').unwrap_or((body, ""));

    let vertex = |name: &str| u.vertex_id(name).ok_or_else(|| fail(format!("unknown vertex {name:?}")));
    let mut vertices: Vec<(VertexId, Option<Label>)> = Vec::new();
    for item in vpart.split(',').filter(|s| !s.is_empty()) {
        let (name, rest) = item.split_once('[').ok_or_else(|| fail(format!("vertex {item:?} lacks a label")))?;
        let lab = rest.strip_suffix(']').ok_or_else(|| fail(format!("unclosed label in {item:?}")))?;
        let label = if lab == "_" {
            None
        } else {
            let (x, m) = split_mark(lab);
            Some(u.label_code(x, m).ok_or_else(|| fail(format!("unknown label {lab:?}")))?)
        };
        vertices.push((vertex(name)?, label));
    }

    let parse_slot = |s: &str| -> Result<Slot> {
        let (name, port) = s.split_once('.').ok_or_else(|| fail(format!("slot {s:?} lacks a port")))?;
        let (p, m) = split_mark(port);
        let p: u16 = p.parse().map_err(|_| fail(format!("bad port {port:?}")))?;
        let port: Port = u.port_code(p, m).ok_or_else(|| fail(format!("port {port:?} outside the universe")))?;
        Ok(Slot { vertex: vertex(name)?, port })
    };
    let mut edges = Vec::new();
    for item in epart.split(',').filter(|s| !s.is_empty()) {
        let (a, b) = item.split_once('-').ok_or_else(|| fail(format!("edge {item:?} lacks '-'")))?;
        let e = Edge::new(parse_slot(a)?, parse_slot(b)?).ok_or_else(|| fail(format!("degenerate edge {item:?}")))?;
        edges.push(e);
    }

    let g = Graph::new(vertices, edges).map_err(|e| fail(e.to_string()))?;
    if !u.admits(&g) {
        return Err(fail("graph does not fit the universe".into()));
    }
    Ok(g)
}
