//! Rendering superpositions for figures.

use std::fmt::Write;

use qcgd_core::{Amplitude, StateVector, Universe};

use crate::formats::{to_json, StateFile};
use crate::notation;

/// Fixed six-decimal amplitude with explicit signs, `+0.707107-0.000000i`.
pub fn amplitude(a: Amplitude) -> String {
    // Adding zero folds -0.0 into +0.0 so signs are stable.
    format!("{:+.6}{:+.6}i", a.re + 0.0, a.im + 0.0)
}

fn quote(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One cluster per support graph in canonical order, titled with its
/// amplitude and notation.
pub fn dot(u: &Universe, psi: &StateVector) -> String {
    let mut out = String::from("graph superposition {\n  node [shape=circle];\n");
    for (i, (g, a)) in psi.support().enumerate() {
        let key = notation::format(u, g);
        let _ = writeln!(out, "  subgraph cluster_{i} {{");
        let _ = writeln!(out, "    label=\"{} {}\";", amplitude(*a), quote(&key));
        if g.is_empty() {
            let _ = writeln!(out, "    t{i}_empty [shape=point, style=invis];");
        }
        for &(v, l) in g.labelled_vertices() {
            let label = match l {
                None => "_".to_string(),
                Some(l) => {
                    let (name, m) = u.label_parts(l);
                    if m { format!("{name}*") } else { name.to_string() }
                }
            };
            let name = u.vertex_name(v);
            let _ = writeln!(out, "    t{i}_{name} [label=\"{}[{}]\"];", quote(name), quote(&label));
        }
        for e in g.edges() {
            let (a, b) = e.slots();
            let port = |p| {
                let (p, m) = u.port_parts(p);
                if m { format!("{p}*") } else { p.to_string() }
            };
            let _ = writeln!(
                out,
                "    t{i}_{} -- t{i}_{} [taillabel=\"{}\", headlabel=\"{}\"];",
                u.vertex_name(a.vertex),
                u.vertex_name(b.vertex),
                port(a.port),
                port(b.port)
            );
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

/// The state file document; reading it back reproduces `psi` exactly.
pub fn json(u: &Universe, psi: &StateVector) -> String {
    to_json(&StateFile::new(u, psi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use qcgd_core::Graph;

    #[test]
    fn empty_graph_is_one_cluster_with_unit_amplitude() {
        let u = Universe::from_names(&["a"], &["0"], 1).unwrap();
        let text = dot(&u, &StateVector::basis(Graph::empty()));
        assert_eq!(text.matches("subgraph").count(), 1);
        assert!(text.contains("label=\"+1.000000+0.000000i <>\""), "{text}");
    }

    #[test]
    fn negative_zero_prints_as_positive() {
        assert_eq!(amplitude(Amplitude::new(-0.0, -0.5)), "+0.000000-0.500000i");
    }
}
