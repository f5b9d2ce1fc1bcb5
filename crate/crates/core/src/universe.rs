//! Finite stand-ins for the vertex, label and port spaces.
//!
//! A marked universe doubles both alphabets: label code `2x + a` stands for
//! `(x, a)` and port code `2i + b` for `(i, b)`, so marked graphs are ordinary
//! [`Graph`] values whose codes carry the mark in the low bit.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::{Graph, Label, Port, VertexId, VertexSet};
use crate::marking;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Universe {
    vertices: Vec<String>,
    labels: Vec<String>,
    ports: u16,
    marked: bool,
}

impl Universe {
    pub fn new(vertices: Vec<String>, labels: Vec<String>, ports: u16) -> Result<Self, Error> {
        if vertices.len() > 64 {
            return Err(Error::InvalidUniverse(format!(
                "{} vertices, at most 64 supported",
                vertices.len()
            )));
        }
        for (what, names) in [("vertex", &vertices), ("label", &labels)] {
            for (i, n) in names.iter().enumerate() {
                if n.is_empty() {
                    return Err(Error::InvalidUniverse(format!("empty {what} name")));
                }
                if names[..i].contains(n) {
                    return Err(Error::InvalidUniverse(format!("duplicate {what} name {n:?}")));
                }
            }
        }
        if labels.len() > usize::from(u16::MAX / 2) || ports > u16::MAX / 2 {
            return Err(Error::InvalidUniverse("alphabet too large".into()));
        }
        Ok(Universe { vertices, labels, ports, marked: false })
    }

    /// Convenience constructor from string slices.
    pub fn from_names(vertices: &[&str], labels: &[&str], ports: u16) -> Result<Self, Error> {
        Universe::new(
            vertices.iter().map(|s| String::from(*s)).collect(),
            labels.iter().map(|s| String::from(*s)).collect(),
            ports,
        )
    }

    /// The doubled-alphabet universe over the same vertices.
    pub fn marked(&self) -> Universe {
        Universe { marked: true, ..self.base() }
    }

    /// The plain universe underlying this one.
    pub fn base(&self) -> Universe {
        Universe { marked: false, ..self.clone() }
    }

    pub fn is_marked(&self) -> bool {
        self.marked
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Number of label codes (doubled when marked).
    pub fn label_count(&self) -> usize {
        self.labels.len() << usize::from(self.marked)
    }

    /// Number of port codes (doubled when marked).
    pub fn port_count(&self) -> u16 {
        self.ports << u16::from(self.marked)
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::prefix(self.vertices.len())
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn base_label_names(&self) -> &[String] {
        &self.labels
    }

    pub fn base_port_count(&self) -> u16 {
        self.ports
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|n| n == name).map(|i| VertexId(i as u8))
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[usize::from(v.0)]
    }

    /// Label code for a base symbol and mark bit. `mark` must be `false`
    /// for a plain universe.
    pub fn label_code(&self, name: &str, mark: bool) -> Option<Label> {
        if mark && !self.marked {
            return None;
        }
        let x = self.labels.iter().position(|n| n == name)? as u16;
        Some(if self.marked { Label(2 * x + u16::from(mark)) } else { Label(x) })
    }

    /// Base symbol and mark bit of a label code.
    pub fn label_parts(&self, l: Label) -> (&str, bool) {
        if self.marked {
            (&self.labels[usize::from(l.0 / 2)], l.0 & 1 == 1)
        } else {
            (&self.labels[usize::from(l.0)], false)
        }
    }

    pub fn port_code(&self, index: u16, mark: bool) -> Option<Port> {
        if index >= self.ports || (mark && !self.marked) {
            return None;
        }
        Some(if self.marked { Port(2 * index + u16::from(mark)) } else { Port(index) })
    }

    /// Base port index and mark bit of a port code.
    pub fn port_parts(&self, p: Port) -> (u16, bool) {
        if self.marked {
            (p.0 / 2, p.0 & 1 == 1)
        } else {
            (p.0, false)
        }
    }

    /// True iff every vertex, label and port of `g` belongs to this universe
    /// and, for a marked universe, `g` is mark consistent.
    pub fn admits(&self, g: &Graph) -> bool {
        let labels = self.label_count();
        let ports = self.port_count();
        let fits = g.vertex_set().is_subset(self.all_vertices())
            && g.labelled_vertices()
                .iter()
                .all(|(_, l)| l.is_none_or(|l| usize::from(l.0) < labels))
            && g.edges().iter().all(|e| {
                let (a, b) = e.slots();
                a.port.0 < ports && b.port.0 < ports
            });
        fits && (!self.marked || marking::is_mark_consistent(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn marked_codes() {
        let u = Universe::from_names(&["a", "b"], &["0", "1"], 2).unwrap();
        assert_eq!(u.label_count(), 2);
        let m = u.marked();
        assert_eq!(m.label_count(), 4);
        assert_eq!(m.port_count(), 4);
        assert_eq!(m.label_code("1", true), Some(Label(3)));
        assert_eq!(m.label_parts(Label(3)), ("1", true));
        assert_eq!(m.port_code(1, false), Some(Port(2)));
        assert_eq!(m.port_parts(Port(3)), (1, true));
        assert_eq!(u.label_code("1", true), None);
        assert_eq!(m.base(), u);
    }

    #[test]
    fn rejects_bad_universes() {
        assert!(Universe::from_names(&["a", "a"], &[], 1).is_err());
        assert!(Universe::from_names(&["a"], &[""], 1).is_err());
        let many: Vec<String> = (0..65).map(|i| format!("v{i}")).collect();
        assert!(Universe::new(many, Vec::new(), 1).is_err());
    }
}
