//! Sparse superpositions of graphs.

use alloc::collections::BTreeMap;

use num_complex::Complex;

use crate::error::Error;
use crate::graph::{self, Graph};
use crate::operator::Amplitude;

/// A sparse vector over the canonical basis of labelled graphs, keyed in
/// canonical order. Physical states have unit norm; intermediate results may
/// not.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct StateVector {
    amplitudes: BTreeMap<Graph, Amplitude>,
}

impl StateVector {
    pub fn zero() -> Self {
        StateVector::default()
    }

    /// The basis vector `|g⟩`.
    pub fn basis(g: Graph) -> Self {
        let mut amplitudes = BTreeMap::new();
        amplitudes.insert(g, Complex::new(1.0, 0.0));
        StateVector { amplitudes }
    }

    /// Accumulates `amplitude` onto `g`.
    pub fn add(&mut self, g: Graph, amplitude: Amplitude) {
        *self.amplitudes.entry(g).or_insert(Complex::new(0.0, 0.0)) += amplitude;
    }

    pub fn amplitude(&self, g: &Graph) -> Amplitude {
        self.amplitudes.get(g).copied().unwrap_or_default()
    }

    /// Entries in canonical order, including explicitly stored zeros.
    pub fn iter(&self) -> impl Iterator<Item = (&Graph, &Amplitude)> {
        self.amplitudes.iter()
    }

    /// Graphs carrying a nonzero amplitude, in canonical order.
    pub fn support(&self) -> impl Iterator<Item = (&Graph, &Amplitude)> {
        self.amplitudes.iter().filter(|(_, a)| **a != Complex::new(0.0, 0.0))
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self, eps: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= eps
    }

    pub fn scale(&self, c: Amplitude) -> StateVector {
        StateVector { amplitudes: self.amplitudes.iter().map(|(g, a)| (g.clone(), a * c)).collect() }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Amplitude {
        self.amplitudes
            .iter()
            .filter_map(|(g, a)| other.amplitudes.get(g).map(|b| a.conj() * b))
            .sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        let mut worst: f64 = 0.0;
        for (g, a) in &self.amplitudes {
            worst = worst.max((a - other.amplitude(g)).norm());
        }
        for (g, b) in &other.amplitudes {
            if !self.amplitudes.contains_key(g) {
                worst = worst.max(b.norm());
            }
        }
        worst
    }

    /// Generalized tensor product: `|g⟩ ⊗ |h⟩ = |g ∪ h⟩`, extended
    /// bilinearly. Every pair of support graphs must be consistent.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector, Error> {
        let mut out = StateVector::zero();
        for (g, a) in self.support() {
            for (h, b) in other.support() {
                let gh = graph::union(g, h).map_err(|_| Error::InconsistentSupport {
                    left: g.clone(),
                    right: h.clone(),
                })?;
                out.add(gh, a * b);
            }
        }
        Ok(out)
    }
}

impl FromIterator<(Graph, Amplitude)> for StateVector {
    fn from_iter<I: IntoIterator<Item = (Graph, Amplitude)>>(iter: I) -> Self {
        let mut s = StateVector::zero();
        for (g, a) in iter {
            s.add(g, a);
        }
        s
    }
}
