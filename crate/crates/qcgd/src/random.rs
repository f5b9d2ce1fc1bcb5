//! Seeded random states and density operators for corroboration runs.

use std::sync::Arc;

use qcgd_core::{Amplitude, LinearOperator, SectorBasis};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Unit vector with `support` random nonzero coordinates.
pub fn random_vector(basis: &SectorBasis, support: usize, rng: &mut impl Rng) -> Vec<(usize, Amplitude)> {
    let k = support.clamp(1, basis.len());
    let mut idx = index::sample(rng, basis.len(), k).into_vec();
    idx.sort_unstable();
    let mut v: Vec<(usize, Amplitude)> = idx
        .into_iter()
        .map(|i| (i, Amplitude::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))))
        .collect();
    let norm = v.iter().map(|(_, a)| a.norm_sqr()).sum::<f64>().sqrt();
    for (_, a) in &mut v {
        *a /= norm;
    }
    v
}

/// Mixture of `rank` random pure states with random weights: positive
/// semidefinite with unit trace.
pub fn random_density(basis: &Arc<SectorBasis>, rank: usize, support: usize, rng: &mut impl Rng) -> LinearOperator {
    let weights: Vec<f64> = (0..rank.max(1)).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let mut entries = Vec::new();
    for w in weights {
        let psi = random_vector(basis, support, rng);
        for &(i, a) in &psi {
            for &(j, b) in &psi {
                entries.push((i, j, a * b.conj() * (w / total)));
            }
        }
    }
    LinearOperator::from_entries(basis, entries)
}
