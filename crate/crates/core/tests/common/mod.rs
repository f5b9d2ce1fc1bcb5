#![allow(dead_code)]

use std::sync::Arc;

use num_complex::Complex;
use qcgd_core::{Amplitude, LinearOperator, SectorBasis, Universe};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EPS: f64 = 1e-9;

pub fn sector(vertices: usize, labels: usize, ports: u16) -> Arc<SectorBasis> {
    Arc::new(SectorBasis::enumerate(&universe(vertices, labels, ports), 1_000_000).unwrap())
}

pub fn universe(vertices: usize, labels: usize, ports: u16) -> Universe {
    let names: Vec<String> = ["a", "b", "c", "d"][..vertices].iter().map(|s| s.to_string()).collect();
    Universe::new(names, (0..labels).map(|l| l.to_string()).collect(), ports).unwrap()
}

/// The default exhaustive sector: two vertices, two labels, two ports.
pub fn default_sector() -> Arc<SectorBasis> {
    sector(2, 2, 2)
}

pub fn marked(basis: &SectorBasis) -> Arc<SectorBasis> {
    Arc::new(SectorBasis::enumerate(&basis.universe().marked(), 1_000_000).unwrap())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussianish(rng: &mut impl Rng) -> Amplitude {
    Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Dense `dim × dim` matrix, row major.
pub type Dense = Vec<Amplitude>;

/// `M M† / Tr(M M†)` for a random `M` whose columns touch `support` rows.
pub fn random_density_dense(dim: usize, support: usize, rng: &mut impl Rng) -> Dense {
    let rows: Vec<usize> = rand::seq::index::sample(rng, dim, support.min(dim)).into_vec();
    let k = 3;
    let m: Vec<Vec<Amplitude>> = (0..k).map(|_| rows.iter().map(|_| gaussianish(rng)).collect()).collect();
    let mut rho = vec![Complex::new(0.0, 0.0); dim * dim];
    for col in &m {
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in rows.iter().enumerate() {
                rho[i * dim + j] += col[a] * col[b].conj();
            }
        }
    }
    let tr: f64 = (0..dim).map(|i| rho[i * dim + i].re).sum();
    rho.iter_mut().for_each(|x| *x /= tr);
    rho
}

pub fn to_operator(basis: &Arc<SectorBasis>, dense: &Dense) -> LinearOperator {
    let dim = basis.len();
    let entries = (0..dim * dim).filter(|&k| dense[k] != Complex::new(0.0, 0.0)).map(|k| (k / dim, k % dim, dense[k]));
    LinearOperator::from_entries(basis, entries)
}

pub fn random_density(basis: &Arc<SectorBasis>, support: usize, rng: &mut impl Rng) -> LinearOperator {
    to_operator(basis, &random_density_dense(basis.len(), support, rng))
}

pub fn dense_trace(dim: usize, m: &Dense) -> Amplitude {
    (0..dim).map(|i| m[i * dim + i]).sum()
}
