mod common;

use common::*;
use num_complex::Complex;
use qcgd_core::graph::{self, Graph};
use qcgd_core::trace::{partial_trace, reduce_dyad, TraceConvention};
use qcgd_core::{LinearOperator, SectorBasis, VertexId, VertexSet};

/// Reduced dyad computed from the graph operations alone, without the
/// library's reducer: restrict both sides to `D`, compare the complements,
/// then give each side the border vertices only the other side has.
fn oracle_reduce(g: &Graph, h: &Graph, v: VertexId, r: u32) -> Option<(Graph, Graph)> {
    let s = VertexSet::singleton(v);
    let d = graph::disk_vertices(g, s, r).union(graph::disk_vertices(h, s, r));
    let (dg, dh) = (d.intersection(g.vertex_set()), d.intersection(h.vertex_set()));
    if graph::corestrict(g, dg) != graph::corestrict(h, dh) {
        return None;
    }
    let (gr, hr) = (graph::restrict(g, dg), graph::restrict(h, dh));
    let border = |x: &Graph| x.vertex_set().difference(d);
    let pad = |x: &Graph, extra: VertexSet| {
        let isolated = Graph::new(extra.iter().map(|w| (w, None)), []).unwrap();
        graph::union(x, &isolated).unwrap()
    };
    let (bg, bh) = (border(&gr), border(&hr));
    Some((pad(&gr, bh.difference(bg)), pad(&hr, bg.difference(bh))))
}

fn oracle_trace(basis: &SectorBasis, rho: &Dense, v: VertexId, r: u32) -> Dense {
    let dim = basis.len();
    let mut out = vec![Complex::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let a = rho[i * dim + j];
            if a == Complex::new(0.0, 0.0) {
                continue;
            }
            if let Some((gr, hr)) = oracle_reduce(basis.graph(i), basis.graph(j), v, r) {
                out[basis.index_of(&gr).unwrap() * dim + basis.index_of(&hr).unwrap()] += a;
            }
        }
    }
    out
}

#[test]
fn every_basis_dyad_keeps_its_trace() {
    for basis in [default_sector(), sector(3, 1, 2)] {
        let vertices: Vec<VertexId> = basis.universe().all_vertices().iter().collect();
        for g in 0..basis.len() {
            for h in 0..basis.len() {
                for &v in &vertices {
                    for r in 0..=2 {
                        let red = reduce_dyad(&basis, TraceConvention::SharedBorder, g, h, v, r);
                        let trace = red.map_or(0, |(a, b)| usize::from(a == b));
                        assert_eq!(trace, usize::from(g == h), "{:?} {:?}", basis.graph(g), basis.graph(h));
                    }
                }
            }
        }
    }
}

#[test]
fn random_density_operators_keep_their_trace() {
    let basis = default_sector();
    let dim = basis.len();
    let mut rng = rng(2024);
    for sample in 0..50 {
        let dense = random_density_dense(dim, 12, &mut rng);
        let rho = to_operator(&basis, &dense);
        assert!((rho.trace() - Complex::new(1.0, 0.0)).norm() <= EPS);
        for v in [VertexId(0), VertexId(1)] {
            for r in 0..=2 {
                let expected = oracle_trace(&basis, &dense, v, r);
                assert!((dense_trace(dim, &expected) - Complex::new(1.0, 0.0)).norm() <= EPS);
                let red = partial_trace(&rho, v, r);
                assert!((red.trace() - rho.trace()).norm() <= EPS, "sample {sample}, v {v:?}, r {r}");
                let diff = red.max_abs_diff(&to_operator(&basis, &expected)).unwrap();
                assert!(diff <= EPS, "sample {sample}: library and oracle differ by {diff}");
            }
        }
    }
}

#[test]
fn partial_trace_is_linear() {
    let basis = default_sector();
    let mut rng = rng(5);
    let (alpha, beta) = (Complex::new(0.3, -1.2), Complex::new(-0.7, 0.4));
    for _ in 0..10 {
        let rho = random_density(&basis, 10, &mut rng);
        let tau = random_density(&basis, 10, &mut rng);
        let mix = rho.scale(alpha).add(&tau.scale(beta)).unwrap();
        for r in 0..=2 {
            let lhs = partial_trace(&mix, VertexId(1), r);
            let rhs = partial_trace(&rho, VertexId(1), r).scale(alpha).add(&partial_trace(&tau, VertexId(1), r).scale(beta)).unwrap();
            assert!(lhs.max_abs_diff(&rhs).unwrap() <= EPS);
        }
    }
}

#[test]
fn literal_convention_is_not_stable_under_repeated_reduction() {
    let basis = sector(3, 1, 2);
    let (mut shared_unstable, mut literal_unstable) = (0, 0);
    for g in 0..basis.len() {
        for h in 0..basis.len() {
            for (conv, counter) in [
                (TraceConvention::SharedBorder, &mut shared_unstable),
                (TraceConvention::Literal, &mut literal_unstable),
            ] {
                let v = VertexId(2);
                if let Some((a, b)) = reduce_dyad(&basis, conv, g, h, v, 1) {
                    if reduce_dyad(&basis, conv, a, b, v, 1) != Some((a, b)) {
                        *counter += 1;
                    }
                }
            }
        }
    }
    assert_eq!(shared_unstable, 0);
    assert!(literal_unstable > 0);
}

#[test]
fn basis_dyad_traces_match_the_operator_algebra() {
    let basis = default_sector();
    let g = basis.graph(17).clone();
    let h = basis.graph(40).clone();
    assert_eq!(LinearOperator::dyad(&basis, &g, &g).unwrap().trace(), Complex::new(1.0, 0.0));
    assert_eq!(LinearOperator::dyad(&basis, &g, &h).unwrap().trace(), Complex::new(0.0, 0.0));
}
