mod common;

use std::sync::Arc;

use common::*;
use num_complex::Complex;
use qcgd_core::causal::*;
use qcgd_core::marking::mu;
use qcgd_core::pair::tensor_extension;
use qcgd_core::trace::{SectorReducer, TraceConvention};
use qcgd_core::zoo::{self, GateDescriptor, GateKind};
use qcgd_core::{Graph, Label, LinearOperator, Port, SectorBasis, VertexId};

fn two_vertex_entries() -> Vec<(&'static str, Arc<SectorBasis>, LinearOperator, Option<u32>)> {
    zoo::catalog()
        .into_iter()
        .filter(|e| e.vertices == 2)
        .map(|e| {
            let (b, u) = e.build(1_000_000, EPS).unwrap();
            (e.name, b, u, e.expected_n)
        })
        .collect()
}

#[test]
fn identity_is_causal_at_equal_radii_only() {
    for basis in [default_sector(), sector(3, 1, 2)] {
        let id = LinearOperator::identity(&basis);
        for m in 0..=2 {
            let cert = is_causal(&id, m, m, EPS).unwrap();
            assert_eq!(cert.max_residual, 0.0);
            // Disks stop growing at the sector's diameter, so n may be smaller.
            assert!(find_radius(&id, m, 3, EPS).unwrap().n <= m);
        }
        assert!(is_causal(&id, 1, 0, EPS).is_err());
    }
}

#[test]
fn literal_border_convention_breaks_the_identity() {
    let basis = sector(3, 1, 2);
    let id = LinearOperator::identity(&basis);
    let mut literal = SectorReducer::with_convention(&basis, TraceConvention::Literal);
    assert!(is_causal_with(&mut literal, &id, 1, 1, EPS).is_err());
    let mut shared = SectorReducer::with_convention(&basis, TraceConvention::SharedBorder);
    assert!(is_causal_with(&mut shared, &id, 1, 1, EPS).is_ok());
}

#[test]
fn certificates_are_monotone_in_n() {
    for (name, _, u, _) in two_vertex_entries() {
        for m in 0..=2 {
            if let Some(cert) = find_radius(&u, m, 3, EPS) {
                for n in cert.n..=3 {
                    assert!(is_causal(&u, m, n, EPS).is_ok(), "{name} at ({m},{n})");
                }
            }
        }
    }
}

#[test]
fn certificates_hold_on_random_density_operators() {
    let mut rng = rng(99);
    for (name, basis, u, expected) in two_vertex_entries() {
        let Some(n) = expected else { continue };
        for _ in 0..20 {
            let rho = random_density(&basis, 8, &mut rng);
            for v in [VertexId(0), VertexId(1)] {
                let r = causality_residual_on(&u, &rho, v, 1, n).unwrap();
                assert!(r <= EPS, "{name}: residual {r}");
            }
        }
    }
}

#[test]
fn joint_flip_breaks_causality_on_some_density_operator() {
    let (_, basis, flip, _) = two_vertex_entries().into_iter().find(|e| e.0 == "joint-flip").unwrap();
    let mut rng = rng(3);
    let worst = (0..20)
        .map(|_| {
            let rho = random_density(&basis, 30, &mut rng);
            causality_residual_on(&flip, &rho, VertexId(0), 0, 0).unwrap()
        })
        .fold(0.0, f64::max);
    assert!(worst > 1e-3, "{worst}");
}

#[test]
fn tensor_extension_inherits_certificates() {
    // One port keeps the pair sector small enough to sweep exhaustively.
    let basis = sector(2, 2, 1);
    let gates = [
        GateDescriptor::new("x", GateKind::LabelUnitary { site: VertexId(0), matrix: zoo::pauli_x() }),
        GateDescriptor::new("h", GateKind::LabelUnitary { site: VertexId(1), matrix: zoo::hadamard() }),
        GateDescriptor::new("swap", GateKind::NeighborSwap { site: VertexId(0), i: Port(0), j: Port(0) }),
        GateDescriptor::new("flip", GateKind::JointFlip { a: VertexId(0), b: VertexId(1) }),
    ];
    for gate in &gates {
        let u = zoo::build(&basis, gate, EPS).unwrap();
        let ext = tensor_extension(&u, &basis).unwrap();
        for m in 0..=1 {
            for n in 0..=2 {
                if is_causal(&u, m, n, EPS).is_ok() {
                    assert!(is_causal(&ext, m, n, EPS).is_ok(), "{} at ({m},{n})", gate.name);
                }
            }
        }
        if gate.name == "flip" {
            assert!(is_causal(&ext, 0, 0, EPS).is_err());
        }
    }
}

#[test]
fn fast_localization_agrees_with_the_dyad_sweep() {
    let mut ops: Vec<LinearOperator> = two_vertex_entries().into_iter().map(|e| e.2).collect();
    let marked = marked(&default_sector());
    ops.push(mu(&marked, VertexId(0)).unwrap());
    ops.push(mu(&marked, VertexId(1)).unwrap().compose(&mu(&marked, VertexId(0)).unwrap()).unwrap());
    for a in &ops {
        for v in [VertexId(0), VertexId(1)] {
            for r in 0..=2 {
                let fast = is_localized(a, v, r, EPS);
                let brute = dual_localization_check(a, v, r, EPS);
                assert_eq!(fast, brute, "v {v:?}, r {r}");
            }
        }
    }
}

#[test]
fn mark_operators_and_local_gates_are_dually_localized() {
    let marked = marked(&default_sector());
    for v in [VertexId(0), VertexId(1)] {
        let m = mu(&marked, v).unwrap();
        assert!(dual_localization_check(&m, v, 1, EPS));
    }
    let basis = default_sector();
    let x = zoo::build_label_unitary(&basis, &zoo::pauli_x(), VertexId(0), EPS).unwrap();
    assert!(dual_localization_check(&x, VertexId(0), 0, EPS));
    let swap = zoo::build_neighbor_swap(&basis, VertexId(0), Port(0), Port(1)).unwrap();
    assert_eq!(min_local_radius(&swap, VertexId(0), 3, EPS), Some(1));
    assert!(dual_localization_check(&swap, VertexId(0), 1, EPS));
    assert!(!dual_localization_check(&swap, VertexId(0), 0, EPS));
}

fn graph(basis: &SectorBasis, labels: [Option<u16>; 2]) -> Graph {
    let g = Graph::new((0..2).map(|i| (VertexId(i), labels[i as usize].map(Label))), []).unwrap();
    assert!(basis.index_of(&g).is_some());
    g
}

/// `|<a[0],b[0]>⟩⟨<a[0],b[1]>|`: the two graphs differ at b only, so this
/// dyad is not localized at a for any radius that misses b.
fn far_perturbation(basis: &Arc<SectorBasis>, delta: f64) -> LinearOperator {
    let g = graph(basis, [Some(0), Some(0)]);
    let h = graph(basis, [Some(0), Some(1)]);
    LinearOperator::dyad(basis, &g, &h).unwrap().scale(Complex::new(delta, 0.0))
}

#[test]
fn heisenberg_picture_stays_localized() {
    let basis = default_sector();
    let a = VertexId(0);
    let family = [
        LinearOperator::identity(&basis),
        zoo::build_label_unitary(&basis, &zoo::pauli_x(), a, EPS).unwrap(),
        zoo::build_label_unitary(&basis, &zoo::hadamard(), a, EPS).unwrap(),
        zoo::build_controlled_toggle(&basis, a).unwrap(),
        zoo::build_neighbor_swap(&basis, a, Port(0), Port(1)).unwrap(),
    ];
    let mut products = Vec::new();
    for x in &family {
        for y in &family {
            products.push(x.compose(y).unwrap());
        }
    }
    let observables: Vec<&LinearOperator> = family.iter().chain(&products).filter(|o| is_localized(o, a, 1, EPS)).collect();
    assert!(observables.len() > family.len());

    for (name, _, u, expected) in two_vertex_entries() {
        let Some(n) = expected else { continue };
        let cert = is_causal(&u, 1, n, EPS).unwrap();
        for obs in &observables {
            assert!(dual_causality_check(&u, &cert, obs, a, EPS).unwrap(), "{name}");
        }
        // Perturbed observables are no longer 1-localized at a.
        let bad = observables[0].add(&far_perturbation(&basis, 1e-3)).unwrap();
        assert!(matches!(dual_causality_check(&u, &cert, &bad, a, EPS), Err(qcgd_core::Error::Precondition(_))));
        // A perturbed Heisenberg operator fails the localization check.
        let heis = u.adjoint().compose(observables[1]).unwrap().compose(&u).unwrap();
        assert!(is_localized(&heis, a, n, EPS));
        let perturbed = heis.add(&far_perturbation(&basis, 1e-6)).unwrap();
        let w = locality_violation(&perturbed, a, n, EPS).expect("perturbation detected");
        assert!(w.residual() > EPS);
    }
}
