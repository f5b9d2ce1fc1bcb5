mod common;

use common::*;
use qcgd_core::causal::find_radius;
use qcgd_core::marking::{check_inverse_causal, check_one_causal, decompose_and_verify, DecomposeOptions};
use qcgd_core::zoo;
use qcgd_core::Error;

#[test]
fn causal_catalog_entries_decompose_into_local_gates() {
    let opts = DecomposeOptions::default();
    for entry in zoo::catalog().into_iter().filter(|e| e.is_causal()) {
        let (plain, u) = entry.build(1_000_000, EPS).unwrap();
        let (dec, report) = decompose_and_verify(&u, &marked(&plain), &opts).unwrap();
        assert_eq!(dec.gates.len(), plain.universe().vertex_count());
        assert!(report.reconstruction_residual <= EPS, "{}", entry.name);
        assert!(report.reconstruction_unitarity_residual <= EPS);
        assert!(report.max_commutator_residual <= EPS, "{}", entry.name);
        assert!(report.order_residual <= EPS);
        assert_eq!(report.checked_graphs, plain.len());
        for gate in &report.gates {
            assert!(gate.unitarity_residual <= EPS);
            assert!(gate.local_radius.is_some(), "{} gate at {:?}", entry.name, gate.vertex);
        }
    }
}

#[test]
fn joint_flip_has_no_decomposition() {
    let entry = zoo::catalog().into_iter().find(|e| e.name == "joint-flip").unwrap();
    let (plain, u) = entry.build(1_000_000, EPS).unwrap();
    let err = decompose_and_verify(&u, &marked(&plain), &DecomposeOptions::default()).unwrap_err();
    assert!(matches!(err, Error::NotCausal(_)));
}

#[test]
fn inverses_of_causal_entries_are_causal() {
    for entry in zoo::catalog().into_iter().filter(|e| e.is_causal()) {
        let (_, u) = entry.build(1_000_000, EPS).unwrap();
        let cert = check_inverse_causal(&u, 1, 3, EPS).unwrap();
        assert!(cert.n <= 3, "{}", entry.name);
    }
}

#[test]
fn one_causal_entries_are_causal_at_every_radius() {
    for entry in zoo::catalog().into_iter().filter(|e| e.is_causal() && e.vertices == 2) {
        let (_, u) = entry.build(1_000_000, EPS).unwrap();
        let n = find_radius(&u, 1, 3, EPS).unwrap().n;
        let outcome = check_one_causal(&u, n, 3, 3, EPS);
        assert!(outcome.passed(), "{}", entry.name);
        assert_eq!(outcome.certificates.len(), 4);
    }
    let flip = zoo::catalog().into_iter().find(|e| e.name == "joint-flip").unwrap();
    let (_, u) = flip.build(1_000_000, EPS).unwrap();
    assert!(!check_one_causal(&u, 3, 3, 3, EPS).is_one_causal());
}
