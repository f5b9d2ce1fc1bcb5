mod common;

use common::*;
use num_complex::Complex;
use qcgd_core::causal::is_localized;
use qcgd_core::marking::*;
use qcgd_core::zoo;
use qcgd_core::{Error, Graph, LinearOperator, StateVector, VertexId};

#[test]
fn mark_operators_are_commuting_local_involutions() {
    let basis = marked(&default_sector());
    let ops: Vec<LinearOperator> = (0..2).map(|i| mu(&basis, VertexId(i)).unwrap()).collect();
    let id = LinearOperator::identity(&basis);
    for (i, m) in ops.iter().enumerate() {
        assert!(m.is_permutation());
        assert!(m.is_vertex_preserving());
        assert_eq!(m.compose(m).unwrap().max_abs_diff(&id).unwrap(), 0.0);
        assert!(is_localized(m, VertexId(i as u8), 1, EPS));
    }
    assert_eq!(ops[0].commutator_residual(&ops[1]).unwrap(), 0.0);
    assert_eq!(mu_product(&basis, basis.universe().all_vertices()).unwrap().max_abs_diff(&ops[0].compose(&ops[1]).unwrap()).unwrap(), 0.0);
}

#[test]
fn mark_operators_keep_graphs_mark_consistent() {
    for basis in [marked(&default_sector()), marked(&sector(3, 1, 2))] {
        for g in basis.graphs() {
            for v in basis.universe().all_vertices().iter() {
                let image = mu_graph(g, v);
                assert!(is_mark_consistent(&image), "{g:?} at {v:?}");
                if !g.contains(v) {
                    assert_eq!(image, *g);
                }
                assert_eq!(mu_graph(&image, v), *g);
            }
        }
    }
}

#[test]
fn phi_round_trips_on_the_marked_sector() {
    for basis in [marked(&default_sector()), marked(&sector(3, 1, 2))] {
        for g in basis.graphs() {
            let pair = phi(g).unwrap();
            assert_eq!(phi_inv(&pair).unwrap(), *g);
            assert!(pair.first.vertex_set().union(pair.second.vertex_set()).is_subset(g.vertex_set()));
        }
    }
}

#[test]
fn phi_splits_unmarked_graphs_trivially() {
    let plain = default_sector();
    for g in plain.graphs() {
        let pair = phi(&embed(g)).unwrap();
        assert_eq!(pair.first, *g);
        assert_eq!(pair.second, Graph::empty());
        assert_eq!(strip(&embed(g)).as_ref(), Some(g));
    }
}

#[test]
fn image_of_phi_is_closed_under_vertex_preserving_edits() {
    // Replacing the unmarked part by any graph on the same vertices stays
    // inside the image, which is what lets U ⊗ I act on it.
    let plain = default_sector();
    let basis = marked(&plain);
    for g in basis.graphs() {
        let pair = phi(g).unwrap();
        let block = &plain.blocks()[&pair.first.vertex_set()];
        for &x in block {
            let swapped = GatePair { first: plain.graph(x as usize).clone(), second: pair.second.clone() };
            let back = phi_inv(&swapped).unwrap();
            assert!(basis.index_of(&back).is_some());
            assert_eq!(phi(&back).unwrap(), swapped);
        }
    }
}

#[test]
fn marked_extension_agrees_with_u_and_fixes_marked_graphs() {
    for entry in zoo::catalog() {
        let (plain, u) = entry.build(1_000_000, EPS).unwrap();
        let basis = marked(&plain);
        let ext = marked_extension(&u, &basis).unwrap();
        assert!(ext.unitarity_residual() <= EPS, "{}", entry.name);
        for g in plain.graphs() {
            let expected: StateVector = u.apply(&StateVector::basis(g.clone())).unwrap().iter().map(|(h, a)| (embed(h), *a)).collect();
            let actual = ext.apply(&StateVector::basis(embed(g))).unwrap();
            assert!(expected.max_abs_diff(&actual) <= EPS, "{} at {g:?}", entry.name);
        }
        let mut fully_marked = 0;
        for (i, g) in basis.graphs().iter().enumerate() {
            if !g.is_empty() && marked_vertices(g) == g.vertex_set() {
                assert_eq!(ext.column(i), &[(i as u32, Complex::new(1.0, 0.0))], "{} at {g:?}", entry.name);
                fully_marked += 1;
            }
        }
        assert!(fully_marked > 0);
    }
}

#[test]
fn extension_rejects_operators_that_move_vertices() {
    let plain = default_sector();
    let a = Graph::new([(VertexId(0), None)], []).unwrap();
    let b = Graph::new([(VertexId(1), None)], []).unwrap();
    let swap = LinearOperator::identity(&plain)
        .sub(&LinearOperator::dyad(&plain, &a, &a).unwrap())
        .unwrap()
        .sub(&LinearOperator::dyad(&plain, &b, &b).unwrap())
        .unwrap()
        .add(&LinearOperator::dyad(&plain, &a, &b).unwrap())
        .unwrap()
        .add(&LinearOperator::dyad(&plain, &b, &a).unwrap())
        .unwrap();
    assert!(!swap.is_vertex_preserving());
    assert!(matches!(marked_extension(&swap, &marked(&plain)), Err(Error::StabilityViolation(_))));
}
