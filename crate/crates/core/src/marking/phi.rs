use super::{embed, is_mark_consistent, marked_vertices, mu_set_graph, strip};
use crate::error::Error;
use crate::graph::{self, Graph};

/// Image of a marked graph `G′` under `φ`: the unmarked remainder
/// `Ḡ′_M` (a plain graph) and the marked part `μ_M G′_M`, where `M` is the
/// set of marked vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GatePair {
    /// Graph of the base universe.
    pub first: Graph,
    /// Graph of the marked universe.
    pub second: Graph,
}

pub fn phi(g: &Graph) -> Result<GatePair, Error> {
    if !is_mark_consistent(g) {
        return Err(Error::InvalidMarkedGraph(g.clone()));
    }
    let m = marked_vertices(g);
    let first = strip(&graph::corestrict(g, m)).ok_or_else(|| Error::InvalidMarkedGraph(g.clone()))?;
    let second = mu_set_graph(&graph::restrict(g, m), m);
    Ok(GatePair { first, second })
}

/// Recovers `G′ = X ∪ μ_M H` with `M = V(H) ∖ V(X)`. Pairs outside the
/// image of [`phi`] are rejected.
pub fn phi_inv(pair: &GatePair) -> Result<Graph, Error> {
    let x = embed(&pair.first);
    let m = pair.second.vertex_set().difference(x.vertex_set());
    let h = mu_set_graph(&pair.second, m);
    let g = graph::union(&x, &h).map_err(|_| Error::OutsideImage)?;
    match phi(&g) {
        Ok(back) if back == *pair => Ok(g),
        _ => Err(Error::OutsideImage),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{e, g};
    use crate::graph::VertexSet;
    use crate::marking::mu_set_graph;

    #[test]
    fn unmarked_graph_maps_to_itself_and_empty() {
        let plain = g(&[(0, Some(1)), (1, None)], &[e(0, 0, 1, 1)]);
        let p = phi(&embed(&plain)).unwrap();
        assert_eq!(p, GatePair { first: plain, second: Graph::empty() });
        assert_eq!(phi_inv(&p).unwrap(), embed(&p.first));
    }

    #[test]
    fn fully_marked_graph_maps_to_empty_and_unmarked_copy() {
        // Both vertices marked: labels odd, ports odd.
        let marked = g(&[(0, Some(1)), (1, Some(3))], &[e(0, 1, 1, 3)]);
        let all = VertexSet(0b11);
        let p = phi(&marked).unwrap();
        assert_eq!(p.first, Graph::empty());
        assert_eq!(p.second, mu_set_graph(&marked, all));
        assert_eq!(p.second, g(&[(0, Some(0)), (1, Some(2))], &[e(0, 0, 1, 2)]));
        assert_eq!(phi_inv(&p).unwrap(), marked);
    }

    #[test]
    fn pairs_outside_the_image_are_rejected() {
        let bad = GatePair { first: g(&[(0, Some(0))], &[]), second: g(&[(0, Some(2))], &[]) };
        assert_eq!(phi_inv(&bad), Err(Error::OutsideImage));
        assert!(phi(&g(&[(0, Some(1)), (1, Some(0))], &[e(0, 1, 1, 1)])).is_err());
    }
}
