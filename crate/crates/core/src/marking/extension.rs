use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{phi, phi_inv, GatePair};
use crate::error::Error;
use crate::operator::LinearOperator;
use crate::sector::SectorBasis;

/// The marked extension `U′ = φ† (U ⊗ I) φ` over `marked`, which must be
/// the marked sector of `u`'s universe.
///
/// Each column is computed by sending `G′` through `φ`, applying `U` to the
/// unmarked component and pulling every resulting pair back. A pair that
/// falls outside the image of `φ` means `U` moved vertices; it is reported
/// as a stability violation at `G′`.
pub fn marked_extension(u: &LinearOperator, marked: &Arc<SectorBasis>) -> Result<LinearOperator, Error> {
    let plain = u.basis();
    if !marked.universe().is_marked() || marked.universe().base() != *plain.universe() {
        return Err(Error::BasisMismatch);
    }
    let mut entries = Vec::new();
    for (col, g) in marked.graphs().iter().enumerate() {
        let pair = phi(g)?;
        let x = plain.require_index(&pair.first)?;
        for &(row, a) in u.column(x) {
            let image = GatePair { first: plain.graph(row as usize).clone(), second: pair.second.clone() };
            let back = phi_inv(&image).map_err(|_| Error::StabilityViolation(g.clone()))?;
            entries.push((marked.require_index(&back)?, col, a));
        }
    }
    Ok(LinearOperator::from_entries(marked, entries))
}
