//! Group cohomology from presentations and scalar 2-cocycles.

pub mod abelian;
pub mod cocycle2;
pub mod h1;
pub mod sp;

pub use abelian::{abelianization, abelianize, Abelianization};
pub use cocycle2::{
    coboundary_class, parse_rational, two_cocycle_check, ClassReport, CohomologyClass, ConjugateComparison,
    ExpCocycle,
};
pub use h1::{coboundary_matrix, cocycle_constraints, h1, OneCohomology, PresentationAction};
pub use sp::{h1_sp_structured, sp_constraint_system, verify_steinberg_commutator};

use serde_json::json;

use crate::claim::CertifiedClaim;
use crate::error::Result;
use crate::groups::{Presentation, Registry};

/// `H^1` of a registry presentation acting on `Z^n` through its images.
///
/// The solver result is exact for the presented group; the completeness child
/// carries what is needed to transfer it to the matrix group.
pub fn h1_report(registry: &Registry, pres: &Presentation) -> Result<CertifiedClaim> {
    let pa = PresentationAction::from_presentation(pres)?;
    let h = h1(&pa)?;
    let solver = CertifiedClaim::computed(format!("H^1 of the presentation {} is {}", pres.id, h.describe()))
        .with_data(json!({
            "z1_rank": h.z1_basis.len(),
            "torsion": h.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "free_rank": h.free_rank,
        }));
    Ok(CertifiedClaim::aggregate(
        format!("H^1({}, Z^{}) = {}", pres.id, pa.rank, h.describe()),
        vec![solver, registry.completeness_claim(pres)?],
    )
    .with_data(json!({ "h1": h.describe(), "vanishes": h.is_zero() })))
}

/// Abelianization and character group of a registry presentation.
pub fn char_report(registry: &Registry, pres: &Presentation) -> Result<CertifiedClaim> {
    let ab = abelianization(pres)?;
    let solver = CertifiedClaim::computed(format!("the abelianization of {} is {}", pres.id, ab.describe()));
    Ok(CertifiedClaim::aggregate(
        format!("Char({}) = {}", pres.id, ab.character_group()),
        vec![solver, registry.completeness_claim(pres)?],
    )
    .with_data(json!({
        "abelianization": ab.describe(),
        "character_group": ab.character_group(),
        "order": ab.order().map(|o| o.to_string()),
    })))
}
