//! Arithmetic in monogenic number fields.

pub mod field;
pub mod galois;
pub mod invariants;

pub use field::{NumberField, NumberFieldElement};
pub use galois::{galois_closure, unit_galois_matrix, GaloisAction, ZBasis};
pub use invariants::{
    discriminant, has_cyclotomic_factor, intermediate_field_free, is_cyclotomic_product,
    quartic_galois_type, resolvent_cubic, QuarticGaloisType,
};
