//! Exact certificates for integer matrix group pairs.
//!
//! The crate is organised bottom-up: [`exactlin`] provides integer linear
//! algebra, [`numfield`] arithmetic in monogenic number fields, [`groups`]
//! group elements, the registry and certificate trees, [`malnorm`] the
//! malnormality certificates, [`cohom`] cocycle computations and [`dynamics`]
//! coset actions and the outer automorphism evaluators.

pub mod claim;
pub mod cohom;
pub mod dynamics;
pub mod error;
pub mod exactlin;
pub mod groups;
pub mod intrepr;
pub mod malnorm;
pub mod numfield;

/// Toolkit version recorded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use claim::{CertifiedClaim, Status};
pub use error::{Error, Result};
pub use exactlin::{IntMatrix, IntPolynomial, IntVector, SnfResult};
pub use groups::{AmbientGroupSpec, Family, GroupElement, GroupPair, Registry, SubgroupSpec};
pub use numfield::{NumberField, NumberFieldElement};
