//! Ambient groups, elements, words, presentations and subgroups.

pub mod ambient;
pub mod ball;
pub mod element;
pub mod icc;
pub mod presentation;
pub mod registry;
pub mod subgroup;
pub mod words;

pub use ambient::{AmbientGroupSpec, Family};
pub use ball::{word_ball, word_ball_from, Ball};
pub use element::GroupElement;
pub use presentation::{Completeness, Presentation};
pub use words::{decompose, Letter, Word};
pub use subgroup::{Membership, MembershipOracle, SignedCyclicOracle, SubgroupSpec, UnitEmbedding, Witness};
pub use registry::{Axiom, AutQuotient, GroupPair, Registry, SymbolicPair};
pub use icc::icc_certificate;
