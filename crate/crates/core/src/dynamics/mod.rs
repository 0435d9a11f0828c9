//! Coset actions, atomic base spaces, finite rigidity and the outer
//! automorphism evaluators.

pub mod atomic;
pub mod coset;
pub mod out;
pub mod rigidity;
pub mod symbolic;

pub use atomic::{aut_atomic, aut_star_quotient, AtomicSpace, FiniteAction, NormalizerQuotient};
pub use coset::{
    coset_action, moves_cosets_evidence, moves_cosets_scan, weak_mixing_witness, CosetImage, CosetSpace, CosetWindow,
    WeakMixing,
};
pub use out::{out_equiv_relation, out_factor, rel_char_group, relative_characters, OutResult, RelativeCharacters};
pub use rigidity::finite_action_rigidity;
pub use symbolic::SymbolicGroup;
