//! Numerical verification of the supporting inequalities, the equality of
//! moduli for `f` and `g`, the closed form of `ω_g`, and witnesses for (the
//! failure of) absolute continuity.
//!
//! Absolute continuity cannot be decided from samples. Two proxies are used:
//! Cantor covers whose total length shrinks while `f`'s increment sum stays at
//! 1 (a witness against), and random-family increment profiles that shrink with
//! the total length (evidence for).

mod cover;
mod lemmas;
mod lipschitz;
mod profile;
mod report;
mod substitution;
mod verify;

pub use cover::{increment_sum, singular_cover, CoverFamily, MAX_COVER_LEVEL};
pub use lemmas::{check_lemma_bounds, LEMMA_TOLERANCE};
pub use lipschitz::{
    lipschitz_check, lipschitz_constants, random_piecewise_linear, verify_lipschitz_family,
    LipschitzConstants,
};
pub use profile::{
    ac_profile, random_family, singular_cover_profile, OmegaGClosed, ProfilePoint, RealFunction,
    FAMILY_SIZE,
};
pub use report::VerificationReport;
pub use substitution::{substitute_pair, verify_substitution_pairs, SUBSTITUTION_TOLERANCE};
pub use verify::*;
