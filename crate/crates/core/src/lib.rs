//! Minimal moduli of continuity for one-dimensional functions built from
//! the Cantor staircase, the power map `x^α` (`α = log 2 / log 3`) and the
//! identity.
//!
//! The crate ships:
//!
//! * [`real_fn`]: composable piecewise functions on compact intervals and the
//!   fixed gallery `f₁` (Cantor), `f₂`, `f₃`, `f`, `g`, `h`;
//! * [`modulus`]: a brute-force grid oracle for `ω(δ) = max{|f(x) − f(y)| : |x − y| ≤ δ}`,
//!   the exact critical-point analysis of `ω_g` and its closed form, and the
//!   least concave majorant of a sampled modulus;
//! * [`analysis`]: numerical checks of the supporting inequalities, the
//!   substitution argument showing `ω_f = ω_g`, and interval-cover witnesses that
//!   separate absolutely continuous from singular behaviour;
//! * [`cli`]: the `modcont` command-line front end.

// `!(a <= b)` is used deliberately so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cantor;
pub mod cli;
mod error;
pub mod format;
pub mod modulus;
pub mod real_fn;
pub mod sparse;

pub use cantor::{cantor_eval, DEFAULT_CANTOR_DIGITS};
pub use error::{Error, Result, DOMAIN_SLACK};
pub use real_fn::{
    alpha, f2_eval, f3_eval, Interval, NamedFn, Piece, PiecewiseFn, Primitive, Transform,
};
