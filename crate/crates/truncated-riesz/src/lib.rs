//! Exact rational models of truncated normed Riesz spaces and the lattice
//! norms on their unitization.
//!
//! A *truncated* normed Riesz space is a normed vector lattice `E` carrying
//! a truncation: a map `x -> tau(x)` on the positive cone with
//! `x /\ tau(y) <= tau(x) <= x`, abstracting "min with the constant 1". The
//! direct sum `E (+) R` can be ordered so that `E` becomes a Riesz subspace
//! and the truncation becomes meet with `1`; this crate implements that
//! structure, the extreme lattice norms extending the base norm, and a
//! property verifier that checks every supported claim with exact rational
//! arithmetic — no floating point anywhere in the computation path.
//!
//! Three desk-scale carriers are built in:
//!
//! * [`Carrier::coordinate`] — `Q^n` with a truncation unit and a
//!   weighted-L1 norm;
//! * [`Carrier::interval`] — piecewise-linear functions on `[-1, 1]`
//!   vanishing at the endpoints, with the norm `(1/2) Int |f|`;
//! * [`Carrier::compact_support`] — compactly supported piecewise-linear
//!   functions on the real line with the sup norm.
//!
//! ```
//! use truncated_riesz::{norms, Carrier, Rational, UnitizedElement};
//!
//! let carrier = Carrier::default_coordinate();
//! let one = UnitizedElement::one(&carrier);
//! assert_eq!(norms::norm1(&carrier, &one).unwrap(), Rational::one());
//! assert_eq!(norms::norm0(&carrier, &one).unwrap(), Rational::one());
//! ```
//!
//! The `book/` directory of the repository is an mdBook guide whose code
//! snippets compile and run as doc-tests of this crate (see `bookdoc`).

pub mod axioms;
pub mod carrier;
pub mod error;
pub mod norms;
pub mod pl;
pub mod rational;
pub mod unitization;
pub mod verifier;

pub use carrier::{Carrier, CarrierConfig, CarrierKind, CoordinateVector, Element, GenParams};
pub use error::{Error, Result};
pub use pl::{Domain, PLFunction};
pub use rational::Rational;
pub use unitization::UnitizedElement;

/// Doc-tested guide chapters: each `rust` code block in the book is compiled
/// and run by `cargo test --doc`, keeping the narrative in sync with the
/// library.
#[cfg(doctest)]
mod bookdoc {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;

    #[doc = include_str!("../../../book/src/truncation.md")]
    pub struct Truncation;

    #[doc = include_str!("../../../book/src/carriers.md")]
    pub struct Carriers;

    #[doc = include_str!("../../../book/src/unitization.md")]
    pub struct Unitization;

    #[doc = include_str!("../../../book/src/norms.md")]
    pub struct Norms;

    #[doc = include_str!("../../../book/src/density.md")]
    pub struct Density;

    #[doc = include_str!("../../../book/src/representation.md")]
    pub struct Representation;

    #[doc = include_str!("../../../book/src/verifier.md")]
    pub struct Verifier;
}
