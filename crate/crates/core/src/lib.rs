//! Exact computations with rational maps `P^1 -> P^(n-1)` given by binary
//! forms: Hilbert-Burch matrices, fibers and the map degree,
//! reparameterization through the degree-`r` cover, and the core of the
//! ideal of the generators.
//!
//! Arithmetic is exact over `F_p` ([`field::PrimeField`]) or the rationals
//! ([`field::RationalField`]). Randomized steps take an explicit `Rng`.
//!
//! The guide in `book/` walks through each module with runnable examples.

pub mod corpus;
pub mod error;
pub mod fiber;
pub mod field;
pub mod form;
pub mod ideal;
pub mod matrix;
pub mod monomial;
pub mod param;
pub mod parse;
pub mod reparam;
pub mod report;
pub mod syzygy;

pub use error::{Error, Result};

// The book chapters run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/forms.md")]
    mod forms {}
    #[doc = include_str!("../../../book/src/ideals.md")]
    mod ideals {}
    #[doc = include_str!("../../../book/src/hilbert-burch.md")]
    mod hilbert_burch {}
    #[doc = include_str!("../../../book/src/fibers.md")]
    mod fibers {}
    #[doc = include_str!("../../../book/src/reparam.md")]
    mod reparam {}
    #[doc = include_str!("../../../book/src/monomial.md")]
    mod monomial {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
