//! Irreducible modules with a Borel-stable line over `F̄_p`.
//!
//! Digit combinatorics ([`padic`]), the finite field tower ([`gfq`]),
//! characters of `F̄_p^*` as residue towers ([`limitchar`]), root data and
//! Weyl groups ([`rootdata`]), the classification engine ([`classify`]) and
//! an explicit SL₂ laboratory ([`rank1lab`]).

pub mod classify;
pub mod error;
pub mod gfq;
pub mod limitchar;
pub mod padic;
pub mod rank1lab;
pub mod rootdata;

pub use error::{Error, Result};
