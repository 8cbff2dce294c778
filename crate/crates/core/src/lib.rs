//! Exact Chow-ring arithmetic and Chern classes of parabolic vector bundles.
//!
//! Parabolic Chern classes are computed through a formal Galois cover: the
//! parabolic bundle `E` on `X` corresponds to an ordinary bundle `E'` on the
//! cover `Y`, and the classes of `E` are the classes of `E'` transported back
//! through the isomorphism between the Chow ring of `X` and the invariant
//! part of the Chow ring of `Y`.

pub mod chow_model;
pub mod dsl;
pub mod error;
pub mod graded_ring;
pub mod grothendieck;
pub mod parabolic;
pub mod random;
pub mod rational;

pub use error::{Error, Result};
pub use graded_ring::{
    character_from_chern, chern_from_character, Generator, GradedRing, Monomial, RewriteRule,
    RingElement,
};
pub use rational::Rational;
