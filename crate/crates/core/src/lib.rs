//! Exact computations with silting objects in bounded derived categories of
//! Dynkin quivers: representations, projective complexes, mutation, and the
//! endomorphism algebras of silting objects.

pub mod checks;
pub mod derived;
pub mod endo;
pub mod error;
pub mod export;
pub mod indec;
pub mod instance;
pub mod linalg;
pub mod quiver;
pub mod replicated;
pub mod rep;
pub mod roots;
pub mod silting;
pub mod suite;

pub use error::{Error, Result};
