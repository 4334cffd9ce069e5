//! Decision procedures for ω-terms over the free pro-aperiodic monoid.
//!
//! * [`term`]: ω-term syntax.
//! * [`efclass`]: ≡_k classes of finite words, EF-game oracle, quotient monoids.
//! * [`regword`]: canonical forms and the word problem for ω-terms.
//! * [`automata`]: finite automata used to carry regular languages.
//! * [`factors`]: prefix, suffix and factor languages; regular J-classes.
//! * [`gen`]: random terms and monoids for testing.
//! * [`monoid`]: finite monoids, Green's relations, evaluation of ω-terms.

pub mod error;
pub mod monoid;
pub mod par;
pub mod term;
pub mod efclass;
pub mod regword;
pub mod automata;
pub mod factors;
pub mod gen;

pub use error::{AutomatonError, EfError, FactorError, MonoidError, RegwordError, TermError};
pub use par::Execution;
pub use term::{Alphabet, OmegaTerm};
