//! Computational laboratory for semigroup C*-algebra structure.
//!
//! Given a unital subsemigroup `P` of a discrete group `G` (one of the
//! built-in [`model`] families), the crate computes
//!
//! - the constructible right ideals of `P` and their lattice ([`ideals`]),
//! - the inverse semigroup of V-words realized as partial bijections
//!   ([`invsgp`]),
//! - characters of the diagonal, the partial action of `G` on them and the
//!   minimal boundary ([`spectrum`]),
//! - exact truncated matrices of the left regular representation, the
//!   diagonal conditional expectation and the strong covariance norms
//!   ([`fock`]).
//!
//! [`report`] glues these into a batch run driven by a JSON config.

pub mod ideals;
pub mod invsgp;
pub mod linalg;
pub mod model;
pub mod report;
pub mod fock;
pub mod spectrum;

pub use invsgp::VWord;
pub use ideals::{ConstructibleIdeal, Equality, IdealCalculus, Tier, WordTrace};
pub use model::{Elem, ExactIdeal, Model, ModelError, ModelSpec};
