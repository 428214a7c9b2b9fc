//! Unital subsemigroups `P` of discrete groups `G` with a word problem that
//! is solvable at desk scale.
//!
//! Every family implements [`Model`]: group arithmetic in `G` on canonical
//! normal forms, membership in `P`, a proper length function and the
//! enumeration of the truncation `P_{<=N}`. Families that can represent their
//! constructible right ideals in closed form also implement [`ExactIdeals`]
//! and expose it through [`Model::exact`].
//!
//! Lengths are assumed monotone along right multiplication inside `P`
//! (`length(s) <= length(p * s)` for `p, s` in `P`); all built-in families
//! have additive lengths on `P`. The truncated calculus and the guard-band
//! bookkeeping in [`crate::fock`] rely on this.

mod free_abelian;
mod free_monoid;
mod numerical;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use free_abelian::FreeAbelian;
pub use free_monoid::FreeMonoid;
pub use numerical::Numerical;

/// An element of `G` in the normal form of its model.
///
/// The meaning of the coordinates is model specific: an integer vector for
/// `Z^k`, a freely reduced letter string (`+i` for the `i`-th generator,
/// `-i` for its inverse) for `F_n`, and a single integer for numerical
/// semigroups inside `Z`. Equality of normal forms is equality in `G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(Vec<i64>);

impl Elem {
    pub fn new(coords: Vec<i64>) -> Self {
        Elem(coords)
    }

    pub fn scalar(n: i64) -> Self {
        Elem(vec![n])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("element {elem:?} does not belong to model {model}")]
    Mismatch { model: String, elem: Elem },
    #[error("element {0} is not in P")]
    NotInP(String),
    #[error("invalid model spec: {0}")]
    InvalidSpec(String),
    #[error("cannot parse element {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Closed-form representation of a constructible right ideal.
///
/// Which variant appears depends on the model: `Corner` for `N^k` (the ideal
/// `a + N^k`), `Principal` for free monoids (`wP`), `Numerical` for numerical
/// semigroups (the finite set of members below `tail`, plus every integer
/// `>= tail`). `Empty` is shared by all models.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExactIdeal {
    Empty,
    Corner { corner: Vec<i64> },
    Principal { word: Elem },
    Numerical { below: Vec<i64>, tail: i64 },
}

impl ExactIdeal {
    pub fn is_empty(&self) -> bool {
        matches!(self, ExactIdeal::Empty)
    }
}

/// The optional exact-ideal hook of a model.
pub trait ExactIdeals {
    /// The ideal `P`.
    fn whole(&self) -> ExactIdeal;
    /// `pX = {px | x in X}`.
    fn left_mul(&self, p: &Elem, x: &ExactIdeal) -> ExactIdeal;
    /// `p^{-1}X = {y in P | py in X}`.
    fn preimage(&self, p: &Elem, x: &ExactIdeal) -> ExactIdeal;
    fn intersect(&self, x: &ExactIdeal, y: &ExactIdeal) -> ExactIdeal;
    fn contains(&self, x: &ExactIdeal, a: &Elem) -> bool;
    /// `gP ∩ P` for an arbitrary group element `g`.
    fn translate_meet(&self, g: &Elem) -> ExactIdeal;
    /// A radius `R` such that any Boolean combination of the given ideals
    /// (containment, covering by unions, linear dependence of indicator
    /// functions) is already decided by their members in `P_{<=R}`.
    fn decisive_radius(&self, ideals: &[&ExactIdeal]) -> usize;
}

/// A unital subsemigroup `P` of a group `G`.
pub trait Model: Send + Sync + fmt::Debug {
    fn name(&self) -> String;
    fn spec(&self) -> ModelSpec;
    fn unit(&self) -> Elem;
    fn generators(&self) -> &[Elem];
    /// Checks that `a` is a normal form of this model's group.
    fn validate(&self, a: &Elem) -> Result<(), ModelError>;
    /// Group multiplication on valid normal forms.
    fn mul(&self, a: &Elem, b: &Elem) -> Elem;
    fn inv(&self, a: &Elem) -> Elem;
    fn in_p(&self, a: &Elem) -> bool;
    /// Proper length; defined on all of `G`, `length(e) = 0`.
    fn length(&self, a: &Elem) -> usize;
    /// All `p` in `P` with `length(p) <= max_len`, sorted by
    /// `(length, normal form)`.
    fn enumerate_p(&self, max_len: usize) -> Vec<Elem>;
    fn format(&self, a: &Elem) -> String;
    fn parse(&self, input: &str) -> Result<Elem, ModelError>;
    fn is_abelian(&self) -> bool;

    fn exact(&self) -> Option<&dyn ExactIdeals> {
        None
    }

    /// Upper bound on the least element length of any nonempty ideal
    /// reached by a trace whose left-multiplication entries have the given
    /// total length. Truncations of radius at least this bound detect
    /// emptiness.
    fn least_element_bound(&self, total_q_len: usize) -> Option<usize> {
        let _ = total_q_len;
        None
    }

    fn checked_mul(&self, a: &Elem, b: &Elem) -> Result<Elem, ModelError> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.mul(a, b))
    }

    /// The unique `x` in `P` with `p x = y`, if any.
    fn divide(&self, p: &Elem, y: &Elem) -> Result<Option<Elem>, ModelError> {
        for a in [p, y] {
            self.validate(a)?;
            if !self.in_p(a) {
                return Err(ModelError::NotInP(self.format(a)));
            }
        }
        let x = self.mul(&self.inv(p), y);
        Ok(self.in_p(&x).then_some(x))
    }

    fn is_unit(&self, a: &Elem) -> bool {
        *a == self.unit()
    }

    fn sort_key(&self, a: &Elem) -> (usize, Elem) {
        (self.length(a), a.clone())
    }
}

/// Model construction document, e.g. `{"family":"numerical","generators":[2,3]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSpec {
    FreeAbelian { rank: usize },
    FreeMonoid { rank: usize },
    Numerical { generators: Vec<i64> },
}

impl ModelSpec {
    pub fn build(&self) -> Result<Arc<dyn Model>, ModelError> {
        Ok(match self {
            ModelSpec::FreeAbelian { rank } => Arc::new(FreeAbelian::new(*rank)?),
            ModelSpec::FreeMonoid { rank } => Arc::new(FreeMonoid::new(*rank)?),
            ModelSpec::Numerical { generators } => Arc::new(Numerical::new(generators)?),
        })
    }

    pub fn parse_json(text: &str) -> Result<Self, ModelError> {
        serde_json::from_str(text).map_err(|e| ModelError::InvalidSpec(e.to_string()))
    }
}

/// Product of a list of elements, left to right.
pub fn product<'a>(model: &dyn Model, items: impl IntoIterator<Item = &'a Elem>) -> Elem {
    items
        .into_iter()
        .fold(model.unit(), |acc, x| model.mul(&acc, x))
}
