//! Constructible right ideals `p_1^{-1} q_1 ... p_n^{-1} q_n P`.
//!
//! An [`IdealCalculus`] evaluates ideals in one of two tiers: `Exact`, using
//! the model's closed-form representation, or `Truncated`, carrying the
//! member list inside `P_{<=R}`. Every ideal remembers the word that produced
//! it, and every operation extends that word the way the defining formulas
//! do, so intersections are evaluated through the trace identity
//! `q_1^{-1}p_1...q_m^{-1}p_m p_m^{-1}q_m...p_1^{-1}q_1 X = y ∩ X` rather than
//! by a direct set operation.

mod independence;
mod lattice;
mod ore;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{product, Elem, ExactIdeal, ExactIdeals, Model, ModelError};

pub use independence::{independence_rank_oracle, independence_test, Independence, RankVerdict};
pub use lattice::{enumerate_ideals, Alphabet, EnumerationCaps, Lattice, LatticeExport, EMPTY, WHOLE};
pub use ore::{ore_test, OreVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("model {0} has no exact ideal representation")]
    NoExactForms(String),
    #[error("truncation radius {radius} cannot absorb a factor of length {needed}")]
    TruncationExhausted { needed: usize, radius: usize },
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
}

/// The word `[(p_1, q_1), ..., (p_n, q_n)]` with its group element
/// `p_1^{-1} q_1 ... p_n^{-1} q_n` cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordTrace {
    pairs: Vec<(Elem, Elem)>,
    grading: Elem,
}

impl WordTrace {
    pub fn new(model: &dyn Model, pairs: Vec<(Elem, Elem)>) -> Result<Self, ModelError> {
        for (p, q) in &pairs {
            for a in [p, q] {
                model.validate(a)?;
                if !model.in_p(a) {
                    return Err(ModelError::NotInP(model.format(a)));
                }
            }
        }
        let grading = Self::compute_grading(model, &pairs);
        Ok(WordTrace { pairs, grading })
    }

    pub fn empty(model: &dyn Model) -> Self {
        WordTrace {
            pairs: Vec::new(),
            grading: model.unit(),
        }
    }

    /// The single pair `(e, p)`, i.e. `V_p`.
    pub fn isometry(model: &dyn Model, p: &Elem) -> Result<Self, ModelError> {
        Self::new(model, vec![(model.unit(), p.clone())])
    }

    fn compute_grading(model: &dyn Model, pairs: &[(Elem, Elem)]) -> Elem {
        let factors: Vec<Elem> = pairs
            .iter()
            .flat_map(|(p, q)| [model.inv(p), q.clone()])
            .collect();
        product(model, &factors)
    }

    pub fn pairs(&self) -> &[(Elem, Elem)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn grading(&self) -> &Elem {
        &self.grading
    }

    /// Recomputes the group element from the entries.
    pub fn grading_consistent(&self, model: &dyn Model) -> bool {
        Self::compute_grading(model, &self.pairs) == self.grading
    }

    /// Reverse the word and swap every pair: the trace of the adjoint word.
    pub fn starred(&self, model: &dyn Model) -> Self {
        let pairs: Vec<_> = self
            .pairs
            .iter()
            .rev()
            .map(|(p, q)| (q.clone(), p.clone()))
            .collect();
        WordTrace {
            grading: model.inv(&self.grading),
            pairs,
        }
    }

    pub fn concat(&self, model: &dyn Model, other: &WordTrace) -> Self {
        let mut pairs = self.pairs.clone();
        pairs.extend(other.pairs.iter().cloned());
        WordTrace {
            grading: model.mul(&self.grading, &other.grading),
            pairs,
        }
    }

    pub fn prepend(&self, model: &dyn Model, p: &Elem, q: &Elem) -> Self {
        let mut pairs = Vec::with_capacity(self.pairs.len() + 1);
        pairs.push((p.clone(), q.clone()));
        pairs.extend(self.pairs.iter().cloned());
        let head = model.mul(&model.inv(p), q);
        WordTrace {
            grading: model.mul(&head, &self.grading),
            pairs,
        }
    }

    /// Total length of the right-hand (`q`) entries.
    pub fn q_length(&self, model: &dyn Model) -> usize {
        self.pairs.iter().map(|(_, q)| model.length(q)).sum()
    }

    pub fn p_length(&self, model: &dyn Model) -> usize {
        self.pairs.iter().map(|(p, _)| model.length(p)).sum()
    }

    pub fn render(&self, model: &dyn Model) -> String {
        if self.pairs.is_empty() {
            return "[]".to_string();
        }
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|(p, q)| format!("({},{})", model.format(p), model.format(q)))
            .collect();
        format!("[{}]", parts.join(" "))
    }

    pub fn to_strings(&self, model: &dyn Model) -> Vec<[String; 2]> {
        self.pairs
            .iter()
            .map(|(p, q)| [model.format(p), model.format(q)])
            .collect()
    }
}

/// Which representation an [`IdealCalculus`] computes in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tier", rename_all = "snake_case")]
pub enum Tier {
    Exact,
    Truncated { radius: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSet {
    /// Members within the radius, sorted by the model's `(length, normal form)` order.
    pub members: Vec<Elem>,
    pub radius: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IdealRepr {
    Exact(ExactIdeal),
    Truncated(TruncatedSet),
}

/// Deduplication key: exact normal form, or the truncated member set
/// together with its radius.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdealKey {
    Exact(ExactIdeal),
    Truncated { members: Vec<Elem>, radius: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConstructibleIdeal {
    /// `None` only for the formally adjoined empty ideal.
    trace: Option<WordTrace>,
    repr: IdealRepr,
}

impl ConstructibleIdeal {
    pub fn trace(&self) -> Option<&WordTrace> {
        self.trace.as_ref()
    }

    pub fn repr(&self) -> &IdealRepr {
        &self.repr
    }

    pub fn exact(&self) -> Option<&ExactIdeal> {
        match &self.repr {
            IdealRepr::Exact(x) => Some(x),
            IdealRepr::Truncated(_) => None,
        }
    }

    pub fn radius(&self) -> Option<usize> {
        match &self.repr {
            IdealRepr::Exact(_) => None,
            IdealRepr::Truncated(t) => Some(t.radius),
        }
    }

    pub fn trace_len(&self) -> usize {
        self.trace.as_ref().map_or(0, |t| t.len())
    }
}

/// Outcome of comparing two ideals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Equality {
    Equal,
    Distinct,
    /// Member sets agree on `P_{<=radius}` but nothing certifies equality.
    Undecided { radius: usize },
}

impl Equality {
    pub fn is_equal(self) -> bool {
        matches!(self, Equality::Equal)
    }

    pub fn is_distinct(self) -> bool {
        matches!(self, Equality::Distinct)
    }

    pub fn definite(self) -> Option<bool> {
        match self {
            Equality::Equal => Some(true),
            Equality::Distinct => Some(false),
            Equality::Undecided { .. } => None,
        }
    }
}

/// Evaluates constructible ideals of one model in one tier.
#[derive(Clone)]
pub struct IdealCalculus {
    model: Arc<dyn Model>,
    tier: Tier,
}

impl fmt::Debug for IdealCalculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdealCalculus")
            .field("model", &self.model.name())
            .field("tier", &self.tier)
            .finish()
    }
}

impl IdealCalculus {
    pub fn new(model: Arc<dyn Model>, tier: Tier) -> Result<Self, IdealError> {
        if tier == Tier::Exact && model.exact().is_none() {
            return Err(IdealError::NoExactForms(model.name()));
        }
        Ok(IdealCalculus { model, tier })
    }

    /// Exact tier when the model has closed forms, otherwise truncated at `radius`.
    pub fn best(model: Arc<dyn Model>, radius: usize) -> Self {
        let tier = if model.exact().is_some() {
            Tier::Exact
        } else {
            Tier::Truncated { radius }
        };
        IdealCalculus { model, tier }
    }

    pub fn model(&self) -> &dyn Model {
        self.model.as_ref()
    }

    pub fn model_arc(&self) -> &Arc<dyn Model> {
        &self.model
    }

    pub fn tier(&self) -> Tier {
        self.tier
    }

    fn hook(&self) -> &dyn ExactIdeals {
        self.model
            .exact()
            .expect("exact tier is only constructed for models with closed forms")
    }

    fn sort(&self, members: &mut Vec<Elem>) {
        let m = self.model.as_ref();
        members.sort_by_cached_key(|x| m.sort_key(x));
        members.dedup();
    }

    /// The ideal `P` with the empty trace.
    pub fn whole(&self) -> ConstructibleIdeal {
        let repr = match self.tier {
            Tier::Exact => IdealRepr::Exact(self.hook().whole()),
            Tier::Truncated { radius } => IdealRepr::Truncated(TruncatedSet {
                members: self.model.enumerate_p(radius),
                radius,
            }),
        };
        ConstructibleIdeal {
            trace: Some(WordTrace::empty(self.model.as_ref())),
            repr,
        }
    }

    /// The formally adjoined empty ideal.
    pub fn empty(&self) -> ConstructibleIdeal {
        let repr = match self.tier {
            Tier::Exact => IdealRepr::Exact(ExactIdeal::Empty),
            Tier::Truncated { radius } => IdealRepr::Truncated(TruncatedSet {
                members: Vec::new(),
                radius,
            }),
        };
        ConstructibleIdeal { trace: None, repr }
    }

    /// `pP`.
    pub fn principal(&self, p: &Elem) -> Result<ConstructibleIdeal, IdealError> {
        self.left_mul(p, &self.whole())
    }

    fn check_in_p(&self, p: &Elem) -> Result<(), IdealError> {
        self.model.validate(p)?;
        if !self.model.in_p(p) {
            return Err(ModelError::NotInP(self.model.format(p)).into());
        }
        Ok(())
    }

    fn left_mul_repr(&self, p: &Elem, x: &IdealRepr) -> IdealRepr {
        let m = self.model.as_ref();
        match x {
            IdealRepr::Exact(e) => IdealRepr::Exact(self.hook().left_mul(p, e)),
            IdealRepr::Truncated(t) => {
                let mut members: Vec<Elem> = t
                    .members
                    .iter()
                    .map(|s| m.mul(p, s))
                    .filter(|s| m.length(s) <= t.radius)
                    .collect();
                self.sort(&mut members);
                IdealRepr::Truncated(TruncatedSet {
                    members,
                    radius: t.radius,
                })
            }
        }
    }

    fn preimage_repr(&self, p: &Elem, x: &IdealRepr) -> Result<IdealRepr, IdealError> {
        let m = self.model.as_ref();
        Ok(match x {
            IdealRepr::Exact(e) => IdealRepr::Exact(self.hook().preimage(p, e)),
            IdealRepr::Truncated(t) => {
                let plen = m.length(p);
                if plen > t.radius {
                    return Err(IdealError::TruncationExhausted {
                        needed: plen,
                        radius: t.radius,
                    });
                }
                let radius = t.radius - plen;
                let set: HashSet<&Elem> = t.members.iter().collect();
                let members = m
                    .enumerate_p(radius)
                    .into_iter()
                    .filter(|y| set.contains(&m.mul(p, y)))
                    .collect();
                IdealRepr::Truncated(TruncatedSet { members, radius })
            }
        })
    }

    /// `pX`; the trace gains the pair `(e, p)` in front.
    pub fn left_mul(&self, p: &Elem, x: &ConstructibleIdeal) -> Result<ConstructibleIdeal, IdealError> {
        let m = self.model.as_ref();
        self.step(&m.unit(), p, x)
    }

    /// `p^{-1}X = {y in P | py in X}`; the trace gains `(p, e)` in front.
    pub fn preimage(&self, p: &Elem, x: &ConstructibleIdeal) -> Result<ConstructibleIdeal, IdealError> {
        let m = self.model.as_ref();
        self.step(p, &m.unit(), x)
    }

    /// `p^{-1} q X`; the trace gains `(p, q)` in front.
    pub fn step(&self, p: &Elem, q: &Elem, x: &ConstructibleIdeal) -> Result<ConstructibleIdeal, IdealError> {
        self.check_in_p(p)?;
        self.check_in_p(q)?;
        let m = self.model.as_ref();
        let repr = self.preimage_repr(p, &self.left_mul_repr(q, &x.repr))?;
        let trace = x.trace.as_ref().map(|t| t.prepend(m, p, q));
        Ok(ConstructibleIdeal { trace, repr })
    }

    /// Evaluates `trace` applied to `x`, innermost pair first.
    pub fn apply_trace(&self, trace: &WordTrace, x: &ConstructibleIdeal) -> Result<ConstructibleIdeal, IdealError> {
        let mut repr = x.repr.clone();
        for (p, q) in trace.pairs().iter().rev() {
            self.check_in_p(p)?;
            self.check_in_p(q)?;
            repr = self.left_mul_repr(q, &repr);
            repr = self.preimage_repr(p, &repr)?;
        }
        let m = self.model.as_ref();
        let trace = x.trace.as_ref().map(|t| trace.concat(m, t));
        Ok(ConstructibleIdeal { trace, repr })
    }

    /// The ideal `p_1^{-1} q_1 ... p_n^{-1} q_n P` denoted by a trace.
    pub fn from_trace(&self, trace: &WordTrace) -> Result<ConstructibleIdeal, IdealError> {
        self.apply_trace(trace, &self.whole())
    }

    /// `x ∩ y` with the trace `t_y t_y^* t_x`.
    ///
    /// The exact tier evaluates that word. The truncated tier intersects the
    /// member lists on the common radius, since evaluating the word would
    /// spend the radius on its preimage steps.
    pub fn intersect(&self, x: &ConstructibleIdeal, y: &ConstructibleIdeal) -> Result<ConstructibleIdeal, IdealError> {
        match (&x.repr, &y.repr) {
            (IdealRepr::Truncated(a), IdealRepr::Truncated(b)) => {
                let (Some(tx), Some(ty)) = (&x.trace, &y.trace) else {
                    let radius = a.radius.min(b.radius);
                    return Ok(ConstructibleIdeal {
                        trace: None,
                        repr: IdealRepr::Truncated(TruncatedSet {
                            members: Vec::new(),
                            radius,
                        }),
                    });
                };
                let m = self.model.as_ref();
                let radius = a.radius.min(b.radius);
                let keep: HashSet<&Elem> = b.members.iter().collect();
                let members = a
                    .members
                    .iter()
                    .filter(|s| m.length(s) <= radius && keep.contains(s))
                    .cloned()
                    .collect();
                let trace = ty.concat(m, &ty.starred(m)).concat(m, tx);
                Ok(ConstructibleIdeal {
                    trace: Some(trace),
                    repr: IdealRepr::Truncated(TruncatedSet { members, radius }),
                })
            }
            _ => self.intersect_by_formula(x, y),
        }
    }

    /// `x ∩ y` obtained by evaluating `t_y t_y^* t_x` step by step.
    pub fn intersect_by_formula(
        &self,
        x: &ConstructibleIdeal,
        y: &ConstructibleIdeal,
    ) -> Result<ConstructibleIdeal, IdealError> {
        let (Some(tx), Some(ty)) = (&x.trace, &y.trace) else {
            return Ok(self.empty());
        };
        let m = self.model.as_ref();
        let word = ty.concat(m, &ty.starred(m));
        let out = self.apply_trace(&word, x)?;
        debug_assert_eq!(out.trace.as_ref(), Some(&word.concat(m, tx)));
        Ok(out)
    }

    /// Membership; `None` when the element lies outside a truncation.
    pub fn contains(&self, x: &ConstructibleIdeal, a: &Elem) -> Option<bool> {
        match &x.repr {
            IdealRepr::Exact(e) => Some(self.hook().contains(e, a)),
            IdealRepr::Truncated(t) => {
                let m = self.model.as_ref();
                if m.length(a) > t.radius {
                    None
                } else {
                    let key = m.sort_key(a);
                    Some(t.members.binary_search_by_key(&key, |s| m.sort_key(s)).is_ok())
                }
            }
        }
    }

    /// Emptiness; undecided for a truncation too small to see a least element.
    pub fn is_empty(&self, x: &ConstructibleIdeal) -> Option<bool> {
        match &x.repr {
            IdealRepr::Exact(e) => Some(e.is_empty()),
            IdealRepr::Truncated(t) => {
                if !t.members.is_empty() {
                    return Some(false);
                }
                let Some(trace) = &x.trace else {
                    return Some(true);
                };
                let bound = self.model.least_element_bound(trace.q_length(self.model.as_ref()));
                match bound {
                    Some(b) if b <= t.radius => Some(true),
                    _ => None,
                }
            }
        }
    }

    /// Members inside `P_{<=radius}`; `None` if the representation cannot see that far.
    pub fn members_within(&self, x: &ConstructibleIdeal, radius: usize) -> Option<Vec<Elem>> {
        match &x.repr {
            IdealRepr::Exact(e) => {
                let hook = self.hook();
                Some(
                    self.model
                        .enumerate_p(radius)
                        .into_iter()
                        .filter(|a| hook.contains(e, a))
                        .collect(),
                )
            }
            IdealRepr::Truncated(t) if radius <= t.radius => {
                let m = self.model.as_ref();
                Some(
                    t.members
                        .iter()
                        .filter(|a| m.length(a) <= radius)
                        .cloned()
                        .collect(),
                )
            }
            IdealRepr::Truncated(_) => None,
        }
    }

    pub fn key(&self, x: &ConstructibleIdeal) -> IdealKey {
        match &x.repr {
            IdealRepr::Exact(e) => IdealKey::Exact(e.clone()),
            IdealRepr::Truncated(t) => IdealKey::Truncated {
                members: t.members.clone(),
                radius: t.radius,
            },
        }
    }

    pub fn eq(&self, x: &ConstructibleIdeal, y: &ConstructibleIdeal) -> Equality {
        match (&x.repr, &y.repr) {
            (IdealRepr::Exact(a), IdealRepr::Exact(b)) => {
                if a == b {
                    Equality::Equal
                } else {
                    Equality::Distinct
                }
            }
            _ => {
                let radius = x.radius().unwrap_or(usize::MAX).min(y.radius().unwrap_or(usize::MAX));
                let (Some(a), Some(b)) = (self.members_within(x, radius), self.members_within(y, radius)) else {
                    return Equality::Undecided { radius };
                };
                if a != b {
                    Equality::Distinct
                } else if x.trace == y.trace
                    || (a.is_empty() && self.is_empty(x) == Some(true) && self.is_empty(y) == Some(true))
                {
                    Equality::Equal
                } else {
                    Equality::Undecided { radius }
                }
            }
        }
    }

    /// `x ⊆ y`, decided through `x ∩ y = x` in the exact tier.
    pub fn subset(&self, x: &ConstructibleIdeal, y: &ConstructibleIdeal) -> Result<Option<bool>, IdealError> {
        if self.is_empty(x) == Some(true) {
            return Ok(Some(true));
        }
        let meet = self.intersect(x, y)?;
        Ok(self.eq(&meet, x).definite())
    }

    /// Radius on which set relations among `ideals` are decided by members.
    ///
    /// In the truncated tier this is the common radius of the inputs, and
    /// the returned flag is `false`: agreement there is evidence only.
    pub fn decisive_radius(&self, ideals: &[&ConstructibleIdeal]) -> (usize, bool) {
        match self.tier {
            Tier::Exact => {
                let forms: Vec<&ExactIdeal> = ideals.iter().filter_map(|x| x.exact()).collect();
                (self.hook().decisive_radius(&forms), true)
            }
            Tier::Truncated { radius } => {
                let r = ideals
                    .iter()
                    .filter_map(|x| x.radius())
                    .min()
                    .unwrap_or(radius);
                (r, false)
            }
        }
    }

    pub fn describe(&self, x: &ConstructibleIdeal) -> String {
        let m = self.model.as_ref();
        match &x.repr {
            IdealRepr::Exact(ExactIdeal::Empty) => "∅".to_string(),
            IdealRepr::Exact(ExactIdeal::Corner { corner }) => {
                if corner.iter().all(|c| *c == 0) {
                    "P".to_string()
                } else {
                    format!("{}+P", m.format(&Elem::new(corner.clone())))
                }
            }
            IdealRepr::Exact(ExactIdeal::Principal { word }) => {
                if word.coords().is_empty() {
                    "P".to_string()
                } else {
                    format!("{}P", m.format(word))
                }
            }
            IdealRepr::Exact(ExactIdeal::Numerical { below, tail }) => {
                let mut parts: Vec<String> = below.iter().map(|n| n.to_string()).collect();
                parts.push(format!("{tail}.."));
                format!("{{{}}}", parts.join(","))
            }
            IdealRepr::Truncated(t) => {
                if t.members.is_empty() {
                    format!("∅ (R={})", t.radius)
                } else {
                    let shown: Vec<String> = t.members.iter().take(6).map(|a| m.format(a)).collect();
                    let more = if t.members.len() > 6 { ",..." } else { "" };
                    format!("{{{}{}}} (R={})", shown.join(","), more, t.radius)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelSpec;

    fn calc(spec: &str) -> IdealCalculus {
        let model = ModelSpec::parse_json(spec).unwrap().build().unwrap();
        IdealCalculus::new(model, Tier::Exact).unwrap()
    }

    fn n1() -> IdealCalculus {
        calc(r#"{"family":"free_abelian","rank":1}"#)
    }

    fn f2() -> IdealCalculus {
        calc(r#"{"family":"free_monoid","rank":2}"#)
    }

    fn s23() -> IdealCalculus {
        calc(r#"{"family":"numerical","generators":[2,3]}"#)
    }

    fn e(c: &IdealCalculus, s: &str) -> Elem {
        c.model().parse(s).unwrap()
    }

    fn trace(c: &IdealCalculus, pairs: &[(&str, &str)]) -> WordTrace {
        let pairs = pairs.iter().map(|(p, q)| (e(c, p), e(c, q))).collect();
        WordTrace::new(c.model(), pairs).unwrap()
    }

    #[test]
    fn left_mul_examples() {
        let c = n1();
        let x = c.left_mul(&e(&c, "2"), &c.whole()).unwrap();
        assert_eq!(c.describe(&x), "2+P");
        let c = f2();
        let bp = c.principal(&e(&c, "b")).unwrap();
        assert_eq!(c.describe(&c.left_mul(&e(&c, "a"), &bp).unwrap()), "abP");
        let c = s23();
        let three = c.principal(&e(&c, "3")).unwrap();
        let x = c.left_mul(&e(&c, "2"), &three).unwrap();
        // brute force: 2 + (3 + S) within 0..=20
        let expect: Vec<Elem> = (0..=20)
            .filter(|n| {
                [0i64, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20]
                    .iter()
                    .any(|s| 5 + s == *n)
            })
            .map(Elem::scalar)
            .collect();
        assert_eq!(c.members_within(&x, 20).unwrap(), expect);
        assert_eq!(c.describe(&x), "{5,7..}");
    }

    #[test]
    fn preimage_examples() {
        for c in [n1(), f2(), s23()] {
            for p in c.model().enumerate_p(3) {
                let x = c.preimage(&p, &c.whole()).unwrap();
                assert!(c.eq(&x, &c.whole()).is_equal());
            }
        }
        let c = n1();
        let three = c.principal(&e(&c, "3")).unwrap();
        let x = c.preimage(&e(&c, "2"), &three).unwrap();
        assert_eq!(c.describe(&x), "1+P");
        let c = f2();
        let bp = c.principal(&e(&c, "b")).unwrap();
        assert_eq!(c.is_empty(&c.preimage(&e(&c, "a"), &bp).unwrap()), Some(true));
    }

    #[test]
    fn from_trace_examples() {
        let c = n1();
        let x = c.from_trace(&trace(&c, &[("2", "3")])).unwrap();
        assert_eq!(c.describe(&x), "1+P");
        assert_eq!(x.trace().unwrap().grading(), &e(&c, "1"));
        let c = f2();
        let x = c.from_trace(&trace(&c, &[("e", "ab")])).unwrap();
        assert_eq!(c.describe(&x), "abP");
        let x = c.from_trace(&trace(&c, &[("a", "b")])).unwrap();
        assert_eq!(c.is_empty(&x), Some(true));
        // equal traces, equal ideals; the cached element stays consistent
        assert!(x.trace().unwrap().grading_consistent(c.model()));
    }

    #[test]
    fn intersect_examples() {
        let c = n1();
        let x = c.principal(&e(&c, "2")).unwrap();
        let y = c.principal(&e(&c, "3")).unwrap();
        assert_eq!(c.describe(&c.intersect(&x, &y).unwrap()), "3+P");
        let c = f2();
        let x = c.principal(&e(&c, "a")).unwrap();
        let y = c.principal(&e(&c, "b")).unwrap();
        assert_eq!(c.is_empty(&c.intersect(&x, &y).unwrap()), Some(true));
        let c = s23();
        let x = c.principal(&e(&c, "2")).unwrap();
        let y = c.principal(&e(&c, "3")).unwrap();
        let meet = c.intersect(&x, &y).unwrap();
        let a = c.members_within(&x, 30).unwrap();
        let b = c.members_within(&y, 30).unwrap();
        let expect: Vec<Elem> = a.into_iter().filter(|v| b.contains(v)).collect();
        assert_eq!(c.members_within(&meet, 30).unwrap(), expect);
        assert_eq!(c.describe(&meet), "{5..}");
    }

    #[test]
    fn ideal_eq_examples() {
        let c = n1();
        let two = c.principal(&e(&c, "2")).unwrap();
        let back = c.preimage(&e(&c, "2"), &two).unwrap();
        assert_eq!(c.eq(&back, &c.whole()), Equality::Equal);
        let c = f2();
        assert_eq!(
            c.eq(&c.principal(&e(&c, "a")).unwrap(), &c.principal(&e(&c, "b")).unwrap()),
            Equality::Distinct
        );

        let model = ModelSpec::parse_json(r#"{"family":"numerical","generators":[2,3]}"#)
            .unwrap()
            .build()
            .unwrap();
        let t = IdealCalculus::new(model, Tier::Truncated { radius: 30 }).unwrap();
        // 2^{-1}(2+P) and P, spelled differently, agreeing on the truncation
        let x = t.preimage(&Elem::scalar(2), &t.principal(&Elem::scalar(2)).unwrap()).unwrap();
        let y = t.preimage(&Elem::scalar(0), &t.whole()).unwrap();
        assert_eq!(y.radius(), Some(30));
        assert_eq!(t.eq(&x, &t.whole()), Equality::Undecided { radius: 28 });
        let z = t.preimage(&Elem::scalar(3), &y).unwrap();
        assert_eq!(t.eq(&y, &t.whole()), Equality::Undecided { radius: 30 });
        assert_eq!(t.eq(&z, &t.principal(&Elem::scalar(2)).unwrap()), Equality::Distinct);
    }

    #[test]
    fn empty_is_canonical() {
        let c = f2();
        let a = c.from_trace(&trace(&c, &[("a", "b")])).unwrap();
        let b = c.from_trace(&trace(&c, &[("b", "aa")])).unwrap();
        assert_eq!(c.eq(&a, &b), Equality::Equal);
        assert_eq!(c.eq(&a, &c.empty()), Equality::Equal);
        assert_eq!(c.key(&a), c.key(&c.empty()));
        assert_ne!(c.key(&c.whole()), c.key(&c.empty()));
    }

    #[test]
    fn trace_entries_must_lie_in_p() {
        let c = f2();
        let bad = vec![(e(&c, "A"), e(&c, "b"))];
        assert!(WordTrace::new(c.model(), bad).is_err());
        assert!(c.left_mul(&e(&c, "A"), &c.whole()).is_err());
    }

    #[test]
    fn truncated_radius_shrinks_on_preimage() {
        let model = ModelSpec::parse_json(r#"{"family":"free_monoid","rank":2}"#)
            .unwrap()
            .build()
            .unwrap();
        let t = IdealCalculus::new(model, Tier::Truncated { radius: 3 }).unwrap();
        let a = Elem::new(vec![1]);
        let x = t.preimage(&a, &t.principal(&a).unwrap()).unwrap();
        assert_eq!(x.radius(), Some(2));
        let aaaa = Elem::new(vec![1, 1, 1, 1]);
        assert!(matches!(
            t.preimage(&aaaa, &x),
            Err(IdealError::TruncationExhausted { .. })
        ));
    }
}
