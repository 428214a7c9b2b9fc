//! Breadth-first enumeration of a finite fragment of the constructible ideals.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{ConstructibleIdeal, IdealCalculus, IdealError, IdealKey, IdealRepr, Tier, TruncatedSet};
use crate::model::{Elem, ExactIdeal};

/// The letters `p, q` allowed in trace pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "alphabet", rename_all = "snake_case")]
pub enum Alphabet {
    /// `{e}` together with the model's generators.
    Generators,
    /// Every element of `P` of length at most `max_len`.
    Ball { max_len: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationCaps {
    pub max_trace_len: usize,
    pub alphabet: Alphabet,
    pub max_ideals: usize,
}

impl EnumerationCaps {
    pub fn depth(max_trace_len: usize) -> Self {
        EnumerationCaps {
            max_trace_len,
            alphabet: Alphabet::Generators,
            max_ideals: 10_000,
        }
    }
}

/// A finite family of constructible ideals containing `∅` and `P`,
/// closed under intersection, with its containment order.
#[derive(Clone, Debug)]
pub struct Lattice {
    calc: IdealCalculus,
    ideals: Vec<ConstructibleIdeal>,
    level: Vec<usize>,
    keys: HashMap<IdealKey, usize>,
    /// `meet[i][j]` is the index of `ideals[i] ∩ ideals[j]`.
    meet: Vec<Vec<usize>>,
    /// Common radius of every truncated member list; `None` in the exact tier.
    working_radius: Option<usize>,
}

pub const EMPTY: usize = 0;
pub const WHOLE: usize = 1;

fn restrict(calc: &IdealCalculus, x: ConstructibleIdeal, radius: usize) -> Result<ConstructibleIdeal, IdealError> {
    match &x.repr {
        IdealRepr::Exact(_) => Ok(x),
        IdealRepr::Truncated(t) if t.radius == radius => Ok(x),
        IdealRepr::Truncated(t) => {
            let members = calc.members_within(&x, radius).ok_or(IdealError::TruncationExhausted {
                needed: radius,
                radius: t.radius,
            })?;
            Ok(ConstructibleIdeal {
                trace: x.trace,
                repr: IdealRepr::Truncated(TruncatedSet { members, radius }),
            })
        }
    }
}

impl Lattice {
    fn start(calc: &IdealCalculus, working_radius: Option<usize>) -> Result<Self, IdealError> {
        let mut lat = Lattice {
            calc: calc.clone(),
            ideals: Vec::new(),
            level: Vec::new(),
            keys: HashMap::new(),
            meet: Vec::new(),
            working_radius,
        };
        let empty = lat.normalize(calc.empty())?;
        let whole = lat.normalize(calc.whole())?;
        lat.insert(empty, 0, usize::MAX)?;
        lat.insert(whole, 0, usize::MAX)?;
        Ok(lat)
    }

    fn normalize(&self, x: ConstructibleIdeal) -> Result<ConstructibleIdeal, IdealError> {
        match self.working_radius {
            None => Ok(x),
            Some(r) => restrict(&self.calc, x, r),
        }
    }

    fn key_of(&self, x: &ConstructibleIdeal) -> IdealKey {
        // all empty ideals share the key of the adjoined one
        if self.calc.is_empty(x) == Some(true) {
            return self.calc.key(&self.calc.empty());
        }
        self.calc.key(x)
    }

    /// Inserts `x` unless an equal ideal is present; returns its index and
    /// whether it was new.
    fn insert(&mut self, x: ConstructibleIdeal, level: usize, cap: usize) -> Result<(usize, bool), IdealError> {
        let key = self.key_of(&x);
        if let Some(&i) = self.keys.get(&key) {
            return Ok((i, false));
        }
        if self.ideals.len() >= cap {
            return Err(IdealError::CapExceeded(format!("more than {cap} ideals")));
        }
        let i = self.ideals.len();
        self.keys.insert(key, i);
        self.ideals.push(x);
        self.level.push(level);
        Ok((i, true))
    }

    /// Adds intersections until the family is closed, filling the meet table.
    fn close(&mut self, cap: usize) -> Result<(), IdealError> {
        let mut done = 0usize;
        loop {
            let n = self.ideals.len();
            for row in self.meet.iter_mut() {
                row.resize(n, usize::MAX);
            }
            while self.meet.len() < n {
                self.meet.push(vec![usize::MAX; n]);
            }
            for i in 0..n {
                for j in 0..n {
                    if self.meet[i][j] != usize::MAX || (i < done && j < done) {
                        continue;
                    }
                    let m = if i == j {
                        i
                    } else if j < i {
                        self.meet[j][i]
                    } else {
                        usize::MAX
                    };
                    let m = if m != usize::MAX {
                        m
                    } else {
                        let x = self.calc.intersect(&self.ideals[i], &self.ideals[j])?;
                        let x = self.normalize(x)?;
                        let lvl = self.level[i].max(self.level[j]);
                        self.insert(x, lvl, cap)?.0
                    };
                    self.meet[i][j] = m;
                }
            }
            done = n;
            if self.ideals.len() == n {
                break;
            }
        }
        Ok(())
    }

    /// The fragment generated by `ideals` (plus `∅` and `P`) under intersection.
    pub fn from_ideals(calc: &IdealCalculus, ideals: Vec<ConstructibleIdeal>, max_ideals: usize) -> Result<Self, IdealError> {
        let working = match calc.tier() {
            Tier::Exact => None,
            Tier::Truncated { .. } => ideals.iter().filter_map(|x| x.radius()).chain(calc.whole().radius()).min(),
        };
        let mut lat = Lattice::start(calc, working)?;
        for x in ideals {
            let lvl = x.trace_len();
            let x = lat.normalize(x)?;
            lat.insert(x, lvl, max_ideals)?;
        }
        lat.close(max_ideals)?;
        Ok(lat)
    }

    /// The sub-fragment generated by the given members of this lattice.
    pub fn subfragment(&self, indices: &[usize]) -> Result<Self, IdealError> {
        let picked = indices.iter().map(|&i| self.ideals[i].clone()).collect();
        Lattice::from_ideals(&self.calc, picked, usize::MAX)
    }

    pub fn calculus(&self) -> &IdealCalculus {
        &self.calc
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn ideals(&self) -> &[ConstructibleIdeal] {
        &self.ideals
    }

    pub fn ideal(&self, i: usize) -> &ConstructibleIdeal {
        &self.ideals[i]
    }

    pub fn level(&self, i: usize) -> usize {
        self.level[i]
    }

    pub fn max_level(&self) -> usize {
        self.level.iter().copied().filter(|&l| l != usize::MAX).max().unwrap_or(0)
    }

    pub fn working_radius(&self) -> Option<usize> {
        self.working_radius
    }

    /// True in the exact tier, where every relation in the lattice is certified.
    pub fn certified(&self) -> bool {
        self.working_radius.is_none()
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.meet[i][j] == i
    }

    /// Index of an ideal equal to `x`, if the lattice has one.
    pub fn find(&self, x: &ConstructibleIdeal) -> Option<usize> {
        let x = self.normalize(x.clone()).ok()?;
        self.keys.get(&self.key_of(&x)).copied()
    }

    /// Indices of the nonempty ideals.
    pub fn nonempty(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| i != EMPTY).collect()
    }

    /// Covering pairs `(lower, upper)` of the containment order.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut edges = Vec::new();
        for lo in 0..n {
            for hi in 0..n {
                if lo == hi || !self.leq(lo, hi) {
                    continue;
                }
                let covered = (0..n).any(|m| m != lo && m != hi && self.leq(lo, m) && self.leq(m, hi));
                if !covered {
                    edges.push((lo, hi));
                }
            }
        }
        edges
    }

    /// Radius deciding Boolean relations among the given members, and whether it is certified.
    pub fn decisive_radius(&self, indices: &[usize]) -> (usize, bool) {
        let xs: Vec<&ConstructibleIdeal> = indices.iter().map(|&i| &self.ideals[i]).collect();
        self.calc.decisive_radius(&xs)
    }

    pub fn export(&self) -> LatticeExport {
        let m = self.calc.model();
        let nodes = self
            .ideals
            .iter()
            .enumerate()
            .map(|(i, x)| LatticeNode {
                id: i,
                trace: x.trace().map(|t| t.to_strings(m)),
                description: self.calc.describe(x),
                exact: x.exact().cloned(),
                members: match x.repr() {
                    IdealRepr::Truncated(t) => Some(t.members.iter().map(|a| m.format(a)).collect()),
                    IdealRepr::Exact(_) => None,
                },
                radius: x.radius(),
                level: (self.level[i] != usize::MAX).then_some(self.level[i]),
            })
            .collect();
        LatticeExport {
            model: m.name(),
            tier: self.calc.tier(),
            working_radius: self.working_radius,
            nodes,
            edges: self.hasse(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeNode {
    pub id: usize,
    pub trace: Option<Vec<[String; 2]>>,
    pub description: String,
    pub exact: Option<ExactIdeal>,
    pub members: Option<Vec<String>>,
    pub radius: Option<usize>,
    pub level: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeExport {
    pub model: String,
    pub tier: Tier,
    pub working_radius: Option<usize>,
    pub nodes: Vec<LatticeNode>,
    /// Covering pairs `[lower, upper]`.
    pub edges: Vec<(usize, usize)>,
}

fn alphabet(calc: &IdealCalculus, caps: &EnumerationCaps) -> Vec<Elem> {
    let m = calc.model();
    let mut letters = match caps.alphabet {
        Alphabet::Generators => {
            let mut v = vec![m.unit()];
            v.extend(m.generators().iter().cloned());
            v
        }
        Alphabet::Ball { max_len } => m.enumerate_p(max_len),
    };
    letters.sort_by_cached_key(|a| m.sort_key(a));
    letters.dedup();
    letters
}

/// All ideals reachable from `P` by at most `max_trace_len` steps
/// `X -> p^{-1} q X` with `p, q` from the alphabet, closed under intersection.
///
/// Level `d` holds the ideals first reached at depth `d`; ideals added by the
/// intersection closure inherit the larger level of their two parents.
pub fn enumerate_ideals(calc: &IdealCalculus, caps: &EnumerationCaps) -> Result<Lattice, IdealError> {
    let letters = alphabet(calc, caps);
    let m = calc.model();
    let working = match calc.tier() {
        Tier::Exact => None,
        Tier::Truncated { radius } => {
            let longest = letters.iter().map(|a| m.length(a)).max().unwrap_or(0);
            let shrink = longest * caps.max_trace_len;
            if shrink > radius {
                return Err(IdealError::TruncationExhausted { needed: shrink, radius });
            }
            Some(radius - shrink)
        }
    };
    let mut lat = Lattice::start(calc, working)?;
    // the frontier keeps the unrestricted member lists so later steps can
    // still spend radius
    let mut frontier = vec![calc.whole()];
    for depth in 1..=caps.max_trace_len {
        let mut next = Vec::new();
        for x in &frontier {
            if calc.is_empty(x) == Some(true) {
                continue;
            }
            for q in &letters {
                for p in &letters {
                    let raw = calc.step(p, q, x)?;
                    let y = lat.normalize(raw.clone())?;
                    let (_, fresh) = lat.insert(y, depth, caps.max_ideals)?;
                    if fresh {
                        next.push(raw);
                    }
                }
            }
        }
        frontier = next;
    }
    lat.close(caps.max_ideals)?;
    Ok(lat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::WordTrace;
    use crate::model::ModelSpec;

    fn calc(spec: &str) -> IdealCalculus {
        let model = ModelSpec::parse_json(spec).unwrap().build().unwrap();
        IdealCalculus::new(model, Tier::Exact).unwrap()
    }

    fn descriptions(lat: &Lattice) -> Vec<String> {
        let mut d: Vec<String> = lat.ideals().iter().map(|x| lat.calculus().describe(x)).collect();
        d.sort();
        d
    }

    /// Every ideal denoted by a trace of at most `depth` alphabet pairs, by direct evaluation.
    fn exhaustive(c: &IdealCalculus, depth: usize) -> Vec<IdealKey> {
        let m = c.model();
        let mut letters = vec![m.unit()];
        letters.extend(m.generators().iter().cloned());
        let mut traces = vec![Vec::<(Elem, Elem)>::new()];
        let mut all = vec![c.key(&c.empty())];
        for _ in 0..=depth {
            let mut next = Vec::new();
            for t in &traces {
                let wt = WordTrace::new(m, t.clone()).unwrap();
                let x = c.from_trace(&wt).unwrap();
                let k = if c.is_empty(&x) == Some(true) { c.key(&c.empty()) } else { c.key(&x) };
                all.push(k);
                for p in &letters {
                    for q in &letters {
                        let mut u = vec![(p.clone(), q.clone())];
                        u.extend(t.iter().cloned());
                        next.push(u);
                    }
                }
            }
            traces = next;
        }
        all.sort();
        all.dedup();
        all
    }

    #[test]
    fn naturals_depth_three() {
        let c = calc(r#"{"family":"free_abelian","rank":1}"#);
        let lat = enumerate_ideals(&c, &EnumerationCaps::depth(3)).unwrap();
        assert_eq!(descriptions(&lat), ["1+P", "2+P", "3+P", "P", "∅"]);
        let mut keys: Vec<IdealKey> = lat.ideals().iter().map(|x| c.key(x)).collect();
        keys.sort();
        assert_eq!(keys, exhaustive(&c, 3));
    }

    #[test]
    fn free_monoid_depth_two() {
        let c = calc(r#"{"family":"free_monoid","rank":2}"#);
        let lat = enumerate_ideals(&c, &EnumerationCaps::depth(2)).unwrap();
        assert_eq!(descriptions(&lat), ["P", "aP", "aaP", "abP", "bP", "baP", "bbP", "∅"]);
        let mut keys: Vec<IdealKey> = lat.ideals().iter().map(|x| c.key(x)).collect();
        keys.sort();
        assert_eq!(keys, exhaustive(&c, 2));
        // aP covers aaP and abP
        let a = lat.find(&c.principal(&Elem::new(vec![1])).unwrap()).unwrap();
        let uppers: Vec<usize> = lat.hasse().iter().filter(|(_, hi)| *hi == a).map(|(lo, _)| *lo).collect();
        assert_eq!(uppers.len(), 2);
    }

    #[test]
    fn closed_under_intersection() {
        for spec in [
            r#"{"family":"free_abelian","rank":2}"#,
            r#"{"family":"numerical","generators":[2,3]}"#,
            r#"{"family":"free_monoid","rank":2}"#,
        ] {
            let c = calc(spec);
            let lat = enumerate_ideals(&c, &EnumerationCaps::depth(2)).unwrap();
            for i in 0..lat.len() {
                for j in 0..lat.len() {
                    let direct = c.intersect(lat.ideal(i), lat.ideal(j)).unwrap();
                    assert_eq!(lat.find(&direct), Some(lat.meet(i, j)));
                }
                assert!(lat.leq(EMPTY, i));
                assert!(lat.leq(i, WHOLE));
            }
        }
    }

    #[test]
    fn numerical_depth_three_has_a_union() {
        // 3^{-1}(2+P) = {2,3,4,...}, which is (2+P) ∪ (3+P)
        let c = calc(r#"{"family":"numerical","generators":[2,3]}"#);
        let lat = enumerate_ideals(&c, &EnumerationCaps::depth(3)).unwrap();
        let target = ExactIdeal::Numerical { below: vec![], tail: 2 };
        assert!(lat.ideals().iter().any(|x| x.exact() == Some(&target)));
    }

    #[test]
    fn cap_is_enforced() {
        let c = calc(r#"{"family":"free_monoid","rank":2}"#);
        let caps = EnumerationCaps {
            max_ideals: 4,
            ..EnumerationCaps::depth(2)
        };
        assert!(matches!(enumerate_ideals(&c, &caps), Err(IdealError::CapExceeded(_))));
    }

    #[test]
    fn truncated_tier_matches_exact_on_its_radius() {
        for spec in [
            r#"{"family":"free_abelian","rank":1}"#,
            r#"{"family":"numerical","generators":[2,3]}"#,
            r#"{"family":"free_monoid","rank":2}"#,
        ] {
            let exact = calc(spec);
            let model = exact.model_arc().clone();
            let radius = if spec.contains("monoid") { 6 } else { 30 };
            let trunc = IdealCalculus::new(model, Tier::Truncated { radius }).unwrap();
            let le = enumerate_ideals(&exact, &EnumerationCaps::depth(2)).unwrap();
            let lt = enumerate_ideals(&trunc, &EnumerationCaps::depth(2)).unwrap();
            let w = lt.working_radius().unwrap();
            let mut a: Vec<Vec<Elem>> = le.ideals().iter().map(|x| exact.members_within(x, w).unwrap()).collect();
            let mut b: Vec<Vec<Elem>> = lt.ideals().iter().map(|x| trunc.members_within(x, w).unwrap()).collect();
            a.sort();
            a.dedup();
            b.sort();
            assert_eq!(a, b, "{spec}");
        }
    }

    #[test]
    fn export_round_trips() {
        let c = calc(r#"{"family":"free_monoid","rank":2}"#);
        let lat = enumerate_ideals(&c, &EnumerationCaps::depth(1)).unwrap();
        let doc = lat.export();
        let text = serde_json::to_string(&doc).unwrap();
        let back: LatticeExport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(doc.nodes.len(), 4);
        assert!(doc.nodes[0].trace.is_none());
    }
}
