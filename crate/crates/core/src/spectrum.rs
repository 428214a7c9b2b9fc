//! Characters of the diagonal on a finite fragment, the partial action of
//! `G` on them, the minimal boundary and a topological-freeness probe.
//!
//! On a finite intersection-closed fragment every filter has a least member
//! `m`, so characters correspond to the nonempty members. A character only
//! knows its values on fragment ideals; the value on any other ideal `z` is
//! *forced* when every filter on the full family of constructible ideals
//! extending it agrees: `1` if `m ⊆ z`, `0` if `z ∩ m` is empty or lies
//! inside an ideal where the character vanishes. Everything else is left
//! undetermined rather than guessed.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use bitvec::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ideals::{ConstructibleIdeal, EnumerationCaps, IdealError, IdealKey, Lattice};
use crate::invsgp::{compose, enumerate_ivwords, idempotent, VWord};
use crate::model::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("membership of {0} is not decided on this fragment")]
    Undecidable(String),
    #[error("transported assignment is not a filter")]
    NotAFilter,
}

/// A filter on the fragment, stored as its support bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    support: BitVec,
    least: usize,
}

impl Character {
    pub fn value(&self, ideal: usize) -> bool {
        self.support[ideal]
    }

    pub fn support(&self) -> &BitSlice {
        &self.support
    }

    /// The least member of the support.
    pub fn least(&self) -> usize {
        self.least
    }

    pub fn bits(&self) -> String {
        self.support.iter().map(|b| if *b { '1' } else { '0' }).collect()
    }
}

/// Filter axioms on the fragment: contains `P`, misses `∅`, upward closed, closed under `∩`.
pub fn is_filter(lat: &Lattice, support: &BitSlice) -> bool {
    let n = lat.len();
    if !support[1] || support[0] {
        return false;
    }
    for i in 0..n {
        if !support[i] {
            continue;
        }
        for j in 0..n {
            if lat.leq(i, j) && !support[j] {
                return false;
            }
            if support[j] && !support[lat.meet(i, j)] {
                return false;
            }
        }
    }
    true
}

fn filter_above(lat: &Lattice, m: usize) -> Character {
    let support = (0..lat.len()).map(|j| lat.leq(m, j)).collect();
    Character { support, least: m }
}

/// All characters, one for each nonempty member `m` (the filter `{y ⊇ m}`),
/// ordered by fragment index of `m`.
pub fn enumerate_characters(lat: &Lattice) -> Vec<Character> {
    lat.nonempty().into_iter().map(|m| filter_above(lat, m)).collect()
}

/// Every subset of the fragment satisfying the filter axioms, by exhaustion.
pub fn brute_force_filters(lat: &Lattice) -> Vec<BitVec> {
    let n = lat.len();
    assert!(n <= 20, "exhaustive filter scan is limited to 20 ideals");
    (0u32..1 << n)
        .map(|mask| (0..n).map(|i| mask >> i & 1 == 1).collect::<BitVec>())
        .filter(|s| is_filter(lat, s))
        .collect()
}

fn least_of(lat: &Lattice, support: &BitSlice) -> usize {
    support.iter_ones().fold(1, |acc, i| lat.meet(acc, i))
}

/// `χ_p(x) = [p ∈ x]`.
pub fn principal_character(lat: &Lattice, p: &Elem) -> Result<Character, SpectrumError> {
    let calc = lat.calculus();
    let mut support = BitVec::with_capacity(lat.len());
    for x in lat.ideals() {
        let v = calc
            .contains(x, p)
            .ok_or_else(|| SpectrumError::Undecidable(calc.model().format(p)))?;
        support.push(v);
    }
    if !is_filter(lat, &support) {
        return Err(SpectrumError::NotAFilter);
    }
    let least = least_of(lat, &support);
    Ok(Character { support, least })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", content = "character", rename_all = "snake_case")]
pub enum ThetaOutcome {
    OutsideDomain,
    Image(usize),
    Undetermined,
}

impl ThetaOutcome {
    pub fn image(self) -> Option<usize> {
        match self {
            ThetaOutcome::Image(i) => Some(i),
            _ => None,
        }
    }
}

/// The partial action `θ_g` on the characters of one fragment, tabulated for
/// every grading `g` realized by a witness word.
#[derive(Clone, Debug)]
pub struct ThetaAction {
    lat: Lattice,
    chars: Vec<Character>,
    /// Character index by least member.
    by_least: Vec<Option<usize>>,
    words: Vec<VWord>,
    table: BTreeMap<Elem, Vec<ThetaOutcome>>,
    /// Per character: domain membership if decided, and whether some determined value of the image differs from it.
    domains: BTreeMap<Elem, Vec<(Option<bool>, bool)>>,
}

impl ThetaAction {
    /// Witness words are the V-words with at most `max_trace_len` pairs and all
    /// their pairwise products, so composites of tabulated elements are tabulated too.
    pub fn new(lat: &Lattice, caps: &EnumerationCaps) -> Result<Self, SpectrumError> {
        let calc = lat.calculus();
        let base = enumerate_ivwords(calc, caps)?;
        let mut words: Vec<VWord> = base.iter().filter(|v| !v.is_zero()).cloned().collect();
        let mut seen: BTreeSet<(Elem, String)> = words
            .iter()
            .map(|v| (v.sigma().unwrap().clone(), calc.describe(v.dom())))
            .collect();
        for v in &base {
            for w in &base {
                let vw = compose(calc, v, w)?;
                if vw.is_zero() {
                    continue;
                }
                let key = (vw.sigma().unwrap().clone(), calc.describe(vw.dom()));
                // distinct truncated descriptions may hide equal domains; keeping both is harmless
                if seen.insert(key) {
                    words.push(vw);
                }
            }
        }
        Self::with_words(lat, words)
    }

    pub fn with_words(lat: &Lattice, words: Vec<VWord>) -> Result<Self, SpectrumError> {
        let chars = enumerate_characters(lat);
        let mut by_least = vec![None; lat.len()];
        for (k, c) in chars.iter().enumerate() {
            by_least[c.least] = Some(k);
        }
        let mut action = ThetaAction {
            lat: lat.clone(),
            chars,
            by_least,
            words,
            table: BTreeMap::new(),
            domains: BTreeMap::new(),
        };
        action.tabulate()?;
        Ok(action)
    }

    fn tabulate(&mut self) -> Result<(), SpectrumError> {
        let calc = self.lat.calculus();
        let mut by_sigma: BTreeMap<Elem, Vec<usize>> = BTreeMap::new();
        for (k, v) in self.words.iter().enumerate() {
            if let Some(g) = v.sigma() {
                by_sigma.entry(g.clone()).or_default().push(k);
            }
        }
        let projections = self
            .lat
            .ideals()
            .iter()
            .map(|y| idempotent(calc, y))
            .collect::<Result<Vec<_>, _>>()?;
        let mut table = BTreeMap::new();
        let mut domains = BTreeMap::new();
        let mut pool = Pool::new(self.chars.len());
        for (g, ks) in &by_sigma {
            // pulled[slot][y] = dom(E_y V_k), the pullback of y along the witness
            let mut doms = Vec::with_capacity(ks.len());
            let mut pulled = Vec::with_capacity(ks.len());
            for &k in ks {
                doms.push(pool.intern(self, self.words[k].dom().clone()));
                let mut row = Vec::with_capacity(projections.len());
                for e in &projections {
                    let z = compose(calc, e, &self.words[k])?.dom().clone();
                    row.push(pool.intern(self, z));
                }
                pulled.push(row);
            }
            let mut outcomes = Vec::with_capacity(self.chars.len());
            let mut dom = Vec::with_capacity(self.chars.len());
            for c in 0..self.chars.len() {
                let (d, moved, o) = self.transport(c, &doms, &pulled, &mut pool)?;
                dom.push((d, moved));
                outcomes.push(o);
            }
            table.insert(g.clone(), outcomes);
            domains.insert(g.clone(), dom);
        }
        self.table = table;
        self.domains = domains;
        Ok(())
    }

    /// Value of character `c` on an arbitrary ideal, when every extension agrees.
    pub fn forced_value(&self, c: usize, z: &ConstructibleIdeal) -> Option<bool> {
        let calc = self.lat.calculus();
        let chi = &self.chars[c];
        if let Some(i) = self.lat.find(z) {
            return Some(chi.value(i));
        }
        let m = self.lat.ideal(chi.least);
        if calc.subset(m, z).ok()? == Some(true) {
            return Some(true);
        }
        let zm = calc.intersect(z, m).ok()?;
        if calc.is_empty(&zm) == Some(true) {
            return Some(false);
        }
        for y in chi.support.iter_zeros() {
            if y != 0 && calc.subset(&zm, self.lat.ideal(y)).ok()? == Some(true) {
                return Some(false);
            }
        }
        None
    }

    fn transport(
        &self,
        c: usize,
        doms: &[usize],
        pulled: &[Vec<usize>],
        pool: &mut Pool,
    ) -> Result<(Option<bool>, bool, ThetaOutcome), SpectrumError> {
        let mut in_domain = Vec::new();
        let mut unknown = false;
        for (slot, &z) in doms.iter().enumerate() {
            match pool.value(self, c, z) {
                Some(true) => in_domain.push(slot),
                Some(false) => {}
                None => unknown = true,
            }
        }
        if in_domain.is_empty() {
            return Ok(if unknown {
                (None, false, ThetaOutcome::Undetermined)
            } else {
                (Some(false), false, ThetaOutcome::OutsideDomain)
            });
        }
        let n = self.lat.len();
        let mut support = BitVec::with_capacity(n);
        let mut moved = false;
        let mut open = false;
        for y in 0..n {
            let mut value = None;
            for &slot in &in_domain {
                if let Some(v) = pool.value(self, c, pulled[slot][y]) {
                    if value.is_some_and(|u| u != v) {
                        return Err(SpectrumError::NotAFilter);
                    }
                    value = Some(v);
                }
            }
            match value {
                Some(v) => {
                    moved |= v != self.chars[c].value(y);
                    support.push(v);
                }
                None => {
                    open = true;
                    support.push(false);
                }
            }
        }
        if open {
            return Ok((Some(true), moved, ThetaOutcome::Undetermined));
        }
        if !is_filter(&self.lat, &support) {
            return Err(SpectrumError::NotAFilter);
        }
        let least = least_of(&self.lat, &support);
        let image = self.by_least[least].ok_or(SpectrumError::NotAFilter)?;
        Ok((Some(true), moved, ThetaOutcome::Image(image)))
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lat
    }

    pub fn characters(&self) -> &[Character] {
        &self.chars
    }

    pub fn character_of_least(&self, m: usize) -> Option<usize> {
        self.by_least.get(m).copied().flatten()
    }

    pub fn words(&self) -> &[VWord] {
        &self.words
    }

    /// Gradings with at least one nonzero witness, in `Elem` order.
    pub fn gradings(&self) -> Vec<Elem> {
        self.table.keys().cloned().collect()
    }

    /// `θ_g(χ_c)`; gradings without witnesses have empty domain.
    pub fn theta_apply(&self, g: &Elem, c: usize) -> ThetaOutcome {
        self.table.get(g).map_or(ThetaOutcome::OutsideDomain, |row| row[c])
    }

    /// Whether `χ_c` lies in the domain of `θ_g`, when the fragment decides it.
    pub fn in_domain(&self, g: &Elem, c: usize) -> Option<bool> {
        self.domains.get(g).map_or(Some(false), |row| row[c].0)
    }

    /// `θ_g(χ_c) ≠ χ_c` is certain: some determined value of the image differs,
    /// even if the image itself is undetermined.
    pub fn certainly_moves(&self, g: &Elem, c: usize) -> bool {
        self.domains.get(g).is_some_and(|row| row[c].1)
    }

    /// Index of a character equal to `chi`.
    pub fn index_of(&self, chi: &Character) -> Option<usize> {
        self.chars.iter().position(|c| c == chi)
    }
}


/// Interned pullback ideals with memoized forced values.
struct Pool {
    index: HashMap<IdealKey, usize>,
    ideals: Vec<ConstructibleIdeal>,
    values: Vec<Vec<Option<Option<bool>>>>,
    chars: usize,
}

impl Pool {
    fn new(chars: usize) -> Self {
        Pool { index: HashMap::new(), ideals: Vec::new(), values: Vec::new(), chars }
    }

    fn intern(&mut self, action: &ThetaAction, z: ConstructibleIdeal) -> usize {
        let key = action.lat.calculus().key(&z);
        if let Some(&i) = self.index.get(&key) {
            return i;
        }
        let i = self.ideals.len();
        // fragment members are filled eagerly
        let row = match action.lat.find(&z) {
            Some(f) => action.chars.iter().map(|ch| Some(Some(ch.value(f)))).collect(),
            None => vec![None; self.chars],
        };
        self.index.insert(key, i);
        self.ideals.push(z);
        self.values.push(row);
        i
    }

    fn value(&mut self, action: &ThetaAction, c: usize, z: usize) -> Option<bool> {
        if let Some(v) = self.values[z][c] {
            return v;
        }
        let v = action.forced_value(c, &self.ideals[z]);
        self.values[z][c] = Some(v);
        v
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialActionReport {
    pub characters: usize,
    pub gradings: usize,
    /// Characters with `θ_e(χ) = χ`.
    pub identity: usize,
    /// Triples `(g₁, g₂, χ)` where both sides are determined and agree.
    pub composition: usize,
    /// Triples whose right side is undetermined on the fragment.
    pub composition_undetermined: usize,
    /// Triples where `g₁g₂` has no witness placing `χ` in its domain.
    pub composition_unwitnessed: usize,
    /// Instances of `θ_g(χ_p) = χ_{gp}` with `p` in a witness domain.
    pub principal: usize,
    pub principal_undetermined: usize,
}

/// Checks `θ_e = id`, the composition law and `θ_g(χ_p) = χ_{gp}` for `p ∈ P_{<=radius}`.
pub fn check_partial_action(action: &ThetaAction, radius: usize) -> Result<PartialActionReport, String> {
    let lat = action.lattice();
    let calc = lat.calculus();
    let m = calc.model();
    let gs = action.gradings();
    let n = action.characters().len();
    let mut r = PartialActionReport {
        characters: n,
        gradings: gs.len(),
        ..Default::default()
    };
    for c in 0..n {
        if action.theta_apply(&m.unit(), c) != ThetaOutcome::Image(c) {
            return Err(format!("θ_e moves character {c}"));
        }
        r.identity += 1;
    }
    for g2 in &gs {
        for c in 0..n {
            let Some(d) = action.theta_apply(g2, c).image() else { continue };
            for g1 in &gs {
                let Some(e) = action.theta_apply(g1, d).image() else { continue };
                let g = m.mul(g1, g2);
                match action.theta_apply(&g, c) {
                    ThetaOutcome::Image(f) if f == e => r.composition += 1,
                    ThetaOutcome::Image(f) => {
                        return Err(format!(
                            "θ_{}θ_{} sends {c} to {e} but θ_{} sends it to {f}",
                            m.format(g1),
                            m.format(g2),
                            m.format(&g)
                        ))
                    }
                    ThetaOutcome::Undetermined => r.composition_undetermined += 1,
                    ThetaOutcome::OutsideDomain => r.composition_unwitnessed += 1,
                }
            }
        }
    }
    for p in m.enumerate_p(radius) {
        let chi = principal_character(lat, &p).map_err(|e| e.to_string())?;
        let c = action.index_of(&chi).ok_or("principal character missing from the enumeration")?;
        for g in &gs {
            let in_dom = action
                .words()
                .iter()
                .any(|w| w.sigma() == Some(g) && calc.contains(w.dom(), &p) == Some(true));
            if !in_dom {
                continue;
            }
            let gp = m.mul(g, &p);
            if !m.in_p(&gp) {
                return Err(format!("{} lies in a domain of grading {} but {} ∉ P", m.format(&p), m.format(g), m.format(&gp)));
            }
            let target = principal_character(lat, &gp).map_err(|e| e.to_string())?;
            match action.theta_apply(g, c) {
                ThetaOutcome::Image(d) if action.characters()[d] == target => r.principal += 1,
                ThetaOutcome::Undetermined => r.principal_undetermined += 1,
                other => {
                    return Err(format!(
                        "θ_{}(χ_{}) = {:?}, expected χ_{}",
                        m.format(g),
                        m.format(&p),
                        other,
                        m.format(&gp)
                    ))
                }
            }
        }
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Closure {
    pub members: BTreeSet<usize>,
    /// Images that were left undetermined and therefore not followed.
    pub undetermined: usize,
}

/// Smallest superset of `seed` closed under every determined `θ_g`.
pub fn invariant_closure(action: &ThetaAction, seed: &[usize]) -> Closure {
    let gs = action.gradings();
    let mut members: BTreeSet<usize> = seed.iter().copied().collect();
    let mut stack: Vec<usize> = members.iter().copied().collect();
    let mut undetermined = 0;
    while let Some(c) = stack.pop() {
        for g in &gs {
            match action.theta_apply(g, c) {
                ThetaOutcome::Image(d) => {
                    if members.insert(d) {
                        stack.push(d);
                    }
                }
                ThetaOutcome::Undetermined => undetermined += 1,
                ThetaOutcome::OutsideDomain => {}
            }
        }
    }
    Closure { members, undetermined }
}

/// Whether no determined image leaves the set.
pub fn is_invariant(action: &ThetaAction, set: &BTreeSet<usize>) -> bool {
    set.iter().all(|&c| {
        action
            .gradings()
            .iter()
            .all(|g| action.theta_apply(g, c).image().is_none_or(|d| set.contains(&d)))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Boundary {
    /// Closure of the maximal filters.
    pub characters: Vec<usize>,
    pub maximal: Vec<usize>,
    /// Intersection of all singleton closures, when it is nonempty and invariant.
    pub orbit_intersection: Option<Vec<usize>>,
    pub agree: bool,
    pub undetermined: usize,
}

/// The minimal invariant set, computed from the maximal filters and
/// cross-checked against the intersection of all singleton orbit closures.
pub fn boundary(action: &ThetaAction) -> Boundary {
    let lat = action.lattice();
    let nonempty = lat.nonempty();
    // maximal support means a minimal nonempty least member
    let maximal: Vec<usize> = action
        .characters()
        .iter()
        .enumerate()
        .filter(|(_, c)| !nonempty.iter().any(|&y| y != c.least && lat.leq(y, c.least)))
        .map(|(k, _)| k)
        .collect();
    let closure = invariant_closure(action, &maximal);
    let mut undetermined = closure.undetermined;
    let mut inter: Option<BTreeSet<usize>> = None;
    for k in 0..action.characters().len() {
        let cl = invariant_closure(action, &[k]);
        undetermined += cl.undetermined;
        inter = Some(match inter {
            None => cl.members,
            Some(acc) => acc.intersection(&cl.members).copied().collect(),
        });
    }
    let orbit = inter.filter(|s| !s.is_empty() && is_invariant(action, s));
    let characters: Vec<usize> = closure.members.into_iter().collect();
    let orbit_intersection: Option<Vec<usize>> = orbit.map(|s| s.into_iter().collect());
    let agree = orbit_intersection.as_ref() == Some(&characters);
    Boundary {
        characters,
        maximal,
        orbit_intersection,
        agree,
        undetermined,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Freeness {
    Free,
    NotFree,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessReport {
    pub g: String,
    /// Boundary characters certified to lie in the domain of `θ_g`.
    pub domain: Vec<usize>,
    /// Boundary characters with a determined fixed point of `θ_g` or `θ_{g^{-1}}`.
    pub fixed: Vec<usize>,
    /// Some witness domain for `g` sits above the deepest fragment level.
    pub resolved: bool,
    pub verdict: Freeness,
}

/// Fragment levels of the witness domains for `g` that are fragment members.
fn domain_levels(action: &ThetaAction, g: &Elem) -> Vec<usize> {
    let lat = action.lattice();
    action
        .words()
        .iter()
        .filter(|w| w.sigma() == Some(g))
        .filter_map(|w| lat.find(w.dom()))
        .map(|i| lat.level(i))
        .collect()
}

/// Gradings whose domain the fragment resolves, i.e. with a witness domain
/// strictly above the deepest level.
pub fn resolved_gradings(action: &ThetaAction) -> Vec<Elem> {
    let top = action.lattice().max_level();
    let m = action.lattice().calculus().model();
    action
        .gradings()
        .into_iter()
        .filter(|g| !m.is_unit(g) && domain_levels(action, g).iter().any(|&l| l < top))
        .collect()
}

/// Finite-fragment evidence for topological freeness of `θ_g` on the boundary.
///
/// Basic open sets are the cylinders `{χ : χ(x) = 1}` for the fragment members
/// `x` below the deepest level. `free`: every cylinder meeting the domain
/// holds a domain character certified to move. `not_free`: some cylinder
/// inside a witness domain consists of certified fixed points. A grading
/// whose every witness domain lies at the deepest level is inconclusive,
/// since the fragment sees at most one character per cell there.
pub fn topological_freeness_probe(action: &ThetaAction, boundary: &Boundary, g_list: &[Elem]) -> Vec<FreenessReport> {
    let lat = action.lattice();
    let m = lat.calculus().model();
    let top = lat.max_level();
    let cylinders: Vec<usize> = lat
        .nonempty()
        .into_iter()
        .filter(|&x| x == 1 || lat.level(x) < top)
        .collect();
    let mut out = Vec::new();
    for g in g_list {
        if m.is_unit(g) {
            continue;
        }
        let ginv = m.inv(g);
        let moves = |c: usize| {
            action.certainly_moves(g, c)
                || action.certainly_moves(&ginv, c)
                || action.in_domain(&ginv, c) == Some(false)
        };
        // an invariant one-point boundary is fixed by every θ_g defined on it
        let point = boundary.agree && boundary.characters.len() == 1;
        let fixed_pt = |c: usize| {
            point
                || action.theta_apply(g, c) == ThetaOutcome::Image(c)
                || action.theta_apply(&ginv, c) == ThetaOutcome::Image(c)
        };
        let domain: Vec<usize> = boundary
            .characters
            .iter()
            .copied()
            .filter(|&c| action.in_domain(g, c) == Some(true))
            .collect();
        let undecided = boundary.characters.iter().any(|&c| action.in_domain(g, c).is_none());
        let witness_domains: Vec<usize> = action
            .words()
            .iter()
            .filter(|w| w.sigma() == Some(g))
            .filter_map(|w| lat.find(w.dom()))
            .filter(|&d| lat.level(d) < top)
            .collect();
        let resolved = !undecided && (domain.is_empty() || !witness_domains.is_empty());
        let fixed: Vec<usize> = domain.iter().copied().filter(|&c| fixed_pt(c)).collect();
        let mut all_free = true;
        let mut some_pinned = false;
        for &x in &cylinders {
            let cell: Vec<usize> = domain
                .iter()
                .copied()
                .filter(|&c| action.characters()[c].value(x))
                .collect();
            if cell.is_empty() {
                continue;
            }
            if !cell.iter().any(|&c| moves(c)) {
                all_free = false;
            }
            if witness_domains.iter().any(|&d| lat.leq(x, d)) && cell.iter().all(|&c| fixed_pt(c)) {
                some_pinned = true;
            }
        }
        let verdict = if some_pinned {
            Freeness::NotFree
        } else if all_free && resolved {
            Freeness::Free
        } else {
            Freeness::Inconclusive
        };
        out.push(FreenessReport {
            g: m.format(g),
            domain,
            fixed,
            resolved,
            verdict,
        });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterNode {
    pub id: usize,
    pub least: String,
    pub support: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitEdge {
    pub g: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryExport {
    pub model: String,
    pub characters: Vec<CharacterNode>,
    pub boundary: Boundary,
    pub orbit_edges: Vec<OrbitEdge>,
    pub freeness: Vec<FreenessReport>,
}

pub fn export(action: &ThetaAction, boundary: &Boundary, freeness: Vec<FreenessReport>) -> BoundaryExport {
    let lat = action.lattice();
    let calc = lat.calculus();
    let m = calc.model();
    let characters = action
        .characters()
        .iter()
        .enumerate()
        .map(|(id, c)| CharacterNode {
            id,
            least: calc.describe(lat.ideal(c.least)),
            support: c.bits(),
        })
        .collect();
    let mut orbit_edges = Vec::new();
    for g in action.gradings() {
        for from in 0..action.characters().len() {
            if let ThetaOutcome::Image(to) = action.theta_apply(&g, from) {
                orbit_edges.push(OrbitEdge { g: m.format(&g), from, to });
            }
        }
    }
    BoundaryExport {
        model: m.name(),
        characters,
        boundary: boundary.clone(),
        orbit_edges,
        freeness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::{enumerate_ideals, IdealCalculus, Tier};
    use crate::model::ModelSpec;

    fn calc(spec: &str) -> IdealCalculus {
        let model = ModelSpec::parse_json(spec).unwrap().build().unwrap();
        IdealCalculus::new(model, Tier::Exact).unwrap()
    }

    fn naturals(k: i64) -> Lattice {
        let c = calc(r#"{"family":"free_abelian","rank":1}"#);
        let ideals = (0..=k).map(|n| c.principal(&Elem::scalar(n)).unwrap()).collect();
        Lattice::from_ideals(&c, ideals, 100).unwrap()
    }

    #[test]
    fn character_counts() {
        let c = calc(r#"{"family":"free_monoid","rank":2}"#);
        let single = Lattice::from_ideals(&c, vec![], 10).unwrap();
        assert_eq!(enumerate_characters(&single).len(), 1);
        assert_eq!(enumerate_characters(&naturals(2)).len(), 3);
        let f1 = enumerate_ideals(&c, &EnumerationCaps::depth(1)).unwrap();
        assert_eq!(enumerate_characters(&f1).len(), 3);
    }

    #[test]
    fn filters_match_exhaustion() {
        for lat in [
            naturals(3),
            enumerate_ideals(&calc(r#"{"family":"free_monoid","rank":2}"#), &EnumerationCaps::depth(2)).unwrap(),
            enumerate_ideals(&calc(r#"{"family":"free_abelian","rank":2}"#), &EnumerationCaps::depth(1)).unwrap(),
        ] {
            let mut a: Vec<BitVec> = enumerate_characters(&lat).into_iter().map(|c| c.support).collect();
            let mut b = brute_force_filters(&lat);
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn principal_characters() {
        let lat = naturals(3);
        let chi = principal_character(&lat, &Elem::scalar(2)).unwrap();
        let calc = lat.calculus();
        let by_corner: Vec<bool> = (0..=3)
            .map(|n| chi.value(lat.find(&calc.principal(&Elem::scalar(n)).unwrap()).unwrap()))
            .collect();
        assert_eq!(by_corner, [true, true, true, false]);
        let chi_e = principal_character(&lat, &Elem::scalar(0)).unwrap();
        assert_eq!(chi_e.least(), 1);
    }

    #[test]
    fn theta_on_naturals() {
        let lat = enumerate_ideals(&calc(r#"{"family":"free_abelian","rank":1}"#), &EnumerationCaps::depth(3)).unwrap();
        let caps = EnumerationCaps::depth(2);
        let action = ThetaAction::new(&lat, &caps).unwrap();
        let chi0 = action.index_of(&principal_character(&lat, &Elem::scalar(0)).unwrap()).unwrap();
        let chi1 = action.index_of(&principal_character(&lat, &Elem::scalar(1)).unwrap()).unwrap();
        assert_eq!(action.theta_apply(&Elem::scalar(1), chi0), ThetaOutcome::Image(chi1));
        assert_eq!(action.theta_apply(&Elem::scalar(0), chi1), ThetaOutcome::Image(chi1));
        let b = boundary(&action);
        assert_eq!(b.characters.len(), 1);
        assert!(b.agree);
        let gs = resolved_gradings(&action);
        assert!(gs.contains(&Elem::scalar(1)) && gs.contains(&Elem::scalar(-1)));
        for r in topological_freeness_probe(&action, &b, &gs) {
            assert_eq!(r.verdict, Freeness::NotFree, "{}", r.g);
        }
    }

    #[test]
    fn theta_on_free_monoid() {
        let c = calc(r#"{"family":"free_monoid","rank":2}"#);
        let lat = enumerate_ideals(&c, &EnumerationCaps::depth(2)).unwrap();
        let action = ThetaAction::new(&lat, &EnumerationCaps::depth(2)).unwrap();
        let m = c.model();
        let chi_b = action.index_of(&principal_character(&lat, &m.parse("b").unwrap()).unwrap()).unwrap();
        assert_eq!(action.theta_apply(&m.parse("A").unwrap(), chi_b), ThetaOutcome::OutsideDomain);
        let b = boundary(&action);
        assert_eq!(b.characters.len(), 4);
        assert_eq!(b.maximal, b.characters);
        assert!(b.agree);
        let mut tested = resolved_gradings(&action);
        assert!(tested.len() >= 4);
        tested.push(m.parse("Ab").unwrap());
        for r in topological_freeness_probe(&action, &b, &tested) {
            assert_eq!(r.verdict, Freeness::Free, "{}", r.g);
        }
        // b^∞ is fixed by b², and the domain bbP is a single cell at depth 2
        let deep = topological_freeness_probe(&action, &b, &[m.parse("BB").unwrap()]);
        assert_eq!(deep[0].verdict, Freeness::Inconclusive);
        assert!(!deep[0].resolved);
    }

    #[test]
    fn closure_of_everything_is_everything() {
        let lat = naturals(2);
        let action = ThetaAction::new(&lat, &EnumerationCaps::depth(1)).unwrap();
        let all: Vec<usize> = (0..action.characters().len()).collect();
        let cl = invariant_closure(&action, &all);
        assert_eq!(cl.members.into_iter().collect::<Vec<_>>(), all);
    }

    #[test]
    fn partial_action_laws() {
        for spec in [
            r#"{"family":"free_abelian","rank":1}"#,
            r#"{"family":"free_abelian","rank":2}"#,
            r#"{"family":"free_monoid","rank":2}"#,
            r#"{"family":"numerical","generators":[2,3]}"#,
        ] {
            let c = calc(spec);
            let caps = EnumerationCaps::depth(2);
            let lat = enumerate_ideals(&c, &caps).unwrap();
            let action = ThetaAction::new(&lat, &caps).unwrap();
            let r = check_partial_action(&action, 4).unwrap();
            assert_eq!(r.identity, r.characters, "{spec}");
            assert!(r.composition > 0 && r.principal > 0, "{spec} {r:?}");
        }
    }
}
