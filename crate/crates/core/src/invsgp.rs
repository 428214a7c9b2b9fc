//! The inverse semigroup of V-words `V_{p_1}^* V_{q_1} ... V_{p_n}^* V_{q_n}`.
//!
//! A nonzero word acts on `P` as the partial bijection `x -> σx` from its
//! domain ideal onto its range ideal, so it is stored as `(σ, dom, ran)`
//! together with the trace that spelled it.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::ideals::{ConstructibleIdeal, EnumerationCaps, Equality, IdealCalculus, IdealError, IdealKey, Lattice, Tier, WordTrace};
use crate::ideals::Alphabet;
use crate::model::Elem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VWord {
    /// `None` only for the formally adjoined zero.
    trace: Option<WordTrace>,
    sigma: Option<Elem>,
    dom: ConstructibleIdeal,
    ran: ConstructibleIdeal,
}

impl VWord {
    pub fn trace(&self) -> Option<&WordTrace> {
        self.trace.as_ref()
    }

    /// The grading `σ(V)`; `None` on zero.
    pub fn sigma(&self) -> Option<&Elem> {
        self.sigma.as_ref()
    }

    /// Source ideal, the support of `V^*V`.
    pub fn dom(&self) -> &ConstructibleIdeal {
        &self.dom
    }

    /// Range ideal, the support of `VV^*`.
    pub fn ran(&self) -> &ConstructibleIdeal {
        &self.ran
    }

    pub fn is_zero(&self) -> bool {
        self.sigma.is_none()
    }

    pub fn trace_len(&self) -> usize {
        self.trace.as_ref().map_or(0, |t| t.len())
    }
}

/// Builds the word spelled by `trace`.
pub fn make_vword(calc: &IdealCalculus, trace: &WordTrace) -> Result<VWord, IdealError> {
    let m = calc.model();
    let ran = calc.from_trace(trace)?;
    let dom = calc.from_trace(&trace.starred(m))?;
    let zero = calc.is_empty(&dom) == Some(true);
    Ok(VWord {
        trace: Some(trace.clone()),
        sigma: (!zero).then(|| trace.grading().clone()),
        dom,
        ran,
    })
}

pub fn zero(calc: &IdealCalculus) -> VWord {
    VWord {
        trace: None,
        sigma: None,
        dom: calc.empty(),
        ran: calc.empty(),
    }
}

pub fn identity(calc: &IdealCalculus) -> VWord {
    make_vword(calc, &WordTrace::empty(calc.model())).expect("the empty trace is valid")
}

/// `V_p`.
pub fn isometry(calc: &IdealCalculus, p: &Elem) -> Result<VWord, IdealError> {
    make_vword(calc, &WordTrace::isometry(calc.model(), p)?)
}

/// The projection `E_[x]`, spelled as `v v^*` for the word `v` of `x`'s trace.
pub fn idempotent(calc: &IdealCalculus, x: &ConstructibleIdeal) -> Result<VWord, IdealError> {
    match x.trace() {
        None => Ok(zero(calc)),
        Some(t) => {
            let v = make_vword(calc, t)?;
            compose(calc, &v, &star(calc, &v))
        }
    }
}

/// `vw`, by concatenating traces.
pub fn compose(calc: &IdealCalculus, v: &VWord, w: &VWord) -> Result<VWord, IdealError> {
    match (&v.trace, &w.trace) {
        (Some(a), Some(b)) => make_vword(calc, &a.concat(calc.model(), b)),
        _ => Ok(zero(calc)),
    }
}

/// `v^*`: reversed trace with every pair swapped.
pub fn star(calc: &IdealCalculus, v: &VWord) -> VWord {
    let m = calc.model();
    VWord {
        trace: v.trace.as_ref().map(|t| t.starred(m)),
        sigma: v.sigma.as_ref().map(|g| m.inv(g)),
        dom: v.ran.clone(),
        ran: v.dom.clone(),
    }
}

/// Equality of words as partial bijections, decided through `(σ, dom)`.
pub fn vword_eq(calc: &IdealCalculus, v: &VWord, w: &VWord) -> Equality {
    let zv = calc.is_empty(&v.dom);
    let zw = calc.is_empty(&w.dom);
    match (zv, zw) {
        (Some(true), Some(true)) => return Equality::Equal,
        (Some(true), Some(false)) | (Some(false), Some(true)) => return Equality::Distinct,
        (Some(false), Some(false)) => {}
        _ => return calc.eq(&v.dom, &w.dom),
    }
    if v.sigma != w.sigma {
        return Equality::Distinct;
    }
    calc.eq(&v.dom, &w.dom)
}

/// Applies the word to one point by running the letters of its trace:
/// `V_q` multiplies by `q`, `V_p^*` divides by `p` or annihilates.
pub fn act(calc: &IdealCalculus, v: &VWord, x: &Elem) -> Option<Elem> {
    let m = calc.model();
    let t = v.trace.as_ref()?;
    let mut cur = x.clone();
    for (p, q) in t.pairs().iter().rev() {
        cur = m.mul(q, &cur);
        cur = m.divide(p, &cur).ok()??;
    }
    Some(cur)
}

/// Checks the action on `P_{<=radius}` against `x -> σx` on `dom`; returns the number of points checked.
pub fn check_action(calc: &IdealCalculus, v: &VWord, radius: usize) -> Result<usize, String> {
    let m = calc.model();
    let mut checked = 0;
    for x in m.enumerate_p(radius) {
        let image = act(calc, v, &x);
        let in_dom = calc.contains(&v.dom, &x);
        match (image, in_dom) {
            (Some(y), Some(true)) => {
                let expect = m.mul(v.sigma.as_ref().ok_or("zero word acts nontrivially")?, &x);
                if y != expect {
                    return Err(format!("{} maps to {} not {}", m.format(&x), m.format(&y), m.format(&expect)));
                }
                if calc.contains(&v.ran, &y) == Some(false) {
                    return Err(format!("image {} outside the range ideal", m.format(&y)));
                }
            }
            (None, Some(false)) | (_, None) => {}
            (Some(_), Some(false)) => return Err(format!("{} acts outside the domain", m.format(&x))),
            (None, Some(true)) => return Err(format!("{} in the domain is annihilated", m.format(&x))),
        }
        checked += 1;
    }
    Ok(checked)
}

/// Multiplication table of the idempotents `E_[x]` over a fragment.
#[derive(Clone, Debug)]
pub struct Semilattice {
    pub idempotents: Vec<VWord>,
    /// `table[i][j] = k` when `E_i E_j = E_k`, indices as in the fragment.
    pub table: Vec<Vec<usize>>,
}

pub fn semilattice(lat: &Lattice) -> Result<Semilattice, IdealError> {
    let calc = lat.calculus();
    let idempotents = lat
        .ideals()
        .iter()
        .map(|x| idempotent(calc, x))
        .collect::<Result<Vec<_>, _>>()?;
    let n = idempotents.len();
    let mut table = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let prod = compose(calc, &idempotents[i], &idempotents[j])?;
            table[i][j] = lat
                .find(prod.dom())
                .ok_or_else(|| IdealError::CapExceeded("product of idempotents left the fragment".into()))?;
        }
    }
    Ok(Semilattice { idempotents, table })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum WordKey {
    Zero,
    Nonzero(Elem, IdealKey),
}

fn word_key(calc: &IdealCalculus, v: &VWord, radius: Option<usize>) -> Result<WordKey, IdealError> {
    if calc.is_empty(&v.dom) == Some(true) {
        return Ok(WordKey::Zero);
    }
    let sigma = v.sigma.clone().unwrap_or_else(|| calc.model().unit());
    let key = match radius {
        None => calc.key(&v.dom),
        Some(r) => IdealKey::Truncated {
            members: calc.members_within(&v.dom, r).ok_or(IdealError::TruncationExhausted {
                needed: r,
                radius: v.dom.radius().unwrap_or(0),
            })?,
            radius: r,
        },
    };
    Ok(WordKey::Nonzero(sigma, key))
}

fn letters(calc: &IdealCalculus, alphabet: &Alphabet) -> Vec<Elem> {
    let m = calc.model();
    let mut letters = match alphabet {
        Alphabet::Generators => {
            let mut v = vec![m.unit()];
            v.extend(m.generators().iter().cloned());
            v
        }
        Alphabet::Ball { max_len } => m.enumerate_p(*max_len),
    };
    letters.sort_by_cached_key(|a| m.sort_key(a));
    letters.dedup();
    letters
}

/// Every spelling with at most `caps.max_trace_len` pairs, duplicates included.
pub fn all_spellings(calc: &IdealCalculus, caps: &EnumerationCaps) -> Result<Vec<VWord>, IdealError> {
    let m = calc.model();
    let letters = letters(calc, &caps.alphabet);
    let mut traces = vec![WordTrace::empty(m)];
    let mut layer = traces.clone();
    for _ in 0..caps.max_trace_len {
        let mut next = Vec::new();
        for t in &layer {
            for p in &letters {
                for q in &letters {
                    next.push(t.concat(m, &WordTrace::new(m, vec![(p.clone(), q.clone())])?));
                }
            }
        }
        if traces.len() + next.len() > caps.max_ideals {
            return Err(IdealError::CapExceeded(format!("more than {} spellings", caps.max_ideals)));
        }
        traces.extend(next.iter().cloned());
        layer = next;
    }
    traces.iter().map(|t| make_vword(calc, t)).collect()
}

/// All distinct words with at most `caps.max_trace_len` pairs from the alphabet.
///
/// The representative kept for each class is the first trace reached in
/// breadth-first order, i.e. the shortest and then lexicographically least.
pub fn enumerate_ivwords(calc: &IdealCalculus, caps: &EnumerationCaps) -> Result<Vec<VWord>, IdealError> {
    let m = calc.model();
    let letters = letters(calc, &caps.alphabet);
    let radius = match calc.tier() {
        Tier::Exact => None,
        Tier::Truncated { radius } => {
            let longest = letters.iter().map(|a| m.length(a)).max().unwrap_or(0);
            Some(radius.checked_sub(longest * caps.max_trace_len).ok_or(IdealError::TruncationExhausted {
                needed: longest * caps.max_trace_len,
                radius,
            })?)
        }
    };
    let mut seen: HashMap<WordKey, usize> = HashMap::new();
    let mut words = Vec::new();
    let mut layer = vec![WordTrace::empty(m)];
    for depth in 0..=caps.max_trace_len {
        let mut next = Vec::new();
        for t in &layer {
            let v = make_vword(calc, t)?;
            let key = word_key(calc, &v, radius)?;
            if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(key) {
                if words.len() >= caps.max_ideals {
                    return Err(IdealError::CapExceeded(format!("more than {} words", caps.max_ideals)));
                }
                slot.insert(words.len());
                words.push(v);
            }
            if depth < caps.max_trace_len {
                for p in &letters {
                    for q in &letters {
                        let pair = WordTrace::new(m, vec![(p.clone(), q.clone())])?;
                        next.push(t.concat(m, &pair));
                    }
                }
            }
        }
        layer = next;
    }
    Ok(words)
}

/// Checks `σ(vw) = σ(v)σ(w)` on every nonzero product of listed words,
/// pointwise on `P_{<=radius}`; returns the number of products checked.
pub fn check_sigma_multiplicative(calc: &IdealCalculus, words: &[VWord], radius: usize) -> Result<usize, String> {
    let m = calc.model();
    let points = m.enumerate_p(radius);
    let mut checked = 0;
    for v in words {
        for w in words {
            let vw = compose(calc, v, w).map_err(|e| e.to_string())?;
            if vw.is_zero() || v.is_zero() || w.is_zero() {
                continue;
            }
            let g = m.mul(v.sigma().unwrap(), w.sigma().unwrap());
            if vw.sigma() != Some(&g) {
                return Err("grading of a product differs from the product of gradings".into());
            }
            for x in &points {
                if let Some(y) = act(calc, w, x).and_then(|y| act(calc, v, &y)) {
                    if y != m.mul(&g, x) {
                        return Err(format!("pointwise action disagrees at {}", m.format(x)));
                    }
                }
            }
            checked += 1;
        }
    }
    Ok(checked)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub words: usize,
    /// Words with `vv*v = v`.
    pub regular: usize,
    /// `e`-graded nonzero words equal to `E_[dom v]`.
    pub graded_collapse: usize,
    pub sigma_products: usize,
    /// Pairs of distinct spellings detected equal, with `vv* = ww* = wv* = vw*`.
    pub equal_pairs: usize,
    /// Points at which the action was simulated.
    pub action_points: usize,
}

/// Checks the inverse-semigroup identities on every listed word and pair.
pub fn check_laws(calc: &IdealCalculus, words: &[VWord], radius: usize) -> Result<LawReport, String> {
    let m = calc.model();
    let err = |e: IdealError| e.to_string();
    let name = |v: &VWord| v.trace.as_ref().map_or("0".to_string(), |t| t.render(m));
    let equal = |a: &VWord, b: &VWord| vword_eq(calc, a, b) == Equality::Equal;
    let mut r = LawReport {
        words: words.len(),
        ..LawReport::default()
    };
    for v in words {
        let vs = star(calc, v);
        let vsv = compose(calc, &compose(calc, v, &vs).map_err(err)?, v).map_err(err)?;
        if !equal(&vsv, v) {
            return Err(format!("vv*v differs from v for {}", name(v)));
        }
        r.regular += 1;
        if let Some(g) = v.sigma() {
            if m.is_unit(g) && !v.is_zero() {
                if !equal(v, &idempotent(calc, &v.dom).map_err(err)?) {
                    return Err(format!("{} is e-graded but not the projection onto its domain", name(v)));
                }
                r.graded_collapse += 1;
            }
        }
        r.action_points += check_action(calc, v, radius)?;
    }
    r.sigma_products = check_sigma_multiplicative(calc, words, radius)?;
    for (i, v) in words.iter().enumerate() {
        for w in &words[i + 1..] {
            if !equal(v, w) {
                continue;
            }
            let (vs, ws) = (star(calc, v), star(calc, w));
            let prods = [
                compose(calc, v, &vs).map_err(err)?,
                compose(calc, w, &ws).map_err(err)?,
                compose(calc, w, &vs).map_err(err)?,
                compose(calc, v, &ws).map_err(err)?,
            ];
            if !prods[1..].iter().all(|p| equal(&prods[0], p)) {
                return Err(format!("{} = {} but their range projections differ", name(v), name(w)));
            }
            r.equal_pairs += 1;
        }
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VWordNode {
    pub id: usize,
    pub trace: Option<Vec<[String; 2]>>,
    pub sigma: Option<String>,
    pub dom: String,
    pub ran: String,
    pub dom_id: Option<usize>,
    pub ran_id: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseSemigroupExport {
    pub model: String,
    pub words: Vec<VWordNode>,
    /// Idempotent multiplication table over the fragment, by fragment index.
    pub semilattice: Vec<Vec<usize>>,
}

pub fn export(lat: &Lattice, words: &[VWord], table: &Semilattice) -> InverseSemigroupExport {
    let calc = lat.calculus();
    let m = calc.model();
    InverseSemigroupExport {
        model: m.name(),
        words: words
            .iter()
            .enumerate()
            .map(|(id, v)| VWordNode {
                id,
                trace: v.trace().map(|t| t.to_strings(m)),
                sigma: v.sigma().map(|g| m.format(g)),
                dom: calc.describe(v.dom()),
                ran: calc.describe(v.ran()),
                dom_id: lat.find(v.dom()),
                ran_id: lat.find(v.ran()),
            })
            .collect(),
        semilattice: table.table.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::enumerate_ideals;
    use crate::model::ModelSpec;

    fn calc(spec: &str) -> IdealCalculus {
        let model = ModelSpec::parse_json(spec).unwrap().build().unwrap();
        IdealCalculus::new(model, Tier::Exact).unwrap()
    }

    fn tr(c: &IdealCalculus, pairs: &[(&str, &str)]) -> WordTrace {
        let m = c.model();
        WordTrace::new(m, pairs.iter().map(|(p, q)| (m.parse(p).unwrap(), m.parse(q).unwrap())).collect()).unwrap()
    }

    #[test]
    fn make_vword_examples() {
        let c = calc(r#"{"family":"free_monoid","rank":2}"#);
        let v = make_vword(&c, &tr(&c, &[("e", "ab")])).unwrap();
        assert_eq!(c.describe(v.dom()), "P");
        assert_eq!(c.describe(v.ran()), "abP");
        assert_eq!(c.model().format(v.sigma().unwrap()), "ab");
        let id = make_vword(&c, &tr(&c, &[("ab", "ab")])).unwrap();
        assert_eq!(vword_eq(&c, &id, &identity(&c)), Equality::Equal);
        assert!(make_vword(&c, &tr(&c, &[("a", "b")])).unwrap().is_zero());
    }

    #[test]
    fn compose_and_star() {
        let c = calc(r#"{"family":"free_monoid","rank":2}"#);
        let a = c.model().parse("a").unwrap();
        let b = c.model().parse("b").unwrap();
        let va = isometry(&c, &a).unwrap();
        let vb = isometry(&c, &b).unwrap();
        let vab = isometry(&c, &c.model().mul(&a, &b)).unwrap();
        assert!(vword_eq(&c, &compose(&c, &va, &vb).unwrap(), &vab).is_equal());
        let s = star(&c, &va);
        assert_eq!(c.describe(s.dom()), "aP");
        assert_eq!(c.describe(s.ran()), "P");
        let z = compose(&c, &s, &vb).unwrap();
        assert!(z.is_zero());
        assert!(compose(&c, &z, &va).unwrap().is_zero());
        assert!(compose(&c, &zero(&c), &va).unwrap().is_zero());
        assert_eq!(star(&c, &star(&c, &va)), va);
    }

    #[test]
    fn naturals_word_domains() {
        // V_2^* V_3 sends δ_x to δ_{x+1} for every x, so it is V_1: domain N, range 1+N
        let c = calc(r#"{"family":"free_abelian","rank":1}"#);
        let v = make_vword(&c, &tr(&c, &[("2", "3")])).unwrap();
        let v1 = make_vword(&c, &tr(&c, &[("0", "1")])).unwrap();
        assert_eq!(v.sigma(), v1.sigma());
        let all: Vec<Elem> = (0..=10).map(Elem::scalar).collect();
        assert_eq!(c.members_within(v.dom(), 10).unwrap(), all);
        assert_eq!(c.members_within(v.ran(), 10).unwrap(), all[1..].to_vec());
        assert_eq!(vword_eq(&c, &v, &v1), Equality::Equal);
        // V_3^* V_2 is V_1^*, defined on 1+N only
        let w = make_vword(&c, &tr(&c, &[("3", "2")])).unwrap();
        assert_eq!(c.describe(w.dom()), "1+P");
        assert_eq!(vword_eq(&c, &w, &v1), Equality::Distinct);
        assert!(check_action(&c, &v, 12).is_ok());
        assert!(check_action(&c, &w, 12).is_ok());
    }

    #[test]
    fn idempotents_from_different_spellings() {
        let c = calc(r#"{"family":"free_abelian","rank":1}"#);
        // 1+N spelled as 0^{-1}1 P and as 2^{-1}3 P
        let x = c.from_trace(&tr(&c, &[("0", "1")])).unwrap();
        let y = c.from_trace(&tr(&c, &[("2", "3")])).unwrap();
        let ex = idempotent(&c, &x).unwrap();
        let ey = idempotent(&c, &y).unwrap();
        assert_ne!(ex.trace(), ey.trace());
        assert_eq!(vword_eq(&c, &ex, &ey), Equality::Equal);
        assert_eq!(c.model().format(ex.sigma().unwrap()), "0");
    }

    #[test]
    fn semilattice_tables() {
        let c = calc(r#"{"family":"free_abelian","rank":1}"#);
        let ideals = (0..3).map(|n| c.principal(&Elem::scalar(n)).unwrap()).collect();
        let lat = Lattice::from_ideals(&c, ideals, 10).unwrap();
        let s = semilattice(&lat).unwrap();
        for i in 0..lat.len() {
            for j in 0..lat.len() {
                assert_eq!(s.table[i][j], lat.meet(i, j));
            }
        }
        let f = calc(r#"{"family":"free_monoid","rank":2}"#);
        let lat = enumerate_ideals(&f, &EnumerationCaps::depth(1)).unwrap();
        let s = semilattice(&lat).unwrap();
        let a = lat.find(&f.principal(&f.model().parse("a").unwrap()).unwrap()).unwrap();
        let b = lat.find(&f.principal(&f.model().parse("b").unwrap()).unwrap()).unwrap();
        assert_eq!(s.table[a][b], 0);
        let single = Lattice::from_ideals(&f, vec![], 10).unwrap();
        assert_eq!(semilattice(&single).unwrap().table, vec![vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn enumeration_depth_zero_and_one() {
        let c = calc(r#"{"family":"free_monoid","rank":2}"#);
        let w0 = enumerate_ivwords(&c, &EnumerationCaps::depth(0)).unwrap();
        assert_eq!(w0.len(), 1);
        let w1 = enumerate_ivwords(&c, &EnumerationCaps::depth(1)).unwrap();
        // one pair spells 1, V_a, V_b, V_a^*, V_b^* and 0
        let sigmas: Vec<Option<String>> = w1.iter().map(|v| v.sigma().map(|g| c.model().format(g))).collect();
        assert_eq!(w1.len(), 6, "{sigmas:?}");
        assert!(w1.iter().any(|v| v.is_zero()));
        assert!(check_sigma_multiplicative(&c, &w1, 4).unwrap() > 0);
    }

    #[test]
    fn laws_on_spellings() {
        let c = calc(r#"{"family":"free_abelian","rank":1}"#);
        let words = all_spellings(&c, &EnumerationCaps::depth(2)).unwrap();
        assert_eq!(words.len(), 1 + 4 + 16);
        let r = check_laws(&c, &words, 6).unwrap();
        assert_eq!(r.regular, 21);
        assert!(r.equal_pairs > 0 && r.graded_collapse > 0 && r.sigma_products > 0);
    }
}
