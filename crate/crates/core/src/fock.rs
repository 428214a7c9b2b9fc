//! Truncated matrices on `ℓ²(P_{<=N})`.
//!
//! Every operator carries a *band* and a *shift*. Columns `δ_s` with
//! `|s| <= band` are exact, and a column `δ_s` only reaches rows of length
//! at most `|s| + shift`. Products shrink the band accordingly:
//! `band(AB) = min(band(B), band(A) - shift(B))`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ideals::{ConstructibleIdeal, IdealCalculus, IdealError};
use crate::invsgp::{act, compose, idempotent, VWord};
use crate::linalg::{norm_enclosure, Enclosure, EnclosureStrings};
use crate::model::{Elem, Model};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FockError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("guard band exhausted: operator needs {needed} letters of headroom, truncation is {trunc}")]
    BandExhausted { needed: usize, trunc: usize },
    #[error("membership of {0} is undecided")]
    Undecided(String),
    #[error("element {0} is not e-graded")]
    NotEGraded(String),
    #[error("conditional expectation routes disagree at ({row}, {col})")]
    ExpectationMismatch { row: usize, col: usize },
    #[error("cannot decide whether {0}P meets P")]
    Inconclusive(String),
    #[error("bad triplet dump: {0}")]
    Parse(String),
}

/// `P_{<=N}` in enumeration order.
#[derive(Debug)]
pub struct Basis {
    trunc: usize,
    elems: Vec<Elem>,
    lengths: Vec<usize>,
    index: HashMap<Elem, usize>,
}

impl Basis {
    pub fn new(model: &dyn Model, trunc: usize) -> Arc<Self> {
        let elems = model.enumerate_p(trunc);
        let lengths = elems.iter().map(|e| model.length(e)).collect();
        let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Arc::new(Basis {
            trunc,
            elems,
            lengths,
            index,
        })
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    pub fn index(&self, e: &Elem) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Indices of basis vectors of length at most `band`.
    pub fn within(&self, band: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.lengths[i] <= band)
    }
}

#[derive(Clone, Debug)]
pub struct TruncOp {
    basis: Arc<Basis>,
    entries: BTreeMap<(usize, usize), BigRational>,
    band: usize,
    shift: usize,
}

impl PartialEq for TruncOp {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries && self.band == other.band && self.shift == other.shift
    }
}

fn one() -> BigRational {
    BigRational::one()
}

impl TruncOp {
    pub fn zero(basis: &Arc<Basis>) -> Self {
        TruncOp {
            basis: basis.clone(),
            entries: BTreeMap::new(),
            band: basis.trunc,
            shift: 0,
        }
    }

    pub fn identity(basis: &Arc<Basis>) -> Self {
        let entries = (0..basis.len()).map(|i| ((i, i), one())).collect();
        TruncOp {
            entries,
            ..Self::zero(basis)
        }
    }

    pub fn diagonal(basis: &Arc<Basis>, mask: &[bool]) -> Self {
        let entries = mask
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| ((i, i), one()))
            .collect();
        TruncOp {
            entries,
            ..Self::zero(basis)
        }
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn band(&self) -> usize {
        self.band
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn entry(&self, row: usize, col: usize) -> BigRational {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), BigRational> {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|(r, c)| r == c)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.entries.clear();
        } else {
            for v in out.entries.values_mut() {
                *v *= c;
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut entries = self.entries.clone();
        for (k, v) in &other.entries {
            let e = entries.entry(*k).or_insert_with(BigRational::zero);
            *e += v;
            if e.is_zero() {
                entries.remove(k);
            }
        }
        TruncOp {
            basis: self.basis.clone(),
            entries,
            band: self.band.min(other.band),
            shift: self.shift.max(other.shift),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-one()))
    }

    /// `self · other`; fails when no column survives.
    pub fn mul(&self, other: &Self) -> Result<Self, FockError> {
        if self.band < other.shift {
            return Err(FockError::BandExhausted {
                needed: other.shift + (self.basis.trunc - self.band),
                trunc: self.basis.trunc,
            });
        }
        let mut by_row: HashMap<usize, Vec<(usize, &BigRational)>> = HashMap::new();
        for ((r, c), v) in &self.entries {
            by_row.entry(*c).or_default().push((*r, v));
        }
        let mut entries: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
        for ((k, c), v) in &other.entries {
            if let Some(col) = by_row.get(k) {
                for (r, u) in col {
                    let e = entries.entry((*r, *c)).or_insert_with(BigRational::zero);
                    *e += *u * v;
                }
            }
        }
        entries.retain(|_, v| !v.is_zero());
        Ok(TruncOp {
            basis: self.basis.clone(),
            entries,
            band: other.band.min(self.band - other.shift),
            shift: self.shift + other.shift,
        })
    }

    pub fn transpose(&self) -> Self {
        let entries = self.entries.iter().map(|((r, c), v)| ((*c, *r), v.clone())).collect();
        TruncOp {
            entries,
            ..self.clone()
        }
    }

    /// Entries in the columns both operators trust.
    pub fn eq_on_band(&self, other: &Self) -> bool {
        self.first_difference(other, self.band.min(other.band)).is_none()
    }

    /// First entry `(row, col)` with `|col| <= band` where the two differ.
    pub fn first_difference(&self, other: &Self, band: usize) -> Option<(usize, usize)> {
        let trusted = |(_, c): &(usize, usize)| self.basis.length(*c) <= band;
        for (k, v) in self.entries.iter().filter(|(k, _)| trusted(k)) {
            if other.entries.get(k) != Some(v) {
                return Some(*k);
            }
        }
        other
            .entries
            .keys()
            .filter(|k| trusted(k))
            .find(|k| !self.entries.contains_key(k))
            .copied()
    }

    /// Entries with row and column both of length at most `band`.
    pub fn eq_on_square(&self, other: &Self, band: usize) -> bool {
        let inside = |(r, c): &(usize, usize)| self.basis.length(*r) <= band && self.basis.length(*c) <= band;
        let a: Vec<_> = self.entries.iter().filter(|(k, _)| inside(k)).collect();
        let b: Vec<_> = other.entries.iter().filter(|(k, _)| inside(k)).collect();
        a == b
    }

    /// The diagonal compression `Σ_s Q_s · Q_s`.
    pub fn compress_diagonal(&self) -> Self {
        let entries = self
            .entries
            .iter()
            .filter(|((r, c), _)| r == c)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        TruncOp {
            entries,
            ..self.clone()
        }
    }

    /// Dense principal submatrix on the given indices.
    pub fn dense(&self, indices: &[usize]) -> Vec<Vec<BigRational>> {
        indices
            .iter()
            .map(|&r| indices.iter().map(|&c| self.entry(r, c)).collect())
            .collect()
    }

    /// Sparse triplet text: a header line, then `row col value` per nonzero entry.
    pub fn to_triplets(&self) -> String {
        let mut s = format!(
            "# truncop dim={} trunc={} band={} shift={}\n",
            self.basis.len(),
            self.basis.trunc,
            self.band,
            self.shift
        );
        for ((r, c), v) in &self.entries {
            let _ = writeln!(s, "{r} {c} {v}");
        }
        s
    }

    pub fn parse_triplets(basis: &Arc<Basis>, text: &str) -> Result<Self, FockError> {
        let bad = |m: &str| FockError::Parse(m.to_string());
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("empty input"))?;
        let mut fields = HashMap::new();
        for tok in header.trim_start_matches('#').split_whitespace().skip(1) {
            let (k, v) = tok.split_once('=').ok_or_else(|| bad(tok))?;
            fields.insert(k, v.parse::<usize>().map_err(|_| bad(tok))?);
        }
        let get = |k: &str| fields.get(k).copied().ok_or_else(|| bad(&format!("missing {k}")));
        if get("dim")? != basis.len() || get("trunc")? != basis.trunc {
            return Err(bad("header does not match basis"));
        }
        let mut entries = BTreeMap::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [r, c, v] = parts[..] else {
                return Err(bad(line));
            };
            let r: usize = r.parse().map_err(|_| bad(line))?;
            let c: usize = c.parse().map_err(|_| bad(line))?;
            let v: BigRational = v.parse().map_err(|_| bad(line))?;
            if r >= basis.len() || c >= basis.len() {
                return Err(bad(line));
            }
            if !v.is_zero() {
                entries.insert((r, c), v);
            }
        }
        Ok(TruncOp {
            basis: basis.clone(),
            entries,
            band: get("band")?,
            shift: get("shift")?,
        })
    }
}

/// Matrix of a V-word, with band `N − Σ|q_i|`.
pub fn rep_vword(calc: &IdealCalculus, basis: &Arc<Basis>, v: &VWord) -> Result<TruncOp, FockError> {
    let m = calc.model();
    let Some(trace) = v.trace() else {
        return Ok(TruncOp::zero(basis));
    };
    let shift = trace.q_length(m);
    if shift > basis.trunc {
        return Err(FockError::BandExhausted {
            needed: shift,
            trunc: basis.trunc,
        });
    }
    let mut entries = BTreeMap::new();
    for (s, x) in basis.elems.iter().enumerate() {
        if let Some(y) = act(calc, v, x) {
            if let Some(r) = basis.index(&y) {
                entries.insert((r, s), one());
            }
        }
    }
    Ok(TruncOp {
        basis: basis.clone(),
        entries,
        band: basis.trunc - shift,
        shift,
    })
}

/// `E_{[x]}` as the diagonal mask of `x`.
pub fn projection(calc: &IdealCalculus, basis: &Arc<Basis>, x: &ConstructibleIdeal) -> Result<TruncOp, FockError> {
    let mut mask = Vec::with_capacity(basis.len());
    for e in basis.elems() {
        mask.push(
            calc.contains(x, e)
                .ok_or_else(|| FockError::Undecided(calc.model().format(e)))?,
        );
    }
    Ok(TruncOp::diagonal(basis, &mask))
}

/// `E_{[x]} E_{[y]} = E_{[x ∩ y]}` on the band.
pub fn check_projection_identity(
    calc: &IdealCalculus,
    basis: &Arc<Basis>,
    x: &ConstructibleIdeal,
    y: &ConstructibleIdeal,
) -> Result<bool, FockError> {
    let lhs = projection(calc, basis, x)?.mul(&projection(calc, basis, y)?)?;
    let rhs = projection(calc, basis, &calc.intersect(x, y)?)?;
    Ok(lhs.eq_on_band(&rhs))
}

/// A finite linear combination of V-words.
#[derive(Clone, Debug, Default)]
pub struct Combination {
    pub terms: Vec<(BigRational, VWord)>,
}

impl Combination {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(mut self, c: impl Into<BigRational>, v: VWord) -> Self {
        self.terms.push((c.into(), v));
        self
    }

    /// `1 − Σ E_{[x]}`.
    pub fn one_minus(calc: &IdealCalculus, ideals: &[&ConstructibleIdeal]) -> Result<Self, IdealError> {
        let mut f = Self::new().term(BigRational::one(), crate::invsgp::identity(calc));
        for x in ideals {
            f = f.term(-BigRational::one(), idempotent(calc, x)?);
        }
        Ok(f)
    }

    pub fn projection(calc: &IdealCalculus, x: &ConstructibleIdeal) -> Result<Self, IdealError> {
        Ok(Self::new().term(BigRational::one(), idempotent(calc, x)?))
    }

    pub fn is_e_graded(&self, calc: &IdealCalculus) -> bool {
        self.terms
            .iter()
            .all(|(_, v)| v.sigma().is_none_or(|g| calc.model().is_unit(g)))
    }

    pub fn render(&self, calc: &IdealCalculus) -> String {
        let m = calc.model();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, v)| {
                let w = v.trace().map_or("0".to_string(), |t| t.render(m));
                format!("{c}·{w}")
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

pub fn rep_combination(calc: &IdealCalculus, basis: &Arc<Basis>, f: &Combination) -> Result<TruncOp, FockError> {
    let mut acc = TruncOp::zero(basis);
    for (c, v) in &f.terms {
        acc = acc.add(&rep_vword(calc, basis, v)?.scale(c));
    }
    Ok(acc)
}

/// `E_λ` by keeping the terms of grading `e`.
pub fn expectation_by_grading(calc: &IdealCalculus, basis: &Arc<Basis>, f: &Combination) -> Result<TruncOp, FockError> {
    let mut acc = TruncOp::zero(basis);
    for (c, v) in &f.terms {
        let rep = rep_vword(calc, basis, v)?;
        let keep = v.sigma().is_some_and(|g| calc.model().is_unit(g));
        acc = acc.add(&if keep { rep.scale(c) } else { rep.scale(&BigRational::zero()) });
    }
    Ok(acc)
}

/// `E_λ(f)`, computed both by grading and by diagonal compression; the two must agree on the band.
pub fn cond_expectation(calc: &IdealCalculus, basis: &Arc<Basis>, f: &Combination) -> Result<TruncOp, FockError> {
    let graded = expectation_by_grading(calc, basis, f)?;
    let compressed = rep_combination(calc, basis, f)?.compress_diagonal();
    if let Some((row, col)) = graded.first_difference(&compressed, graded.band.min(compressed.band)) {
        return Err(FockError::ExpectationMismatch { row, col });
    }
    Ok(graded)
}

/// A random combination of up to `max_terms` products of at most two pool words,
/// with coefficients in `{±1, ±2, ±1/2, ±3}`, kept only if its band is nonempty.
pub fn random_combination<R: Rng>(
    calc: &IdealCalculus,
    basis: &Basis,
    pool: &[VWord],
    max_terms: usize,
    rng: &mut R,
) -> Result<Combination, IdealError> {
    const COEFFS: [(i64, i64); 4] = [(1, 1), (2, 1), (1, 2), (3, 1)];
    let m = calc.model();
    loop {
        let n = rng.gen_range(1..=max_terms.max(1));
        let mut f = Combination::new();
        let mut shift = 0;
        for _ in 0..n {
            let v = &pool[rng.gen_range(0..pool.len())];
            let w = if rng.gen_bool(0.5) {
                compose(calc, v, &pool[rng.gen_range(0..pool.len())])?
            } else {
                v.clone()
            };
            let (a, b) = COEFFS[rng.gen_range(0..COEFFS.len())];
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            shift = shift.max(w.trace().map_or(0, |t| t.q_length(m)));
            f.terms.push((BigRational::new(BigInt::from(sign * a), BigInt::from(b)), w));
        }
        if shift <= basis.trunc {
            return Ok(f);
        }
    }
}

/// `I_{r^{-1}(r ∨ F)} ≠ 0` for every basis element, plus the frame itself.
#[derive(Clone, Debug)]
pub struct SehnemFrame {
    f: Vec<Elem>,
    basis: Arc<Basis>,
    flags: Vec<bool>,
}

impl SehnemFrame {
    pub fn set(&self) -> &[Elem] {
        &self.f
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    pub fn flag(&self, r: usize) -> bool {
        self.flags[r]
    }

    /// Basis of `X_F` inside the truncation.
    pub fn x_basis(&self) -> Vec<usize> {
        (0..self.flags.len()).filter(|&i| self.flags[i]).collect()
    }

    /// `Q_{e,F}` as a diagonal mask on `ℓ²(P_{<=N})`.
    pub fn q_projection(&self) -> TruncOp {
        TruncOp::diagonal(&self.basis, &self.flags)
    }
}

/// Builds frames over one truncation, memoizing whether `gP ∩ P` is nonempty.
#[derive(Debug)]
pub struct FrameBuilder<'a> {
    calc: &'a IdealCalculus,
    basis: Arc<Basis>,
    meets: Mutex<HashMap<Elem, bool>>,
}

impl<'a> FrameBuilder<'a> {
    pub fn new(calc: &'a IdealCalculus, basis: Arc<Basis>) -> Self {
        FrameBuilder {
            calc,
            basis,
            meets: Mutex::new(HashMap::new()),
        }
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    /// Whether `gP ∩ P ≠ ∅`.
    pub fn meets_p(&self, g: &Elem) -> Result<bool, FockError> {
        if let Some(&b) = self.meets.lock().unwrap().get(g) {
            return Ok(b);
        }
        let m = self.calc.model();
        let answer = match m.exact() {
            Some(ex) => !ex.translate_meet(g).is_empty(),
            None => {
                if m.enumerate_p(self.basis.trunc).iter().any(|w| m.in_p(&m.mul(g, w))) {
                    true
                } else {
                    return Err(FockError::Inconclusive(m.format(g)));
                }
            }
        };
        self.meets.lock().unwrap().insert(g.clone(), answer);
        Ok(answer)
    }

    /// `I_{r^{-1}K_{{r,g}}}` is zero exactly when `rP ∩ gP ≠ ∅` and `r ∉ gP`.
    pub fn flag(&self, f: &[Elem], r: &Elem) -> Result<bool, FockError> {
        let m = self.calc.model();
        for g in f {
            let r_in_gp = m.in_p(&m.mul(&m.inv(g), r));
            if !r_in_gp && self.meets_p(&m.mul(&m.inv(r), g))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn build(&self, f: &[Elem]) -> Result<SehnemFrame, FockError> {
        let flags = self
            .basis
            .elems()
            .iter()
            .map(|r| self.flag(f, r))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SehnemFrame {
            f: f.to_vec(),
            basis: self.basis.clone(),
            flags,
        })
    }

    /// `flag_F(r) = flag_{pF}(pr)` for all `r` with `pr` in the truncation; returns the pairs checked.
    pub fn check_invariance(&self, f: &[Elem], p: &Elem) -> Result<usize, String> {
        let m = self.calc.model();
        let pf: Vec<Elem> = f.iter().map(|g| m.mul(p, g)).collect();
        let mut checked = 0;
        for r in self.basis.elems() {
            let pr = m.mul(p, r);
            if self.basis.index(&pr).is_none() {
                continue;
            }
            let a = self.flag(f, r).map_err(|e| e.to_string())?;
            let b = self.flag(&pf, &pr).map_err(|e| e.to_string())?;
            if a != b {
                return Err(format!("flag of {} under F differs from flag of {} under pF", m.format(r), m.format(&pr)));
            }
            checked += 1;
        }
        Ok(checked)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScNorm {
    pub f_set: Vec<String>,
    pub enclosure: EnclosureStrings,
    /// The exact value when the compression is diagonal.
    pub exact: Option<String>,
    pub band: usize,
    pub x_dim: usize,
}

impl ScNorm {
    pub fn upper(&self) -> BigRational {
        self.enclosure.hi.parse().unwrap()
    }

    pub fn lower(&self) -> BigRational {
        self.enclosure.lo.parse().unwrap()
    }
}

/// Dimension up to which the diagonal value is cross-checked by bisection.
const CROSS_CHECK_DIM: usize = 24;

/// `‖f‖_F = ‖Q_{e,F} Φ_F(f) Q_{e,F}‖` restricted to the band.
///
/// On the `e`-slice `Φ_F` of an `e`-graded word acts as the word itself on
/// `X_F ⊆ ℓ²(P)`, so the compression is the trusted principal block of the
/// regular-representation matrix on the flagged basis vectors.
pub fn sc_norm(
    calc: &IdealCalculus,
    builder: &FrameBuilder,
    f: &Combination,
    frame_set: &[Elem],
    tol: &BigRational,
) -> Result<ScNorm, FockError> {
    let m = calc.model();
    if let Some((_, v)) = f
        .terms
        .iter()
        .find(|(_, v)| v.sigma().is_some_and(|g| !m.is_unit(g)))
    {
        return Err(FockError::NotEGraded(v.trace().map_or("0".into(), |t| t.render(m))));
    }
    let basis = builder.basis();
    let frame = builder.build(frame_set)?;
    let op = rep_combination(calc, basis, f)?;
    let band = op.band();
    let idx: Vec<usize> = basis.within(band).filter(|&i| frame.flag(i)).collect();
    let f_set = frame_set.iter().map(|g| m.format(g)).collect();
    let (enclosure, exact) = if op.is_diagonal() {
        let value = idx
            .iter()
            .map(|&i| op.entry(i, i).abs())
            .max()
            .unwrap_or_else(BigRational::zero);
        if idx.len() <= CROSS_CHECK_DIM {
            let enc = norm_enclosure(&op.dense(&idx), tol);
            debug_assert!(enc.contains(&value));
        }
        (Enclosure::point(value.clone()), Some(value.to_string()))
    } else {
        (norm_enclosure(&op.dense(&idx), tol), None)
    };
    Ok(ScNorm {
        f_set,
        enclosure: enclosure.to_strings(),
        exact,
        band,
        x_dim: idx.len(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScVerdict {
    VanishingEvidence,
    NonVanishingEvidence,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScProbe {
    pub f: String,
    pub values: Vec<ScNorm>,
    pub non_increasing: bool,
    pub verdict: ScVerdict,
}

/// `‖f‖_F` along an increasing chain of finite sets.
pub fn sc_limit_probe(
    calc: &IdealCalculus,
    builder: &FrameBuilder,
    f: &Combination,
    chain: &[Vec<Elem>],
    tol: &BigRational,
) -> Result<ScProbe, FockError> {
    let values = chain
        .iter()
        .map(|fs| sc_norm(calc, builder, f, fs, tol))
        .collect::<Result<Vec<_>, _>>()?;
    let non_increasing = values.windows(2).all(|w| w[1].upper() <= w[0].upper());
    let tail = &values[values.len() / 2..];
    let verdict = match values.last() {
        None => ScVerdict::Inconclusive,
        Some(last) if last.upper() <= *tol => ScVerdict::VanishingEvidence,
        Some(_) if !tail.is_empty() && tail.iter().all(|v| v.lower() > *tol) => ScVerdict::NonVanishingEvidence,
        Some(_) => ScVerdict::Inconclusive,
    };
    Ok(ScProbe {
        f: f.render(calc),
        values,
        non_increasing,
        verdict,
    })
}

/// `F_k = {e} ∪ {σ(v) : |σ(v)| <= k}` over the given words, for `k = 0..=max`.
pub fn ball_chain(calc: &IdealCalculus, words: &[VWord], max: usize) -> Vec<Vec<Elem>> {
    let m = calc.model();
    let mut sigmas: Vec<Elem> = words.iter().filter_map(|v| v.sigma().cloned()).collect();
    sigmas.push(m.unit());
    sigmas.sort_by_key(|g| (m.length(g), g.clone()));
    sigmas.dedup();
    (0..=max)
        .map(|k| sigmas.iter().filter(|g| m.length(g) <= k).cloned().collect())
        .collect()
}
