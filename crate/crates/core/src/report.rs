//! Batch runs: a JSON config in, a versioned JSON report out.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::fock::{
    ball_chain, check_projection_identity, cond_expectation, random_combination, rep_vword, sc_limit_probe, Basis,
    Combination, FrameBuilder, ScVerdict,
};
use crate::ideals::{
    enumerate_ideals, independence_rank_oracle, independence_test, ore_test, EnumerationCaps, IdealCalculus,
    Independence, Lattice, OreVerdict,
};
use crate::invsgp::{all_spellings, check_laws, compose, enumerate_ivwords, semilattice, star, VWord};
use crate::linalg::decimal_tolerance;
use crate::model::{ModelError, ModelSpec};
use crate::spectrum::{self, Freeness, ThetaAction};

pub const SCHEMA: &str = "semigroup-lab/report/v1";
pub const CACHE_ENV: &str = "SEMIGROUP_LAB_CACHE";

/// Spellings for the pairwise law checks stop at this many pairs.
const LAW_DEPTH: usize = 2;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("no analysis named {0:?} in the report")]
    UnknownTopic(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Analysis {
    Ideals,
    Independence,
    Ore,
    Invsgp,
    Spectrum,
    Boundary,
    Freeness,
    Fock,
    Sc,
}

impl Analysis {
    pub const ALL: [Analysis; 9] = [
        Analysis::Ideals,
        Analysis::Independence,
        Analysis::Ore,
        Analysis::Invsgp,
        Analysis::Spectrum,
        Analysis::Boundary,
        Analysis::Freeness,
        Analysis::Fock,
        Analysis::Sc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Analysis::Ideals => "ideals",
            Analysis::Independence => "independence",
            Analysis::Ore => "ore",
            Analysis::Invsgp => "invsgp",
            Analysis::Spectrum => "spectrum",
            Analysis::Boundary => "boundary",
            Analysis::Freeness => "freeness",
            Analysis::Fock => "fock",
            Analysis::Sc => "sc",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name() == s)
    }

    fn requires(self) -> &'static [Analysis] {
        match self {
            Analysis::Ideals | Analysis::Ore => &[],
            Analysis::Independence | Analysis::Invsgp => &[Analysis::Ideals],
            Analysis::Spectrum => &[Analysis::Invsgp],
            Analysis::Boundary => &[Analysis::Spectrum],
            Analysis::Freeness => &[Analysis::Boundary],
            Analysis::Fock | Analysis::Sc => &[Analysis::Invsgp],
        }
    }

    fn operation(self) -> &'static str {
        match self {
            Analysis::Ideals => "ideals::enumerate_ideals",
            Analysis::Independence => "ideals::independence_test",
            Analysis::Ore => "ideals::ore_test",
            Analysis::Invsgp => "invsgp::enumerate_ivwords",
            Analysis::Spectrum => "spectrum::theta_apply",
            Analysis::Boundary => "spectrum::boundary",
            Analysis::Freeness => "spectrum::topological_freeness_probe",
            Analysis::Fock => "fock::cond_expectation",
            Analysis::Sc => "fock::sc_limit_probe",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    #[serde(default = "default_depth")]
    pub depth: usize,
    /// Radius for pointwise checks; defaults by family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<usize>,
    /// Fock truncation `N`; defaults by family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc: Option<usize>,
    #[serde(default = "default_f_chain")]
    pub f_chain: usize,
    #[serde(default = "default_ore_len")]
    pub ore_len: usize,
    #[serde(default = "default_max_ideals")]
    pub max_ideals: usize,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

fn default_depth() -> usize {
    2
}
fn default_f_chain() -> usize {
    3
}
fn default_ore_len() -> usize {
    3
}
fn default_max_ideals() -> usize {
    10_000
}
fn default_samples() -> usize {
    200
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            depth: default_depth(),
            radius: None,
            trunc: None,
            f_chain: default_f_chain(),
            ore_len: default_ore_len(),
            max_ideals: default_max_ideals(),
            samples: default_samples(),
        }
    }
}

fn default_analyses() -> Vec<Analysis> {
    Analysis::ALL.to_vec()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelSpec,
    #[serde(default = "default_analyses")]
    pub analyses: Vec<Analysis>,
    #[serde(default)]
    pub caps: Caps,
    #[serde(default)]
    pub seed: u64,
    /// Extra group elements for the freeness probe, in the model's notation.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub freeness_g: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(model: ModelSpec) -> Self {
        RunConfig {
            model,
            analyses: default_analyses(),
            caps: Caps::default(),
            seed: 0,
            freeness_g: Vec::new(),
            output: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        serde_json::from_str(text).map_err(|e| ReportError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, ReportError> {
        let text = std::fs::read_to_string(path).map_err(|source| ReportError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Fills family defaults, adds dependencies and checks that caps are positive.
    pub fn resolved(&self) -> Result<Self, ReportError> {
        let mut c = self.clone();
        let (radius, trunc) = match c.model {
            ModelSpec::FreeMonoid { .. } => (6, 7),
            ModelSpec::FreeAbelian { rank } if rank > 1 => (50, 8),
            ModelSpec::FreeAbelian { .. } => (50, 12),
            ModelSpec::Numerical { .. } => (50, 20),
        };
        c.caps.radius.get_or_insert(radius);
        c.caps.trunc.get_or_insert(trunc);
        let caps = &c.caps;
        for (name, v) in [
            ("depth", caps.depth),
            ("radius", caps.radius.unwrap()),
            ("trunc", caps.trunc.unwrap()),
            ("f_chain", caps.f_chain),
            ("ore_len", caps.ore_len),
            ("max_ideals", caps.max_ideals),
            ("samples", caps.samples),
        ] {
            if v == 0 {
                return Err(ReportError::Config(format!("caps.{name} must be positive")));
            }
        }
        let mut set: Vec<Analysis> = Vec::new();
        let mut stack = c.analyses.clone();
        while let Some(a) = stack.pop() {
            if !set.contains(&a) {
                set.push(a);
                stack.extend_from_slice(a.requires());
            }
        }
        set.sort();
        c.analyses = set;
        Ok(c)
    }

    fn radius(&self) -> usize {
        self.caps.radius.unwrap_or(50)
    }

    fn trunc(&self) -> usize {
        self.caps.trunc.unwrap_or(7)
    }

    /// SHA-256 of the canonical resolved config and tool version.
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(&(self, env!("CARGO_PKG_VERSION"))).expect("config serializes");
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    Exact,
    BandLimited,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Definite,
    Inconclusive,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Definite => 0,
            Status::Inconclusive => 2,
            Status::Error => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub analysis: Analysis,
    pub operation: String,
    pub parameters: Value,
    pub evidence: Evidence,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub data: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
    pub analyses_ms: BTreeMap<String, f64>,
    pub cache_hit: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool: Tool,
    pub config: RunConfig,
    pub config_hash: String,
    pub status: Status,
    pub analyses: Vec<AnalysisReport>,
    /// Wall-clock data, excluded from [`Report::canonical_json`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl Report {
    pub fn get(&self, a: Analysis) -> Option<&AnalysisReport> {
        self.analyses.iter().find(|r| r.analysis == a)
    }

    /// Pretty JSON without timings; byte-identical across runs of one config.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.timings = None;
        serde_json::to_string_pretty(&r).expect("report serializes") + "\n"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn write(&self, path: &Path) -> Result<(), ReportError> {
        std::fs::write(path, self.to_json()).map_err(|source| ReportError::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self, ReportError> {
        let text = std::fs::read_to_string(path).map_err(|source| ReportError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(serde_json::from_str(&text)?)
    }
}

struct Ctx {
    cfg: RunConfig,
    calc: IdealCalculus,
    lattice: Option<Lattice>,
    words: Option<Vec<VWord>>,
    action: Option<ThetaAction>,
    boundary: Option<spectrum::Boundary>,
}

type Outcome = Result<(Evidence, String, Value), String>;

impl Ctx {
    fn caps(&self) -> EnumerationCaps {
        EnumerationCaps {
            max_ideals: self.cfg.caps.max_ideals,
            ..EnumerationCaps::depth(self.cfg.caps.depth)
        }
    }

    fn lattice(&self) -> Result<&Lattice, String> {
        self.lattice.as_ref().ok_or_else(|| "ideal enumeration failed".into())
    }

    fn words(&self) -> Result<&[VWord], String> {
        self.words.as_deref().ok_or_else(|| "word enumeration failed".into())
    }

    fn parameters(&self, a: Analysis) -> Value {
        let c = &self.cfg.caps;
        match a {
            Analysis::Ideals | Analysis::Independence => json!({"depth": c.depth, "max_ideals": c.max_ideals}),
            Analysis::Ore => json!({"ore_len": c.ore_len}),
            Analysis::Invsgp => json!({"depth": c.depth, "law_depth": c.depth.min(LAW_DEPTH), "radius": self.cfg.radius().min(8)}),
            Analysis::Spectrum | Analysis::Boundary => json!({"depth": c.depth}),
            Analysis::Freeness => json!({"depth": c.depth, "extra_g": self.cfg.freeness_g}),
            Analysis::Fock => json!({"trunc": self.cfg.trunc(), "samples": c.samples, "seed": self.cfg.seed}),
            Analysis::Sc => json!({"trunc": self.cfg.trunc(), "f_chain": c.f_chain, "tolerance": "1e-9"}),
        }
    }

    fn run(&mut self, a: Analysis) -> Outcome {
        match a {
            Analysis::Ideals => self.ideals(),
            Analysis::Independence => self.independence(),
            Analysis::Ore => self.ore(),
            Analysis::Invsgp => self.invsgp(),
            Analysis::Spectrum => self.spectrum(),
            Analysis::Boundary => self.boundary(),
            Analysis::Freeness => self.freeness(),
            Analysis::Fock => self.fock(),
            Analysis::Sc => self.sc(),
        }
    }

    fn ideals(&mut self) -> Outcome {
        let lat = enumerate_ideals(&self.calc, &self.caps()).map_err(|e| e.to_string())?;
        let evidence = if lat.certified() { Evidence::Exact } else { Evidence::BandLimited };
        let verdict = format!("{} ideals", lat.len());
        let data = serde_json::to_value(lat.export()).map_err(|e| e.to_string())?;
        self.lattice = Some(lat);
        Ok((evidence, verdict, data))
    }

    fn independence(&mut self) -> Outcome {
        let lat = self.lattice()?;
        let calc = lat.calculus();
        let verdict = independence_test(lat);
        let (radius, _) = lat.decisive_radius(&lat.nonempty());
        let rank = (lat.len() <= 12).then(|| independence_rank_oracle(lat, radius));
        if let Some(r) = &rank {
            if let (Some(full), Independence::Independent { .. } | Independence::Witness { .. }) = (r.full_rank(), &verdict) {
                if full != verdict.is_independent() {
                    return Err(format!("coverage verdict {verdict:?} disagrees with rank oracle {r:?}"));
                }
            }
        }
        let describe = |i: usize| calc.describe(lat.ideal(i));
        let (evidence, name, witness) = match &verdict {
            Independence::Independent { .. } => (Evidence::Exact, "independent", Value::Null),
            Independence::Witness { ideal, cover, .. } => (
                Evidence::Exact,
                "witness",
                json!({"ideal": describe(*ideal), "cover": cover.iter().map(|&i| describe(i)).collect::<Vec<_>>()}),
            ),
            Independence::Inconclusive { .. } => (Evidence::Inconclusive, "inconclusive", Value::Null),
        };
        let data = json!({"test": verdict, "witness": witness, "rank_oracle": rank});
        Ok((evidence, name.into(), data))
    }

    fn ore(&mut self) -> Outcome {
        let v = ore_test(&self.calc, self.cfg.caps.ore_len).map_err(|e| e.to_string())?;
        let (evidence, verdict) = match &v {
            OreVerdict::OreUpTo { .. } => (Evidence::BandLimited, "ore_up_to".to_string()),
            OreVerdict::Counterexample { p, q } => (Evidence::Exact, format!("counterexample({p},{q})")),
            OreVerdict::Inconclusive { .. } => (Evidence::Inconclusive, "inconclusive".into()),
        };
        Ok((evidence, verdict, serde_json::to_value(v).unwrap()))
    }

    fn invsgp(&mut self) -> Outcome {
        let caps = self.caps();
        let words = enumerate_ivwords(&self.calc, &caps).map_err(|e| e.to_string())?;
        let law_caps = EnumerationCaps {
            max_trace_len: caps.max_trace_len.min(LAW_DEPTH),
            ..caps.clone()
        };
        let spellings = all_spellings(&self.calc, &law_caps).map_err(|e| e.to_string())?;
        let laws = check_laws(&self.calc, &spellings, self.cfg.radius().min(8))?;
        let lat = self.lattice()?;
        let table = semilattice(lat).map_err(|e| e.to_string())?;
        let export = crate::invsgp::export(lat, &words, &table);
        let nonzero = words.iter().filter(|w| !w.is_zero()).count();
        let data = json!({"distinct_words": words.len(), "nonzero": nonzero, "laws": laws, "export": export});
        self.words = Some(words);
        Ok((Evidence::Exact, "laws_hold".into(), data))
    }

    fn spectrum(&mut self) -> Outcome {
        let lat = self.lattice()?;
        let action = ThetaAction::new(lat, &self.caps()).map_err(|e| e.to_string())?;
        let laws = spectrum::check_partial_action(&action, self.cfg.radius().min(8))?;
        let verdict = format!("{} characters, axioms hold", action.characters().len());
        let data = json!({"laws": laws});
        self.action = Some(action);
        Ok((Evidence::BandLimited, verdict, data))
    }

    fn boundary(&mut self) -> Outcome {
        let action = self.action.as_ref().ok_or("spectrum failed")?;
        let b = spectrum::boundary(action);
        let verdict = match b.characters.len() {
            1 => "singleton".to_string(),
            n => format!("{n} characters"),
        };
        let evidence = if b.agree { Evidence::BandLimited } else { Evidence::Inconclusive };
        let data = serde_json::to_value(spectrum::export(action, &b, Vec::new())).unwrap();
        self.boundary = Some(b);
        Ok((evidence, verdict, data))
    }

    fn freeness(&mut self) -> Outcome {
        let action = self.action.as_ref().ok_or("spectrum failed")?;
        let b = self.boundary.as_ref().ok_or("boundary failed")?;
        let m = self.calc.model();
        let mut gs = spectrum::resolved_gradings(action);
        for s in &self.cfg.freeness_g {
            let g = m.parse(s).map_err(|e| e.to_string())?;
            if !gs.contains(&g) {
                gs.push(g);
            }
        }
        let reports = spectrum::topological_freeness_probe(action, b, &gs);
        let count = |f: Freeness| reports.iter().filter(|r| r.verdict == f).count();
        let (free, pinned, open) = (count(Freeness::Free), count(Freeness::NotFree), count(Freeness::Inconclusive));
        let (evidence, verdict) = if open > 0 {
            (Evidence::Inconclusive, "inconclusive")
        } else if pinned == 0 {
            (Evidence::BandLimited, "free")
        } else if free == 0 {
            (Evidence::BandLimited, "not_free")
        } else {
            (Evidence::BandLimited, "mixed")
        };
        Ok((evidence, verdict.into(), json!({"tested": reports})))
    }

    fn fock(&mut self) -> Outcome {
        let calc = &self.calc;
        let basis = Basis::new(calc.model(), self.cfg.trunc());
        let lat = self.lattice()?;
        let words = self.words()?;
        let err = |e: crate::fock::FockError| e.to_string();
        let mut projection_pairs = 0;
        for x in lat.ideals() {
            for y in lat.ideals() {
                if !check_projection_identity(calc, &basis, x, y).map_err(err)? {
                    return Err(format!("projection identity fails for {} and {}", calc.describe(x), calc.describe(y)));
                }
                projection_pairs += 1;
            }
        }
        let fits = |v: &VWord| v.trace().is_none_or(|t| t.q_length(calc.model()) <= basis.trunc());
        let usable: Vec<&VWord> = words.iter().filter(|v| fits(v)).collect();
        let mut products = 0;
        for v in &usable {
            let rv = rep_vword(calc, &basis, v).map_err(err)?;
            if !rep_vword(calc, &basis, &star(calc, v)).map_err(err)?.eq_on_square(&rv.transpose(), rv.band().min(basis.trunc())) {
                return Err("adjoint is not the transpose".into());
            }
            for w in &usable {
                let rw = rep_vword(calc, &basis, w).map_err(err)?;
                let Ok(prod) = rv.mul(&rw) else { continue };
                let vw = compose(calc, v, w).map_err(|e| e.to_string())?;
                if !fits(&vw) {
                    continue;
                }
                if !prod.eq_on_band(&rep_vword(calc, &basis, &vw).map_err(err)?) {
                    return Err("representation is not multiplicative on the band".into());
                }
                products += 1;
            }
        }
        let pool: Vec<VWord> = usable.into_iter().cloned().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        for _ in 0..self.cfg.caps.samples {
            let f = random_combination(calc, &basis, &pool, 4, &mut rng).map_err(|e| e.to_string())?;
            cond_expectation(calc, &basis, &f).map_err(err)?;
        }
        let data = json!({
            "basis": basis.len(),
            "projection_pairs": projection_pairs,
            "multiplicative_products": products,
            "expectation_samples": self.cfg.caps.samples,
        });
        Ok((Evidence::BandLimited, "consistent".into(), data))
    }

    fn sc(&mut self) -> Outcome {
        let calc = &self.calc;
        let m = calc.model();
        let words = self.words()?;
        let basis = Basis::new(m, self.cfg.trunc());
        let builder = FrameBuilder::new(calc, basis);
        let gens: Vec<_> = m
            .generators()
            .iter()
            .map(|g| calc.principal(g))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let refs: Vec<_> = gens.iter().collect();
        let mut elements = vec![Combination::one_minus(calc, &refs).map_err(|e| e.to_string())?];
        if let Some(x) = gens.first() {
            elements.push(Combination::projection(calc, x).map_err(|e| e.to_string())?);
        }
        let chain = ball_chain(calc, words, self.cfg.caps.f_chain);
        let tol = decimal_tolerance(9);
        let mut probes = Vec::new();
        for f in &elements {
            probes.push(sc_limit_probe(calc, &builder, f, &chain, &tol).map_err(|e| e.to_string())?);
        }
        let verdicts: Vec<&str> = probes
            .iter()
            .map(|p| match p.verdict {
                ScVerdict::VanishingEvidence => "vanishing_evidence",
                ScVerdict::NonVanishingEvidence => "non_vanishing_evidence",
                ScVerdict::Inconclusive => "inconclusive",
            })
            .collect();
        let evidence = if probes.iter().any(|p| p.verdict == ScVerdict::Inconclusive) {
            Evidence::Inconclusive
        } else {
            Evidence::BandLimited
        };
        let chain_str: Vec<Vec<String>> = chain.iter().map(|f| f.iter().map(|g| m.format(g)).collect()).collect();
        Ok((evidence, verdicts.join(", "), json!({"chain": chain_str, "probes": probes})))
    }
}

fn overall(analyses: &[AnalysisReport]) -> Status {
    if analyses.iter().any(|a| a.error.is_some()) {
        Status::Error
    } else if analyses.iter().any(|a| a.evidence == Evidence::Inconclusive) {
        Status::Inconclusive
    } else {
        Status::Definite
    }
}

/// Runs every requested analysis in dependency order. Analysis failures are
/// recorded in their entry and do not stop the run.
pub fn run(config: &RunConfig) -> Result<Report, ReportError> {
    let cfg = config.resolved()?;
    let model = cfg.model.build()?;
    let calc = IdealCalculus::best(model, cfg.radius());
    let start = Instant::now();
    let mut ctx = Ctx {
        cfg: cfg.clone(),
        calc,
        lattice: None,
        words: None,
        action: None,
        boundary: None,
    };
    let mut analyses = Vec::new();
    let mut timings = Timings::default();
    for &a in &cfg.analyses {
        let t = Instant::now();
        let outcome = ctx.run(a);
        timings.analyses_ms.insert(a.name().into(), t.elapsed().as_secs_f64() * 1e3);
        let parameters = ctx.parameters(a);
        analyses.push(match outcome {
            Ok((evidence, verdict, data)) => AnalysisReport {
                analysis: a,
                operation: a.operation().into(),
                parameters,
                evidence,
                verdict,
                error: None,
                data,
            },
            Err(e) => AnalysisReport {
                analysis: a,
                operation: a.operation().into(),
                parameters,
                evidence: Evidence::Inconclusive,
                verdict: "error".into(),
                error: Some(e),
                data: Value::Null,
            },
        });
    }
    timings.total_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(Report {
        schema: SCHEMA.into(),
        tool: Tool {
            name: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
        },
        config_hash: cfg.hash(),
        status: overall(&analyses),
        config: cfg,
        analyses,
        timings: Some(timings),
    })
}

/// [`run`] through the cache directory named by `SEMIGROUP_LAB_CACHE`, if set.
pub fn run_cached(config: &RunConfig) -> Result<Report, ReportError> {
    match std::env::var_os(CACHE_ENV) {
        Some(dir) if !dir.is_empty() => run_in_cache(config, Path::new(&dir)),
        _ => run(config),
    }
}

/// Reuses `<dir>/<config hash>.json` when present, otherwise runs and stores it.
pub fn run_in_cache(config: &RunConfig, dir: &Path) -> Result<Report, ReportError> {
    let key = config.resolved()?.hash();
    let path = dir.join(format!("{key}.json"));
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(mut r) = serde_json::from_str::<Report>(&text) {
            if r.schema == SCHEMA && r.config_hash == key {
                r.timings = Some(Timings {
                    cache_hit: true,
                    ..Timings::default()
                });
                return Ok(r);
            }
        }
    }
    let report = run(config)?;
    let io = |source| ReportError::Io {
        path: path.clone(),
        source,
    };
    std::fs::create_dir_all(dir).map_err(io)?;
    std::fs::write(&path, report.canonical_json()).map_err(io)?;
    Ok(report)
}

fn json_str(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Prose rendering of one analysis.
pub fn explain(report: &Report, topic: &str) -> Result<String, ReportError> {
    let a = Analysis::parse(topic).ok_or_else(|| ReportError::UnknownTopic(topic.into()))?;
    let r = report.get(a).ok_or_else(|| ReportError::UnknownTopic(topic.into()))?;
    let mut s = String::new();
    let _ = writeln!(s, "{}: {} [{:?}] via {}", a.name(), r.verdict, r.evidence, r.operation);
    let _ = writeln!(s, "parameters: {}", r.parameters);
    if let Some(e) = &r.error {
        let _ = writeln!(s, "error: {e}");
        return Ok(s);
    }
    let d = &r.data;
    match a {
        Analysis::Ideals => {
            let _ = writeln!(s, "identity checked: the fragment is closed under x ∩ y and ordered by inclusion");
            if let Some(nodes) = d["nodes"].as_array() {
                for n in nodes {
                    let _ = writeln!(s, "  [{}] {}", n["id"], json_str(&n["description"]));
                }
            }
        }
        Analysis::Independence => {
            let _ = writeln!(s, "property tested: whether some member is a finite union of strictly smaller members");
            if d["witness"].is_object() {
                let cover: Vec<String> = d["witness"]["cover"]
                    .as_array()
                    .map(|c| c.iter().map(json_str).collect())
                    .unwrap_or_default();
                let _ = writeln!(s, "  {} = {}", json_str(&d["witness"]["ideal"]), cover.join(" ∪ "));
            }
            if !d["rank_oracle"].is_null() {
                let _ = writeln!(s, "  rank oracle: {}", d["rank_oracle"]);
            }
        }
        Analysis::Ore => {
            let _ = writeln!(s, "property tested: pP ∩ qP ≠ ∅ for all pairs");
            match d["verdict"].as_str() {
                Some("counterexample") => {
                    let _ = writeln!(s, "  failing pair: {}P ∩ {}P = ∅", json_str(&d["p"]), json_str(&d["q"]));
                }
                Some("ore_up_to") => {
                    let _ = writeln!(s, "  verified for {} pairs with |p|, |q| <= {}", d["pairs"], d["max_len"]);
                }
                _ => {
                    let _ = writeln!(s, "  undecided at the pair ({}, {})", json_str(&d["p"]), json_str(&d["q"]));
                }
            }
        }
        Analysis::Invsgp => {
            let _ = writeln!(s, "identities checked: vv*v = v, σ(vw) = σ(v)σ(w), e-graded v = E[dom v], vv* = ww* = wv* = vw* for equal v, w");
            let _ = writeln!(s, "  {}", d["laws"]);
        }
        Analysis::Spectrum => {
            let _ = writeln!(s, "identities checked: θ_e = id, θ_g θ_h = θ_gh, θ_g(χ_p) = χ_gp");
            let _ = writeln!(s, "  {}", d["laws"]);
        }
        Analysis::Boundary => {
            let _ = writeln!(s, "identity checked: closure of maximal filters equals the intersection of all orbit closures");
            let _ = writeln!(s, "  boundary: {}", d["boundary"]["characters"]);
            let _ = writeln!(s, "  orbit intersection: {}", d["boundary"]["orbit_intersection"]);
        }
        Analysis::Freeness => {
            let _ = writeln!(s, "property probed: non-fixed characters are dense in the domain of θ_g");
            if let Some(t) = d["tested"].as_array() {
                for g in t {
                    let _ = writeln!(s, "  g = {:<8} {:<13} fixed {}", json_str(&g["g"]), json_str(&g["verdict"]), g["fixed"]);
                }
            }
        }
        Analysis::Fock => {
            let _ = writeln!(s, "identities checked: E[x]E[y] = E[x ∩ y], rep(v)rep(w) = rep(vw), grading filter = diagonal compression");
            let _ = writeln!(s, "  {d}");
        }
        Analysis::Sc => {
            let _ = writeln!(s, "quantity: ‖f‖_F = ‖Q_(e,F) Φ_F(f) Q_(e,F)‖ along the chain");
            if let Some(ps) = d["probes"].as_array() {
                for p in ps {
                    let _ = writeln!(s, "  f = {}  ({})", json_str(&p["f"]), json_str(&p["verdict"]));
                    let _ = writeln!(s, "    {:<28} {:>6} {:>14}", "F", "dim X_F", "‖f‖_F");
                    for v in p["values"].as_array().into_iter().flatten() {
                        let fs: Vec<String> = v["f_set"].as_array().into_iter().flatten().map(json_str).collect();
                        let val = if v["exact"].is_string() {
                            json_str(&v["exact"])
                        } else {
                            format!("[{}, {}]", json_str(&v["enclosure"]["lo"]), json_str(&v["enclosure"]["hi"]))
                        };
                        let _ = writeln!(s, "    {:<28} {:>6} {:>14}", format!("{{{}}}", fs.join(",")), v["x_dim"], val);
                    }
                }
            }
        }
    }
    Ok(s)
}

/// Parses `family:args` shorthands (`free_abelian:2`, `free_monoid:2`,
/// `numerical:2,3`) or a JSON model document.
pub fn parse_model_arg(s: &str) -> Result<ModelSpec, ReportError> {
    let s = s.trim();
    if s.starts_with('{') {
        return Ok(ModelSpec::parse_json(s)?);
    }
    let (family, args) = s.split_once(':').unwrap_or((s, "1"));
    let bad = || ReportError::Config(format!("cannot parse model {s:?}"));
    let rank = || args.parse::<usize>().map_err(|_| bad());
    Ok(match family {
        "free_abelian" | "nat" => ModelSpec::FreeAbelian { rank: rank()? },
        "free_monoid" => ModelSpec::FreeMonoid { rank: rank()? },
        "numerical" => ModelSpec::Numerical {
            generators: args
                .split(',')
                .map(|g| g.trim().parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?,
        },
        _ => return Err(bad()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(model: &str, analyses: &[Analysis]) -> RunConfig {
        RunConfig {
            analyses: analyses.to_vec(),
            ..RunConfig::new(parse_model_arg(model).unwrap())
        }
    }

    #[test]
    fn dependencies_are_added() {
        let c = cfg("free_abelian:1", &[Analysis::Freeness]).resolved().unwrap();
        assert_eq!(
            c.analyses,
            [Analysis::Ideals, Analysis::Invsgp, Analysis::Spectrum, Analysis::Boundary, Analysis::Freeness]
        );
        assert_eq!(c.caps.trunc, Some(12));
        let mut bad = cfg("free_abelian:1", &[]);
        bad.caps.depth = 0;
        assert!(bad.resolved().is_err());
    }

    #[test]
    fn run_examples() {
        let r = run(&cfg("free_monoid:2", &[Analysis::Ore])).unwrap();
        assert_eq!(r.get(Analysis::Ore).unwrap().verdict, "counterexample(a,b)");
        let r = run(&cfg("numerical:2,3", &[Analysis::Independence])).unwrap();
        assert_eq!(r.get(Analysis::Independence).unwrap().verdict, "witness");
        let r = run(&cfg("free_abelian:1", &[Analysis::Boundary])).unwrap();
        assert_eq!(r.get(Analysis::Boundary).unwrap().verdict, "singleton");
        assert_eq!(r.status, Status::Definite);
    }

    #[test]
    fn explain_topics() {
        let r = run(&cfg("numerical:2,3", &[Analysis::Independence, Analysis::Ore])).unwrap();
        let text = explain(&r, "independence").unwrap();
        assert!(text.contains(" ∪ "), "{text}");
        assert!(explain(&r, "ore").unwrap().contains("verified for"));
        assert!(matches!(explain(&r, "sc"), Err(ReportError::UnknownTopic(_))));
        assert!(matches!(explain(&r, "nonsense"), Err(ReportError::UnknownTopic(_))));
    }

    #[test]
    fn model_shorthands() {
        assert_eq!(parse_model_arg("numerical:2,3").unwrap(), ModelSpec::Numerical { generators: vec![2, 3] });
        assert_eq!(
            parse_model_arg(r#"{"family":"free_monoid","rank":2}"#).unwrap(),
            ModelSpec::FreeMonoid { rank: 2 }
        );
        assert!(parse_model_arg("torus:3").is_err());
    }
}
