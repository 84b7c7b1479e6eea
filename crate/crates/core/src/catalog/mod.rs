//! Classification data: group specs, Hopf presentations per (family,
//! prime), reduction rules, lemma-backed facts and the per-family closed forms.

mod builders;
mod format;
mod spec;

pub use builders::{baum_browder, binomial_mod, rational, so_mod2, CatalogPresentation};
pub use format::{
    expand_template, parse_document, Bindings, Case, CatalogDocument, Condition, Op, PresentationDef, Rule, Strategy,
    Var, CATALOG_FORMAT_VERSION,
};
pub use spec::{closed_form_l0, ord_mod, Family, GroupSpec, SimplyConnectedExceptional, SpecError, MAX_PARAMETER};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraPresentation, DEFAULT_MAX_DEGREE};
use crate::engine::{
    apply_covering_multiplier, assemble_l0, classify_obstruction, Classification, CommutatorPipeline, EngineError,
    ObstructionReport, PrimeLocalResult, Provenance, TraceStep, REPORT_SCHEMA_VERSION,
};
use crate::hopf::{verify_hopf_axioms, BocksteinData, HopfDiagnostics, HopfError, HopfPresentation};

/// The catalog shipped with the crate.
pub const EMBEDDED_CATALOG: &str = include_str!("../../catalog/default.catalog");

/// Environment variable naming a catalog file that replaces the embedded one.
pub const CATALOG_ENV: &str = "OBSTRUCTOR_CATALOG";

const FAMILY_KEYS: [&str; 8] = ["simply-connected", "SU", "PSp", "SO", "PSO", "Ss", "PE6", "PE7"];
const BUILTINS: [&str; 3] = ["baum-browder", "so-mod2", "rational"];
const MAX_REDUCTION_DEPTH: usize = 4;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("invalid group spec {0}")]
    Spec(SpecError),
    #[error("unsupported family '{0}' (expected SU, PSp, SO, PSO, Ss or exceptional)")]
    UnsupportedFamily(String),
    #[error("catalog line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("catalog: {0}")]
    Invalid(String),
    #[error("unknown presentation '{0}'")]
    UnknownPresentation(String),
    #[error("presentation {name}: {source}")]
    Presentation { name: String, source: HopfError },
    #[error("{0}")]
    Builder(String),
    #[error("no catalog rule for family {0}")]
    NoRule(String),
    #[error("no case of rule {family} applies to {spec} at p = {prime}")]
    NoCase { family: String, spec: String, prime: u64 },
    #[error("{spec} at p = {prime}: {reason}")]
    StrategyFailed { spec: String, prime: u64, reason: String },
    #[error("catalog bug: engine gives l0 = {engine} for {spec} but the closed form is {closed_form}")]
    ClosedFormMismatch { spec: String, engine: u64, closed_form: u64 },
    #[error("reductions nest too deeply at {0}")]
    Recursion(String),
    #[error("cannot read catalog {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<SpecError> for CatalogError {
    fn from(e: SpecError) -> Self {
        CatalogError::Spec(e)
    }
}

/// A presentation ready for the engine.
#[derive(Debug)]
pub struct Model {
    pub presentation: CatalogPresentation,
    pub pipeline: CommutatorPipeline,
}

impl Model {
    fn new(presentation: CatalogPresentation) -> Result<Self, CatalogError> {
        let pipeline = CommutatorPipeline::new(&presentation.hopf)?;
        Ok(Model { presentation, pipeline })
    }

    pub fn name(&self) -> &str {
        self.presentation.hopf.name()
    }

    pub fn hopf(&self) -> &HopfPresentation {
        &self.presentation.hopf
    }

    fn render(&self, e: &crate::algebra::Element) -> String {
        self.hopf().algebra().render(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum ModelKey {
    BaumBrowder { p: u64, r: u32, n: u64 },
    SoMod2 { n: u64 },
    Rational,
    Explicit(String),
}

/// The strategy chosen for each prime dividing `|Γ|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub spec: GroupSpec,
    pub family: String,
    pub strategies: Vec<(u64, Bindings, Case)>,
}

/// Answer to "is the moduli space pre-quantizable at this level?".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub schema_version: u32,
    pub group: String,
    pub level: u64,
    pub genus: u64,
    pub l0: u64,
    pub prequantizable: bool,
    pub smallest_admissible_level: u64,
    pub explanation: String,
}

/// Parsed catalog plus memoised presentations and reports. Immutable in
/// meaning; the caches only avoid recomputation.
#[derive(Debug)]
pub struct Catalog {
    document: CatalogDocument,
    max_degree: Option<u32>,
    models: Mutex<HashMap<ModelKey, Arc<Model>>>,
    reports: Mutex<HashMap<GroupSpec, ObstructionReport>>,
}

fn valuation(mut m: u64, p: u64) -> u32 {
    let mut v = 0;
    while m > 0 && m.is_multiple_of(p) {
        m /= p;
        v += 1;
    }
    v
}

impl Catalog {
    /// Parses and checks a catalog. Explicit presentations are built and
    /// their Hopf axioms verified here.
    pub fn from_text(text: &str, max_degree: Option<u32>) -> Result<Catalog, CatalogError> {
        let document = parse_document(text)?;
        let catalog = Catalog { document, max_degree, models: Mutex::default(), reports: Mutex::default() };
        catalog.check_references()?;
        for name in catalog.document.presentations.keys() {
            catalog.model(&ModelKey::Explicit(name.clone()))?;
        }
        Ok(catalog)
    }

    pub fn embedded(max_degree: Option<u32>) -> Result<Catalog, CatalogError> {
        Self::from_text(EMBEDDED_CATALOG, max_degree)
    }

    /// The file named by `OBSTRUCTOR_CATALOG` if set, else the embedded one.
    pub fn from_env(max_degree: Option<u32>) -> Result<Catalog, CatalogError> {
        match std::env::var_os(CATALOG_ENV) {
            Some(path) => {
                let text = std::fs::read_to_string(&path).map_err(|e| CatalogError::Io {
                    path: path.to_string_lossy().into_owned(),
                    message: e.to_string(),
                })?;
                Self::from_text(&text, max_degree)
            }
            None => Self::embedded(max_degree),
        }
    }

    pub fn document(&self) -> &CatalogDocument {
        &self.document
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree.unwrap_or(DEFAULT_MAX_DEGREE)
    }

    fn check_references(&self) -> Result<(), CatalogError> {
        let doc = &self.document;
        for name in doc.presentations.keys() {
            if BUILTINS.contains(&name.as_str()) {
                return Err(CatalogError::Invalid(format!("presentation name '{name}' is reserved")));
            }
        }
        for key in FAMILY_KEYS {
            if !doc.rules.contains_key(key) {
                return Err(CatalogError::Invalid(format!("missing rule for {key}")));
            }
        }
        for rule in doc.rules.values() {
            if !FAMILY_KEYS.contains(&rule.family.as_str()) {
                return Err(CatalogError::Format {
                    line: rule.line,
                    message: format!("unknown family {}", rule.family),
                });
            }
            for case in &rule.cases {
                let names: Vec<&String> = match &case.strategy {
                    Strategy::Presentation { name, .. } | Strategy::Primitive { name } => vec![name],
                    Strategy::Lemma { reference: Some(name), .. } => vec![name],
                    _ => vec![],
                };
                for name in names {
                    if !doc.presentations.contains_key(name) && !BUILTINS.contains(&name.as_str()) {
                        return Err(CatalogError::Format {
                            line: case.line,
                            message: format!("unknown presentation '{name}'"),
                        });
                    }
                }
                if let Strategy::Reduce { template } | Strategy::SameAs { template } = &case.strategy {
                    if let Err(e) = GroupSpec::parse(&expand_template(template, 4)) {
                        return Err(CatalogError::Format {
                            line: case.line,
                            message: format!("'{template}' is not a group template: {e}"),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn build_explicit(&self, def: &PresentationDef) -> Result<CatalogPresentation, CatalogError> {
        let wrap = |e: HopfError| CatalogError::Presentation { name: def.name.clone(), source: e };
        let degree = self.max_degree.or(def.max_degree).unwrap_or(DEFAULT_MAX_DEGREE);
        let alg =
            AlgebraPresentation::new(def.ring.clone(), def.generators.clone(), degree).map_err(|e| wrap(e.into()))?;
        let square = alg.tensor_power(2);
        let index =
            |g: &str| alg.index_of(g).ok_or_else(|| wrap(HopfError::Structure(format!("unknown generator '{g}'"))));
        let mut reduced = vec![square.zero(); alg.generators().len()];
        for (g, text) in &def.coproducts {
            reduced[index(g)?] = square.parse_element(text).map_err(|e| wrap(e.into()))?;
        }
        let bockstein = match def.bockstein_order {
            Some(order) => {
                let mut images = vec![None; alg.generators().len()];
                for (g, text) in &def.bockstein {
                    images[index(g)?] = Some(alg.parse_element(text).map_err(|e| wrap(e.into()))?);
                }
                Some(BocksteinData { order, images })
            }
            None => None,
        };
        let obstruction = alg.parse_element(&def.obstruction).map_err(|e| wrap(e.into()))?;
        let hopf = HopfPresentation::from_reduced(def.name.clone(), alg, reduced, bockstein)
            .and_then(HopfPresentation::validated)
            .map_err(wrap)?;
        Ok(CatalogPresentation { hopf, obstruction, extrapolated: def.extrapolated, citation: def.citation.clone() })
    }

    fn model(&self, key: &ModelKey) -> Result<Arc<Model>, CatalogError> {
        if let Some(m) = self.models.lock().expect("model cache poisoned").get(key) {
            return Ok(m.clone());
        }
        let degree = self.max_degree();
        let presentation = match key {
            ModelKey::BaumBrowder { p, r, n } => baum_browder(*p, *r, *n, degree)?,
            ModelKey::SoMod2 { n } => so_mod2(*n, degree)?,
            ModelKey::Rational => rational(degree)?,
            ModelKey::Explicit(name) => {
                let def = self
                    .document
                    .presentations
                    .get(name)
                    .ok_or_else(|| CatalogError::UnknownPresentation(name.clone()))?;
                self.build_explicit(def)?
            }
        };
        let model = Arc::new(Model::new(presentation)?);
        self.models.lock().expect("model cache poisoned").insert(key.clone(), model.clone());
        Ok(model)
    }

    fn model_named(&self, name: &str, b: &Bindings) -> Result<Arc<Model>, CatalogError> {
        let key = match name {
            "baum-browder" => ModelKey::BaumBrowder { p: b.p, r: b.r, n: b.n },
            "so-mod2" => ModelKey::SoMod2 { n: b.n },
            "rational" => ModelKey::Rational,
            other => ModelKey::Explicit(other.to_string()),
        };
        self.model(&key)
    }

    fn bindings(spec: &GroupSpec, p: u64) -> Bindings {
        match *spec {
            GroupSpec::Su { n, l } => Bindings { n, l, p, r: valuation(n, p), s: valuation(l, p) },
            _ => {
                let v = valuation(spec.exponent(), p);
                Bindings { n: spec.parameter(), l: spec.subgroup_order(), p, r: v, s: v }
            }
        }
    }

    fn rule(&self, spec: &GroupSpec) -> Result<&Rule, CatalogError> {
        let key = spec.family_key();
        self.document.rules.get(key).ok_or_else(|| CatalogError::NoRule(key.to_string()))
    }

    /// The strategy for every prime dividing `|Γ|`.
    pub fn lookup(&self, spec: &GroupSpec) -> Result<CatalogEntry, CatalogError> {
        let rule = self.rule(spec)?;
        let mut strategies = Vec::new();
        let primes = spec.primes();
        if primes.is_empty() {
            let b = Bindings { n: spec.parameter(), l: 1, p: 1, r: 0, s: 0 };
            let case = rule.cases.iter().find(|c| c.matches(&b)).ok_or_else(|| CatalogError::NoCase {
                family: rule.family.clone(),
                spec: spec.to_string(),
                prime: 1,
            })?;
            strategies.push((1, b, case.clone()));
        }
        for p in primes {
            let b = Self::bindings(spec, p);
            let case = rule.cases.iter().find(|c| c.matches(&b)).ok_or_else(|| CatalogError::NoCase {
                family: rule.family.clone(),
                spec: spec.to_string(),
                prime: p,
            })?;
            strategies.push((p, b, case.clone()));
        }
        Ok(CatalogEntry { spec: *spec, family: rule.family.clone(), strategies })
    }

    /// Runs the engine on the obstruction class of `model`, appending the
    /// stage-by-stage trace.
    fn pull_back(&self, model: &Model, trace: &mut Vec<TraceStep>) -> Result<crate::algebra::Element, CatalogError> {
        let (w, steps) = model.pipeline.apply_traced(&model.presentation.obstruction)?;
        trace.extend(steps);
        Ok(w)
    }

    /// `l0` with its per-prime derivation. The result must agree with
    /// [`closed_form_l0`]; disagreement is reported, never corrected.
    pub fn derive(&self, spec: &GroupSpec) -> Result<ObstructionReport, CatalogError> {
        self.derive_at_depth(spec, 0)
    }

    fn derive_at_depth(&self, spec: &GroupSpec, depth: usize) -> Result<ObstructionReport, CatalogError> {
        if let Some(r) = self.reports.lock().expect("report cache poisoned").get(spec) {
            return Ok(r.clone());
        }
        if depth > MAX_REDUCTION_DEPTH {
            return Err(CatalogError::Recursion(spec.to_string()));
        }
        let entry = self.lookup(spec)?;
        let mut trace = vec![TraceStep::note(
            "group",
            format!("{spec}, π₁ = {}", spec.fundamental_group_name()),
            "G = G̃/Γ with Γ = π₁(G) central",
        )];
        let mut per_prime = Vec::new();
        let mut lemma_backed = false;

        for (p, b, case) in &entry.strategies {
            if let Strategy::SimplyConnected = case.strategy {
                if *p != 1 {
                    return Err(self.failed(spec, *p, "simply-connected strategy on a group with centre"));
                }
                trace.push(TraceStep::note("simply connected", "no prime divides |Γ|; l₀ = 1", case.citation.clone()));
                continue;
            }
            trace.push(TraceStep::note(
                format!("p = {p}"),
                format!("{} (n = {}, l = {}, r = {}, s = {})", case.strategy, b.n, b.l, b.r, b.s),
                case.citation.clone(),
            ));
            let (mut res, lemma) = self.run_case(spec, b, case, &mut trace, depth)?;
            lemma_backed |= lemma;
            res.strategy = case.strategy.to_string();
            if res.citation.is_empty() {
                res.citation = case.citation.clone();
            }
            per_prime.push(res);
        }

        let l0 = assemble_l0(&per_prime)?;
        let closed = closed_form_l0(spec);
        if !spec.is_simply_connected() {
            let rational = self.model(&ModelKey::Rational)?;
            let w = rational.pipeline.apply(&rational.presentation.obstruction)?;
            if !w.is_zero() {
                return Err(self.failed(spec, 0, "rational pullback of x₃ is non-zero"));
            }
            trace.push(TraceStep::new(
                "rational φ*",
                "x₃",
                "0",
                "x₃ is primitive rationally, so the obstruction is a torsion class",
            ));
        }
        let factors: Vec<String> = per_prime.iter().map(|r| r.local_order.to_string()).collect();
        trace.push(TraceStep::note(
            "l₀",
            if factors.len() < 2 { l0.to_string() } else { format!("{} = {l0}", factors.join(" · ")) },
            "product of the local orders over primes dividing |Γ|",
        ));
        if l0 != closed {
            return Err(CatalogError::ClosedFormMismatch { spec: spec.to_string(), engine: l0, closed_form: closed });
        }
        if !spec.exponent().is_multiple_of(l0) {
            return Err(self.failed(spec, 0, &format!("l0 = {l0} does not divide the exponent of π₁")));
        }
        trace.push(TraceStep::note("closed form", closed.to_string(), "per-family formula"));
        let report = ObstructionReport {
            schema_version: REPORT_SCHEMA_VERSION,
            group: spec.to_string(),
            fundamental_group: spec.fundamental_group_name(),
            l0,
            closed_form_l0: closed,
            primes: per_prime,
            provenance: if lemma_backed { Provenance::PartiallyLemmaBacked } else { Provenance::FullyEngineDerived },
            trace,
        };
        self.reports.lock().expect("report cache poisoned").insert(*spec, report.clone());
        Ok(report)
    }

    fn failed(&self, spec: &GroupSpec, prime: u64, reason: &str) -> CatalogError {
        CatalogError::StrategyFailed { spec: spec.to_string(), prime, reason: reason.to_string() }
    }

    fn run_engine(
        &self,
        model: &Model,
        r: Option<u32>,
        s: Option<u32>,
        trace: &mut Vec<TraceStep>,
    ) -> Result<PrimeLocalResult, CatalogError> {
        let w = self.pull_back(model, trace)?;
        let res = classify_obstruction(model.hopf(), &w)?;
        let square = model.hopf().square().flattened();
        let verdict = match &res.classification {
            Classification::BocksteinImage { witness, coefficient, order } => {
                let c = match coefficient {
                    1 => String::new(),
                    -1 => "−".to_string(),
                    c => format!("{c}·"),
                };
                format!("{c}β^({order})({witness}), order {}", res.local_order)
            }
            _ => "0, order 1".to_string(),
        };
        trace.push(TraceStep::new(
            "classify",
            square.render(&w),
            verdict,
            "a unit multiple of β^(r)(v) reduces a generator of a Z/p^r torsion summand",
        ));
        let order = model.hopf().bockstein_order().unwrap_or(1);
        let (r, s) = (r.unwrap_or(order), s.unwrap_or(order));
        let mut out = apply_covering_multiplier(&res, r, s)?;
        if r != s {
            trace.push(TraceStep::new(
                "covering f*",
                format!("r = {r}, s = {s}"),
                format!("x₁ ↦ {}·x₁, local order {}", out.covering_multiplier, out.local_order),
                "the covering onto the adjoint group multiplies x₁ by p^(r−s) and is an isomorphism in degree 2",
            ));
        }
        out.presentation = Some(model.name().to_string());
        out.extrapolated = model.presentation.extrapolated;
        Ok(out)
    }

    /// Returns the local result and whether it rests on a lemma.
    fn run_case(
        &self,
        spec: &GroupSpec,
        b: &Bindings,
        case: &Case,
        trace: &mut Vec<TraceStep>,
        depth: usize,
    ) -> Result<(PrimeLocalResult, bool), CatalogError> {
        let p = b.p;
        match &case.strategy {
            Strategy::SimplyConnected => unreachable!("handled by the caller"),
            Strategy::BaumBrowder => {
                if !matches!(spec, GroupSpec::Su { .. }) {
                    return Err(self.failed(spec, p, "baum-browder applies to the SU family only"));
                }
                let model = self.model_named("baum-browder", b)?;
                Ok((self.run_engine(&model, Some(b.r), Some(b.s), trace)?, false))
            }
            Strategy::Presentation { name, r, s } => {
                let model = self.model_named(name, b)?;
                Ok((self.run_engine(&model, *r, *s, trace)?, false))
            }
            Strategy::Primitive { name } => {
                let model = self.model_named(name, b)?;
                let h = model.hopf();
                let x = &model.presentation.obstruction;
                let sq = h.square();
                let primitive = sq.left(x).add(&sq.right(x))?;
                if h.coproduct(x)? != primitive {
                    return Err(self.failed(
                        spec,
                        p,
                        &format!("{} is not primitive in {}", model.render(x), model.name()),
                    ));
                }
                trace.push(TraceStep::new(
                    "μ*",
                    model.render(x),
                    sq.flattened().render(&primitive),
                    "primitive: the commutator pullback vanishes",
                ));
                let res = self.run_engine(&model, None, None, trace)?;
                if res.local_order != 1 {
                    return Err(self.failed(spec, p, "primitive class with non-zero pullback"));
                }
                Ok((res, false))
            }
            Strategy::Reduce { template } => {
                let target = GroupSpec::parse(&expand_template(template, b.n))?;
                let sub = self.derive_at_depth(&target, depth + 1)?;
                let local = sub
                    .primes
                    .iter()
                    .find(|r| r.prime == p)
                    .ok_or_else(|| self.failed(spec, p, &format!("{target} has no data at p = {p}")))?;
                if local.local_order != 1 {
                    return Err(self.failed(
                        spec,
                        p,
                        &format!(
                            "reduction needs a vanishing pullback but {target} has local order {}",
                            local.local_order
                        ),
                    ));
                }
                trace.push(TraceStep::new(
                    "pull back",
                    format!("{target} at p = {p}"),
                    "local order 1, so the obstruction of this group vanishes at p",
                    case.citation.clone(),
                ));
                let mut res = PrimeLocalResult::new(p, Classification::PulledBack { from: target.to_string() }, 1);
                res.r = b.r;
                res.s = b.s;
                Ok((res, local.is_lemma_backed()))
            }
            Strategy::SameAs { template } => {
                let target = GroupSpec::parse(&expand_template(template, b.n))?;
                let sub = self.derive_at_depth(&target, depth + 1)?;
                let local = sub
                    .primes
                    .iter()
                    .find(|r| r.prime == p)
                    .ok_or_else(|| self.failed(spec, p, &format!("{target} has no data at p = {p}")))?;
                trace.push(TraceStep::new(
                    "isomorphism",
                    format!("{spec} ≅ {target}"),
                    format!("local order {} at p = {p} ({})", local.local_order, local.strategy),
                    case.citation.clone(),
                ));
                let lemma = local.is_lemma_backed();
                let mut res = local.clone();
                res.citation = String::new();
                Ok((res, lemma))
            }
            Strategy::Lemma { order, reference } => {
                let mut m = *order;
                while m > 1 && m % p == 0 {
                    m /= p;
                }
                if m != 1 || *order == 0 {
                    return Err(self.failed(spec, p, &format!("lemma order {order} is not a power of {p}")));
                }
                if let Some(name) = reference {
                    let model = self.model_named(name, b)?;
                    let w = self.pull_back(&model, trace)?;
                    let detail = if w.is_zero() {
                        "the mod-p pullback vanishes, so the class is not detected by this computation"
                    } else {
                        "mod-p pullback is non-zero"
                    };
                    trace.push(TraceStep::note("reference", detail, model.presentation.citation.clone()));
                }
                trace.push(TraceStep::note("lemma", format!("local order {order}"), case.citation.clone()));
                let mut res =
                    PrimeLocalResult::new(p, Classification::LemmaBacked { citation: case.citation.clone() }, *order);
                res.r = b.r;
                res.s = b.s;
                res.presentation = reference.clone();
                Ok((res, true))
            }
        }
    }

    /// Pre-quantizable iff `l0 | level`. The genus is
    /// echoed back but never reaches the engine.
    pub fn prequantizable(&self, spec: &GroupSpec, level: u64, genus: u64) -> Result<Verdict, CatalogError> {
        if level == 0 {
            return Err(CatalogError::Invalid("the level must be positive".into()));
        }
        if genus == 0 {
            return Err(CatalogError::Invalid("the genus must be positive".into()));
        }
        let l0 = self.derive(spec)?.l0;
        let ok = level.is_multiple_of(l0);
        let explanation = if ok {
            format!("l₀ = {l0} divides {level}; the answer does not depend on the genus (g = {genus})")
        } else {
            format!(
                "l₀ = {l0} does not divide {level}; the smallest admissible level is {l0}, the answer does not depend on the genus (g = {genus})"
            )
        };
        Ok(Verdict {
            schema_version: REPORT_SCHEMA_VERSION,
            group: spec.to_string(),
            level,
            genus,
            l0,
            prequantizable: ok,
            smallest_admissible_level: l0,
            explanation,
        })
    }

    /// Hopf-axiom diagnostics for every explicit presentation and for the
    /// builtin models the given specs resolve to.
    pub fn verify(&self, specs: &[GroupSpec]) -> Result<Vec<HopfDiagnostics>, CatalogError> {
        Ok(self.models(specs)?.iter().map(|m| verify_hopf_axioms(m.hopf())).collect())
    }

    /// Every explicit presentation, the rational model and the builtin
    /// models the given specs resolve to, sorted by name.
    pub fn models(&self, specs: &[GroupSpec]) -> Result<Vec<Arc<Model>>, CatalogError> {
        let mut keys: BTreeSet<String> = BTreeSet::new();
        let mut models: BTreeMap<String, Arc<Model>> = BTreeMap::new();
        for name in self.document.presentations.keys() {
            let m = self.model(&ModelKey::Explicit(name.clone()))?;
            models.insert(m.name().to_string(), m);
        }
        models.insert("rational".into(), self.model(&ModelKey::Rational)?);
        for spec in specs {
            for (_, b, case) in self.lookup(spec)?.strategies {
                let name = match &case.strategy {
                    Strategy::BaumBrowder => "baum-browder".to_string(),
                    Strategy::Presentation { name, .. } | Strategy::Primitive { name } => name.clone(),
                    Strategy::Lemma { reference: Some(name), .. } => name.clone(),
                    _ => continue,
                };
                let m = self.model_named(&name, &b)?;
                if keys.insert(m.name().to_string()) {
                    models.insert(m.name().to_string(), m);
                }
            }
        }
        Ok(models.into_values().collect())
    }
}

/// The catalog selected by the environment at default degree, built once.
pub fn default_catalog() -> Result<&'static Catalog, CatalogError> {
    static CATALOG: OnceLock<Result<Catalog, CatalogError>> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog::from_env(None)).as_ref().map_err(Clone::clone)
}

pub fn lookup(spec: &GroupSpec) -> Result<CatalogEntry, CatalogError> {
    default_catalog()?.lookup(spec)
}

pub fn derive_l0(spec: &GroupSpec) -> Result<ObstructionReport, CatalogError> {
    default_catalog()?.derive(spec)
}

pub fn prequantizable(spec: &GroupSpec, level: u64, genus: u64) -> Result<Verdict, CatalogError> {
    default_catalog()?.prequantizable(spec, level, genus)
}

/// Every spec covered by the reproduction sweep, in table order.
pub fn sweep_specs() -> Vec<GroupSpec> {
    [
        (Family::Su, 24),
        (Family::PSp, 12),
        (Family::So, 16),
        (Family::Pso, 24),
        (Family::Ss, 32),
        (Family::Exceptional, 0),
    ]
    .into_iter()
    .flat_map(|(f, max)| f.sweep(max))
    .collect()
}
