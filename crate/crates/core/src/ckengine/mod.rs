//! Verification pipeline for constant-length Killing fields.
//!
//! A Cartan vector `v` of a pair `(g, h)` is tested in three tiers:
//!
//! 1. exact: `‖pr_h ρv‖²` over the Weyl orbit of `v`;
//! 2. first order: `⟨pr_m x, pr_m [w, x]⟩` at sampled orbit points;
//! 3. sampled: `f(g) = ‖pr_m(Ad(g)v)‖²` at random group elements.
//!
//! A CONSTANT verdict is numerical evidence, not a proof. NONCONSTANT
//! verdicts always carry a witness pair of group elements.

mod lemmas;
mod prop32;
mod report;
mod sampling;
mod tier1;
mod witness;

pub use lemmas::{lemma31_rectangle, lemma33_ratios, orthogonal_basis, Lemma33};
pub use prop32::{
    exceptional_exclusion, prop32_oracle, reference_list, ExclusionCase, Prop32Result, MAX_DENOMINATOR, MAX_RANK,
};
pub use report::{
    save_report, write_reports, RatioReport, Summary, Tier1Report, Tier2Report, Tier3Report, Verdict, VerdictReport,
    ViolationReport, WitnessReport, F64,
};
pub use sampling::{sample_orbit, OrbitProbe, PointEval, Tier2Result, Tier3Result};
pub use tier1::{tier1_weyl_constancy, Tier1Result, Violation};
pub use witness::{witness_search, Witness};

use nalgebra::DMatrix;
use thiserror::Error;

use crate::exact::{fmt_rational, QVec, Rational};
use crate::homcat::{Candidate, Catalog, HomogeneousPair, PairError};
use crate::matmodel::{MatElem, ModelError};
use crate::rootsys::{Generator, RootError, DEFAULT_ORBIT_CAP};

use report::{matrix_rows, quad_string, qvec_strings};

pub const DEFAULT_SEED: u64 = 20141005;
pub const DEFAULT_SAMPLES: usize = 2000;
pub const DEFAULT_STEPS: usize = 3;
pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_GAP: f64 = 1e-4;
/// Fewer samples than this never yield CONSTANT.
pub const MIN_CONSTANT_SAMPLES: usize = 100;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("bounds exceeded: {0}")]
    Bounds(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

/// Sampling and decision parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub samples: usize,
    pub steps: usize,
    /// Relative tolerance for tiers 2 and 3.
    pub tol: f64,
    pub seed: u64,
    /// Relative gap `(f2 - f1)/‖v‖²` a witness must exceed.
    pub gap: f64,
    /// Evaluations of `f` per witness refinement.
    pub witness_budget: usize,
    /// Orbit points that also get the first-order residual.
    pub tier2_points: usize,
    pub orbit_cap: usize,
    /// Worker threads; `None` reads `CK_THREADS`, falling back to rayon's
    /// default.
    pub threads: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            samples: DEFAULT_SAMPLES,
            steps: DEFAULT_STEPS,
            tol: DEFAULT_TOL,
            seed: DEFAULT_SEED,
            gap: DEFAULT_GAP,
            witness_budget: 6000,
            tier2_points: 200,
            orbit_cap: DEFAULT_ORBIT_CAP,
            threads: None,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<(), EngineError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(EngineError::Config(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.samples < 2 {
            return Err(EngineError::Config(format!("need at least 2 samples, got {}", self.samples)));
        }
        if self.steps == 0 || self.witness_budget == 0 {
            return Err(EngineError::Config("steps and witness budget must be positive".into()));
        }
        Ok(())
    }

    fn thread_count(&self) -> usize {
        self.threads.or_else(|| std::env::var("CK_THREADS").ok().and_then(|s| s.trim().parse().ok())).unwrap_or(0)
    }

    fn pool(&self) -> Result<rayon::ThreadPool, EngineError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.thread_count())
            .build()
            .map_err(|e| EngineError::Config(e.to_string()))
    }
}

/// A candidate realized in a model: exact coordinates, matrix and norm.
#[derive(Clone, Debug)]
pub struct RealizedCandidate {
    pub coords: QVec,
    pub matrix: MatElem,
    pub norm2: Rational,
}

impl RealizedCandidate {
    pub fn new(pair: &HomogeneousPair, c: &Candidate) -> Result<Self, EngineError> {
        pair.validate_candidate(c)?;
        let matrix = pair.model().cartan_element(&c.to_f64())?;
        Ok(RealizedCandidate { coords: c.to_qvec(), matrix, norm2: c.norm2() })
    }
}

/// Everything computed for one candidate.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub tier1: Tier1Result,
    pub tier2: Tier2Result,
    pub tier3: Tier3Result,
    pub witness: Option<Witness>,
    pub lemma33: Lemma33,
    pub symmetric: bool,
    pub verdict: Verdict,
    pub report: VerdictReport,
}

/// The group element `r_k ⋯ r_1` realizing a Weyl word `[1, …, k]`.
pub fn realize_word(pair: &HomogeneousPair, gens: &[Generator], word: &[usize]) -> Result<DMatrix<f64>, EngineError> {
    let model = pair.model();
    let mut g = model.identity().mat;
    for &k in word {
        match &gens[k] {
            Generator::Reflection(a) => g = model.reflection_element(a)?.mat * g,
            Generator::FlipLast => {
                return Err(EngineError::Unsupported("outer automorphisms have no group element".into()))
            }
        }
    }
    Ok(g)
}

/// Runs all tiers on one candidate, using the configured thread pool.
pub fn evaluate(pair: &HomogeneousPair, c: &Candidate, cfg: &Config) -> Result<Evaluation, EngineError> {
    cfg.validate()?;
    cfg.pool()?.install(|| evaluate_in_pool(pair, c, cfg))
}

fn evaluate_in_pool(pair: &HomogeneousPair, c: &Candidate, cfg: &Config) -> Result<Evaluation, EngineError> {
    let rc = RealizedCandidate::new(pair, c)?;
    let rs = pair.model().root_system();
    let gens = rs.weyl_generators(false);
    let t1 = tier1_weyl_constancy(pair.split(), &gens, &rc.coords, cfg.orbit_cap);
    let probe = OrbitProbe::new(pair, rc.matrix.mat.clone());
    let (t2, t3) = sample_orbit(&probe, cfg.samples, cfg.tier2_points, cfg.steps, cfg.seed);
    let lemma33 = lemma33_ratios(rs, pair.split(), &rc.coords, pair.dim_h(), pair.dim_g());
    let symmetric = pair.symmetric_check();
    let rel_spread = t3.spread() / probe.v_norm2;

    let mut note = None;
    let mut witness = None;
    let mut source = "search";
    let verdict = if t1.truncated {
        note = Some(format!("Weyl orbit truncated at {} points", t1.orbit_size));
        Verdict::Inconclusive
    } else if let Some(bad) = &t1.violation {
        source = "weyl";
        let starts = [realize_word(pair, &gens, &bad.first_word)?, realize_word(pair, &gens, &bad.second_word)?];
        witness = witness_search(&probe, cfg.witness_budget, cfg.seed, cfg.steps, &starts, 0.0);
        match &witness {
            Some(w) if w.gap() > cfg.gap * probe.v_norm2 => Verdict::Nonconstant,
            _ => {
                note = Some("exact Weyl violation could not be realized numerically".into());
                Verdict::Inconclusive
            }
        }
    } else if rel_spread < cfg.tol && t2.max_residual < cfg.tol {
        if cfg.samples >= MIN_CONSTANT_SAMPLES {
            Verdict::Constant
        } else {
            note =
                Some(format!("{} samples are too few to claim constancy (need {MIN_CONSTANT_SAMPLES})", cfg.samples));
            Verdict::Inconclusive
        }
    } else {
        let starts = [
            sampling::sample_element(pair, cfg.seed, t3.argmin, cfg.steps),
            sampling::sample_element(pair, cfg.seed, t3.argmax, cfg.steps),
        ];
        witness = witness_search(&probe, cfg.witness_budget, cfg.seed, cfg.steps, &starts, 0.0);
        match &witness {
            Some(w) if w.gap() > cfg.gap * probe.v_norm2 => Verdict::Nonconstant,
            _ => {
                note = Some("orbit spread above tolerance but no witness above the gap threshold".into());
                Verdict::Inconclusive
            }
        }
    };
    if verdict != Verdict::Nonconstant {
        witness = None;
    }

    let report = VerdictReport {
        pair: pair.name().to_string(),
        candidate: c.coords.iter().map(fmt_rational).collect(),
        norm2: fmt_rational(&rc.norm2),
        verdict,
        tier1: Some(Tier1Report {
            pass: t1.pass,
            truncated: t1.truncated,
            orbit_size: t1.orbit_size,
            h_norm2: quad_string(&t1.h_norm2),
            m_norm2: quad_string(&t1.m_norm2),
            violating_pair: t1.violation.as_ref().map(|v| ViolationReport {
                first: qvec_strings(&v.first),
                second: qvec_strings(&v.second),
                first_h_norm2: quad_string(&v.first_h_norm2),
                second_h_norm2: quad_string(&v.second_h_norm2),
            }),
        }),
        tier2: Some(Tier2Report { points: t2.points, max_residual: F64(t2.max_residual) }),
        tier3: Some(Tier3Report {
            samples: t3.samples,
            steps: t3.steps,
            seed: t3.seed,
            min_f: F64(t3.min_f),
            max_f: F64(t3.max_f),
            spread: F64(rel_spread),
            max_norm_defect: F64(t3.max_norm_defect),
            max_pythagoras_defect: F64(t3.max_pythagoras_defect),
        }),
        witness: witness.as_ref().map(|w| WitnessReport {
            source: source.to_string(),
            f1: F64(w.f1),
            f2: F64(w.f2),
            gap: F64(w.gap()),
            g1: matrix_rows(&w.g1),
            g2: matrix_rows(&w.g2),
        }),
        ratios: Some(RatioReport {
            h_ratio: quad_string(&lemma33.h_ratio),
            cartan_ratio: fmt_rational(&lemma33.cartan_ratio),
            algebra_ratio: fmt_rational(&lemma33.algebra_ratio),
            weyl_constant: lemma33.weyl_constant,
            weyl_orthogonal_basis: lemma33.weyl_basis.is_some(),
            ad_orthogonal_basis: lemma33.ad_basis,
            cartan_identity: lemma33.cartan_identity,
            algebra_identity: lemma33.algebra_identity,
        }),
        symmetric: Some(symmetric),
        note,
    };
    Ok(Evaluation { tier1: t1, tier2: t2, tier3: t3, witness, lemma33, symmetric, verdict, report })
}

/// Verifies one candidate and returns its report.
pub fn verify(pair: &HomogeneousPair, c: &Candidate, cfg: &Config) -> Result<VerdictReport, EngineError> {
    evaluate(pair, c, cfg).map(|e| e.report)
}

fn failed_report(pair: &str, c: &Candidate, err: &dyn std::fmt::Display) -> VerdictReport {
    VerdictReport {
        pair: pair.to_string(),
        candidate: c.coords.iter().map(fmt_rational).collect(),
        norm2: fmt_rational(&c.norm2()),
        verdict: Verdict::Inconclusive,
        tier1: None,
        tier2: None,
        tier3: None,
        witness: None,
        ratios: None,
        symmetric: None,
        note: Some(format!("error: {err}")),
    }
}

/// Reports for every pair and candidate of a catalog plus a summary.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub reports: Vec<VerdictReport>,
    pub summary: Summary,
}

/// Verifies every catalog candidate. Failures of individual pairs or
/// candidates become INCONCLUSIVE reports; the batch always completes.
pub fn classify(catalog: &Catalog, cfg: &Config) -> Result<Classification, EngineError> {
    cfg.validate()?;
    let pool = cfg.pool()?;
    let mut reports = Vec::new();
    let mut positive = Vec::new();
    for entry in &catalog.entries {
        match entry.build() {
            Err(e) => {
                reports.extend(entry.candidates.iter().map(|c| failed_report(&entry.name, c, &e)));
            }
            Ok(pair) => {
                let mut any = false;
                for c in &entry.candidates {
                    let r = pool
                        .install(|| evaluate_in_pool(&pair, c, cfg))
                        .map(|e| e.report)
                        .unwrap_or_else(|e| failed_report(&entry.name, c, &e));
                    any |= r.verdict == Verdict::Constant;
                    reports.push(r);
                }
                if any {
                    positive.push(entry.name.clone());
                }
            }
        }
    }
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    let summary = Summary {
        reports: reports.len(),
        constant: count(Verdict::Constant),
        nonconstant: count(Verdict::Nonconstant),
        inconclusive: count(Verdict::Inconclusive),
        positive,
    };
    Ok(Classification { reports, summary })
}

#[cfg(test)]
mod tests;
