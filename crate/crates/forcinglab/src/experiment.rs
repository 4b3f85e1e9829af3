//! Batch experiment runner: configs in, deterministic reports out.
//!
//! Each experiment wires one laboratory pipeline end to end and grades the
//! result as `pass`, `violation`, or `budget`.  Configs may declare an
//! expected negative outcome (a bounded search that should come up empty, a
//! clash that should be found), which lets a suite assert negative results
//! without encoding them in code.  Reports are deterministic for a fixed
//! `(config, seed)` apart from the timing field.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::antichain::{
    max_uniform_antichain_size_with, packing_report, supported_antichain_bound, AntichainError,
};
use crate::atom::{Atom, Universe};
use crate::closure::{check_sigma_closed_bounded, support_stabilization, ChainGen, ClosureError, SigmaVerdict};
use crate::generic::{
    build_generic, build_generic_seeded, extract_bits, extract_sock_order, extract_surjection,
    DenseSetSpec, GenericError,
};
use crate::names::{compute_a_set, random_nice_name, NiceName};
use crate::nominal::{GroupSpec, NominalError, PermModel, Support};
use crate::poset::{Condition, IndexPoint, PosetFamily};
use crate::pyramid::{
    capstone_from_chain, evaluate_via_capstone, exhaustive_lower_bound_oracle, find_capstone,
    pyramid_from_name, size_level_pyramid, validate_name_pyramid, validate_pyramid,
    CapstoneVerdict, NameOracle, Pyramid, PyramidCheck, PyramidError,
};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("unknown experiment {0:?}")]
    UnknownExperiment(String),
    #[error("bad parameters for {experiment}: {reason}")]
    BadParameters { experiment: String, reason: String },
    #[error("experiment {experiment} needs a universe")]
    MissingUniverse { experiment: String },
    #[error("config is not valid json: {0}")]
    Json(String),
}

/// Declared expectation for an experiment whose honest result is negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    /// The bounded search is expected to come up empty.
    NoneWithinBudget,
    /// The run is expected to find a violation witness.
    Violation,
}

/// One experiment to run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universe: Option<Universe>,
    #[serde(default)]
    pub parameters: serde_json::Map<String, Json>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expectation>,
}

/// Graded outcome; also the per-verdict status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Budget,
    Violation,
}

/// One named check inside a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub status: Outcome,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Json>,
}

impl Verdict {
    fn pass(check: &str, detail: impl Into<String>) -> Verdict {
        Verdict { check: check.into(), status: Outcome::Pass, detail: detail.into(), witness: None }
    }

    fn graded(check: &str, ok: bool, detail: impl Into<String>) -> Verdict {
        Verdict {
            check: check.into(),
            status: if ok { Outcome::Pass } else { Outcome::Violation },
            detail: detail.into(),
            witness: None,
        }
    }

    fn with_witness(mut self, witness: Json) -> Verdict {
        self.witness = Some(witness);
        self
    }

    fn budget(check: &str, detail: impl Into<String>) -> Verdict {
        Verdict {
            check: check.into(),
            status: Outcome::Budget,
            detail: detail.into(),
            witness: None,
        }
    }

    fn violation(check: &str, detail: impl Into<String>) -> Verdict {
        Verdict {
            check: check.into(),
            status: Outcome::Violation,
            detail: detail.into(),
            witness: None,
        }
    }
}

/// The result of one experiment run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub experiment: String,
    pub artifact_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub outcome: Outcome,
    pub verdicts: Vec<Verdict>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub budget_notes: Vec<String>,
    pub timing_ms: u64,
}

/// Wall-clock budget read from `FORCINGLAB_BUDGET_MS`; unset means no cap.
pub struct BudgetClock {
    start: Instant,
    cap: Option<Duration>,
}

impl BudgetClock {
    pub fn from_env() -> BudgetClock {
        let cap = std::env::var("FORCINGLAB_BUDGET_MS")
            .ok()
            .and_then(|s| s.parse::<u64>().ok())
            .map(Duration::from_millis);
        BudgetClock { start: Instant::now(), cap }
    }

    pub fn exceeded(&self) -> bool {
        self.cap.is_some_and(|cap| self.start.elapsed() > cap)
    }

    pub fn elapsed_ms(&self) -> u64 {
        self.start.elapsed().as_millis() as u64
    }
}

/// Run one experiment and grade it.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Report, ConfigError> {
    let clock = BudgetClock::from_env();
    let mut budget_notes = Vec::new();
    let verdicts = dispatch(cfg, &clock, &mut budget_notes)?;
    let raw = verdicts.iter().map(|v| v.status).max().unwrap_or(Outcome::Pass);
    let outcome = match (cfg.expect, raw) {
        (None, raw) => raw,
        (Some(Expectation::NoneWithinBudget), Outcome::Budget) => {
            budget_notes.push("bounded search came up empty, as the config expects".into());
            Outcome::Pass
        }
        (Some(Expectation::Violation), Outcome::Violation) => {
            budget_notes.push("violation witness found, as the config expects".into());
            Outcome::Pass
        }
        (Some(expect), raw) => {
            budget_notes.push(format!("config expects {expect:?}, run graded {raw:?}"));
            Outcome::Violation
        }
    };
    Ok(Report {
        experiment: cfg.experiment.clone(),
        artifact_version: env!("CARGO_PKG_VERSION").to_string(),
        seed: cfg.seed,
        outcome,
        verdicts,
        budget_notes,
        timing_ms: clock.elapsed_ms(),
    })
}

/// Run a batch; reports come back sorted by experiment name.
pub fn run_suite(configs: &[ExperimentConfig]) -> Result<Vec<Report>, ConfigError> {
    let mut reports = configs.iter().map(run_experiment).collect::<Result<Vec<_>, _>>()?;
    reports.sort_by(|a, b| a.experiment.cmp(&b.experiment));
    Ok(reports)
}

/// Worst outcome across reports, as a process exit code: pass = 0,
/// violation = 2, budget = 3 (config errors exit 1 before any report).
pub fn exit_code(reports: &[Report]) -> i32 {
    match reports.iter().map(|r| r.outcome).max().unwrap_or(Outcome::Pass) {
        Outcome::Pass => 0,
        Outcome::Violation => 2,
        Outcome::Budget => 3,
    }
}

/// Output format for [`emit_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

/// Serialize a report: canonical JSON, or a small text table.
pub fn emit_report(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_string_pretty(report).expect("reports are plain data");
            out.push('\n');
            out
        }
        ReportFormat::Text => {
            let mut out = format!(
                "experiment: {} (v{})\noutcome: {}\n",
                report.experiment,
                report.artifact_version,
                outcome_word(report.outcome)
            );
            if let Some(seed) = report.seed {
                out.push_str(&format!("seed: {seed}\n"));
            }
            for v in &report.verdicts {
                out.push_str(&format!("  [{}] {} — {}\n", outcome_word(v.status), v.check, v.detail));
            }
            for note in &report.budget_notes {
                out.push_str(&format!("  note: {note}\n"));
            }
            out.push_str(&format!("timing: {} ms\n", report.timing_ms));
            out
        }
    }
}

fn outcome_word(outcome: Outcome) -> &'static str {
    match outcome {
        Outcome::Pass => "pass",
        Outcome::Violation => "violation",
        Outcome::Budget => "budget",
    }
}

// ---------------------------------------------------------------------------
// Dispatch and the individual experiment pipelines.

fn dispatch(
    cfg: &ExperimentConfig,
    clock: &BudgetClock,
    notes: &mut Vec<String>,
) -> Result<Vec<Verdict>, ConfigError> {
    match cfg.experiment.as_str() {
        "antichain-bound" => antichain_bound(cfg, clock, notes),
        "supported-antichain" => supported_antichain(cfg),
        "socks-generic" => socks_generic(cfg),
        "cohen-bits" => cohen_bits(cfg),
        "collapse" => collapse(cfg),
        "choice-refutation" => choice_refutation(cfg),
        "support-stabilization" => stabilization(cfg),
        "sigma-closed" => sigma_closed(cfg),
        "pyramid-capstone" => pyramid_capstone(cfg),
        "name-pyramid" => name_pyramid(cfg),
        "evaluate-name" => evaluate_name(cfg),
        "a-set-bound" => a_set_bound(cfg, clock, notes),
        other => Err(ConfigError::UnknownExperiment(other.to_string())),
    }
}

fn params<T: serde::de::DeserializeOwned>(cfg: &ExperimentConfig) -> Result<T, ConfigError> {
    serde_json::from_value(Json::Object(cfg.parameters.clone())).map_err(|e| {
        ConfigError::BadParameters { experiment: cfg.experiment.clone(), reason: e.to_string() }
    })
}

fn universe(cfg: &ExperimentConfig) -> Result<Universe, ConfigError> {
    cfg.universe.ok_or(ConfigError::MissingUniverse { experiment: cfg.experiment.clone() })
}

fn budget_err(e: impl std::fmt::Display, check: &str) -> Vec<Verdict> {
    vec![Verdict::budget(check, e.to_string())]
}

fn antichain_bound(
    cfg: &ExperimentConfig,
    clock: &BudgetClock,
    notes: &mut Vec<String>,
) -> Result<Vec<Verdict>, ConfigError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct P {
        #[serde(rename = "xsize", alias = "x_size")]
        x_size: u32,
        k: usize,
    }
    let p: P = params(cfg)?;
    let mut packed = 0u64;
    let mut visited_budget = false;
    let result = max_uniform_antichain_size_with(p.x_size, p.k, |members| {
        if visited_budget || clock.exceeded() {
            visited_budget = true;
            return;
        }
        let owned: Vec<Condition> = members.iter().map(|c| (*c).clone()).collect();
        packing_report(&owned).expect("every enumerated antichain packs");
        packed += 1;
    });
    let max = match result {
        Ok(max) => max,
        Err(AntichainError::BudgetExceeded(detail)) => {
            return Ok(budget_err(detail, "exact-bound"))
        }
        Err(e) => {
            return Err(ConfigError::BadParameters {
                experiment: cfg.experiment.clone(),
                reason: e.to_string(),
            })
        }
    };
    let expected = 1usize << p.k;
    let mut verdicts = vec![Verdict::graded(
        "exact-bound",
        max == expected,
        format!(
            "maximum antichain of size-{} conditions over {} points is {} (expected {})",
            p.k, p.x_size, max, expected
        ),
    )
    .with_witness(json!({ "max": max, "expected": expected }))];
    if visited_budget {
        notes.push("packing sweep stopped early at the time budget".into());
        verdicts.push(Verdict::budget("packing", format!("checked {packed} antichains, then hit the budget")));
    } else {
        verdicts.push(Verdict::pass(
            "packing",
            format!("{packed} enumerated antichains packed disjointly into the cube"),
        ));
    }
    Ok(verdicts)
}

fn supported_antichain(cfg: &ExperimentConfig) -> Result<Vec<Verdict>, ConfigError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct P {
        support: Vec<Atom>,
        universe_atoms: u32,
    }
    let p: P = params(cfg)?;
    let support = Support::from_atoms(p.support);
    let out = match supported_antichain_bound(&support, p.universe_atoms) {
        Ok(out) => out,
        Err(e @ AntichainError::BudgetExceeded(_))
        | Err(e @ AntichainError::InsufficientUniverse { .. }) => {
            return Ok(budget_err(e, "exact-bound"))
        }
        Err(e) => {
            return Err(ConfigError::BadParameters {
                experiment: cfg.experiment.clone(),
                reason: e.to_string(),
            })
        }
    };
    let expected = 1usize << support.len();
    let sample = out.witnesses.first().map(|w| {
        json!({
            "original": w.original,
            "transposition": w.transposition.to_string(),
            "renamed": w.renamed,
            "common": w.common,
        })
    });
    let mut bound = Verdict::graded(
        "exact-bound",
        out.bound == expected,
        format!(
            "largest antichain inside the support is {} (expected 2^{} = {})",
            out.bound,
            support.len(),
            expected
        ),
    );
    bound.witness = Some(json!({ "bound": out.bound }));
    let mut witnesses = Verdict::pass(
        "rename-witnesses",
        format!(
            "{} of {} enumerated conditions strayed outside the support and were renamed to a compatible twin ({} out of scope)",
            out.witnesses.len(),
            out.checked,
            out.out_of_scope
        ),
    );
    witnesses.witness = sample;
    Ok(vec![bound, witnesses])
}

fn socks_generic(cfg: &ExperimentConfig) -> Result<Vec<Verdict>, ConfigError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct P {
        pairs: u32,
        #[serde(default)]
        columns: Option<u32>,
    }
    let p: P = params(cfg)?;
    let columns = p.columns.unwrap_or(p.pairs.max(1));
    let family = PosetFamily::fin2_socks(p.pairs, columns);
    let specs: Vec<DenseSetSpec> = (0..p.pairs).map(DenseSetSpec::SockColumn).collect();
    let start = Condition::empty(family);
    let frag = match cfg.seed {
        Some(seed) => build_generic_seeded(&specs, start, seed),
        None => build_generic(&specs, start),
    };
    let frag = match frag {
        Ok(f) => f,
        Err(e @ GenericError::NoFreshAtom { .. }) => return Ok(budget_err(e, "dense-sets-met")),
        Err(e) => {
            return Err(ConfigError::BadParameters {
                experiment: cfg.experiment.clone(),
                reason: e.to_string(),
            })
        }
    };
    let order = extract_sock_order(&frag, p.pairs).map_err(|e| ConfigError::BadParameters {
        experiment: cfg.experiment.clone(),
        reason: e.to_string(),
    })?;
    let distinct: BTreeSet<usize> = order.ranks.values().copied().collect();
    let total = order.order.len() == 2 * p.pairs as usize
        && distinct.len() == order.order.len()
        && distinct.iter().all(|r| *r < 2 * p.pairs as usize);
    Ok(vec![
        Verdict::pass("dense-sets-met", format!("all {} dense sets met along the chain", frag.met.len())),
        Verdict::graded(
            "total-order",
            total,
            format!("ranks injectively order {} sock atoms", order.order.len()),
        )
        .with_witness(serde_json::to_value(&order).expect("orders are plain data")),
    ])
}

fn cohen_bits(cfg: &ExperimentConfig) -> Result<Vec<Verdict>, ConfigError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct P {
        bits: u32,
    }
    let p: P = params(cfg)?;
    let family =
        PosetFamily::FinPi1Inj { nat_bound: p.bits, plain_atoms: p.bits, value_bound: 2 };
    let specs: Vec<DenseSetSpec> = (0..p.bits).map(DenseSetSpec::CoordInDomain).collect();
    let start = Condition::empty(family);
    let frag = match cfg.seed {
        Some(seed) => build_generic_seeded(&specs, start, seed),
        None => build_generic(&specs, start),
    };
    let frag = match frag {
        Ok(f) => f,
        Err(e @ GenericError::NoFreshAtom { .. }) => return Ok(budget_err(e, "bit-string")),
        Err(e) => {
            return Err(ConfigError::BadParameters {
                experiment: cfg.experiment.clone(),
                reason: e.to_string(),
            })
        }
    };
    let bits = extract_bits(&frag, p.bits).map_err(|e| ConfigError::BadParameters {
        experiment: cfg.experiment.clone(),
        reason: e.to_string(),
    })?;
    Ok(vec![Verdict::graded(
        "bit-string",
        bits.len() == p.bits as usize,
        format!("read {} second-coordinate bits", bits.len()),
    )
    .with_witness(json!({ "bits": bits }))])
}

fn collapse(cfg: &ExperimentConfig) -> Result<Vec<Verdict>, ConfigError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct P {
        target: u32,
        #[serde(default)]
        slots: Option<u32>,
    }
    let p: P = params(cfg)?;
    let slots = p.slots.unwrap_or(p.target);
    let family = PosetFamily::FinPi1Inj {
        nat_bound: slots,
        plain_atoms: slots,
        value_bound: p.target.max(1),
    };
    let specs: Vec<DenseSetSpec> = (0..p.target).map(DenseSetSpec::HitValue).collect();
    let start = Condition::empty(family);
    let frag = match cfg.seed {
        Some(seed) => build_generic_seeded(&specs, start, seed),
        None => build_generic(&specs, start),
    };
    let frag = match frag {
        Ok(f) => f,
        Err(e @ GenericError::NoFreshAtom { .. }) => return Ok(budget_err(e, "onto-target")),
        Err(e) => {
            return Err(ConfigError::BadParameters {
                experiment: cfg.experiment.clone(),
                reason: e.to_string(),
            })
        }
    };
    let map = extract_surjection(&frag, p.target).map_err(|e| ConfigError::BadParameters {
        experiment: cfg.experiment.clone(),
        reason: e.to_string(),
    })?;
    Ok(vec![Verdict::pass(
        "onto-target",
        format!("{} slots map onto all {} target values", map.len(), p.target),
    )
    .with_witness(serde_json::to_value(&map).expect("maps are plain data"))])
}

fn choice_refutation(cfg: &ExperimentConfig) -> Result<Vec<Verdict>, ConfigError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct P {
        support: Vec<Atom>,
    }
    let p: P = params(cfg)?;
    let model = PermModel::new(universe(cfg)?, GroupSpec::SocksGroup);
    let support = Support::from_atoms(p.support);
    let refutation = match model.refute_choice(&support) {
        Ok(r) => r,
        Err(e @ NominalError::NoUntouchedPair) => return Ok(budget_err(e, "swap-found")),
        Err(e) => {
            return Err(ConfigError::BadParameters {
                experiment: cfg.experiment.clone(),
                reason: e.to_string(),
            })
        }
    };
    let fixes = support.0.iter().all(|a| refutation.swap.image(*a) == *a);
    let moves = [Atom::sock_left(refutation.pair), Atom::sock_right(refutation.pair)]
        .iter()
        .all(|a| refutation.swap.image(*a) != *a);
    Ok(vec![
        Verdict::graded(
            "swap-found",
            fixes,
            format!("pair {} is untouched; its swap fixes the support pointwise", refutation.pair),
        )
        .with_witness(json!({ "pair": refutation.pair, "swap": refutation.swap.to_string() })),
        Verdict::graded(
            "selectors-moved",
            moves,
            "both selectors on the witness pair are moved by the swap",
        ),
    ])
}

fn stabilization(cfg: &ExperimentConfig) -> Result<Vec<Verdict>, ConfigError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct P {
        chain: ChainGen,
        support: Vec<Atom>,
    }
    let p: P = params(cfg)?;
    let model = PermModel::new(universe(cfg)?, GroupSpec::FullSymmetric);
    let support = Support::from_atoms(p.support);
    match support_stabilization(&model, &p.chain, &support) {
        Ok(report) => Ok(vec![Verdict::pass(
            "strict-steps-within-bound",
            format!(
                "{} strict steps, ceiling {} from the support size",
                report.strict_steps.len(),
                report.bound
            ),
        )
        .with_witness(serde_json::to_value(&report.strict_steps).expect("steps are plain data"))]),
        Err(ClosureError::NotSupported { index, witness }) => {
            Ok(vec![Verdict::violation(
                "supported-chain",
                format!("condition {index} moves under a permutation fixing the support"),
            )
            .with_witness(json!({ "index": index, "witness": witness.to_string() }))])
        }
        Err(ClosureError::ChainTooLong { bound }) => Ok(vec![Verdict::violation(
            "strict-steps-within-bound",
            format!("strict descent continued past the support size {bound}"),
        )]),
        Err(e) => Err(ConfigError::BadParameters {
            experiment: cfg.experiment.clone(),
            reason: e.to_string(),
        }),
    }
}

fn sigma_closed(cfg: &ExperimentConfig) -> Result<Vec<Verdict>, ConfigError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct P {
        chain: ChainGen,
        #[serde(default = "default_max_steps")]
        max_steps: usize,
    }
    fn default_max_steps() -> usize {
        64
    }
    let p: P = params(cfg)?;
    let verdict = check_sigma_closed_bounded(&p.chain, p.max_steps).map_err(|e| {
        ConfigError::BadParameters { experiment: cfg.experiment.clone(), reason: e.to_string() }
    })?;
    Ok(vec![match verdict {
        SigmaVerdict::Stabilized { at } => {
            Verdict::pass("chain-bounded", format!("chain is constant from index {at} on"))
        }
        SigmaVerdict::LowerBound { q } => Verdict::pass(
            "chain-bounded",
            format!("found a lower bound with {} entries", q.len()),
        )
        .with_witness(serde_json::to_value(&q).expect("conditions are plain data")),
        SigmaVerdict::NoBoundWithinBudget { steps } => Verdict::budget(
            "chain-bounded",
            format!("still strictly descending after {steps} produced conditions"),
        ),
    }])
}

fn pyramid_capstone(cfg: &ExperimentConfig) -> Result<Vec<Verdict>, ConfigError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct P {
        family: String,
        depth: usize,
    }
    let p: P = params(cfg)?;
    let bad = |reason: String| ConfigError::BadParameters {
        experiment: cfg.experiment.clone(),
        reason,
    };
    let pyramid = match p.family.as_str() {
        "cohen" => size_level_pyramid(PosetFamily::fin2_naturals(p.depth as u32), p.depth)
            .map_err(|e| bad(e.to_string()))?,
        "singleton-chain" => {
            let family = PosetFamily::fin2_naturals(p.depth as u32);
            let chain: Vec<Condition> = (0..p.depth)
                .map(|n| {
                    Condition::from_entries(
                        family,
                        (0..n as u32).map(|i| (IndexPoint::Nat(i), crate::poset::Value::Bit(0))),
                    )
                })
                .collect();
            Pyramid::singleton_from_chain(&chain).map_err(|e| bad(e.to_string()))?
        }
        other => return Err(bad(format!("unknown pyramid family {other:?}"))),
    };
    let check = validate_pyramid(&pyramid).map_err(|e| bad(e.to_string()))?;
    let mut verdicts = vec![Verdict::graded(
        "pyramid-valid",
        check == PyramidCheck::Valid,
        format!("levels to depth {} are disjoint with deeper extensions", pyramid.depth()),
    )];
    match find_capstone(&pyramid).map_err(|e| bad(e.to_string()))? {
        CapstoneVerdict::Capstone { q, witnesses } => {
            verdicts.push(
                Verdict::pass(
                    "capstone",
                    format!("capstone with {} entries, witnessed at every level", q.len()),
                )
                .with_witness(json!({
                    "capstone": q,
                    "witness_levels": witnesses.iter().map(|(k, _)| *k).collect::<Vec<_>>(),
                })),
            );
            let built = capstone_from_chain(&pyramid, |_, _, _| 0, exhaustive_lower_bound_oracle)
                .map_err(|e| bad(e.to_string()))?;
            verdicts.push(Verdict::graded(
                "construction-agrees",
                built.capstone == q,
                "the chain-and-bound construction reproduces the searched capstone",
            ));
        }
        CapstoneVerdict::NoneWithinBudget { candidates_examined } => {
            verdicts.push(Verdict::budget(
                "capstone",
                format!("no certificate within bounds; examined {candidates_examined} candidates"),
            ));
        }
    }
    Ok(verdicts)
}

/// The bit name whose coordinate `n` is decided by the two one-point
/// conditions at `n` — the shape that generically reads off a new function.
pub fn fresh_bit_name(family: PosetFamily, depth: u32) -> NiceName {
    let coords = (0..depth)
        .map(|n| {
            (0..2u8)
                .map(|b| {
                    (
                        Condition::from_entries(
                            family,
                            [(IndexPoint::Nat(n), crate::poset::Value::Bit(b))],
                        ),
                        b as u64,
                    )
                })
                .collect()
        })
        .collect();
    NiceName::new(depth, coords).expect("one-point conditions at one point form an antichain")
}

fn name_pyramid(cfg: &ExperimentConfig) -> Result<Vec<Verdict>, ConfigError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct P {
        points: u32,
        depth: u32,
    }
    let p: P = params(cfg)?;
    let bad = |reason: String| ConfigError::BadParameters {
        experiment: cfg.experiment.clone(),
        reason,
    };
    let family = PosetFamily::fin2_naturals(p.points);
    let oracle = NameOracle::new(fresh_bit_name(family, p.depth), p.depth)
        .map_err(|e| bad(e.to_string()))?;
    let cone = match pyramid_from_name(&oracle, &Condition::empty(family)) {
        Ok(c) => c,
        Err(e @ PyramidError::BudgetExceeded(_)) => return Ok(budget_err(e, "partition")),
        Err(e) => return Err(bad(e.to_string())),
    };
    let sizes: Vec<usize> = cone.pyramid.levels().iter().map(Vec::len).collect();
    let classified: usize = sizes.iter().sum::<usize>() + cone.decides_all.len();
    let extension = validate_name_pyramid(&cone).map_err(|e| bad(e.to_string()))?;
    Ok(vec![
        Verdict::graded(
            "partition",
            classified == cone.total,
            format!(
                "levels {:?} plus {} full-deciders cover all {} cone conditions once",
                sizes,
                cone.decides_all.len(),
                cone.total
            ),
        )
        .with_witness(json!({
            "levels": sizes,
            "decides_all": cone.decides_all.len(),
            "total": cone.total,
        })),
        Verdict::graded(
            "extension-property",
            extension == PyramidCheck::Valid,
            "every level member extends into a deeper level or the full-decider remainder",
        ),
    ])
}

fn evaluate_name(cfg: &ExperimentConfig) -> Result<Vec<Verdict>, ConfigError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct P {
        name: NiceName,
        depth: u32,
        condition: Condition,
    }
    let p: P = params(cfg)?;
    let bad = |reason: String| ConfigError::BadParameters {
        experiment: cfg.experiment.clone(),
        reason,
    };
    let oracle = NameOracle::new(p.name, p.depth).map_err(|e| bad(e.to_string()))?;
    match evaluate_via_capstone(&p.condition, &oracle) {
        Ok(prefix) => Ok(vec![Verdict::pass(
            "decided-prefix",
            format!("all {} coordinates agree on one prefix", prefix.values.len()),
        )
        .with_witness(json!({ "values": prefix.values }))]),
        Err(PyramidError::NoWitness { coord }) => Ok(vec![Verdict::violation(
            "decided-prefix",
            format!("coordinate {coord} has no compatible witness"),
        )
        .with_witness(json!({ "coord": coord }))]),
        Err(PyramidError::IncompatiblePrefixes { coord, left, right }) => {
            Ok(vec![Verdict::violation(
                "decided-prefix",
                format!(
                    "coordinate {coord} has witnesses forcing {} and {}",
                    left.1, right.1
                ),
            )
            .with_witness(json!({
                "coord": coord,
                "left": { "condition": left.0, "value": left.1 },
                "right": { "condition": right.0, "value": right.1 },
            }))])
        }
        Err(e) => Err(bad(e.to_string())),
    }
}

fn a_set_bound(
    cfg: &ExperimentConfig,
    clock: &BudgetClock,
    notes: &mut Vec<String>,
) -> Result<Vec<Verdict>, ConfigError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct P {
        x_size: u32,
        arity: u32,
        per_coord: usize,
        value_bound: u64,
        trials: u64,
    }
    let p: P = params(cfg)?;
    let bad = |reason: String| ConfigError::BadParameters {
        experiment: cfg.experiment.clone(),
        reason,
    };
    let family = PosetFamily::fin2_plain(p.x_size);
    let root = Condition::empty(family);
    let base_seed = cfg.seed.unwrap_or(0);
    let mut checked = 0u64;
    for trial in 0..p.trials {
        if clock.exceeded() {
            notes.push(format!("stopped after {trial} of {} trials at the time budget", p.trials));
            return Ok(vec![Verdict::budget(
                "bound-holds",
                format!("{checked} decided-value sets checked before the budget ran out"),
            )]);
        }
        let name = random_nice_name(family, p.arity, p.per_coord, p.value_bound, base_seed + trial)
            .map_err(|e| bad(e.to_string()))?;
        for alpha in 0..p.arity {
            for k in 0..=p.x_size as usize {
                // compute_a_set asserts the 2^k ceiling internally.
                compute_a_set(&name, &root, alpha, k).map_err(|e| bad(e.to_string()))?;
                checked += 1;
            }
        }
    }
    // Equality case: a full cube with all-distinct values fills the bound.
    let cube_points: Vec<IndexPoint> = family.domain_points().into_iter().take(2).collect();
    let k = cube_points.len();
    let cube = crate::antichain::full_cube(family, &cube_points).map_err(|e| bad(e.to_string()))?;
    let coord: Vec<(Condition, u64)> =
        cube.into_iter().enumerate().map(|(i, c)| (c, i as u64)).collect();
    let cube_name = NiceName::new(1, vec![coord]).map_err(|e| bad(e.to_string()))?;
    let attained = compute_a_set(&cube_name, &root, 0, k).map_err(|e| bad(e.to_string()))?;
    Ok(vec![
        Verdict::pass(
            "bound-holds",
            format!("{checked} decided-value sets all within their 2^k ceilings"),
        ),
        Verdict::graded(
            "equality-attained",
            attained.len() == 1 << k,
            format!("full-cube name decides {} values at size {k}", attained.len()),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(experiment: &str, parameters: Json) -> ExperimentConfig {
        ExperimentConfig {
            experiment: experiment.into(),
            universe: None,
            parameters: parameters.as_object().cloned().unwrap_or_default(),
            seed: None,
            expect: None,
        }
    }

    #[test]
    fn unit_antichain_bound_experiment_passes() {
        let report = run_experiment(&cfg("antichain-bound", json!({"x_size": 4, "k": 2}))).unwrap();
        assert_eq!(report.outcome, Outcome::Pass);
        assert_eq!(report.verdicts[0].check, "exact-bound");
    }

    #[test]
    fn unit_unknown_experiment_is_config_error() {
        let err = run_experiment(&cfg("zeppelin", json!({}))).unwrap_err();
        assert_eq!(err, ConfigError::UnknownExperiment("zeppelin".into()));
    }

    #[test]
    fn unit_unknown_parameter_is_config_error() {
        let err =
            run_experiment(&cfg("antichain-bound", json!({"x_size": 4, "k": 2, "zs": 1})))
                .unwrap_err();
        assert!(matches!(err, ConfigError::BadParameters { .. }));
    }

    #[test]
    fn unit_socks_zero_pairs_passes() {
        let report = run_experiment(&cfg("socks-generic", json!({"pairs": 0}))).unwrap();
        assert_eq!(report.outcome, Outcome::Pass);
    }

    #[test]
    fn unit_cohen_pyramid_budget_and_expectation() {
        let mut config = cfg("pyramid-capstone", json!({"family": "cohen", "depth": 6}));
        let report = run_experiment(&config).unwrap();
        assert_eq!(report.outcome, Outcome::Budget);
        config.expect = Some(Expectation::NoneWithinBudget);
        let report = run_experiment(&config).unwrap();
        assert_eq!(report.outcome, Outcome::Pass);
        assert_eq!(exit_code(&[report]), 0);
    }

    #[test]
    fn unit_expectation_not_met_is_violation() {
        let mut config = cfg("antichain-bound", json!({"x_size": 3, "k": 1}));
        config.expect = Some(Expectation::NoneWithinBudget);
        let report = run_experiment(&config).unwrap();
        assert_eq!(report.outcome, Outcome::Violation);
        assert_eq!(exit_code(&[report]), 2);
    }

    #[test]
    fn unit_evaluate_fresh_name_reports_clash() {
        let family = PosetFamily::fin2_naturals(4);
        let name = fresh_bit_name(family, 4);
        let config = cfg(
            "evaluate-name",
            json!({
                "name": name,
                "depth": 4,
                "condition": { "family": { "fin2": { "naturals": { "bound": 4 } } }, "entries": [] },
            }),
        );
        let report = run_experiment(&config).unwrap();
        assert_eq!(report.outcome, Outcome::Violation);
        let witness = report.verdicts[0].witness.as_ref().unwrap();
        assert_eq!(witness["coord"], 0);
        assert_ne!(witness["left"]["value"], witness["right"]["value"]);
    }

    #[test]
    fn unit_reports_are_deterministic_modulo_timing() {
        let config = cfg("name-pyramid", json!({"points": 4, "depth": 4}));
        let mut a = run_experiment(&config).unwrap();
        let mut b = run_experiment(&config).unwrap();
        a.timing_ms = 0;
        b.timing_ms = 0;
        assert_eq!(a, b);
        assert_eq!(emit_report(&a, ReportFormat::Json), emit_report(&b, ReportFormat::Json));
    }

    #[test]
    fn unit_report_json_round_trips() {
        let config = cfg("antichain-bound", json!({"x_size": 3, "k": 2}));
        let report = run_experiment(&config).unwrap();
        let json = emit_report(&report, ReportFormat::Json);
        let parsed: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, report);
    }

    #[test]
    fn unit_text_report_lists_verdicts() {
        let report = run_experiment(&cfg("antichain-bound", json!({"x_size": 3, "k": 1}))).unwrap();
        let text = emit_report(&report, ReportFormat::Text);
        assert!(text.contains("outcome: pass"));
        assert!(text.contains("[pass] exact-bound"));
    }

    #[test]
    fn unit_suite_sorted_by_experiment() {
        let configs = vec![
            cfg("socks-generic", json!({"pairs": 1})),
            cfg("antichain-bound", json!({"x_size": 3, "k": 1})),
        ];
        let reports = run_suite(&configs).unwrap();
        assert_eq!(reports[0].experiment, "antichain-bound");
        assert_eq!(reports[1].experiment, "socks-generic");
    }

    #[test]
    fn unit_stabilization_experiment_with_universe() {
        let mut config = cfg(
            "support-stabilization",
            json!({
                "chain": { "rule": {
                    "seed": { "family": { "fin_inj": { "nat_bound": 4, "plain_atoms": 6 } }, "entries": [] },
                    "rule": { "append_atoms": { "atoms": ["P0", "P1"] } },
                    "length": 2,
                } },
                "support": ["P0", "P1"],
            }),
        );
        config.universe = Some(Universe { plain_atoms: 6, sock_pairs: 0 });
        let report = run_experiment(&config).unwrap();
        assert_eq!(report.outcome, Outcome::Pass);
    }

    #[test]
    fn unit_collapse_experiment_onto() {
        let report =
            run_experiment(&cfg("collapse", json!({"target": 6, "slots": 8}))).unwrap();
        assert_eq!(report.outcome, Outcome::Pass);
    }
}
