//! Bounded σ-closedness and the support-stabilization argument.
//!
//! The infinite notion under study — every descending ω-chain has a lower
//! bound — is replaced by three-valued verdicts over two kinds of chain
//! input.  An explicit chain is a complete finite object, so it always has
//! its own last element as a lower bound.  A rule chain is a truncated
//! prefix of a conceptually unbounded sequence: the only honest positive
//! answer is a detected fixpoint of the step rule, and a chain still
//! strictly descending when the budget runs out yields a budget report,
//! never a claim of non-closedness.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atom::{Atom, Permutation};
use crate::nominal::{NominalError, PermModel, Support};
use crate::poset::{Condition, IndexPoint, PosetError, PosetFamily, Value};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ClosureError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Nominal(#[from] NominalError),
    #[error("chain fails to descend at step {0}")]
    InvalidChain(usize),
    #[error("seed condition is invalid: {0}")]
    InvalidSeed(#[from] crate::poset::Violation),
    #[error("chain has no conditions")]
    EmptyChain,
    #[error("family {0:?} does not fit this check")]
    WrongFamily(PosetFamily),
    #[error("condition at step {index} is moved by {witness}, so it is not supported")]
    NotSupported { index: usize, witness: Permutation },
    #[error("strict descent continued past the support size {bound}")]
    ChainTooLong { bound: usize },
}

/// Deterministic step rule for generated chains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepRule {
    /// Every step repeats the current condition.
    Constant,
    /// Step `i` writes `bits[i]` at the least free point; a fixpoint once
    /// the pattern is exhausted.
    AppendBits { bits: Vec<u8> },
    /// Step `i` maps the least free natural to `atoms[i]`.
    AppendAtoms { atoms: Vec<Atom> },
}

/// A descending chain, either listed in full or generated by a rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainGen {
    /// A complete finite chain.
    Explicit(Vec<Condition>),
    /// `length` applications of `rule` starting from `seed` — a truncated
    /// window onto an unbounded sequence.
    Rule { seed: Condition, rule: StepRule, length: usize },
}

/// A chain materialized for inspection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaterializedChain {
    pub conditions: Vec<Condition>,
    /// Index where a rule chain reached a step fixpoint, if it did.
    pub stabilized_at: Option<usize>,
    /// True when the source continues conceptually past what is listed.
    pub truncated: bool,
}

impl ChainGen {
    /// Produce at most `max_steps` rule applications (explicit chains are
    /// returned whole) and classify how the production ended.
    pub fn materialize(&self, max_steps: usize) -> Result<MaterializedChain, ClosureError> {
        match self {
            ChainGen::Explicit(conds) => {
                if conds.is_empty() {
                    return Err(ClosureError::EmptyChain);
                }
                for (i, w) in conds.windows(2).enumerate() {
                    if !w[1].extends(&w[0])? {
                        return Err(ClosureError::InvalidChain(i + 1));
                    }
                }
                let mut run_start = conds.len() - 1;
                while run_start > 0 && conds[run_start - 1] == conds[run_start] {
                    run_start -= 1;
                }
                let stabilized_at = (run_start < conds.len() - 1 || conds.len() == 1)
                    .then_some(run_start);
                Ok(MaterializedChain { conditions: conds.clone(), stabilized_at, truncated: false })
            }
            ChainGen::Rule { seed, rule, length } => {
                seed.validate()?;
                let mut conditions = vec![seed.clone()];
                let mut stabilized_at = None;
                let mut truncated = false;
                for step in 0..(*length).min(max_steps) {
                    let last = conditions.last().expect("seeded chain is non-empty");
                    match apply_rule(rule, step, last) {
                        Some(next) if next == *last => {
                            stabilized_at = Some(conditions.len() - 1);
                            break;
                        }
                        Some(next) => conditions.push(next),
                        None => {
                            truncated = true;
                            break;
                        }
                    }
                }
                if stabilized_at.is_none() && !truncated {
                    // Ran to the bound while still strictly descending.
                    truncated = true;
                }
                Ok(MaterializedChain { conditions, stabilized_at, truncated })
            }
        }
    }
}

/// One rule step; `None` when the universe cannot take the required entry.
fn apply_rule(rule: &StepRule, step: usize, p: &Condition) -> Option<Condition> {
    match rule {
        StepRule::Constant => Some(p.clone()),
        StepRule::AppendBits { bits } => {
            let Some(&bit) = bits.get(step) else { return Some(p.clone()) };
            let point = p
                .family()
                .domain_points()
                .into_iter()
                .find(|pt| p.value_at(pt).is_none())?;
            p.extended_with(point, Value::Bit(bit))
        }
        StepRule::AppendAtoms { atoms } => {
            let Some(&atom) = atoms.get(step) else { return Some(p.clone()) };
            let point = (0..).map(IndexPoint::Nat).find(|pt| p.value_at(pt).is_none())?;
            p.extended_with(point, Value::AtomValue(atom))
        }
    }
}

/// Three-valued verdict of the bounded σ-closedness check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaVerdict {
    /// The chain is eventually constant from this index on.
    Stabilized { at: usize },
    /// A condition below every listed element.
    LowerBound { q: Condition },
    /// Still strictly descending when the budget ran out; says nothing
    /// about the unbounded sequence.
    NoBoundWithinBudget { steps: usize },
}

/// Decide what can be decided about a chain within `max_steps`.
///
/// Explicit chains always resolve: a trailing constant run stabilizes,
/// anything else is bounded by its own last element.  Rule chains resolve
/// positively only through a detected fixpoint.
pub fn check_sigma_closed_bounded(
    chain: &ChainGen,
    max_steps: usize,
) -> Result<SigmaVerdict, ClosureError> {
    let m = chain.materialize(max_steps)?;
    if let Some(at) = m.stabilized_at {
        return Ok(SigmaVerdict::Stabilized { at });
    }
    if m.truncated {
        return Ok(SigmaVerdict::NoBoundWithinBudget { steps: m.conditions.len() });
    }
    let q = m.conditions.last().expect("materialized chains are non-empty").clone();
    for (i, p) in m.conditions.iter().enumerate() {
        assert!(q.extends(p)?, "last element must bound step {i}");
    }
    Ok(SigmaVerdict::LowerBound { q })
}

/// One strict step in a supported chain: where it grew and what it added.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrictStep {
    /// Index of the later chain element.
    pub index: usize,
    /// Least domain point new at this step.
    pub new_point: IndexPoint,
    /// The atom written there.
    pub value: Atom,
}

/// Trace of the stabilization argument for a supported chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizationReport {
    pub strict_steps: Vec<StrictStep>,
    /// The ceiling the argument proves: strict steps never exceed this.
    pub bound: usize,
}

/// Run the stabilization argument on a chain of injective conditions that
/// are all supported by one `support`.
///
/// Supportedness traps every written atom inside the support (swapping a
/// stray atom with a fresh one would move the condition), and injectivity
/// spends those atoms one per strict step without reuse, so a chain can
/// take at most `|support|` strict steps before it must repeat forever.
pub fn support_stabilization(
    model: &PermModel,
    chain: &ChainGen,
    support: &Support,
) -> Result<StabilizationReport, ClosureError> {
    let m = chain.materialize(usize::MAX)?;
    let family = m.conditions[0].family();
    if !matches!(family, PosetFamily::FinInj { .. }) {
        return Err(ClosureError::WrongFamily(family));
    }
    for (index, p) in m.conditions.iter().enumerate() {
        if let Some(witness) = model.support_witness(p, support)? {
            return Err(ClosureError::NotSupported { index, witness });
        }
    }
    let mut strict_steps = Vec::new();
    let mut seen_values = std::collections::BTreeSet::new();
    for (i, w) in m.conditions.windows(2).enumerate() {
        let new_points: Vec<IndexPoint> = w[1]
            .domain()
            .filter(|pt| w[0].value_at(pt).is_none())
            .copied()
            .collect();
        let Some(new_point) = new_points.first().copied() else { continue };
        let Some(Value::AtomValue(value)) = w[1].value_at(&new_point) else {
            return Err(ClosureError::WrongFamily(family));
        };
        assert!(support.contains(value), "supported conditions only write support atoms");
        assert!(seen_values.insert(value), "injectivity spends each atom once");
        strict_steps.push(StrictStep { index: i + 1, new_point, value });
        if strict_steps.len() > support.len() {
            return Err(ClosureError::ChainTooLong { bound: support.len() });
        }
    }
    Ok(StabilizationReport { strict_steps, bound: support.len() })
}
