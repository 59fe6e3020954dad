//! Libraries, the stage pairing, faithful forward chaining and proof-script certification.

use std::fmt;

use crate::datum::{CapExceeded, Datum};
use crate::ids::{ProgramId, RuleId};
use crate::machine::{DeduceEnd, Machine, MachineError, RunResult, StageEvent, Stop};
use crate::rules::{apply_rule, rule_id, RuleError};
use crate::statements::raw::{conj, implies, match_disj, match_implies, match_neg, neg, turnstile};

/// Stage `i` (from 1) to `(rule index, resource)`, walking the diagonals of N+ x N+.
pub fn pair_index(i: u64) -> (u64, u64) {
    assert!(i >= 1, "stage indices start at 1");
    let mut d = ((8 * i + 1).isqrt() - 1) / 2;
    while d * (d + 1) / 2 < i {
        d += 1;
    }
    let j = i - (d - 1) * d / 2;
    (j, d + 1 - j)
}

/// Inverse of [`pair_index`].
pub fn pair_inverse(k: u64, m: u64) -> u64 {
    let d = k + m - 1;
    (d - 1) * d / 2 + k
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LibraryError {
    #[error("a library needs at least one rule")]
    Empty,
    #[error("{0:?} is not a rule")]
    NotARule(Datum),
}

/// A library over a finite rule list; item `n` is rule `min(n, N)`.
pub fn make_library(rules: Vec<Datum>) -> Result<Datum, LibraryError> {
    if rules.is_empty() {
        return Err(LibraryError::Empty);
    }
    if let Some(bad) = rules.iter().find(|r| rule_id(r).is_none()) {
        return Err(LibraryError::NotARule(bad.clone()));
    }
    Ok(Datum::alg(ProgramId::LibFromList, vec![Datum::list(rules)]))
}

/// Library of rules without captures.
pub fn library_of(ids: &[RuleId]) -> Datum {
    make_library(ids.iter().map(|&r| crate::rules::rule_datum(r)).collect())
        .expect("nonempty rule list")
}

/// The rule list of a library built by [`make_library`].
pub fn library_rules(lib: &Datum) -> Option<&[Datum]> {
    match lib.as_alg()? {
        (ProgramId::LibFromList, [rules]) => rules.as_list(),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Deduction {
    ProvedAtStage { stage: u64, runtime: u64 },
    FuelExhausted { consumed: u64 },
}

impl Deduction {
    pub fn stage(&self) -> Option<u64> {
        match self {
            Deduction::ProvedAtStage { stage, .. } => Some(*stage),
            Deduction::FuelExhausted { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeduceError {
    #[error("infeasible enumeration: {0}")]
    Infeasible(#[from] CapExceeded),
}

/// One stage of forward chaining, as reported by [`deduce_traced`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageRecord {
    pub index: u64,
    pub rule_index: u64,
    pub resource: u64,
    pub rule: Option<Datum>,
    pub appended: Vec<Datum>,
}

/// Does `goal` appear among the stages generated from `gamma` under `rho`?
pub fn deduce_faithful(
    machine: &Machine,
    gamma: &[Datum],
    rho: &Datum,
    goal: &Datum,
    fuel: u64,
) -> Result<Deduction, DeduceError> {
    deduce_traced(machine, gamma, rho, goal, fuel, false).map(|(d, _)| d)
}

/// [`deduce_faithful`] that also records each stage's rule and new conclusions.
pub fn deduce_traced(
    machine: &Machine,
    gamma: &[Datum],
    rho: &Datum,
    goal: &Datum,
    fuel: u64,
    keep: bool,
) -> Result<(Deduction, Vec<StageRecord>), DeduceError> {
    let mut stages = Vec::new();
    let mut observer = |ev: &StageEvent<'_>| {
        if keep {
            stages.push(record(ev));
        }
    };
    let (r, used) = machine.deduce_observed(gamma, rho, Some(goal), None, fuel, &mut observer);
    let d = match r {
        Ok(DeduceEnd::Found(stage)) => Deduction::ProvedAtStage {
            stage,
            runtime: used,
        },
        Ok(DeduceEnd::StageLimit) => unreachable!("no stage limit given"),
        Err(Stop::OutOfFuel) => Deduction::FuelExhausted { consumed: used },
        Err(Stop::Infeasible(e)) => return Err(e.into()),
    };
    Ok((d, stages))
}

fn record(ev: &StageEvent<'_>) -> StageRecord {
    let h = ev.hypotheses;
    StageRecord {
        index: ev.index,
        rule_index: ev.rule_index,
        resource: ev.resource,
        rule: ev.rule.cloned(),
        appended: h[h.len() - ev.appended..].to_vec(),
    }
}

/// The sequence `H_0, H_1, ...` computed within the stage limit and fuel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    pub stages: Vec<Vec<Datum>>,
    /// Set when fuel ran out before `stage_limit` stages were computed.
    pub exhausted: bool,
}

pub fn closure_stages(
    machine: &Machine,
    gamma: &[Datum],
    rho: &Datum,
    stage_limit: u64,
    fuel: u64,
) -> Result<Closure, DeduceError> {
    let mut stages = vec![gamma.to_vec()];
    let (r, _) = machine.deduce_observed(gamma, rho, None, Some(stage_limit), fuel, &mut |ev| {
        stages.push(ev.hypotheses.to_vec())
    });
    match r {
        Ok(_) => Ok(Closure {
            stages,
            exhausted: false,
        }),
        Err(Stop::OutOfFuel) => Ok(Closure {
            stages,
            exhausted: true,
        }),
        Err(Stop::Infeasible(e)) => Err(e.into()),
    }
}

/// Visit each stage's hypothesis list without retaining it.
pub fn for_each_stage(
    machine: &Machine,
    gamma: &[Datum],
    rho: &Datum,
    stage_limit: u64,
    fuel: u64,
    mut visit: impl FnMut(u64, &[Datum]),
) -> Result<bool, DeduceError> {
    visit(0, gamma);
    let (r, _) = machine.deduce_observed(gamma, rho, None, Some(stage_limit), fuel, &mut |ev| {
        visit(ev.index, ev.hypotheses)
    });
    match r {
        Ok(_) => Ok(false),
        Err(Stop::OutOfFuel) => Ok(true),
        Err(Stop::Infeasible(e)) => Err(e.into()),
    }
}

pub fn m_true_check(machine: &Machine, x: &Datum, m: u64) -> Result<bool, MachineError> {
    machine.m_true_check(x, m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofStep {
    /// Index of the rule in the library (from 1).
    pub rule_index: u64,
    pub resource: u64,
    /// Indices into the hypotheses followed by earlier conclusions.
    pub premises: Vec<usize>,
    pub conclusion: Datum,
    /// Sub-derivations standing in for executions the step would otherwise
    /// need: one for a UNIV step concluding a deductive conditional, two for
    /// the verified conditionals of a D_ELIM step.
    pub witnesses: Vec<ProofScript>,
}

impl ProofStep {
    pub fn new(rule_index: u64, resource: u64, premises: Vec<usize>, conclusion: Datum) -> Self {
        ProofStep {
            rule_index,
            resource,
            premises,
            conclusion,
            witnesses: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofScript {
    pub goal: Datum,
    pub hypotheses: Vec<Datum>,
    pub steps: Vec<ProofStep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepFailure {
    BadCitation(usize),
    LibraryDidNotAnswer,
    NotARule(Datum),
    WitnessRejected,
    ShapeMismatch,
    ConclusionMissing,
    FuelExhausted,
    Infeasible(String),
    GoalMismatch,
    UnexpectedWitness,
    Witness {
        witness: usize,
        step: usize,
        reason: Box<StepFailure>,
    },
}

impl fmt::Display for StepFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepFailure::BadCitation(i) => write!(f, "premise index {i} is not available"),
            StepFailure::LibraryDidNotAnswer => f.write_str("library did not return a rule"),
            StepFailure::NotARule(d) => write!(f, "library item {d:?} is not a rule"),
            StepFailure::WitnessRejected => f.write_str("conclusion is not m-true"),
            StepFailure::ShapeMismatch => f.write_str("conclusion does not have the rule's shape"),
            StepFailure::ConclusionMissing => {
                f.write_str("rule output does not contain the conclusion")
            }
            StepFailure::FuelExhausted => f.write_str("fuel exhausted"),
            StepFailure::Infeasible(e) => write!(f, "infeasible: {e}"),
            StepFailure::GoalMismatch => f.write_str("last conclusion is not the goal"),
            StepFailure::UnexpectedWitness => f.write_str("this rule takes no witnesses"),
            StepFailure::Witness {
                witness,
                step,
                reason,
            } => {
                write!(f, "witness {witness} fails at step {step}: {reason}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    Certified,
    StepFailed { index: usize, reason: StepFailure },
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certification::Certified)
    }
}

/// Check every step of `script` as a direct consequence under `rho`.
///
/// Steps whose rule enumerates statements (UNIV, META_UNIV, DISJ_INTRO, P2,
/// P8, P9) are checked pointwise: the claimed conclusion is tested for
/// membership in the rule's output without listing that output.
///
/// A deductive conditional `G |- B` is true exactly when `B` lies in the
/// closure of `G`, so a certified script from `G` to `B` establishes its
/// truth. UNIV and D_ELIM steps may cite such scripts instead of running
/// DEDUCE; the step then holds at some resource no smaller than the one
/// recorded.
pub fn certify(machine: &Machine, script: &ProofScript, rho: &Datum, fuel: u64) -> Certification {
    let mut known = script.hypotheses.clone();
    for (index, step) in script.steps.iter().enumerate() {
        if let Err(reason) = check_step(machine, &known, step, rho, fuel) {
            return Certification::StepFailed { index, reason };
        }
        known.push(step.conclusion.clone());
    }
    let reached = match script.steps.last() {
        Some(last) => last.conclusion == script.goal,
        None => script.hypotheses.contains(&script.goal),
    };
    if reached {
        Certification::Certified
    } else {
        Certification::StepFailed {
            index: script.steps.len().saturating_sub(1),
            reason: StepFailure::GoalMismatch,
        }
    }
}

fn check_step(
    machine: &Machine,
    known: &[Datum],
    step: &ProofStep,
    rho: &Datum,
    fuel: u64,
) -> Result<(), StepFailure> {
    let premises = step
        .premises
        .iter()
        .map(|&i| known.get(i).cloned().ok_or(StepFailure::BadCitation(i)))
        .collect::<Result<Vec<_>, _>>()?;
    let rule = match machine.run(rho, &Datum::Nat(step.rule_index), fuel) {
        Ok(RunResult::Halted { output, .. }) => output,
        Ok(RunResult::OutOfFuel { .. }) => return Err(StepFailure::LibraryDidNotAnswer),
        Err(e) => return Err(StepFailure::Infeasible(e.to_string())),
    };
    let id = rule_id(&rule).ok_or_else(|| StepFailure::NotARule(rule.clone()))?;
    let (x, m) = (&step.conclusion, step.resource);
    let universe = machine.universe();
    let in_universe = |d: &Datum| d.is_statement() && universe.covers(d);
    if !step.witnesses.is_empty() {
        let proved = certified_conditionals(machine, &step.witnesses, rho, fuel)?;
        let ok = match id {
            RuleId::Univ => {
                in_universe(x) && x.size() <= m && step.witnesses.len() == 1 && proved.contains(x)
            }
            RuleId::DElim => {
                let verified = |d: &Datum| proved.contains(d) && premises.contains(d);
                premises.iter().filter_map(|d| match_disj(d)).any(|(a, b)| {
                    premises.iter().any(|g| {
                        verified(&implies(&conj(g, a), rho, x))
                            && verified(&implies(&conj(g, b), rho, x))
                    })
                })
            }
            _ => return Err(StepFailure::UnexpectedWitness),
        };
        return if ok {
            Ok(())
        } else {
            Err(StepFailure::ShapeMismatch)
        };
    }
    let ok = match id {
        RuleId::Univ => {
            let witnessed = in_universe(x)
                && machine
                    .m_true_check(x, m)
                    .map_err(|e| StepFailure::Infeasible(e.to_string()))?;
            return if witnessed {
                Ok(())
            } else {
                Err(StepFailure::WitnessRejected)
            };
        }
        RuleId::MetaUniv => match_implies(x, rho)
            .is_some_and(|(a, b)| in_universe(a) && premises.contains(b) && x.size() <= m),
        RuleId::DisjIntro => match_disj(x).is_some_and(|(a, b)| {
            x.size() <= m
                && ((premises.contains(a) && (in_universe(b) || premises.contains(b)))
                    || (premises.contains(b) && in_universe(a)))
        }),
        RuleId::P2 => {
            in_universe(x)
                && x.size() <= m
                && premises
                    .iter()
                    .any(|d| match_neg(d, rho).is_some_and(|a| premises.contains(a)))
        }
        RuleId::P8 => match_disj(x)
            .is_some_and(|(a, na)| in_universe(a) && *na == neg(rho, a) && x.size() <= m),
        RuleId::P9 => match_disj(x).is_some_and(|(na, nna)| {
            match_neg(na, rho).is_some_and(in_universe) && *nna == neg(rho, na) && x.size() <= m
        }),
        _ => {
            let out = apply_rule(machine, &rule, &premises, rho, m, fuel).map_err(|e| match e {
                RuleError::FuelExhausted(_) => StepFailure::FuelExhausted,
                e => StepFailure::Infeasible(e.to_string()),
            })?;
            return if out.contains(x) {
                Ok(())
            } else {
                Err(StepFailure::ConclusionMissing)
            };
        }
    };
    if ok {
        Ok(())
    } else {
        Err(StepFailure::ShapeMismatch)
    }
}

/// The conditionals `hypotheses |-rho goal` established by certified witnesses.
fn certified_conditionals(
    machine: &Machine,
    witnesses: &[ProofScript],
    rho: &Datum,
    fuel: u64,
) -> Result<Vec<Datum>, StepFailure> {
    witnesses
        .iter()
        .enumerate()
        .map(|(witness, w)| match certify(machine, w, rho, fuel) {
            Certification::Certified => Ok(turnstile(&w.hypotheses, rho, &w.goal)),
            Certification::StepFailed { index, reason } => Err(StepFailure::Witness {
                witness,
                step: index,
                reason: Box::new(reason),
            }),
        })
        .collect()
}
