//! Fuel-bounded evaluator for processes over the built-in program registry.
//!
//! Every process runs on its own meter. A parent pays one step to dispatch,
//! plus the full consumption of each subprocess it spawns, so a halting
//! parent's runtime always exceeds the sum of its halting children's.

use std::cell::RefCell;
use std::collections::HashSet;

use crate::datum::{CapExceeded, Datum, Enumerator, StatementPlan, Universe, DEFAULT_ENUM_CAP};
use crate::deduction::pair_index;
use crate::ids::ProgramId;
use crate::rules;
use crate::statements::raw;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunResult {
    Halted { output: Datum, runtime: u64 },
    OutOfFuel { consumed: u64 },
}

impl RunResult {
    pub fn output(&self) -> Option<&Datum> {
        match self {
            RunResult::Halted { output, .. } => Some(output),
            RunResult::OutOfFuel { .. } => None,
        }
    }

    pub fn runtime(&self) -> Option<u64> {
        match self {
            RunResult::Halted { runtime, .. } => Some(*runtime),
            RunResult::OutOfFuel { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MachineError {
    #[error("process head is not an algorithm: {0:?}")]
    NotAnAlgorithm(Datum),
    #[error("infeasible enumeration: {0}")]
    Infeasible(#[from] CapExceeded),
}

/// One halted process, recorded by [`Machine::run_traced`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CallRecord {
    pub program: ProgramId,
    pub runtime: u64,
    /// Runtimes of the halting subprocesses whose results were used.
    pub child_runtimes: Vec<u64>,
    /// For AND/OR: steps each operand had received when the outcome was settled.
    pub interleaving: Option<(u64, u64)>,
}

/// Snapshot handed to stage observers of the deduction loop.
#[derive(Clone, Debug)]
pub struct StageEvent<'a> {
    pub index: u64,
    pub rule_index: u64,
    pub resource: u64,
    pub rule: Option<&'a Datum>,
    pub hypotheses: &'a [Datum],
    pub appended: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum DeduceEnd {
    Found(u64),
    StageLimit,
}

#[derive(Debug)]
pub(crate) enum Stop {
    OutOfFuel,
    Infeasible(CapExceeded),
}

impl From<CapExceeded> for Stop {
    fn from(e: CapExceeded) -> Self {
        Stop::Infeasible(e)
    }
}

/// Steps granted to each operand of a round-robin schedule after `t` steps.
///
/// The first operand moves on odd steps, the second on even ones.
pub fn interleaving_after(t: u64) -> (u64, u64) {
    (t.div_ceil(2), t / 2)
}

/// The evaluator, parameterized by the universe used for enumeration.
pub struct Machine {
    enumerator: RefCell<Enumerator>,
}

impl Default for Machine {
    fn default() -> Self {
        Machine::new(Universe::full())
    }
}

pub(crate) struct Exec {
    pub result: Result<Datum, Stop>,
    pub used: u64,
    records: Vec<CallRecord>,
}

impl Machine {
    pub fn new(universe: Universe) -> Self {
        Machine::with_cap(universe, DEFAULT_ENUM_CAP)
    }

    pub fn with_cap(universe: Universe, cap: usize) -> Self {
        Machine {
            enumerator: RefCell::new(Enumerator::new(universe, cap)),
        }
    }

    pub fn universe(&self) -> Universe {
        self.enumerator.borrow().universe().clone()
    }

    pub(crate) fn statement_plan(&self, size: u64) -> Result<StatementPlan, CapExceeded> {
        self.enumerator.borrow_mut().statement_plan(size)
    }

    /// Run the process `(alg, input)` with the given fuel.
    pub fn run(&self, alg: &Datum, input: &Datum, fuel: u64) -> Result<RunResult, MachineError> {
        self.run_inner(alg, input, fuel, false).map(|(r, _)| r)
    }

    /// Like [`Machine::run`], also returning a record for every halting process.
    pub fn run_traced(
        &self,
        alg: &Datum,
        input: &Datum,
        fuel: u64,
    ) -> Result<(RunResult, Vec<CallRecord>), MachineError> {
        self.run_inner(alg, input, fuel, true)
    }

    fn run_inner(
        &self,
        alg: &Datum,
        input: &Datum,
        fuel: u64,
        tracing: bool,
    ) -> Result<(RunResult, Vec<CallRecord>), MachineError> {
        if !alg.is_alg() {
            return Err(MachineError::NotAnAlgorithm(alg.clone()));
        }
        let ex = self.exec(alg, input, fuel, tracing);
        finish(ex.result, ex.used).map(|r| (r, ex.records))
    }

    /// True iff `x` is a statement of size at most `m` whose process halts
    /// with the stated output within runtime `m`.
    pub fn m_true_check(&self, x: &Datum, m: u64) -> Result<bool, MachineError> {
        let Some([alpha, u, v]) = x.as_list() else {
            return Ok(false);
        };
        if !alpha.is_alg() || x.size() > m {
            return Ok(false);
        }
        Ok(self.run(alpha, u, m)?.output() == Some(v))
    }

    /// Run DEDUCE on `[gamma, rho, goal]`, reporting every stage to `observer`.
    ///
    /// Charges exactly what the DEDUCE program charges. With `goal` absent the
    /// loop stops after `stage_limit` stages.
    pub(crate) fn deduce_observed(
        &self,
        gamma: &[Datum],
        rho: &Datum,
        goal: Option<&Datum>,
        stage_limit: Option<u64>,
        fuel: u64,
        observer: &mut dyn FnMut(&StageEvent<'_>),
    ) -> (Result<DeduceEnd, Stop>, u64) {
        let mut fr = Frame::new(self, fuel, false);
        let r = fr
            .tick(1)
            .and_then(|_| fr.deduce_loop(gamma, rho, goal, stage_limit, observer));
        (r, fr.used)
    }

    pub(crate) fn exec(&self, alg: &Datum, input: &Datum, limit: u64, tracing: bool) -> Exec {
        let mut fr = Frame::new(self, limit, tracing);
        let result = match alg.as_alg() {
            Some((p, caps)) => fr.tick(1).and_then(|_| dispatch(&mut fr, p, caps, input)),
            None => Ok(Datum::Nat(0)),
        };
        if let (Ok(_), Some((p, _))) = (&result, alg.as_alg()) {
            if let Some(trace) = fr.trace.as_mut() {
                trace.push(CallRecord {
                    program: p,
                    runtime: fr.used,
                    child_runtimes: std::mem::take(&mut fr.children),
                    interleaving: fr.interleaving,
                });
            }
        }
        Exec {
            result,
            used: fr.used,
            records: fr.trace.unwrap_or_default(),
        }
    }
}

pub(crate) fn finish(result: Result<Datum, Stop>, used: u64) -> Result<RunResult, MachineError> {
    match result {
        Ok(output) => Ok(RunResult::Halted {
            output,
            runtime: used,
        }),
        Err(Stop::OutOfFuel) => Ok(RunResult::OutOfFuel { consumed: used }),
        Err(Stop::Infeasible(e)) => Err(MachineError::Infeasible(e)),
    }
}

/// The meter and bookkeeping of one running process.
pub(crate) struct Frame<'a> {
    pub machine: &'a Machine,
    used: u64,
    limit: u64,
    trace: Option<Vec<CallRecord>>,
    children: Vec<u64>,
    interleaving: Option<(u64, u64)>,
}

impl<'a> Frame<'a> {
    fn new(machine: &'a Machine, limit: u64, tracing: bool) -> Self {
        Frame {
            machine,
            used: 0,
            limit,
            trace: tracing.then(Vec::new),
            children: Vec::new(),
            interleaving: None,
        }
    }

    fn tracing(&self) -> bool {
        self.trace.is_some()
    }

    pub fn remaining(&self) -> u64 {
        self.limit - self.used
    }

    /// Pay `n` own steps.
    pub fn tick(&mut self, n: u64) -> Result<(), Stop> {
        if n > self.remaining() {
            self.used = self.limit;
            Err(Stop::OutOfFuel)
        } else {
            self.used += n;
            Ok(())
        }
    }

    /// Consume every remaining step: the process never halts.
    pub fn diverge<T>(&mut self) -> Result<T, Stop> {
        self.used = self.limit;
        Err(Stop::OutOfFuel)
    }

    fn adopt(&mut self, ex: Exec) {
        self.used += ex.used;
        if let Some(trace) = self.trace.as_mut() {
            trace.extend(ex.records);
        }
        if ex.result.is_ok() {
            self.children.push(ex.used);
        }
    }

    /// Run a subprocess with all remaining fuel.
    pub fn spawn(&mut self, alg: &Datum, input: &Datum) -> Result<Datum, Stop> {
        let ex = self
            .machine
            .exec(alg, input, self.remaining(), self.tracing());
        let result = match &ex.result {
            Ok(d) => Ok(d.clone()),
            Err(Stop::OutOfFuel) => Err(Stop::OutOfFuel),
            Err(Stop::Infeasible(e)) => Err(Stop::Infeasible(e.clone())),
        };
        self.adopt(ex);
        result
    }

    /// Run a subprocess allowed at most `cap` steps.
    ///
    /// `Ok(None)` means it provably does not halt within `cap`. If the parent
    /// cannot afford `cap` and the child is still running, the parent runs out.
    pub fn spawn_bounded(
        &mut self,
        alg: &Datum,
        input: &Datum,
        cap: u64,
    ) -> Result<Option<Datum>, Stop> {
        let remaining = self.remaining();
        let ex = self
            .machine
            .exec(alg, input, cap.min(remaining), self.tracing());
        match ex.result {
            Ok(ref d) => {
                let d = d.clone();
                self.adopt(ex);
                Ok(Some(d))
            }
            Err(Stop::Infeasible(e)) => Err(Stop::Infeasible(e)),
            Err(Stop::OutOfFuel) if cap <= remaining => {
                self.used += cap;
                Ok(None)
            }
            Err(Stop::OutOfFuel) => self.diverge(),
        }
    }

    /// Is `x` true within runtime `m`, with size at most `m`?
    pub fn m_true(&mut self, x: &Datum, m: u64) -> Result<bool, Stop> {
        self.tick(1)?;
        let Some([alpha, u, v]) = x.as_list() else {
            return Ok(false);
        };
        if !alpha.is_alg() || x.size() > m {
            return Ok(false);
        }
        Ok(self.spawn_bounded(alpha, u, m)?.as_ref() == Some(v))
    }

    /// Run the processes of statements `a` and `b` round-robin, one step each.
    ///
    /// Returns `decisive` as soon as either statement's verdict (true or
    /// directly false) equals it, and `!decisive` once both are settled the
    /// other way. Diverges otherwise.
    fn dovetail(&mut self, a: &[Datum], b: &[Datum], decisive: bool) -> Result<bool, Stop> {
        let r = self.remaining();
        let (lim_a, lim_b) = interleaving_after(r);
        let tracing = self.tracing();
        let ea = self.machine.exec(&a[0], &a[1], lim_a, tracing);
        let eb = self.machine.exec(&b[0], &b[1], lim_b, tracing);
        for e in [&ea, &eb] {
            if let Err(Stop::Infeasible(err)) = &e.result {
                return Err(Stop::Infeasible(err.clone()));
            }
        }
        let finish_a = ea.result.is_ok().then(|| 2 * ea.used - 1);
        let finish_b = eb.result.is_ok().then(|| 2 * eb.used);
        let a_first = match (finish_a, finish_b) {
            (None, None) => return self.diverge(),
            (Some(ta), Some(tb)) => ta < tb,
            (Some(_), None) => true,
            (None, Some(_)) => false,
        };
        let verdict = |ex: &Exec, stmt: &[Datum]| ex.result.as_ref().ok() == Some(&stmt[2]);

        let (first, first_stmt, other, other_stmt) = if a_first {
            (ea, a, eb, b)
        } else {
            (eb, b, ea, a)
        };
        let steps_first = first.used;
        // Steps the other operand received by the time the first one halted.
        let steps_other = if a_first {
            steps_first - 1
        } else {
            steps_first
        };
        let vf = verdict(&first, first_stmt);
        if vf == decisive {
            self.interleaving = Some(if a_first {
                (steps_first, steps_other)
            } else {
                (steps_other, steps_first)
            });
            self.adopt(first);
            self.used += steps_other;
            return Ok(decisive);
        }
        // The first operand is settled; the other continues alone.
        let budget = r - steps_first;
        let other = match other.result {
            Ok(_) if other.used <= budget => other,
            _ => self
                .machine
                .exec(&other_stmt[0], &other_stmt[1], budget, tracing),
        };
        self.adopt(first);
        match other.result {
            Ok(_) => {
                let vo = verdict(&other, other_stmt);
                self.interleaving = Some(if a_first {
                    (steps_first, other.used)
                } else {
                    (other.used, steps_first)
                });
                self.adopt(other);
                Ok(if vo == decisive { decisive } else { !decisive })
            }
            Err(Stop::Infeasible(e)) => Err(Stop::Infeasible(e)),
            Err(Stop::OutOfFuel) => self.diverge(),
        }
    }

    /// The forward-chaining loop shared by DEDUCE and the deduction API.
    pub fn deduce_loop(
        &mut self,
        gamma: &[Datum],
        rho: &Datum,
        goal: Option<&Datum>,
        stage_limit: Option<u64>,
        observer: &mut dyn FnMut(&StageEvent<'_>),
    ) -> Result<DeduceEnd, Stop> {
        let mut h: Vec<Datum> = gamma.to_vec();
        let mut members: HashSet<Datum> = h.iter().cloned().collect();
        if goal.is_some_and(|g| members.contains(g)) {
            return Ok(DeduceEnd::Found(0));
        }
        if !rho.is_alg() {
            return self.diverge();
        }
        let mut i = 0u64;
        loop {
            if stage_limit.is_some_and(|l| i >= l) {
                return Ok(DeduceEnd::StageLimit);
            }
            i += 1;
            self.tick(1)?;
            let (k, m) = pair_index(i);
            let rule = self.spawn(rho, &Datum::Nat(k))?;
            let mut appended = 0;
            if rule.is_alg() {
                let input = Datum::list(vec![Datum::list(h.clone()), rho.clone(), Datum::Nat(m)]);
                let out = self.spawn(&rule, &input)?;
                if let Some(items) = out.as_list() {
                    let keeps_prefix = items.len() >= h.len() && items[..h.len()] == h[..];
                    if !keeps_prefix {
                        members = items.iter().cloned().collect();
                    } else {
                        members.extend(items[h.len()..].iter().cloned());
                    }
                    appended = items.len().saturating_sub(h.len());
                    h = items.to_vec();
                }
            }
            observer(&StageEvent {
                index: i,
                rule_index: k,
                resource: m,
                rule: rule.is_alg().then_some(&rule),
                hypotheses: &h,
                appended,
            });
            if goal.is_some_and(|g| members.contains(g)) {
                return Ok(DeduceEnd::Found(i));
            }
        }
    }
}

fn dispatch(
    fr: &mut Frame<'_>,
    p: ProgramId,
    caps: &[Datum],
    input: &Datum,
) -> Result<Datum, Stop> {
    let junk = Ok(Datum::Nat(0));
    if caps.len() != p.arity() {
        return match p {
            ProgramId::Rule(_) => Ok(input.clone()),
            _ => junk,
        };
    }
    match p {
        ProgramId::Identity => Ok(input.clone()),
        ProgramId::Loop => fr.diverge(),
        ProgramId::Halt => match input.as_list() {
            Some([alpha, u]) if alpha.is_alg() => {
                fr.spawn(alpha, u)?;
                Ok(Datum::Nat(1))
            }
            _ => junk,
        },
        ProgramId::True | ProgramId::SNeg => match input.as_list() {
            Some([alpha, u, v]) if alpha.is_alg() => {
                let out = fr.spawn(alpha, u)?;
                let matches = out == *v;
                Ok(Datum::Nat(u64::from(matches == (p == ProgramId::True))))
            }
            _ => junk,
        },
        ProgramId::And | ProgramId::Or => match input.as_list() {
            Some([a, b]) if a.is_statement() && b.is_statement() => {
                let (a, b) = (a.as_list().unwrap(), b.as_list().unwrap());
                let decisive = p == ProgramId::Or;
                let out = fr.dovetail(a, b, decisive)?;
                Ok(Datum::Nat(u64::from(out)))
            }
            _ => junk,
        },
        ProgramId::Curry => match input.as_list() {
            Some([alpha, rho]) if alpha.is_alg() => {
                let target = raw::neg(rho, &raw::self_apply(alpha, rho));
                run_expecting_one(fr, &target)
            }
            _ => junk,
        },
        ProgramId::RWitness => match input.as_list() {
            Some([alpha, rho]) if alpha.is_alg() => {
                let target = raw::implies(
                    &raw::self_apply(alpha, rho),
                    rho,
                    &raw::prove(rho, &raw::f()),
                );
                run_expecting_one(fr, &target)
            }
            _ => junk,
        },
        ProgramId::BetaHaltWitness => {
            if !input.is_alg() {
                return junk;
            }
            let rho = &caps[0];
            let base = raw::stmt(input.clone(), input.clone(), 1.into());
            let yes = raw::neg(rho, &base);
            let no = raw::neg(rho, &raw::strong_neg(&base));
            let mut m = 1;
            loop {
                if fr.m_true(&yes, m)? {
                    return Ok(Datum::Nat(1));
                }
                if fr.m_true(&no, m)? {
                    return Ok(Datum::Nat(0));
                }
                m += 1;
            }
        }
        ProgramId::Deduce => match input.as_list() {
            Some([gamma, rho, goal]) => match gamma.as_list() {
                Some(gamma) => {
                    fr.deduce_loop(gamma, rho, Some(goal), None, &mut |_| {})?;
                    Ok(Datum::Nat(1))
                }
                None => junk,
            },
            _ => junk,
        },
        ProgramId::LibFromList => match (caps[0].as_list(), input) {
            (Some(rules), Datum::Nat(n)) if !rules.is_empty() && *n >= 1 => {
                let idx = (*n).min(rules.len() as u64) as usize - 1;
                Ok(rules[idx].clone())
            }
            _ => junk,
        },
        ProgramId::Rule(r) => rules::run(fr, r, caps, input),
    }
}

// Runs the process of `stmt`, outputting 1 if it outputs 1 and diverging otherwise.
fn run_expecting_one(fr: &mut Frame<'_>, stmt: &Datum) -> Result<Datum, Stop> {
    let parts = stmt.as_list().expect("constructed statement");
    if fr.spawn(&parts[0], &parts[1])? == Datum::Nat(1) {
        Ok(Datum::Nat(1))
    } else {
        fr.diverge()
    }
}
