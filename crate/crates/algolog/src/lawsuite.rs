//! Derived laws as certified proof scripts, and executable demonstrations of
//! Curry-style instability, the stronger-library construction and related
//! bounded evidence.
//!
//! Scripts are written against a [`Derivation`] builder that looks premises up
//! by value and picks the smallest resource each step needs.

use std::collections::HashMap;

use crate::datum::{Datum, Universe};
use crate::deduction::{
    certify, deduce_faithful, library_of, library_rules, make_library, Certification, DeduceError,
    Deduction, ProofScript, ProofStep,
};
use crate::ids::{ProgramId, RuleId};
use crate::machine::{Machine, MachineError, RunResult};
use crate::rules::{deny, mp_fixed, rule_datum, rule_id};
use crate::statements::raw::{self, conj, disj, f, halts, material, strong_neg, t};
use crate::statements::{evaluate_truth, Statement, TruthVerdict};

/// Fuel for running a statement when a script wants its truth witnessed by execution.
const EXEC_FUEL: u64 = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LawError {
    #[error("{0:?} is not a library over a rule list")]
    NotALibrary(Datum),
    #[error("library lacks rule {0}")]
    MissingRule(RuleId),
    #[error("no demonstration for rule {0}")]
    Unsupported(RuleId),
}

/// A library together with the machine scripts are checked on.
pub struct LawContext<'m> {
    pub machine: &'m Machine,
    pub rho: Datum,
    pub fuel: u64,
    index: HashMap<RuleId, u64>,
}

impl<'m> LawContext<'m> {
    pub fn new(machine: &'m Machine, rho: Datum, fuel: u64) -> Result<Self, LawError> {
        let rules = library_rules(&rho).ok_or_else(|| LawError::NotALibrary(rho.clone()))?;
        let mut index = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            if let Some(id) = rule_id(r) {
                index.entry(id).or_insert(i as u64 + 1);
            }
        }
        Ok(LawContext {
            machine,
            rho,
            fuel,
            index,
        })
    }

    pub fn has(&self, rule: RuleId) -> bool {
        self.index.contains_key(&rule)
    }

    pub fn imp(&self, a: &Datum, b: &Datum) -> Datum {
        raw::implies(a, &self.rho, b)
    }

    pub fn neg(&self, a: &Datum) -> Datum {
        raw::neg(&self.rho, a)
    }

    pub fn prove(&self, a: &Datum) -> Datum {
        raw::prove(&self.rho, a)
    }

    pub fn iff(&self, a: &Datum, b: &Datum) -> Datum {
        raw::bicond(&self.rho, a, b)
    }

    pub fn derive(&self, hypotheses: &[Datum]) -> Derivation<'_, 'm> {
        Derivation {
            cx: self,
            hypotheses: hypotheses.to_vec(),
            known: hypotheses.to_vec(),
            steps: Vec::new(),
        }
    }

    pub fn certify(&self, script: &ProofScript) -> Certification {
        certify(self.machine, script, &self.rho, self.fuel)
    }

    /// Runtime of `x` if it is true within a small budget.
    fn runtime_if_true(&self, x: &Datum) -> Option<u64> {
        let [alpha, u, v] = x.as_list()? else {
            return None;
        };
        match self.machine.run(alpha, u, EXEC_FUEL) {
            Ok(RunResult::Halted { output, runtime }) if output == *v => Some(runtime),
            _ => None,
        }
    }
}

/// A proof script under construction.
#[derive(Clone)]
pub struct Derivation<'c, 'm> {
    cx: &'c LawContext<'m>,
    hypotheses: Vec<Datum>,
    known: Vec<Datum>,
    steps: Vec<ProofStep>,
}

impl Derivation<'_, '_> {
    pub fn knows(&self, d: &Datum) -> bool {
        self.known.contains(d)
    }

    fn at(&self, d: &Datum) -> usize {
        self.known
            .iter()
            .position(|k| k == d)
            .unwrap_or_else(|| panic!("script cites unknown {d:?}"))
    }

    fn rule_index(&self, rule: RuleId) -> u64 {
        *self
            .cx
            .index
            .get(&rule)
            .unwrap_or_else(|| panic!("library lacks {rule}"))
    }

    fn push(&mut self, step: ProofStep) -> Datum {
        let x = step.conclusion.clone();
        self.known.push(x.clone());
        self.steps.push(step);
        x
    }

    /// A step of `rule` from the cited premises, at the smallest resource that
    /// admits the conclusion's size.
    pub fn by(&mut self, rule: RuleId, premises: &[&Datum], conclusion: Datum) -> Datum {
        let premises = premises.iter().map(|p| self.at(p)).collect();
        let resource = conclusion.size().max(1);
        self.push(ProofStep::new(
            self.rule_index(rule),
            resource,
            premises,
            conclusion,
        ))
    }

    /// UNIV, witnessed by running the statement.
    pub fn univ(&mut self, x: Datum) -> Datum {
        let resource = self.cx.runtime_if_true(&x).unwrap_or(0).max(x.size());
        self.push(ProofStep::new(
            self.rule_index(RuleId::Univ),
            resource,
            vec![],
            x,
        ))
    }

    /// UNIV of the conditional `w.hypotheses |- w.goal`, witnessed by `w`.
    pub fn univ_by(&mut self, w: ProofScript) -> Datum {
        let x = raw::turnstile(&w.hypotheses, &self.cx.rho, &w.goal);
        let mut step = ProofStep::new(self.rule_index(RuleId::Univ), x.size(), vec![], x);
        step.witnesses.push(w);
        self.push(step)
    }

    /// D_ELIM from `G∧A => C`, `G∧B => C`, `G` and `A∨B`, the two conditionals
    /// verified by scripts from `[G∧A]` and `[G∧B]`.
    pub fn d_elim(&mut self, premises: [&Datum; 4], c: Datum, verified: [ProofScript; 2]) -> Datum {
        let premises = premises.iter().map(|p| self.at(p)).collect();
        let mut step = ProofStep::new(self.rule_index(RuleId::DElim), 1, premises, c);
        step.witnesses.extend(verified);
        self.push(step)
    }

    /// Both conjuncts of a known conjunction.
    pub fn split(&mut self, d: &Datum) -> (Datum, Datum) {
        let (a, b) = raw::match_conj(d).unwrap_or_else(|| panic!("not a conjunction: {d:?}"));
        let (a, b) = (a.clone(), b.clone());
        self.by(RuleId::Conj, &[d], a.clone());
        self.by(RuleId::Conj, &[d], b.clone());
        (a, b)
    }

    pub fn and(&mut self, a: &Datum, b: &Datum) -> Datum {
        self.by(RuleId::Conj, &[a, b], conj(a, b))
    }

    /// `x ∨ other` or `other ∨ x` from a known `x`.
    pub fn or_left(&mut self, x: &Datum, other: &Datum) -> Datum {
        self.by(RuleId::DisjIntro, &[x], disj(x, other))
    }

    pub fn or_right(&mut self, other: &Datum, x: &Datum) -> Datum {
        self.by(RuleId::DisjIntro, &[x], disj(other, x))
    }

    pub fn trans(&mut self, ab: &Datum, bc: &Datum) -> Datum {
        let rho = &self.cx.rho;
        let (a, _) = raw::match_implies(ab, rho).expect("conditional");
        let (_, c) = raw::match_implies(bc, rho).expect("conditional");
        let x = self.cx.imp(a, c);
        self.by(RuleId::Trans, &[ab, bc], x)
    }

    /// `a => b` from a known `b`.
    pub fn weaken(&mut self, a: &Datum, b: &Datum) -> Datum {
        let x = self.cx.imp(a, b);
        self.by(RuleId::MetaUniv, &[b], x)
    }

    /// Replay `s`, whose hypotheses must all be known here. Returns its goal.
    pub fn replay(&mut self, s: &ProofScript) -> Datum {
        let mut map: Vec<usize> = s.hypotheses.iter().map(|h| self.at(h)).collect();
        for step in &s.steps {
            let mut step = step.clone();
            step.premises = step.premises.iter().map(|&i| map[i]).collect();
            map.push(self.known.len());
            self.push(step);
        }
        s.goal.clone()
    }

    /// Conjunction of `gamma` built from its items, or `T` when empty.
    fn pack(&mut self, gamma: &[Datum]) -> Datum {
        let Some((first, rest)) = gamma.split_first() else {
            return self.univ(t());
        };
        let mut acc = first.clone();
        for g in rest {
            acc = self.and(&acc, g);
        }
        acc
    }

    /// Recover the items of `gamma` from their known conjunction.
    fn unpack(&mut self, gamma: &[Datum]) {
        for k in (1..gamma.len()).rev() {
            let whole = raw::conj_list(&gamma[..=k]);
            self.split(&whole);
        }
    }

    pub fn finish(mut self, goal: &Datum) -> ProofScript {
        if self.hypotheses.contains(goal) {
            self.steps.clear();
        } else if self.steps.last().map(|s| &s.conclusion) != Some(goal) {
            let step = self.steps.iter().find(|s| s.conclusion == *goal).cloned();
            let step = step.unwrap_or_else(|| panic!("script never reaches {goal:?}"));
            self.steps.push(step);
        }
        ProofScript {
            goal: goal.clone(),
            hypotheses: self.hypotheses,
            steps: self.steps,
        }
    }

    /// Try to derive `goal` by conjunction splitting, execution of true
    /// statements, explosion and disjunction/conjunction introduction.
    fn establish(&mut self, goal: &Datum, depth: u32) -> bool {
        if self.knows(goal) {
            return true;
        }
        self.open_conjunctions();
        if self.knows(goal) {
            return true;
        }
        if self.cx.runtime_if_true(goal).is_some() {
            self.univ(goal.clone());
            return true;
        }
        if self.knows(&f()) && self.cx.has(RuleId::ElimCase) {
            let s = f_entails(self.cx, goal);
            self.replay(&s);
            return true;
        }
        let contradiction = self
            .known
            .iter()
            .find_map(|d| raw::match_strong_neg(d).filter(|a| self.knows(a)).cloned());
        if let Some(a) = contradiction {
            explode(self, &a, goal);
            return true;
        }
        if depth == 0 {
            return false;
        }
        if let Some((a, b)) = raw::match_conj(goal) {
            let mut attempt = self.clone();
            if attempt.establish(a, depth - 1) && attempt.establish(b, depth - 1) {
                attempt.and(a, b);
                *self = attempt;
                return true;
            }
        }
        if let Some((a, b)) = raw::match_disj(goal) {
            for (x, left) in [(a, true), (b, false)] {
                let mut attempt = self.clone();
                if attempt.establish(x, depth - 1) {
                    if left {
                        attempt.or_left(a, b);
                    } else {
                        attempt.or_right(a, b);
                    }
                    *self = attempt;
                    return true;
                }
            }
        }
        false
    }

    fn open_conjunctions(&mut self) {
        let mut i = 0;
        while i < self.known.len() {
            let d = self.known[i].clone();
            if let Some((a, b)) = raw::match_conj(&d) {
                if !self.knows(a) || !self.knows(b) {
                    self.split(&d);
                }
            }
            i += 1;
        }
    }
}

/// A script from `hypotheses` to `goal` found by [`Derivation::establish`], if any.
///
/// Used to discharge the antecedents of conditional laws for particular
/// instances.
pub fn entail(cx: &LawContext<'_>, hypotheses: &[Datum], goal: &Datum) -> Option<ProofScript> {
    let mut d = cx.derive(hypotheses);
    d.establish(goal, 3).then(|| d.finish(goal))
}

/// `A, -A |- B`: DISJ_INTRO then ELIM_CASE.
fn explode(d: &mut Derivation<'_, '_>, a: &Datum, b: &Datum) -> Datum {
    let ab = d.or_left(a, b);
    d.by(RuleId::ElimCase, &[&ab, &strong_neg(a)], b.clone())
}

/// `F |- B` through the true statement `-F`.
pub fn f_entails(cx: &LawContext<'_>, b: &Datum) -> ProofScript {
    let mut d = cx.derive(&[f()]);
    if *b != f() {
        d.univ(strong_neg(&f()));
        explode(&mut d, &f(), b);
    }
    d.finish(b)
}

/// `A => B ∧ A` from a known `A => B`, using the true `A => A`.
fn with_antecedent(d: &mut Derivation<'_, '_>, a: &Datum, b: &Datum) -> Datum {
    let aa = d.univ(d.cx.imp(a, a));
    let ab = d.cx.imp(a, b);
    let x = d.cx.imp(a, &conj(b, a));
    d.by(RuleId::MetaConj, &[&ab, &aa], x)
}

/// From a known `b` and `b ∧ a => c`, derive `a => c`.
fn discharge(d: &mut Derivation<'_, '_>, b: &Datum, a: &Datum, c: &Datum) -> Datum {
    d.weaken(a, b);
    let aba = with_antecedent(d, a, b);
    let bac = d.cx.imp(&conj(b, a), c);
    d.trans(&aba, &bac)
}

/// Script from `[g ∧ a]` reaching `inner.goal`, where `inner` starts from `gamma ++ [a]`.
fn from_conjunction(
    cx: &LawContext<'_>,
    gamma: &[Datum],
    a: &Datum,
    inner: &ProofScript,
) -> ProofScript {
    let g = raw::conj_list(gamma);
    let mut d = cx.derive(&[conj(&g, a)]);
    d.split(&conj(&g, a));
    d.unpack(gamma);
    d.replay(inner);
    d.finish(&inner.goal)
}

/// From a script for `gamma, a |- c`, a script for `gamma |- a => c`.
pub fn deduction_theorem(
    cx: &LawContext<'_>,
    gamma: &[Datum],
    a: &Datum,
    inner: &ProofScript,
) -> ProofScript {
    let c = inner.goal.clone();
    let mut d = cx.derive(gamma);
    let g = d.pack(gamma);
    d.univ_by(from_conjunction(cx, gamma, a, inner));
    let x = discharge(&mut d, &g, a, &c);
    d.finish(&x)
}

/// From scripts for `gamma, a |- c` and `gamma, b |- c`, a script for
/// `gamma, a ∨ b |- c` by D_ELIM.
pub fn cases(
    cx: &LawContext<'_>,
    gamma: &[Datum],
    a: &Datum,
    b: &Datum,
    on_a: &ProofScript,
    on_b: &ProofScript,
) -> ProofScript {
    let c = on_a.goal.clone();
    assert_eq!(c, on_b.goal, "both cases must reach the same goal");
    let mut hyps = gamma.to_vec();
    hyps.push(disj(a, b));
    let mut d = cx.derive(&hyps);
    let g = d.pack(gamma);
    let wa = from_conjunction(cx, gamma, a, on_a);
    let wb = from_conjunction(cx, gamma, b, on_b);
    let ga = d.univ_by(wa.clone());
    let gb = d.univ_by(wb.clone());
    d.d_elim([&ga, &gb, &g, &disj(a, b)], c.clone(), [wa, wb]);
    d.finish(&c)
}

/// `[] |- a <=> b` from scripts `[a] |- b` and `[b] |- a`.
fn iff_script(cx: &LawContext<'_>, there: ProofScript, back: ProofScript) -> ProofScript {
    let mut d = cx.derive(&[]);
    let ab = d.univ_by(there);
    let ba = d.univ_by(back);
    let x = d.and(&ab, &ba);
    d.finish(&x)
}

/// Re-root `s` on hypotheses listed in another order.
fn reorder(cx: &LawContext<'_>, s: &ProofScript, hypotheses: &[Datum]) -> ProofScript {
    let mut d = cx.derive(hypotheses);
    d.replay(s);
    d.finish(&s.goal)
}

fn trivial(cx: &LawContext<'_>, hypotheses: &[Datum], goal: &Datum) -> ProofScript {
    cx.derive(hypotheses).finish(goal)
}

/// `a ∨ b => c` from known `a => c` and `b => c` via META_DISJ under `T`.
fn join_antecedents(d: &mut Derivation<'_, '_>, a: &Datum, b: &Datum, c: &Datum) -> Datum {
    let cx = d.cx;
    let mut lifted = Vec::new();
    for x in [a, b] {
        let mut w = cx.derive(&[conj(&t(), x)]);
        w.split(&conj(&t(), x));
        let tx = d.univ_by(w.finish(x));
        lifted.push(d.trans(&tx, &cx.imp(x, c)));
    }
    let ab = disj(a, b);
    let joined = cx.imp(&conj(&t(), &ab), c);
    d.by(RuleId::MetaDisj, &[&lifted[0], &lifted[1]], joined.clone());
    let truth = d.univ(t());
    let intro = pair_under(cx, &truth, &ab);
    let into = d.replay(&intro);
    d.trans(&into, &joined)
}

/// `a |- b => a ∧ b`.
fn pair_under(cx: &LawContext<'_>, a: &Datum, b: &Datum) -> ProofScript {
    let mut inner = cx.derive(&[a.clone(), b.clone()]);
    let ab = inner.and(a, b);
    deduction_theorem(cx, std::slice::from_ref(a), b, &inner.finish(&ab))
}

/// A law schema with a script generator.
pub struct Law {
    pub name: &'static str,
    /// The schema, over metavariables `A`, `B`, `C`, `G`.
    pub statement: &'static str,
    pub arity: usize,
    /// Builds the script for one instantiation, or `None` when the instance
    /// does not satisfy the law's side condition.
    pub build: fn(&LawContext<'_>, &[Datum]) -> Option<ProofScript>,
}

macro_rules! law {
    ($name:literal, $stmt:literal, $arity:literal, $build:expr) => {
        Law {
            name: $name,
            statement: $stmt,
            arity: $arity,
            build: $build,
        }
    };
}

/// Every law in the suite.
pub fn laws() -> Vec<Law> {
    vec![
        law!("weaken-antecedent", "A, A=>C |- B=>C", 3, |cx, v| {
            let (a, b, c) = (&v[0], &v[1], &v[2]);
            let mut d = cx.derive(&[a.clone(), cx.imp(a, c)]);
            let ba = d.weaken(b, a);
            let x = d.trans(&ba, &cx.imp(a, c));
            Some(d.finish(&x))
        }),
        law!("provable-consequent", "A, A=>C |- prove(C)", 2, |cx, v| {
            let (a, c) = (&v[0], &v[1]);
            let mut d = cx.derive(&[a.clone(), cx.imp(a, c)]);
            let ta = d.weaken(&t(), a);
            let x = d.trans(&ta, &cx.imp(a, c));
            Some(d.finish(&x))
        }),
        law!("conj-symmetric", "A∧B |- B∧A", 2, |cx, v| {
            let (a, b) = (&v[0], &v[1]);
            let mut d = cx.derive(&[conj(a, b)]);
            d.split(&conj(a, b));
            let x = d.and(b, a);
            Some(d.finish(&x))
        }),
        law!(
            "conj-assoc-right",
            "(A∧B)∧C |- A∧(B∧C)",
            3,
            |cx, v| {
                let (a, b, c) = (&v[0], &v[1], &v[2]);
                let mut d = cx.derive(&[conj(&conj(a, b), c)]);
                let (ab, _) = d.split(&conj(&conj(a, b), c));
                d.split(&ab);
                let bc = d.and(b, c);
                let x = d.and(a, &bc);
                Some(d.finish(&x))
            }
        ),
        law!(
            "conj-assoc-left",
            "A∧(B∧C) |- (A∧B)∧C",
            3,
            |cx, v| {
                let (a, b, c) = (&v[0], &v[1], &v[2]);
                let mut d = cx.derive(&[conj(a, &conj(b, c))]);
                let (_, bc) = d.split(&conj(a, &conj(b, c)));
                d.split(&bc);
                let ab = d.and(a, b);
                let x = d.and(&ab, c);
                Some(d.finish(&x))
            }
        ),
        law!("keep-antecedent", "A=>B |- A=>B∧A", 2, |cx, v| {
            let (a, b) = (&v[0], &v[1]);
            let mut d = cx.derive(&[cx.imp(a, b)]);
            let x = with_antecedent(&mut d, a, b);
            Some(d.finish(&x))
        }),
        law!(
            "chain-through-conjunction",
            "A=>B, B∧A=>C |- A=>C",
            3,
            |cx, v| {
                let (a, b, c) = (&v[0], &v[1], &v[2]);
                let mut d = cx.derive(&[cx.imp(a, b), cx.imp(&conj(b, a), c)]);
                let aba = with_antecedent(&mut d, a, b);
                let x = d.trans(&aba, &cx.imp(&conj(b, a), c));
                Some(d.finish(&x))
            }
        ),
        law!(
            "conj-monotone-right",
            "A=>B |- C∧A => C∧B",
            3,
            |cx, v| {
                let (a, b, c) = (&v[0], &v[1], &v[2]);
                Some(conj_monotone(cx, a, b, c, true))
            }
        ),
        law!(
            "conj-monotone-left",
            "A=>B |- A∧C => B∧C",
            3,
            |cx, v| {
                let (a, b, c) = (&v[0], &v[1], &v[2]);
                Some(conj_monotone(cx, a, b, c, false))
            }
        ),
        law!("export", "if B∧A=>C then B |- A=>C", 3, |cx, v| {
            let (b, a, c) = (&v[0], &v[1], &v[2]);
            let holds = entail(cx, &[conj(b, a)], c)?;
            let mut d = cx.derive(std::slice::from_ref(b));
            d.univ_by(holds);
            let x = discharge(&mut d, b, a, c);
            Some(d.finish(&x))
        }),
        law!(
            "deduction-theorem",
            "if G, A |- C then G |- A=>C",
            3,
            |cx, v| {
                let (g, a, c) = (&v[0], &v[1], &v[2]);
                let inner = entail(cx, &[g.clone(), a.clone()], c)?;
                Some(deduction_theorem(cx, std::slice::from_ref(g), a, &inner))
            }
        ),
        law!(
            "deduction-theorem-closed",
            "if A |- C then |- A=>C",
            2,
            |cx, v| {
                let (a, c) = (&v[0], &v[1]);
                let inner = entail(cx, std::slice::from_ref(a), c)?;
                Some(deduction_theorem(cx, &[], a, &inner))
            }
        ),
        law!("pair-under", "A |- B => A∧B", 2, |cx, v| Some(
            pair_under(cx, &v[0], &v[1])
        )),
        law!(
            "prefix-conditional",
            "A=>B |- (B=>C) => (A=>C)",
            3,
            |cx, v| {
                let (a, b, c) = (&v[0], &v[1], &v[2]);
                let mut inner = cx.derive(&[cx.imp(a, b), cx.imp(b, c)]);
                let x = inner.trans(&cx.imp(a, b), &cx.imp(b, c));
                Some(deduction_theorem(
                    cx,
                    &[cx.imp(a, b)],
                    &cx.imp(b, c),
                    &inner.finish(&x),
                ))
            }
        ),
        law!(
            "suffix-conditional",
            "A=>B |- (C=>A) => (C=>B)",
            3,
            |cx, v| {
                let (a, b, c) = (&v[0], &v[1], &v[2]);
                let mut inner = cx.derive(&[cx.imp(a, b), cx.imp(c, a)]);
                let x = inner.trans(&cx.imp(c, a), &cx.imp(a, b));
                Some(deduction_theorem(
                    cx,
                    &[cx.imp(a, b)],
                    &cx.imp(c, a),
                    &inner.finish(&x),
                ))
            }
        ),
        law!(
            "curry-conditional",
            "B∧A=>C |- B => (A=>C)",
            3,
            |cx, v| {
                let (b, a, c) = (&v[0], &v[1], &v[2]);
                let bac = cx.imp(&conj(b, a), c);
                let mut inner = cx.derive(&[bac.clone(), b.clone()]);
                let x = discharge(&mut inner, b, a, c);
                Some(deduction_theorem(cx, &[bac], b, &inner.finish(&x)))
            }
        ),
        law!("iff-reflexive", "|- A<=>A", 1, |cx, v| {
            let a = &v[0];
            let mut d = cx.derive(&[]);
            let aa = d.univ(cx.imp(a, a));
            let x = d.and(&aa, &aa);
            Some(d.finish(&x))
        }),
        law!("iff-symmetric", "A<=>B |- B<=>A", 2, |cx, v| {
            let (a, b) = (&v[0], &v[1]);
            let mut d = cx.derive(&[cx.iff(a, b)]);
            let (ab, ba) = d.split(&cx.iff(a, b));
            let x = d.and(&ba, &ab);
            Some(d.finish(&x))
        }),
        law!("iff-transitive", "A<=>B, B<=>C |- A<=>C", 3, |cx, v| {
            let (a, b, c) = (&v[0], &v[1], &v[2]);
            let mut d = cx.derive(&[cx.iff(a, b), cx.iff(b, c)]);
            let (ab, ba) = d.split(&cx.iff(a, b));
            let (bc, cb) = d.split(&cx.iff(b, c));
            let ac = d.trans(&ab, &bc);
            let ca = d.trans(&cb, &ba);
            let x = d.and(&ac, &ca);
            Some(d.finish(&x))
        }),
        law!("conj-idempotent", "|- A <=> A∧A", 1, |cx, v| {
            let a = &v[0];
            let mut there = cx.derive(std::slice::from_ref(a));
            let aa = there.and(a, a);
            let mut back = cx.derive(std::slice::from_ref(&aa));
            back.split(&aa);
            Some(iff_script(cx, there.finish(&aa), back.finish(a)))
        }),
        law!("conj-unit", "|- A <=> A∧T", 1, |cx, v| {
            let a = &v[0];
            let at = conj(a, &t());
            let mut there = cx.derive(std::slice::from_ref(a));
            there.univ(t());
            there.and(a, &t());
            let mut back = cx.derive(std::slice::from_ref(&at));
            back.split(&at);
            Some(iff_script(cx, there.finish(&at), back.finish(a)))
        }),
        law!("conj-commutative", "|- A∧B <=> B∧A", 2, |cx, v| {
            let (a, b) = (&v[0], &v[1]);
            Some(iff_script(cx, swap_conj(cx, a, b), swap_conj(cx, b, a)))
        }),
        law!(
            "conj-associative",
            "|- A∧(B∧C) <=> (A∧B)∧C",
            3,
            |cx, v| {
                let (a, b, c) = (&v[0], &v[1], &v[2]);
                let right = conj(a, &conj(b, c));
                let left = conj(&conj(a, b), c);
                let mut there = cx.derive(std::slice::from_ref(&right));
                let (_, bc) = there.split(&right);
                there.split(&bc);
                let ab = there.and(a, b);
                there.and(&ab, c);
                let mut back = cx.derive(std::slice::from_ref(&left));
                let (ab, _) = back.split(&left);
                back.split(&ab);
                let bc = back.and(b, c);
                back.and(a, &bc);
                Some(iff_script(cx, there.finish(&left), back.finish(&right)))
            }
        ),
        law!(
            "verified-cases",
            "if G∧A=>C and G∧B=>C then |- G∧(A∨B) => C",
            4,
            |cx, v| {
                let (g, a, b, c) = (&v[0], &v[1], &v[2], &v[3]);
                let on_a = entail(cx, &[conj(g, a)], c)?;
                let on_b = entail(cx, &[conj(g, b)], c)?;
                let whole = conj(g, &disj(a, b));
                let mut inner = cx.derive(std::slice::from_ref(&whole));
                let (g, ab) = inner.split(&whole);
                let ga = inner.univ_by(on_a.clone());
                let gb = inner.univ_by(on_b.clone());
                inner.d_elim([&ga, &gb, &g, &ab], c.clone(), [on_a, on_b]);
                let mut d = cx.derive(&[]);
                let x = d.univ_by(inner.finish(c));
                Some(d.finish(&x))
            }
        ),
        law!(
            "proof-by-cases",
            "if G, A |- C and G, B |- C then G, A∨B |- C",
            4,
            |cx, v| {
                let (g, a, b, c) = (&v[0], &v[1], &v[2], &v[3]);
                let on_a = entail(cx, &[g.clone(), a.clone()], c)?;
                let on_b = entail(cx, &[g.clone(), b.clone()], c)?;
                Some(cases(cx, std::slice::from_ref(g), a, b, &on_a, &on_b))
            }
        ),
        law!("disj-absorbs-truth", "|- A∨T <=> T", 1, |cx, v| {
            let a = &v[0];
            let at = disj(a, &t());
            let mut there = cx.derive(std::slice::from_ref(&at));
            there.univ(t());
            let mut back = cx.derive(&[t()]);
            back.or_right(a, &t());
            Some(iff_script(cx, there.finish(&t()), back.finish(&at)))
        }),
        law!("disj-idempotent", "|- A <=> A∨A", 1, |cx, v| {
            let a = &v[0];
            let mut there = cx.derive(std::slice::from_ref(a));
            let aa = there.or_left(a, a);
            let same = trivial(cx, std::slice::from_ref(a), a);
            let back = cases(cx, &[], a, a, &same, &same);
            Some(iff_script(cx, there.finish(&aa), back))
        }),
        law!("disj-commutative", "|- A∨B <=> B∨A", 2, |cx, v| {
            let (a, b) = (&v[0], &v[1]);
            Some(iff_script(cx, swap_disj(cx, a, b), swap_disj(cx, b, a)))
        }),
        law!("conj-absorbs-disj", "|- A <=> A∧(A∨B)", 2, |cx, v| {
            let (a, b) = (&v[0], &v[1]);
            let whole = conj(a, &disj(a, b));
            let mut there = cx.derive(std::slice::from_ref(a));
            let ab = there.or_left(a, b);
            there.and(a, &ab);
            let mut back = cx.derive(std::slice::from_ref(&whole));
            back.split(&whole);
            Some(iff_script(cx, there.finish(&whole), back.finish(a)))
        }),
        law!("disj-absorbs-conj", "|- A <=> A∨(A∧B)", 2, |cx, v| {
            let (a, b) = (&v[0], &v[1]);
            let ab = conj(a, b);
            let mut there = cx.derive(std::slice::from_ref(a));
            let whole = there.or_left(a, &ab);
            let mut from_ab = cx.derive(std::slice::from_ref(&ab));
            from_ab.split(&ab);
            let back = cases(
                cx,
                &[],
                a,
                &ab,
                &trivial(cx, std::slice::from_ref(a), a),
                &from_ab.finish(a),
            );
            Some(iff_script(cx, there.finish(&whole), back))
        }),
        law!(
            "disj-associative",
            "|- A∨(B∨C) <=> (A∨B)∨C",
            3,
            |cx, v| {
                let (a, b, c) = (&v[0], &v[1], &v[2]);
                let there = regroup_disj(cx, a, b, c, true);
                let back = regroup_disj(cx, a, b, c, false);
                Some(iff_script(cx, there, back))
            }
        ),
        law!(
            "conj-distributes",
            "|- A∧(B∨C) <=> (A∧B)∨(A∧C)",
            3,
            |cx, v| {
                let (a, b, c) = (&v[0], &v[1], &v[2]);
                let (ab, ac) = (conj(a, b), conj(a, c));
                let target = disj(&ab, &ac);
                let whole = conj(a, &disj(b, c));
                let on = |x: &Datum, left: bool| {
                    let mut d = cx.derive(&[a.clone(), x.clone()]);
                    let ax = d.and(a, x);
                    if left {
                        d.or_left(&ax, &ac);
                    } else {
                        d.or_right(&ab, &ax);
                    }
                    d.finish(&target)
                };
                let split_cases = cases(
                    cx,
                    std::slice::from_ref(a),
                    b,
                    c,
                    &on(b, true),
                    &on(c, false),
                );
                let mut there = cx.derive(std::slice::from_ref(&whole));
                there.split(&whole);
                there.replay(&split_cases);
                let back_on = |x: &Datum| {
                    let ax = conj(a, x);
                    let mut d = cx.derive(std::slice::from_ref(&ax));
                    d.split(&ax);
                    let bc = if x == b {
                        d.or_left(b, c)
                    } else {
                        d.or_right(b, c)
                    };
                    d.and(a, &bc);
                    d.finish(&whole)
                };
                let back = cases(cx, &[], &ab, &ac, &back_on(b), &back_on(c));
                Some(iff_script(cx, there.finish(&target), back))
            }
        ),
        law!(
            "disj-distributes",
            "|- A∨(B∧C) <=> (A∨B)∧(A∨C)",
            3,
            |cx, v| {
                let (a, b, c) = (&v[0], &v[1], &v[2]);
                let bc = conj(b, c);
                let whole = disj(a, &bc);
                let target = conj(&disj(a, b), &disj(a, c));
                let mut on_a = cx.derive(std::slice::from_ref(a));
                let ab = on_a.or_left(a, b);
                let ac = on_a.or_left(a, c);
                on_a.and(&ab, &ac);
                let mut on_bc = cx.derive(std::slice::from_ref(&bc));
                on_bc.split(&bc);
                let ab = on_bc.or_right(a, b);
                let ac = on_bc.or_right(a, c);
                on_bc.and(&ab, &ac);
                let there = cases(
                    cx,
                    &[],
                    a,
                    &bc,
                    &on_a.finish(&target),
                    &on_bc.finish(&target),
                );

                let a_or_b = disj(a, b);
                let mut ca = cx.derive(&[c.clone(), a.clone()]);
                ca.or_left(a, &bc);
                let mut cb = cx.derive(&[c.clone(), b.clone()]);
                let bc2 = cb.and(b, c);
                cb.or_right(a, &bc2);
                let with_c = cases(
                    cx,
                    std::slice::from_ref(c),
                    a,
                    b,
                    &ca.finish(&whole),
                    &cb.finish(&whole),
                );
                let mut first = cx.derive(&[a_or_b.clone(), a.clone()]);
                first.or_left(a, &bc);
                let second = reorder(cx, &with_c, &[a_or_b.clone(), c.clone()]);
                let both = cases(
                    cx,
                    std::slice::from_ref(&a_or_b),
                    a,
                    c,
                    &first.finish(&whole),
                    &second,
                );
                let mut back = cx.derive(std::slice::from_ref(&target));
                back.split(&target);
                back.replay(&both);
                Some(iff_script(cx, there, back.finish(&whole)))
            }
        ),
        law!(
            "join-antecedents",
            "A=>C, B=>C |- A∨B => C",
            3,
            |cx, v| {
                let (a, b, c) = (&v[0], &v[1], &v[2]);
                let mut d = cx.derive(&[cx.imp(a, c), cx.imp(b, c)]);
                let x = join_antecedents(&mut d, a, b, c);
                Some(d.finish(&x))
            }
        ),
        law!(
            "disj-monotone-right",
            "A=>B |- C∨A => C∨B",
            3,
            |cx, v| {
                let (a, b, c) = (&v[0], &v[1], &v[2]);
                Some(disj_monotone(cx, a, b, c, true))
            }
        ),
        law!(
            "disj-monotone-left",
            "A=>B |- A∨C => B∨C",
            3,
            |cx, v| {
                let (a, b, c) = (&v[0], &v[1], &v[2]);
                Some(disj_monotone(cx, a, b, c, false))
            }
        ),
        law!("negation-backwards", "A=>B, ¬B |- ¬A", 2, |cx, v| Some(
            neg_back(cx, &v[0], &v[1])
        )),
        law!("contraposition", "A=>B |- ¬B => ¬A", 2, |cx, v| {
            let (a, b) = (&v[0], &v[1]);
            Some(deduction_theorem(
                cx,
                &[cx.imp(a, b)],
                &cx.neg(b),
                &neg_back(cx, a, b),
            ))
        }),
        law!("contradiction-negates", "A, ¬A |- ¬B", 2, |cx, v| Some(
            negates_all(cx, &v[0], &v[1])
        )),
        law!("demorgan-disj", "|- ¬(A∨B) <=> ¬A∧¬B", 2, |cx, v| {
            let (a, b) = (&v[0], &v[1]);
            let ab = disj(a, b);
            let (na, nb) = (cx.neg(a), cx.neg(b));
            let mut there = cx.derive(&[cx.neg(&ab)]);
            let reach = |d: &mut Derivation<'_, '_>, x: &Datum, left: bool| {
                let mut w = cx.derive(std::slice::from_ref(x));
                if left {
                    w.or_left(a, b);
                } else {
                    w.or_right(a, b);
                }
                let xab = d.univ_by(w.finish(&ab));
                d.trans(&xab, &cx.neg(&ab))
            };
            reach(&mut there, a, true);
            reach(&mut there, b, false);
            there.and(&na, &nb);
            let mut back = cx.derive(&[conj(&na, &nb)]);
            back.split(&conj(&na, &nb));
            join_antecedents(&mut back, a, b, &f());
            Some(iff_script(
                cx,
                there.finish(&conj(&na, &nb)),
                back.finish(&cx.neg(&ab)),
            ))
        }),
        law!(
            "demorgan-conj-weak",
            "¬A∨¬B |- ¬(A∧B)",
            2,
            |cx, v| {
                let (a, b) = (&v[0], &v[1]);
                let ab = conj(a, b);
                let on = |x: &Datum| {
                    let mut d = cx.derive(&[cx.neg(x)]);
                    let mut w = cx.derive(std::slice::from_ref(&ab));
                    w.split(&ab);
                    let abx = d.univ_by(w.finish(x));
                    let y = d.trans(&abx, &cx.neg(x));
                    d.finish(&y)
                };
                Some(cases(cx, &[], &cx.neg(a), &cx.neg(b), &on(a), &on(b)))
            }
        ),
        law!("negation-of-conjunct", "¬(A∧B), B |- ¬A", 2, |cx, v| {
            Some(negated_conjunct(cx, &v[0], &v[1]))
        }),
        law!(
            "negation-by-halting-cases",
            "¬(A∧B), B∨¬B |- ¬A∨¬B",
            2,
            |cx, v| {
                let (a, b) = (&v[0], &v[1]);
                let nab = cx.neg(&conj(a, b));
                let (na, nb) = (cx.neg(a), cx.neg(b));
                let target = disj(&na, &nb);
                let mut on_b = cx.derive(&[nab.clone(), b.clone()]);
                on_b.replay(&negated_conjunct(cx, a, b));
                on_b.or_left(&na, &nb);
                let mut on_nb = cx.derive(&[nab.clone(), nb.clone()]);
                on_nb.or_right(&na, &nb);
                Some(cases(
                    cx,
                    &[nab],
                    b,
                    &nb,
                    &on_b.finish(&target),
                    &on_nb.finish(&target),
                ))
            }
        ),
        law!("disjunctive-negation", "¬A∨B, ¬B |- ¬A", 2, |cx, v| {
            let (a, b) = (&v[0], &v[1]);
            let (na, nb) = (cx.neg(a), cx.neg(b));
            let keep = trivial(cx, &[nb.clone(), na.clone()], &na);
            let flip = reorder(cx, &negates_all(cx, b, a), &[nb.clone(), b.clone()]);
            let s = cases(cx, std::slice::from_ref(&nb), &na, b, &keep, &flip);
            Some(reorder(cx, &s, &[disj(&na, b), nb]))
        }),
        law!("refuted-implies-all", "if ¬A then |- A=>B", 2, |cx, v| {
            let (a, b) = (&v[0], &v[1]);
            let refuted = entail(cx, std::slice::from_ref(a), &f())?;
            let mut w = cx.derive(std::slice::from_ref(a));
            w.replay(&refuted);
            w.replay(&f_entails(cx, b));
            let mut d = cx.derive(&[]);
            let x = d.univ_by(w.finish(b));
            Some(d.finish(&x))
        }),
        law!("negation-implies-all", "¬A |- A=>B", 2, |cx, v| Some(
            neg_implies(cx, &v[0], &v[1])
        )),
        law!(
            "contradiction-implies-conditionals",
            "A, ¬A |- B=>C",
            3,
            |cx, v| {
                let (a, b, c) = (&v[0], &v[1], &v[2]);
                let mut d = cx.derive(&[a.clone(), cx.neg(a)]);
                let ac = d.replay(&neg_implies(cx, a, c));
                let ba = d.weaken(b, a);
                let x = d.trans(&ba, &ac);
                Some(d.finish(&x))
            }
        ),
        law!("refuted-disjunct", "if ¬A then A∨B |- B", 2, |cx, v| {
            let (a, b) = (&v[0], &v[1]);
            let refuted = entail(cx, std::slice::from_ref(a), &f())?;
            let mut on_a = cx.derive(std::slice::from_ref(a));
            on_a.replay(&refuted);
            on_a.replay(&f_entails(cx, b));
            Some(cases(
                cx,
                &[],
                a,
                b,
                &on_a.finish(b),
                &trivial(cx, std::slice::from_ref(b), b),
            ))
        }),
        law!(
            "negation-drops-disjunct",
            "¬A |- A∨B => B",
            2,
            |cx, v| {
                let (a, b) = (&v[0], &v[1]);
                let mut d = cx.derive(&[cx.neg(a)]);
                d.replay(&neg_implies(cx, a, b));
                d.univ(cx.imp(b, b));
                let x = join_antecedents(&mut d, a, b, b);
                Some(d.finish(&x))
            }
        ),
        law!("negated-disjunct-implies", "¬A∨B |- A=>B", 2, |cx, v| {
            let (a, b) = (&v[0], &v[1]);
            let mut on_b = cx.derive(std::slice::from_ref(b));
            let x = on_b.weaken(a, b);
            Some(cases(
                cx,
                &[],
                &cx.neg(a),
                b,
                &neg_implies(cx, a, b),
                &on_b.finish(&x),
            ))
        }),
        law!("explosion", "A, -A |- B", 2, |cx, v| Some(explosion(
            cx, &v[0], &v[1]
        ))),
        law!("falsum-implies-all", "F |- B", 1, |cx, v| Some(f_entails(
            cx, &v[0]
        ))),
        law!("strong-implies-weak-negation", "-A |- ¬A", 1, |cx, v| {
            let a = &v[0];
            let inner = reorder(cx, &explosion(cx, a, &f()), &[strong_neg(a), a.clone()]);
            Some(deduction_theorem(cx, &[strong_neg(a)], a, &inner))
        }),
        law!("falsum-disj-unit", "|- F∨A <=> A", 1, |cx, v| {
            let a = &v[0];
            let there = cases(
                cx,
                &[],
                &f(),
                a,
                &f_entails(cx, a),
                &trivial(cx, std::slice::from_ref(a), a),
            );
            let mut back = cx.derive(std::slice::from_ref(a));
            let x = back.or_right(&f(), a);
            Some(iff_script(cx, there, back.finish(&x)))
        }),
        law!("falsum-conj-zero", "|- F∧A <=> F", 1, |cx, v| {
            let a = &v[0];
            let fa = conj(&f(), a);
            let mut there = cx.derive(std::slice::from_ref(&fa));
            there.split(&fa);
            let mut back = cx.derive(&[f()]);
            back.replay(&f_entails(cx, a));
            back.and(&f(), a);
            Some(iff_script(cx, there.finish(&f()), back.finish(&fa)))
        }),
        law!("double-strong-negation", "|- A <=> --A", 1, |cx, v| {
            let a = &v[0];
            let nna = strong_neg(&strong_neg(a));
            let mut there = cx.derive(std::slice::from_ref(a));
            there.by(RuleId::DoubleNeg, &[a], nna.clone());
            let mut back = cx.derive(std::slice::from_ref(&nna));
            back.by(RuleId::DoubleNeg, &[&nna], a.clone());
            Some(iff_script(cx, there.finish(&nna), back.finish(a)))
        }),
        law!(
            "strong-demorgan-disj",
            "|- -(A∨B) <=> -A∧-B",
            2,
            |cx, v| {
                let (a, b) = (&v[0], &v[1]);
                let x = strong_neg(&disj(a, b));
                let y = conj(&strong_neg(a), &strong_neg(b));
                Some(iff_script(
                    cx,
                    demorgan_step(cx, &x, &y),
                    demorgan_step(cx, &y, &x),
                ))
            }
        ),
        law!(
            "strong-demorgan-conj",
            "|- -(A∧B) <=> -A∨-B",
            2,
            |cx, v| {
                let (a, b) = (&v[0], &v[1]);
                let x = strong_neg(&conj(a, b));
                let y = disj(&strong_neg(a), &strong_neg(b));
                Some(iff_script(
                    cx,
                    demorgan_step(cx, &x, &y),
                    demorgan_step(cx, &y, &x),
                ))
            }
        ),
        law!("material-implies-deductive", "A->B |- A=>B", 2, |cx, v| {
            let (a, b) = (&v[0], &v[1]);
            let na = strong_neg(a);
            let inner = reorder(cx, &explosion(cx, a, b), &[na.clone(), a.clone()]);
            let on_na = deduction_theorem(cx, std::slice::from_ref(&na), a, &inner);
            let mut on_b = cx.derive(std::slice::from_ref(b));
            let x = on_b.weaken(a, b);
            Some(cases(cx, &[], &na, b, &on_na, &on_b.finish(&x)))
        }),
        law!("material-weakening", "A |- B->A", 2, |cx, v| {
            let (a, b) = (&v[0], &v[1]);
            let mut d = cx.derive(std::slice::from_ref(a));
            let x = d.or_right(&strong_neg(b), a);
            Some(d.finish(&x))
        }),
        law!("material-falsum", "|- A->F <=> -A", 1, |cx, v| {
            let a = &v[0];
            let na = strong_neg(a);
            let there = cases(
                cx,
                &[],
                &na,
                &f(),
                &trivial(cx, std::slice::from_ref(&na), &na),
                &f_entails(cx, &na),
            );
            let mut back = cx.derive(std::slice::from_ref(&na));
            let x = back.or_left(&na, &f());
            Some(iff_script(cx, there, back.finish(&x)))
        }),
        law!(
            "material-contraposition",
            "|- A->B <=> -B->-A",
            2,
            |cx, v| {
                let (a, b) = (&v[0], &v[1]);
                let (na, nnb) = (strong_neg(a), strong_neg(&strong_neg(b)));
                let (ab, ba) = (material(a, b), material(&strong_neg(b), &na));
                let mut keep_na = cx.derive(std::slice::from_ref(&na));
                keep_na.or_right(&nnb, &na);
                let mut lift_b = cx.derive(std::slice::from_ref(b));
                lift_b.by(RuleId::DoubleNeg, &[b], nnb.clone());
                lift_b.or_left(&nnb, &na);
                let there = cases(cx, &[], &na, b, &keep_na.finish(&ba), &lift_b.finish(&ba));
                let mut drop_b = cx.derive(std::slice::from_ref(&nnb));
                drop_b.by(RuleId::DoubleNeg, &[&nnb], b.clone());
                drop_b.or_right(&na, b);
                let mut keep = cx.derive(std::slice::from_ref(&na));
                keep.or_left(&na, b);
                let back = cases(cx, &[], &nnb, &na, &drop_b.finish(&ab), &keep.finish(&ab));
                Some(iff_script(cx, there, back))
            }
        ),
        law!("material-transitive", "A->B, B->C |- A->C", 3, |cx, v| {
            let (a, b, c) = (&v[0], &v[1], &v[2]);
            let (na, nb) = (strong_neg(a), strong_neg(b));
            let (ab, bc, ac) = (material(a, b), material(b, c), material(a, c));
            let mut from_na = cx.derive(&[bc.clone(), na.clone()]);
            from_na.or_left(&na, c);
            let contra = reorder(cx, &explosion(cx, b, &ac), &[b.clone(), nb.clone()]);
            let mut from_c = cx.derive(&[b.clone(), c.clone()]);
            from_c.or_right(&na, c);
            let from_b = cases(
                cx,
                std::slice::from_ref(b),
                &nb,
                c,
                &contra,
                &from_c.finish(&ac),
            );
            let from_b = reorder(cx, &from_b, &[bc.clone(), b.clone()]);
            let s = cases(
                cx,
                std::slice::from_ref(&bc),
                &na,
                b,
                &from_na.finish(&ac),
                &from_b,
            );
            Some(reorder(cx, &s, &[ab, bc]))
        }),
        law!("material-modus-ponens", "A, A->B |- B", 2, |cx, v| Some(
            material_mp(cx, &v[0], &v[1])
        )),
        law!("material-cases", "A∨B, A->C, B->C |- C", 3, |cx, v| {
            let (a, b, c) = (&v[0], &v[1], &v[2]);
            let (ac, bc) = (material(a, c), material(b, c));
            let gamma = [ac.clone(), bc.clone()];
            let on = |x: &Datum| {
                let mut d = cx.derive(&[ac.clone(), bc.clone(), x.clone()]);
                d.replay(&material_mp(cx, x, c));
                d.finish(c)
            };
            let s = cases(cx, &gamma, a, b, &on(a), &on(b));
            Some(reorder(cx, &s, &[disj(a, b), ac, bc]))
        }),
        law!(
            "material-detachment",
            "if G |- A->B then G, A |- B",
            3,
            |cx, v| {
                let (g, a, b) = (&v[0], &v[1], &v[2]);
                let given = entail(cx, std::slice::from_ref(g), &material(a, b))?;
                let mut d = cx.derive(&[g.clone(), a.clone()]);
                d.replay(&given);
                d.replay(&material_mp(cx, a, b));
                Some(d.finish(b))
            }
        ),
        law!(
            "halting-refutation",
            "if ¬A then H(A) |- -A",
            1,
            |cx, v| {
                let a = &v[0];
                let na = strong_neg(a);
                let refuted = entail(cx, std::slice::from_ref(a), &f())?;
                let mut on_a = cx.derive(std::slice::from_ref(a));
                on_a.replay(&refuted);
                on_a.replay(&f_entails(cx, &na));
                Some(cases(
                    cx,
                    &[],
                    &na,
                    a,
                    &trivial(cx, std::slice::from_ref(&na), &na),
                    &on_a.finish(&na),
                ))
            }
        ),
        law!("halting-negation", "¬A |- H(A) => -A", 1, |cx, v| {
            let a = &v[0];
            let na = strong_neg(a);
            let mut d = cx.derive(&[cx.neg(a)]);
            let fna = d.univ_by(f_entails(cx, &na));
            d.trans(&cx.neg(a), &fna);
            d.univ(cx.imp(&na, &na));
            let x = join_antecedents(&mut d, &na, a, &na);
            Some(d.finish(&x))
        }),
        law!(
            "halting-deduction",
            "if G, A |- B then G, H(A) |- A->B",
            3,
            |cx, v| {
                let (g, a, b) = (&v[0], &v[1], &v[2]);
                let given = entail(cx, &[g.clone(), a.clone()], b)?;
                Some(halting_material(cx, std::slice::from_ref(g), a, b, &given))
            }
        ),
        law!(
            "halting-material",
            "if A=>B then H(A) |- A->B",
            2,
            |cx, v| {
                let (a, b) = (&v[0], &v[1]);
                let given = entail(cx, std::slice::from_ref(a), b)?;
                Some(halting_material(cx, &[], a, b, &given))
            }
        ),
        law!(
            "halting-conditional",
            "A=>B |- H(A) => (A->B)",
            2,
            |cx, v| {
                let (a, b) = (&v[0], &v[1]);
                let (na, ab) = (strong_neg(a), material(a, b));
                let mut d = cx.derive(&[cx.imp(a, b)]);
                let mut w = cx.derive(std::slice::from_ref(&na));
                w.or_left(&na, b);
                d.univ_by(w.finish(&ab));
                let mut w = cx.derive(std::slice::from_ref(b));
                w.or_right(&na, b);
                let bab = d.univ_by(w.finish(&ab));
                d.trans(&cx.imp(a, b), &bab);
                let x = join_antecedents(&mut d, &na, a, &ab);
                Some(d.finish(&x))
            }
        ),
        law!("halting-reflexive", "H(A) |- A->A", 1, |cx, v| {
            let a = &v[0];
            Some(trivial(cx, &[halts(a)], &material(a, a)))
        }),
        law!("halting-disj", "H(A) |- A -> A∨B", 2, |cx, v| {
            let (a, b) = (&v[0], &v[1]);
            let mut given = cx.derive(std::slice::from_ref(a));
            let x = given.or_left(a, b);
            Some(halting_material(cx, &[], a, &x, &given.finish(&x)))
        }),
        law!("halting-conj", "H(A), B |- A -> A∧B", 2, |cx, v| {
            let (a, b) = (&v[0], &v[1]);
            let mut given = cx.derive(&[b.clone(), a.clone()]);
            let x = given.and(a, b);
            let s = halting_material(cx, std::slice::from_ref(b), a, &x, &given.finish(&x));
            Some(reorder(cx, &s, &[halts(a), b.clone()]))
        }),
    ]
}

fn conj_monotone(
    cx: &LawContext<'_>,
    a: &Datum,
    b: &Datum,
    c: &Datum,
    c_first: bool,
) -> ProofScript {
    let ante = if c_first { conj(c, a) } else { conj(a, c) };
    let mut d = cx.derive(&[cx.imp(a, b)]);
    let to = |d: &mut Derivation<'_, '_>, x: &Datum| {
        let mut w = cx.derive(std::slice::from_ref(&ante));
        w.split(&ante);
        d.univ_by(w.finish(x))
    };
    let to_a = to(&mut d, a);
    let to_b = d.trans(&to_a, &cx.imp(a, b));
    let to_c = to(&mut d, c);
    let goal = if c_first { conj(c, b) } else { conj(b, c) };
    let x = cx.imp(&ante, &goal);
    if c_first {
        d.by(RuleId::MetaConj, &[&to_c, &to_b], x.clone());
    } else {
        d.by(RuleId::MetaConj, &[&to_b, &to_c], x.clone());
    }
    d.finish(&x)
}

fn swap_conj(cx: &LawContext<'_>, a: &Datum, b: &Datum) -> ProofScript {
    let mut d = cx.derive(&[conj(a, b)]);
    d.split(&conj(a, b));
    let x = d.and(b, a);
    d.finish(&x)
}

fn swap_disj(cx: &LawContext<'_>, a: &Datum, b: &Datum) -> ProofScript {
    let target = disj(b, a);
    let mut on_a = cx.derive(std::slice::from_ref(a));
    on_a.or_right(b, a);
    let mut on_b = cx.derive(std::slice::from_ref(b));
    on_b.or_left(b, a);
    cases(cx, &[], a, b, &on_a.finish(&target), &on_b.finish(&target))
}

/// `A∨(B∨C) |- (A∨B)∨C` when `to_left`, else the converse.
fn regroup_disj(
    cx: &LawContext<'_>,
    a: &Datum,
    b: &Datum,
    c: &Datum,
    to_left: bool,
) -> ProofScript {
    let (ab, bc) = (disj(a, b), disj(b, c));
    if to_left {
        let target = disj(&ab, c);
        let mut on_a = cx.derive(std::slice::from_ref(a));
        on_a.or_left(a, b);
        on_a.or_left(&ab, c);
        let mut on_b = cx.derive(std::slice::from_ref(b));
        on_b.or_right(a, b);
        on_b.or_left(&ab, c);
        let mut on_c = cx.derive(std::slice::from_ref(c));
        on_c.or_right(&ab, c);
        let on_bc = cases(cx, &[], b, c, &on_b.finish(&target), &on_c.finish(&target));
        cases(cx, &[], a, &bc, &on_a.finish(&target), &on_bc)
    } else {
        let target = disj(a, &bc);
        let mut on_a = cx.derive(std::slice::from_ref(a));
        on_a.or_left(a, &bc);
        let mut on_b = cx.derive(std::slice::from_ref(b));
        on_b.or_left(b, c);
        on_b.or_right(a, &bc);
        let mut on_c = cx.derive(std::slice::from_ref(c));
        on_c.or_right(b, c);
        on_c.or_right(a, &bc);
        let on_ab = cases(cx, &[], a, b, &on_a.finish(&target), &on_b.finish(&target));
        cases(cx, &[], &ab, c, &on_ab, &on_c.finish(&target))
    }
}

fn disj_monotone(
    cx: &LawContext<'_>,
    a: &Datum,
    b: &Datum,
    c: &Datum,
    c_first: bool,
) -> ProofScript {
    let target = if c_first { disj(c, b) } else { disj(b, c) };
    let mut d = cx.derive(&[cx.imp(a, b)]);
    let lift = |d: &mut Derivation<'_, '_>, x: &Datum| {
        let mut w = cx.derive(std::slice::from_ref(x));
        if c_first == (x == c) {
            w.or_left(x, if c_first { b } else { c });
        } else {
            w.or_right(if c_first { c } else { b }, x);
        }
        d.univ_by(w.finish(&target))
    };
    let b_to = lift(&mut d, b);
    d.trans(&cx.imp(a, b), &b_to);
    lift(&mut d, c);
    let x = if c_first {
        join_antecedents(&mut d, c, a, &target)
    } else {
        join_antecedents(&mut d, a, c, &target)
    };
    d.finish(&x)
}

fn neg_back(cx: &LawContext<'_>, a: &Datum, b: &Datum) -> ProofScript {
    let mut d = cx.derive(&[cx.imp(a, b), cx.neg(b)]);
    let x = d.trans(&cx.imp(a, b), &cx.neg(b));
    d.finish(&x)
}

/// `A, ¬A |- ¬B`.
fn negates_all(cx: &LawContext<'_>, a: &Datum, b: &Datum) -> ProofScript {
    let mut d = cx.derive(&[a.clone(), cx.neg(a)]);
    let ba = d.weaken(b, a);
    let x = d.trans(&ba, &cx.neg(a));
    d.finish(&x)
}

/// `¬(A∧B), B |- ¬A`.
fn negated_conjunct(cx: &LawContext<'_>, a: &Datum, b: &Datum) -> ProofScript {
    let nab = cx.neg(&conj(a, b));
    let mut d = cx.derive(&[nab.clone(), b.clone()]);
    let a_ba = d.replay(&pair_under(cx, b, a));
    let swap = d.univ_by(swap_conj(cx, b, a));
    let a_ab = d.trans(&a_ba, &swap);
    let x = d.trans(&a_ab, &nab);
    d.finish(&x)
}

/// `¬A |- A=>B`.
fn neg_implies(cx: &LawContext<'_>, a: &Datum, b: &Datum) -> ProofScript {
    let mut d = cx.derive(&[cx.neg(a)]);
    let fb = d.univ_by(f_entails(cx, b));
    let x = d.trans(&cx.neg(a), &fb);
    d.finish(&x)
}

/// `A, -A |- B`.
fn explosion(cx: &LawContext<'_>, a: &Datum, b: &Datum) -> ProofScript {
    let mut d = cx.derive(&[a.clone(), strong_neg(a)]);
    explode(&mut d, a, b);
    d.finish(b)
}

/// `A, A->B |- B`.
fn material_mp(cx: &LawContext<'_>, a: &Datum, b: &Datum) -> ProofScript {
    let na = strong_neg(a);
    let s = cases(
        cx,
        std::slice::from_ref(a),
        &na,
        b,
        &explosion(cx, a, b),
        &trivial(cx, &[a.clone(), b.clone()], b),
    );
    reorder(cx, &s, &[a.clone(), material(a, b)])
}

fn demorgan_step(cx: &LawContext<'_>, from: &Datum, to: &Datum) -> ProofScript {
    let mut d = cx.derive(std::slice::from_ref(from));
    d.by(RuleId::StrongDemorgan, &[from], to.clone());
    d.finish(to)
}

/// From `gamma, A |- B`, a script for `gamma, H(A) |- A->B`.
fn halting_material(
    cx: &LawContext<'_>,
    gamma: &[Datum],
    a: &Datum,
    b: &Datum,
    given: &ProofScript,
) -> ProofScript {
    let na = strong_neg(a);
    let target = material(a, b);
    let mut with = gamma.to_vec();
    with.push(na.clone());
    let mut on_na = cx.derive(&with);
    on_na.or_left(&na, b);
    with.pop();
    with.push(a.clone());
    let mut on_a = cx.derive(&with);
    on_a.replay(given);
    on_a.or_right(&na, b);
    cases(
        cx,
        gamma,
        &na,
        a,
        &on_na.finish(&target),
        &on_a.finish(&target),
    )
}

/// The statements laws are instantiated over.
pub fn test_pool() -> Vec<Datum> {
    let looping = raw::stmt(Datum::prog(ProgramId::Loop), 0.into(), 0.into());
    vec![
        t(),
        f(),
        strong_neg(&f()),
        looping.clone(),
        conj(&t(), &f()),
        disj(&t(), &looping),
    ]
}

/// Result of one law over the pool.
#[derive(Clone, Debug)]
pub struct LawOutcome {
    pub name: &'static str,
    pub statement: &'static str,
    pub instances: usize,
    pub certified: usize,
    /// Instances whose side condition could not be established.
    pub skipped: usize,
    pub failures: Vec<(Vec<Datum>, Certification)>,
}

impl LawOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.certified > 0
    }
}

#[derive(Clone, Debug)]
pub struct LawReport {
    pub outcomes: Vec<LawOutcome>,
}

impl LawReport {
    pub fn all_certified(&self) -> bool {
        self.outcomes.iter().all(LawOutcome::passed)
    }
}

/// The B₀ library every law is checked against.
pub fn base_library() -> Datum {
    library_of(&RuleId::BASE)
}

/// Certify every law for every instantiation drawn from [`test_pool`].
pub fn run_law_suite(universe: Universe, fuel: u64, filter: Option<&str>) -> LawReport {
    let machine = Machine::new(universe);
    let cx = LawContext::new(&machine, base_library(), fuel).expect("base library");
    let pool = test_pool();
    let outcomes = laws()
        .into_iter()
        .filter(|law| filter.is_none_or(|f| law.name.contains(f)))
        .map(|law| run_law(&cx, &law, &pool))
        .collect();
    LawReport { outcomes }
}

pub fn run_law(cx: &LawContext<'_>, law: &Law, pool: &[Datum]) -> LawOutcome {
    let mut out = LawOutcome {
        name: law.name,
        statement: law.statement,
        instances: 0,
        certified: 0,
        skipped: 0,
        failures: Vec::new(),
    };
    for inst in instances(pool, law.arity) {
        out.instances += 1;
        match (law.build)(cx, &inst) {
            None => out.skipped += 1,
            Some(script) => match cx.certify(&script) {
                Certification::Certified => out.certified += 1,
                failed => out.failures.push((inst, failed)),
            },
        }
    }
    out
}

fn instances(pool: &[Datum], arity: usize) -> Vec<Vec<Datum>> {
    let mut all = vec![Vec::new()];
    for _ in 0..arity {
        all = all
            .into_iter()
            .flat_map(|prefix| {
                pool.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect();
    }
    all
}

/// The Curry statement of `rho` with one-step scripts for both directions.
pub struct CurryFixedPoint {
    pub statement: Datum,
    pub forward: ProofScript,
    pub backward: ProofScript,
}

pub fn curry_fixed_point(rho: &Datum) -> Result<CurryFixedPoint, LawError> {
    let rules = library_rules(rho).ok_or_else(|| LawError::NotALibrary(rho.clone()))?;
    let k = rules
        .iter()
        .position(|r| rule_id(r) == Some(RuleId::BetaCurry))
        .ok_or(LawError::MissingRule(RuleId::BetaCurry))? as u64
        + 1;
    let q = raw::curry_fixed_point(rho);
    let nq = raw::neg(rho, &q);
    let step = |from: &Datum, to: &Datum| ProofScript {
        goal: to.clone(),
        hypotheses: vec![from.clone()],
        steps: vec![ProofStep::new(k, 1, vec![0], to.clone())],
    };
    Ok(CurryFixedPoint {
        forward: step(&q, &nq),
        backward: step(&nq, &q),
        statement: q,
    })
}

/// What executing a Curry-style paradox produced.
#[derive(Clone, Debug)]
pub struct ParadoxDemo {
    pub rule: RuleId,
    pub library: Datum,
    pub curry: Datum,
    pub curry_truth: Result<TruthVerdict, MachineError>,
    pub negation_truth: Result<TruthVerdict, MachineError>,
    pub derivation: Result<Deduction, DeduceError>,
    pub falsum_truth: Result<TruthVerdict, MachineError>,
}

impl ParadoxDemo {
    /// A true hypothesis derives the directly false `F`.
    pub fn exhibits_unsoundness(&self) -> bool {
        matches!(self.curry_truth, Ok(TruthVerdict::True))
            && matches!(self.negation_truth, Ok(TruthVerdict::True))
            && matches!(self.derivation, Ok(Deduction::ProvedAtStage { .. }))
            && matches!(self.falsum_truth, Ok(TruthVerdict::DirectlyFalse))
    }
}

/// Library and universe a paradox demonstration runs in.
pub fn paradox_setting(p: RuleId) -> Result<(Datum, Universe), LawError> {
    match p {
        RuleId::P1 | RuleId::P3 => Ok((library_of(&[RuleId::BetaCurry, p]), Universe::full())),
        RuleId::P6 => Ok((
            library_of(&[RuleId::BetaCurry, p, RuleId::DisjIntro]),
            Universe::reduced(),
        )),
        _ => Err(LawError::Unsupported(p)),
    }
}

/// Run the Curry paradox for one of P1, P3 or P6.
pub fn paradox_demo(p: RuleId, fuel: u64) -> Result<ParadoxDemo, LawError> {
    let (library, universe) = paradox_setting(p)?;
    let machine = Machine::new(universe);
    let q = raw::curry_fixed_point(&library);
    let truth = |d: &Datum| {
        let s = Statement::new(d.clone()).expect("statement");
        evaluate_truth(&machine, &s, fuel)
    };
    Ok(ParadoxDemo {
        rule: p,
        curry_truth: truth(&q),
        negation_truth: truth(&raw::neg(&library, &q)),
        derivation: deduce_faithful(&machine, std::slice::from_ref(&q), &library, &f(), fuel),
        falsum_truth: truth(&f()),
        curry: q,
        library,
    })
}

/// Certified derivations exhibiting a paradoxical rule's instability.
#[derive(Clone, Debug)]
pub struct ParadoxScripts {
    pub rule: RuleId,
    pub library: Datum,
    /// Each script with a short description of what it reaches.
    pub scripts: Vec<(&'static str, ProofScript)>,
}

impl ParadoxScripts {
    pub fn certify(&self, machine: &Machine, fuel: u64) -> Vec<Certification> {
        self.scripts
            .iter()
            .map(|(_, s)| certify(machine, s, &self.library, fuel))
            .collect()
    }
}

/// Library for a certified paradox: the base, any helper rules, then `p`.
fn extended(helpers: &[RuleId], p: RuleId) -> Datum {
    let mut ids = RuleId::BASE.to_vec();
    ids.extend_from_slice(helpers);
    ids.push(p);
    library_of(&ids)
}

/// Scripts transcribing why each of P1 to P14 cannot sit in a stable base.
pub fn certified_paradox(
    machine: &Machine,
    p: RuleId,
    fuel: u64,
) -> Result<ParadoxScripts, LawError> {
    if !p.is_paradoxical() {
        return Err(LawError::Unsupported(p));
    }
    let helpers: &[RuleId] = match p {
        RuleId::P11 => &[RuleId::ConjContra],
        RuleId::P13 | RuleId::P14 => &[RuleId::RIntro],
        _ => &[RuleId::BetaCurry],
    };
    let library = extended(helpers, p);
    let cx = LawContext::new(machine, library.clone(), fuel)?;
    let q = raw::curry_fixed_point(&library);
    let nq = cx.neg(&q);
    // From the Curry statement alone, its negation is one BETA_CURRY step away.
    let from_q = || {
        let mut d = cx.derive(std::slice::from_ref(&q));
        d.by(RuleId::BetaCurry, &[&q], nq.clone());
        d
    };
    let mut scripts = Vec::new();
    match p {
        RuleId::P1 | RuleId::P2 | RuleId::P3 => {
            let mut d = from_q();
            let premises: [&Datum; 2] = if p == RuleId::P3 {
                [&nq, &q]
            } else {
                [&q, &nq]
            };
            d.by(p, &premises, f());
            scripts.push(("F from the Curry statement", d.finish(&f())));
        }
        RuleId::P4 => {
            let mut d = from_q();
            let qq = d.or_left(&q, &q);
            d.by(p, &[&nq, &qq], f());
            scripts.push(("F from the Curry statement", d.finish(&f())));
        }
        RuleId::P5 => {
            let mut d = from_q();
            let nf_q = d.weaken(&cx.neg(&f()), &q);
            d.trans(&nf_q, &nq);
            d.by(p, &[&cx.neg(&cx.neg(&f()))], f());
            scripts.push(("F from the Curry statement", d.finish(&f())));
        }
        RuleId::P6 => {
            let mut d = from_q();
            let qf = d.or_left(&q, &f());
            d.by(p, &[&qf, &nq], f());
            scripts.push(("F from the Curry statement", d.finish(&f())));
        }
        RuleId::P7 => {
            let mut d = from_q();
            let nqf = d.or_left(&nq, &f());
            d.by(p, &[&nqf, &q], f());
            scripts.push(("F from the Curry statement", d.finish(&f())));
        }
        RuleId::P8 => {
            let mut d = cx.derive(&[]);
            let x = d.by(p, &[], disj(&q, &nq));
            scripts.push(("excluded middle for the Curry statement", d.finish(&x)));
        }
        RuleId::P9 => {
            let mut d = cx.derive(&[]);
            let x = d.by(p, &[], disj(&nq, &cx.neg(&nq)));
            scripts.push(("weak excluded middle for the Curry statement", d.finish(&x)));
        }
        RuleId::P10 => {
            let mut d = cx.derive(&[]);
            let q_nq = d.univ_by(from_q().finish(&nq));
            let x = d.by(p, &[&q_nq], disj(&nq, &nq));
            scripts.push((
                "a disjunction of two copies of the Curry negation",
                d.finish(&x),
            ));
        }
        RuleId::P11 => {
            let beta = Datum::alg(ProgramId::BetaHaltWitness, vec![library.clone()]);
            let b = raw::stmt(beta.clone(), beta, 1.into());
            let contra = conj(&b, &strong_neg(&b));
            let mut w = cx.derive(std::slice::from_ref(&contra));
            w.by(RuleId::ConjContra, &[&contra], f());
            let mut d = cx.derive(&[]);
            let refuted = d.univ_by(w.finish(&f()));
            let x = d.by(p, &[&refuted], disj(&cx.neg(&b), &cx.neg(&strong_neg(&b))));
            scripts.push((
                "the disjunction that makes the halting witness halt on itself",
                d.finish(&x),
            ));
        }
        RuleId::P12 => {
            let mut d = cx.derive(&[]);
            let truth = d.univ(t());
            let x = d.by(p, &[&truth], cx.neg(&cx.neg(&t())));
            scripts.push(("double negation of T", d.finish(&x)));
            let mut d = from_q();
            let tq = d.weaken(&t(), &q);
            let x = d.trans(&tq, &nq);
            scripts.push(("negation of T from the Curry statement", d.finish(&x)));
        }
        RuleId::P13 | RuleId::P14 => {
            let r = raw::r_statement(&library);
            let pf = cx.prove(&f());
            let mut d = cx.derive(std::slice::from_ref(&r));
            let r_pf = d.by(RuleId::RIntro, &[&r], cx.imp(&r, &pf));
            let tr = d.weaken(&t(), &r);
            let ppf = d.trans(&tr, &r_pf);
            let x = d.by(p, &[&ppf], pf.clone());
            if p == RuleId::P13 {
                d.by(p, &[&x], f());
                scripts.push((
                    "F from the self-referential provability statement",
                    d.finish(&f()),
                ));
            } else {
                scripts.push((
                    "provability of F from the self-referential statement",
                    d.finish(&x),
                ));
            }
        }
        _ => unreachable!("all paradoxical rules are covered"),
    }
    Ok(ParadoxScripts {
        rule: p,
        library,
        scripts,
    })
}

/// Outcome of the stronger-library construction.
#[derive(Clone, Debug)]
pub struct StrongerLibrary {
    pub weaker: Datum,
    pub stronger: Datum,
    pub denied: Datum,
    /// `C |- F` under the stronger library.
    pub stronger_run: Result<Deduction, DeduceError>,
    /// `C |- F` under the weaker library, bounded by the given fuel.
    pub weaker_run: Result<Deduction, DeduceError>,
}

/// Extend the B₀ library by `MP_FIXED(B₀)`, `DENY(C)` and UNIV for a
/// non-halting `C`, and compare `C |- F` under both.
pub fn stronger_library_demo(fuel: u64) -> StrongerLibrary {
    let machine = Machine::default();
    let weaker = base_library();
    let denied = raw::stmt(Datum::prog(ProgramId::Loop), 0.into(), 0.into());
    let stronger = make_library(vec![
        mp_fixed(weaker.clone()),
        deny(denied.clone()),
        rule_datum(RuleId::Univ),
    ])
    .expect("rule list");
    let gamma = std::slice::from_ref(&denied);
    StrongerLibrary {
        stronger_run: deduce_faithful(&machine, gamma, &stronger, &f(), fuel),
        weaker_run: deduce_faithful(&machine, gamma, &weaker, &f(), fuel),
        weaker,
        stronger,
        denied,
    }
}

/// Truth verdicts of `Q`, `¬Q`, `¬¬Q` for the Curry statement of `rho`, and
/// of `F` as a sanity check of the harness.
pub fn curry_evidence(
    machine: &Machine,
    rho: &Datum,
    fuel: u64,
) -> Result<[TruthVerdict; 4], MachineError> {
    let q = raw::curry_fixed_point(rho);
    let nq = raw::neg(rho, &q);
    let nnq = raw::neg(rho, &nq);
    let mut out = [TruthVerdict::Unknown(0); 4];
    for (slot, d) in out.iter_mut().zip([q, nq, nnq, f()]) {
        *slot = evaluate_truth(machine, &Statement::new(d).expect("statement"), fuel)?;
    }
    Ok(out)
}

/// Run the halting witness for `rho` on itself at each budget.
pub fn halting_witness_evidence(
    rho: &Datum,
    budgets: &[u64],
) -> Result<Vec<RunResult>, MachineError> {
    let machine = Machine::default();
    let beta = Datum::alg(ProgramId::BetaHaltWitness, vec![rho.clone()]);
    budgets
        .iter()
        .map(|&fuel| machine.run(&beta, &beta, fuel))
        .collect()
}
