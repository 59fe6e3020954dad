//! The rule catalog. Each rule is a registered program taking `[H, rho, m]`
//! and returning `H` followed by the new conclusions in canonical order.

use std::collections::{HashMap, HashSet};

use crate::datum::{canonical_compare, Datum};
use crate::ids::{ProgramId, RuleId};
use crate::machine::{finish, Frame, Machine, MachineError, RunResult, Stop};
use crate::statements::raw::{self, *};

/// The algorithm datum of a rule.
pub fn rule_datum(id: RuleId) -> Datum {
    Datum::prog(ProgramId::Rule(id))
}

/// `MP_FIXED` closed over the library `rho1`.
pub fn mp_fixed(rho1: Datum) -> Datum {
    Datum::alg(ProgramId::Rule(RuleId::MpFixed), vec![rho1])
}

/// `DENY` closed over the statement `c`.
pub fn deny(c: Datum) -> Datum {
    Datum::alg(ProgramId::Rule(RuleId::Deny), vec![c])
}

/// The rule id of a rule datum.
pub fn rule_id(d: &Datum) -> Option<RuleId> {
    match d.as_alg()? {
        (ProgramId::Rule(r), caps) if caps.len() == r.arity() => Some(r),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuleError {
    #[error("fuel exhausted after {0} steps")]
    FuelExhausted(u64),
    #[error("{0:?} is not a rule")]
    NotARule(Datum),
    #[error(transparent)]
    Machine(#[from] MachineError),
}

/// Apply a rule datum to `[H, rho, m]` under a fuel budget.
pub fn apply_rule(
    machine: &Machine,
    rule: &Datum,
    h: &[Datum],
    rho: &Datum,
    m: u64,
    fuel: u64,
) -> Result<Vec<Datum>, RuleError> {
    if rule_id(rule).is_none() {
        return Err(RuleError::NotARule(rule.clone()));
    }
    let input = Datum::list(vec![Datum::list(h.to_vec()), rho.clone(), Datum::Nat(m)]);
    match machine.run(rule, &input, fuel)? {
        RunResult::Halted { output, .. } => Ok(output
            .as_list()
            .map(<[Datum]>::to_vec)
            .unwrap_or_else(|| vec![output])),
        RunResult::OutOfFuel { consumed } => Err(RuleError::FuelExhausted(consumed)),
    }
}

struct Appender<'h> {
    members: HashSet<&'h Datum>,
    fresh: HashSet<Datum>,
}

impl<'h> Appender<'h> {
    fn push(&mut self, fr: &mut Frame<'_>, d: Datum) -> Result<(), Stop> {
        fr.tick(1)?;
        if !self.members.contains(&d) {
            self.fresh.insert(d);
        }
        Ok(())
    }

    fn finish(self, h: &[Datum]) -> Datum {
        let mut fresh: Vec<Datum> = self.fresh.into_iter().collect();
        fresh.sort_by(canonical_compare);
        let mut out = h.to_vec();
        out.extend(fresh);
        Datum::list(out)
    }
}

pub(crate) fn run(
    fr: &mut Frame<'_>,
    rule: RuleId,
    caps: &[Datum],
    input: &Datum,
) -> Result<Datum, Stop> {
    let Some([h, rho, m]) = input.as_list() else {
        return Ok(input.clone());
    };
    let (Some(h), Some(m)) = (h.as_list(), m.as_nat()) else {
        return Ok(input.clone());
    };
    if m == 0 {
        return Ok(input.clone());
    }
    let mut out = Appender {
        members: h.iter().collect(),
        fresh: HashSet::new(),
    };
    let mut cx = Cx {
        rho,
        m,
        stmts: Vec::new(),
    };
    for d in h {
        fr.tick(1)?;
        if d.is_statement() {
            cx.stmts.push(d);
        }
    }
    cx.apply(fr, rule, caps, &mut out)?;
    Ok(out.finish(h))
}

struct Cx<'h> {
    rho: &'h Datum,
    m: u64,
    stmts: Vec<&'h Datum>,
}

impl<'h> Cx<'h> {
    fn has(&self, out: &Appender<'_>, d: &Datum) -> bool {
        out.members.contains(d)
    }

    fn implications(&self) -> Vec<(&'h Datum, &'h Datum)> {
        self.stmts
            .iter()
            .filter_map(|d| match_implies(d, self.rho))
            .collect()
    }

    fn by_antecedent(&self) -> HashMap<&'h Datum, Vec<&'h Datum>> {
        let mut map: HashMap<&Datum, Vec<&Datum>> = HashMap::new();
        for (a, b) in self.implications() {
            map.entry(a).or_default().push(b);
        }
        map
    }

    fn disjunctions(&self) -> Vec<(&'h Datum, &'h Datum)> {
        self.stmts.iter().filter_map(|d| match_disj(d)).collect()
    }

    /// Universe statements of size at most `max`, in canonical order.
    fn universe_statements(&self, fr: &mut Frame<'_>, max: u64) -> Result<Vec<Datum>, Stop> {
        let mut all = Vec::new();
        for s in 5..=max {
            let plan = fr.machine.statement_plan(s)?;
            plan.try_for_each(|x| {
                fr.tick(1)?;
                all.push(x);
                Ok::<_, Stop>(())
            })?;
        }
        Ok(all)
    }

    fn apply(
        &self,
        fr: &mut Frame<'_>,
        rule: RuleId,
        caps: &[Datum],
        out: &mut Appender<'h>,
    ) -> Result<(), Stop> {
        let (rho, m) = (self.rho, self.m);
        match rule {
            RuleId::Trans => {
                let by_ante = self.by_antecedent();
                for (a, mid) in self.implications() {
                    for c in by_ante.get(mid).into_iter().flatten() {
                        out.push(fr, implies(a, rho, c))?;
                    }
                }
            }
            RuleId::Univ => {
                for s in 5..=m {
                    let plan = fr.machine.statement_plan(s)?;
                    plan.try_for_each(|x| {
                        if fr.m_true(&x, m)? {
                            out.push(fr, x)?;
                        }
                        Ok::<_, Stop>(())
                    })?;
                }
            }
            RuleId::MetaUniv => {
                let overhead = 7 + rho.size();
                let bound = |b: &Datum| m.checked_sub(overhead + b.size());
                let Some(max) = self.stmts.iter().filter_map(|b| bound(b)).max() else {
                    return Ok(());
                };
                let pool = self.universe_statements(fr, max)?;
                for b in &self.stmts {
                    let Some(limit) = bound(b) else { continue };
                    for a in pool.iter().take_while(|a| a.size() <= limit) {
                        out.push(fr, implies(a, rho, b))?;
                    }
                }
            }
            RuleId::Conj => {
                let mut small: Vec<&Datum> = self
                    .stmts
                    .iter()
                    .copied()
                    .filter(|d| d.size() + 11 <= m)
                    .collect();
                small.sort_by_key(|d| d.size());
                for a in &small {
                    for b in small.iter().take_while(|b| a.size() + b.size() + 6 <= m) {
                        out.push(fr, conj(a, b))?;
                    }
                }
                for d in &self.stmts {
                    if let Some((a, b)) = match_conj(d) {
                        out.push(fr, a.clone())?;
                        out.push(fr, b.clone())?;
                    }
                }
            }
            RuleId::MetaConj => {
                for (a, cs) in self.by_antecedent() {
                    for b in &cs {
                        for c in &cs {
                            out.push(fr, implies(a, rho, &conj(b, c)))?;
                        }
                    }
                }
            }
            RuleId::DisjIntro => {
                let bound = |x: &Datum| m.checked_sub(6 + x.size());
                let Some(max) = self.stmts.iter().filter_map(|x| bound(x)).max() else {
                    return Ok(());
                };
                let mut pool = self.universe_statements(fr, max)?;
                pool.extend(self.stmts.iter().map(|&d| d.clone()));
                pool.sort_by_key(Datum::size);
                for x in &self.stmts {
                    let Some(limit) = bound(x) else { continue };
                    for y in pool.iter().take_while(|y| y.size() <= limit) {
                        out.push(fr, disj(x, y))?;
                        out.push(fr, disj(y, x))?;
                    }
                }
            }
            RuleId::DElim => {
                let by_ante = self.by_antecedent();
                let deduce = Datum::prog(ProgramId::Deduce);
                for (a, b) in self.disjunctions() {
                    for g in &self.stmts {
                        fr.tick(1)?;
                        let (ga, gb) = (conj(g, a), conj(g, b));
                        let (Some(ca), Some(cb)) = (by_ante.get(&ga), by_ante.get(&gb)) else {
                            continue;
                        };
                        for c in ca.iter().filter(|c| cb.contains(c)) {
                            let mut verified = true;
                            for ante in [&ga, &gb] {
                                let input = Datum::list(vec![
                                    Datum::list(vec![ante.clone()]),
                                    rho.clone(),
                                    (*c).clone(),
                                ]);
                                let r = fr.spawn_bounded(&deduce, &input, m - 1)?;
                                verified &= r == Some(Datum::Nat(1));
                                if !verified {
                                    break;
                                }
                            }
                            if verified {
                                out.push(fr, (*c).clone())?;
                            }
                        }
                    }
                }
            }
            RuleId::MetaDisj => {
                let mut groups: HashMap<(&Datum, &Datum), Vec<&Datum>> = HashMap::new();
                for (ante, c) in self.implications() {
                    if let Some((g, a)) = match_conj(ante) {
                        groups.entry((g, c)).or_default().push(a);
                    }
                }
                for ((g, c), alts) in groups {
                    for a in &alts {
                        for b in &alts {
                            out.push(fr, implies(&conj(g, &disj(a, b)), rho, c))?;
                        }
                    }
                }
            }
            RuleId::ElimCase => {
                for (a, b) in self.disjunctions() {
                    if self.has(out, &strong_neg(a)) {
                        out.push(fr, b.clone())?;
                    }
                }
            }
            RuleId::DoubleNeg => {
                for d in &self.stmts {
                    if d.size() + 10 <= m {
                        out.push(fr, strong_neg(&strong_neg(d)))?;
                    }
                    if let Some(a) = match_strong_neg(d).and_then(match_strong_neg) {
                        out.push(fr, a.clone())?;
                    }
                }
            }
            RuleId::StrongDemorgan => {
                for d in &self.stmts {
                    if let Some(inner) = match_strong_neg(d) {
                        if let Some((a, b)) = match_disj(inner) {
                            out.push(fr, conj(&strong_neg(a), &strong_neg(b)))?;
                        }
                        if let Some((a, b)) = match_conj(inner) {
                            out.push(fr, disj(&strong_neg(a), &strong_neg(b)))?;
                        }
                    }
                    if let Some((x, y)) = match_conj(d) {
                        if let (Some(a), Some(b)) = (match_strong_neg(x), match_strong_neg(y)) {
                            out.push(fr, strong_neg(&disj(a, b)))?;
                        }
                    }
                    if let Some((x, y)) = match_disj(d) {
                        if let (Some(a), Some(b)) = (match_strong_neg(x), match_strong_neg(y)) {
                            out.push(fr, strong_neg(&conj(a, b)))?;
                        }
                    }
                }
            }
            RuleId::BetaCurry => {
                for d in &self.stmts {
                    if let Some((alpha, r)) = match_curry(d) {
                        if r == rho {
                            out.push(fr, neg(rho, &self_apply(alpha, rho)))?;
                        }
                    }
                    if let Some((alpha, r)) = match_neg(d, rho).and_then(match_self_apply) {
                        if r == rho && alpha.is_alg() {
                            out.push(fr, raw::curry(alpha, rho))?;
                        }
                    }
                }
            }
            RuleId::MpFixed => {
                let rho1 = &caps[0];
                for d in &self.stmts {
                    if let Some((a, b)) = match_implies(d, rho1) {
                        if self.has(out, a) {
                            out.push(fr, b.clone())?;
                        }
                    }
                }
            }
            RuleId::Deny => {
                if self.has(out, &caps[0]) {
                    out.push(fr, f())?;
                }
            }
            RuleId::ConjContra => {
                for d in &self.stmts {
                    if let Some((a, n)) = match_conj(d) {
                        if match_strong_neg(n) == Some(a) {
                            out.push(fr, f())?;
                        }
                    }
                }
            }
            RuleId::RIntro => {
                let r = r_statement(rho);
                if self.has(out, &r) {
                    out.push(fr, implies(&r, rho, &prove(rho, &f())))?;
                }
            }
            RuleId::P1 | RuleId::P2 => {
                let contradiction = self
                    .stmts
                    .iter()
                    .any(|d| match_neg(d, rho).is_some_and(|a| self.has(out, a)));
                if contradiction {
                    if rule == RuleId::P1 {
                        out.push(fr, f())?;
                    } else {
                        for b in self.universe_statements(fr, m)? {
                            out.push(fr, b)?;
                        }
                    }
                }
            }
            RuleId::P3 => {
                for (a, b) in self.implications() {
                    if self.has(out, a) {
                        out.push(fr, b.clone())?;
                    }
                }
            }
            RuleId::P4 => {
                let by_ante = self.by_antecedent();
                for (a, b) in self.disjunctions() {
                    let (Some(ca), Some(cb)) = (by_ante.get(a), by_ante.get(b)) else {
                        continue;
                    };
                    for c in ca.iter().filter(|c| cb.contains(c)) {
                        out.push(fr, (*c).clone())?;
                    }
                }
            }
            RuleId::P5 => {
                for d in &self.stmts {
                    if let Some(a) = match_neg(d, rho).and_then(|x| match_neg(x, rho)) {
                        out.push(fr, a.clone())?;
                    }
                }
            }
            RuleId::P6 => {
                for (a, b) in self.disjunctions() {
                    if self.has(out, &neg(rho, a)) {
                        out.push(fr, b.clone())?;
                    }
                }
            }
            RuleId::P7 => {
                for (na, b) in self.disjunctions() {
                    if match_neg(na, rho).is_some_and(|a| self.has(out, a)) {
                        out.push(fr, b.clone())?;
                    }
                }
            }
            RuleId::P8 | RuleId::P9 => {
                // The conclusion is at least twice the size of A.
                let max = m.saturating_sub(19 + rho.size()) / 2;
                for a in self.universe_statements(fr, max)? {
                    let na = neg(rho, &a);
                    let c = if rule == RuleId::P8 {
                        disj(&a, &na)
                    } else {
                        disj(&na, &neg(rho, &na))
                    };
                    if c.size() <= m {
                        out.push(fr, c)?;
                    }
                }
            }
            RuleId::P10 => {
                for (a, b) in self.implications() {
                    out.push(fr, disj(&neg(rho, a), b))?;
                }
            }
            RuleId::P11 => {
                for d in &self.stmts {
                    if let Some((a, b)) = match_neg(d, rho).and_then(match_conj) {
                        out.push(fr, disj(&neg(rho, a), &neg(rho, b)))?;
                    }
                }
            }
            RuleId::P12 => {
                for d in &self.stmts {
                    out.push(fr, neg(rho, &neg(rho, d)))?;
                }
            }
            RuleId::P13 => {
                for d in &self.stmts {
                    if let Some(a) = match_prove(d, rho) {
                        out.push(fr, a.clone())?;
                    }
                }
            }
            RuleId::P14 => {
                for d in &self.stmts {
                    if let Some(inner) = match_prove(d, rho) {
                        if match_prove(inner, rho).is_some() {
                            out.push(fr, inner.clone())?;
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Run a rule program directly on raw `[H, rho, m]` input; used by tests.
pub fn run_rule_raw(
    machine: &Machine,
    rule: &Datum,
    input: &Datum,
    fuel: u64,
) -> Result<RunResult, MachineError> {
    let ex = machine.exec(rule, input, fuel, false);
    finish(ex.result, ex.used)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::Universe;

    fn lib(rules: &[Datum]) -> Datum {
        Datum::alg(ProgramId::LibFromList, vec![Datum::list(rules.to_vec())])
    }

    fn apply(id: RuleId, h: &[Datum], rho: &Datum, m: u64) -> Vec<Datum> {
        apply_rule(
            &Machine::new(Universe::reduced()),
            &rule_datum(id),
            h,
            rho,
            m,
            100_000,
        )
        .unwrap()
    }

    #[test]
    fn conj_introduces_all_pairs_within_size() {
        let rho = lib(&[rule_datum(RuleId::Conj)]);
        let out = apply(RuleId::Conj, &[t(), f()], &rho, 20);
        assert_eq!(&out[..2], &[t(), f()]);
        let added: HashSet<_> = out[2..].iter().cloned().collect();
        let expect: HashSet<_> = [
            conj(&t(), &f()),
            conj(&f(), &t()),
            conj(&t(), &t()),
            conj(&f(), &f()),
        ]
        .into_iter()
        .collect();
        assert_eq!(added, expect);
        assert_eq!(out.len(), 6);
        // sizes 16, 17, 17, 18: m = 16 admits only T and T
        assert_eq!(
            apply(RuleId::Conj, &[t(), f()], &rho, 16)[2..],
            [conj(&t(), &t())]
        );
    }

    #[test]
    fn elim_case_example() {
        let rho = Datum::Nat(0);
        let h = [disj(&f(), &t()), strong_neg(&f())];
        let out = apply(RuleId::ElimCase, &h, &rho, 1);
        assert_eq!(out, [h[0].clone(), h[1].clone(), t()]);
    }

    #[test]
    fn trans_on_empty() {
        assert!(apply(RuleId::Trans, &[], &Datum::Nat(0), 1).is_empty());
    }

    #[test]
    fn beta_curry_fixed_point() {
        let rho = lib(&[rule_datum(RuleId::BetaCurry), rule_datum(RuleId::P1)]);
        let q = curry_fixed_point(&rho);
        let out = apply(RuleId::BetaCurry, std::slice::from_ref(&q), &rho, 1);
        assert_eq!(out, [q.clone(), neg(&rho, &q)]);
        let back = apply(RuleId::BetaCurry, &[neg(&rho, &q)], &rho, 1);
        assert_eq!(back, [neg(&rho, &q), q.clone()]);
        // a different nominal library does not match
        let other = lib(&[rule_datum(RuleId::BetaCurry)]);
        assert_eq!(
            apply(RuleId::BetaCurry, std::slice::from_ref(&q), &other, 1),
            [q]
        );
    }

    #[test]
    fn malformed_input_returned_unchanged() {
        let m = Machine::default();
        let input = Datum::Nat(4);
        let r = run_rule_raw(&m, &rule_datum(RuleId::Conj), &input, 10).unwrap();
        assert_eq!(r.output(), Some(&input));
        let input = Datum::list(vec![Datum::list(vec![t()]), 0.into(), 0.into()]);
        let r = run_rule_raw(&m, &rule_datum(RuleId::Conj), &input, 10).unwrap();
        assert_eq!(r.output(), Some(&input));
    }

    #[test]
    fn univ_small() {
        // Size-5 statements true within 5 steps: identity on equal size-1
        // data, and the connectives on junk input (output 0).
        let out = apply(RuleId::Univ, &[], &Datum::Nat(0), 5);
        let nil = Datum::list(vec![]);
        let mut expect = vec![
            stmt(Datum::prog(ProgramId::Identity), 0.into(), 0.into()),
            stmt(Datum::prog(ProgramId::Identity), nil.clone(), nil.clone()),
        ];
        for p in [ProgramId::And, ProgramId::Or, ProgramId::SNeg] {
            expect.push(stmt(Datum::prog(p), 0.into(), 0.into()));
            expect.push(stmt(Datum::prog(p), nil.clone(), 0.into()));
        }
        assert_eq!(out, expect);
    }

    #[test]
    fn mp_fixed_and_deny() {
        let rho1 = lib(&[rule_datum(RuleId::Conj)]);
        let h = [t(), implies(&t(), &rho1, &f())];
        let out = apply_rule(
            &Machine::default(),
            &mp_fixed(rho1.clone()),
            &h,
            &Datum::Nat(9),
            1,
            1000,
        )
        .unwrap();
        assert_eq!(out[2..], [f()]);
        let c = stmt(Datum::prog(ProgramId::Loop), 0.into(), 0.into());
        let out = apply_rule(
            &Machine::default(),
            &deny(c.clone()),
            &[c],
            &Datum::Nat(9),
            1,
            1000,
        )
        .unwrap();
        assert_eq!(out[1..], [f()]);
    }

    #[test]
    fn paradoxical_shapes() {
        let rho = lib(&[rule_datum(RuleId::P1)]);
        let a = t();
        let b = f();
        let na = neg(&rho, &a);
        assert_eq!(
            apply(RuleId::P1, &[a.clone(), na.clone()], &rho, 1)[2..],
            [f()]
        );
        assert_eq!(
            apply(RuleId::P3, &[implies(&a, &rho, &b), a.clone()], &rho, 1)[2..],
            [b.clone()]
        );
        assert_eq!(
            apply(RuleId::P5, &[neg(&rho, &na)], &rho, 1)[1..],
            [a.clone()]
        );
        assert_eq!(
            apply(RuleId::P6, &[disj(&a, &b), na.clone()], &rho, 1)[2..],
            [b.clone()]
        );
        assert_eq!(
            apply(RuleId::P7, &[disj(&na, &b), a.clone()], &rho, 1)[2..],
            [b.clone()]
        );
        assert_eq!(
            apply(RuleId::P12, std::slice::from_ref(&a), &rho, 1)[1..],
            [neg(&rho, &na)]
        );
        assert_eq!(
            apply(RuleId::P13, &[prove(&rho, &b)], &rho, 1)[1..],
            [b.clone()]
        );
        let pp = prove(&rho, &prove(&rho, &b));
        assert_eq!(apply(RuleId::P14, &[pp], &rho, 1)[1..], [prove(&rho, &b)]);
    }
}
