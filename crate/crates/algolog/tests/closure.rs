//! Structural properties of ρ-derivability, checked against a direct
//! re-run of the stage loop through `apply_rule`.

mod common;

use algolog::deduction::{
    closure_stages, deduce_faithful, library_of, library_rules, pair_index, Deduction,
};
use algolog::rules::apply_rule;
use algolog::statements::raw::{conj, disj, f, strong_neg, t};
use algolog::{Datum, Machine, RuleId};
use common::{looping, random_statement};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const FUEL: u64 = 200_000;
const STAGES: u64 = 60;

fn library() -> Datum {
    library_of(&[
        RuleId::Conj,
        RuleId::ElimCase,
        RuleId::DoubleNeg,
        RuleId::StrongDemorgan,
    ])
}

/// Stage `i` applies rule `k` at resource `m`, where `(k, m)` is the `i`-th
/// pair; indices past the library's length leave the list unchanged.
fn brute_stages(machine: &Machine, gamma: &[Datum], rho: &Datum, limit: u64) -> Vec<Vec<Datum>> {
    let rules = library_rules(rho).unwrap();
    let mut stages = vec![gamma.to_vec()];
    for i in 1..=limit {
        let (k, m) = pair_index(i);
        let h = stages.last().unwrap().clone();
        let next = match rules.get(k as usize - 1) {
            Some(rule) => apply_rule(machine, rule, &h, rho, m, FUEL).unwrap(),
            None => h,
        };
        stages.push(next);
    }
    stages
}

fn gammas() -> Vec<Vec<Datum>> {
    let mut rng = StdRng::seed_from_u64(7);
    let mut out = vec![
        vec![conj(&t(), &f())],
        vec![disj(&f(), &t()), strong_neg(&f())],
        vec![strong_neg(&conj(&t(), &looping()))],
    ];
    for _ in 0..12 {
        let n = rng.gen_range(1..=2);
        out.push((0..n).map(|_| random_statement(&mut rng, 2)).collect());
    }
    out
}

fn proved(machine: &Machine, gamma: &[Datum], goal: &Datum) -> Option<u64> {
    match deduce_faithful(machine, gamma, &library(), goal, FUEL).unwrap() {
        Deduction::ProvedAtStage { stage, .. } => Some(stage),
        Deduction::FuelExhausted { .. } => None,
    }
}

#[test]
fn stages_match_direct_rule_application() {
    let machine = Machine::default();
    for gamma in gammas() {
        let closure = closure_stages(&machine, &gamma, &library(), STAGES, FUEL).unwrap();
        assert!(!closure.exhausted);
        assert_eq!(
            closure.stages,
            brute_stages(&machine, &gamma, &library(), STAGES),
            "{gamma:?}"
        );
    }
}

#[test]
fn stages_only_grow() {
    let machine = Machine::default();
    for gamma in gammas() {
        let closure = closure_stages(&machine, &gamma, &library(), STAGES, FUEL).unwrap();
        for w in closure.stages.windows(2) {
            assert_eq!(&w[1][..w[0].len()], &w[0][..]);
        }
    }
}

#[test]
fn hypotheses_are_derivable_at_once() {
    let machine = Machine::default();
    for gamma in gammas() {
        for g in &gamma {
            assert_eq!(proved(&machine, &gamma, g), Some(0));
        }
    }
}

#[test]
fn extra_hypotheses_never_delay_a_proof() {
    let machine = Machine::default();
    let extra = [t(), strong_neg(&f())];
    for gamma in gammas() {
        let closure = closure_stages(&machine, &gamma, &library(), 20, FUEL).unwrap();
        for goal in closure.stages.last().unwrap() {
            let s = proved(&machine, &gamma, goal).expect("goal from the closure");
            let mut wider = gamma.clone();
            wider.extend(extra.iter().cloned());
            let s2 = proved(&machine, &wider, goal).expect("weakening");
            assert!(s2 <= s, "{goal:?}: {s2} > {s}");
        }
    }
}

#[test]
fn derived_hypotheses_can_be_cut() {
    let machine = Machine::default();
    for gamma in gammas() {
        let closure = closure_stages(&machine, &gamma, &library(), 12, FUEL).unwrap();
        let derived = closure.stages.last().unwrap();
        for a in derived.iter().skip(gamma.len()).take(3) {
            let mut with_a = gamma.clone();
            with_a.push(a.clone());
            let from_a = closure_stages(&machine, &with_a, &library(), 12, FUEL).unwrap();
            for b in from_a.stages.last().unwrap().iter().rev().take(3) {
                assert!(
                    proved(&machine, &gamma, b).is_some(),
                    "{gamma:?} with {a:?} gives {b:?}"
                );
            }
        }
    }
}
