//! Law scripts survive the text format, and the evidence helpers report
//! what the Curry and halting-witness constructions predict.

use algolog::deduction::{certify, library_of, Certification};
use algolog::lawsuite::{
    base_library, curry_evidence, halting_witness_evidence, laws, test_pool, LawContext,
};
use algolog::statements::TruthVerdict;
use algolog::text::{parse_script, print_script};
use algolog::{Machine, RuleId, RunResult};

#[test]
fn law_scripts_round_trip_and_still_certify() {
    let machine = Machine::default();
    let rho = base_library();
    let cx = LawContext::new(&machine, rho.clone(), 100_000).unwrap();
    let pool = test_pool();
    let mut seen = 0;
    for law in laws() {
        let inst: Vec<_> = (0..law.arity)
            .map(|i| pool[i % pool.len()].clone())
            .collect();
        let Some(script) = (law.build)(&cx, &inst) else {
            continue;
        };
        let text = print_script(&script);
        let back = parse_script(&text).unwrap_or_else(|e| panic!("{}: {e}\n{text}", law.name));
        assert_eq!(back, script, "{}", law.name);
        assert_eq!(
            certify(&machine, &back, &rho, 100_000),
            Certification::Certified,
            "{}",
            law.name
        );
        seen += 1;
    }
    assert!(seen > 60, "only {seen} laws produced a script");
}

#[test]
fn curry_statement_and_its_negation_are_both_true_with_p1() {
    let machine = Machine::default();
    let rho = library_of(&[RuleId::BetaCurry, RuleId::P1]);
    let [q, nq, _, falsum] = curry_evidence(&machine, &rho, 1_000_000).unwrap();
    assert_eq!(q, TruthVerdict::True);
    assert_eq!(nq, TruthVerdict::True);
    assert_eq!(falsum, TruthVerdict::DirectlyFalse);
}

#[test]
fn curry_statement_stays_open_under_the_base() {
    let machine = Machine::default();
    let rho = library_of(&[RuleId::BetaCurry]);
    let [q, nq, nnq, falsum] = curry_evidence(&machine, &rho, 20_000).unwrap();
    assert!(matches!(q, TruthVerdict::Unknown(_)), "{q:?}");
    assert!(matches!(nq, TruthVerdict::Unknown(_)), "{nq:?}");
    assert!(matches!(nnq, TruthVerdict::Unknown(_)), "{nnq:?}");
    assert_eq!(falsum, TruthVerdict::DirectlyFalse);
}

#[test]
fn halting_witness_runs_on_under_the_base() {
    let budgets = [1_000, 10_000, 50_000];
    let runs = halting_witness_evidence(&base_library(), &budgets).unwrap();
    for (run, budget) in runs.iter().zip(budgets) {
        assert_eq!(*run, RunResult::OutOfFuel { consumed: budget });
    }
}
