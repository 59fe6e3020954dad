#![allow(dead_code)]

use std::collections::BTreeMap;

use algolog::datum::canonical_compare;
use algolog::statements::raw::{conj, disj, f, stmt, strong_neg, t};
use algolog::{Datum, Machine, ProgramId, RunResult, Universe};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// Every datum of exactly `size` over `universe`, built by direct recursion
/// on the size equations and sorted canonically. Independent of the
/// library's enumerator.
pub struct BruteData {
    universe: Universe,
    memo: BTreeMap<u64, Vec<Datum>>,
}

impl BruteData {
    pub fn new(universe: Universe) -> Self {
        BruteData {
            universe,
            memo: BTreeMap::new(),
        }
    }

    pub fn of_size(&mut self, size: u64) -> Vec<Datum> {
        if let Some(v) = self.memo.get(&size) {
            return v.clone();
        }
        let mut out = vec![Datum::Nat(size - 1)];
        for items in self.sequences(size - 1) {
            out.push(Datum::list(items));
        }
        if size >= 2 {
            for p in self.universe.programs().to_vec() {
                for caps in self.sequences(size - 2) {
                    if caps.len() == p.arity() {
                        out.push(Datum::alg(p, caps));
                    }
                }
            }
        }
        out.sort_by(canonical_compare);
        self.memo.insert(size, out.clone());
        out
    }

    /// Sequences of data whose sizes sum to `total`.
    fn sequences(&mut self, total: u64) -> Vec<Vec<Datum>> {
        if total == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 1..=total {
            let heads = self.of_size(first);
            let tails = self.sequences(total - first);
            for h in &heads {
                for tail in &tails {
                    let mut v = Vec::with_capacity(tail.len() + 1);
                    v.push(h.clone());
                    v.extend(tail.iter().cloned());
                    out.push(v);
                }
            }
        }
        out
    }

    /// Statements of size at most `m` that halt within runtime `m` with
    /// their stated output, found by running each one.
    pub fn m_true(&mut self, machine: &Machine, m: u64) -> Vec<Datum> {
        let mut out = Vec::new();
        for s in 1..=m {
            for d in self.of_size(s) {
                let Some([alpha, u, v]) = d.as_list() else {
                    continue;
                };
                if !alpha.is_alg() {
                    continue;
                }
                if let Ok(RunResult::Halted { output, runtime }) = machine.run(alpha, u, m) {
                    if output == *v && runtime <= m {
                        out.push(d.clone());
                    }
                }
            }
        }
        out.sort_by(canonical_compare);
        out
    }
}

pub fn looping() -> Datum {
    stmt(Datum::prog(ProgramId::Loop), 0.into(), 0.into())
}

/// Statements built from T, F, a looping statement and small identity
/// claims with AND, OR and S_NEG.
pub fn arb_statement() -> impl Strategy<Value = Datum> {
    let leaf = prop_oneof![
        Just(t()),
        Just(f()),
        Just(looping()),
        (0u64..3, 0u64..3).prop_map(|(u, v)| stmt(
            Datum::prog(ProgramId::Identity),
            u.into(),
            v.into()
        )),
    ];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| conj(&a, &b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| disj(&a, &b)),
            inner.clone().prop_map(|a| strong_neg(&a)),
            inner.prop_map(|a| stmt(Datum::prog(ProgramId::True), a, 1.into())),
        ]
    })
}

/// A random statement over the same alphabet as [`arb_statement`].
pub fn random_statement(rng: &mut impl Rng, depth: u32) -> Datum {
    if depth == 0 || rng.gen_bool(0.3) {
        let leaves = [t(), f(), looping(), strong_neg(&f())];
        return leaves.choose(rng).unwrap().clone();
    }
    match rng.gen_range(0..3) {
        0 => conj(
            &random_statement(rng, depth - 1),
            &random_statement(rng, depth - 1),
        ),
        1 => disj(
            &random_statement(rng, depth - 1),
            &random_statement(rng, depth - 1),
        ),
        _ => strong_neg(&random_statement(rng, depth - 1)),
    }
}

/// Every sub-datum of `d`, including `d`.
pub fn subdata(d: &Datum, out: &mut Vec<Datum>) {
    out.push(d.clone());
    match d {
        Datum::Nat(_) => {}
        Datum::List(items) | Datum::Alg(_, items) => {
            for x in items.iter() {
                subdata(x, out);
            }
        }
    }
}
