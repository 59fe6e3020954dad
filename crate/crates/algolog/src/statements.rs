//! Statement encodings, connective constructors, shape matchers and truth evaluation.

use std::fmt;

use crate::datum::Datum;
use crate::ids::ProgramId;
use crate::machine::{Machine, MachineError, RunResult};

/// A datum of shape `[alpha, input, output]` with `alpha` an algorithm.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Statement(Datum);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a statement: {0:?}")]
pub struct NotAStatement(pub Datum);

impl Statement {
    pub fn new(d: Datum) -> Result<Self, NotAStatement> {
        if d.is_statement() {
            Ok(Statement(d))
        } else {
            Err(NotAStatement(d))
        }
    }

    pub fn datum(&self) -> &Datum {
        &self.0
    }

    pub fn into_datum(self) -> Datum {
        self.0
    }

    fn part(&self, i: usize) -> &Datum {
        &self.0.as_list().expect("statement invariant")[i]
    }

    pub fn alpha(&self) -> &Datum {
        self.part(0)
    }

    pub fn input(&self) -> &Datum {
        self.part(1)
    }

    pub fn output(&self) -> &Datum {
        self.part(2)
    }

    pub fn size(&self) -> u64 {
        self.0.size()
    }
}

impl TryFrom<Datum> for Statement {
    type Error = NotAStatement;

    fn try_from(d: Datum) -> Result<Self, Self::Error> {
        Statement::new(d)
    }
}

impl From<Statement> for Datum {
    fn from(s: Statement) -> Datum {
        s.0
    }
}

impl fmt::Debug for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Unchecked constructors and shape matchers over raw data.
///
/// The rule implementations work on raw data; the checked API below wraps these.
pub mod raw {
    use super::*;

    pub fn stmt(alpha: Datum, input: Datum, output: Datum) -> Datum {
        Datum::list(vec![alpha, input, output])
    }

    pub fn t() -> Datum {
        stmt(Datum::prog(ProgramId::Identity), 0.into(), 0.into())
    }

    pub fn f() -> Datum {
        stmt(Datum::prog(ProgramId::Identity), 0.into(), 1.into())
    }

    fn binary(p: ProgramId, a: &Datum, b: &Datum) -> Datum {
        stmt(
            Datum::prog(p),
            Datum::list(vec![a.clone(), b.clone()]),
            1.into(),
        )
    }

    pub fn conj(a: &Datum, b: &Datum) -> Datum {
        binary(ProgramId::And, a, b)
    }

    pub fn disj(a: &Datum, b: &Datum) -> Datum {
        binary(ProgramId::Or, a, b)
    }

    pub fn strong_neg(a: &Datum) -> Datum {
        stmt(Datum::prog(ProgramId::SNeg), a.clone(), 1.into())
    }

    pub fn turnstile(gamma: &[Datum], rho: &Datum, b: &Datum) -> Datum {
        stmt(
            Datum::prog(ProgramId::Deduce),
            Datum::list(vec![Datum::list(gamma.to_vec()), rho.clone(), b.clone()]),
            1.into(),
        )
    }

    pub fn implies(a: &Datum, rho: &Datum, b: &Datum) -> Datum {
        turnstile(std::slice::from_ref(a), rho, b)
    }

    pub fn neg(rho: &Datum, a: &Datum) -> Datum {
        implies(a, rho, &f())
    }

    pub fn prove(rho: &Datum, a: &Datum) -> Datum {
        implies(&t(), rho, a)
    }

    pub fn bicond(rho: &Datum, a: &Datum, b: &Datum) -> Datum {
        conj(&implies(a, rho, b), &implies(b, rho, a))
    }

    pub fn material(a: &Datum, b: &Datum) -> Datum {
        disj(&strong_neg(a), b)
    }

    pub fn halts(a: &Datum) -> Datum {
        disj(&strong_neg(a), a)
    }

    pub fn conj_list(gamma: &[Datum]) -> Datum {
        match gamma {
            [] => t(),
            [first, rest @ ..] => rest.iter().fold(first.clone(), |acc, c| conj(&acc, c)),
        }
    }

    /// `[CURRY, [alpha, rho], 1]`.
    pub fn curry(alpha: &Datum, rho: &Datum) -> Datum {
        stmt(
            Datum::prog(ProgramId::Curry),
            Datum::list(vec![alpha.clone(), rho.clone()]),
            1.into(),
        )
    }

    /// `[alpha, [alpha, rho], 1]`, the statement CURRY negates.
    pub fn self_apply(alpha: &Datum, rho: &Datum) -> Datum {
        stmt(
            alpha.clone(),
            Datum::list(vec![alpha.clone(), rho.clone()]),
            1.into(),
        )
    }

    /// The Curry statement of a library: `[CURRY, [CURRY, rho], 1]`.
    pub fn curry_fixed_point(rho: &Datum) -> Datum {
        curry(&Datum::prog(ProgramId::Curry), rho)
    }

    /// `[R_WITNESS, [R_WITNESS, rho], 1]`.
    pub fn r_statement(rho: &Datum) -> Datum {
        let r = Datum::prog(ProgramId::RWitness);
        stmt(r.clone(), Datum::list(vec![r, rho.clone()]), 1.into())
    }

    fn is_prog(d: &Datum, p: ProgramId) -> bool {
        matches!(d.as_alg(), Some((q, [])) if q == p)
    }

    fn parts(d: &Datum) -> Option<(&Datum, &Datum, &Datum)> {
        match d.as_list()? {
            [a, u, v] if a.is_alg() => Some((a, u, v)),
            _ => None,
        }
    }

    fn match_binary(p: ProgramId, d: &Datum) -> Option<(&Datum, &Datum)> {
        let (a, u, v) = parts(d)?;
        if !is_prog(a, p) || *v != Datum::Nat(1) {
            return None;
        }
        match u.as_list()? {
            [x, y] if x.is_statement() && y.is_statement() => Some((x, y)),
            _ => None,
        }
    }

    pub fn match_conj(d: &Datum) -> Option<(&Datum, &Datum)> {
        match_binary(ProgramId::And, d)
    }

    pub fn match_disj(d: &Datum) -> Option<(&Datum, &Datum)> {
        match_binary(ProgramId::Or, d)
    }

    pub fn match_strong_neg(d: &Datum) -> Option<&Datum> {
        let (a, u, v) = parts(d)?;
        (is_prog(a, ProgramId::SNeg) && *v == Datum::Nat(1) && u.is_statement()).then_some(u)
    }

    /// `(gamma, rho, b)` of a turnstile statement.
    pub fn match_turnstile(d: &Datum) -> Option<(&[Datum], &Datum, &Datum)> {
        let (a, u, v) = parts(d)?;
        if !is_prog(a, ProgramId::Deduce) || *v != Datum::Nat(1) {
            return None;
        }
        match u.as_list()? {
            [g, rho, b] => Some((g.as_list()?, rho, b)),
            _ => None,
        }
    }

    /// `(a, b)` of `a =>rho b` for the given library.
    pub fn match_implies<'a>(d: &'a Datum, rho: &Datum) -> Option<(&'a Datum, &'a Datum)> {
        match match_turnstile(d)? {
            ([a], r, b) if r == rho && a.is_statement() && b.is_statement() => Some((a, b)),
            _ => None,
        }
    }

    /// `a` of `neg(rho, a)`.
    pub fn match_neg<'a>(d: &'a Datum, rho: &Datum) -> Option<&'a Datum> {
        match match_implies(d, rho)? {
            (a, b) if *b == f() => Some(a),
            _ => None,
        }
    }

    /// `a` of `prove(rho, a)`.
    pub fn match_prove<'a>(d: &'a Datum, rho: &Datum) -> Option<&'a Datum> {
        match match_implies(d, rho)? {
            (t0, a) if *t0 == t() => Some(a),
            _ => None,
        }
    }

    /// `(alpha, rho')` of `[CURRY, [alpha, rho'], 1]` with `alpha` an algorithm.
    pub fn match_curry(d: &Datum) -> Option<(&Datum, &Datum)> {
        let (a, u, v) = parts(d)?;
        if !is_prog(a, ProgramId::Curry) || *v != Datum::Nat(1) {
            return None;
        }
        match u.as_list()? {
            [alpha, rho] if alpha.is_alg() => Some((alpha, rho)),
            _ => None,
        }
    }

    /// `(alpha, rho')` of `[alpha, [alpha, rho'], 1]`.
    pub fn match_self_apply(d: &Datum) -> Option<(&Datum, &Datum)> {
        let (a, u, v) = parts(d)?;
        if *v != Datum::Nat(1) {
            return None;
        }
        match u.as_list()? {
            [alpha, rho] if alpha == a => Some((alpha, rho)),
            _ => None,
        }
    }
}

macro_rules! checked {
    ($(#[$m:meta])* $name:ident($($arg:ident),*) => $raw:ident) => {
        $(#[$m])*
        pub fn $name($($arg: &Statement),*) -> Statement {
            Statement(raw::$raw($(&$arg.0),*))
        }
    };
}

/// `[IDENTITY, 0, 0]`.
pub fn t() -> Statement {
    Statement(raw::t())
}

/// `[IDENTITY, 0, 1]`, directly false.
pub fn f() -> Statement {
    Statement(raw::f())
}

pub fn stmt(alpha: Datum, input: Datum, output: Datum) -> Result<Statement, NotAStatement> {
    Statement::new(raw::stmt(alpha, input, output))
}

checked!(conj(a, b) => conj);
checked!(disj(a, b) => disj);
checked!(strong_neg(a) => strong_neg);
checked!(
    /// `-a or b`.
    material(a, b) => material
);
checked!(
    /// `-a or a`: true iff the process of `a` halts.
    halts(a) => halts
);

pub fn conj_list(gamma: &[Statement]) -> Statement {
    Statement(raw::conj_list(&data(gamma)))
}

pub fn turnstile(gamma: &[Statement], rho: &Datum, b: &Statement) -> Statement {
    Statement(raw::turnstile(&data(gamma), rho, &b.0))
}

pub fn implies(a: &Statement, rho: &Datum, b: &Statement) -> Statement {
    Statement(raw::implies(&a.0, rho, &b.0))
}

pub fn neg(rho: &Datum, a: &Statement) -> Statement {
    Statement(raw::neg(rho, &a.0))
}

pub fn prove(rho: &Datum, a: &Statement) -> Statement {
    Statement(raw::prove(rho, &a.0))
}

pub fn bicond(rho: &Datum, a: &Statement, b: &Statement) -> Statement {
    Statement(raw::bicond(rho, &a.0, &b.0))
}

pub fn curry_fixed_point(rho: &Datum) -> Statement {
    Statement(raw::curry_fixed_point(rho))
}

pub fn r_statement(rho: &Datum) -> Statement {
    Statement(raw::r_statement(rho))
}

fn data(gamma: &[Statement]) -> Vec<Datum> {
    gamma.iter().map(|s| s.0.clone()).collect()
}

/// Outcome of running a statement's process under a fuel budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TruthVerdict {
    True,
    DirectlyFalse,
    /// The process did not halt within the budget.
    Unknown(u64),
}

/// Verdict plus the runtime of the process when it halted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub verdict: TruthVerdict,
    pub runtime: Option<u64>,
}

pub fn evaluate_truth(
    machine: &Machine,
    s: &Statement,
    fuel: u64,
) -> Result<TruthVerdict, MachineError> {
    evaluate(machine, s, fuel).map(|e| e.verdict)
}

pub fn evaluate(machine: &Machine, s: &Statement, fuel: u64) -> Result<Evaluation, MachineError> {
    Ok(match machine.run(s.alpha(), s.input(), fuel)? {
        RunResult::Halted { output, runtime } => Evaluation {
            verdict: if output == *s.output() {
                TruthVerdict::True
            } else {
                TruthVerdict::DirectlyFalse
            },
            runtime: Some(runtime),
        },
        RunResult::OutOfFuel { consumed } => Evaluation {
            verdict: TruthVerdict::Unknown(consumed),
            runtime: None,
        },
    })
}
