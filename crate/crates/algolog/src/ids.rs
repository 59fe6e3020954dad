//! Closed registries of machine programs and deduction rules.

use std::fmt;
use std::str::FromStr;

macro_rules! rule_ids {
    ($($variant:ident => $name:literal),* $(,)?) => {
        /// A rule in the catalog. Each rule is also a machine program.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum RuleId {
            $($variant),*
        }

        impl RuleId {
            pub const ALL: &'static [RuleId] = &[$(RuleId::$variant),*];

            pub fn name(self) -> &'static str {
                match self {
                    $(RuleId::$variant => $name),*
                }
            }
        }
    };
}

rule_ids! {
    Trans => "TRANS",
    Univ => "UNIV",
    MetaUniv => "META_UNIV",
    Conj => "CONJ",
    MetaConj => "META_CONJ",
    DisjIntro => "DISJ_INTRO",
    DElim => "D_ELIM",
    MetaDisj => "META_DISJ",
    ElimCase => "ELIM_CASE",
    DoubleNeg => "DOUBLE_NEG",
    StrongDemorgan => "STRONG_DEMORGAN",
    BetaCurry => "BETA_CURRY",
    MpFixed => "MP_FIXED",
    Deny => "DENY",
    ConjContra => "CONJ_CONTRA",
    RIntro => "R_INTRO",
    P1 => "P1",
    P2 => "P2",
    P3 => "P3",
    P4 => "P4",
    P5 => "P5",
    P6 => "P6",
    P7 => "P7",
    P8 => "P8",
    P9 => "P9",
    P10 => "P10",
    P11 => "P11",
    P12 => "P12",
    P13 => "P13",
    P14 => "P14",
}

impl RuleId {
    /// The eleven rules of the stable base, in library order.
    pub const BASE: [RuleId; 11] = [
        RuleId::Trans,
        RuleId::Univ,
        RuleId::MetaUniv,
        RuleId::Conj,
        RuleId::MetaConj,
        RuleId::DisjIntro,
        RuleId::DElim,
        RuleId::MetaDisj,
        RuleId::ElimCase,
        RuleId::DoubleNeg,
        RuleId::StrongDemorgan,
    ];

    /// Number of captured data the rule's algorithm carries.
    pub fn arity(self) -> usize {
        match self {
            RuleId::MpFixed | RuleId::Deny => 1,
            _ => 0,
        }
    }

    pub fn is_paradoxical(self) -> bool {
        matches!(
            self,
            RuleId::P1
                | RuleId::P2
                | RuleId::P3
                | RuleId::P4
                | RuleId::P5
                | RuleId::P6
                | RuleId::P7
                | RuleId::P8
                | RuleId::P9
                | RuleId::P10
                | RuleId::P11
                | RuleId::P12
                | RuleId::P13
                | RuleId::P14
        )
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown name `{0}`")]
pub struct UnknownName(pub String);

impl FromStr for RuleId {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL
            .iter()
            .copied()
            .find(|r| r.name() == s)
            .ok_or_else(|| UnknownName(s.to_string()))
    }
}

/// A registered machine program. Declaration order is registry order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProgramId {
    Identity,
    Loop,
    Halt,
    True,
    And,
    Or,
    SNeg,
    Curry,
    BetaHaltWitness,
    RWitness,
    Deduce,
    LibFromList,
    Rule(RuleId),
}

const BUILTINS: [ProgramId; 12] = [
    ProgramId::Identity,
    ProgramId::Loop,
    ProgramId::Halt,
    ProgramId::True,
    ProgramId::And,
    ProgramId::Or,
    ProgramId::SNeg,
    ProgramId::Curry,
    ProgramId::BetaHaltWitness,
    ProgramId::RWitness,
    ProgramId::Deduce,
    ProgramId::LibFromList,
];

impl ProgramId {
    /// Every program in registry order.
    pub fn all() -> Vec<ProgramId> {
        BUILTINS
            .iter()
            .copied()
            .chain(RuleId::ALL.iter().map(|&r| ProgramId::Rule(r)))
            .collect()
    }

    pub fn index(self) -> usize {
        match self {
            ProgramId::Rule(r) => BUILTINS.len() + r as usize,
            p => BUILTINS.iter().position(|&b| b == p).expect("builtin"),
        }
    }

    pub fn arity(self) -> usize {
        match self {
            ProgramId::BetaHaltWitness | ProgramId::LibFromList => 1,
            ProgramId::Rule(r) => r.arity(),
            _ => 0,
        }
    }

    pub fn name(self) -> String {
        match self {
            ProgramId::Identity => "IDENTITY".into(),
            ProgramId::Loop => "LOOP".into(),
            ProgramId::Halt => "HALT".into(),
            ProgramId::True => "TRUE".into(),
            ProgramId::And => "AND".into(),
            ProgramId::Or => "OR".into(),
            ProgramId::SNeg => "S_NEG".into(),
            ProgramId::Curry => "CURRY".into(),
            ProgramId::BetaHaltWitness => "BETA_HALTWITNESS".into(),
            ProgramId::RWitness => "R_WITNESS".into(),
            ProgramId::Deduce => "DEDUCE".into(),
            ProgramId::LibFromList => "LIB_FROM_LIST".into(),
            ProgramId::Rule(r) => format!("RULE_{}", r.name()),
        }
    }
}

impl fmt::Display for ProgramId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for ProgramId {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(rule) = s.strip_prefix("RULE_") {
            return rule
                .parse()
                .map(ProgramId::Rule)
                .map_err(|_| UnknownName(s.to_string()));
        }
        BUILTINS
            .iter()
            .copied()
            .find(|p| p.name() == s)
            .ok_or_else(|| UnknownName(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_index_matches_order() {
        let all = ProgramId::all();
        for (i, p) in all.iter().enumerate() {
            assert_eq!(p.index(), i);
        }
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
    }

    #[test]
    fn names_round_trip() {
        for p in ProgramId::all() {
            assert_eq!(p.name().parse::<ProgramId>().unwrap(), p);
        }
        for &r in RuleId::ALL {
            assert_eq!(r.name().parse::<RuleId>().unwrap(), r);
        }
        assert!("NOPE".parse::<ProgramId>().is_err());
    }

    #[test]
    fn base_has_eleven_rules() {
        assert_eq!(RuleId::BASE.len(), 11);
        assert!(RuleId::BASE.iter().all(|r| !r.is_paradoxical()));
    }
}
