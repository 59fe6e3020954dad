//! Concrete syntax for data and proof scripts.
//!
//! Naturals are decimal literals, lists are `[d1 d2 ...]` and algorithms are
//! `(alg NAME cap1 ...)`. Statements have sugar: `T`, `F`, `(stmt a u v)`,
//! `(and A B)`, `(or A B)`, `(sneg A)`, `(imp A RHO B)`, `(neg RHO A)`,
//! `(prove RHO A)`, `(turnstile [G1 ...] RHO B)` and `(lib RULE ...)`.
//! Sugar expands to raw data when parsed, and [`print`] uses it whenever the
//! shape matches.
//!
//! A proof script reads
//!
//! ```text
//! (script
//!   (hyps A B)
//!   (goal C)
//!   (step RULE_INDEX RESOURCE [PREMISE ...] CONCLUSION WITNESS_SCRIPT ...)
//!   ...)
//! ```

use std::fmt::{self, Write as _};

use crate::datum::Datum;
use crate::deduction::{library_rules, ProofScript, ProofStep};
use crate::ids::{ProgramId, RuleId};
use crate::rules::{rule_datum, rule_id};
use crate::statements::raw;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn error(self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone)]
enum Node {
    Nat(u64),
    Word(String),
    Bracket(Vec<Node>, Pos),
    Paren(Vec<Node>, Pos),
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl Reader<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }

    fn skip_blank(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    /// The next node with its position, `None` at a closing delimiter or end of input.
    fn node(&mut self) -> Result<Option<(Node, Pos)>, ParseError> {
        self.skip_blank();
        let at = self.pos;
        let Some(&c) = self.chars.peek() else {
            return Ok(None);
        };
        match c {
            ']' | ')' => Ok(None),
            '[' | '(' => {
                self.bump();
                let close = if c == '[' { ']' } else { ')' };
                let mut items = Vec::new();
                while let Some((n, _)) = self.node()? {
                    items.push(n);
                }
                match self.bump() {
                    Some(d) if d == close => {}
                    Some(d) => {
                        return Err(self
                            .pos_before()
                            .error(format!("expected `{close}`, found `{d}`")))
                    }
                    None => {
                        return Err(self.pos.error(format!(
                            "unclosed `{c}` opened at {}:{}",
                            at.line, at.column
                        )))
                    }
                }
                let node = if c == '[' {
                    Node::Bracket(items, at)
                } else {
                    Node::Paren(items, at)
                };
                Ok(Some((node, at)))
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&d) = self.chars.peek().filter(|d| d.is_ascii_alphanumeric()) {
                    digits.push(d);
                    self.bump();
                }
                let n = digits
                    .parse()
                    .map_err(|_| at.error(format!("bad natural `{digits}`")))?;
                Ok(Some((Node::Nat(n), at)))
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut word = String::new();
                while let Some(&d) = self
                    .chars
                    .peek()
                    .filter(|d| d.is_alphanumeric() || **d == '_')
                {
                    word.push(d);
                    self.bump();
                }
                Ok(Some((Node::Word(word), at)))
            }
            other => Err(at.error(format!("unexpected character `{other}`"))),
        }
    }

    fn pos_before(&self) -> Pos {
        Pos {
            line: self.pos.line,
            column: self.pos.column.saturating_sub(1),
        }
    }
}

/// Read exactly one node from `input`.
fn read_one(input: &str) -> Result<(Node, Pos), ParseError> {
    let mut r = Reader {
        chars: input.chars().peekable(),
        pos: Pos { line: 1, column: 1 },
    };
    let first = r.node()?;
    r.skip_blank();
    let Some(node) = first else {
        return Err(match r.chars.peek() {
            Some(c) => r.pos.error(format!("unexpected `{c}`")),
            None => r.pos.error("empty input"),
        });
    };
    if let Some(c) = r.chars.peek() {
        return Err(r.pos.error(format!("trailing input starting with `{c}`")));
    }
    Ok(node)
}

fn program_names() -> String {
    ProgramId::all()
        .iter()
        .map(|p| p.name())
        .collect::<Vec<_>>()
        .join(" ")
}

fn rule_names() -> String {
    RuleId::ALL
        .iter()
        .map(|r| r.name())
        .collect::<Vec<_>>()
        .join(" ")
}

fn datum(node: &Node, at: Pos) -> Result<Datum, ParseError> {
    match node {
        Node::Nat(n) => Ok(Datum::Nat(*n)),
        Node::Word(w) if w == "T" => Ok(raw::t()),
        Node::Word(w) if w == "F" => Ok(raw::f()),
        Node::Word(w) => Err(at.error(format!(
            "unexpected word `{w}`; bare words are only `T` and `F`"
        ))),
        Node::Bracket(items, at) => Ok(Datum::list(data(items, *at)?)),
        Node::Paren(items, at) => form(items, *at),
    }
}

fn data(items: &[Node], at: Pos) -> Result<Vec<Datum>, ParseError> {
    items.iter().map(|n| datum(n, position(n, at))).collect()
}

fn position(node: &Node, fallback: Pos) -> Pos {
    match node {
        Node::Bracket(_, p) | Node::Paren(_, p) => *p,
        _ => fallback,
    }
}

fn form(items: &[Node], at: Pos) -> Result<Datum, ParseError> {
    let Some(Node::Word(head)) = items.first() else {
        return Err(at.error("a form starts with a keyword such as `alg`, `stmt` or `and`"));
    };
    let args = &items[1..];
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(at.error(format!("`{head}` takes {n} arguments, got {}", args.len())))
        }
    };
    let arg = |i: usize| datum(&args[i], position(&args[i], at));
    match head.as_str() {
        "alg" => {
            let Some(Node::Word(name)) = args.first() else {
                return Err(at.error("`alg` needs a program name"));
            };
            let prog: ProgramId = name
                .parse()
                .map_err(|_| at.error(format!("unknown program `{name}`; known programs: {}", program_names())))?;
            let caps = data(&args[1..], at)?;
            if caps.len() != prog.arity() {
                return Err(at.error(format!("{name} takes {} captures, got {}", prog.arity(), caps.len())));
            }
            Ok(Datum::alg(prog, caps))
        }
        "lib" => {
            if args.is_empty() {
                return Err(at.error("a library needs at least one rule"));
            }
            let rules = args
                .iter()
                .map(|n| match n {
                    Node::Word(w) => match w.parse::<RuleId>() {
                        Ok(r) if r.arity() == 0 => Ok(rule_datum(r)),
                        Ok(r) => Err(at.error(format!("{r} carries a capture; write it as (alg RULE_{r} ...)"))),
                        Err(_) => Err(at.error(format!("unknown rule `{w}`; known rules: {}", rule_names()))),
                    },
                    other => datum(other, position(other, at)),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Datum::alg(ProgramId::LibFromList, vec![Datum::list(rules)]))
        }
        "stmt" => {
            arity(3)?;
            let alpha = arg(0)?;
            if !alpha.is_alg() {
                return Err(at.error("the first component of a statement must be an algorithm"));
            }
            Ok(raw::stmt(alpha, arg(1)?, arg(2)?))
        }
        "and" | "or" => {
            arity(2)?;
            let (a, b) = (arg(0)?, arg(1)?);
            Ok(if head == "and" { raw::conj(&a, &b) } else { raw::disj(&a, &b) })
        }
        "sneg" => {
            arity(1)?;
            Ok(raw::strong_neg(&arg(0)?))
        }
        "imp" => {
            arity(3)?;
            Ok(raw::implies(&arg(0)?, &arg(1)?, &arg(2)?))
        }
        "neg" => {
            arity(2)?;
            Ok(raw::neg(&arg(0)?, &arg(1)?))
        }
        "prove" => {
            arity(2)?;
            Ok(raw::prove(&arg(0)?, &arg(1)?))
        }
        "turnstile" => {
            arity(3)?;
            let Datum::List(gamma) = arg(0)? else {
                return Err(position(&args[0], at).error("`turnstile` takes a list of hypotheses first"));
            };
            Ok(raw::turnstile(gamma.as_slice(), &arg(1)?, &arg(2)?))
        }
        other => Err(at.error(format!(
            "unknown form `{other}`; expected alg, lib, stmt, and, or, sneg, imp, neg, prove or turnstile"
        ))),
    }
}

pub fn parse(input: &str) -> Result<Datum, ParseError> {
    let (node, at) = read_one(input)?;
    datum(&node, at)
}

/// Parse a list of data, as used for hypothesis lists.
pub fn parse_list(input: &str) -> Result<Vec<Datum>, ParseError> {
    match parse(input)? {
        Datum::List(items) => Ok(items.as_slice().to_vec()),
        _ => Err(ParseError {
            line: 1,
            column: 1,
            message: "expected a list `[...]`".into(),
        }),
    }
}

/// Raw syntax, without sugar.
pub fn print_raw(d: &Datum) -> String {
    format!("{d:?}")
}

/// Sugared syntax.
pub fn print(d: &Datum) -> String {
    let mut out = String::new();
    write_datum(&mut out, d).expect("writing to a string");
    out
}

fn write_datum(out: &mut String, d: &Datum) -> fmt::Result {
    if let Some((head, args)) = sugar(d) {
        write!(out, "({head}")?;
        for a in args {
            out.push(' ');
            write_datum(out, &a)?;
        }
        return out.write_char(')');
    }
    if *d == raw::t() {
        return out.write_char('T');
    }
    if *d == raw::f() {
        return out.write_char('F');
    }
    match d {
        Datum::Nat(n) => write!(out, "{n}"),
        Datum::List(items) => {
            out.write_char('[')?;
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.write_char(' ')?;
                }
                write_datum(out, x)?;
            }
            out.write_char(']')
        }
        Datum::Alg(p, caps) => {
            if let Some(rules) = lib_rules(d) {
                out.write_str("(lib")?;
                for r in rules {
                    out.write_char(' ')?;
                    match rule_id(r).filter(|id| id.arity() == 0) {
                        Some(id) => out.write_str(id.name())?,
                        None => write_datum(out, r)?,
                    }
                }
                return out.write_char(')');
            }
            write!(out, "(alg {p}")?;
            for c in caps.iter() {
                out.write_char(' ')?;
                write_datum(out, c)?;
            }
            out.write_char(')')
        }
    }
}

/// The rules of a library whose every item is a rule.
fn lib_rules(d: &Datum) -> Option<&[Datum]> {
    let rules = library_rules(d)?;
    (!rules.is_empty() && rules.iter().all(|r| rule_id(r).is_some())).then_some(rules)
}

/// The sugar form for `d`, if its shape has one. Every candidate is rebuilt
/// and compared, so printing then parsing gives back `d` exactly.
fn sugar(d: &Datum) -> Option<(&'static str, Vec<Datum>)> {
    if *d == raw::t() || *d == raw::f() || !d.is_statement() {
        return None;
    }
    let checked = |head, args: Vec<Datum>, rebuilt: Datum| (rebuilt == *d).then_some((head, args));
    if let Some((a, b)) = raw::match_conj(d) {
        return checked("and", vec![a.clone(), b.clone()], raw::conj(a, b));
    }
    if let Some((a, b)) = raw::match_disj(d) {
        return checked("or", vec![a.clone(), b.clone()], raw::disj(a, b));
    }
    if let Some(a) = raw::match_strong_neg(d) {
        return checked("sneg", vec![a.clone()], raw::strong_neg(a));
    }
    if let Some((gamma, rho, b)) = raw::match_turnstile(d) {
        return match gamma {
            [a] if *b == raw::f() => checked("neg", vec![rho.clone(), a.clone()], raw::neg(rho, a)),
            [a] if *a == raw::t() => {
                checked("prove", vec![rho.clone(), b.clone()], raw::prove(rho, b))
            }
            [a] => checked(
                "imp",
                vec![a.clone(), rho.clone(), b.clone()],
                raw::implies(a, rho, b),
            ),
            _ => checked(
                "turnstile",
                vec![Datum::list(gamma.to_vec()), rho.clone(), b.clone()],
                raw::turnstile(gamma, rho, b),
            ),
        };
    }
    let parts = d.as_list()?;
    Some(("stmt", parts.to_vec()))
}

pub fn parse_script(input: &str) -> Result<ProofScript, ParseError> {
    let (node, at) = read_one(input)?;
    script(&node, at)
}

fn script(node: &Node, at: Pos) -> Result<ProofScript, ParseError> {
    let Node::Paren(items, at) = node else {
        return Err(at.error("expected `(script ...)`"));
    };
    let at = *at;
    if !matches!(items.first(), Some(Node::Word(w)) if w == "script") {
        return Err(at.error("expected `(script ...)`"));
    }
    let mut hypotheses = None;
    let mut goal = None;
    let mut steps = Vec::new();
    for item in &items[1..] {
        let Node::Paren(parts, p) = item else {
            return Err(
                position(item, at).error("expected `(hyps ...)`, `(goal ...)` or `(step ...)`")
            );
        };
        let p = *p;
        match parts.first() {
            Some(Node::Word(w)) if w == "hyps" => hypotheses = Some(data(&parts[1..], p)?),
            Some(Node::Word(w)) if w == "goal" => {
                let [_, g] = parts.as_slice() else {
                    return Err(p.error("`goal` takes one datum"));
                };
                goal = Some(datum(g, position(g, p))?);
            }
            Some(Node::Word(w)) if w == "step" => steps.push(step(&parts[1..], p)?),
            _ => return Err(p.error("expected `(hyps ...)`, `(goal ...)` or `(step ...)`")),
        }
    }
    Ok(ProofScript {
        hypotheses: hypotheses.unwrap_or_default(),
        goal: goal.ok_or_else(|| at.error("script has no `(goal ...)`"))?,
        steps,
    })
}

fn step(parts: &[Node], at: Pos) -> Result<ProofStep, ParseError> {
    let [Node::Nat(rule), Node::Nat(resource), Node::Bracket(premises, _), conclusion, witnesses @ ..] =
        parts
    else {
        return Err(
            at.error("a step reads `(step RULE_INDEX RESOURCE [PREMISES] CONCLUSION WITNESS...)`")
        );
    };
    let premises = premises
        .iter()
        .map(|n| match n {
            Node::Nat(i) => Ok(*i as usize),
            _ => Err(at.error("premises are indices into hypotheses and earlier steps")),
        })
        .collect::<Result<_, _>>()?;
    let mut s = ProofStep::new(
        *rule,
        *resource,
        premises,
        datum(conclusion, position(conclusion, at))?,
    );
    s.witnesses = witnesses
        .iter()
        .map(|w| script(w, position(w, at)))
        .collect::<Result<_, _>>()?;
    Ok(s)
}

pub fn print_script(s: &ProofScript) -> String {
    let mut out = String::new();
    write_script(&mut out, s, 0);
    out
}

fn write_script(out: &mut String, s: &ProofScript, indent: usize) {
    let pad = " ".repeat(indent);
    let hyps: Vec<String> = s.hypotheses.iter().map(print).collect();
    out.push_str("(script\n");
    out.push_str(&format!(
        "{pad}  (hyps{}{})\n",
        if hyps.is_empty() { "" } else { " " },
        hyps.join(" ")
    ));
    out.push_str(&format!("{pad}  (goal {})", print(&s.goal)));
    for st in &s.steps {
        let premises: Vec<String> = st.premises.iter().map(usize::to_string).collect();
        out.push_str(&format!(
            "\n{pad}  (step {} {} [{}] {}",
            st.rule_index,
            st.resource,
            premises.join(" "),
            print(&st.conclusion)
        ));
        for w in &st.witnesses {
            out.push_str(&format!("\n{pad}    "));
            write_script(out, w, indent + 4);
        }
        out.push(')');
    }
    out.push(')');
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deduction::library_of;
    use proptest::prelude::*;

    #[test]
    fn constants_and_sugar() {
        assert_eq!(parse("T").unwrap(), raw::t());
        assert_eq!(print(&raw::f()), "F");
        let rho = library_of(&[RuleId::Conj]);
        let d = parse("(imp (and T F) (lib CONJ) F)").unwrap();
        assert_eq!(d, raw::neg(&rho, &raw::conj(&raw::t(), &raw::f())));
        assert_eq!(print(&d), "(neg (lib CONJ) (and T F))");
        assert_eq!(print(&raw::prove(&rho, &raw::t())), "(prove (lib CONJ) T)");
        let d = parse("(lib (alg RULE_DENY F) UNIV)").unwrap();
        assert_eq!(print(&d), "(lib (alg RULE_DENY F) UNIV)");
    }

    #[test]
    fn raw_printing_shows_quoted_library() {
        let d = parse("(sneg T)").unwrap();
        assert_eq!(print_raw(&d), "[(alg S_NEG) [(alg IDENTITY) 0 0] 1]");
        assert_eq!(parse(&print_raw(&d)).unwrap(), d);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("[1 2\n  (alg NOPE)]").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.message.contains("IDENTITY"), "{}", e.message);
        let e = parse("[1 2").unwrap_err();
        assert!(e.message.contains("unclosed"));
        let e = parse("(lib CONJ BOGUS)").unwrap_err();
        assert!(e.message.contains("STRONG_DEMORGAN"));
        assert!(parse("1 2").is_err());
        assert!(parse("(stmt 0 0 0)").is_err());
        assert!(parse("(alg BETA_HALTWITNESS)").is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        assert_eq!(parse("; truth\n  T ; again\n").unwrap(), raw::t());
    }

    #[test]
    fn script_round_trip() {
        let mut s = ProofStep::new(4, 11, vec![0, 1], raw::conj(&raw::t(), &raw::f()));
        s.witnesses.push(ProofScript {
            goal: raw::t(),
            hypotheses: vec![raw::t()],
            steps: vec![],
        });
        let script = ProofScript {
            goal: s.conclusion.clone(),
            hypotheses: vec![raw::t(), raw::f()],
            steps: vec![s],
        };
        let text = print_script(&script);
        assert_eq!(parse_script(&text).unwrap(), script);
    }

    fn any_datum() -> impl Strategy<Value = Datum> {
        let leaf = prop_oneof![
            (0u64..5).prop_map(Datum::Nat),
            prop::sample::select(ProgramId::all())
                .prop_filter("no captures", |p| p.arity() == 0)
                .prop_map(Datum::prog),
        ];
        leaf.prop_recursive(5, 40, 4, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 0..4).prop_map(Datum::list),
                (
                    prop::sample::select(ProgramId::all())
                        .prop_filter("no captures", |p| p.arity() == 0),
                    inner.clone(),
                    inner.clone()
                )
                    .prop_map(|(p, u, v)| raw::stmt(Datum::prog(p), u, v)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| raw::conj(&a, &b)),
                inner.clone().prop_map(|a| raw::strong_neg(&a)),
                (prop::collection::vec(inner.clone(), 0..3), inner.clone()).prop_map(|(g, b)| {
                    raw::turnstile(&g, &library_of(&[RuleId::Trans, RuleId::Conj]), &b)
                }),
                inner
                    .clone()
                    .prop_map(|c| Datum::alg(ProgramId::BetaHaltWitness, vec![c])),
                inner
                    .clone()
                    .prop_map(|c| Datum::alg(ProgramId::Rule(RuleId::Deny), vec![c])),
                prop::collection::vec(inner, 1..3).prop_map(|caps| {
                    let mut rules: Vec<Datum> = caps.into_iter().map(crate::rules::deny).collect();
                    rules.push(rule_datum(RuleId::Conj));
                    Datum::alg(ProgramId::LibFromList, vec![Datum::list(rules)])
                }),
            ]
        })
    }

    proptest! {
        #[test]
        fn parse_inverts_print(d in any_datum()) {
            prop_assert_eq!(parse(&print(&d)).unwrap(), d.clone());
            prop_assert_eq!(parse(&print_raw(&d)).unwrap(), d);
        }
    }
}
