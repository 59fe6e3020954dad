//! `algolog`: evaluate processes, run deductions and check proof scripts.

mod report;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use algolog::datum::{enumerate_data, DEFAULT_ENUM_CAP};
use algolog::deduction::{
    certify, closure_stages, deduce_traced, Certification, DeduceError, Deduction,
};
use algolog::lawsuite::{
    certified_paradox, paradox_demo, paradox_setting, run_law_suite, stronger_library_demo,
};
use algolog::rules::rule_id;
use algolog::statements::{evaluate, Statement, TruthVerdict};
use algolog::text::{self, ParseError};
use algolog::{Datum, Machine, MachineError, ProgramId, RuleId, RunResult, Universe};
use clap::{Parser, Subcommand, ValueEnum};

use report::{Outcome, Report, Stage};

#[derive(Parser)]
#[command(
    name = "algolog",
    version,
    about = "Type-free algorithmic logic on a fuel-bounded machine"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Step budget for every process the command runs.
    #[arg(long, global = true, default_value_t = 100_000)]
    fuel: u64,
    /// Include per-stage rule firings or per-process records.
    #[arg(long, global = true)]
    trace: bool,
    /// Print data without statement sugar.
    #[arg(long, global = true)]
    raw: bool,
    /// `full`, `reduced`, or a comma-separated list of program names.
    #[arg(long, global = true, default_value = "full")]
    universe: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run an algorithm on an input.
    Eval { alg: String, input: String },
    /// Evaluate the truth of a statement.
    Truth { statement: String },
    /// Forward-chain from hypotheses under a library until the goal appears.
    Deduce {
        gamma: String,
        library: String,
        goal: String,
    },
    /// List the stages H_0..H_K.
    Closure {
        gamma: String,
        library: String,
        #[arg(long, default_value_t = 5)]
        stages: u64,
    },
    /// Check a proof script file (`-` for stdin) against a library.
    Certify { script: PathBuf, library: String },
    /// Certify the law suite over its statement pool.
    Laws {
        #[arg(long)]
        filter: Option<String>,
    },
    /// Demonstrate the instability of a paradoxical rule (P1 to P14).
    Paradox { rule: String },
    /// Extend the base library by MP_FIXED, DENY and UNIV and compare.
    Stronger,
    /// List every datum up to a size.
    Enum {
        #[arg(long)]
        max_size: u64,
    },
}

#[derive(Debug)]
enum Failure {
    Parse(&'static str, ParseError),
    Usage(String),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Parse(what, e) => write!(f, "cannot parse {what}: {e}"),
            Failure::Usage(msg) => f.write_str(msg),
        }
    }
}

struct Env {
    fuel: u64,
    trace: bool,
    raw: bool,
    universe: Universe,
}

impl Env {
    fn show(&self, d: &Datum) -> String {
        if self.raw {
            text::print_raw(d)
        } else {
            text::print(d)
        }
    }

    fn machine(&self) -> Machine {
        Machine::new(self.universe.clone())
    }
}

fn parse(what: &'static str, s: &str) -> Result<Datum, Failure> {
    text::parse(s).map_err(|e| Failure::Parse(what, e))
}

fn parse_universe(s: &str) -> Result<Universe, Failure> {
    match s {
        "full" => Ok(Universe::full()),
        "reduced" => Ok(Universe::reduced()),
        names => names
            .split(',')
            .map(|n| {
                n.trim().parse::<ProgramId>().map_err(|_| {
                    let known: Vec<String> = ProgramId::all().iter().map(|p| p.name()).collect();
                    Failure::Usage(format!(
                        "unknown program `{n}`; known programs: {}",
                        known.join(" ")
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Universe::new),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let universe = match parse_universe(&cli.universe) {
        Ok(u) => u,
        Err(e) => return fail(e),
    };
    let env = Env {
        fuel: cli.fuel,
        trace: cli.trace,
        raw: cli.raw,
        universe,
    };
    match run(&env, cli.command) {
        Ok(report) => {
            let rendered = match cli.format {
                Format::Text => report.render_text(),
                Format::Json => report.render_json() + "\n",
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().write_all(rendered.as_bytes());
            report.outcome.code()
        }
        Err(e) => fail(e),
    }
}

fn fail(e: Failure) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn run(env: &Env, command: Command) -> Result<Report, Failure> {
    match command {
        Command::Eval { alg, input } => eval(env, &alg, &input),
        Command::Truth { statement } => truth(env, &statement),
        Command::Deduce {
            gamma,
            library,
            goal,
        } => deduce(env, &gamma, &library, &goal),
        Command::Closure {
            gamma,
            library,
            stages,
        } => closure(env, &gamma, &library, stages),
        Command::Certify { script, library } => certify_file(env, &script, &library),
        Command::Laws { filter } => laws(env, filter.as_deref()),
        Command::Paradox { rule } => paradox(env, &rule),
        Command::Stronger => stronger(env),
        Command::Enum { max_size } => enumerate(env, max_size),
    }
}

fn machine_error(report: &mut Report, subject: &str, e: &MachineError) {
    report.verdict(subject, "Infeasible", Some(e.to_string()));
    report.settle(Outcome::ResourceLimit);
}

fn eval(env: &Env, alg: &str, input: &str) -> Result<Report, Failure> {
    let (alg, input) = (parse("algorithm", alg)?, parse("input", input)?);
    let mut report = Report::new("eval", env.fuel);
    report
        .input("alg", env.show(&alg))
        .input("input", env.show(&input));
    match env.machine().run_traced(&alg, &input, env.fuel) {
        Ok((result, calls)) => {
            if env.trace {
                report.stages = calls
                    .iter()
                    .enumerate()
                    .map(|(i, c)| Stage {
                        index: i as u64,
                        label: format!("{} halted", c.program),
                        items: vec![],
                    })
                    .collect();
                report.runtimes = calls.iter().map(|c| c.runtime).collect();
            }
            match result {
                RunResult::Halted { output, runtime } => {
                    report.verdict(
                        "result",
                        "Halted",
                        Some(format!("output {}", env.show(&output))),
                    );
                    if !env.trace {
                        report.runtimes.push(runtime);
                    }
                }
                RunResult::OutOfFuel { consumed } => {
                    report.verdict("result", "OutOfFuel", Some(format!("consumed {consumed}")));
                    report.settle(Outcome::ResourceLimit);
                }
            }
        }
        Err(MachineError::NotAnAlgorithm(d)) => {
            return Err(Failure::Usage(format!(
                "{} is not an algorithm",
                env.show(&d)
            )));
        }
        Err(e) => machine_error(&mut report, "result", &e),
    }
    Ok(report)
}

fn truth(env: &Env, statement: &str) -> Result<Report, Failure> {
    let d = parse("statement", statement)?;
    let s = Statement::new(d.clone())
        .map_err(|_| Failure::Usage(format!("{} is not a statement", env.show(&d))))?;
    let mut report = Report::new("truth", env.fuel);
    report.input("statement", env.show(&d));
    match evaluate(&env.machine(), &s, env.fuel) {
        Ok(e) => {
            let (word, outcome) = match e.verdict {
                TruthVerdict::True => ("True", Outcome::Success),
                TruthVerdict::DirectlyFalse => ("DirectlyFalse", Outcome::Falsified),
                TruthVerdict::Unknown(_) => ("Unknown", Outcome::ResourceLimit),
            };
            report.verdict("truth", word, None);
            report.runtimes.extend(e.runtime);
            report.settle(outcome);
        }
        Err(e) => machine_error(&mut report, "truth", &e),
    }
    Ok(report)
}

fn library(env: &Env, s: &str) -> Result<Datum, Failure> {
    let lib = parse("library", s)?;
    if algolog::deduction::library_rules(&lib).is_none() {
        return Err(Failure::Usage(format!(
            "{} is not a library; write (lib RULE ...)",
            env.show(&lib)
        )));
    }
    Ok(lib)
}

fn hypotheses(s: &str) -> Result<Vec<Datum>, Failure> {
    text::parse_list(s).map_err(|e| Failure::Parse("hypotheses", e))
}

fn rule_label(env: &Env, rule_index: u64, resource: u64, rule: Option<&Datum>) -> String {
    let name = match rule {
        Some(r) => rule_id(r)
            .map(|id| id.name().to_string())
            .unwrap_or_else(|| env.show(r)),
        None => "(no rule)".into(),
    };
    format!("rule {rule_index} {name} at m={resource}")
}

fn deduce(env: &Env, gamma: &str, lib: &str, goal: &str) -> Result<Report, Failure> {
    let (gamma, rho, goal) = (hypotheses(gamma)?, library(env, lib)?, parse("goal", goal)?);
    let mut report = Report::new("deduce", env.fuel);
    report
        .input("gamma", env.show(&Datum::list(gamma.clone())))
        .input("library", env.show(&rho))
        .input("goal", env.show(&goal));
    match deduce_traced(&env.machine(), &gamma, &rho, &goal, env.fuel, env.trace) {
        Ok((d, stages)) => {
            report.stages = stages
                .iter()
                .map(|s| Stage {
                    index: s.index,
                    label: rule_label(env, s.rule_index, s.resource, s.rule.as_ref()),
                    items: s.appended.iter().map(|x| env.show(x)).collect(),
                })
                .collect();
            match d {
                Deduction::ProvedAtStage { stage, runtime } => {
                    report.verdict("deduction", "Proved", Some(format!("stage {stage}")));
                    report.runtimes.push(runtime);
                }
                Deduction::FuelExhausted { consumed } => {
                    report.verdict(
                        "deduction",
                        "FuelExhausted",
                        Some(format!("consumed {consumed}")),
                    );
                    report.settle(Outcome::ResourceLimit);
                }
            }
        }
        Err(DeduceError::Infeasible(e)) => {
            report.verdict("deduction", "Infeasible", Some(e.to_string()));
            report.settle(Outcome::ResourceLimit);
        }
    }
    Ok(report)
}

fn closure(env: &Env, gamma: &str, lib: &str, stages: u64) -> Result<Report, Failure> {
    let (gamma, rho) = (hypotheses(gamma)?, library(env, lib)?);
    let mut report = Report::new("closure", env.fuel);
    report
        .input("gamma", env.show(&Datum::list(gamma.clone())))
        .input("library", env.show(&rho))
        .input("stages", stages.to_string());
    match closure_stages(&env.machine(), &gamma, &rho, stages, env.fuel) {
        Ok(c) => {
            report.stages = c
                .stages
                .iter()
                .enumerate()
                .map(|(i, h)| Stage {
                    index: i as u64,
                    label: format!("H_{i} ({} items)", h.len()),
                    items: h.iter().map(|x| env.show(x)).collect(),
                })
                .collect();
            let computed = c.stages.len() as u64 - 1;
            if c.exhausted {
                report.verdict(
                    "closure",
                    "FuelExhausted",
                    Some(format!("{computed} of {stages} stages")),
                );
                report.settle(Outcome::ResourceLimit);
            } else {
                report.verdict("closure", "Complete", Some(format!("{computed} stages")));
            }
        }
        Err(DeduceError::Infeasible(e)) => {
            report.verdict("closure", "Infeasible", Some(e.to_string()));
            report.settle(Outcome::ResourceLimit);
        }
    }
    Ok(report)
}

fn certification(report: &mut Report, subject: String, c: &Certification) {
    match c {
        Certification::Certified => report.verdict(subject, "Certified", None),
        Certification::StepFailed { index, reason } => {
            report.verdict(
                subject,
                "StepFailed",
                Some(format!("step {index}: {reason}")),
            );
            report.settle(Outcome::Falsified);
        }
    }
}

fn certify_file(env: &Env, path: &PathBuf, lib: &str) -> Result<Report, Failure> {
    let source = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let script = text::parse_script(&source).map_err(|e| Failure::Parse("script", e))?;
    let rho = library(env, lib)?;
    let mut report = Report::new("certify", env.fuel);
    report
        .input("script", path.display().to_string())
        .input("library", env.show(&rho))
        .input("goal", env.show(&script.goal));
    let c = certify(&env.machine(), &script, &rho, env.fuel);
    certification(&mut report, "script".into(), &c);
    Ok(report)
}

fn laws(env: &Env, filter: Option<&str>) -> Result<Report, Failure> {
    let mut report = Report::new("laws", env.fuel);
    if let Some(f) = filter {
        report.input("filter", f);
    }
    report.input(
        "universe",
        format!("{} programs", env.universe.programs().len()),
    );
    let suite = run_law_suite(env.universe.clone(), env.fuel, filter);
    if suite.outcomes.is_empty() {
        return Err(Failure::Usage(format!(
            "no law matches `{}`",
            filter.unwrap_or("")
        )));
    }
    for o in &suite.outcomes {
        let summary = format!(
            "{} of {} instances certified, {} skipped",
            o.certified, o.instances, o.skipped
        );
        if o.passed() {
            report.verdict(
                format!("{} [{}]", o.name, o.statement),
                "Certified",
                Some(summary),
            );
        } else {
            let first = o
                .failures
                .first()
                .map(|(inst, c)| {
                    let inst: Vec<String> = inst.iter().map(|d| env.show(d)).collect();
                    format!("; first failure at [{}]: {c:?}", inst.join(" "))
                })
                .unwrap_or_default();
            report.verdict(
                format!("{} [{}]", o.name, o.statement),
                "Failed",
                Some(summary + &first),
            );
            report.settle(Outcome::Falsified);
        }
    }
    Ok(report)
}

fn verdict_word(v: &Result<TruthVerdict, MachineError>) -> (&'static str, Option<String>) {
    match v {
        Ok(TruthVerdict::True) => ("True", None),
        Ok(TruthVerdict::DirectlyFalse) => ("DirectlyFalse", None),
        Ok(TruthVerdict::Unknown(c)) => ("Unknown", Some(format!("consumed {c}"))),
        Err(e) => ("Infeasible", Some(e.to_string())),
    }
}

fn paradox(env: &Env, rule: &str) -> Result<Report, Failure> {
    let p: RuleId = rule
        .parse()
        .ok()
        .filter(|p: &RuleId| p.is_paradoxical())
        .ok_or_else(|| Failure::Usage(format!("`{rule}` is not one of P1 to P14")))?;
    let mut report = Report::new("paradox", env.fuel);
    report.input("rule", p.name());
    if paradox_setting(p).is_ok() {
        let demo = paradox_demo(p, env.fuel).expect("supported rule");
        report
            .input("library", env.show(&demo.library))
            .input("curry", env.show(&demo.curry));
        for (subject, v) in [
            ("Q", &demo.curry_truth),
            ("not Q", &demo.negation_truth),
            ("F", &demo.falsum_truth),
        ] {
            let (w, detail) = verdict_word(v);
            report.verdict(subject, w, detail);
        }
        match &demo.derivation {
            Ok(Deduction::ProvedAtStage { stage, runtime }) => {
                report.verdict("Q |- F", "Proved", Some(format!("stage {stage}")));
                report.runtimes.push(*runtime);
            }
            Ok(Deduction::FuelExhausted { consumed }) => report.verdict(
                "Q |- F",
                "FuelExhausted",
                Some(format!("consumed {consumed}")),
            ),
            Err(e) => report.verdict("Q |- F", "Infeasible", Some(e.to_string())),
        }
        if !demo.exhibits_unsoundness() {
            let blocked = matches!(
                demo.derivation,
                Err(_) | Ok(Deduction::FuelExhausted { .. })
            );
            report.settle(if blocked {
                Outcome::ResourceLimit
            } else {
                Outcome::Falsified
            });
        }
    }
    let machine = Machine::default();
    let scripts = certified_paradox(&machine, p, env.fuel).expect("paradoxical rule");
    report.input("script library", env.show(&scripts.library));
    for ((what, _), c) in scripts
        .scripts
        .iter()
        .zip(scripts.certify(&machine, env.fuel))
    {
        certification(&mut report, format!("script: {what}"), &c);
    }
    Ok(report)
}

fn stronger(env: &Env) -> Result<Report, Failure> {
    let s = stronger_library_demo(env.fuel);
    let mut report = Report::new("stronger", env.fuel);
    report
        .input("weaker", env.show(&s.weaker))
        .input("stronger", env.show(&s.stronger))
        .input("denied", env.show(&s.denied));
    for (subject, r) in [
        ("stronger: C |- F", &s.stronger_run),
        ("weaker: C |- F", &s.weaker_run),
    ] {
        match r {
            Ok(Deduction::ProvedAtStage { stage, runtime }) => {
                report.verdict(subject, "Proved", Some(format!("stage {stage}")));
                report.runtimes.push(*runtime);
            }
            Ok(Deduction::FuelExhausted { consumed }) => report.verdict(
                subject,
                "FuelExhausted",
                Some(format!("consumed {consumed}")),
            ),
            Err(e) => report.verdict(subject, "Infeasible", Some(e.to_string())),
        }
    }
    if s.stronger_run.ok().and_then(|d| d.stage()).is_none() {
        report.settle(Outcome::Falsified);
    }
    Ok(report)
}

fn enumerate(env: &Env, max_size: u64) -> Result<Report, Failure> {
    let mut report = Report::new("enum", env.fuel);
    report.input("max_size", max_size.to_string());
    match enumerate_data(&env.universe, max_size, DEFAULT_ENUM_CAP) {
        Ok(all) => {
            let mut by_size: Vec<Stage> = Vec::new();
            for d in &all {
                let size = d.size();
                if by_size.last().is_none_or(|s| s.index != size) {
                    by_size.push(Stage {
                        index: size,
                        label: String::new(),
                        items: vec![],
                    });
                }
                by_size.last_mut().expect("pushed").items.push(env.show(d));
            }
            for s in &mut by_size {
                s.label = format!("size {} ({} data)", s.index, s.items.len());
            }
            report.stages = by_size;
            report.verdict(
                "enumeration",
                "Complete",
                Some(format!("{} data", all.len())),
            );
        }
        Err(e) => {
            report.verdict("enumeration", "Infeasible", Some(e.to_string()));
            report.settle(Outcome::ResourceLimit);
        }
    }
    Ok(report)
}
