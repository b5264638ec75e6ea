//! Command dispatch.

use std::ffi::OsString;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use qualprob_core::report::all_passed;
use qualprob_core::{
    check_family, decide_representability, deflate, extends_closure, represent_elementary,
    AxiomReport, Certificate, ComparativeRelation, Event, FamilyAxiom, NumericProbability,
    PcaOutcome, ProbabilityStructure, RelationError, Representability, RepresentationError,
    RepresentationResult, Scaling, Totality, Verdict, Witness,
};

use crate::document::{parse, relation_document, serialize, Document};
use crate::render::{combine, Printer, Status};

#[derive(Debug, Parser)]
#[command(
    name = "qualprob",
    version,
    about = "Checks and represents finite qualitative probability structures"
)]
pub struct Cli {
    /// Tab-separated output
    #[arg(long, global = true)]
    pub porcelain: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Run one axiom suite
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Document path, or `-` for standard input
        input: String,
    },
    /// Report rigid, complete, total and elementary
    Classify { input: String },
    /// Print the comparative relation induced by a structure
    Induce { input: String },
    /// Build a numeric representation
    Represent {
        #[arg(long, value_enum)]
        method: Method,
        /// Only for `--method elementary`
        #[arg(long, value_enum)]
        scaling: Option<ScalingArg>,
        input: String,
    },
    /// Decide additive representability of a relation
    Decide { input: String },
    /// Look for `P(A) > P(B)` with `P(Aᶜ) > P(Bᶜ)`
    Pca { input: String },
}

impl Command {
    pub fn input(&self) -> &str {
        match self {
            Command::Check { input, .. }
            | Command::Classify { input }
            | Command::Induce { input }
            | Command::Represent { input, .. }
            | Command::Decide { input }
            | Command::Pca { input } => input,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Family,
    Definetti,
    Structure,
    Kolmogorov,
    Inflated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Deflate,
    Elementary,
    Lp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScalingArg {
    Standard,
    Doubled,
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(message: impl std::fmt::Display) -> Self {
        Outcome {
            status: Status::Error,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Parses arguments, reads the input (from `stdin` when it is `-`) and runs.
pub fn main_with(
    args: impl IntoIterator<Item = impl Into<OsString> + Clone>,
    stdin: impl Read,
) -> Outcome {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    status: Status::Error,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    status: Status::Ok,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let path = cli.command.input();
    let text = if path == "-" {
        let mut s = String::new();
        let mut stdin = stdin;
        if let Err(e) = stdin.read_to_string(&mut s) {
            return Outcome::error(format!("cannot read standard input: {e}"));
        }
        s
    } else {
        match std::fs::read_to_string(path) {
            Ok(s) => s,
            Err(e) => return Outcome::error(format!("cannot read `{path}`: {}", io_reason(&e))),
        }
    };
    run(&cli.command, &text, cli.porcelain)
}

fn io_reason(e: &std::io::Error) -> String {
    match e.kind() {
        std::io::ErrorKind::NotFound => "no such file".into(),
        std::io::ErrorKind::PermissionDenied => "permission denied".into(),
        std::io::ErrorKind::InvalidData => "not valid UTF-8".into(),
        _ => e.to_string(),
    }
}

/// Runs a command on document text.
pub fn run(command: &Command, text: &str, porcelain: bool) -> Outcome {
    let doc = match parse(text) {
        Ok(d) => d,
        Err(e) => return Outcome::error(e),
    };
    let mut out = Printer::new(&doc.universe, porcelain);
    match dispatch(command, &doc, &mut out) {
        Ok(status) => Outcome {
            status,
            stdout: out.finish(),
            stderr: String::new(),
        },
        Err(message) => Outcome::error(message),
    }
}

fn dispatch(command: &Command, doc: &Document, out: &mut Printer) -> Result<Status, String> {
    match command {
        Command::Check { suite, .. } => check(*suite, doc, out),
        Command::Classify { .. } => classify(&structure(doc)?, out),
        Command::Induce { .. } => {
            let r = structure(doc)?.induced_relation();
            out.text(&serialize(&relation_document(&doc.universe, &r)));
            Ok(Status::Ok)
        }
        Command::Represent {
            method, scaling, ..
        } => {
            if scaling.is_some() && *method != Method::Elementary {
                return Err("--scaling applies only to --method elementary".into());
            }
            match method {
                Method::Deflate => {
                    let res = deflate(&numeric(doc)?).map_err(|e| describe(doc, e))?;
                    Ok(representation(&res, doc, out))
                }
                Method::Elementary => {
                    let scaling = match scaling {
                        Some(ScalingArg::Doubled) => Scaling::Doubled,
                        _ => Scaling::Standard,
                    };
                    let res = represent_elementary(&structure(doc)?, scaling)
                        .map_err(|e| describe(doc, e))?;
                    Ok(representation(&res, doc, out))
                }
                Method::Lp => {
                    let r = relation(doc)?;
                    match decide_representability(&r) {
                        Representability::Representable { witness, slack } => {
                            out.pair("slack", &slack.to_string());
                            values(&witness, doc, out);
                            let mut checks = witness.check_kolmogorov();
                            checks.push(extension_report(&witness, &r));
                            Ok(out.reports(&checks))
                        }
                        Representability::NotRepresentable(c) => Ok(not_representable(&c, out)),
                    }
                }
            }
        }
        Command::Decide { .. } => {
            let r = relation(doc)?;
            match decide_representability(&r) {
                Representability::Representable { witness, slack } => {
                    out.line("REPRESENTABLE", &[]);
                    out.pair("slack", &slack.to_string());
                    let n = doc.universe.len();
                    for i in 0..n {
                        let e = Event::singleton(n, i);
                        let v = witness.value(e).expect("witness is on the power set");
                        out.value("p", &doc.render(e), &v.to_string());
                    }
                    Ok(Status::Ok)
                }
                Representability::NotRepresentable(c) => Ok(not_representable(&c, out)),
            }
        }
        Command::Pca { .. } => match structure(doc)?.check_pca() {
            Ok(PcaOutcome::Holds) => {
                out.line("HOLDS", &[]);
                Ok(Status::Ok)
            }
            Ok(PcaOutcome::Counterexample(a, b)) => {
                out.line("COUNTEREXAMPLE", &[doc.render(a), doc.render(b)]);
                Ok(Status::Failed)
            }
            Err(e) => Err(e.to_string()),
        },
    }
}

fn check(suite: Suite, doc: &Document, out: &mut Printer) -> Result<Status, String> {
    let reports = match suite {
        Suite::Family => {
            let f = doc.family();
            [FamilyAxiom::Sip1, FamilyAxiom::Sip2, FamilyAxiom::Sip3]
                .into_iter()
                .map(|a| check_family(&f, a))
                .collect()
        }
        Suite::Definetti => {
            let r = relation(doc)?;
            let mut reports = r.check_de_finetti();
            reports.extend(r.check_derived());
            reports
        }
        Suite::Structure => {
            let p = structure(doc)?;
            let mut reports = p.check_axioms(true);
            // consequences whose own hypothesis fails are left out
            if all_passed(&reports) {
                reports.extend(
                    p.verify_consequences()
                        .into_iter()
                        .filter(|r| r.verdict() != Verdict::Undetermined),
                );
            }
            reports
        }
        Suite::Kolmogorov => numeric(doc)?.check_kolmogorov(),
        Suite::Inflated => numeric(doc)?.check_inflated(),
    };
    Ok(out.reports(&reports))
}

fn classify(p: &ProbabilityStructure, out: &mut Printer) -> Result<Status, String> {
    let c = p.classify();
    let yes = |b: bool| if b { "yes" } else { "no" };
    out.pair("rigid", yes(c.rigid));
    match p.completeness() {
        Totality::Total => out.pair("complete", "yes"),
        Totality::Incomparable(a, b) => {
            out.pair("complete", &format!("no, {a} and {b} are incomparable"))
        }
    }
    out.pair("total", yes(c.total));
    out.pair("elementary", c.elementary.map_or("n/a", yes));
    for n in &c.notes {
        out.pair("note", n);
    }
    Ok(Status::Ok)
}

fn representation(res: &RepresentationResult, doc: &Document, out: &mut Printer) -> Status {
    values(&res.target, doc, out);
    let (src, tgt) = (res.map.source(), res.map.target());
    for c in 0..src.class_count() {
        out.value("f", src.class_name(c), tgt.class_name(res.map.apply(c)));
    }
    out.reports(&res.verification)
}

fn values(n: &NumericProbability, doc: &Document, out: &mut Printer) {
    for (&e, v) in n.family().events().iter().zip(n.values()) {
        out.value("Q", &doc.render(e), &v.to_string());
    }
}

fn extension_report(witness: &NumericProbability, r: &ComparativeRelation) -> AxiomReport {
    let mut w = Vec::new();
    if !extends_closure(witness, r) {
        w.push(Witness::events("closure-not-extended", []));
    }
    AxiomReport::from_witnesses("EXTENDS", w)
}

fn not_representable(c: &Certificate, out: &mut Printer) -> Status {
    out.line("NOT REPRESENTABLE", &[]);
    let status = match c {
        Certificate::Cyclic(woa) => {
            out.pair("certificate", "cyclic");
            out.report(woa)
        }
        Certificate::Infeasible(Some(slack)) => {
            out.pair("certificate", &format!("best slack {slack}"));
            Status::Failed
        }
        Certificate::Infeasible(None) => {
            out.pair("certificate", "no weights satisfy the equivalences");
            Status::Failed
        }
    };
    combine(&[status, Status::Failed])
}

enum Driver {
    Labelled,
    Numeric,
    Relation,
}

/// The one section that drives a structure command.
fn driver(doc: &Document) -> Result<Driver, String> {
    let mut present = Vec::new();
    if doc.scale.is_some() {
        present.push((Driver::Labelled, "scale"));
    }
    if doc.assignment.is_some() {
        present.push((Driver::Numeric, "assign"));
    }
    if doc.relation.is_some() {
        present.push((Driver::Relation, "rel"));
    }
    match present.len() {
        0 => Err("the document has no `scale`, `assign` or `rel` section".into()),
        1 => Ok(present.pop().expect("one entry").0),
        _ => Err(format!(
            "the document has both `{}` and `{}` sections; keep one",
            present[0].1, present[1].1
        )),
    }
}

fn structure(doc: &Document) -> Result<ProbabilityStructure, String> {
    match driver(doc)? {
        Driver::Labelled => doc.labelled_structure().expect("scale present"),
        Driver::Numeric => Ok(numeric(doc)?.as_structure()),
        Driver::Relation => {
            let r = doc.comparative().expect("relation present");
            r.to_structure().map_err(|e| match e {
                RelationError::CycleDetected(a) => {
                    format!("the relation has a cycle through {}", doc.render(a))
                }
                other => other.to_string(),
            })
        }
    }
}

fn relation(doc: &Document) -> Result<ComparativeRelation, String> {
    match driver(doc)? {
        Driver::Relation => Ok(doc.comparative().expect("relation present")),
        _ => Ok(structure(doc)?.induced_relation()),
    }
}

fn numeric(doc: &Document) -> Result<NumericProbability, String> {
    doc.numeric()
        .unwrap_or_else(|| Err("this command needs `assign` lines".into()))
}

fn describe(doc: &Document, e: RepresentationError) -> String {
    match e {
        RepresentationError::IllDefinedMap(a, b) => format!(
            "{} and {} share a scale class but receive different values",
            doc.render(a),
            doc.render(b)
        ),
        other => other.to_string(),
    }
}
