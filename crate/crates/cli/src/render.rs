//! Report text. Every finding is one line; porcelain output separates the
//! fields of a line with tabs.

use qualprob_core::{AxiomReport, Term, Universe, Verdict};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    Failed = 1,
    Error = 2,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// Collects output lines in either the human or the porcelain layout.
pub struct Printer<'u> {
    universe: &'u Universe,
    porcelain: bool,
    out: String,
}

impl<'u> Printer<'u> {
    pub fn new(universe: &'u Universe, porcelain: bool) -> Self {
        Printer {
            universe,
            porcelain,
            out: String::new(),
        }
    }

    pub fn term(&self, t: &Term) -> String {
        match t {
            Term::Event(e) => self.universe.render(*e),
            Term::Element(s) => s.clone(),
        }
    }

    /// Writes a line from a head and fields. Human layout: `head f1 f2 …`.
    pub fn line(&mut self, head: &str, fields: &[String]) {
        self.out.push_str(head);
        for f in fields {
            self.out.push(if self.porcelain { '\t' } else { ' ' });
            self.out.push_str(f);
        }
        self.out.push('\n');
    }

    /// Writes `name value` as `name: value`, or tab separated.
    pub fn pair(&mut self, name: &str, value: &str) {
        if self.porcelain {
            self.line(name, &[value.to_string()]);
        } else {
            self.out.push_str(&format!("{name}: {value}\n"));
        }
    }

    /// Writes `f(arg) = value`, or three tab separated fields.
    pub fn value(&mut self, f: &str, arg: &str, value: &str) {
        if self.porcelain {
            self.line(f, &[arg.to_string(), value.to_string()]);
        } else {
            self.out.push_str(&format!("{f}({arg}) = {value}\n"));
        }
    }

    pub fn text(&mut self, s: &str) {
        self.out.push_str(s);
    }

    /// One line per witness for a failure, otherwise one line.
    pub fn report(&mut self, r: &AxiomReport) -> Status {
        match r.verdict() {
            Verdict::Pass => {
                self.line("PASS", &[r.axiom.to_string()]);
                Status::Ok
            }
            Verdict::Undetermined => {
                let note = r.note().unwrap_or_default();
                if self.porcelain {
                    self.line("ERROR", &[r.axiom.to_string(), note.to_string()]);
                } else {
                    self.out.push_str(&format!("ERROR {}: {note}\n", r.axiom));
                }
                Status::Error
            }
            Verdict::Fail => {
                for w in r.witnesses() {
                    let terms: Vec<String> = w.terms.iter().map(|t| self.term(t)).collect();
                    if self.porcelain {
                        let mut fields = vec![r.axiom.to_string(), w.clause.to_string()];
                        fields.extend(terms);
                        self.line("FAIL", &fields);
                    } else {
                        self.out.push_str(&format!(
                            "FAIL {} {}: {}\n",
                            r.axiom,
                            w.clause,
                            terms.join(" ")
                        ));
                    }
                }
                Status::Failed
            }
        }
    }

    /// Prints every report; a failure outranks an undetermined check.
    pub fn reports(&mut self, rs: &[AxiomReport]) -> Status {
        let statuses: Vec<Status> = rs.iter().map(|r| self.report(r)).collect();
        combine(&statuses)
    }

    pub fn finish(self) -> String {
        self.out
    }
}

/// `Failed` if any status failed, else `Error` if any errored, else `Ok`.
pub fn combine(statuses: &[Status]) -> Status {
    if statuses.contains(&Status::Failed) {
        Status::Failed
    } else if statuses.contains(&Status::Error) {
        Status::Error
    } else {
        Status::Ok
    }
}
