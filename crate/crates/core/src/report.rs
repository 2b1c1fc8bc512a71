//! Command reports and their JSON and text forms.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cantor::Explication;
use crate::error::{Error, Result};
use crate::setsys::{ClosureConvention, SetSystem, SystemFlags};
use crate::subset::Subset;
use crate::verdict::{Status, Verdict};
use crate::verify::SweepReport;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CantorSummary {
    pub plus: bool,
    pub minus: bool,
    pub commutative: bool,
    pub preserves_unfamily: bool,
    pub integrity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Subset { subset: Vec<usize> },
    System { system: Vec<Vec<usize>> },
    Flags(SystemFlags),
    Rooms { rooms: Vec<Vec<usize>>, partition: bool },
    Cantor(CantorSummary),
    Explication(Explication),
    Verdict(Verdict),
    Sweep(SweepReport),
}

impl Payload {
    pub fn subset(s: Subset) -> Payload {
        Payload::Subset { subset: s.to_vec() }
    }

    pub fn system(a: &SetSystem) -> Payload {
        Payload::System {
            system: a.to_index_lists(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub convention: ClosureConvention,
    pub result: Payload,
}

impl Report {
    pub fn new(command: impl Into<String>, convention: ClosureConvention, result: Payload) -> Report {
        Report {
            version: VERSION.to_string(),
            command: command.into(),
            convention,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command     {}", self.command);
        let _ = writeln!(out, "convention  {}", self.convention.name());
        match &self.result {
            Payload::Subset { subset } => {
                let _ = writeln!(out, "result      {}", set_text(subset));
            }
            Payload::System { system } => {
                let _ = writeln!(out, "result      {}", system_text(system));
            }
            Payload::Rooms { rooms, partition } => {
                let _ = writeln!(out, "rooms       {}", system_text(rooms));
                let _ = writeln!(out, "partition   {partition}");
            }
            Payload::Flags(f) => {
                for (k, v) in [
                    ("covers_ground", f.covers_ground),
                    ("is_topology", f.is_topology),
                    ("is_self_dual", f.is_self_dual),
                    ("is_complete", f.is_complete),
                    ("is_quasitopology", f.is_quasitopology),
                    ("is_partition", f.is_partition),
                    ("is_T0", f.is_t0),
                ] {
                    let _ = writeln!(out, "{k:<18}{v}");
                }
            }
            Payload::Cantor(c) => {
                for (k, v) in [
                    ("C+", c.plus),
                    ("C-", c.minus),
                    ("commutative", c.commutative),
                    ("preserves_unfamily", c.preserves_unfamily),
                    ("integrity", c.integrity),
                ] {
                    let _ = writeln!(out, "{k:<20}{v}");
                }
            }
            Payload::Explication(e) => {
                let _ = writeln!(out, "lhs     {}", e.lhs);
                let _ = writeln!(out, "rhs_A   {}", e.rhs_a);
                let _ = writeln!(out, "rhs_Ac  {}", e.rhs_ac);
                let _ = writeln!(out, "agree   {}", e.agrees());
            }
            Payload::Verdict(v) => verdict_text(&mut out, v),
            Payload::Sweep(r) => sweep_text(&mut out, r),
        }
        out
    }
}

fn set_text(s: &[usize]) -> String {
    let items: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn system_text(a: &[Vec<usize>]) -> String {
    if a.is_empty() {
        return "[]".into();
    }
    let items: Vec<String> = a.iter().map(|s| set_text(s)).collect();
    format!("{{{}}}", items.join(", "))
}

fn status_text(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Fails => "fails",
        Status::Skipped => "skipped",
    }
}

fn verdict_text(out: &mut String, v: &Verdict) {
    let _ = writeln!(out, "status      {}", status_text(v.status));
    if !v.note.is_empty() {
        let _ = writeln!(out, "note        {}", v.note);
    }
    if let Some(w) = &v.witness {
        let _ = writeln!(out, "witness     {}", w.to_json());
    }
}

fn sweep_text(out: &mut String, r: &SweepReport) {
    let mode = match r.samples {
        Some(s) => format!("random ({s} samples)"),
        None => "exhaustive".into(),
    };
    let _ = writeln!(out, "theorem     {} [{}]", r.theorem, r.label);
    let _ = writeln!(out, "ground      {}", r.n);
    let _ = writeln!(out, "mode        {mode}");
    let _ = writeln!(out, "seed        {}", r.seed);
    let _ = writeln!(out, "instances   {}", r.instance_count);
    let _ = writeln!(out, "holds       {}", r.hold_count);
    let _ = writeln!(out, "fails       {}", r.fail_count);
    let _ = writeln!(out, "skipped     {}", r.skip_count);
    for (k, v) in &r.tallies {
        let _ = writeln!(out, "tally       {k} = {v}");
    }
    if let Some(ms) = r.elapsed_ms {
        let _ = writeln!(out, "elapsed     {ms} ms");
    }
    for (i, c) in r.counterexamples.iter().enumerate() {
        let w = c.witness.as_ref().map(|w| w.to_json()).unwrap_or_default();
        let _ = writeln!(out, "counterexample {}: {}  {}", i + 1, c.note, w);
    }
}

pub fn parse_report(source: &str) -> Result<Report> {
    serde_json::from_str(source).map_err(|e| Error::Parse {
        locus: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })
}
