use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(
        suite: &'static str,
        name: &str,
        passed: bool,
        witness: impl FnOnce() -> Value,
    ) -> Check {
        Check {
            suite,
            name: name.to_string(),
            status: if passed { Status::Pass } else { Status::Fail },
            witness: (!passed).then(witness),
            note: None,
        }
    }

    pub fn skip(suite: &'static str, name: &str, reason: impl Into<String>) -> Check {
        Check {
            suite,
            name: name.to_string(),
            status: Status::Skip,
            witness: None,
            note: Some(reason.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Invariants {
    pub rank: usize,
    pub order: usize,
    pub reflections: usize,
    pub hyperplanes: usize,
    pub conjugacy_classes: usize,
    pub degrees: Vec<u64>,
    pub exponents: Vec<u64>,
    pub coxeter_number: u64,
    pub ambient_conductor: u32,
    pub field_degree: u64,
    pub regular_numbers: Vec<u64>,
    pub irreducible: bool,
    pub well_generated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coxeter_classes: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PosetExport {
    /// Position among the Coxeter classes.
    pub class: usize,
    pub coxeter_element: usize,
    pub size: usize,
    pub catalan_number: u64,
    pub rank_sizes: Vec<usize>,
    /// `[element, rank]` pairs.
    pub nodes: Vec<[usize; 2]>,
    /// `[lower, upper]` cover pairs.
    pub covers: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsomorphismVerdict {
    pub a: usize,
    pub b: usize,
    pub isomorphic: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub group: String,
    pub invariants: Invariants,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub posets: Vec<PosetExport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub isomorphisms: Vec<IsomorphismVerdict>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .count()
            + self.isomorphisms.iter().filter(|v| !v.isomorphic).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(report),
        Format::Csv => render_csv(report),
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn render_text(r: &Report) -> String {
    let inv = &r.invariants;
    let mut out = String::new();
    let _ = writeln!(out, "group: {}", r.group);
    let _ = writeln!(out, "rank: {}", inv.rank);
    let _ = writeln!(out, "order: {}", inv.order);
    let _ = writeln!(out, "reflections: {}", inv.reflections);
    let _ = writeln!(out, "hyperplanes: {}", inv.hyperplanes);
    let _ = writeln!(out, "conjugacy classes: {}", inv.conjugacy_classes);
    let _ = writeln!(out, "degrees: {}", join(&inv.degrees));
    let _ = writeln!(out, "exponents: {}", join(&inv.exponents));
    let _ = writeln!(out, "coxeter number: {}", inv.coxeter_number);
    let _ = writeln!(out, "ambient conductor: {}", inv.ambient_conductor);
    let _ = writeln!(out, "field degree: {}", inv.field_degree);
    let _ = writeln!(out, "regular numbers: {}", join(&inv.regular_numbers));
    let _ = writeln!(out, "irreducible: {}", inv.irreducible);
    let _ = writeln!(out, "well-generated: {}", inv.well_generated);
    if let Some(c) = inv.coxeter_classes {
        let _ = writeln!(out, "coxeter classes: {c}");
    }
    if let Some(suite) = &r.suite {
        let _ = writeln!(out, "suite: {suite}");
    }
    for c in &r.checks {
        let status = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        let _ = write!(out, "{status} {}.{}", c.suite, c.name);
        if let Some(note) = &c.note {
            let _ = write!(out, " ({note})");
        }
        if let Some(w) = &c.witness {
            let _ = write!(out, " witness={w}");
        }
        out.push('\n');
    }
    for p in &r.posets {
        let _ = writeln!(
            out,
            "# nc class={} coxeter_element={} size={} catalan={} rank_sizes={}",
            p.class,
            p.coxeter_element,
            p.size,
            p.catalan_number,
            join(&p.rank_sizes)
        );
        for [w, rank] in &p.nodes {
            let _ = writeln!(out, "node {w} {rank}");
        }
        for [a, b] in &p.covers {
            let _ = writeln!(out, "{a} {b}");
        }
    }
    for v in &r.isomorphisms {
        let _ = writeln!(out, "isomorphic {} {} {}", v.a, v.b, v.isomorphic);
    }
    if let Some(t) = r.timing_ms {
        let _ = writeln!(out, "time: {t} ms");
    }
    let _ = writeln!(out, "result: {}", if r.passed { "pass" } else { "fail" });
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_csv(r: &Report) -> String {
    let mut out = String::from("section,key,value,detail\n");
    let inv = serde_json::to_value(&r.invariants).expect("invariants serialize");
    if let Value::Object(map) = inv {
        for (k, v) in map {
            let v = match v {
                Value::Array(xs) => xs
                    .iter()
                    .map(Value::to_string)
                    .collect::<Vec<_>>()
                    .join(" "),
                other => other.to_string(),
            };
            let _ = writeln!(out, "invariant,{k},{},", csv_field(&v));
        }
    }
    for c in &r.checks {
        let status = serde_json::to_value(c.status).expect("status serializes");
        let detail = c
            .witness
            .as_ref()
            .map(Value::to_string)
            .or_else(|| c.note.clone())
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "check,{}.{},{},{}",
            c.suite,
            c.name,
            status.as_str().unwrap_or_default(),
            csv_field(&detail)
        );
    }
    for p in &r.posets {
        for [w, rank] in &p.nodes {
            let _ = writeln!(out, "nc{}.node,{w},{rank},", p.class);
        }
        for [a, b] in &p.covers {
            let _ = writeln!(out, "nc{}.cover,{a},{b},", p.class);
        }
    }
    for v in &r.isomorphisms {
        let _ = writeln!(out, "isomorphic,{} {},{},", v.a, v.b, v.isomorphic);
    }
    let _ = writeln!(out, "result,passed,{},", r.passed);
    out
}
