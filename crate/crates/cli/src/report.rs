//! Command results, rendered as text or as versioned JSON.
//!
//! Every JSON document carries `"schema": "qchoice-report/1"` and a
//! `"command"` tag; failures carry an `"error"` object instead. Text output
//! is derived from the same structures, so both forms hold the same fields.

use std::fmt::Write as _;

use serde::Serialize;

pub const SCHEMA: &str = "qchoice-report/1";

#[derive(Serialize, Debug)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Report {
    Check(CheckReport),
    Numbers(NumbersReport),
    Synth(SynthReport),
    Verify(VerifyReport),
    Gen(GenReport),
    Bounds(BoundsReport),
}

#[derive(Serialize, Debug)]
pub struct Witness {
    pub item: String,
    pub menu_a: String,
    pub menu_b: String,
    pub description: String,
}

#[derive(Serialize, Debug)]
pub struct AxiomVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

#[derive(Serialize, Debug)]
pub struct CheckReport {
    pub items: Vec<String>,
    pub alpha: AxiomVerdict,
    pub gamma: AxiomVerdict,
    /// `not rationalizable`, `freely rationalizable` or
    /// `freely rationalizable (also asymmetrically)`.
    pub class: String,
    /// Edges `[from, to]` of the revealed relation when it rationalizes.
    pub rationalizing_voter: Option<Vec<[String; 2]>>,
}

#[derive(Serialize, Debug)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LibOut {
    Exact { value: usize },
    Infinite,
}

#[derive(Serialize, Debug)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DemOut {
    Exact {
        value: usize,
        explored: u64,
    },
    Interval {
        lo: usize,
        hi: usize,
        explored: u64,
    },
    Infinite,
    NotComputed {
        reason: String,
        upper: Option<usize>,
    },
}

#[derive(Serialize, Debug)]
pub struct OracleOut {
    pub lib: Option<usize>,
    pub dem: Option<usize>,
    pub lib_kmax: usize,
    pub dem_kmax: usize,
    pub agrees: bool,
}

#[derive(Serialize, Debug)]
pub struct NumbersReport {
    pub items: usize,
    pub lib: LibOut,
    pub dem: DemOut,
    pub sperner_bound: String,
    pub lib_within_sperner: Option<bool>,
    pub dem_at_most_twice_lib: Option<bool>,
    pub lib_at_most_pow_dem: Option<bool>,
    pub oracle: Option<OracleOut>,
    /// Why the oracle was not run, when it was requested.
    pub oracle_skipped: Option<String>,
}

#[derive(Serialize, Debug)]
pub struct TraceOut {
    pub base_size: u64,
    pub m: u64,
    pub t: String,
    pub neutral_added: u64,
    pub hypercritical_added: u64,
    pub replication_factor: u64,
    pub size: u64,
}

#[derive(Serialize, Debug)]
pub struct SynthReport {
    pub share: String,
    pub ballots: usize,
    pub trace: TraceOut,
    pub verified: bool,
    pub output: Option<String>,
    /// The ballot file, when no output path was given.
    pub document: Option<String>,
}

#[derive(Serialize, Debug)]
pub struct Counterexample {
    pub menu: String,
    pub item: String,
    pub count: u64,
    pub k: u64,
    /// `should_be_chosen` or `should_be_rejected`.
    pub direction: String,
}

#[derive(Serialize, Debug)]
pub struct VerifyReport {
    pub share: String,
    pub ballots: usize,
    pub verified: bool,
    pub counterexample: Option<Counterexample>,
}

#[derive(Serialize, Debug)]
pub struct GenReport {
    pub kind: String,
    pub description: String,
    pub items: usize,
    pub files: Vec<String>,
    /// The choice file, when no output path was given.
    pub document: Option<String>,
}

#[derive(Serialize, Debug)]
pub struct BoundsReport {
    pub items: u64,
    pub sperner_bound: String,
    pub asymptotic_ratio: f64,
    /// A choice attaining the bound, as `c_{n,k}` parameters.
    pub tight_example: Option<[usize; 2]>,
    pub numbers: Option<NumbersReport>,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    #[serde(flatten)]
    body: &'a T,
}

fn print_json<T: Serialize>(body: &T) {
    let text = serde_json::to_string_pretty(&Envelope {
        schema: SCHEMA,
        body,
    })
    .expect("reports serialize");
    println!("{text}");
}

fn yes_no(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "NO",
        None => "n/a",
    }
}

fn show_opt(v: Option<usize>) -> String {
    v.map_or("none found".to_string(), |k| k.to_string())
}

impl Report {
    pub fn exit_code(&self) -> u8 {
        let ok = match self {
            Report::Check(r) => r.alpha.holds,
            Report::Numbers(r) => r.is_consistent(),
            Report::Synth(r) => r.verified,
            Report::Verify(r) => r.verified,
            Report::Gen(_) => true,
            Report::Bounds(r) => r.numbers.as_ref().is_none_or(NumbersReport::is_consistent),
        };
        if ok {
            0
        } else {
            1
        }
    }

    pub fn emit(&self, json: bool) {
        if json {
            print_json(self);
        } else {
            print!("{}", self.render());
        }
    }

    fn render(&self) -> String {
        match self {
            Report::Check(r) => r.render(),
            Report::Numbers(r) => r.render(),
            Report::Synth(r) => r.render(),
            Report::Verify(r) => r.render(),
            Report::Gen(r) => r.render(),
            Report::Bounds(r) => r.render(),
        }
    }
}

impl CheckReport {
    fn render(&self) -> String {
        let verdict = |v: &AxiomVerdict| if v.holds { "OK" } else { "FAILED" };
        let mut out = format!(
            "alpha: {}, gamma: {}, {}\n",
            verdict(&self.alpha),
            verdict(&self.gamma),
            self.class
        );
        for (name, v) in [("alpha", &self.alpha), ("gamma", &self.gamma)] {
            if let Some(w) = &v.witness {
                let _ = writeln!(out, "{name} witness: {}", w.description);
            }
        }
        if let Some(edges) = &self.rationalizing_voter {
            let _ = writeln!(out, "rationalizing voter: {}", render_edges(edges));
        }
        out
    }
}

/// `x -> y z, y -> z`, grouping targets by source.
pub fn render_edges(edges: &[[String; 2]]) -> String {
    if edges.is_empty() {
        return "no edges".to_string();
    }
    let mut groups: Vec<(String, Vec<&str>)> = Vec::new();
    for [from, to] in edges {
        match groups.last_mut() {
            Some((f, targets)) if f == from => targets.push(to),
            _ => groups.push((from.clone(), vec![to])),
        }
    }
    groups
        .iter()
        .map(|(f, t)| format!("{f} -> {}", t.join(" ")))
        .collect::<Vec<_>>()
        .join(", ")
}

impl NumbersReport {
    /// False when a checked bound or the oracle cross-check fails.
    pub fn is_consistent(&self) -> bool {
        [
            self.lib_within_sperner,
            self.dem_at_most_twice_lib,
            self.lib_at_most_pow_dem,
        ]
        .iter()
        .all(|b| *b != Some(false))
            && self.oracle.as_ref().is_none_or(|o| o.agrees)
    }

    fn render(&self) -> String {
        let lib = match self.lib {
            LibOut::Exact { value } => value.to_string(),
            LibOut::Infinite => "∞".to_string(),
        };
        let mut out = String::new();
        let mut notes = Vec::new();
        match &self.dem {
            DemOut::Exact { value, explored } => {
                let _ = writeln!(out, "lib = {lib}, dem = {value}");
                notes.push(format!("dem search nodes: {explored}"));
            }
            DemOut::Interval { lo, hi, explored } => {
                let _ = writeln!(out, "lib = {lib}, dem in [{lo}, {hi}]");
                notes.push(format!(
                    "dem is not exact: search limit reached after {explored} nodes"
                ));
            }
            DemOut::Infinite => {
                let _ = writeln!(out, "lib = {lib}, dem = ∞");
            }
            DemOut::NotComputed { reason, upper } => {
                let _ = writeln!(out, "lib = {lib}, dem not computed");
                notes.push(format!("dem: {reason}"));
                if let Some(u) = upper {
                    notes.push(format!("dem <= 2·lib = {u}"));
                }
            }
        }
        let _ = writeln!(out, "items: {}", self.items);
        let _ = writeln!(
            out,
            "sperner bound: {} (lib within bound: {})",
            self.sperner_bound,
            yes_no(self.lib_within_sperner)
        );
        let _ = writeln!(out, "dem <= 2·lib: {}", yes_no(self.dem_at_most_twice_lib));
        let _ = writeln!(
            out,
            "lib <= 2^(dem-1): {}",
            yes_no(self.lib_at_most_pow_dem)
        );
        for note in notes {
            let _ = writeln!(out, "{note}");
        }
        if let Some(o) = &self.oracle {
            let _ = writeln!(
                out,
                "oracle: lib = {} (up to {}), dem = {} (up to {}): {}",
                show_opt(o.lib),
                o.lib_kmax,
                show_opt(o.dem),
                o.dem_kmax,
                if o.agrees { "agrees" } else { "DISAGREES" }
            );
        }
        if let Some(why) = &self.oracle_skipped {
            let _ = writeln!(out, "oracle: skipped, {why}");
        }
        out
    }
}

impl TraceOut {
    fn summary(&self) -> String {
        if self.m == 0 {
            format!("{} ballots (liberal family)", self.size)
        } else {
            format!(
                "{} ballots (base {}, m = {}, t = {}, neutral {}, hypercritical {}, replication {})",
                self.size,
                self.base_size,
                self.m,
                self.t,
                self.neutral_added,
                self.hypercritical_added,
                self.replication_factor
            )
        }
    }
}

impl SynthReport {
    fn render(&self) -> String {
        let check = if self.verified { "Verified" } else { "FAILED" };
        match (&self.output, &self.document) {
            (Some(path), _) => format!(
                "share {}: {}\nself-check: {check}\nwrote {path}\n",
                self.share,
                self.trace.summary()
            ),
            (None, Some(doc)) => format!(
                "# share {}: {}\n# self-check: {check}\n{doc}",
                self.share,
                self.trace.summary()
            ),
            (None, None) => format!("share {}: {}\n", self.share, self.trace.summary()),
        }
    }
}

impl VerifyReport {
    fn render(&self) -> String {
        match &self.counterexample {
            None => format!(
                "Verified: {} ballots reproduce the choice at share {}\n",
                self.ballots, self.share
            ),
            Some(c) => {
                let what = if c.direction == "should_be_chosen" {
                    "chosen, but that is not more than"
                } else {
                    "not chosen, but that is more than"
                };
                format!(
                    "counterexample: menu {}, item {}: endorsed by {} of {} ballots; {what} share {}\n",
                    c.menu, c.item, c.count, c.k, self.share
                )
            }
        }
    }
}

impl GenReport {
    fn render(&self) -> String {
        match &self.document {
            Some(doc) => format!("# {}\n{doc}", self.description),
            None => {
                let mut out = format!("{}\n", self.description);
                for f in &self.files {
                    let _ = writeln!(out, "wrote {f}");
                }
                out
            }
        }
    }
}

impl BoundsReport {
    fn render(&self) -> String {
        let mut out = format!(
            "items: {}\nsperner bound: {}\nasymptotic ratio: {:.6}\n",
            self.items, self.sperner_bound, self.asymptotic_ratio
        );
        if let Some([n, k]) = self.tight_example {
            let _ = writeln!(out, "attained by: c_{{{n},{k}}}");
        }
        if let Some(numbers) = &self.numbers {
            out.push_str(&numbers.render());
        }
        out
    }
}

/// An error that stops a command before it can report.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable or invalid input (exit 2).
    Input(String),
    /// Valid input, but the request cannot be met (exit 1).
    Refused(String),
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    error: ErrorOut<'a>,
}

#[derive(Serialize)]
struct ErrorOut<'a> {
    kind: &'static str,
    message: &'a str,
}

impl Failure {
    pub fn emit(&self, json: bool) {
        let (kind, message) = match self {
            Failure::Input(m) => ("input", m),
            Failure::Refused(m) => ("refused", m),
        };
        if json {
            print_json(&ErrorBody {
                error: ErrorOut { kind, message },
            });
        } else {
            eprintln!("error: {message}");
        }
    }
}
