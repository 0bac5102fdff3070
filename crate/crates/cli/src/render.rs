//! Report assembly and text / JSON rendering.

use serde::Serialize;

use divcode_core::algebra::AlgElem;
use divcode_core::nf::NFElem;
use divcode_core::rat::{rat_to_string, Rat};
use divcode_core::report::{CheckStatus, TheoremReport};
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub status: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckLine {
    pub fn pass(name: &str, detail: impl Into<String>) -> Self {
        CheckLine {
            name: name.to_owned(),
            status: "pass".to_owned(),
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn fail(name: &str, detail: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckLine {
            name: name.to_owned(),
            status: "fail".to_owned(),
            detail: detail.into(),
            witness: Some(witness.into()),
        }
    }

    pub fn from_theorem(r: &TheoremReport) -> Self {
        CheckLine {
            name: r.name.clone(),
            status: match r.status {
                CheckStatus::Pass => "pass".to_owned(),
                CheckStatus::Fail => "fail".to_owned(),
                CheckStatus::HypothesisNotMet => "hypothesis-not-met".to_owned(),
            },
            detail: r.detail.clone(),
            witness: r.witness.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CommandReport {
    pub command: String,
    pub input: String,
    pub checks: Vec<CheckLine>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub exit_code: i32,
}

pub fn emit(report: &CommandReport, fmt: ReportFormat) {
    match fmt {
        ReportFormat::Json => {
            println!("{}", serde_json::to_string_pretty(report).unwrap());
        }
        ReportFormat::Text => {
            println!("{} {}", report.command, report.input);
            for c in &report.checks {
                let tag = match c.status.as_str() {
                    "pass" => "PASS",
                    "fail" => "FAIL",
                    _ => "N/A ",
                };
                println!("  [{tag}] {}: {}", c.name, c.detail);
                if let Some(w) = &c.witness {
                    println!("         witness: {w}");
                }
            }
            for n in &report.notes {
                println!("  note: {n}");
            }
            println!(
                "result: {} (exit {})",
                if report.exit_code == 0 { "ok" } else { "failure" },
                report.exit_code
            );
        }
    }
}

fn rat_term(c: &Rat, pow: usize) -> String {
    let var = match pow {
        0 => String::new(),
        1 => "x".to_owned(),
        p => format!("x^{p}"),
    };
    if pow == 0 {
        return rat_to_string(c);
    }
    if c.is_one() {
        return var;
    }
    if (-c.clone()).is_one() {
        return format!("-{var}");
    }
    format!("{}*{var}", rat_to_string(c))
}

/// Polynomial-in-the-generator rendering, highest degree last.
pub fn nf_elem_string(a: &NFElem) -> String {
    let mut terms = Vec::new();
    for (i, c) in a.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        terms.push(rat_term(c, i));
    }
    if terms.is_empty() {
        return "0".to_owned();
    }
    let mut out = terms[0].clone();
    for t in &terms[1..] {
        if let Some(stripped) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(stripped);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}

/// Left-coefficient rendering of an algebra element over the e_sigma basis.
pub fn alg_elem_string(a: &AlgElem) -> String {
    let names = &a.alg.tower.g_names;
    let mut terms = Vec::new();
    for (i, c) in a.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let cs = nf_elem_string(c);
        if cs == "1" {
            terms.push(format!("e_{}", names[i]));
        } else {
            terms.push(format!("({cs})*e_{}", names[i]));
        }
    }
    if terms.is_empty() {
        "0".to_owned()
    } else {
        terms.join(" + ")
    }
}

pub fn signature_string(sig: Option<(usize, usize)>) -> String {
    match sig {
        Some((p, q)) => format!("({p},{q})"),
        None => "(unknown)".to_owned(),
    }
}
