//! Report structures and rendering for the CLI.
//!
//! JSON mirrors the field names below exactly. CSV carries the scalar
//! schema `m,quantity,method,value`; per-element details are JSON-only.
//! Plain output prints bare values for scalar quantities, `key value` lines
//! for fixed counts, and one space-separated color row per representative.

use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize)]
pub struct CountReport {
    pub m: u32,
    pub method: &'static str,
    pub quantity: &'static str,
    /// Decimal digit string; never exponent notation.
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Details>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tool_version: Option<&'static str>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Details {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_count: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_counts: Option<BTreeMap<String, String>>,
    /// Colorings as m+2 color indices in facet order s1, s2, a1..am.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<Vec<u8>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

pub const CSV_HEADER: &str = "m,quantity,method,value";

impl CountReport {
    pub fn csv_row(&self) -> String {
        format!("{},{},{},{}", self.m, self.quantity, self.method, self.value)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut text = serde_json::to_string_pretty(self).expect("report serializes");
                text.push('\n');
                text
            }
            Format::Csv => format!("{CSV_HEADER}\n{}\n", self.csv_row()),
            Format::Plain => self.render_plain(),
        }
    }

    fn render_plain(&self) -> String {
        let mut out = String::new();
        if let Some(details) = &self.details {
            if let Some(counts) = &details.fixed_counts {
                for (key, value) in counts {
                    out.push_str(&format!("{key} {value}\n"));
                }
                out.push_str(&format!("total {}\n", self.value));
                return out;
            }
            if let Some(reps) = &details.representatives {
                for rep in reps {
                    let row: Vec<String> = rep.iter().map(|c| c.to_string()).collect();
                    out.push_str(&row.join(" "));
                    out.push('\n');
                }
                return out;
            }
        }
        out.push_str(&self.value);
        out.push('\n');
        out
    }
}

pub fn render_table(reports: &[CountReport], format: Format) -> String {
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(reports).expect("reports serialize");
            text.push('\n');
            text
        }
        Format::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for report in reports {
                out.push_str(&report.csv_row());
                out.push('\n');
            }
            out
        }
        Format::Plain => {
            let mut out = String::new();
            for report in reports {
                out.push_str(&format!("{} {}\n", report.m, report.value));
            }
            out
        }
    }
}

/// One comparison made by `verify`.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub check: String,
    pub left: String,
    pub right: String,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub m: u32,
    pub ok: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tool_version: Option<&'static str>,
}

impl VerifyReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut text = serde_json::to_string_pretty(self).expect("report serializes");
                text.push('\n');
                text
            }
            Format::Csv => {
                let mut out = String::from("m,check,left,right,ok\n");
                for check in &self.checks {
                    out.push_str(&format!(
                        "{},{},{},{},{}\n",
                        self.m, check.check, check.left, check.right, check.ok
                    ));
                }
                out
            }
            Format::Plain => {
                let mut out = String::new();
                for check in &self.checks {
                    if check.ok {
                        out.push_str(&format!("ok {}: {}\n", check.check, check.left));
                    } else {
                        out.push_str(&format!(
                            "MISMATCH {}: {} != {}\n",
                            check.check, check.left, check.right
                        ));
                    }
                }
                let verdict = if self.ok { "agree" } else { "DISAGREE" };
                out.push_str(&format!("m={}: all methods {verdict}\n", self.m));
                out
            }
        }
    }
}
