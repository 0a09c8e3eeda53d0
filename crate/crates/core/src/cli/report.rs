//! The machine-readable report.
//!
//! Schema `coquasi-report/1`: check names are `.`-separated paths whose first
//! segment is the stage (`axioms`, `antipode`, `triangles`, `chi_s`,
//! `fundamental`, `tau_monoidal`, `radford`, `mu_monoidal`, `hopf`). Payload
//! scalars are canonical strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::cqbialg::CoquasiBialgebra;
use crate::linalg::Scalar;
use crate::report::{Check, Checks};

pub const SCHEMA: &str = "coquasi-report/1";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Input {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraInfo {
    pub name: String,
    pub field: String,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub schema: String,
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: Input,
    pub algebra: AlgebraInfo,
    pub status: String,
    pub checks: Vec<Check>,
    pub payload: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// A vector both as coordinates and rendered in the basis of `h`.
pub fn element(h: &CoquasiBialgebra, v: &[Scalar]) -> Value {
    json!({ "coords": v.iter().map(Scalar::to_canonical).collect::<Vec<_>>(), "render": h.render(v) })
}

/// A functional on H, rendered in the dual basis δ_x.
pub fn functional(h: &CoquasiBialgebra, v: &[Scalar]) -> Value {
    let names = h.names();
    json!({
        "coords": v.iter().map(Scalar::to_canonical).collect::<Vec<_>>(),
        "render": crate::report::render_vec(v, &|i| format!("δ_{}", names[i])),
    })
}

impl Report {
    pub fn new(command: &str, h: &CoquasiBialgebra, input: Input) -> Report {
        Report {
            schema: SCHEMA.into(),
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            input,
            algebra: AlgebraInfo { name: h.name().into(), field: h.field().to_string(), dim: h.dim() },
            status: "PASS".into(),
            checks: Vec::new(),
            payload: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn add(&mut self, stage: &str, checks: Checks) {
        for c in checks.0 {
            self.checks.push(c.scoped(stage));
        }
        self.refresh();
    }

    pub fn put(&mut self, key: &str, v: Value) {
        self.payload.insert(key.into(), v);
    }

    fn refresh(&mut self) {
        self.status = if self.all_pass() { "PASS" } else { "FAIL" }.into();
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn from_json(s: &str) -> serde_json::Result<Report> {
        serde_json::from_str(s)
    }

    /// Failures with witnesses, the payload and a summary line.
    pub fn to_text(&self, verbose: bool) -> String {
        let mut out = format!(
            "{} {}  {}  {} over {} (dim {})  sha256 {}\n",
            self.tool, self.version, self.command, self.algebra.name, self.algebra.field, self.algebra.dim, self.input.sha256
        );
        for c in &self.checks {
            if c.pass && !verbose {
                continue;
            }
            out.push_str(&format!("{}  {}", if c.pass { "PASS" } else { "FAIL" }, c.name));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  at {}: {}  vs  {}", w.at, w.lhs, w.rhs));
            }
            out.push('\n');
        }
        for (k, v) in &self.payload {
            let shown = v.get("render").cloned().unwrap_or_else(|| v.clone());
            let shown = shown.as_str().map(str::to_string).unwrap_or_else(|| shown.to_string());
            out.push_str(&format!("{k} = {shown}\n"));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        let failed = self.failures().count();
        out.push_str(&format!("{} ({} checks, {} failed)\n", self.status, self.checks.len(), failed));
        out
    }
}
