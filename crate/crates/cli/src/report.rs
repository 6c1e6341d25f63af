//! Report documents and their JSON and text renderings.

use std::fmt::Write;

use serde_json::{json, Map, Value};

use freediv::{Derivation, Polynomial};

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    /// `None` when a precondition failed.
    pub verdict: Option<bool>,
    pub certificate: Value,
    pub diagnostics: Vec<String>,
    pub seed: u64,
    pub timings_ms: Option<f64>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Some(true) => 0,
            Some(false) => 1,
            None => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let timings = match self.timings_ms {
            Some(ms) => json!({ "total": ms }),
            None => Value::Null,
        };
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "verdict": self.verdict,
            "certificate": self.certificate,
            "diagnostics": self.diagnostics,
            "seed": self.seed,
            "timings_ms": timings,
        })
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verdict = match self.verdict {
            Some(v) => v.to_string(),
            None => "precondition failed".into(),
        };
        writeln!(out, "command: {}", self.command).unwrap();
        writeln!(out, "verdict: {verdict}").unwrap();
        if let Value::Object(map) = &self.certificate {
            for (k, v) in map {
                writeln!(out, "{k}: {}", compact(v)).unwrap();
            }
        }
        for d in &self.diagnostics {
            writeln!(out, "note: {d}").unwrap();
        }
        if let Some(ms) = self.timings_ms {
            writeln!(out, "time: {ms:.1} ms").unwrap();
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn poly(p: &Polynomial) -> Value {
    Value::String(p.to_string())
}

pub fn polys(ps: &[Polynomial]) -> Value {
    Value::Array(ps.iter().map(poly).collect())
}

pub fn deriv(d: &Derivation) -> Value {
    polys(d.coeffs())
}

pub fn derivs(ds: &[Derivation]) -> Value {
    Value::Array(ds.iter().map(deriv).collect())
}

pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}
