//! Machine-readable command reports.
//!
//! Every float is rounded to 9 significant digits before it is stored, and
//! each check's `pass` is recomputed from the rounded `value` and `bound`, so
//! a reader of the JSON can reproduce every verdict from the printed numbers.

use hvcheck::Check;
use serde_json::{Map, Number, Value};

/// Rounds to 9 significant digits; non-finite values become `null`.
pub fn round9(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let r: f64 = format!("{x:.8e}").parse().expect("formatted float parses");
    Number::from_f64(r).map(Value::Number).unwrap_or(Value::Null)
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => round9(n.as_f64().expect("f64 number")),
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

fn rounded(x: f64) -> f64 {
    round9(x).as_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub checks: Vec<Check>,
    pub tolerances: Map<String, Value>,
    pub seed: Option<u64>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            inputs: Map::new(),
            outputs: Map::new(),
            checks: Vec::new(),
            tolerances: Map::new(),
            seed: None,
        }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.into(), round_value(v.into()));
        self
    }

    pub fn output(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.outputs.insert(key.into(), round_value(v.into()));
        self
    }

    pub fn tolerance(&mut self, key: &str, v: f64) -> &mut Self {
        self.tolerances.insert(key.into(), round9(v));
        self
    }

    /// Stores `check` with its numbers rounded and its verdict recomputed.
    pub fn check(&mut self, check: Check) -> &mut Self {
        let (value, bound) = (rounded(check.value), rounded(check.bound));
        self.checks.push(Check::new(check.name, value, check.relation, bound));
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self, wall_time: f64) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut m = Map::new();
                m.insert("name".into(), c.name.clone().into());
                m.insert("value".into(), round9(c.value));
                m.insert("relation".into(), c.relation.symbol().into());
                m.insert("bound".into(), round9(c.bound));
                m.insert("pass".into(), c.pass.into());
                Value::Object(m)
            })
            .collect();
        let mut m = Map::new();
        m.insert("command".into(), self.command.clone().into());
        m.insert("inputs".into(), Value::Object(self.inputs.clone()));
        m.insert("outputs".into(), Value::Object(self.outputs.clone()));
        m.insert("checks".into(), Value::Array(checks));
        m.insert("tolerances".into(), Value::Object(self.tolerances.clone()));
        m.insert("seed".into(), self.seed.map_or(Value::Null, Value::from));
        m.insert("verdict".into(), if self.passed() { "PASS" } else { "FAIL" }.into());
        m.insert("wall_time".into(), round9(wall_time));
        Value::Object(m)
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(o) => {
            for (k, v) in o {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, rows);
            }
        }
        Value::Array(a) => {
            for (i, v) in a.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), v, rows);
            }
        }
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        Value::Null => rows.push((prefix.to_string(), String::new())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One `key,value` row per scalar; checks are keyed by their name.
pub fn to_csv(json: &Value) -> String {
    let mut rows = Vec::new();
    if let Value::Object(o) = json {
        for (k, v) in o {
            if k == "checks" {
                for c in v.as_array().into_iter().flatten() {
                    let name = c["name"].as_str().unwrap_or("");
                    for field in ["value", "relation", "bound", "pass"] {
                        flatten(&format!("checks.{name}.{field}"), &c[field], &mut rows);
                    }
                }
            } else {
                flatten(k, v, &mut rows);
            }
        }
    }
    let mut out = String::from("key,value\n");
    for (k, v) in rows {
        out += &format!("{},{}\n", csv_field(&k), csv_field(&v));
    }
    out
}
