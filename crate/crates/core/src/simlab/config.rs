//! `key = value` experiment files.
//!
//! ```text
//! # comment
//! source = singlet          # or lhv:<strategy id>
//! n_pairs = 10000000
//! visibility = 0.9546       # singlet only
//! seed = 7
//! workers = 1
//! a  = 0 1 0                # settings: three components, spaces or commas
//! a2 = 1 0 0
//! b  = 1 1 0                # normalized on load
//! b2 = 1 -1 0
//! ```
//!
//! Unset keys take [`ExperimentConfig::default`] values.

use super::{ExperimentConfig, Source};
use crate::error::{Error, Result};
use crate::nonlocality::SpinSetting;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_count(v: &str) -> Option<u64> {
    let v = v.replace('_', "");
    v.parse::<u64>().ok().or_else(|| {
        let f: f64 = v.parse().ok()?;
        (f >= 0.0 && f.fract() == 0.0 && f < 2f64.powi(63)).then_some(f as u64)
    })
}

fn parse_vector(v: &str) -> Option<[f64; 3]> {
    let parts: Vec<f64> = v
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .ok()?;
    <[f64; 3]>::try_from(parts).ok()
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::default();
    let mut seen: Vec<String> = Vec::new();
    let mut visibility_line = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body
            .split_once('=')
            .ok_or_else(|| parse_err(line, "expected `key = value`"))?;
        let (key, value) = (key.trim(), value.trim());
        if seen.iter().any(|k| k == key) {
            return Err(parse_err(line, format!("duplicate key `{key}`")));
        }
        seen.push(key.to_string());
        let bad = |what: &str| parse_err(line, format!("`{key}`: expected {what}, got {value:?}"));
        match key {
            "source" => {
                cfg.source = match value {
                    "singlet" => Source::Singlet,
                    v => match v.strip_prefix("lhv:") {
                        Some(id) if !id.trim().is_empty() => Source::Lhv(id.trim().to_string()),
                        _ => return Err(bad("`singlet` or `lhv:<id>`")),
                    },
                }
            }
            "n_pairs" => cfg.n_pairs = parse_count(value).ok_or_else(|| bad("a non-negative integer"))?,
            "seed" => cfg.seed = parse_count(value).ok_or_else(|| bad("a non-negative integer"))?,
            "workers" => {
                cfg.workers = parse_count(value)
                    .and_then(|w| usize::try_from(w).ok())
                    .ok_or_else(|| bad("a non-negative integer"))?
            }
            "visibility" => {
                cfg.visibility = value.parse().map_err(|_| bad("a real number"))?;
                visibility_line = Some(line);
            }
            "a" | "a2" | "b" | "b2" => {
                let v = parse_vector(value).ok_or_else(|| bad("three real components"))?;
                let s = SpinSetting::normalized(v).map_err(|e| parse_err(line, e.to_string()))?;
                match key {
                    "a" => cfg.settings.a = s,
                    "a2" => cfg.settings.a2 = s,
                    "b" => cfg.settings.b = s,
                    _ => cfg.settings.b2 = s,
                }
            }
            _ => return Err(parse_err(line, format!("unknown key `{key}`"))),
        }
    }
    if let (Source::Lhv(_), Some(line)) = (&cfg.source, visibility_line) {
        return Err(parse_err(line, "visibility applies to the singlet source only"));
    }
    cfg.validate()?;
    Ok(cfg)
}

fn fmt_vec(s: &SpinSetting) -> String {
    s.vector().map(|x| format!("{x:.17}")).join(" ")
}

/// Writes `cfg` in the format [`parse_config`] reads.
pub fn format_config(cfg: &ExperimentConfig) -> String {
    let mut out = format!("source = {}\nn_pairs = {}\n", cfg.source.label(), cfg.n_pairs);
    if cfg.source == Source::Singlet {
        out += &format!("visibility = {:.17}\n", cfg.visibility);
    }
    out += &format!("seed = {}\nworkers = {}\n", cfg.seed, cfg.workers);
    let s = &cfg.settings;
    for (k, v) in [("a", &s.a), ("a2", &s.a2), ("b", &s.b), ("b2", &s.b2)] {
        out += &format!("{k} = {}\n", fmt_vec(v));
    }
    out
}
