//! Plain-text ray sets: one ray per line, three whitespace-separated decimal
//! components, `#` starts a comment. Rays are normalized and canonicalized
//! on load.

use std::fmt::Write as _;

use super::rays::Ray3;
use crate::error::{Error, Result};

pub fn parse_rays(text: &str) -> Result<Vec<Ray3>> {
    let mut rays = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |msg: String| Error::Parse { line: lineno + 1, msg };
        let comps = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|e| parse_err(format!("bad number {tok:?}: {e}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        let v: [f64; 3] = comps
            .as_slice()
            .try_into()
            .map_err(|_| parse_err(format!("expected 3 components, found {}", comps.len())))?;
        rays.push(Ray3::new(v).map_err(|e| parse_err(e.to_string()))?);
    }
    Ok(rays)
}

pub fn format_rays(rays: &[Ray3], header: &str) -> String {
    let mut out = String::new();
    for line in header.lines() {
        let _ = writeln!(out, "# {line}");
    }
    for r in rays {
        let [x, y, z] = r.components();
        let _ = writeln!(out, "{x:.17} {y:.17} {z:.17}");
    }
    out
}
