//! Seeded multi-start maximization of CHSH `S` over measurement settings.

use std::f64::consts::{PI, TAU};

use super::correlators::{chsh_value, ChshSettings, SpinSetting};
use super::search::scan_then_refine;
use crate::error::{Error, Result};
use crate::qmath::StateVector;
use crate::rng::{stream, unit_f64};

const COORD_SAMPLES: usize = 24;
const COORD_XTOL: f64 = 1e-11;
const MAX_SWEEPS: usize = 2000;

/// Spherical angles `(θ, φ)` for `â, â′, b̂, b̂′`.
type Angles = [f64; 8];

fn settings_from(x: &Angles) -> ChshSettings {
    ChshSettings {
        a: SpinSetting::from_angles(x[0], x[1]),
        a2: SpinSetting::from_angles(x[2], x[3]),
        b: SpinSetting::from_angles(x[4], x[5]),
        b2: SpinSetting::from_angles(x[6], x[7]),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChshOptimum {
    pub settings: ChshSettings,
    pub value: f64,
    /// Restart that produced the optimum (lowest index on ties).
    pub restart: usize,
    pub restarts: usize,
    /// Coordinate sweeps summed over all restarts.
    pub sweeps: usize,
}

/// Maximizes [`chsh_value`] for `psi`.
///
/// Each restart draws random angles from stream `k` of `seed`, then sweeps
/// the eight coordinates in turn (coarse scan plus golden-section
/// refinement) until a full sweep improves `S` by less than `tol`.
pub fn chsh_optimize(psi: &StateVector, restarts: usize, tol: f64, seed: u64) -> Result<ChshOptimum> {
    if restarts == 0 {
        return Err(Error::Domain("restarts must be >= 1".into()));
    }
    if psi.dim() != 4 {
        return Err(Error::DimMismatch {
            expected: "4".into(),
            got: psi.dim().to_string(),
        });
    }
    let objective = |x: &Angles| chsh_value(psi, &settings_from(x)).expect("dimension checked");
    let mut best: Option<(Angles, f64, usize)> = None;
    let mut total_sweeps = 0;
    for k in 0..restarts {
        let mut rng = stream(seed, k as u64);
        let mut x: Angles = std::array::from_fn(|i| {
            if i % 2 == 0 {
                PI * unit_f64(&mut rng)
            } else {
                TAU * unit_f64(&mut rng)
            }
        });
        let mut fx = objective(&x);
        for _ in 0..MAX_SWEEPS {
            total_sweeps += 1;
            let before = fx;
            for i in 0..8 {
                let hi = if i % 2 == 0 { PI } else { TAU };
                let mut trial = x;
                let (xi, fi) = scan_then_refine(
                    |t| {
                        trial[i] = t;
                        objective(&trial)
                    },
                    0.0,
                    hi,
                    COORD_SAMPLES,
                    COORD_XTOL,
                );
                if fi > fx {
                    x[i] = xi;
                    fx = fi;
                }
            }
            if fx - before < tol {
                break;
            }
        }
        if best.as_ref().is_none_or(|b| fx > b.1) {
            best = Some((x, fx, k));
        }
    }
    let (x, value, restart) = best.expect("at least one restart");
    Ok(ChshOptimum {
        settings: settings_from(&x),
        value,
        restart,
        restarts,
        sweeps: total_sweeps,
    })
}
