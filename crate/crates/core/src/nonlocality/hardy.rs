//! Hardy's two-qubit nonlocality argument without inequalities.
//!
//! Per qubit, `|u⟩ = |0⟩` and `|v⟩ = |1⟩`; `U = |u⟩⟨u|`. The primed bases
//! `(u′, v′)` are fixed by the two perfect correlations that involve them.

use super::correlators::cplx;
use super::search::golden_section_max;
use crate::error::{Error, Result};
use crate::qmath::{inner, ComplexMatrix, StateVector, C64};

/// Golden ratio `(√5 + 1)/2`.
pub const GOLDEN_RATIO: f64 = 1.618_033_988_749_895;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardyParams {
    p1: f64,
    p2: f64,
}

impl HardyParams {
    pub fn new(p1: f64, p2: f64) -> Result<Self> {
        for (name, p) in [("p1", p1), ("p2", p2)] {
            if !(p > 0.0 && p < 1.0) {
                return Err(Error::Domain(format!("{name} = {p} must lie in (0, 1)")));
            }
        }
        Ok(Self { p1, p2 })
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    /// Squared coefficients of `|v v⟩, |u v⟩, |v u⟩` before normalization;
    /// they sum to `1 - p1 p2`.
    pub fn squared_coefficients(&self) -> [f64; 3] {
        let (p1, p2) = (self.p1, self.p2);
        [(1.0 - p1) * (1.0 - p2), p1 * (1.0 - p2), p2 * (1.0 - p1)]
    }
}

/// `p1 (1-p1) p2 (1-p2) / (1 - p1 p2)`.
pub fn hardy_probability(p1: f64, p2: f64) -> f64 {
    (p1 * (1.0 - p1)) * (p2 * (1.0 - p2)) / (1.0 - p1 * p2)
}

/// Orthonormal qubit basis `(u′, v′)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimedBasis {
    pub u: [C64; 2],
    pub v: [C64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardyConstruction {
    pub params: HardyParams,
    pub psi: StateVector,
    pub primed_1: PrimedBasis,
    pub primed_2: PrimedBasis,
    /// `|⟨v′¹ v′²|ψ⟩|²`: probability of finding `U′¹ = U′² = 0`.
    pub p: f64,
    /// Norms of the vectors that conditions (i)–(iii) require to vanish:
    /// `U¹U²ψ`, `(1-U¹)V′²ψ`, `V′¹(1-U²)ψ`.
    pub condition_residuals: [f64; 3],
}

impl HardyConstruction {
    pub fn conditions_hold(&self, tol: f64) -> bool {
        self.condition_residuals.iter().all(|&r| r <= tol) && self.p > tol
    }
}

/// First nonzero amplitude made real positive.
fn fix_phase(x: [C64; 2]) -> [C64; 2] {
    let lead = x.iter().copied().find(|a| a.norm() > 1e-14).unwrap_or(cplx(1.0));
    let phase = lead.conj() / lead.norm();
    x.map(|a| a * phase)
}

/// Unit `x` with `⟨x|w⟩ = 0`, phase-fixed.
fn orthogonal_unit(w: [C64; 2]) -> [C64; 2] {
    let x = [w[1].conj(), -w[0].conj()];
    let n = (x[0].norm_sqr() + x[1].norm_sqr()).sqrt();
    fix_phase(x.map(|a| a / n))
}

fn basis_with_v(v: [C64; 2]) -> PrimedBasis {
    PrimedBasis {
        u: fix_phase([-v[1].conj(), v[0].conj()]),
        v,
    }
}

fn qubit_proj(x: &[C64; 2]) -> ComplexMatrix {
    ComplexMatrix::outer(x, x)
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Builds the Hardy state for `params`, derives both primed bases from the
/// orthogonality conditions and measures every condition numerically.
pub fn hardy_build(params: HardyParams) -> HardyConstruction {
    let [cvv, cuv, cvu] = params.squared_coefficients();
    let n = (1.0 - params.p1 * params.p2).sqrt();
    // index = 2·i1 + i2 with 0 ↦ u, 1 ↦ v
    let amps = vec![
        cplx(0.0),
        cplx(-cvu.sqrt() / n),
        cplx(-cuv.sqrt() / n),
        cplx(cvv.sqrt() / n),
    ];
    let psi = StateVector::normalized(amps).expect("nonzero Hardy state");
    let a = psi.amplitudes();

    // (ii): ⟨v¹ ⊗ v′²|ψ⟩ = 0 pins v′² against the particle-2 slice at v¹
    let v2 = orthogonal_unit([a[2], a[3]]);
    // (iii): ⟨v′¹ ⊗ v²|ψ⟩ = 0 pins v′¹ against the particle-1 slice at v²
    let v1 = orthogonal_unit([a[1], a[3]]);
    let primed_1 = basis_with_v(v1);
    let primed_2 = basis_with_v(v2);

    let id = ComplexMatrix::identity(2);
    let u = qubit_proj(&[cplx(1.0), cplx(0.0)]);
    let not_u = &id - &u;
    let vp1 = qubit_proj(&primed_1.v);
    let vp2 = qubit_proj(&primed_2.v);
    let residual = |op: ComplexMatrix| norm(&op.apply(a).expect("4x4"));
    let condition_residuals = [
        residual(u.kron(&u)),
        residual(not_u.kron(&vp2)),
        residual(vp1.kron(&not_u)),
    ];

    let vv: Vec<C64> = (0..4).map(|k| primed_1.v[k / 2] * primed_2.v[k % 2]).collect();
    let p = inner(&vv, a).norm_sqr();
    HardyConstruction {
        params,
        psi,
        primed_1,
        primed_2,
        p,
        condition_residuals,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardyOptimum {
    pub params: HardyParams,
    pub p: f64,
    pub grid_best: (f64, f64),
    pub sweeps: usize,
}

const MAX_SWEEPS: usize = 500;

/// Maximizes the Hardy probability over `(p1, p2) ∈ (0,1)²`: a
/// `grid × grid` scan followed by alternating golden-section refinement of
/// each coordinate. Stops once a sweep moves the point by at most `tol` or
/// raises `p` by at most `tol²` (the objective is quadratic at its peak).
pub fn hardy_optimize(grid: usize, tol: f64) -> Result<HardyOptimum> {
    if grid < 10 {
        return Err(Error::Domain(format!("grid must be >= 10, got {grid}")));
    }
    let h = 1.0 / grid as f64;
    let mut best = (h, h, f64::NEG_INFINITY);
    for i in 1..grid {
        for j in 1..grid {
            let (x, y) = (i as f64 * h, j as f64 * h);
            let v = hardy_probability(x, y);
            if v > best.2 {
                best = (x, y, v);
            }
        }
    }
    let grid_best = (best.0, best.1);
    let (mut x, mut y, mut fx) = best;
    let xtol = (tol * 1e-3).max(1e-12);
    let mut sweeps = 0;
    for _ in 0..MAX_SWEEPS {
        sweeps += 1;
        let (nx, _) = golden_section_max(
            |t| hardy_probability(t, y),
            (x - h).max(1e-12),
            (x + h).min(1.0 - 1e-12),
            xtol,
        );
        let (ny, fy) = golden_section_max(
            |t| hardy_probability(nx, t),
            (y - h).max(1e-12),
            (y + h).min(1.0 - 1e-12),
            xtol,
        );
        let moved = (nx - x).abs().max((ny - y).abs());
        let gain = fy - fx;
        if gain >= 0.0 {
            x = nx;
            y = ny;
            fx = fy;
        }
        if moved <= tol || gain <= tol * tol {
            break;
        }
    }
    Ok(HardyOptimum {
        params: HardyParams::new(x, y)?,
        p: fx,
        grid_best,
        sweeps,
    })
}
