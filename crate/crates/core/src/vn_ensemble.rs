//! Ensembles and expectation functionals: rebuilding `ρ` from `⟨·⟩`,
//! showing no quantum state is dispersion-free, testing homogeneity, and the
//! Jauch-Piron projector-lattice contradiction.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::qmath::{
    dot3, eigvalsh, expectation, intersection_projector, norm3, spin_projector, ComplexMatrix, DensityOperator,
    Observable, StateVector, C64,
};
use crate::tol;

/// A queryable expectation functional `A ↦ ⟨A⟩` on `dim × dim` observables.
pub trait ExpectationOracle {
    fn dim(&self) -> usize;

    fn eval(&self, observable: &Observable) -> f64;

    /// Whether the answers come from an actual density operator; only then
    /// is positivity of the reconstruction enforced.
    fn is_quantum(&self) -> bool {
        false
    }
}

/// Oracle backed by a density operator: `⟨A⟩ = Tr(ρA)`.
#[derive(Debug, Clone)]
pub struct QuantumOracle {
    rho: DensityOperator,
}

impl QuantumOracle {
    pub fn new(rho: DensityOperator) -> Self {
        Self { rho }
    }
}

impl ExpectationOracle for QuantumOracle {
    fn dim(&self) -> usize {
        self.rho.dim()
    }

    fn eval(&self, observable: &Observable) -> f64 {
        expectation(&self.rho, observable).expect("oracle queried with matching dimension")
    }

    fn is_quantum(&self) -> bool {
        true
    }
}

/// Oracle from an arbitrary closure.
pub struct FnOracle<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(&Observable) -> f64> FnOracle<F> {
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<F: Fn(&Observable) -> f64> ExpectationOracle for FnOracle<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, observable: &Observable) -> f64 {
        (self.f)(observable)
    }
}

/// The `dim²` Hermitian observables whose expectations fix `ρ`:
/// `U_nn = |n⟩⟨n|`, and for `n > m`, `V_nm = |n⟩⟨m| + |m⟩⟨n|`,
/// `W_nm = i(|n⟩⟨m| - |m⟩⟨n|)`.
#[derive(Debug, Clone)]
pub struct BasisObservables {
    pub dim: usize,
    pub diagonal: Vec<Observable>,
    /// `(n, m, V_nm, W_nm)` with `n > m`.
    pub off_diagonal: Vec<(usize, usize, Observable, Observable)>,
}

impl BasisObservables {
    pub fn new(dim: usize) -> Self {
        let unit = |n: usize, m: usize| {
            let mut e = ComplexMatrix::zeros(dim, dim);
            e[(n, m)] = C64::new(1.0, 0.0);
            e
        };
        let diagonal = (0..dim)
            .map(|n| Observable::new(unit(n, n)).expect("hermitian"))
            .collect();
        let mut off_diagonal = Vec::new();
        for n in 0..dim {
            for m in 0..n {
                let v = &unit(n, m) + &unit(m, n);
                let w = (&unit(n, m) - &unit(m, n)).scale(C64::new(0.0, 1.0));
                off_diagonal.push((
                    n,
                    m,
                    Observable::new(v).expect("hermitian"),
                    Observable::new(w).expect("hermitian"),
                ));
            }
        }
        Self {
            dim,
            diagonal,
            off_diagonal,
        }
    }

    pub fn len(&self) -> usize {
        self.diagonal.len() + 2 * self.off_diagonal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dim == 0
    }
}

/// Rebuilds the density operator that reproduces `oracle` on the basis
/// observables: `ρ_nn = ⟨U_nn⟩`, `ρ_nm = ½(⟨V_nm⟩ + i⟨W_nm⟩)` for `n > m`.
pub fn reconstruct_density(oracle: &dyn ExpectationOracle) -> Result<DensityOperator> {
    let dim = oracle.dim();
    let id = oracle.eval(&Observable::identity(dim));
    if (id - 1.0).abs() > tol::EQ {
        return Err(Error::MalformedEnsemble(id));
    }
    let basis = BasisObservables::new(dim);
    let mut rho = ComplexMatrix::zeros(dim, dim);
    for (n, u) in basis.diagonal.iter().enumerate() {
        rho[(n, n)] = C64::new(oracle.eval(u), 0.0);
    }
    for (n, m, v, w) in &basis.off_diagonal {
        let z = C64::new(0.5 * oracle.eval(v), 0.5 * oracle.eval(w));
        rho[(*n, *m)] = z;
        rho[(*m, *n)] = z.conj();
    }
    let trace = rho.trace().re;
    if (trace - 1.0).abs() > tol::EQ {
        return Err(Error::MalformedEnsemble(trace));
    }
    if oracle.is_quantum() {
        DensityOperator::new(rho)
    } else {
        DensityOperator::new_unchecked_psd(rho)
    }
}

fn check_same_dim(rho: &DensityOperator, psi: &StateVector) -> Result<()> {
    if rho.dim() != psi.dim() {
        return Err(Error::DimMismatch {
            expected: rho.dim().to_string(),
            got: psi.dim().to_string(),
        });
    }
    Ok(())
}

/// `⟨φ(θ)|ρ|φ(θ)⟩` for `φ(θ) = cos θ·φ1 + sin θ·φ2` on a uniform grid of
/// `steps` points over `[0, π/2]`.
pub fn dispersion_scan(
    rho: &DensityOperator,
    phi1: &StateVector,
    phi2: &StateVector,
    steps: usize,
) -> Result<Vec<(f64, f64)>> {
    check_same_dim(rho, phi1)?;
    check_same_dim(rho, phi2)?;
    if steps < 2 {
        return Err(Error::Domain(format!("steps must be >= 2, got {steps}")));
    }
    let overlap = phi1.inner(phi2).norm();
    if overlap > tol::EQ {
        return Err(Error::NotOrthogonal(overlap));
    }
    let (a, b) = (phi1.amplitudes(), phi2.amplitudes());
    Ok((0..steps)
        .map(|k| {
            let theta = FRAC_PI_2 * k as f64 / (steps - 1) as f64;
            let (s, c) = theta.sin_cos();
            let phi: Vec<C64> = a.iter().zip(b).map(|(x, y)| x * c + y * s).collect();
            (theta, rho.diagonal_element(&phi))
        })
        .collect())
}

/// A state `φ` whose projector has nonzero dispersion in `ρ`, i.e.
/// `ε < ⟨φ|ρ|φ⟩ < 1 - ε` with `ε = `[`tol::WITNESS_EPS`].
#[derive(Debug, Clone)]
pub struct DispersionWitness {
    pub phi: StateVector,
    /// `⟨P_φ⟩ = ⟨φ|ρ|φ⟩`.
    pub value: f64,
    /// `⟨P_φ²⟩ - ⟨P_φ⟩² = value(1 - value)`.
    pub dispersion: f64,
}

fn is_witness_value(v: f64) -> bool {
    v > tol::WITNESS_EPS && v < 1.0 - tol::WITNESS_EPS
}

/// Mixes the top eigenvector of `ρ` with an orthogonal eigenvector at 45°;
/// falls back to scanning every eigenvector pair along a θ grid.
pub fn dispersion_free_witness(rho: &DensityOperator) -> Result<DispersionWitness> {
    let dim = rho.dim();
    if dim < 2 {
        return Err(Error::Domain("dispersion witness needs dimension >= 2".into()));
    }
    let spec = rho.spectrum();
    let build = |i: usize, j: usize, theta: f64| {
        let (s, c) = theta.sin_cos();
        let phi: Vec<C64> = spec.vectors[i]
            .iter()
            .zip(&spec.vectors[j])
            .map(|(x, y)| x * c + y * s)
            .collect();
        StateVector::normalized(phi).expect("eigenvectors are orthonormal")
    };
    let finish = |phi: StateVector| {
        let value = rho.diagonal_element(phi.amplitudes());
        DispersionWitness {
            phi,
            value,
            dispersion: value * (1.0 - value),
        }
    };

    for j in 1..dim {
        let w = finish(build(0, j, std::f64::consts::FRAC_PI_4));
        if is_witness_value(w.value) {
            return Ok(w);
        }
    }
    const GRID: usize = 64;
    for i in 0..dim {
        for j in i + 1..dim {
            for k in 1..GRID {
                let w = finish(build(i, j, FRAC_PI_2 * k as f64 / GRID as f64));
                if is_witness_value(w.value) {
                    return Ok(w);
                }
            }
        }
    }
    // ⟨φ|ρ|φ⟩ is continuous on the unit sphere and takes the values λ_max ≥ 1/d
    // and λ_min ≤ 1/d, so some grid point above must land inside (ε, 1-ε).
    unreachable!("no dispersion witness found for a valid density operator")
}

/// Result of [`homogeneity_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Homogeneity {
    /// `ρ² = ρ` within [`tol::EQ`].
    pub homogeneous: bool,
    pub rank: usize,
    /// `Tr(ρ²)`.
    pub purity: f64,
}

/// A homogeneous ensemble is one whose density operator is a projector.
pub fn homogeneity_check(rho: &DensityOperator) -> Homogeneity {
    let m = rho.matrix();
    let homogeneous = (m * m).approx_eq(m, tol::EQ);
    let rank = eigvalsh(m)
        .expect("hermitian")
        .iter()
        .filter(|&&v| v > tol::PSD)
        .count();
    Homogeneity {
        homogeneous,
        rank,
        purity: rho.purity(),
    }
}

/// One cross intersection `½(1 + s_a â·σ) ∧ ½(1 + s_b b̂·σ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossIntersection {
    pub sign_a: i8,
    pub sign_b: i8,
    pub rank: usize,
    /// Largest entry of the intersection projector.
    pub max_entry: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JauchPironReport {
    pub a_hat: [f64; 3],
    pub b_hat: [f64; 3],
    /// `max |½(1+n̂·σ) + ½(1-n̂·σ) - I|` over `n̂ ∈ {â, b̂}`.
    pub completeness_deviation: f64,
    pub intersections: Vec<CrossIntersection>,
    /// True when every cross intersection is the zero projector, so no 0/1
    /// assignment can give `⟨A⟩ = ⟨B⟩ = 1` together with `⟨A∧B⟩ = 1`.
    pub contradiction: bool,
    pub summary: String,
}

/// Builds the spin projectors along `â` and `b̂`, checks each `±` pair sums to
/// the identity, and computes all four cross intersections.
pub fn jauch_piron_contradiction(a_hat: [f64; 3], b_hat: [f64; 3]) -> Result<JauchPironReport> {
    for v in [a_hat, b_hat] {
        let n = norm3(v);
        if (n - 1.0).abs() > tol::EQ {
            return Err(Error::Domain(format!(
                "direction {v:?} is not a unit vector (|v| = {n})"
            )));
        }
    }
    if 1.0 - dot3(a_hat, b_hat).abs() <= tol::EQ {
        return Err(Error::DegenerateDirection);
    }
    let id = ComplexMatrix::identity(2);
    let mut completeness_deviation: f64 = 0.0;
    for n in [a_hat, b_hat] {
        let sum = spin_projector(n, 1.0).matrix() + spin_projector(n, -1.0).matrix();
        completeness_deviation = completeness_deviation.max(sum.max_abs_diff(&id));
    }
    let mut intersections = Vec::with_capacity(4);
    for sign_a in [1i8, -1] {
        for sign_b in [1i8, -1] {
            let p = spin_projector(a_hat, sign_a.into());
            let q = spin_projector(b_hat, sign_b.into());
            let (meet, rank) = intersection_projector(&p, &q)?;
            intersections.push(CrossIntersection {
                sign_a,
                sign_b,
                rank,
                max_entry: meet.matrix().max_abs(),
            });
        }
    }
    let contradiction = intersections.iter().all(|c| c.rank == 0) && completeness_deviation <= tol::EQ;
    let summary = if contradiction {
        "every A∧B is the zero projector: a dispersion-free state with <A> = <B> = 1 would need <A∧B> = 1, \
         but <0> = 0"
            .to_string()
    } else {
        "some cross intersection is nonzero; no contradiction from this pair".to_string()
    };
    Ok(JauchPironReport {
        a_hat,
        b_hat,
        completeness_deviation,
        intersections,
        contradiction,
        summary,
    })
}

/// Convenience for callers holding a pure state.
pub fn pure_oracle(psi: &StateVector) -> QuantumOracle {
    QuantumOracle::new(psi.density())
}
