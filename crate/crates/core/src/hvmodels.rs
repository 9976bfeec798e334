//! Explicit hidden-variable models: Bell's dispersion-free model for a single
//! spin-½, and Wigner's joint weights over preassigned outcomes of two spins.

use crate::error::{Error, Result};
use crate::qmath::{expectation_pure, norm3, spin_along, StateVector};
use crate::rng::{shard_ranges, stream, unit_f64};
use crate::tol;

/// `sgn` with `sgn(0) = +1`.
#[inline]
pub fn sgn(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// Dispersion-free state `(|ψ⟩, λ)` with `λ ∈ [-½, ½]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BellHvState {
    psi: StateVector,
    lambda: f64,
}

impl BellHvState {
    pub fn new(psi: StateVector, lambda: f64) -> Result<Self> {
        if psi.dim() != 2 {
            return Err(Error::DimMismatch {
                expected: "2".into(),
                got: psi.dim().to_string(),
            });
        }
        if !(-0.5..=0.5).contains(&lambda) {
            return Err(Error::Domain(format!(
                "hidden variable λ = {lambda} outside [-1/2, 1/2]"
            )));
        }
        Ok(Self { psi, lambda })
    }

    pub fn psi(&self) -> &StateVector {
        &self.psi
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// `m = ⟨ψ|β·σ|ψ⟩`.
fn spin_mean(beta: [f64; 3], psi: &StateVector) -> f64 {
    expectation_pure(psi, &spin_along(beta)).expect("qubit state")
}

fn value_at(alpha: f64, b: f64, m: f64, lambda: f64) -> f64 {
    if b == 0.0 {
        return alpha;
    }
    alpha + b * sgn(m) * sgn(lambda * b + 0.5 * m.abs())
}

/// Value of `M(α, β) = α + β·σ` in the dispersion-free state `(ψ, λ)`:
/// `α + |β| sgn(m) sgn(λ|β| + ½|m|)`. Always one of `α ± |β|`; for `β = 0`
/// the observable is `α·1` and the value is `α`.
pub fn bell_hv_value(alpha: f64, beta: [f64; 3], state: &BellHvState) -> f64 {
    value_at(alpha, norm3(beta), spin_mean(beta, &state.psi), state.lambda)
}

/// Ensemble average of [`bell_hv_value`] over uniform `λ ∈ [-½, ½]`.
///
/// With `m ≥ 0` the value is `α + |β|` for `λ ≥ λ₀ = -m/(2|β|)` and
/// `α - |β|` below it, so the average is
/// `α + |β|[(½ - λ₀) - (λ₀ + ½)] = α + m`; `m < 0` is symmetric.
pub fn bell_hv_average_exact(alpha: f64, beta: [f64; 3], psi: &StateVector) -> f64 {
    let b = norm3(beta);
    if b == 0.0 {
        return alpha;
    }
    let m = spin_mean(beta, psi);
    let lambda0 = -m.abs() / (2.0 * b);
    let upper = 0.5 - lambda0;
    let lower = lambda0 + 0.5;
    alpha + b * sgn(m) * (upper - lower)
}

/// Monte Carlo estimate of the `λ` average.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub n_samples: u64,
    pub exact: f64,
    /// `|estimate - exact| > 5·stderr`.
    pub flagged: bool,
}

/// Samples `λ` uniformly with the seeded stream; `workers` contiguous shards
/// each get their own stream (see [`crate::rng`]). The result depends only on
/// `(seed, n_samples, workers)`.
pub fn bell_hv_average_mc(
    alpha: f64,
    beta: [f64; 3],
    psi: &StateVector,
    n_samples: u64,
    seed: u64,
    workers: usize,
) -> Result<McEstimate> {
    if n_samples < 100 {
        return Err(Error::Domain(format!("n_samples must be >= 100, got {n_samples}")));
    }
    if psi.dim() != 2 {
        return Err(Error::DimMismatch {
            expected: "2".into(),
            got: psi.dim().to_string(),
        });
    }
    let b = norm3(beta);
    let m = spin_mean(beta, psi);
    let shards = shard_ranges(n_samples, workers);
    let run = |k: usize, len: u64| {
        let mut rng = stream(seed, k as u64);
        let (mut sum, mut sum_sq) = (0.0, 0.0);
        for _ in 0..len {
            let lambda = unit_f64(&mut rng) - 0.5;
            let v = value_at(alpha, b, m, lambda);
            sum += v;
            sum_sq += v * v;
        }
        (sum, sum_sq)
    };
    let partials: Vec<(f64, f64)> = if shards.len() == 1 {
        vec![run(0, n_samples)]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = shards
                .iter()
                .enumerate()
                .map(|(k, r)| {
                    let len = r.end - r.start;
                    scope.spawn(move || run(k, len))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        })
    };
    let (sum, sum_sq) = partials.iter().fold((0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1));
    let n = n_samples as f64;
    let mean = sum / n;
    let var = ((sum_sq / n) - mean * mean).max(0.0) * n / (n - 1.0);
    let stderr = (var / n).sqrt();
    let exact = bell_hv_average_exact(alpha, beta, psi);
    let flagged = (mean - exact).abs() > tol::MC_SIGMAS * stderr + 1e-12;
    Ok(McEstimate {
        estimate: mean,
        stderr,
        n_samples,
        exact,
        flagged,
    })
}

/// Preassigned outcomes `(s, s′, t, t′) = (A(â), A(â′), B(b̂), B(b̂′))`.
pub type OutcomeTuple = [i8; 4];

/// Tuple for weight index `k`: bit 3 ↦ `s`, bit 2 ↦ `s′`, bit 1 ↦ `t`,
/// bit 0 ↦ `t′`; a clear bit means `+1`.
pub fn tuple_of(k: usize) -> OutcomeTuple {
    let bit = |b: usize| if (k >> b) & 1 == 0 { 1 } else { -1 };
    [bit(3), bit(2), bit(1), bit(0)]
}

/// Inverse of [`tuple_of`].
pub fn index_of(t: OutcomeTuple) -> usize {
    t.iter().fold(0, |acc, &v| (acc << 1) | usize::from(v < 0))
}

/// Nonnegative weights over the 16 outcome tuples, summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerWeights {
    w: [f64; 16],
}

impl WignerWeights {
    pub fn new(w: [f64; 16]) -> Result<Self> {
        if let Some((k, v)) = w.iter().enumerate().find(|(_, &v)| v.is_nan() || v < 0.0) {
            return Err(Error::InvalidWeights(format!("w[{k}] = {v} is negative or NaN")));
        }
        let total: f64 = w.iter().sum();
        if (total - 1.0).abs() > tol::EQ {
            return Err(Error::InvalidWeights(format!("weights sum to {total}")));
        }
        Ok(Self { w })
    }

    pub fn from_slice(w: &[f64]) -> Result<Self> {
        let arr: [f64; 16] = w
            .try_into()
            .map_err(|_| Error::InvalidWeights(format!("expected 16 weights, got {}", w.len())))?;
        Self::new(arr)
    }

    pub fn uniform() -> Self {
        Self { w: [1.0 / 16.0; 16] }
    }

    /// All weight on one tuple (a deterministic local strategy).
    pub fn vertex(t: OutcomeTuple) -> Self {
        let mut w = [0.0; 16];
        w[index_of(t)] = 1.0;
        Self { w }
    }

    pub fn weights(&self) -> &[f64; 16] {
        &self.w
    }

    pub fn weight(&self, t: OutcomeTuple) -> f64 {
        self.w[index_of(t)]
    }
}

/// `(P(â,b̂), P(â,b̂′), P(â′,b̂), P(â′,b̂′))` as weighted parities.
pub fn wigner_correlators(w: &WignerWeights) -> [f64; 4] {
    let mut p = [0.0; 4];
    for (k, &wk) in w.w.iter().enumerate() {
        let [s, s2, t, t2] = tuple_of(k).map(f64::from);
        p[0] += wk * s * t;
        p[1] += wk * s * t2;
        p[2] += wk * s2 * t;
        p[3] += wk * s2 * t2;
    }
    p
}

/// `|P(â,b̂) - P(â,b̂′)| + |P(â′,b̂) + P(â′,b̂′)|`, which never exceeds 2.
pub fn chsh_from_wigner(w: &WignerWeights) -> f64 {
    let [ab, ab2, a2b, a2b2] = wigner_correlators(w);
    (ab - ab2).abs() + (a2b + a2b2).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::random::random_state;
    use crate::qmath::{pauli_obs, projector, DensityOperator};
    use rand::{Rng, SeedableRng};
    use rand_xoshiro::SplitMix64;

    fn ket0() -> StateVector {
        StateVector::basis(2, 0).unwrap()
    }

    #[test]
    fn state_validation() {
        assert!(BellHvState::new(ket0(), 0.5).is_ok());
        assert!(BellHvState::new(ket0(), -0.51).is_err());
        let two = StateVector::basis(4, 0).unwrap();
        assert!(BellHvState::new(two, 0.0).is_err());
    }

    #[test]
    fn value_examples() {
        for lambda in [-0.5, -0.1, 0.0, 0.4] {
            let st = BellHvState::new(ket0(), lambda).unwrap();
            assert_eq!(bell_hv_value(0.0, [0.0, 0.0, 1.0], &st), 1.0);
        }
        let st = BellHvState::new(ket0(), 0.1).unwrap();
        assert_eq!(bell_hv_value(2.0, [0.0, 0.0, 3.0], &st), 5.0);
        // m = 0: value decided by sgn(λ)
        let neg = BellHvState::new(ket0(), -0.3).unwrap();
        let pos = BellHvState::new(ket0(), 0.3).unwrap();
        assert_eq!(bell_hv_value(0.0, [1.0, 0.0, 0.0], &neg), -1.0);
        assert_eq!(bell_hv_value(0.0, [1.0, 0.0, 0.0], &pos), 1.0);
        assert_eq!(bell_hv_value(1.5, [0.0; 3], &pos), 1.5);
    }

    #[test]
    fn value_is_always_an_eigenvalue() {
        let mut rng = SplitMix64::seed_from_u64(1);
        for _ in 0..100_000 {
            let alpha = rng.random_range(-2.0..2.0);
            let beta = [
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
            ];
            let st = BellHvState::new(random_state(&mut rng, 2), rng.random_range(-0.5..=0.5)).unwrap();
            let v = bell_hv_value(alpha, beta, &st);
            let b = norm3(beta);
            assert!(v == alpha + b || v == alpha - b);
        }
    }

    #[test]
    fn exact_average_examples() {
        assert_eq!(bell_hv_average_exact(0.0, [0.0, 0.0, 1.0], &ket0()), 1.0);
        assert_eq!(bell_hv_average_exact(0.0, [1.0, 0.0, 0.0], &ket0()), 0.0);
    }

    #[test]
    fn exact_average_matches_quadrature() {
        // midpoint rule over λ: an independent route to the integral
        let mut rng = SplitMix64::seed_from_u64(2);
        for _ in 0..20 {
            let alpha = rng.random_range(-1.0..1.0);
            let beta = [
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            ];
            let psi = random_state(&mut rng, 2);
            let n = 50_000;
            let quad: f64 = (0..n)
                .map(|k| {
                    let lambda = -0.5 + (k as f64 + 0.5) / n as f64;
                    bell_hv_value(alpha, beta, &BellHvState::new(psi.clone(), lambda).unwrap())
                })
                .sum::<f64>()
                / n as f64;
            let exact = bell_hv_average_exact(alpha, beta, &psi);
            assert!((quad - exact).abs() < 2.0 * norm3(beta) / n as f64 + 1e-12);
        }
    }

    #[test]
    fn model_reproduces_quantum_expectation() {
        let mut rng = SplitMix64::seed_from_u64(3);
        for _ in 0..10_000 {
            let alpha = rng.random_range(-3.0..3.0);
            let beta = [
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
            ];
            let psi = random_state(&mut rng, 2);
            let rho = DensityOperator::new(projector(&psi).into_matrix()).unwrap();
            let qm = crate::qmath::expectation(&rho, &pauli_obs(alpha, beta)).unwrap();
            assert!((bell_hv_average_exact(alpha, beta, &psi) - qm).abs() < 1e-10);
        }
    }

    #[test]
    fn mc_constant_case_has_zero_error() {
        let e = bell_hv_average_mc(0.0, [0.0, 0.0, 1.0], &ket0(), 10_000, 1, 1).unwrap();
        assert_eq!(e.estimate, 1.0);
        assert_eq!(e.stderr, 0.0);
        assert!(!e.flagged);
    }

    #[test]
    fn mc_within_five_sigma() {
        let e = bell_hv_average_mc(0.0, [1.0, 0.0, 0.0], &ket0(), 1_000_000, 7, 1).unwrap();
        assert!(e.estimate.abs() <= 5.0 * e.stderr, "{e:?}");
        let e = bell_hv_average_mc(1.0, [1.0, 1.0, 0.0], &ket0(), 1_000_000, 7, 1).unwrap();
        assert!((e.estimate - 1.0).abs() <= 5.0 * e.stderr, "{e:?}");
        assert!(!e.flagged);
    }

    #[test]
    fn mc_rejects_small_n_and_is_reproducible() {
        assert!(bell_hv_average_mc(0.0, [1.0, 0.0, 0.0], &ket0(), 99, 1, 1).is_err());
        let psi = StateVector::bloch(1.0, 0.3);
        let a = bell_hv_average_mc(0.2, [0.3, 0.1, 0.5], &psi, 10_000, 42, 3).unwrap();
        let b = bell_hv_average_mc(0.2, [0.3, 0.1, 0.5], &psi, 10_000, 42, 3).unwrap();
        assert_eq!(a, b);
        let c = bell_hv_average_mc(0.2, [0.3, 0.1, 0.5], &psi, 10_000, 43, 3).unwrap();
        assert_ne!(a.estimate, c.estimate);
    }

    #[test]
    fn mc_error_scales_as_inverse_sqrt_n() {
        let psi = StateVector::bloch(1.2, 0.4);
        let beta = [0.5, -0.2, 0.7];
        let errs: Vec<f64> = [1_000u64, 10_000, 100_000, 1_000_000]
            .iter()
            .map(|&n| bell_hv_average_mc(0.0, beta, &psi, n, 5, 1).unwrap().stderr)
            .collect();
        for w in errs.windows(2) {
            let ratio = w[0] / w[1];
            assert!((ratio - 10f64.sqrt()).abs() < 0.3, "ratio {ratio}");
        }
    }

    #[test]
    fn tuple_index_roundtrip() {
        for k in 0..16 {
            assert_eq!(index_of(tuple_of(k)), k);
        }
        assert_eq!(tuple_of(0), [1, 1, 1, 1]);
        assert_eq!(tuple_of(1), [1, 1, 1, -1]);
    }

    #[test]
    fn weight_validation() {
        let mut w = [1.0 / 16.0; 16];
        w[0] = -0.01;
        assert!(WignerWeights::new(w).is_err());
        assert!(WignerWeights::new([0.1; 16]).is_err());
        assert!(WignerWeights::from_slice(&[1.0]).is_err());
        assert!(WignerWeights::new([f64::NAN; 16]).is_err());
    }

    #[test]
    fn wigner_examples() {
        assert_eq!(wigner_correlators(&WignerWeights::uniform()), [0.0; 4]);
        assert_eq!(chsh_from_wigner(&WignerWeights::uniform()), 0.0);
        assert_eq!(wigner_correlators(&WignerWeights::vertex([1, 1, 1, 1])), [1.0; 4]);
        assert_eq!(chsh_from_wigner(&WignerWeights::vertex([1, 1, 1, -1])), 2.0);
    }

    #[test]
    fn wigner_correlators_match_enumeration() {
        let mut rng = SplitMix64::seed_from_u64(4);
        for _ in 0..100 {
            let raw: Vec<f64> = (0..16).map(|_| rng.random::<f64>()).collect();
            let total: f64 = raw.iter().sum();
            let w = WignerWeights::from_slice(&raw.iter().map(|x| x / total).collect::<Vec<_>>()).unwrap();
            let mut brute = [0.0; 4];
            for s in [1i8, -1] {
                for s2 in [1i8, -1] {
                    for t in [1i8, -1] {
                        for t2 in [1i8, -1] {
                            let wk = w.weight([s, s2, t, t2]);
                            let (s, s2, t, t2) = (s as f64, s2 as f64, t as f64, t2 as f64);
                            brute[0] += wk * s * t;
                            brute[1] += wk * s * t2;
                            brute[2] += wk * s2 * t;
                            brute[3] += wk * s2 * t2;
                        }
                    }
                }
            }
            let p = wigner_correlators(&w);
            for i in 0..4 {
                assert!((p[i] - brute[i]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn every_vertex_obeys_chsh_bound() {
        for k in 0..16 {
            let s = chsh_from_wigner(&WignerWeights::vertex(tuple_of(k)));
            assert!(s == 0.0 || s == 2.0, "vertex {k} gives {s}");
        }
    }
}
