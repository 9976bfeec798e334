//! Random test objects: Haar-ish states, Hermitian matrices, density operators.

use rand::Rng;
use rand_distr::StandardNormal;

use super::matrix::{ComplexMatrix, C64};
use super::state::{norm_sqr, DensityOperator, StateVector};

fn gaussian_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Normalized complex Gaussian vector (uniform on the unit sphere).
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..dim).map(|_| gaussian_c64(rng)).collect();
        let n = norm_sqr(&v).sqrt();
        if n > 1e-6 {
            return v.into_iter().map(|a| a / n).collect();
        }
    }
}

/// Uniformly random pure state.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> StateVector {
    StateVector::new(random_unit_vector(rng, dim)).expect("dim must be at least 2")
}

/// Uniform point on the unit sphere in 3-space.
pub fn random_direction<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let r = (1.0 - z * z).max(0.0).sqrt();
    [r * phi.cos(), r * phi.sin(), z]
}

/// Hermitian matrix with Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        m[(i, i)] = C64::new(rng.sample(StandardNormal), 0.0);
        for j in 0..i {
            let z = gaussian_c64(rng);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// Random mixture of `dim` random pure states (any dimension), built as
/// `Σ w_k |ψ_k><ψ_k|` with Dirichlet-like weights.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityOperator {
    let weights: Vec<f64> = (0..dim).map(|_| -rng.random::<f64>().max(1e-300).ln()).collect();
    let total: f64 = weights.iter().sum();
    let mut m = ComplexMatrix::zeros(dim, dim);
    for w in weights {
        let v = random_unit_vector(rng, dim);
        m = &m + &ComplexMatrix::outer(&v, &v).scale_real(w / total);
    }
    DensityOperator::new(m).expect("convex mixture of pure states")
}
