use super::eigen::{eigh, eigvalsh};
use super::matrix::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};
use crate::tol;

/// Unit-norm pure state. Qubit registers use dimensions 2, 4 and 8; the
/// ensemble checks also work with other dimensions, so any `dim >= 2` is
/// accepted.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<C64>,
}

impl StateVector {
    /// Validates `dim >= 2` and unit norm within [`tol::EQ`].
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        if amps.len() < 2 {
            return Err(Error::BadStateDim(amps.len()));
        }
        let n2 = norm_sqr(&amps);
        if (n2 - 1.0).abs() > tol::EQ {
            return Err(Error::NotNormalized(n2));
        }
        Ok(Self { amps })
    }

    /// Rescales to unit norm before validating.
    pub fn normalized(amps: Vec<C64>) -> Result<Self> {
        let n = norm_sqr(&amps).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::NotNormalized(n * n));
        }
        Self::new(amps.into_iter().map(|a| a / n).collect())
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::new(amps.iter().map(|&a| C64::new(a, 0.0)).collect())
    }

    /// Computational basis state `|k>` in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::Domain(format!("basis index {k} >= dimension {dim}")));
        }
        let mut amps = vec![ZERO; dim];
        amps[k] = C64::new(1.0, 0.0);
        Self::new(amps)
    }

    /// Qubit state with Bloch angles: `cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>`.
    pub fn bloch(theta: f64, phi: f64) -> Self {
        let (s, c) = (0.5 * theta).sin_cos();
        Self {
            amps: vec![C64::new(c, 0.0), C64::from_polar(s, phi)],
        }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn inner(&self, other: &StateVector) -> C64 {
        inner(&self.amps, &other.amps)
    }

    pub fn density(&self) -> DensityOperator {
        DensityOperator {
            matrix: ComplexMatrix::outer(&self.amps, &self.amps),
        }
    }
}

pub(crate) fn norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum()
}

/// `<a|b>`.
pub(crate) fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Square Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    matrix: ComplexMatrix,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimMismatch {
                expected: "square matrix".into(),
                got: format!("{}x{}", matrix.rows(), matrix.cols()),
            });
        }
        let dev = matrix.hermitian_deviation();
        if dev > tol::EQ {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self { matrix })
    }

    pub(crate) fn new_unchecked(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.is_hermitian(1e-8));
        Self { matrix }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        eigvalsh(&self.matrix).expect("observable is Hermitian")
    }

    /// Tensor product of observables stays Hermitian.
    pub fn kron(&self, other: &Observable) -> Observable {
        Observable {
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    /// Real linear combination `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &Observable, b: f64) -> Result<Observable> {
        if self.dim() != other.dim() {
            return Err(Error::DimMismatch {
                expected: self.dim().to_string(),
                got: other.dim().to_string(),
            });
        }
        Ok(Observable {
            matrix: &self.matrix.scale_real(a) + &other.matrix.scale_real(b),
        })
    }

    /// `max |P² - P|`.
    pub fn projector_deviation(&self) -> f64 {
        (&self.matrix * &self.matrix).max_abs_diff(&self.matrix)
    }

    pub fn is_projector(&self, tol: f64) -> bool {
        self.projector_deviation() <= tol
    }
}

/// Hermitian, positive-semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    /// Checks hermiticity and trace within [`tol::EQ`], eigenvalues
    /// `>= -`[`tol::PSD`].
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let rho = Self::new_unchecked_psd(matrix)?;
        let min = eigvalsh(&rho.matrix)?.last().copied().unwrap_or(0.0);
        if min < -tol::PSD {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min:e}")));
        }
        Ok(rho)
    }

    /// Hermiticity and trace are checked; positivity is not.
    pub(crate) fn new_unchecked_psd(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidDensity(format!(
                "{}x{} is not square",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let dev = matrix.hermitian_deviation();
        if dev > tol::EQ {
            return Err(Error::NotHermitian(dev));
        }
        let tr = matrix.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > tol::EQ {
            return Err(Error::InvalidDensity(format!("trace {} != 1", tr.re)));
        }
        Ok(Self { matrix })
    }

    /// Maximally mixed state `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    /// Convex mixture of pure states; weights must be nonnegative and sum to 1.
    pub fn mixture(weights: &[f64], states: &[StateVector]) -> Result<Self> {
        if weights.len() != states.len() || states.is_empty() {
            return Err(Error::DimMismatch {
                expected: weights.len().to_string(),
                got: states.len().to_string(),
            });
        }
        if weights.iter().any(|&w| w < 0.0) {
            return Err(Error::InvalidDensity("negative mixture weight".into()));
        }
        let dim = states[0].dim();
        let mut m = ComplexMatrix::zeros(dim, dim);
        for (w, s) in weights.iter().zip(states) {
            if s.dim() != dim {
                return Err(Error::DimMismatch {
                    expected: dim.to_string(),
                    got: s.dim().to_string(),
                });
            }
            m = &m + &ComplexMatrix::outer(&s.amps, &s.amps).scale_real(*w);
        }
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Eigenvalues (descending) with eigenvectors.
    pub fn spectrum(&self) -> super::eigen::EigenDecomposition {
        eigh(&self.matrix).expect("density operator is Hermitian")
    }

    /// `<φ|ρ|φ>`.
    pub fn diagonal_element(&self, phi: &[C64]) -> f64 {
        let rphi = self.matrix.apply(phi).expect("dimension checked by caller");
        inner(phi, &rphi).re
    }
}
