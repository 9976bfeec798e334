//! Hermitian eigenproblems: closed form for 2×2, a dense solver otherwise.

use nalgebra::{DMatrix, SymmetricEigen};

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};
use crate::tol;

/// Eigenvalues and orthonormal eigenvectors of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Sorted descending.
    pub values: Vec<f64>,
    /// `vectors[k]` belongs to `values[k]`.
    pub vectors: Vec<Vec<C64>>,
}

impl EigenDecomposition {
    /// Number of eigenvalues with modulus above `cutoff`.
    pub fn rank(&self, cutoff: f64) -> usize {
        self.values.iter().filter(|v| v.abs() > cutoff).count()
    }
}

fn check_hermitian(m: &ComplexMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimMismatch {
            expected: "square matrix".into(),
            got: format!("{}x{}", m.rows(), m.cols()),
        });
    }
    let dev = m.hermitian_deviation();
    if dev > tol::EQ {
        return Err(Error::NotHermitian(dev));
    }
    Ok(())
}

/// Both eigenvalues of a 2×2 Hermitian matrix from its trace and
/// determinant, largest first.
pub fn eig_herm2(h: &ComplexMatrix) -> Result<(f64, f64)> {
    check_hermitian(h)?;
    if h.rows() != 2 {
        return Err(Error::DimMismatch {
            expected: "2x2".into(),
            got: format!("{}x{}", h.rows(), h.cols()),
        });
    }
    let a = h[(0, 0)].re;
    let d = h[(1, 1)].re;
    let b = h[(0, 1)];
    let half_tr = 0.5 * (a + d);
    // sqrt(tr²/4 - det) written without cancellation
    let disc = (0.5 * (a - d)).hypot(b.norm());
    Ok((half_tr + disc, half_tr - disc))
}

/// Full eigendecomposition of a Hermitian matrix (LAPACK-style
/// tridiagonalization plus implicit QR, via `nalgebra`).
pub fn eigh(h: &ComplexMatrix) -> Result<EigenDecomposition> {
    check_hermitian(h)?;
    let n = h.rows();
    // symmetrize so the solver sees an exactly Hermitian matrix
    let sym = (h + &h.adjoint()).scale_real(0.5);
    let m = DMatrix::from_fn(n, n, |i, j| sym[(i, j)]);
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = order
        .iter()
        .map(|&i| eig.eigenvectors.column(i).iter().copied().collect())
        .collect();
    Ok(EigenDecomposition { values, vectors })
}

/// Eigenvalues only, sorted descending; closed form for 2×2.
pub fn eigvalsh(h: &ComplexMatrix) -> Result<Vec<f64>> {
    if h.rows() == 2 && h.cols() == 2 {
        let (hi, lo) = eig_herm2(h)?;
        return Ok(vec![hi, lo]);
    }
    Ok(eigh(h)?.values)
}

/// Orthogonal projector onto the span of `vectors` (assumed orthonormal).
pub(crate) fn span_projector(n: usize, vectors: &[&Vec<C64>]) -> ComplexMatrix {
    let mut p = ComplexMatrix::zeros(n, n);
    for v in vectors {
        p = &p + &ComplexMatrix::outer(v, v);
    }
    p
}
