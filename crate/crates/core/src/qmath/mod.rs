//! Small dense complex linear algebra and qubit/Pauli constructions.

mod eigen;
mod matrix;
mod pauli;
pub mod random;
mod state;

pub use eigen::{eig_herm2, eigh, eigvalsh, EigenDecomposition};
pub use matrix::{kron, kron_all, ComplexMatrix, C64};
pub use pauli::{on_qubits, pauli_obs, sigma_x, sigma_y, sigma_z, spin_along, spin_projector};
pub use state::{DensityOperator, Observable, StateVector};

pub(crate) use pauli::{dot3, norm3};
pub(crate) use state::inner;

use crate::error::{Error, Result};
use crate::tol;

/// `Tr(ρA)`. The imaginary part must vanish within [`tol::EQ`]·scale.
pub fn expectation(rho: &DensityOperator, a: &Observable) -> Result<f64> {
    if rho.dim() != a.dim() {
        return Err(Error::DimMismatch {
            expected: rho.dim().to_string(),
            got: a.dim().to_string(),
        });
    }
    let tr = rho.matrix().matmul(a.matrix())?.trace();
    debug_assert!(
        tr.im.abs() <= tol::EQ * a.matrix().max_abs().max(1.0),
        "Tr(ρA) has imaginary part {}",
        tr.im
    );
    Ok(tr.re)
}

/// `<ψ|A|ψ>` without forming the density matrix.
pub fn expectation_pure(psi: &StateVector, a: &Observable) -> Result<f64> {
    let av = a.matrix().apply(psi.amplitudes())?;
    Ok(inner(psi.amplitudes(), &av).re)
}

/// `|ψ><ψ|`.
pub fn projector(psi: &StateVector) -> Observable {
    let v = psi.amplitudes();
    Observable::new_unchecked(ComplexMatrix::outer(v, v))
}

/// Projector onto `range(P) ∩ range(Q)` together with its rank.
///
/// A vector lies in both ranges iff it is annihilated by the positive
/// operator `2I - P - Q`, so the result is the projector onto that
/// operator's (numerical) null space.
pub fn intersection_projector(p: &Observable, q: &Observable) -> Result<(Observable, usize)> {
    if p.dim() != q.dim() {
        return Err(Error::DimMismatch {
            expected: p.dim().to_string(),
            got: q.dim().to_string(),
        });
    }
    for m in [p, q] {
        let dev = m.projector_deviation();
        if dev > tol::EQ {
            return Err(Error::NotProjector(dev));
        }
    }
    let n = p.dim();
    let two = ComplexMatrix::identity(n).scale_real(2.0);
    let gap = &(&two - p.matrix()) - q.matrix();
    let eig = eigh(&gap)?;
    let null: Vec<&Vec<C64>> = eig
        .values
        .iter()
        .zip(&eig.vectors)
        .filter(|(v, _)| v.abs() <= tol::PSD)
        .map(|(_, vec)| vec)
        .collect();
    let rank = null.len();
    Ok((Observable::new_unchecked(eigen::span_projector(n, &null)), rank))
}
