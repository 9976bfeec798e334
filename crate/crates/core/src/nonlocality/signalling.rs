use crate::error::{Error, Result};
use crate::qmath::{expectation, ComplexMatrix, DensityOperator, Observable};
use crate::tol;

/// Applies a nonselective projective measurement: `ρ′ = Σ_β P_β ρ P_β`.
pub fn measure_nonselective(rho: &DensityOperator, projectors: &[Observable]) -> Result<ComplexMatrix> {
    let n = rho.dim();
    let mut out = ComplexMatrix::zeros(n, n);
    for p in projectors {
        if p.dim() != n {
            return Err(Error::DimMismatch {
                expected: n.to_string(),
                got: p.dim().to_string(),
            });
        }
        out = &out + &(&(p.matrix() * rho.matrix()) * p.matrix());
    }
    Ok(out)
}

/// `|Tr(ρ′A) - Tr(ρA)|` after a nonselective measurement of `B` with
/// eigenprojectors `b_projectors`. The projectors must be orthogonal
/// projectors resolving the identity and every one must commute with `A`.
pub fn no_signalling_check(rho: &DensityOperator, a: &Observable, b_projectors: &[Observable]) -> Result<f64> {
    let n = rho.dim();
    if a.dim() != n {
        return Err(Error::DimMismatch {
            expected: n.to_string(),
            got: a.dim().to_string(),
        });
    }
    if b_projectors.is_empty() {
        return Err(Error::NotResolution(1.0));
    }
    let mut sum = ComplexMatrix::zeros(n, n);
    for (i, p) in b_projectors.iter().enumerate() {
        if p.dim() != n {
            return Err(Error::DimMismatch {
                expected: n.to_string(),
                got: p.dim().to_string(),
            });
        }
        let dev = p.projector_deviation();
        if dev > tol::EQ {
            return Err(Error::NotProjector(dev));
        }
        let comm = a.matrix().commutator(p.matrix())?.max_abs();
        if comm > tol::EQ {
            return Err(Error::NotCommuting {
                index: i,
                deviation: comm,
            });
        }
        sum = &sum + p.matrix();
    }
    let dev = sum.max_abs_diff(&ComplexMatrix::identity(n));
    if dev > tol::EQ {
        return Err(Error::NotResolution(dev));
    }
    let after = measure_nonselective(rho, b_projectors)?;
    let before = expectation(rho, a)?;
    let after = after.matmul(a.matrix())?.trace().re;
    Ok((after - before).abs())
}
