use super::matrix::{ComplexMatrix, C64, I, ONE, ZERO};
use super::state::Observable;

fn mat2(a: C64, b: C64, c: C64, d: C64) -> ComplexMatrix {
    ComplexMatrix::from_vec(2, 2, vec![a, b, c, d]).expect("2x2")
}

pub fn sigma_x() -> Observable {
    Observable::new_unchecked(mat2(ZERO, ONE, ONE, ZERO))
}

pub fn sigma_y() -> Observable {
    Observable::new_unchecked(mat2(ZERO, -I, I, ZERO))
}

pub fn sigma_z() -> Observable {
    Observable::new_unchecked(mat2(ONE, ZERO, ZERO, -ONE))
}

/// `n·σ` for a real 3-vector `n` (not necessarily unit).
pub fn spin_along(n: [f64; 3]) -> Observable {
    pauli_obs(0.0, n)
}

/// `α·1 + β·σ`, with eigenvalues `α ± |β|`.
pub fn pauli_obs(alpha: f64, beta: [f64; 3]) -> Observable {
    let [bx, by, bz] = beta;
    Observable::new_unchecked(mat2(
        C64::new(alpha + bz, 0.0),
        C64::new(bx, -by),
        C64::new(bx, by),
        C64::new(alpha - bz, 0.0),
    ))
}

/// Rank-1 spin projector `½(1 + s·n̂·σ)` for `s = ±1`.
pub fn spin_projector(n: [f64; 3], sign: f64) -> Observable {
    pauli_obs(0.5, [0.5 * sign * n[0], 0.5 * sign * n[1], 0.5 * sign * n[2]])
}

/// Embeds single-qubit operators into a register: `ops[k]` acts on qubit `k`
/// (qubit 0 is the most significant tensor factor); `None` means identity.
pub fn on_qubits(ops: &[Option<&Observable>]) -> Observable {
    let id = Observable::identity(2);
    let mut it = ops.iter().map(|o| o.unwrap_or(&id));
    let first = it.next().expect("at least one qubit").clone();
    it.fold(first, |acc, o| acc.kron(o))
}

pub(crate) fn norm3(v: [f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub(crate) fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
