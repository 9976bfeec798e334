use crate::qmath::{on_qubits, sigma_x, sigma_y, Observable, StateVector};

/// `(|000⟩ - |111⟩)/√2`.
pub fn ghz_state() -> StateVector {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = [0.0; 8];
    amps[0] = r;
    amps[7] = -r;
    StateVector::from_real(&amps).expect("unit norm")
}

/// Which Pauli acts on each of the three qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// The four GHZ stabilizer identities `O|ψ⟩ = s|ψ⟩`: `xyy, yxy, yyx` with
/// `s = +1` and `xxx` with `s = -1`.
pub const GHZ_IDENTITIES: [([Axis; 3], i8); 4] = [
    ([Axis::X, Axis::Y, Axis::Y], 1),
    ([Axis::Y, Axis::X, Axis::Y], 1),
    ([Axis::Y, Axis::Y, Axis::X], 1),
    ([Axis::X, Axis::X, Axis::X], -1),
];

pub fn ghz_operator(axes: [Axis; 3]) -> Observable {
    let (x, y) = (sigma_x(), sigma_y());
    let pick = |a: Axis| match a {
        Axis::X => &x,
        Axis::Y => &y,
    };
    on_qubits(&[Some(pick(axes[0])), Some(pick(axes[1])), Some(pick(axes[2]))])
}

/// `max |O|ψ⟩ - s|ψ⟩|` for each identity in [`GHZ_IDENTITIES`].
pub fn ghz_identity_deviations(psi: &StateVector) -> [f64; 4] {
    std::array::from_fn(|k| {
        let (axes, sign) = GHZ_IDENTITIES[k];
        let out = ghz_operator(axes)
            .matrix()
            .apply(psi.amplitudes())
            .expect("dimension 8");
        out.iter()
            .zip(psi.amplitudes())
            .map(|(o, p)| (o - p * f64::from(sign)).norm())
            .fold(0.0, f64::max)
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GhzSearch {
    pub checked: u64,
    pub satisfying: u64,
    /// `(m_x¹, m_y¹, m_x², m_y², m_x³, m_y³)` of the first solution.
    pub example: Option<[i8; 6]>,
    /// Product of the signs required by the three mixed constraints; since
    /// every `m_y` appears twice there, this is what they force on
    /// `m_x¹ m_x² m_x³`.
    pub implied_xxx: i8,
    pub required_xxx: i8,
}

impl GhzSearch {
    pub fn contradiction(&self) -> bool {
        self.implied_xxx != self.required_xxx
    }
}

fn product(m: &[i8; 6], axes: [Axis; 3]) -> i8 {
    axes.iter()
        .enumerate()
        .map(|(q, a)| match a {
            Axis::X => m[2 * q],
            Axis::Y => m[2 * q + 1],
        })
        .product()
}

/// Whether local values `m` satisfy every identity with the given signs.
pub fn ghz_assignment_ok(m: &[i8; 6], signs: [i8; 4]) -> bool {
    m.iter().all(|&v| v == 1 || v == -1)
        && GHZ_IDENTITIES
            .iter()
            .zip(signs)
            .all(|((axes, _), s)| product(m, *axes) == s)
}

/// Exhaustive search over the 64 local-realist value assignments.
pub fn ghz_assignment_search_with(signs: [i8; 4]) -> GhzSearch {
    let mut satisfying = 0;
    let mut example = None;
    for mask in 0u32..64 {
        let m: [i8; 6] = std::array::from_fn(|i| if mask >> i & 1 == 1 { -1 } else { 1 });
        if ghz_assignment_ok(&m, signs) {
            satisfying += 1;
            example.get_or_insert(m);
        }
    }
    GhzSearch {
        checked: 64,
        satisfying,
        example,
        implied_xxx: signs[0] * signs[1] * signs[2],
        required_xxx: signs[3],
    }
}

/// Search with the quantum signs `(+1, +1, +1, -1)`.
pub fn ghz_assignment_search() -> GhzSearch {
    ghz_assignment_search_with(GHZ_IDENTITIES.map(|(_, s)| s))
}
