use crate::error::{Error, Result};
use crate::qmath::{expectation_pure, norm3, spin_along, StateVector, C64};
use crate::tol;

/// Unit Stern-Gerlach direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinSetting([f64; 3]);

impl SpinSetting {
    pub fn new(v: [f64; 3]) -> Result<Self> {
        let n = norm3(v);
        if (n - 1.0).abs() > tol::EQ {
            return Err(Error::Domain(format!("setting {v:?} is not a unit vector (|v| = {n})")));
        }
        Ok(Self(v))
    }

    /// Direction with polar angle `theta` and azimuth `phi`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self([st * cp, st * sp, ct])
    }

    pub fn normalized(v: [f64; 3]) -> Result<Self> {
        let n = norm3(v);
        if !n.is_finite() || n == 0.0 {
            return Err(Error::Domain("zero setting vector".into()));
        }
        Self::new(v.map(|x| x / n))
    }

    pub fn x() -> Self {
        Self([1.0, 0.0, 0.0])
    }

    pub fn y() -> Self {
        Self([0.0, 1.0, 0.0])
    }

    pub fn z() -> Self {
        Self([0.0, 0.0, 1.0])
    }

    pub fn vector(&self) -> [f64; 3] {
        self.0
    }

    pub fn dot(&self, other: &SpinSetting) -> f64 {
        crate::qmath::dot3(self.0, other.0)
    }
}

/// `(â, â′, b̂, b̂′)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshSettings {
    pub a: SpinSetting,
    pub a2: SpinSetting,
    pub b: SpinSetting,
    pub b2: SpinSetting,
}

impl ChshSettings {
    /// The four correlator setting pairs in the order
    /// `(â,b̂), (â,b̂′), (â′,b̂), (â′,b̂′)`.
    pub fn pairs(&self) -> [(SpinSetting, SpinSetting); 4] {
        [
            (self.a, self.b),
            (self.a, self.b2),
            (self.a2, self.b),
            (self.a2, self.b2),
        ]
    }

    /// Settings that give `S = 2√2` on the singlet:
    /// `â = ŷ`, `b̂ = (x̂+ŷ)/√2`, `â′ = x̂`, `b̂′ = (x̂-ŷ)/√2`.
    pub fn optimal_singlet() -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            a: SpinSetting::y(),
            b: SpinSetting([r, r, 0.0]),
            a2: SpinSetting::x(),
            b2: SpinSetting([r, -r, 0.0]),
        }
    }
}

/// `(|01⟩ - |10⟩)/√2`.
pub fn singlet_state() -> StateVector {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    StateVector::from_real(&[0.0, r, -r, 0.0]).expect("unit norm")
}

/// `⟨ψ| (σ·â) ⊗ (σ·b̂) |ψ⟩`.
pub fn qm_correlator(psi: &StateVector, a: &SpinSetting, b: &SpinSetting) -> Result<f64> {
    if psi.dim() != 4 {
        return Err(Error::DimMismatch {
            expected: "4".into(),
            got: psi.dim().to_string(),
        });
    }
    let op = spin_along(a.0).kron(&spin_along(b.0));
    expectation_pure(psi, &op)
}

/// `η_a η_b P(â,b̂) + η_a η_c P(â,ĉ) + η_b η_c P(b̂,ĉ)`; local hidden-variable
/// theories keep this at or below 1.
pub fn bell_original_lhs(
    psi: &StateVector,
    a: &SpinSetting,
    b: &SpinSetting,
    c: &SpinSetting,
    etas: [i8; 3],
) -> Result<f64> {
    if etas.iter().any(|e| e.abs() != 1) {
        return Err(Error::Domain(format!("η values must be ±1, got {etas:?}")));
    }
    let [ea, eb, ec] = etas.map(f64::from);
    Ok(ea * eb * qm_correlator(psi, a, b)? + ea * ec * qm_correlator(psi, a, c)? + eb * ec * qm_correlator(psi, b, c)?)
}

/// Three coplanar directions 120° apart: `x̂`, `(-½, √3/2, 0)`, `(-½, -√3/2, 0)`.
pub fn trine_settings() -> [SpinSetting; 3] {
    let h = 3f64.sqrt() / 2.0;
    [
        SpinSetting::x(),
        SpinSetting([-0.5, h, 0.0]),
        SpinSetting([-0.5, -h, 0.0]),
    ]
}

/// `S` from four correlators in [`ChshSettings::pairs`] order.
pub fn chsh_combination(p: [f64; 4]) -> f64 {
    (p[0] - p[1]).abs() + (p[2] + p[3]).abs()
}

/// `S = |P(â,b̂) - P(â,b̂′)| + |P(â′,b̂) + P(â′,b̂′)|`.
pub fn chsh_value(psi: &StateVector, s: &ChshSettings) -> Result<f64> {
    let pairs = s.pairs();
    let mut p = [0.0; 4];
    for (slot, (x, y)) in p.iter_mut().zip(pairs.iter()) {
        *slot = qm_correlator(psi, x, y)?;
    }
    Ok(chsh_combination(p))
}

/// Two-qubit product state `|0⟩ ⊗ |0⟩`.
pub fn product_state_00() -> StateVector {
    StateVector::basis(4, 0).expect("dimension 4")
}

pub(crate) fn cplx(re: f64) -> C64 {
    C64::new(re, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::random::{random_direction, random_state};
    use rand::SeedableRng;
    use rand_xoshiro::SplitMix64;

    #[test]
    fn singlet_basics() {
        let s = singlet_state();
        assert!((s.inner(&s).re - 1.0).abs() < 1e-15);
        assert_eq!(s.amplitudes()[0], cplx(0.0));
        for a in [SpinSetting::x(), SpinSetting::y(), SpinSetting::z()] {
            assert!((qm_correlator(&s, &a, &a).unwrap() + 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn correlator_examples() {
        let s = singlet_state();
        assert!((qm_correlator(&s, &SpinSetting::x(), &SpinSetting::y()).unwrap()).abs() < 1e-15);
        let b = SpinSetting::new([-0.5, 3f64.sqrt() / 2.0, 0.0]).unwrap();
        assert!((qm_correlator(&s, &SpinSetting::x(), &b).unwrap() - 0.5).abs() < 1e-15);
        assert!(qm_correlator(&StateVector::basis(2, 0).unwrap(), &b, &b).is_err());
    }

    #[test]
    fn singlet_correlator_is_minus_dot() {
        let mut rng = SplitMix64::seed_from_u64(6);
        let s = singlet_state();
        for _ in 0..10_000 {
            let a = SpinSetting::normalized(random_direction(&mut rng)).unwrap();
            let b = SpinSetting::normalized(random_direction(&mut rng)).unwrap();
            assert!((qm_correlator(&s, &a, &b).unwrap() + a.dot(&b)).abs() < 1e-10);
        }
    }

    #[test]
    fn bell_trine_violation() {
        let [a, b, c] = trine_settings();
        let lhs = bell_original_lhs(&singlet_state(), &a, &b, &c, [1, 1, 1]).unwrap();
        assert!((lhs - 1.5).abs() < 1e-10);
        let z = SpinSetting::z();
        assert!((bell_original_lhs(&singlet_state(), &z, &z, &z, [1, 1, 1]).unwrap() + 3.0).abs() < 1e-14);
        assert!(bell_original_lhs(&singlet_state(), &z, &z, &z, [1, 0, 1]).is_err());
    }

    #[test]
    fn bell_lhs_is_sum_of_correlators() {
        let mut rng = SplitMix64::seed_from_u64(7);
        for _ in 0..100 {
            let psi = random_state(&mut rng, 4);
            let [a, b, c] = [(); 3].map(|_| SpinSetting::normalized(random_direction(&mut rng)).unwrap());
            let etas = [1, -1, 1];
            let direct = -qm_correlator(&psi, &a, &b).unwrap() + qm_correlator(&psi, &a, &c).unwrap()
                - qm_correlator(&psi, &b, &c).unwrap();
            assert!((bell_original_lhs(&psi, &a, &b, &c, etas).unwrap() - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn chsh_examples() {
        let s = chsh_value(&singlet_state(), &ChshSettings::optimal_singlet()).unwrap();
        assert!((s - 2.0 * 2f64.sqrt()).abs() < 1e-10);
        let mut st = ChshSettings::optimal_singlet();
        st.b2 = st.b;
        assert!(chsh_value(&singlet_state(), &st).unwrap() <= 2.0 + 1e-12);
    }

    #[test]
    fn product_state_grid_never_exceeds_two() {
        // grid oracle over settings in the x-z plane and around the sphere
        let psi = product_state_00();
        let n = 12;
        let mut best: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let ang = |m: usize| std::f64::consts::TAU * m as f64 / n as f64;
                        let st = ChshSettings {
                            a: SpinSetting::from_angles(ang(i), 0.0),
                            a2: SpinSetting::from_angles(ang(j), 0.3),
                            b: SpinSetting::from_angles(ang(k), 0.0),
                            b2: SpinSetting::from_angles(ang(l), 1.1),
                        };
                        best = best.max(chsh_value(&psi, &st).unwrap());
                    }
                }
            }
        }
        assert!(best <= 2.0 + 1e-12);
        assert!(best > 1.9);
    }

    #[test]
    fn setting_validation() {
        assert!(SpinSetting::new([1.0, 1.0, 0.0]).is_err());
        assert!(SpinSetting::normalized([0.0; 3]).is_err());
        assert!((norm3(SpinSetting::from_angles(1.0, 2.0).vector()) - 1.0).abs() < 1e-15);
    }
}
