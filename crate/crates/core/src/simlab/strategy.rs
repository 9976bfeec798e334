use crate::error::{Error, Result};
use crate::hvmodels::sgn;
use crate::nonlocality::SpinSetting;
use crate::qmath::random::random_direction;
use crate::rng::SplitMix64;

/// Hidden variable carried by each pair.
pub type Lambda = [f64; 3];

/// Local deterministic model: a `λ` sampler plus one response function per
/// side. Alice's response never sees Bob's setting and vice versa.
pub trait LhvStrategy: Sync {
    fn id(&self) -> &str;

    /// Draws `λ` from the strategy's normalized distribution.
    fn sample_lambda(&self, rng: &mut SplitMix64) -> Lambda;

    /// Outcome on side 1; must be `+1` or `-1`.
    fn alice(&self, a: &SpinSetting, lambda: &Lambda) -> i32;

    /// Outcome on side 2; must be `+1` or `-1`.
    fn bob(&self, b: &SpinSetting, lambda: &Lambda) -> i32;

    /// Infinite-sample correlator `∫ρ(λ) A(â,λ) B(b̂,λ) dλ`, when known.
    fn exact_correlator(&self, _a: &SpinSetting, _b: &SpinSetting) -> Option<f64> {
        None
    }
}

fn sign_of(x: f64) -> i32 {
    sgn(x) as i32
}

/// `A = sgn(â·λ̂)`, `B = -sgn(b̂·λ̂)` with `λ̂` uniform on the unit sphere.
/// Its correlator is `-1 + 2θ/π`, `θ` the angle between the settings.
#[derive(Debug, Clone, Copy, Default)]
pub struct SignModel;

impl LhvStrategy for SignModel {
    fn id(&self) -> &str {
        "sign"
    }

    fn sample_lambda(&self, rng: &mut SplitMix64) -> Lambda {
        random_direction(rng)
    }

    fn alice(&self, a: &SpinSetting, lambda: &Lambda) -> i32 {
        sign_of(crate::qmath::dot3(a.vector(), *lambda))
    }

    fn bob(&self, b: &SpinSetting, lambda: &Lambda) -> i32 {
        -sign_of(crate::qmath::dot3(b.vector(), *lambda))
    }

    fn exact_correlator(&self, a: &SpinSetting, b: &SpinSetting) -> Option<f64> {
        let theta = a.dot(b).clamp(-1.0, 1.0).acos();
        Some(-1.0 + 2.0 * theta / std::f64::consts::PI)
    }
}

/// `A = +1`, `B = -1` for every setting.
#[derive(Debug, Clone, Copy, Default)]
pub struct ConstantModel;

impl LhvStrategy for ConstantModel {
    fn id(&self) -> &str {
        "constant"
    }

    fn sample_lambda(&self, _rng: &mut SplitMix64) -> Lambda {
        [0.0; 3]
    }

    fn alice(&self, _a: &SpinSetting, _lambda: &Lambda) -> i32 {
        1
    }

    fn bob(&self, _b: &SpinSetting, _lambda: &Lambda) -> i32 {
        -1
    }

    fn exact_correlator(&self, _a: &SpinSetting, _b: &SpinSetting) -> Option<f64> {
        Some(-1.0)
    }
}

/// Builds `B(b̂,λ) = -A(b̂,λ)` from any response `A`, so equal settings are
/// perfectly anticorrelated. `λ̂` is uniform on the sphere.
pub struct AntiCorrelated<F> {
    id: String,
    response: F,
}

impl<F: Fn(&SpinSetting, &Lambda) -> i32 + Sync> AntiCorrelated<F> {
    pub fn new(id: impl Into<String>, response: F) -> Self {
        Self {
            id: id.into(),
            response,
        }
    }
}

impl<F: Fn(&SpinSetting, &Lambda) -> i32 + Sync> LhvStrategy for AntiCorrelated<F> {
    fn id(&self) -> &str {
        &self.id
    }

    fn sample_lambda(&self, rng: &mut SplitMix64) -> Lambda {
        random_direction(rng)
    }

    fn alice(&self, a: &SpinSetting, lambda: &Lambda) -> i32 {
        (self.response)(a, lambda)
    }

    fn bob(&self, b: &SpinSetting, lambda: &Lambda) -> i32 {
        -(self.response)(b, lambda)
    }
}

/// Ids accepted by [`builtin_strategy`].
pub const BUILTIN_STRATEGIES: [&str; 2] = ["sign", "constant"];

pub fn builtin_strategy(id: &str) -> Result<Box<dyn LhvStrategy>> {
    match id {
        "sign" => Ok(Box::new(SignModel)),
        "constant" => Ok(Box::new(ConstantModel)),
        other => Err(Error::Domain(format!(
            "unknown LHV strategy {other:?}; expected one of {BUILTIN_STRATEGIES:?}"
        ))),
    }
}
