//! Seeded Monte Carlo CHSH experiments.
//!
//! Pairs are assigned to the four setting pairs round-robin by their global
//! index (`i mod 4`, in [`ChshSettings::pairs`] order). A singlet source with
//! visibility `V` draws the joint outcome from
//! `P(x,y) = (1 + xy·V·(-â·b̂))/4` by inverse CDF on one 64-bit draw per pair.
//! An LHV source draws `λ` once per pair and evaluates the two local
//! responses. Work is split into `workers` contiguous shards, shard `k`
//! using [`crate::rng::stream`]`(seed, k)`; outcome tallies are integers, so
//! a report is a function of `(config)` alone.

mod config;
mod strategy;

pub use config::{format_config, parse_config};
pub use strategy::{
    builtin_strategy, AntiCorrelated, ConstantModel, Lambda, LhvStrategy, SignModel, BUILTIN_STRATEGIES,
};

use crate::check::Check;
use crate::error::{Error, Result};
use crate::nonlocality::{chsh_combination, ChshSettings, SpinSetting};
use crate::rng::{shard_ranges, stream, unit_f64, SplitMix64};
use crate::tol;

/// Minimum run length: two pairs per setting, so every sample variance exists.
pub const MIN_PAIRS: u64 = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Singlet,
    /// A built-in strategy id, see [`builtin_strategy`].
    Lhv(String),
}

impl Source {
    pub fn label(&self) -> String {
        match self {
            Source::Singlet => "singlet".into(),
            Source::Lhv(id) => format!("lhv:{id}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub settings: ChshSettings,
    pub n_pairs: u64,
    /// Scalar attenuation of the quantum correlation; singlet source only.
    pub visibility: f64,
    pub seed: u64,
    pub source: Source,
    pub workers: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            settings: ChshSettings::optimal_singlet(),
            n_pairs: 1_000_000,
            visibility: 1.0,
            seed: 0,
            source: Source::Singlet,
            workers: 1,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.visibility) {
            return Err(Error::Domain(format!("visibility {} outside [0, 1]", self.visibility)));
        }
        if self.n_pairs < MIN_PAIRS {
            return Err(Error::Domain(format!(
                "n_pairs must be >= {MIN_PAIRS}, got {}",
                self.n_pairs
            )));
        }
        if self.workers == 0 {
            return Err(Error::Domain("workers must be >= 1".into()));
        }
        Ok(())
    }
}

/// Outcome tallies in the order `(+,+), (+,-), (-,+), (-,-)`.
pub type Counts = [u64; 4];

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatorEstimate {
    pub a: SpinSetting,
    pub b: SpinSetting,
    pub counts: Counts,
    pub n: u64,
    /// Sample mean of `xy`.
    pub estimate: f64,
    pub stderr: f64,
    /// Infinite-sample value, when the source has one in closed form.
    pub expected: Option<f64>,
}

impl CorrelatorEstimate {
    fn from_counts(a: SpinSetting, b: SpinSetting, counts: Counts, expected: Option<f64>) -> Self {
        let n = counts.iter().sum::<u64>();
        let same = counts[0] + counts[3];
        let nf = n as f64;
        let estimate = (same as f64 - (n - same) as f64) / nf;
        // xy ∈ {±1}: sample variance is (1 - m²)·n/(n-1)
        let var = ((1.0 - estimate * estimate) * nf / (nf - 1.0)).max(0.0);
        Self {
            a,
            b,
            counts,
            n,
            estimate,
            stderr: (var / nf).sqrt(),
            expected,
        }
    }

    /// Mean outcome on side 1 and side 2.
    pub fn marginals(&self) -> (f64, f64) {
        let [pp, pm, mp, mm] = self.counts.map(|c| c as f64);
        let n = self.n as f64;
        ((pp + pm - mp - mm) / n, (pp + mp - pm - mm) / n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub source: Source,
    pub settings: ChshSettings,
    pub correlators: [CorrelatorEstimate; 4],
    pub s: f64,
    /// `sqrt(Σ stderr_k²)`, first-order propagation through `S`.
    pub s_err: f64,
    pub expected_s: Option<f64>,
    pub n_pairs: u64,
    pub seed: u64,
    pub workers: usize,
    pub visibility: f64,
    pub checks: Vec<Check>,
}

impl SimReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn assemble(config: &ExperimentConfig, counts: [Counts; 4], expected: [Option<f64>; 4], lhv: bool) -> Self {
        let pairs = config.settings.pairs();
        let correlators: [CorrelatorEstimate; 4] =
            std::array::from_fn(|k| CorrelatorEstimate::from_counts(pairs[k].0, pairs[k].1, counts[k], expected[k]));
        let s = chsh_combination(correlators.each_ref().map(|c| c.estimate));
        let s_err = correlators.iter().map(|c| c.stderr * c.stderr).sum::<f64>().sqrt();
        let expected_s = expected
            .iter()
            .copied()
            .collect::<Option<Vec<f64>>>()
            .map(|e| chsh_combination([e[0], e[1], e[2], e[3]]));

        let k = tol::MC_SIGMAS;
        let mut checks = Vec::new();
        for (i, c) in correlators.iter().enumerate() {
            if let Some(e) = c.expected {
                checks.push(Check::le(
                    format!("correlator_{i}_deviation"),
                    (c.estimate - e).abs(),
                    k * c.stderr,
                ));
            }
        }
        if let Some(e) = expected_s {
            checks.push(Check::le("s_deviation", (s - e).abs(), k * s_err));
        }
        if lhv {
            checks.push(Check::le("s_minus_lhv_bound", s - 2.0, k * s_err));
        } else if expected_s.is_some_and(|e| e > 2.0) {
            checks.push(Check::gt("s_minus_lhv_bound", s - 2.0, k * s_err));
        }
        Self {
            source: config.source.clone(),
            settings: config.settings,
            correlators,
            s,
            s_err,
            expected_s,
            n_pairs: config.n_pairs,
            seed: config.seed,
            workers: config.workers,
            visibility: config.visibility,
            checks,
        }
    }
}

fn outcome_index(x: i32, y: i32) -> usize {
    usize::from(x < 0) * 2 + usize::from(y < 0)
}

fn run_shards<F>(config: &ExperimentConfig, shard: F) -> Result<[Counts; 4]>
where
    F: Fn(&mut SplitMix64, std::ops::Range<u64>) -> Result<[Counts; 4]> + Sync,
{
    let ranges = shard_ranges(config.n_pairs, config.workers);
    let partials: Vec<Result<[Counts; 4]>> = if ranges.len() == 1 {
        vec![shard(&mut stream(config.seed, 0), ranges[0].clone())]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = ranges
                .iter()
                .enumerate()
                .map(|(k, r)| {
                    let (shard, r) = (&shard, r.clone());
                    scope.spawn(move || shard(&mut stream(config.seed, k as u64), r))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        })
    };
    let mut total = [[0u64; 4]; 4];
    for p in partials {
        let p = p?;
        for (t, c) in total.iter_mut().zip(p) {
            for (x, y) in t.iter_mut().zip(c) {
                *x += y;
            }
        }
    }
    Ok(total)
}

/// Runs `config`; an LHV source is resolved with [`builtin_strategy`].
pub fn simulate_chsh(config: &ExperimentConfig) -> Result<SimReport> {
    config.validate()?;
    match &config.source {
        Source::Singlet => simulate_singlet(config),
        Source::Lhv(id) => {
            let strategy = builtin_strategy(id)?;
            run_lhv(strategy.as_ref(), config)
        }
    }
}

fn simulate_singlet(config: &ExperimentConfig) -> Result<SimReport> {
    let expected = config.settings.pairs().map(|(a, b)| config.visibility * -a.dot(&b));
    // cumulative thresholds for (+,+), (+,-), (-,+); the rest is (-,-)
    let cdf = expected.map(|e| {
        let (same, diff) = ((1.0 + e) / 4.0, (1.0 - e) / 4.0);
        [same, same + diff, same + 2.0 * diff]
    });
    let counts = run_shards(config, |rng, range| {
        let mut c = [[0u64; 4]; 4];
        for i in range {
            let k = (i % 4) as usize;
            let u = unit_f64(rng);
            let t = &cdf[k];
            let o = if u < t[0] {
                0
            } else if u < t[1] {
                1
            } else if u < t[2] {
                2
            } else {
                3
            };
            c[k][o] += 1;
        }
        Ok(c)
    })?;
    Ok(SimReport::assemble(config, counts, expected.map(Some), false))
}

/// Runs a local strategy over `settings`; any outcome outside `{±1}` aborts
/// with [`Error::BadOutcome`].
pub fn simulate_lhv(
    strategy: &dyn LhvStrategy,
    settings: ChshSettings,
    n_pairs: u64,
    seed: u64,
    workers: usize,
) -> Result<SimReport> {
    let config = ExperimentConfig {
        settings,
        n_pairs,
        visibility: 1.0,
        seed,
        source: Source::Lhv(strategy.id().to_string()),
        workers,
    };
    config.validate()?;
    run_lhv(strategy, &config)
}

fn run_lhv(strategy: &dyn LhvStrategy, config: &ExperimentConfig) -> Result<SimReport> {
    let pairs = config.settings.pairs();
    let counts = run_shards(config, |rng, range| {
        let mut c = [[0u64; 4]; 4];
        for i in range {
            let k = (i % 4) as usize;
            let lambda = strategy.sample_lambda(rng);
            let x = strategy.alice(&pairs[k].0, &lambda);
            let y = strategy.bob(&pairs[k].1, &lambda);
            for v in [x, y] {
                if v != 1 && v != -1 {
                    return Err(Error::BadOutcome(v));
                }
            }
            c[k][outcome_index(x, y)] += 1;
        }
        Ok(c)
    })?;
    let expected = pairs.map(|(a, b)| strategy.exact_correlator(&a, &b));
    Ok(SimReport::assemble(config, counts, expected, true))
}
