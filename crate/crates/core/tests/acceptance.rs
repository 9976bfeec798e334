//! The fourteen acceptance criteria, each at its stated tolerance and time
//! budget. Prints one PASS/FAIL line per criterion and exits non-zero if any
//! criterion fails.

use std::f64::consts::SQRT_2;
use std::time::{Duration, Instant};

use hvcheck::contextuality::{
    ks_color, mermin_assignment_search, mermin_square, mermin_verify, orthogonality_structure, peres_rays,
};
use hvcheck::hvmodels::{bell_hv_average_exact, bell_hv_average_mc, chsh_from_wigner, tuple_of, WignerWeights};
use hvcheck::nonlocality::{
    bell_original_lhs, chsh_optimize, chsh_value, ghz_assignment_search, ghz_identity_deviations, ghz_state,
    hardy_build, hardy_optimize, hardy_probability, no_signalling_check, qm_correlator, singlet_state, trine_settings,
    ChshSettings, HardyParams, SpinSetting, GOLDEN_RATIO,
};
use hvcheck::qmath::random::{random_density, random_direction, random_state};
use hvcheck::qmath::{eig_herm2, expectation_pure, sigma_x, sigma_y, spin_along, spin_projector};
use hvcheck::rng::{stream, unit_f64, SplitMix64};
use hvcheck::simlab::{simulate_chsh, ExperimentConfig};
use hvcheck::vn_ensemble::{dispersion_free_witness, jauch_piron_contradiction, reconstruct_density, QuantumOracle};
use hvcheck::{tol, Observable};
use rand::seq::SliceRandom;
use rand::Rng;

const TSIRELSON: f64 = 2.0 * SQRT_2;

/// Outcome of one criterion: pass flag plus the numbers behind it.
struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn setting(rng: &mut SplitMix64) -> SpinSetting {
    SpinSetting::new(random_direction(rng)).unwrap()
}

fn random_settings(rng: &mut SplitMix64) -> ChshSettings {
    ChshSettings {
        a: setting(rng),
        a2: setting(rng),
        b: setting(rng),
        b2: setting(rng),
    }
}

fn bell_hv_fidelity() -> Verdict {
    let mut rng = stream(1, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let alpha = rng.random_range(-2.0..2.0);
        let beta: [f64; 3] = std::array::from_fn(|_| rng.random_range(-2.0..2.0));
        let psi = random_state(&mut rng, 2);
        let quantum = alpha + expectation_pure(&psi, &hvcheck::qmath::pauli_obs(0.0, beta)).unwrap();
        worst = worst.max((bell_hv_average_exact(alpha, beta, &psi) - quantum).abs());
    }
    let mut max_z: f64 = 0.0;
    for k in 0..5 {
        let alpha = rng.random_range(-2.0..2.0);
        let beta: [f64; 3] = std::array::from_fn(|_| rng.random_range(-2.0..2.0));
        let psi = random_state(&mut rng, 2);
        let mc = bell_hv_average_mc(alpha, beta, &psi, 1_000_000, 100 + k, 1).unwrap();
        max_z = max_z.max((mc.estimate - mc.exact).abs() / mc.stderr);
    }
    verdict(
        worst <= 1e-10 && max_z <= tol::MC_SIGMAS,
        format!("max |exact - QM| = {worst:.1e}, max MC z = {max_z:.2}"),
    )
}

fn eigenvalue_nonadditivity() -> Verdict {
    let sum = sigma_x().matrix() + sigma_y().matrix();
    let (hi, lo) = eig_herm2(&sum).unwrap();
    let dev = (hi - SQRT_2).abs().max((lo + SQRT_2).abs());
    // eigenvalue sums of σx and σy are {2, 0, -2}, none equal to ±√2
    let disjoint = [2.0f64, 0.0, -2.0]
        .iter()
        .all(|s| (s - hi).abs() > 0.1 && (s - lo).abs() > 0.1);
    verdict(dev <= 1e-12 && disjoint, format!("eigenvalues ({hi:.15}, {lo:.15})"))
}

fn von_neumann_reconstruction() -> Verdict {
    let mut rng = stream(3, 0);
    let (mut worst, mut witnesses, mut min_disp) = (0f64, 0, f64::INFINITY);
    for k in 0..100 {
        let dim = 2 + k % 3;
        let rho = random_density(&mut rng, dim);
        let back = reconstruct_density(&QuantumOracle::new(rho.clone())).unwrap();
        worst = worst.max(back.matrix().max_abs_diff(rho.matrix()));
        if let Ok(w) = dispersion_free_witness(&rho) {
            if w.value > tol::WITNESS_EPS && w.value < 1.0 - tol::WITNESS_EPS {
                witnesses += 1;
                min_disp = min_disp.min(w.dispersion);
            }
        }
    }
    verdict(
        worst <= 1e-10 && witnesses == 100,
        format!("max entry error {worst:.1e}, witnesses {witnesses}/100, min dispersion {min_disp:.3}"),
    )
}

fn jauch_piron() -> Verdict {
    let mut rng = stream(4, 0);
    let (mut pairs, mut max_rank) = (0, 0);
    while pairs < 100 {
        let (a, b) = (random_direction(&mut rng), random_direction(&mut rng));
        let Ok(rep) = jauch_piron_contradiction(a, b) else {
            continue;
        };
        pairs += 1;
        max_rank = max_rank.max(rep.intersections.iter().map(|c| c.rank).max().unwrap());
    }
    verdict(
        max_rank == 0,
        format!("{pairs} direction pairs, max intersection rank {max_rank}"),
    )
}

fn peres_set() -> Verdict {
    let rays = peres_rays();
    let canonical = rays.iter().all(|r| r.is_canonical());
    let base = ks_color(&orthogonality_structure(&rays, tol::ORTH));
    let mut stable = 0;
    for k in 0..20 {
        let mut shuffled = rays.clone();
        shuffled.shuffle(&mut stream(5, k));
        stable += usize::from(!ks_color(&orthogonality_structure(&shuffled, tol::ORTH)).is_sat());
    }
    verdict(
        rays.len() == 33 && canonical && !base.is_sat() && stable == 20,
        format!(
            "{} rays, canonical {canonical}, UNSAT in {} nodes, UNSAT under {stable}/20 permutations",
            rays.len(),
            base.nodes
        ),
    )
}

fn mermin() -> Verdict {
    let rep = mermin_verify(&mermin_square());
    let search = mermin_assignment_search();
    verdict(
        rep.holds(1e-12) && search.checked == 512 && search.satisfying == 0,
        format!(
            "max deviation {:.1e}, {} assignments, {} satisfying",
            rep.max_deviation(),
            search.checked,
            search.satisfying
        ),
    )
}

fn singlet_correlator() -> Verdict {
    let mut rng = stream(7, 0);
    let psi = singlet_state();
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let (a, b) = (setting(&mut rng), setting(&mut rng));
        worst = worst.max((qm_correlator(&psi, &a, &b).unwrap() + a.dot(&b)).abs());
    }
    verdict(worst <= 1e-10, format!("max |P + a.b| = {worst:.1e}"))
}

fn bell_violation() -> Verdict {
    let [a, b, c] = trine_settings();
    let lhs = bell_original_lhs(&singlet_state(), &a, &b, &c, [1, 1, 1]).unwrap();
    verdict(
        (lhs - 1.5).abs() <= 1e-10 && lhs > 1.0,
        format!("LHS {lhs:.12} against bound 1"),
    )
}

fn chsh() -> Verdict {
    let psi = singlet_state();
    let explicit = chsh_value(&psi, &ChshSettings::optimal_singlet()).unwrap();
    let opt = chsh_optimize(&psi, 20, 1e-6, 0).unwrap();
    let mut rng = stream(9, 0);
    let mut max_random = f64::NEG_INFINITY;
    for _ in 0..100_000 {
        max_random = max_random.max(chsh_value(&psi, &random_settings(&mut rng)).unwrap());
    }
    verdict(
        (explicit - TSIRELSON).abs() <= 1e-10
            && (opt.value - TSIRELSON).abs() <= 1e-6
            && max_random <= TSIRELSON + 1e-9,
        format!(
            "explicit {explicit:.12}, optimized {:.10}, max random {max_random:.6}",
            opt.value
        ),
    )
}

fn wigner_bound() -> Verdict {
    let mut rng = stream(10, 0);
    let mut max_s = f64::NEG_INFINITY;
    for _ in 0..100_000 {
        let e: [f64; 16] = std::array::from_fn(|_| -(1.0 - unit_f64(&mut rng)).ln());
        let total: f64 = e.iter().sum();
        max_s = max_s.max(chsh_from_wigner(&WignerWeights::new(e.map(|x| x / total)).unwrap()));
    }
    let vertex_max = (0..16)
        .map(|k| chsh_from_wigner(&WignerWeights::vertex(tuple_of(k))))
        .fold(f64::NEG_INFINITY, f64::max);
    verdict(
        max_s <= 2.0 + 1e-12 && vertex_max <= 2.0 + 1e-12,
        format!("max random S {max_s:.6}, max vertex S {vertex_max}"),
    )
}

fn ghz() -> Verdict {
    let dev = ghz_identity_deviations(&ghz_state()).into_iter().fold(0.0, f64::max);
    let search = ghz_assignment_search();
    verdict(
        dev <= 1e-12 && search.checked == 64 && search.satisfying == 0,
        format!(
            "max identity deviation {dev:.1e}, {} assignments, {} satisfying",
            search.checked, search.satisfying
        ),
    )
}

fn hardy() -> Verdict {
    let mut worst: f64 = 0.0;
    for i in 1..=50 {
        for j in 1..=50 {
            let (p1, p2) = (i as f64 / 51.0, j as f64 / 51.0);
            worst = worst.max((hardy_build(HardyParams::new(p1, p2).unwrap()).p - hardy_probability(p1, p2)).abs());
        }
    }
    let opt = hardy_optimize(100, 1e-8).unwrap();
    let (x, y) = (opt.params.p1(), opt.params.p2());
    let arg_ok = (x - 0.6180340).abs() <= 1e-6 && (y - 0.6180340).abs() <= 1e-6;
    let max_ok = (opt.p - 0.0901699).abs() <= 1e-7;
    verdict(
        worst <= 1e-10 && arg_ok && max_ok,
        format!(
            "grid error {worst:.1e}, argmax ({x:.9}, {y:.9}), max {:.9} (1/tau^5 = {:.9})",
            opt.p,
            GOLDEN_RATIO.powi(-5)
        ),
    )
}

fn no_signalling() -> Verdict {
    let mut rng = stream(13, 0);
    let id = Observable::identity(2);
    let mut worst: f64 = 0.0;
    for _ in 0..1_000 {
        let rho = random_density(&mut rng, 4);
        let a = spin_along(random_direction(&mut rng)).kron(&id);
        let n = random_direction(&mut rng);
        let b = [id.kron(&spin_projector(n, 1.0)), id.kron(&spin_projector(n, -1.0))];
        worst = worst.max(no_signalling_check(&rho, &a, &b).unwrap());
    }
    verdict(worst <= 1e-12, format!("max deviation {worst:.1e}"))
}

fn experiment_simulation() -> Verdict {
    let noisy = simulate_chsh(&ExperimentConfig {
        n_pairs: 10_000_000,
        visibility: 0.9546,
        seed: 14,
        ..Default::default()
    })
    .unwrap();
    let ideal = simulate_chsh(&ExperimentConfig {
        n_pairs: 10_000_000,
        visibility: 1.0,
        seed: 15,
        ..Default::default()
    })
    .unwrap();
    let noisy_ok = (noisy.s - 2.70).abs() <= tol::MC_SIGMAS * noisy.s_err && noisy.s_err < 0.002;
    let ideal_ok = (ideal.s - TSIRELSON).abs() <= tol::MC_SIGMAS * ideal.s_err;
    verdict(
        noisy_ok && ideal_ok,
        format!(
            "V=0.9546: S = {:.5} +- {:.5}; V=1: S = {:.5} +- {:.5}",
            noisy.s, noisy.s_err, ideal.s, ideal.s_err
        ),
    )
}

type Criterion = (&'static str, fn() -> Verdict, Duration);

fn main() {
    let s = Duration::from_secs;
    let criteria: [Criterion; 14] = [
        ("bell-hv model fidelity", bell_hv_fidelity, s(10)),
        ("eigenvalue non-additivity", eigenvalue_nonadditivity, s(1)),
        ("density reconstruction", von_neumann_reconstruction, s(5)),
        ("jauch-piron intersections", jauch_piron, s(5)),
        ("peres 33-ray set", peres_set, s(60)),
        ("mermin square", mermin, s(1)),
        ("singlet correlator", singlet_correlator, s(5)),
        ("bell trine violation", bell_violation, s(1)),
        ("chsh tsirelson bound", chsh, s(60)),
        ("wigner lhv bound", wigner_bound, s(10)),
        ("ghz parity", ghz, s(1)),
        ("hardy golden ratio", hardy, s(30)),
        ("no-signalling", no_signalling, s(10)),
        ("experiment simulation", experiment_simulation, s(60)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < *budget;
        let pass = v.pass && in_time;
        failed += usize::from(!pass);
        let timing = if in_time {
            String::new()
        } else {
            format!(" [over budget {budget:?}]")
        };
        println!(
            "{} {:>2} {:<28} {:>8.3}s  {}{}",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            name,
            elapsed.as_secs_f64(),
            v.detail,
            timing
        );
    }
    println!("acceptance: {}/14 criteria passed", 14 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
