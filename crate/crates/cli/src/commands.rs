use std::f64::consts::SQRT_2;

use hvcheck::contextuality::{
    format_rays, ks_color, mermin_assignment_search, mermin_square, mermin_verify, orthogonality_structure, parse_rays,
    peres_rays, verify_coloring, Color, KsVerdict,
};
use hvcheck::hvmodels::{
    bell_hv_average_exact, bell_hv_average_mc, chsh_from_wigner, tuple_of, wigner_correlators, WignerWeights,
};
use hvcheck::nonlocality::{
    bell_original_lhs, chsh_optimize, chsh_value, ghz_assignment_search, ghz_assignment_search_with,
    ghz_identity_deviations, ghz_state, hardy_build, hardy_optimize, hardy_probability, no_signalling_check,
    product_state_00, qm_correlator, singlet_state, trine_settings, ChshSettings, HardyParams, SpinSetting,
    GOLDEN_RATIO,
};
use hvcheck::qmath::random::{random_density, random_direction};
use hvcheck::qmath::{eig_herm2, expectation_pure, pauli_obs, sigma_z, spin_along, spin_projector};
use hvcheck::rng::{stream, unit_f64};
use hvcheck::simlab::{format_config, parse_config, simulate_chsh, ExperimentConfig, Source};
use hvcheck::vn_ensemble::{
    dispersion_free_witness, dispersion_scan, homogeneity_check, jauch_piron_contradiction, reconstruct_density,
    QuantumOracle,
};
use hvcheck::{tol, Check, Observable, StateVector, C64};
use serde_json::{json, Value};

use crate::report::Report;
use crate::{ChshArgs, Cli, Command, SimulateArgs, TwoQubitState};

type Outcome = Result<Report, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn complex_list(v: &[C64]) -> Value {
    Value::Array(v.iter().map(|c| json!([c.re, c.im])).collect())
}

fn setting(v: [f64; 3]) -> Result<SpinSetting, String> {
    SpinSetting::normalized(v).map_err(err)
}

fn witness_floor() -> f64 {
    tol::WITNESS_EPS * (1.0 - tol::WITNESS_EPS)
}

pub fn execute(cli: &Cli) -> Outcome {
    if let Some(t) = cli.tol {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(format!("--tol must be a finite non-negative number, got {t}"));
        }
    }
    let seed = cli.seed.unwrap_or(0);
    let mut r = Report::new(cli.command.name());
    match &cli.command {
        Command::VnReconstruct { dim } => vn_reconstruct(&mut r, *dim, cli.samples.unwrap_or(10), cli.tol, seed)?,
        Command::Dispersion { dim, steps } => dispersion(&mut r, *dim, *steps, seed)?,
        Command::JauchPiron { a, b } => jauch_piron(&mut r, *a, *b, cli.tol)?,
        Command::BellHv {
            alpha,
            beta,
            theta,
            phi,
            workers,
        } => bell_hv(
            &mut r,
            *alpha,
            *beta,
            (*theta, *phi),
            *workers,
            cli.samples.unwrap_or(1_000_000),
            cli.tol,
            seed,
        )?,
        Command::KsColor {
            rays,
            peres,
            drop,
            write_rays,
        } => ks(&mut r, rays.as_deref(), *peres, *drop, write_rays.as_deref())?,
        Command::Mermin => mermin(&mut r, cli.tol),
        Command::Bell { a, b, c, eta } => bell(&mut r, [*a, *b, *c], *eta, cli.tol)?,
        Command::Chsh(args) => chsh(&mut r, args, cli.tol, seed)?,
        Command::Wigner { weights } => wigner(&mut r, weights.as_deref(), cli.samples.unwrap_or(100_000), seed)?,
        Command::Ghz => ghz(&mut r, cli.tol),
        Command::Hardy { p1, p2, optimize, grid } => hardy(&mut r, *p1, *p2, *optimize, *grid, cli.tol)?,
        Command::Nosignal => nosignal(&mut r, cli.samples.unwrap_or(1_000), cli.tol, seed)?,
        Command::Simulate(args) => simulate(&mut r, args, cli)?,
    }
    Ok(r)
}

fn check_dim(dim: usize) -> Result<(), String> {
    if (2..=8).contains(&dim) {
        Ok(())
    } else {
        Err(format!("--dim must lie in 2..=8, got {dim}"))
    }
}

fn vn_reconstruct(r: &mut Report, dim: usize, count: u64, tol: Option<f64>, seed: u64) -> Result<(), String> {
    check_dim(dim)?;
    if count == 0 {
        return Err("--samples must be >= 1".into());
    }
    let tol = tol.unwrap_or(tol::EQ);
    r.seed = Some(seed);
    r.input("dim", dim).input("count", count);
    let mut rng = stream(seed, 0);
    let (mut max_err, mut min_disp, mut pure) = (0f64, f64::INFINITY, 0u64);
    for _ in 0..count {
        let rho = random_density(&mut rng, dim);
        let rebuilt = reconstruct_density(&QuantumOracle::new(rho.clone())).map_err(err)?;
        max_err = max_err.max(rebuilt.matrix().max_abs_diff(rho.matrix()));
        min_disp = min_disp.min(dispersion_free_witness(&rho).map_err(err)?.dispersion);
        pure += u64::from(homogeneity_check(&rho).homogeneous);
    }
    r.output("observables_queried", dim * dim)
        .output("max_reconstruction_error", max_err)
        .output("min_witness_dispersion", min_disp)
        .output("homogeneous_count", pure);
    r.tolerance("reconstruction", tol)
        .tolerance("witness_eps", tol::WITNESS_EPS);
    r.check(Check::le("max_reconstruction_error", max_err, tol));
    r.check(Check::gt("min_witness_dispersion", min_disp, witness_floor()));
    Ok(())
}

fn dispersion(r: &mut Report, dim: usize, steps: usize, seed: u64) -> Result<(), String> {
    check_dim(dim)?;
    r.seed = Some(seed);
    r.input("dim", dim).input("steps", steps);
    let rho = random_density(&mut stream(seed, 0), dim);
    let w = dispersion_free_witness(&rho).map_err(err)?;
    let (e0, e1) = (
        StateVector::basis(dim, 0).map_err(err)?,
        StateVector::basis(dim, 1).map_err(err)?,
    );
    let scan = dispersion_scan(&rho, &e0, &e1, steps).map_err(err)?;
    let max_scan_dispersion = scan.iter().map(|&(_, v)| v * (1.0 - v)).fold(0.0, f64::max);
    let h = homogeneity_check(&rho);
    r.output("purity", h.purity)
        .output("rank", h.rank)
        .output("witness_state", complex_list(w.phi.amplitudes()))
        .output("witness_value", w.value)
        .output("witness_dispersion", w.dispersion)
        .output("scan_min_value", scan.iter().map(|p| p.1).fold(f64::INFINITY, f64::min))
        .output(
            "scan_max_value",
            scan.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max),
        )
        .output("scan_max_dispersion", max_scan_dispersion);
    r.tolerance("witness_eps", tol::WITNESS_EPS);
    r.check(Check::gt("witness_dispersion", w.dispersion, witness_floor()));
    Ok(())
}

fn jauch_piron(r: &mut Report, a: [f64; 3], b: [f64; 3], tol: Option<f64>) -> Result<(), String> {
    let tol = tol.unwrap_or(tol::EQ);
    let (a, b) = (setting(a)?.vector(), setting(b)?.vector());
    r.input("a", a.to_vec()).input("b", b.to_vec());
    let rep = jauch_piron_contradiction(a, b).map_err(err)?;
    let max_rank = rep.intersections.iter().map(|c| c.rank).max().unwrap_or(0);
    let max_entry = rep.intersections.iter().map(|c| c.max_entry).fold(0.0, f64::max);
    let cells: Vec<Value> = rep
        .intersections
        .iter()
        .map(|c| json!({"sign_a": c.sign_a, "sign_b": c.sign_b, "rank": c.rank, "max_entry": c.max_entry}))
        .collect();
    r.output("completeness_deviation", rep.completeness_deviation)
        .output("intersections", cells)
        .output("contradiction", rep.contradiction)
        .output("summary", rep.summary.clone());
    r.tolerance("eq", tol);
    r.check(Check::le("completeness_deviation", rep.completeness_deviation, tol));
    r.check(Check::le("max_intersection_rank", max_rank as f64, 0.0));
    r.check(Check::le("max_intersection_entry", max_entry, tol));
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn bell_hv(
    r: &mut Report,
    alpha: f64,
    beta: [f64; 3],
    (theta, phi): (f64, f64),
    workers: usize,
    samples: u64,
    tol: Option<f64>,
    seed: u64,
) -> Result<(), String> {
    let tol = tol.unwrap_or(tol::EQ);
    if workers == 0 {
        return Err("--workers must be >= 1".into());
    }
    r.seed = Some(seed);
    r.input("alpha", alpha)
        .input("beta", beta.to_vec())
        .input("theta", theta)
        .input("phi", phi)
        .input("samples", samples)
        .input("workers", workers);
    let psi = StateVector::bloch(theta, phi);
    let obs = pauli_obs(alpha, beta);
    let quantum = expectation_pure(&psi, &obs).map_err(err)?;
    let exact = bell_hv_average_exact(alpha, beta, &psi);
    let mc = bell_hv_average_mc(alpha, beta, &psi, samples, seed, workers).map_err(err)?;
    let (hi, lo) = eig_herm2(obs.matrix()).map_err(err)?;
    r.output("eigenvalues", vec![hi, lo])
        .output("quantum_expectation", quantum)
        .output("hv_average_exact", exact)
        .output("hv_average_mc", mc.estimate)
        .output("mc_stderr", mc.stderr);
    r.tolerance("eq", tol).tolerance("mc_sigmas", tol::MC_SIGMAS);
    r.check(Check::le("exact_minus_quantum", (exact - quantum).abs(), tol));
    r.check(Check::le(
        "mc_minus_exact",
        (mc.estimate - exact).abs(),
        tol::MC_SIGMAS * mc.stderr,
    ));
    Ok(())
}

fn ks(
    r: &mut Report,
    path: Option<&std::path::Path>,
    peres: bool,
    drop: Option<usize>,
    write: Option<&std::path::Path>,
) -> Result<(), String> {
    let mut rays = if peres {
        r.input("rays", "peres");
        peres_rays()
    } else {
        let path = path.ok_or("one of --rays or --peres is required")?;
        r.input("rays", path.display().to_string());
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        parse_rays(&text).map_err(|e| format!("{}: {e}", path.display()))?
    };
    if let Some(i) = drop {
        if i >= rays.len() {
            return Err(format!("--drop {i} out of range for {} rays", rays.len()));
        }
        rays.remove(i);
        r.input("drop", i);
    }
    if let Some(out) = write {
        let header = format!("{} rays", rays.len());
        std::fs::write(out, format_rays(&rays, &header)).map_err(|e| format!("{}: {e}", out.display()))?;
    }
    let s = orthogonality_structure(&rays, tol::ORTH);
    let outcome = ks_color(&s);
    r.output("ray_count", rays.len())
        .output("orthogonal_pairs", s.pairs.len())
        .output("triads", s.triads.len())
        .output("verdict", if outcome.is_sat() { "SAT" } else { "UNSAT" })
        .output("nodes", outcome.nodes);
    r.tolerance("orthogonality", tol::ORTH);
    if let KsVerdict::Sat(coloring) = &outcome.verdict {
        let text: String = coloring
            .iter()
            .map(|c| if *c == Color::Green { 'G' } else { 'R' })
            .collect();
        r.output("coloring", text);
        r.check(Check::flag("coloring_verified", verify_coloring(&s, coloring).is_ok()));
    }
    if peres {
        r.check(Check::flag("all_rays_canonical", rays.iter().all(|x| x.is_canonical())));
        match drop {
            None => {
                r.check(Check::le("ray_count_minus_33", (rays.len() as f64 - 33.0).abs(), 0.0));
                r.check(Check::flag("uncolorable", !outcome.is_sat()));
            }
            Some(_) => {
                r.check(Check::flag("colorable_after_removal", outcome.is_sat()));
            }
        }
    }
    Ok(())
}

fn mermin(r: &mut Report, tol: Option<f64>) {
    let tol = tol.unwrap_or(1e-12);
    let sq = mermin_square();
    let rep = mermin_verify(&sq);
    let search = mermin_assignment_search();
    let names: Vec<Value> = sq.names.iter().map(|row| json!(row.to_vec())).collect();
    r.output("cells", names)
        .output("row_product_deviation", rep.row_product_dev.to_vec())
        .output("column_product_deviation", rep.col_product_dev.to_vec())
        .output("max_deviation", rep.max_deviation())
        .output("assignments_checked", search.checked)
        .output("assignments_satisfying", search.satisfying)
        .output("row_parity", search.row_parity)
        .output("column_parity", search.column_parity)
        .output("parity_contradiction", search.parity_contradiction);
    r.tolerance("entrywise", tol);
    r.check(Check::le("max_operator_deviation", rep.max_deviation(), tol));
    r.check(Check::ge("assignments_checked", search.checked as f64, 512.0));
    r.check(Check::le("assignments_satisfying", search.satisfying as f64, 0.0));
}

fn bell(r: &mut Report, given: [Option<[f64; 3]>; 3], eta: [i8; 3], tol: Option<f64>) -> Result<(), String> {
    let tol = tol.unwrap_or(tol::EQ);
    let trine = trine_settings();
    let mut s = trine;
    for (slot, v) in s.iter_mut().zip(given) {
        if let Some(v) = v {
            *slot = setting(v)?;
        }
    }
    let [a, b, c] = s;
    r.input("a", a.vector().to_vec())
        .input("b", b.vector().to_vec())
        .input("c", c.vector().to_vec())
        .input("eta", eta.to_vec());
    let psi = singlet_state();
    let lhs = bell_original_lhs(&psi, &a, &b, &c, eta).map_err(err)?;
    let [ea, eb, ec] = eta.map(f64::from);
    let closed = -(ea * eb * a.dot(&b) + ea * ec * a.dot(&c) + eb * ec * b.dot(&c));
    r.output(
        "correlators",
        vec![
            qm_correlator(&psi, &a, &b).map_err(err)?,
            qm_correlator(&psi, &a, &c).map_err(err)?,
            qm_correlator(&psi, &b, &c).map_err(err)?,
        ],
    )
    .output("lhs", lhs)
    .output("lhv_bound", 1.0)
    .output("violates_lhv_bound", lhs > 1.0 + tol);
    r.tolerance("eq", tol);
    r.check(Check::le("lhs_minus_singlet_closed_form", (lhs - closed).abs(), tol));
    Ok(())
}

fn settings_json(s: &ChshSettings) -> Value {
    json!({
        "a": s.a.vector().to_vec(),
        "a2": s.a2.vector().to_vec(),
        "b": s.b.vector().to_vec(),
        "b2": s.b2.vector().to_vec(),
    })
}

fn chsh(r: &mut Report, args: &ChshArgs, tol: Option<f64>, seed: u64) -> Result<(), String> {
    let tsirelson = 2.0 * SQRT_2;
    let (psi, label) = match args.state {
        TwoQubitState::Singlet => (singlet_state(), "singlet"),
        TwoQubitState::Product => (product_state_00(), "product"),
    };
    r.input("state", label).input("optimize", args.optimize);
    r.tolerance("tsirelson_slack", 1e-9);
    if args.optimize {
        let tol = tol.unwrap_or(1e-6);
        if args.restarts == 0 {
            return Err("--restarts must be >= 1".into());
        }
        r.seed = Some(seed);
        r.input("restarts", args.restarts);
        let opt = chsh_optimize(&psi, args.restarts, tol, seed).map_err(err)?;
        let target = match args.state {
            TwoQubitState::Singlet => tsirelson,
            TwoQubitState::Product => 2.0,
        };
        r.output("s_max", opt.value)
            .output("settings", settings_json(&opt.settings))
            .output("best_restart", opt.restart)
            .output("sweeps", opt.sweeps)
            .output("known_maximum", target);
        r.tolerance("optimizer", tol);
        r.check(Check::le("s_max_minus_known_maximum", (opt.value - target).abs(), tol));
        r.check(Check::le("s_max", opt.value, tsirelson + 1e-9));
        return Ok(());
    }
    let tol = tol.unwrap_or(tol::EQ);
    let mut s = ChshSettings::optimal_singlet();
    for (slot, v) in [
        (&mut s.a, args.a),
        (&mut s.a2, args.a2),
        (&mut s.b, args.b),
        (&mut s.b2, args.b2),
    ] {
        if let Some(v) = v {
            *slot = setting(v)?;
        }
    }
    r.input("settings", settings_json(&s));
    let value = chsh_value(&psi, &s).map_err(err)?;
    let correlators: Vec<f64> = s
        .pairs()
        .iter()
        .map(|(a, b)| qm_correlator(&psi, a, b))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    r.output("correlators", correlators)
        .output("s", value)
        .output("lhv_bound", 2.0)
        .output("tsirelson_bound", tsirelson);
    r.tolerance("eq", tol);
    r.check(Check::le("s", value, tsirelson + 1e-9));
    match args.state {
        TwoQubitState::Singlet => {
            let p = s.pairs().map(|(a, b)| -a.dot(&b));
            let closed = (p[0] - p[1]).abs() + (p[2] + p[3]).abs();
            r.check(Check::le("s_minus_singlet_closed_form", (value - closed).abs(), tol));
        }
        TwoQubitState::Product => {
            r.check(Check::le("s_minus_lhv_bound", value - 2.0, tol));
        }
    }
    Ok(())
}

fn wigner(r: &mut Report, weights: Option<&[f64]>, count: u64, seed: u64) -> Result<(), String> {
    let slack = 1e-12;
    r.tolerance("bound_slack", slack);
    if let Some(w) = weights {
        let w = WignerWeights::from_slice(w).map_err(err)?;
        r.input("weights", w.weights().to_vec());
        let s = chsh_from_wigner(&w);
        r.output("correlators", wigner_correlators(&w).to_vec()).output("s", s);
        r.check(Check::le("s", s, 2.0 + slack));
        return Ok(());
    }
    if count == 0 {
        return Err("--samples must be >= 1".into());
    }
    r.seed = Some(seed);
    r.input("random_weights", count);
    let mut rng = stream(seed, 0);
    let mut max_random = f64::NEG_INFINITY;
    for _ in 0..count {
        // normalized exponentials: uniform on the simplex
        let e: [f64; 16] = std::array::from_fn(|_| -(1.0 - unit_f64(&mut rng)).ln());
        let total: f64 = e.iter().sum();
        let w = WignerWeights::new(e.map(|x| x / total)).map_err(err)?;
        max_random = max_random.max(chsh_from_wigner(&w));
    }
    let vertex_s: Vec<f64> = (0..16)
        .map(|k| chsh_from_wigner(&WignerWeights::vertex(tuple_of(k))))
        .collect();
    let max_vertex = vertex_s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    r.output("max_random_s", max_random)
        .output("vertex_s", vertex_s.clone())
        .output("max_vertex_s", max_vertex)
        .output("vertices_at_bound", vertex_s.iter().filter(|&&s| s == 2.0).count());
    r.check(Check::le("max_random_s", max_random, 2.0 + slack));
    r.check(Check::le("max_vertex_s", max_vertex, 2.0 + slack));
    Ok(())
}

fn ghz(r: &mut Report, tol: Option<f64>) {
    let tol = tol.unwrap_or(1e-12);
    let dev = ghz_identity_deviations(&ghz_state());
    let search = ghz_assignment_search();
    let flipped = ghz_assignment_search_with([1, 1, 1, 1]);
    let max_dev = dev.iter().copied().fold(0.0, f64::max);
    r.output("identity_deviations", dev.to_vec())
        .output("assignments_checked", search.checked)
        .output("assignments_satisfying", search.satisfying)
        .output("implied_xxx", search.implied_xxx)
        .output("required_xxx", search.required_xxx)
        .output("satisfying_with_xxx_plus_one", flipped.satisfying);
    r.tolerance("entrywise", tol);
    r.check(Check::le("max_identity_deviation", max_dev, tol));
    r.check(Check::ge("assignments_checked", search.checked as f64, 64.0));
    r.check(Check::le("assignments_satisfying", search.satisfying as f64, 0.0));
}

fn hardy(r: &mut Report, p1: f64, p2: f64, optimize: bool, grid: usize, tol: Option<f64>) -> Result<(), String> {
    let inv = 1.0 / GOLDEN_RATIO;
    if optimize {
        let tol = tol.unwrap_or(1e-8);
        r.input("optimize", true).input("grid", grid);
        let opt = hardy_optimize(grid, tol).map_err(err)?;
        let (x, y) = (opt.params.p1(), opt.params.p2());
        let target = GOLDEN_RATIO.powi(-5);
        r.output("p1", x)
            .output("p2", y)
            .output("p_max", opt.p)
            .output("grid_best", vec![opt.grid_best.0, opt.grid_best.1])
            .output("sweeps", opt.sweeps)
            .output("inverse_golden_ratio", inv)
            .output("inverse_golden_ratio_pow5", target);
        r.tolerance("optimizer", tol)
            .tolerance("argmax", 1e-6)
            .tolerance("max", 1e-7);
        r.check(Check::le("p1_minus_inverse_golden_ratio", (x - inv).abs(), 1e-6));
        r.check(Check::le("p2_minus_inverse_golden_ratio", (y - inv).abs(), 1e-6));
        r.check(Check::le(
            "p_max_minus_inverse_golden_ratio_pow5",
            (opt.p - target).abs(),
            1e-7,
        ));
        return Ok(());
    }
    let tol = tol.unwrap_or(tol::EQ);
    let params = HardyParams::new(p1, p2).map_err(err)?;
    r.input("p1", p1).input("p2", p2);
    let c = hardy_build(params);
    let closed = hardy_probability(p1, p2);
    let basis = |b: &hvcheck::nonlocality::PrimedBasis| json!({"u": complex_list(&b.u), "v": complex_list(&b.v)});
    r.output("psi", complex_list(c.psi.amplitudes()))
        .output("primed_basis_1", basis(&c.primed_1))
        .output("primed_basis_2", basis(&c.primed_2))
        .output("condition_residuals", c.condition_residuals.to_vec())
        .output("p", c.p)
        .output("p_closed_form", closed);
    r.tolerance("eq", tol);
    let max_res = c.condition_residuals.iter().copied().fold(0.0, f64::max);
    r.check(Check::le("max_condition_residual", max_res, tol));
    r.check(Check::le("p_minus_closed_form", (c.p - closed).abs(), tol));
    r.check(Check::gt("p", c.p, 0.0));
    Ok(())
}

fn local_projectors(n: [f64; 3]) -> Vec<Observable> {
    let id = Observable::identity(2);
    vec![id.kron(&spin_projector(n, 1.0)), id.kron(&spin_projector(n, -1.0))]
}

fn nosignal(r: &mut Report, count: u64, tol: Option<f64>, seed: u64) -> Result<(), String> {
    let tol = tol.unwrap_or(1e-12);
    if count == 0 {
        return Err("--samples must be >= 1".into());
    }
    r.seed = Some(seed);
    r.input("triples", count);
    let singlet = singlet_state().density();
    let a_z = sigma_z().kron(&Observable::identity(2));
    let singlet_dev = no_signalling_check(&singlet, &a_z, &local_projectors([0.0, 0.0, 1.0])).map_err(err)?;
    let mut rng = stream(seed, 0);
    let mut max_dev: f64 = 0.0;
    for _ in 0..count {
        let rho = random_density(&mut rng, 4);
        let a = spin_along(random_direction(&mut rng)).kron(&Observable::identity(2));
        let b = local_projectors(random_direction(&mut rng));
        max_dev = max_dev.max(no_signalling_check(&rho, &a, &b).map_err(err)?);
    }
    r.output("singlet_deviation", singlet_dev)
        .output("max_random_deviation", max_dev);
    r.tolerance("deviation", tol);
    r.check(Check::le("singlet_deviation", singlet_dev, tol));
    r.check(Check::le("max_random_deviation", max_dev, tol));
    Ok(())
}

fn simulate(r: &mut Report, args: &SimulateArgs, cli: &Cli) -> Result<(), String> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            parse_config(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => ExperimentConfig::default(),
    };
    if let Some(src) = &args.source {
        cfg.source = match src.as_str() {
            "singlet" => Source::Singlet,
            s => match s.strip_prefix("lhv:") {
                Some(id) if !id.is_empty() => Source::Lhv(id.to_string()),
                _ => return Err(format!("--source must be `singlet` or `lhv:<id>`, got {src:?}")),
            },
        };
    }
    if let Some(v) = args.visibility {
        if cfg.source != Source::Singlet {
            return Err("--visibility applies to the singlet source only".into());
        }
        cfg.visibility = v;
    }
    if let Some(w) = args.workers {
        cfg.workers = w;
    }
    if let Some(n) = cli.samples {
        cfg.n_pairs = n;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    let rep = simulate_chsh(&cfg).map_err(err)?;
    r.seed = Some(cfg.seed);
    r.input("config", format_config(&cfg));
    r.input("source", cfg.source.label())
        .input("n_pairs", cfg.n_pairs)
        .input("workers", cfg.workers)
        .input("settings", settings_json(&cfg.settings));
    if cfg.source == Source::Singlet {
        r.input("visibility", cfg.visibility);
    }
    let correlators: Vec<Value> = rep
        .correlators
        .iter()
        .map(|c| {
            json!({
                "n": c.n,
                "counts": c.counts.to_vec(),
                "estimate": c.estimate,
                "stderr": c.stderr,
                "expected": c.expected,
            })
        })
        .collect();
    r.output("correlators", correlators)
        .output("s", rep.s)
        .output("s_err", rep.s_err)
        .output("expected_s", rep.expected_s)
        .output("lhv_bound", 2.0);
    if cfg.source == Source::Singlet {
        r.output(
            "visibility_model",
            "single scalar V multiplying the quantum correlation; a modelling choice, not a fitted apparatus model",
        );
    }
    r.tolerance("mc_sigmas", tol::MC_SIGMAS);
    for c in rep.checks {
        r.check(c);
    }
    Ok(())
}
