//! Command-line front end: problem ingestion, rendering, verification
//! reports, and the consolidated hypothesis check.
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration error,
//! 3 numeric abort (vanishing sector constant).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use newton_measure_core::asym::{
    all_sector_constants, decay_scan, sector_constant, FormulaId, RaySpec,
};
use newton_measure_core::dynamics::{
    calibrate_pullback_nu, iterate_orbit, pullback_derivative_fd, pullback_orbit, OrbitParams,
    Verdict,
};
use newton_measure_core::measure::{
    density, julia_area_study, postsingular_check, thin_at_infinity_scan, uniform_thinness_check,
    DensityReport, Shape,
};
use newton_measure_core::render::{render_basins, render_wplane, ImageBuffer};
use newton_measure_core::roots::{basin_disk_radius, register_zero, zero_anchor, RootRegistry};
use newton_measure_core::sampler::{LowDiscrepancy2, SplitMix64};
use newton_measure_core::sectors::{choose_r, curve_point, curve_x, inverse_branch, RegionSpec};
use newton_measure_core::Error as CoreError;
use newton_measure_core::{problem_from_json, Problem};

#[derive(Parser)]
#[command(
    name = "newton-measure",
    about = "Newton-map dynamics engine: basins, zero localization, density studies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Problem description JSON: {"p": [[re,im],...], "q": [...], "c": [re,im]}
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Complex window x0,y0,x1,y1
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,
    /// Grid resolution (pixels per side)
    #[arg(long, global = true)]
    res: Option<usize>,
    /// Orbit iteration budget
    #[arg(long, global = true)]
    budget: Option<u32>,
    /// Sampler seed
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output path
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normalized problem and its derived constants.
    Info(CommonOpts),
    /// Render z-plane basins to PPM (and PNG alongside).
    Render(CommonOpts),
    /// Render the w-plane pushforward picture for one sector.
    RenderW {
        #[command(flatten)]
        common: CommonOpts,
        /// Sector index (1-based)
        #[arg(long, default_value_t = 1)]
        sector: usize,
    },
    /// Localize zeros from the anchor lattice and emit a CSV.
    Zeros {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, default_value_t = 5)]
        kmin: i64,
        #[arg(long, default_value_t = 40)]
        kmax: i64,
    },
    /// Emit the boundary curve (y, x_y) as CSV.
    Curve {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, allow_hyphen_values = true)]
        mu: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1e6)]
        ymax: f64,
    },
    /// Verification suites with pass/fail lines.
    Verify {
        #[command(flatten)]
        common: CommonOpts,
        /// One of: asymptotics, gamma, basins, preimages
        target: String,
    },
    /// Fatou-density estimate in a disk.
    Density {
        #[command(flatten)]
        common: CommonOpts,
        /// Disk center re,im
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        center: String,
        #[arg(long, default_value_t = 4.0)]
        radius: f64,
        #[arg(long, default_value_t = 10000)]
        n: u64,
    },
    /// Unresolved-fraction matrix over resolution and budget grids.
    AreaStudy {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, default_value = "256,512,1024")]
        resolutions: String,
        #[arg(long, default_value = "50,100,200")]
        budgets: String,
    },
    /// Consolidated hypothesis + thinness conditions, PASS/FAIL.
    Check(CommonOpts),
}

enum CliError {
    Config(String),
    Verification(String),
    Numeric(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::CjNearZero { .. } | CoreError::NonConvergence { .. } => {
                CliError::Numeric(e.to_string())
            }
            other => CliError::Verification(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn load_problem(opts: &CommonOpts) -> CliResult<Problem> {
    let path = opts
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config("--config PATH is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let (prob, _) =
        problem_from_json(&text).map_err(|e| CliError::Config(format!("bad problem: {e}")))?;
    Ok(prob)
}

fn parse_window(opts: &CommonOpts) -> CliResult<(f64, f64, f64, f64)> {
    let text = opts.window.as_deref().unwrap_or("-4,-4,4,4");
    let parts: Vec<f64> = text
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Config(format!("bad --window: {e}")))?;
    if parts.len() != 4 || parts[2] <= parts[0] || parts[3] <= parts[1] {
        return Err(CliError::Config(
            "--window needs x0,y0,x1,y1 with x1>x0, y1>y0".into(),
        ));
    }
    Ok((parts[0], parts[1], parts[2], parts[3]))
}

fn parse_complex(text: &str) -> CliResult<Complex64> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Config(format!("bad complex pair: {e}")))?;
    if parts.len() != 2 {
        return Err(CliError::Config("complex values are re,im".into()));
    }
    Ok(Complex64::new(parts[0], parts[1]))
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> CliResult<Vec<T>> {
    text.split(',')
        .map(|t| t.trim().parse::<T>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Config(format!("bad {what} list: {text}")))
}

fn write_or_print(out: &Option<PathBuf>, content: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn write_image(img: &ImageBuffer, out: &Option<PathBuf>) -> CliResult<()> {
    let path = out.clone().unwrap_or_else(|| PathBuf::from("basins.ppm"));
    let ppm_path = path.with_extension("ppm");
    std::fs::write(&ppm_path, img.to_ppm())
        .map_err(|e| CliError::Config(format!("cannot write {}: {e}", ppm_path.display())))?;
    println!("wrote {}", ppm_path.display());
    let png_path = path.with_extension("png");
    let rgb = img.to_rgb();
    if let Some(buf) = image::RgbImage::from_raw(img.width as u32, img.height as u32, rgb) {
        if buf.save(&png_path).is_ok() {
            println!("wrote {}", png_path.display());
        }
    }
    Ok(())
}

fn cmd_info(opts: &CommonOpts) -> CliResult<()> {
    let prob = load_problem(opts)?;
    println!("p(t) = {}", prob.p);
    println!("q(t) = {}", prob.q);
    println!("c    = {:.12}{:+.12}i", prob.c.re, prob.c.im);
    let (num, den) = prob.lambda_fraction();
    println!(
        "d = {}, m = {}, lambda = {num}/{den} = {}",
        prob.d,
        prob.m,
        prob.lambda()
    );
    println!("sector cutoff R = {}", choose_r(&prob));
    let cs = all_sector_constants(&prob).map_err(CliError::from)?;
    for (j, c) in cs.iter().enumerate() {
        println!(
            "c_{} = {:.12}{:+.12}i  (|c| = {:.6})",
            j + 1,
            c.re,
            c.im,
            c.norm()
        );
    }
    Ok(())
}

fn cmd_render(opts: &CommonOpts) -> CliResult<()> {
    let prob = load_problem(opts)?;
    all_sector_constants(&prob).map_err(CliError::from)?;
    let window = parse_window(opts)?;
    let res = opts.res.unwrap_or(512);
    let budget = opts.budget.unwrap_or(200);
    let params = OrbitParams::defaults_for(&prob);
    let mut registry = RootRegistry::new();
    let img = render_basins(&prob, &mut registry, window, res, budget, &params)
        .map_err(CliError::from)?;
    println!(
        "{} roots, unresolved fraction {:.4}",
        registry.len(),
        img.unresolved_fraction()
    );
    write_image(&img, &opts.out)
}

fn cmd_render_w(common: &CommonOpts, sector: usize) -> CliResult<()> {
    let prob = load_problem(common)?;
    all_sector_constants(&prob).map_err(CliError::from)?;
    let window = match &common.window {
        Some(_) => parse_window(common)?,
        None => (-6.0, 24.0, 10.0, 40.0),
    };
    let res = common.res.unwrap_or(512);
    let budget = common.budget.unwrap_or(200);
    let params = OrbitParams::defaults_for(&prob);
    let mut registry = RootRegistry::new();
    let img = render_wplane(&prob, &mut registry, sector, window, res, budget, &params)
        .map_err(CliError::from)?;
    write_image(&img, &common.out)
}

fn cmd_zeros(common: &CommonOpts, kmin: i64, kmax: i64) -> CliResult<()> {
    let prob = load_problem(common)?;
    all_sector_constants(&prob).map_err(CliError::from)?;
    let mut registry = RootRegistry::new();
    let mut csv =
        String::from("j,k,v_re,v_im,seed_re,seed_im,root_re,root_im,anchor_gap,residual\n");
    for j in 1..=prob.d {
        for k in (kmin..=kmax).chain(-kmax..=-kmin) {
            let anchor = match zero_anchor(&prob, j, k) {
                Ok(a) => a,
                Err(_) => continue,
            };
            let seed = match inverse_branch(&prob, j, anchor.v) {
                Ok(z) => z,
                Err(_) => continue,
            };
            if let Ok((id, root)) = register_zero(&prob, &mut registry, seed, 1e-12) {
                let gap = (prob.q.eval(root) - anchor.v).norm();
                let residual = registry.get(id).unwrap().residual;
                csv.push_str(&format!(
                    "{j},{k},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{gap:.12e},{residual:.12e}\n",
                    anchor.v.re, anchor.v.im, seed.re, seed.im, root.re, root.im
                ));
            }
        }
    }
    write_or_print(&common.out, &csv)
}

fn cmd_curve(common: &CommonOpts, mu: f64, alpha: f64, ymax: f64) -> CliResult<()> {
    if alpha <= 0.0 {
        return Err(CliError::Config("--alpha must be positive".into()));
    }
    let y_lo = (2.0 * mu.abs()).max(1e-6);
    let mut csv = String::from("y,gamma\n");
    for sign in [1.0f64, -1.0] {
        let n = 200;
        for i in 0..n {
            let y = sign * y_lo * (ymax / y_lo).powf(i as f64 / (n - 1) as f64);
            csv.push_str(&format!("{y:.12e},{:.12e}\n", curve_x(mu, alpha, y)));
        }
    }
    write_or_print(&common.out, &csv)
}

fn cmd_density(common: &CommonOpts, center: &str, radius: f64, n: u64) -> CliResult<()> {
    let prob = load_problem(common)?;
    let params = OrbitParams::defaults_for(&prob);
    let budget = common.budget.unwrap_or(200);
    let seed = common.seed.unwrap_or(0);
    let shape = Shape::Disk {
        center: parse_complex(center)?,
        radius,
    };
    let rep = density(&prob, shape, n.max(100), budget, seed, &params).map_err(CliError::from)?;
    let mut csv = String::from(DensityReport::csv_header());
    csv.push('\n');
    csv.push_str(&rep.csv_row());
    csv.push('\n');
    write_or_print(&common.out, &csv)
}

fn cmd_area_study(common: &CommonOpts, resolutions: &str, budgets: &str) -> CliResult<()> {
    let prob = load_problem(common)?;
    let params = OrbitParams::defaults_for(&prob);
    let window = parse_window(common)?;
    let res: Vec<usize> = parse_list(resolutions, "resolution")?;
    let bud: Vec<u32> = parse_list(budgets, "budget")?;
    if res.is_empty() || bud.is_empty() {
        return Err(CliError::Config(
            "need at least one resolution and budget".into(),
        ));
    }
    let study = julia_area_study(&prob, window, &res, &bud, &params).map_err(CliError::from)?;
    write_or_print(&common.out, &study.to_csv())
}

fn verify_asymptotics(prob: &Problem) -> CliResult<bool> {
    let params = OrbitParams::defaults_for(prob);
    let mut all_ok = true;
    let d = prob.d as f64;
    for j in 1..=prob.d.min(2) {
        let updown = if j == 1 { 1.0 } else { -1.0 };
        let ray = RaySpec {
            j,
            base: Complex64::new(0.0, 0.0),
            dir: Complex64::new(0.0, updown),
            t_min: 50.0,
            t_max: 5000.0,
        };
        let rep =
            decay_scan(prob, FormulaId::NewtonMapAsym, &ray, 24, &params.zone).map_err(CliError::from)?;
        let ok = rep.fitted_exponent >= 1.0 / d - 0.2 && rep.decreasing_fraction >= 0.8;
        all_ok &= ok;
        println!(
            "newton-map-asym sector {j}: exponent {:.3} (need >= {:.3}), decreasing {:.2}: {}",
            rep.fitted_exponent,
            1.0 / d - 0.2,
            rep.decreasing_fraction,
            if ok { "PASS" } else { "FAIL" }
        );
        let ray = RaySpec {
            j,
            base: Complex64::new(0.0, updown * 30.0),
            dir: Complex64::new(1.0, 0.0),
            t_min: 40.0,
            t_max: 4999.0,
        };
        let rep = decay_scan(prob, FormulaId::PushforwardRight, &ray, 24, &params.zone)
            .map_err(CliError::from)?;
        let ok = rep.fitted_exponent >= 1.0 + 1.0 / d - 0.2 && rep.decreasing_fraction >= 0.8;
        all_ok &= ok;
        println!(
            "pushforward-right sector {j}: exponent {:.3} (need >= {:.3}), decreasing {:.2}: {}",
            rep.fitted_exponent,
            1.0 + 1.0 / d - 0.2,
            rep.decreasing_fraction,
            if ok { "PASS" } else { "FAIL" }
        );
    }
    Ok(all_ok)
}

fn verify_gamma(seed: u64) -> bool {
    let mut rng = SplitMix64::new(seed);
    let mut ok = true;
    for _ in 0..20 {
        let mu = rng.range(-3.0, 3.0);
        let alpha = rng.range((0.1f64).ln(), (10.0f64).ln()).exp();
        let y_lo = 2.0 * mu.abs() + 1.0;
        for i in 0..20 {
            let y = y_lo * (1e6 / y_lo).powf(i as f64 / 19.0);
            let x = curve_x(mu, alpha, y);
            let resid = (x - mu * (x * x + y * y).sqrt().ln() + alpha.ln()).abs();
            ok &= resid <= 1e-12;
            let h = 1e-4 * y;
            let slope = (curve_x(mu, alpha, y + h) - curve_x(mu, alpha, y - h)) / (2.0 * h);
            ok &= slope.abs() <= 2.0 * mu.abs() / (y - h) + 1e-6;
        }
    }
    println!(
        "gamma-curve residuals and slope bounds: {}",
        if ok { "PASS" } else { "FAIL" }
    );
    ok
}

fn verify_basins(prob: &Problem) -> CliResult<bool> {
    all_sector_constants(prob).map_err(CliError::from)?;
    let params = OrbitParams::defaults_for(prob);
    let mut registry = RootRegistry::new();
    for j in 1..=prob.d {
        for k in (5..=40).chain(-40..=-5) {
            if let Ok(anchor) = zero_anchor(prob, j, k) {
                if let Ok(seed) = inverse_branch(prob, j, anchor.v) {
                    let _ = register_zero(prob, &mut registry, seed, 1e-12);
                }
            }
        }
    }
    let mut roots: Vec<Complex64> = registry.entries().iter().map(|e| e.location).collect();
    roots.sort_by(|a, b| b.norm().partial_cmp(&a.norm()).unwrap());
    roots.truncate(10);
    let mut ok = true;
    for (ri, &z0) in roots.iter().enumerate() {
        let radius = basin_disk_radius(prob, z0, 5.0).map_err(CliError::from)?;
        let seq = LowDiscrepancy2::new(0xBA51 + ri as u64);
        let mut fails = 0;
        for i in 0..100 {
            let z = seq.point_in_disk(i, z0, radius);
            let res = iterate_orbit(prob, &mut registry, z, &params);
            let conv = matches!(res.verdict, Verdict::ConvergedToRoot(_))
                && (res.final_point - z0).norm() <= RootRegistry::matching_radius(z0);
            if !conv {
                fails += 1;
            }
        }
        if fails > 0 {
            ok = false;
        }
        println!(
            "basin disk at {:.4}{:+.4}i (radius {:.5}): {}",
            z0.re,
            z0.im,
            radius,
            if fails == 0 { "PASS" } else { "FAIL" }
        );
    }
    Ok(ok)
}

fn verify_preimages(prob: &Problem) -> CliResult<bool> {
    all_sector_constants(prob).map_err(CliError::from)?;
    let (alpha, eps) = (0.8, 0.1);
    let nu = calibrate_pullback_nu(prob, 1, alpha, eps).map_err(CliError::from)?;
    let cj = sector_constant(prob, 1).map_err(CliError::from)?;
    let spec = RegionSpec::new(prob.lambda(), alpha / cj.norm(), nu);
    let mut ok = true;
    let mut imag_bound = 0.0f64;
    let mut deriv_floor = f64::INFINITY;
    for i in 0..20 {
        let height = nu + 4.0 + 9.0 * i as f64;
        let w = curve_point(&spec, height) + Complex64::new(0.8, 0.0);
        match pullback_orbit(prob, 1, w, 60, alpha, eps, nu) {
            Ok(trace) => {
                ok &= trace.drift_margin >= 0.0;
                imag_bound = imag_bound.max(trace.imag_drift_max);
                if let Ok(ds) = pullback_derivative_fd(prob, 1, w, 60, alpha, eps, nu) {
                    for d in ds {
                        deriv_floor = deriv_floor.min(d);
                    }
                } else {
                    ok = false;
                }
            }
            Err(_) => ok = false,
        }
    }
    ok &= deriv_floor > 0.0;
    println!(
        "pullback containment/drift (nu = {nu}): {} — imag bound {:.3}, derivative floor {:.3e}",
        if ok { "PASS" } else { "FAIL" },
        imag_bound,
        deriv_floor
    );
    // Disks just right of the anchors pull back inside the basins.
    let params = OrbitParams::defaults_for(prob);
    let mut registry = RootRegistry::new();
    let mut disk_ok = true;
    for k in [8i64, 12, 16] {
        if let Ok(anchor) = zero_anchor(prob, 1, k) {
            let center = anchor.v + Complex64::new(1.0 / 26.0, 0.0);
            let seq = LowDiscrepancy2::new(0xD15C + k as u64);
            for i in 0..40 {
                let w = seq.point_in_disk(i, center, 1.0 / 27.0);
                match inverse_branch(prob, 1, w) {
                    Ok(z) => {
                        let res = iterate_orbit(prob, &mut registry, z, &params);
                        if !matches!(res.verdict, Verdict::ConvergedToRoot(_)) {
                            disk_ok = false;
                        }
                    }
                    Err(_) => disk_ok = false,
                }
            }
        }
    }
    println!(
        "anchor-offset disks land in basins: {}",
        if disk_ok { "PASS" } else { "FAIL" }
    );
    Ok(ok && disk_ok)
}

fn cmd_verify(common: &CommonOpts, target: &str) -> CliResult<()> {
    let ok = match target {
        "gamma" => verify_gamma(common.seed.unwrap_or(0xC1)),
        "asymptotics" => {
            let prob = load_problem(common)?;
            verify_asymptotics(&prob)?
        }
        "basins" => {
            let prob = load_problem(common)?;
            verify_basins(&prob)?
        }
        "preimages" => {
            let prob = load_problem(common)?;
            verify_preimages(&prob)?
        }
        other => {
            return Err(CliError::Config(format!(
                "unknown verify target {other:?}; use asymptotics|gamma|basins|preimages"
            )))
        }
    };
    if ok {
        Ok(())
    } else {
        Err(CliError::Verification(format!("verify {target} failed")))
    }
}

fn cmd_check(common: &CommonOpts) -> CliResult<()> {
    let prob = load_problem(common)?;
    all_sector_constants(&prob).map_err(CliError::from)?;
    let params = OrbitParams::defaults_for(&prob);
    let budget = common.budget.unwrap_or(200);
    let mut all_ok = true;

    let post = postsingular_check(&prob, budget, &params).map_err(CliError::from)?;
    println!(
        "singular orbits converge ({} tracked): {}",
        post.orbits.len(),
        if post.pass { "PASS" } else { "FAIL" }
    );
    all_ok &= post.pass;

    let study = julia_area_study(
        &prob,
        (-4.0, -4.0, 4.0, 4.0),
        &[128, 256],
        &[budget / 2, budget],
        &params,
    )
    .map_err(CliError::from)?;
    let diag = study.diagonal();
    let decreasing = diag.windows(2).all(|p| p[1] < p[0]);
    println!(
        "unresolved fraction shrinks with budget {:?}: {}",
        diag,
        if decreasing { "PASS" } else { "FAIL" }
    );
    all_ok &= decreasing;

    let thin = thin_at_infinity_scan(
        &prob,
        3.0,
        (-20.0, -20.0, 20.0, 20.0),
        7,
        150,
        budget,
        common.seed.unwrap_or(0),
        &params,
    )
    .map_err(CliError::from)?;
    println!(
        "far-field Fatou density min {:.4} > 0: {}",
        thin.min_density,
        if thin.min_density > 0.0 { "PASS" } else { "FAIL" }
    );
    all_ok &= thin.min_density > 0.0;

    let mut registry = RootRegistry::new();
    for j in 1..=prob.d {
        for k in (3..=20).chain(-20..=-3) {
            if let Ok(anchor) = zero_anchor(&prob, j, k) {
                if let Ok(seed) = inverse_branch(&prob, j, anchor.v) {
                    let _ = register_zero(&prob, &mut registry, seed, 1e-12);
                }
            }
        }
    }
    let uniform = uniform_thinness_check(
        &prob,
        &registry,
        5.0,
        &[0.05, 0.2, 0.8],
        8,
        150,
        6,
        budget,
        common.seed.unwrap_or(0),
        &params,
    )
    .map_err(CliError::from)?;
    println!(
        "near-root Fatou density min {:.4} > 0: {}",
        uniform.min_density,
        if uniform.min_density > 0.0 { "PASS" } else { "FAIL" }
    );
    all_ok &= uniform.min_density > 0.0;

    if all_ok {
        println!("check: PASS");
        Ok(())
    } else {
        println!("check: FAIL");
        Err(CliError::Verification("check failed".into()))
    }
}

fn dispatch(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Info(opts) => cmd_info(opts),
        Command::Render(opts) => cmd_render(opts),
        Command::RenderW { common, sector } => cmd_render_w(common, *sector),
        Command::Zeros { common, kmin, kmax } => cmd_zeros(common, *kmin, *kmax),
        Command::Curve {
            common,
            mu,
            alpha,
            ymax,
        } => cmd_curve(common, *mu, *alpha, *ymax),
        Command::Verify { common, target } => cmd_verify(common, target),
        Command::Density {
            common,
            center,
            radius,
            n,
        } => cmd_density(common, center, *radius, *n),
        Command::AreaStudy {
            common,
            resolutions,
            budgets,
        } => cmd_area_study(common, resolutions, budgets),
        Command::Check(opts) => cmd_check(opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failure: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Config(msg)) => {
            eprintln!("configuration error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("numeric abort: {msg}");
            ExitCode::from(3)
        }
    }
}
