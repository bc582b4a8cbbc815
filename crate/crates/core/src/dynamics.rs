//! Orbit iteration and classification for the Newton map, with evaluation
//! routed by zone: direct scaled quadrature where representable, the
//! closed-form expansion across the right/middle overflow region, and the
//! left-zone log form for the large excursions. Also the right-zone
//! pullback branch and its iterated traces.

use num_complex::Complex64;

use crate::asym::{
    newton_map_asym, pushforward_derivative_asym, pushforward_direct, sector_constant,
};
use crate::error::{Error, Result};
use crate::eval::{is_pole, newton_correction, DEFAULT_TOL};
use crate::problem::Problem;
use crate::quad::{integrate_segment, E_MAX};
use crate::roots::{RootId, RootRegistry};
use crate::sectors::{choose_r, curve_point, in_region, sector_log, RegionSpec, ZoneParams};

pub const CONV_RADIUS_DEFAULT: f64 = 1e-8;
pub const RESID_THRESH_DEFAULT: f64 = 1e-10;
pub const BUDGET_DEFAULT: u32 = 200;
pub const CYCLE_TOL: f64 = 1e-9;
pub const PERIOD_CAP: u32 = 64;
pub const ESCAPE_BOUND_DEFAULT: f64 = 1e12;
pub const ESCAPE_CONFIRM: u32 = 10;

/// Oscillation guard: beyond this |Im q| a from-scratch quadrature along
/// the full segment is refused and the closed forms take over.
const OSC_MAX: f64 = 600.0;

/// Direct-evaluation band: quadrature is used near the belt, where the
/// zeros live and convergence decisions need full precision. Past it the
/// closed forms are both cheap and accurate (their dropped terms decay
/// like |w|^{-1-1/d}).
const RE_DIRECT_MAX: f64 = 64.0;

/// Quadratic-contraction factor required between the final two Newton
/// corrections before a convergence verdict is issued. Keeps slow drift
/// (where successive corrections have ratio ~1) from masquerading as
/// convergence at large |z|.
const CONTRACTION: f64 = 0.25;

/// Knobs of the orbit engine.
#[derive(Debug, Clone)]
pub struct OrbitParams {
    pub budget: u32,
    pub conv_radius: f64,
    pub resid_thresh: f64,
    pub escape_bound: f64,
    pub eval_tol: f64,
    pub zone: ZoneParams,
}

impl OrbitParams {
    pub fn defaults_for(prob: &Problem) -> Self {
        OrbitParams {
            budget: BUDGET_DEFAULT,
            conv_radius: CONV_RADIUS_DEFAULT,
            resid_thresh: RESID_THRESH_DEFAULT,
            escape_bound: ESCAPE_BOUND_DEFAULT,
            eval_tol: DEFAULT_TOL,
            zone: ZoneParams::defaults_for(prob.lambda()),
        }
    }

    pub fn with_budget(mut self, budget: u32) -> Self {
        self.budget = budget;
        self
    }
}

/// Orbit classification outcome.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    ConvergedToRoot(RootId),
    CycleDetected { period: u32, representative: Complex64 },
    Escaped,
    PoleHit,
    Unresolved,
}

#[derive(Debug, Clone)]
pub struct OrbitResult {
    pub verdict: Verdict,
    pub iterations: u32,
    pub final_point: Complex64,
}

/// Registry-free orbit outcome used by the parallel grid paths; converged
/// orbits carry the polished root location for a deterministic post-merge.
#[derive(Debug, Clone, PartialEq)]
pub enum RawKind {
    Converged,
    Cycle { period: u32 },
    Escaped,
    PoleHit,
    Unresolved,
}

#[derive(Debug, Clone)]
pub struct RawOutcome {
    pub kind: RawKind,
    pub final_point: Complex64,
    pub iterations: u32,
}

/// Which evaluation path one application of the map took.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Direct,
    RightAsym,
    LeftLog,
}

fn sector_of_angle(prob: &Problem, theta: f64) -> usize {
    let d = prob.d as f64;
    let mut a = theta % (2.0 * std::f64::consts::PI);
    if a < 0.0 {
        a += 2.0 * std::f64::consts::PI;
    }
    ((a * d / (2.0 * std::f64::consts::PI)).floor() as usize + 1).clamp(1, prob.d)
}

/// The left-zone jump in log form: `log f = log(-c_j / d) - q(z) - m log z`
/// with the sector-continuous logarithm of `z`.
fn left_jump_log(prob: &Problem, z: Complex64, w: Complex64) -> Result<Complex64> {
    let j = crate::sectors::sector_of(prob, z);
    let cj = sector_constant(prob, j)?;
    let d = prob.d as f64;
    let mut log = (-cj / d).ln() - w;
    if prob.m > 0 {
        log -= sector_log(prob, j, z) * prob.m as f64;
    }
    Ok(log)
}

/// One application of the Newton map, routed by zone:
/// direct evaluation while the exponent is representable and the segment
/// quadrature tractable, the right/middle closed form past the overflow
/// guard, and the left-zone log form (exponentiated) otherwise.
///
/// The three paths agree on their overlap regions; that is exercised by
/// tests, not assumed.
pub fn step(prob: &Problem, z: Complex64, params: &OrbitParams) -> Result<Complex64> {
    step_routed(prob, z, params).map(|(z, _)| z)
}

/// As [`step`], also reporting which path was taken.
pub fn step_routed(prob: &Problem, z: Complex64, params: &OrbitParams) -> Result<(Complex64, Route)> {
    if is_pole(prob, z) {
        return Err(Error::PoleHit(z));
    }
    let w = prob.q.eval(z);
    if !(w.re.is_finite() && w.im.is_finite()) {
        return Err(Error::NumericLoss);
    }
    let r = choose_r(prob);
    if w.norm() <= r || (w.re.abs() <= RE_DIRECT_MAX && w.im.abs() <= OSC_MAX) {
        let delta = newton_correction(prob, z, params.eval_tol)?;
        return Ok((z - delta, Route::Direct));
    }
    if w.re >= -E_MAX {
        return Ok((newton_map_asym(prob, crate::sectors::sector_of(prob, z), z)?, Route::RightAsym));
    }
    let log = left_jump_log(prob, z, w)?;
    if log.re <= E_MAX {
        Ok((log.exp(), Route::LeftLog))
    } else {
        Err(Error::NumericLoss)
    }
}

enum Rep {
    Plain(Complex64),
    /// `z = exp(log)`, used when the point itself leaves the floating range.
    Log(Complex64),
}

/// Segment evaluator with a fixed anchor: `g(z) e^{-q(z)}` is assembled as
/// `e^{q(za) - q(z)} [g(za) e^{-q(za)}] + int_{za}^{z} p e^{q - q(z)}`.
///
/// The anchor never moves between re-anchors, so the carried error is
/// amplified at most by `e^{RE_CAP}` rather than compounding per step. The
/// anchor is refreshed when the exponent shift or the segment oscillation
/// leaves its budget.
struct AnchoredEval {
    anchor: Option<(Complex64, Complex64, Complex64)>, // (z, q(z), gsc)
}

impl AnchoredEval {
    const RE_CAP: f64 = 4.0;
    const IM_CAP: f64 = 80.0;

    fn new() -> Self {
        AnchoredEval { anchor: None }
    }

    fn gsc(&mut self, prob: &Problem, z: Complex64, w: Complex64, tol: f64) -> crate::error::Result<Complex64> {
        if let Some((za, wa, ga)) = self.anchor {
            let shift = wa - w;
            if shift.re <= Self::RE_CAP && shift.re >= -Self::RE_CAP && shift.im.abs() <= Self::IM_CAP
            {
                let seg = integrate_segment(&prob.p, &prob.q, w, za, z, tol)?;
                return Ok(ga * shift.exp() + seg);
            }
        }
        if w.im.abs() > OSC_MAX {
            return Err(Error::ToleranceNotMet {
                err: w.im.abs(),
                tol: OSC_MAX,
            });
        }
        let gsc = crate::eval::eval_g_scaled(prob, z, tol)?;
        self.anchor = Some((z, w, gsc));
        Ok(gsc)
    }

    fn invalidate(&mut self) {
        self.anchor = None;
    }
}

/// Classifies a single orbit against a read-only registry snapshot.
///
/// Verdicts: convergence requires successive iterates within
/// `conv_radius * (1 + |z|)`, a Newton correction below the residual
/// threshold, and quadratic contraction between the last two corrections.
/// Cycles are detected by Brent's algorithm (period cap 64). Escape is
/// flagged on sustained monotone growth past the escape bound, or when the
/// log representation itself is exhausted while growing. Everything else,
/// including every representability loss, is Unresolved.
pub fn classify_orbit(
    prob: &Problem,
    registry: &RootRegistry,
    z0: Complex64,
    params: &OrbitParams,
) -> RawOutcome {
    // Already at a registered root.
    if let Some(id) = registry.match_point(z0) {
        let loc = registry.get(id).unwrap().location;
        if (z0 - loc).norm() <= params.conv_radius * (1.0 + z0.norm()) {
            return RawOutcome {
                kind: RawKind::Converged,
                final_point: loc,
                iterations: 0,
            };
        }
    }

    let mut rep = Rep::Plain(z0);
    let mut eval = AnchoredEval::new();
    let mut prev_delta = f64::INFINITY;
    let mut growth_streak: u32 = 0;
    let mut last_norm = z0.norm();
    // Brent state.
    let mut tortoise = z0;
    let mut power: u32 = 1;
    let mut lam: u32 = 0;

    let z_plain_max = prob.z_rep_max();
    let r = choose_r(prob);

    let mut n: u32 = 0;
    while n < params.budget {
        match rep {
            Rep::Plain(z) => {
                if is_pole(prob, z) {
                    return RawOutcome {
                        kind: RawKind::PoleHit,
                        final_point: z,
                        iterations: n,
                    };
                }
                let w = prob.q.eval(z);
                if !(w.re.is_finite() && w.im.is_finite()) {
                    return RawOutcome {
                        kind: RawKind::Unresolved,
                        final_point: z,
                        iterations: n,
                    };
                }
                let direct =
                    w.norm() <= r || (w.re.abs() <= RE_DIRECT_MAX && w.im.abs() <= OSC_MAX);
                let next: Complex64;
                let delta_norm: f64;
                if direct {
                    let delta = match eval.gsc(prob, z, w, params.eval_tol) {
                        Ok(g) => g / prob.p.eval(z),
                        Err(_) => {
                            return RawOutcome {
                                kind: RawKind::Unresolved,
                                final_point: z,
                                iterations: n,
                            }
                        }
                    };
                    next = z - delta;
                    delta_norm = delta.norm();

                    // Convergence: the previous step was already small, the
                    // correction here is below the residual threshold, and
                    // the corrections contract quadratically (or sit at the
                    // roundoff floor). A finite-difference superattraction
                    // certificate rejects numerically frozen drift points,
                    // whose map derivative stays near 1.
                    let floor = 64.0 * f64::EPSILON * (1.0 + z.norm());
                    if prev_delta <= params.conv_radius * (1.0 + z.norm())
                        && delta_norm <= params.resid_thresh * (1.0 + z.norm())
                        && (delta_norm <= CONTRACTION * prev_delta || delta_norm <= floor)
                        && z.norm() <= params.escape_bound
                        && is_superattracting(prob, next, params)
                    {
                        return RawOutcome {
                            kind: RawKind::Converged,
                            final_point: next,
                            iterations: n + 1,
                        };
                    }
                    // Bitwise fixed point that is not a certified root: the
                    // remaining budget cannot change anything.
                    if next == z {
                        return RawOutcome {
                            kind: RawKind::Unresolved,
                            final_point: z,
                            iterations: n,
                        };
                    }
                } else if w.re >= -E_MAX {
                    eval.invalidate();
                    match newton_map_asym(prob, crate::sectors::sector_of(prob, z), z) {
                        Ok(zn) => {
                            next = zn;
                            delta_norm = (zn - z).norm();
                            if next == z {
                                return RawOutcome {
                                    kind: RawKind::Unresolved,
                                    final_point: z,
                                    iterations: n,
                                };
                            }
                        }
                        Err(_) => {
                            return RawOutcome {
                                kind: RawKind::Unresolved,
                                final_point: z,
                                iterations: n,
                            }
                        }
                    }
                } else {
                    // Left-zone jump; may leave the plain representation.
                    eval.invalidate();
                    let log = match left_jump_log(prob, z, w) {
                        Ok(l) => l,
                        Err(_) => {
                            return RawOutcome {
                                kind: RawKind::Unresolved,
                                final_point: z,
                                iterations: n,
                            }
                        }
                    };
                    n += 1;
                    let grew = last_norm <= 0.0 || log.re > last_norm.ln();
                    growth_streak = if grew { growth_streak + 1 } else { 0 };
                    last_norm = if log.re < 700.0 { log.re.exp() } else { f64::INFINITY };
                    prev_delta = f64::INFINITY;
                    if log.re <= z_plain_max.ln() {
                        rep = Rep::Plain(log.exp());
                    } else {
                        rep = Rep::Log(log);
                    }
                    continue;
                }

                n += 1;
                let next_norm = next.norm();
                growth_streak = if next_norm > last_norm {
                    growth_streak + 1
                } else {
                    0
                };
                if next_norm > params.escape_bound && growth_streak >= ESCAPE_CONFIRM {
                    return RawOutcome {
                        kind: RawKind::Escaped,
                        final_point: next,
                        iterations: n,
                    };
                }
                last_norm = next_norm;
                prev_delta = delta_norm;

                // Brent cycle search among representable iterates.
                if (next - tortoise).norm() <= CYCLE_TOL * (1.0 + next.norm()) && lam >= 1 {
                    if let Some(period) = confirm_cycle(prob, next, lam, params) {
                        return RawOutcome {
                            kind: RawKind::Cycle { period },
                            final_point: next,
                            iterations: n,
                        };
                    }
                }
                lam += 1;
                if lam == power {
                    tortoise = next;
                    lam = 0;
                    if power < 2 * PERIOD_CAP {
                        power *= 2;
                    }
                }

                rep = Rep::Plain(next);
            }
            Rep::Log(l) => {
                // w = q(z) ~ z^d exactly at this scale.
                let wlog = l * prob.d as f64;
                if wlog.re > E_MAX {
                    // |w| itself is beyond the floating range.
                    let re_w_positive = wlog.im.cos() > 0.0;
                    if re_w_positive {
                        // Deep-right drift at immovable scale.
                        return RawOutcome {
                            kind: RawKind::Unresolved,
                            final_point: saturate(l),
                            iterations: n,
                        };
                    }
                    // Another left jump is due and it grows strictly beyond
                    // the log-representable range: flag it.
                    return RawOutcome {
                        kind: RawKind::Escaped,
                        final_point: saturate(l),
                        iterations: n,
                    };
                }
                let w = wlog.exp();
                if w.re >= -E_MAX {
                    // Right of the guard at log scale: the drift step is far
                    // below representable resolution.
                    return RawOutcome {
                        kind: RawKind::Unresolved,
                        final_point: saturate(l),
                        iterations: n,
                    };
                }
                let j = sector_of_angle(prob, l.im);
                let cj = match sector_constant(prob, j) {
                    Ok(c) => c,
                    Err(_) => {
                        return RawOutcome {
                            kind: RawKind::Unresolved,
                            final_point: saturate(l),
                            iterations: n,
                        }
                    }
                };
                let mut log_next = (-cj / prob.d as f64).ln() - w;
                if prob.m > 0 {
                    log_next -= l * prob.m as f64;
                }
                n += 1;
                growth_streak += 1; // left jumps from log scale always grow
                last_norm = f64::INFINITY;
                if log_next.re <= z_plain_max.ln() {
                    rep = Rep::Plain(log_next.exp());
                    prev_delta = f64::INFINITY;
                } else {
                    rep = Rep::Log(log_next);
                }
            }
        }
    }

    let final_point = match rep {
        Rep::Plain(z) => z,
        Rep::Log(l) => saturate(l),
    };
    RawOutcome {
        kind: RawKind::Unresolved,
        final_point,
        iterations: params.budget,
    }
}

/// Finite-difference check that the map derivative nearly vanishes, the
/// signature of a simple zero of `g` under the Newton map.
fn is_superattracting(prob: &Problem, z: Complex64, params: &OrbitParams) -> bool {
    let h = 1e-6 * (1.0 + z.norm());
    let step_h = Complex64::new(h, 0.0);
    match (
        crate::eval::eval_f(prob, z + step_h, params.eval_tol),
        crate::eval::eval_f(prob, z - step_h, params.eval_tol),
    ) {
        (Ok(a), Ok(b)) => ((a - b) / (2.0 * h)).norm() <= 0.25,
        _ => false,
    }
}

/// Clamped plain value of a log representation (for reporting only).
fn saturate(l: Complex64) -> Complex64 {
    if l.re <= E_MAX {
        l.exp()
    } else {
        Complex64::from_polar(f64::MAX, l.im)
    }
}

/// Verifies a Brent candidate: the orbit must return within tolerance after
/// `period` steps and the cycle must not be a plain fixed point (those are
/// either roots, which convergence already claims, or not attracting).
fn confirm_cycle(prob: &Problem, z: Complex64, period: u32, params: &OrbitParams) -> Option<u32> {
    if period < 2 || period > PERIOD_CAP {
        return None;
    }
    let mut cur = z;
    let mut spread = 0.0f64;
    for _ in 0..period {
        cur = step(prob, cur, params).ok()?;
        spread = spread.max((cur - z).norm());
    }
    if (cur - z).norm() > 10.0 * CYCLE_TOL * (1.0 + z.norm()) {
        return None;
    }
    // A collapsed candidate is a fixed point, not a cycle.
    if spread <= 10.0 * CYCLE_TOL * (1.0 + z.norm()) {
        return None;
    }
    Some(period)
}

/// Classifies an orbit and registers a freshly converged root, returning
/// registry-resolved verdicts.
pub fn iterate_orbit(
    prob: &Problem,
    registry: &mut RootRegistry,
    z0: Complex64,
    params: &OrbitParams,
) -> OrbitResult {
    let raw = classify_orbit(prob, registry, z0, params);
    let verdict = match raw.kind {
        RawKind::Converged => {
            let residual = newton_correction(prob, raw.final_point, params.eval_tol)
                .map(|d| d.norm())
                .unwrap_or(f64::NAN);
            Verdict::ConvergedToRoot(registry.match_or_insert(raw.final_point, residual))
        }
        RawKind::Cycle { period } => Verdict::CycleDetected {
            period,
            representative: raw.final_point,
        },
        RawKind::Escaped => Verdict::Escaped,
        RawKind::PoleHit => Verdict::PoleHit,
        RawKind::Unresolved => Verdict::Unresolved,
    };
    OrbitResult {
        verdict,
        iterations: raw.iterations,
        final_point: raw.final_point,
    }
}

/// A pullback trace with the quantities its guarantees bound.
#[derive(Debug, Clone)]
pub struct PullbackTrace {
    pub j: usize,
    pub alpha: f64,
    pub eps: f64,
    /// `w, psi(w), psi^2(w), ...`
    pub points: Vec<Complex64>,
    /// `min_n [Re psi^n(w) - Re w - n (1 - alpha - eps)]`; the linear drift
    /// bound holds exactly when this is nonnegative.
    pub drift_margin: f64,
    /// `min_n [|psi^n(w)| - max(n, |w|) (1 - alpha - eps) / 4]`.
    pub modulus_margin: f64,
    /// `max_n |Im psi^n(w) - Im w|` (the fitted bounded-imaginary-drift
    /// constant).
    pub imag_drift_max: f64,
    /// `max_n e^{-Re psi^n(w)} |psi^n(w)|^lambda e^{n (1-alpha-eps)/2}`.
    pub decay_constant: f64,
}

/// Solves `h_j(w) = w0` for the right-zone inverse branch by Newton
/// iteration seeded at `w0 + 1`, using the closed-form derivative. The
/// solution must land in `D(w0 + 1, alpha + eps)`; anything else fails
/// loudly (the region height was too small for the expansion to hold).
pub fn pullback_inverse(
    prob: &Problem,
    j: usize,
    w0: Complex64,
    alpha: f64,
    eps: f64,
    nu: f64,
    tol: f64,
) -> Result<Complex64> {
    assert!(alpha > 0.0 && alpha < 1.0, "alpha must be in (0,1)");
    assert!(eps > 0.0 && eps < 1.0 - alpha, "eps must be in (0, 1-alpha)");
    let cj = sector_constant(prob, j)?;
    let spec = RegionSpec::new(prob.lambda(), alpha / cj.norm(), nu);
    if !in_region(w0, &spec) {
        return Err(Error::RegionViolation(w0));
    }
    let center = w0 + Complex64::new(1.0, 0.0);
    let mut w = center;
    let mut converged = false;
    for _ in 0..30 {
        let resid = pushforward_direct(prob, j, w, tol)? - w0;
        if resid.norm() <= 1e-10 * (1.0 + w0.norm()) {
            converged = true;
            break;
        }
        let deriv = pushforward_derivative_asym(prob, j, w)?;
        if deriv.norm() < 1e-8 {
            return Err(Error::MaxIterations(30));
        }
        w -= resid / deriv;
    }
    if !converged {
        return Err(Error::MaxIterations(30));
    }
    let radius = alpha + eps;
    if (w - center).norm() >= radius {
        return Err(Error::ContainmentViolated {
            found: w,
            center,
            radius,
        });
    }
    Ok(w)
}

/// Iterates the pullback `n` times and annotates the trace.
pub fn pullback_orbit(
    prob: &Problem,
    j: usize,
    w: Complex64,
    n: u32,
    alpha: f64,
    eps: f64,
    nu: f64,
) -> Result<PullbackTrace> {
    let mut points = vec![w];
    let mut cur = w;
    for _ in 0..n {
        cur = pullback_inverse(prob, j, cur, alpha, eps, nu, DEFAULT_TOL)?;
        points.push(cur);
    }
    Ok(annotate_trace(prob, j, alpha, eps, points))
}

fn annotate_trace(
    prob: &Problem,
    j: usize,
    alpha: f64,
    eps: f64,
    points: Vec<Complex64>,
) -> PullbackTrace {
    let w = points[0];
    let delta = 1.0 - alpha - eps;
    let lam = prob.lambda();
    let mut drift_margin = f64::INFINITY;
    let mut modulus_margin = f64::INFINITY;
    let mut imag_drift_max = 0.0f64;
    let mut decay_constant = 0.0f64;
    for (nn, &p) in points.iter().enumerate() {
        let nf = nn as f64;
        drift_margin = drift_margin.min(p.re - w.re - nf * delta);
        modulus_margin = modulus_margin.min(p.norm() - nf.max(w.norm()) * delta / 4.0);
        imag_drift_max = imag_drift_max.max((p.im - w.im).abs());
        let decay = (-p.re).exp() * p.norm().powf(lam) * (nf * delta / 2.0).exp();
        decay_constant = decay_constant.max(decay);
    }
    PullbackTrace {
        j,
        alpha,
        eps,
        points,
        drift_margin,
        modulus_margin,
        imag_drift_max,
        decay_constant,
    }
}

/// `|(psi^n)'(w)|` for `n = 1..=n_max` by central differences of two
/// parallel pullback orbits.
pub fn pullback_derivative_fd(
    prob: &Problem,
    j: usize,
    w: Complex64,
    n_max: u32,
    alpha: f64,
    eps: f64,
    nu: f64,
) -> Result<Vec<f64>> {
    let h = 1e-3;
    let step = Complex64::new(h, 0.0);
    let plus = pullback_orbit(prob, j, w + step, n_max, alpha, eps, nu)?;
    let minus = pullback_orbit(prob, j, w - step, n_max, alpha, eps, nu)?;
    Ok((1..=n_max as usize)
        .map(|k| ((plus.points[k] - minus.points[k]) / (2.0 * h)).norm())
        .collect())
}

/// Smallest region height from a doubling menu at which the pullback
/// containment holds on a probe set along the region boundary.
pub fn calibrate_pullback_nu(prob: &Problem, j: usize, alpha: f64, eps: f64) -> Result<f64> {
    let cj = sector_constant(prob, j)?;
    let lam = prob.lambda();
    let base = ZoneParams::defaults_for(lam).nu;
    'candidates: for factor in [1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0] {
        let nu = base * factor;
        let spec = RegionSpec::new(lam, alpha / cj.norm(), nu);
        for &dy in &[0.0, 2.0, 8.0, 30.0] {
            for &dx in &[0.0, 0.5, 2.0] {
                for sign in [1.0, -1.0] {
                    let w0 = curve_point(&spec, sign * (nu + dy)) + Complex64::new(dx, 0.0);
                    match pullback_inverse(prob, j, w0, alpha, eps, nu, DEFAULT_TOL) {
                        Ok(_) => {}
                        Err(_) => continue 'candidates,
                    }
                }
            }
        }
        return Ok(nu);
    }
    Err(Error::MaxIterations(7))
}
