//! The `w = q(z)` change of variables: the slit region `G`, its `d` sector
//! preimages, the conformal branch inverses, and the log-scale partition
//! curves and regions that organize the right/middle/left zone structure.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::problem::Problem;

/// Relative tolerance for the branch inversion: `|q(z) - w| <= TOL * |w|`.
const INVERT_TOL: f64 = 1e-10;

/// Residual target for the boundary-curve solver.
const CURVE_TOL: f64 = 1e-13;

/// Parameters `(mu, alpha, nu)` of the region
/// `H = { w : Re w >= mu log|w| - log alpha, |Im w| >= nu }` and of its
/// boundary curve `Re w = mu log|w| - log alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionSpec {
    pub mu: f64,
    pub alpha: f64,
    pub nu: f64,
}

impl RegionSpec {
    /// `nu` must dominate `2 |mu|` for the boundary curve to be a graph
    /// over the imaginary axis.
    pub fn new(mu: f64, alpha: f64, nu: f64) -> Self {
        assert!(alpha > 0.0, "alpha must be positive");
        assert!(nu >= 2.0 * mu.abs(), "nu must be at least 2|mu|");
        RegionSpec { mu, alpha, nu }
    }
}

/// Horizontal zone of a point in the `w`-plane (Figure-1 layout).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Zone {
    Right,
    Middle,
    Left,
    NearAxis,
}

/// Zone band parameters. The defaults follow the engine's calibration for
/// problems of this class and can be overridden from configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZoneParams {
    pub alpha1: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub nu: f64,
}

impl ZoneParams {
    pub fn defaults_for(lambda: f64) -> Self {
        let nu = 20.0f64
            .max(2.0 * lambda.abs() + 1.0)
            .max(2.0 * (lambda - 1.0).abs() + 1.0);
        ZoneParams {
            alpha1: 0.05,
            beta1: 20.0,
            beta2: 20.0,
            nu,
        }
    }
}

/// Smallest radius from the doubling sequence `{1, 2, 4, ...}` such that all
/// critical values of `q` lie in `D(0, R)` and the two-sided growth bound
/// `|z|^d / 2^d <= |q(z)| <= 2^d |z|^d` holds on a 720-point circle sample
/// at ten radii spanning `[(1/2) R^{1/d}, 2 R^{1/d}]`.
///
/// The result is cached on the problem.
pub fn choose_r(prob: &Problem) -> f64 {
    *prob.r.get_or_init(|| {
        let crit_values: Vec<Complex64> = prob
            .q
            .derivative()
            .roots()
            .iter()
            .map(|&z| prob.q.eval(z))
            .collect();
        let mut r = 1.0f64;
        for _ in 0..64 {
            if crit_values.iter().all(|v| v.norm() < r) && growth_bound_holds(prob, r) {
                return r;
            }
            r *= 2.0;
        }
        r
    })
}

fn growth_bound_holds(prob: &Problem, r: f64) -> bool {
    let d = prob.d as f64;
    let lo = 0.5 * r.powf(1.0 / d);
    let hi = 2.0 * r.powf(1.0 / d);
    let two_d = (2.0f64).powi(prob.d as i32);
    for i in 0..10 {
        let radius = lo + (hi - lo) * i as f64 / 9.0;
        let bound_lo = radius.powi(prob.d as i32) / two_d;
        let bound_hi = radius.powi(prob.d as i32) * two_d;
        for k in 0..720 {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / 720.0;
            let z = Complex64::from_polar(radius, theta);
            let qn = prob.q.eval(z).norm();
            if qn < bound_lo || qn > bound_hi {
                return false;
            }
        }
    }
    true
}

/// Argument in `(0, 2 pi]`, matching the branch cut of the slit region
/// along `[0, inf)`.
pub fn arg_slit(w: Complex64) -> f64 {
    let a = w.arg();
    if a <= 0.0 {
        a + 2.0 * std::f64::consts::PI
    } else {
        a
    }
}

/// True when `w` lies in `G`, the complement of the closed disk `D(0, R)`
/// together with the ray `[0, inf)`.
pub fn in_slit_region(prob: &Problem, w: Complex64) -> bool {
    let r = choose_r(prob);
    w.norm() > r && !(w.im == 0.0 && w.re >= 0.0)
}

/// The 1-based sector index whose angular window contains `z`.
pub fn sector_of(prob: &Problem, z: Complex64) -> usize {
    let d = prob.d;
    let a = {
        let a = z.arg();
        if a < 0.0 {
            a + 2.0 * std::f64::consts::PI
        } else {
            a
        }
    };
    let j = (a * d as f64 / (2.0 * std::f64::consts::PI)).floor() as usize + 1;
    j.clamp(1, d)
}

/// Branch inverse of `q` on the slit region: the unique `z` in sector `j`
/// with `q(z) = w`, found by Newton iteration from the d-th-root seed.
pub fn inverse_branch(prob: &Problem, j: usize, w: Complex64) -> Result<Complex64> {
    assert!(j >= 1 && j <= prob.d, "sector index out of range");
    if !in_slit_region(prob, w) {
        return Err(Error::NotInG(w));
    }
    let d = prob.d as f64;
    let root_mod = w.norm().powf(1.0 / d);
    let theta = arg_slit(w) / d + 2.0 * std::f64::consts::PI * (j as f64 - 1.0) / d;
    let seed = Complex64::from_polar(root_mod, theta);
    let qp = prob.q.derivative();
    for damping in [1.0, 0.5, 0.25] {
        let mut z = seed;
        for _ in 0..80 {
            let resid = prob.q.eval(z) - w;
            if resid.norm() <= INVERT_TOL * w.norm() {
                return Ok(z);
            }
            let deriv = qp.eval(z);
            if deriv.norm() == 0.0 {
                break;
            }
            z -= resid / deriv * damping;
            let zn = z.norm();
            if zn < 0.5 * root_mod || zn > 2.0 * root_mod {
                break;
            }
        }
    }
    Err(Error::SeedEscape(w))
}

/// Solves `x = mu log|x + i y| - log alpha` for the unique abscissa of the
/// boundary curve at height `y` (`|y| >= 2 |mu|`). Safeguarded Newton with
/// a bisection fallback; the defining map has derivative in `[1/2, 3/2]`.
pub fn curve_x(mu: f64, alpha: f64, y: f64) -> f64 {
    debug_assert!(y.abs() >= 2.0 * mu.abs(), "height below curve domain");
    let f = |x: f64| x - 0.5 * mu * (x * x + y * y).ln() + alpha.ln();
    let fp = |x: f64| 1.0 - mu * x / (x * x + y * y);
    let mut x = mu * y.abs().max(1.0).ln() - alpha.ln();
    let f0 = f(x);
    // The slope bounds confine the root to within 2|f0| of the start.
    let mut lo = x - 2.0 * f0.abs() - 1.0;
    let mut hi = x + 2.0 * f0.abs() + 1.0;
    for _ in 0..200 {
        let fx = f(x);
        if fx.abs() <= CURVE_TOL {
            return x;
        }
        if fx > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let step = fx / fp(x);
        let mut next = x - step;
        if next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() < 1e-17 * (1.0 + x.abs()) {
            return next;
        }
        x = next;
    }
    x
}

/// Curve abscissa for a region spec at height `y`.
pub fn curve_point(spec: &RegionSpec, y: f64) -> Complex64 {
    Complex64::new(curve_x(spec.mu, spec.alpha, y), y)
}

/// Membership test for `H(mu, alpha, nu)`.
pub fn in_region(w: Complex64, spec: &RegionSpec) -> bool {
    w.im.abs() >= spec.nu && w.re >= spec.mu * w.norm().ln() - spec.alpha.ln()
}

/// Signed horizontal residual against the boundary curve:
/// `Re w - mu log|w| + log alpha`, zero exactly on the curve. On the curve
/// the identity `|e^{-w}| = alpha |w|^{-mu}` holds.
pub fn curve_residual(w: Complex64, spec: &RegionSpec) -> f64 {
    debug_assert!(w.im.abs() >= 2.0 * spec.mu.abs());
    w.re - spec.mu * w.norm().ln() + spec.alpha.ln()
}

/// Classifies `w` into the Figure-1 zone bands for sector `j`.
///
/// Order of precedence is RIGHT > MIDDLE > LEFT; the dashed transition
/// bands between them are assigned to the nearer band by curve residual.
pub fn zone_classify(prob: &Problem, j: usize, w: Complex64, params: &ZoneParams) -> Zone {
    if w.im.abs() < params.nu {
        return Zone::NearAxis;
    }
    let cj_mod = prob
        .sector_constant_cached(j)
        .expect("sector constant must be computed before zone classification")
        .norm();
    let lam = prob.lambda();
    let nu = params.nu;
    let right = RegionSpec::new(lam, 1.0 / cj_mod, nu);
    if in_region(w, &right) {
        return Zone::Right;
    }
    let mid_inner = RegionSpec::new(lam - 1.0, params.alpha1 / cj_mod, nu);
    let mid_outer = RegionSpec::new(lam, params.beta1 / cj_mod, nu);
    if in_region(w, &mid_inner) && !in_region(w, &mid_outer) {
        return Zone::Middle;
    }
    let left_bound = RegionSpec::new(lam - 1.0, params.beta2 / cj_mod, nu);
    if !in_region(w, &left_bound) {
        return Zone::Left;
    }
    // Transition bands.
    if in_region(w, &mid_outer) {
        // Between the RIGHT boundary and the MIDDLE outer boundary.
        let to_right = curve_residual(w, &right).abs();
        let to_middle = curve_residual(w, &mid_outer).abs();
        if to_right <= to_middle {
            Zone::Right
        } else {
            Zone::Middle
        }
    } else {
        // Between the MIDDLE inner boundary and the LEFT boundary.
        let to_middle = curve_residual(w, &mid_inner).abs();
        let to_left = curve_residual(w, &left_bound).abs();
        if to_middle <= to_left {
            Zone::Middle
        } else {
            Zone::Left
        }
    }
}

/// Sector-continuous logarithm: the imaginary part is the representative of
/// `arg z` nearest the midline of sector `j`, so the branch is single-valued
/// on the sector and a neighborhood of it.
pub fn sector_log(prob: &Problem, j: usize, z: Complex64) -> Complex64 {
    let d = prob.d as f64;
    let midline = (2.0 * j as f64 - 1.0) * std::f64::consts::PI / d;
    let mut delta = z.arg() - midline;
    while delta > std::f64::consts::PI {
        delta -= 2.0 * std::f64::consts::PI;
    }
    while delta < -std::f64::consts::PI {
        delta += 2.0 * std::f64::consts::PI;
    }
    Complex64::new(z.norm().ln(), midline + delta)
}

/// `z^e` through the sector-continuous logarithm.
pub fn sector_pow(prob: &Problem, j: usize, z: Complex64, e: f64) -> Complex64 {
    (sector_log(prob, j, z) * e).exp()
}

/// Fits the sector-bound constant of the angular windows: the maximum over
/// sampled `w` of `|z| * (angular excess of z over its nominal sector)`,
/// where `z` is the branch inverse. Returns the fitted constant.
pub fn calibrate_sector_constant(prob: &Problem, samples_per_sector: usize) -> f64 {
    let r = choose_r(prob);
    let d = prob.d as f64;
    let mut c_hat = 0.0f64;
    for j in 1..=prob.d {
        for i in 0..samples_per_sector {
            let t = i as f64 / samples_per_sector as f64;
            let radius = (r + 1.0) * (1.0 + 99.0 * t);
            let angle = 0.05 + (2.0 * std::f64::consts::PI - 0.1) * ((i as f64 * 0.618) % 1.0);
            let w = Complex64::from_polar(radius, angle);
            if !in_slit_region(prob, w) {
                continue;
            }
            if let Ok(z) = inverse_branch(prob, j, w) {
                let lo = 2.0 * (j as f64 - 1.0) * std::f64::consts::PI / d;
                let hi = 2.0 * j as f64 * std::f64::consts::PI / d;
                let theta = sector_log(prob, j, z).im;
                let excess = (lo - theta).max(theta - hi).max(0.0);
                c_hat = c_hat.max(z.norm() * excess);
            }
        }
    }
    c_hat
}
