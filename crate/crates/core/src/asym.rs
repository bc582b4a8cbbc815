//! Sector constants and the closed-form asymptotic evaluations of the
//! Newton map and its `w`-plane pushforward, together with the decay scans
//! that validate each dropped error term empirically.
//!
//! Every `*_asym` function returns the closed-form part only; quantifying
//! the neglected term is [`decay_scan`]'s job.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::eval::{eval_f, eval_g, DEFAULT_TOL};
use crate::problem::Problem;
use crate::quad::E_MAX;
use crate::sectors::{
    choose_r, in_region, in_slit_region, inverse_branch, sector_pow, RegionSpec, ZoneParams,
};

/// Probe cap for the sector-constant estimation; beyond this the estimate
/// has not stabilized and the constant is treated as numerically zero.
pub const CJ_X_CAP: f64 = 600.0;

/// Sector constants below this magnitude abort the run: the family under
/// verification excludes them, and a vanishing constant signals a Baker
/// domain.
pub const CJ_NEAR_ZERO: f64 = 1e-8;

/// A complex value carried as `log`: magnitude `e^{re}`, phase `im`.
/// Used where the value itself overflows the floating range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogComplex {
    pub log: Complex64,
}

impl LogComplex {
    /// The exponentiated value when representable.
    pub fn value(&self) -> Option<Complex64> {
        if self.log.re <= E_MAX {
            Some(self.log.exp())
        } else {
            None
        }
    }

    pub fn log_magnitude(&self) -> f64 {
        self.log.re
    }

    pub fn phase(&self) -> f64 {
        self.log.im
    }
}

/// Estimates the sector constant for sector `j` by probing `g` along the
/// leftward ray: `g(phi_j(-X))` with `X` doubling from the given start
/// until two successive probes agree to `tol`. The result is cached on the
/// problem; all zone parameters derive from its magnitude.
pub fn estimate_sector_constant(
    prob: &Problem,
    j: usize,
    x_start: f64,
    tol: f64,
) -> Result<Complex64> {
    if let Some(v) = prob.sector_constant_cached(j) {
        return Ok(v);
    }
    let r = choose_r(prob);
    let mut x = x_start.max(r + 1.5);
    let mut prev = eval_g(prob, inverse_branch(prob, j, Complex64::new(-x, 0.0))?, tol)?;
    loop {
        x *= 2.0;
        if x > CJ_X_CAP {
            return Err(Error::NonConvergence {
                sector: j,
                x_cap: CJ_X_CAP,
            });
        }
        let cur = eval_g(prob, inverse_branch(prob, j, Complex64::new(-x, 0.0))?, tol)?;
        if (cur - prev).norm() <= tol * (1.0 + cur.norm()) {
            let _ = prob.cj[j - 1].set(cur);
            return Ok(*prob.cj[j - 1].get().unwrap());
        }
        prev = cur;
    }
}

/// Cached sector constant with default probe parameters, computing it on
/// first use. Aborts with `CjNearZero` when the constant is numerically
/// zero (Baker-domain signature).
pub fn sector_constant(prob: &Problem, j: usize) -> Result<Complex64> {
    let c = estimate_sector_constant(prob, j, 24.0, 1e-10)?;
    if c.norm() < CJ_NEAR_ZERO {
        return Err(Error::CjNearZero {
            sector: j,
            magnitude: c.norm(),
        });
    }
    Ok(c)
}

/// All sector constants; fails on the first vanishing one.
pub fn all_sector_constants(prob: &Problem) -> Result<Vec<Complex64>> {
    (1..=prob.d).map(|j| sector_constant(prob, j)).collect()
}

/// Closed-form Newton map deep in sector `j`:
/// `z - (1/q'(z)) (1 + lambda / z^d) - c_j e^{-q(z)} / p(z)`.
///
/// Requires `|q(z)| > R` and `Re q(z) >= -E_MAX` (otherwise the last term
/// overflows and the left-zone log form applies).
pub fn newton_map_asym(prob: &Problem, j: usize, z: Complex64) -> Result<Complex64> {
    let w = prob.q.eval(z);
    if -w.re > E_MAX {
        return Err(Error::OverflowRegion(-w.re));
    }
    let cj = sector_constant(prob, j)?;
    let qp = prob.q.derivative().eval(z);
    let lam = prob.lambda();
    let zd = z.powi(prob.d as i32);
    let drift = (Complex64::new(1.0, 0.0) + Complex64::new(lam, 0.0) / zd) / qp;
    let tail = cj * (-w).exp() / prob.p.eval(z);
    Ok(z - drift - tail)
}

/// The `w`-plane pushforward `q(f(phi_j(w)))` evaluated directly.
pub fn pushforward_direct(prob: &Problem, j: usize, w: Complex64, tol: f64) -> Result<Complex64> {
    let z = inverse_branch(prob, j, w)?;
    let fz = eval_f(prob, z, tol)?;
    let h = prob.q.eval(fz);
    if h.re.is_finite() && h.im.is_finite() {
        Ok(h)
    } else {
        Err(Error::NumericLoss)
    }
}

/// Right-zone closed form of the pushforward:
/// `w - 1 + (2m + 1 - d) / (2 d w) - c_j e^{-w} phi_j(w)^{d lambda}`,
/// the sector power taken through the sector-continuous logarithm.
pub fn pushforward_asym_right(prob: &Problem, j: usize, w: Complex64) -> Result<Complex64> {
    if -w.re > E_MAX {
        return Err(Error::OverflowRegion(-w.re));
    }
    let cj = sector_constant(prob, j)?;
    let z = inverse_branch(prob, j, w)?;
    let d = prob.d as f64;
    let m = prob.m as f64;
    let mid = Complex64::new((2.0 * m + 1.0 - d) / (2.0 * d), 0.0) / w;
    let tail = cj * (-w).exp() * sector_pow(prob, j, z, prob.d_lambda() as f64);
    Ok(w - Complex64::new(1.0, 0.0) + mid - tail)
}

/// Left-zone log form of the pushforward,
/// `log h = d log(-c_j / d) - d w - m log w` (principal logarithms).
/// Always representable; the exponentiated value accompanies it when the
/// magnitude fits the floating range.
pub fn pushforward_asym_left(
    prob: &Problem,
    j: usize,
    w: Complex64,
) -> Result<(LogComplex, Option<Complex64>)> {
    let cj = sector_constant(prob, j)?;
    let d = prob.d as f64;
    let mut log = (-cj / d).ln() * d - w * d;
    if prob.m > 0 {
        log -= w.ln() * prob.m as f64;
    }
    let lc = LogComplex { log };
    let value = lc.value();
    Ok((lc, value))
}

/// Right-zone closed form of the pushforward derivative:
/// `1 + c_j e^{-w} phi_j(w)^{d lambda}`.
pub fn pushforward_derivative_asym(prob: &Problem, j: usize, w: Complex64) -> Result<Complex64> {
    if -w.re > E_MAX {
        return Err(Error::OverflowRegion(-w.re));
    }
    let cj = sector_constant(prob, j)?;
    let z = inverse_branch(prob, j, w)?;
    let tail = cj * (-w).exp() * sector_pow(prob, j, z, prob.d_lambda() as f64);
    Ok(Complex64::new(1.0, 0.0) + tail)
}

/// Which dropped error term a scan validates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaId {
    /// The z-plane Newton-map expansion.
    NewtonMapAsym,
    /// The right-zone pushforward expansion.
    PushforwardRight,
    /// The right-zone pushforward-derivative expansion.
    PushforwardDerivative,
    /// The left-zone log form.
    PushforwardLeft,
}

impl FormulaId {
    pub fn label(&self) -> &'static str {
        match self {
            FormulaId::NewtonMapAsym => "newton-map-asym",
            FormulaId::PushforwardRight => "pushforward-right",
            FormulaId::PushforwardDerivative => "pushforward-derivative",
            FormulaId::PushforwardLeft => "pushforward-left",
        }
    }
}

/// A straight sampling ray `w(t) = base + t * dir`, `t` log-spaced.
#[derive(Debug, Clone, Copy)]
pub struct RaySpec {
    pub j: usize,
    pub base: Complex64,
    pub dir: Complex64,
    pub t_min: f64,
    pub t_max: f64,
}

impl RaySpec {
    fn describe(&self) -> String {
        format!(
            "sector {} ray {}+t*{} t in [{}, {}]",
            self.j, self.base, self.dir, self.t_min, self.t_max
        )
    }
}

/// Result of one decay scan: per-sample relative errors sorted by `|w|`,
/// the least-squares decay exponent, and the fraction of consecutive
/// sample pairs with decreasing error.
#[derive(Debug, Clone)]
pub struct AsymptoticReport {
    pub formula: FormulaId,
    pub ray: String,
    pub samples: Vec<(f64, f64)>,
    pub fitted_exponent: f64,
    pub decreasing_fraction: f64,
}

impl AsymptoticReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("abs_w,error\n");
        for (aw, err) in &self.samples {
            out.push_str(&format!("{aw:.12e},{err:.12e}\n"));
        }
        out
    }
}

fn zone_region(prob: &Problem, formula: FormulaId, j: usize, params: &ZoneParams) -> Result<Option<RegionSpec>> {
    let lam = prob.lambda();
    let cj_mod = sector_constant(prob, j)?.norm();
    Ok(match formula {
        FormulaId::NewtonMapAsym => None,
        FormulaId::PushforwardRight => Some(RegionSpec::new(lam, 2.0 / cj_mod, params.nu)),
        FormulaId::PushforwardDerivative => Some(RegionSpec::new(lam, 1.0 / cj_mod, params.nu)),
        FormulaId::PushforwardLeft => None,
    })
}

/// Samples the discrepancy between the direct evaluation and the named
/// closed form along a ray, fitting the decay exponent in log-log.
///
/// Fails with `RegionViolation` when the ray leaves the formula's validity
/// region; a numerically zero error series reports an infinite exponent.
pub fn decay_scan(
    prob: &Problem,
    formula: FormulaId,
    ray: &RaySpec,
    n_samples: usize,
    params: &ZoneParams,
) -> Result<AsymptoticReport> {
    assert!(n_samples >= 3);
    let region = zone_region(prob, formula, ray.j, params)?;
    let mut samples = Vec::with_capacity(n_samples);
    let ratio = (ray.t_max / ray.t_min).powf(1.0 / (n_samples as f64 - 1.0));
    let mut t = ray.t_min;
    for _ in 0..n_samples {
        let w = ray.base + ray.dir * t;
        if let Some(spec) = &region {
            if !in_region(w, spec) {
                return Err(Error::RegionViolation(w));
            }
        } else if !in_slit_region(prob, w) {
            return Err(Error::RegionViolation(w));
        }
        let err = match formula {
            FormulaId::NewtonMapAsym => {
                let z = inverse_branch(prob, ray.j, w)?;
                let direct = eval_f(prob, z, DEFAULT_TOL)?;
                let asym = newton_map_asym(prob, ray.j, z)?;
                (asym - direct).norm() / (direct - z).norm()
            }
            FormulaId::PushforwardRight => {
                let direct = pushforward_direct(prob, ray.j, w, DEFAULT_TOL)?;
                let asym = pushforward_asym_right(prob, ray.j, w)?;
                (direct - asym).norm()
            }
            FormulaId::PushforwardDerivative => {
                let h = 1e-4;
                let step = Complex64::new(h, 0.0);
                let hp = (pushforward_direct(prob, ray.j, w + step, DEFAULT_TOL)?
                    - pushforward_direct(prob, ray.j, w - step, DEFAULT_TOL)?)
                    / (2.0 * h);
                let asym = pushforward_derivative_asym(prob, ray.j, w)?;
                (hp - asym).norm()
            }
            FormulaId::PushforwardLeft => {
                let direct = pushforward_direct(prob, ray.j, w, DEFAULT_TOL)?;
                let (_, value) = pushforward_asym_left(prob, ray.j, w)?;
                match value {
                    Some(v) if v.norm() > 0.0 => (direct / v - Complex64::new(1.0, 0.0)).norm(),
                    _ => return Err(Error::NumericLoss),
                }
            }
        };
        samples.push((w.norm(), err));
        t *= ratio;
    }
    samples.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    let dec_pairs = samples
        .windows(2)
        .filter(|p| p[1].1 < p[0].1)
        .count();
    let decreasing_fraction = dec_pairs as f64 / (samples.len() - 1) as f64;

    let positive: Vec<(f64, f64)> = samples
        .iter()
        .filter(|(_, e)| *e > 0.0)
        .copied()
        .collect();
    let fitted_exponent = if positive.len() < 2 {
        f64::INFINITY
    } else {
        // Least squares on log err = a - e log |w|.
        let n = positive.len() as f64;
        let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
        for (aw, err) in &positive {
            let x = aw.ln();
            let y = err.ln();
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        let denom = n * sxx - sx * sx;
        if denom.abs() < 1e-12 {
            f64::INFINITY
        } else {
            -(n * sxy - sx * sy) / denom
        }
    };

    Ok(AsymptoticReport {
        formula,
        ray: ray.describe(),
        samples,
        fitted_exponent,
        decreasing_fraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::problem::normalize;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Normalized flipped Gaussian: p = 2, q = t^2, c' = 2 i c.
    fn gauss_norm(c: f64) -> Problem {
        let (prob, _) = normalize(
            &Polynomial::from_real(&[1.0]),
            &Polynomial::from_real(&[0.0, 0.0, -1.0]),
            c64(c, 0.0),
        )
        .unwrap();
        prob
    }

    const SQRT_PI_HALF: f64 = 0.8862269254527580;

    #[test]
    fn sector_constants_match_closed_form() {
        let prob = gauss_norm(0.3);
        let c1 = sector_constant(&prob, 1).unwrap();
        let c2 = sector_constant(&prob, 2).unwrap();
        let want1 = c64(0.0, 2.0 * (0.3 + SQRT_PI_HALF));
        let want2 = c64(0.0, 2.0 * (0.3 - SQRT_PI_HALF));
        assert!((c1 - want1).norm() < 1e-9, "c1 = {c1}");
        assert!((c2 - want2).norm() < 1e-9, "c2 = {c2}");
        assert!(c1.norm() > 0.0 && c2.norm() > 0.0);
    }

    #[test]
    fn doubling_acceptance_is_stable() {
        let prob = gauss_norm(0.3);
        let v1 = estimate_sector_constant(&prob, 1, 24.0, 1e-10).unwrap();
        // Re-probing at twice the accepted abscissa moves the value by < tol.
        let z = inverse_branch(&prob, 1, c64(-96.0, 0.0)).unwrap();
        let v2 = eval_g(&prob, z, 1e-10).unwrap();
        assert!((v1 - v2).norm() < 1e-10 * (1.0 + v2.norm()));
    }

    #[test]
    fn vanishing_constant_aborts() {
        // c = -sqrt(pi)/2 makes the first sector constant vanish.
        let prob = gauss_norm(-SQRT_PI_HALF);
        match sector_constant(&prob, 1) {
            Err(Error::CjNearZero { sector: 1, .. }) | Err(Error::NonConvergence { .. }) => {}
            other => panic!("expected near-zero abort, got {other:?}"),
        }
    }

    #[test]
    fn newton_map_asym_far_right() {
        // Where Re q is large the exponential tail is negligible and
        // f ~ z - 1/q'(z).
        let prob = gauss_norm(0.3);
        let z = inverse_branch(&prob, 1, c64(300.0, 30.0)).unwrap();
        let fa = newton_map_asym(&prob, 1, z).unwrap();
        let qp = prob.q.derivative().eval(z);
        let lam = prob.lambda();
        let drift = (Complex64::new(1.0, 0.0) + Complex64::new(lam, 0.0) / z.powi(2)) / qp;
        assert!((fa - (z - drift)).norm() < 1e-12, "tail not negligible");
        assert!((fa - (z - qp.inv())).norm() < 3e-3 / qp.norm());
    }

    #[test]
    fn pushforward_right_matches_direct() {
        let prob = gauss_norm(0.3);
        let mut last = f64::INFINITY;
        for x in [30.0, 60.0, 120.0, 240.0] {
            let w = c64(x, 40.0);
            let direct = pushforward_direct(&prob, 1, w, DEFAULT_TOL).unwrap();
            let asym = pushforward_asym_right(&prob, 1, w).unwrap();
            let err = (direct - asym).norm();
            assert!(err < last, "error not decreasing at {w}");
            last = err;
        }
        // Deep in the region all corrections vanish: h ~ w - 1.
        let w = c64(500.0, 40.0);
        let asym = pushforward_asym_right(&prob, 1, w).unwrap();
        assert!((asym - (w - c64(1.0, 0.0))).norm() < 1e-3);
    }

    #[test]
    fn middle_coefficient_vanishes_for_linear_exponent() {
        // d = 1, m = 0: (2m + 1 - d) / (2d) = 0, so the 1/w term drops.
        let prob = Problem::raw(
            Polynomial::from_real(&[1.0]),
            Polynomial::from_real(&[0.0, 1.0]),
            c64(0.4, 0.0),
        )
        .unwrap();
        let w = c64(120.0, 25.0);
        let asym = pushforward_asym_right(&prob, 1, w).unwrap();
        let cj = sector_constant(&prob, 1).unwrap();
        let z = inverse_branch(&prob, 1, w).unwrap();
        let tail = cj * (-w).exp() * sector_pow(&prob, 1, z, 0.0);
        assert!((asym - (w - c64(1.0, 0.0) + c64(0.0, 0.0) - tail)).norm() < 1e-12);
    }

    #[test]
    fn left_form_matches_direct_where_representable() {
        let prob = gauss_norm(0.3);
        for w in [c64(-20.0, 25.0), c64(-40.0, 30.0), c64(-60.0, 45.0)] {
            let direct = pushforward_direct(&prob, 1, w, DEFAULT_TOL).unwrap();
            let (_, value) = pushforward_asym_left(&prob, 1, w).unwrap();
            let v = value.unwrap();
            assert!(
                (direct / v - c64(1.0, 0.0)).norm() < 1e-4,
                "ratio off at {w}"
            );
        }
    }

    #[test]
    fn left_form_log_growth() {
        // Re(log h) grows like -d Re w leftward.
        let prob = gauss_norm(0.3);
        let (l1, _) = pushforward_asym_left(&prob, 1, c64(-100.0, 30.0)).unwrap();
        let (l2, _) = pushforward_asym_left(&prob, 1, c64(-200.0, 30.0)).unwrap();
        let d = prob.d as f64;
        assert!(((l2.log_magnitude() - l1.log_magnitude()) - d * 100.0).abs() < 1.0);
        // m = 0: the log form carries no log w term.
        assert_eq!(prob.m, 0);
    }

    #[test]
    fn derivative_form_matches_finite_differences() {
        let prob = gauss_norm(0.3);
        for w in [c64(30.0, 25.0), c64(80.0, 25.0)] {
            let h = 1e-4;
            let fd = (pushforward_direct(&prob, 1, w + c64(h, 0.0), DEFAULT_TOL).unwrap()
                - pushforward_direct(&prob, 1, w - c64(h, 0.0), DEFAULT_TOL).unwrap())
                / (2.0 * h);
            let asym = pushforward_derivative_asym(&prob, 1, w).unwrap();
            assert!(
                (fd - asym).norm() <= 0.5 / w.norm().powf(0.5),
                "w {w}: fd {fd} asym {asym}"
            );
        }
        // On the unit-magnitude curve the tail has modulus about 1.
        let cj = sector_constant(&prob, 1).unwrap();
        let spec = RegionSpec::new(prob.lambda(), 1.0 / cj.norm(), 2.0);
        let w = crate::sectors::curve_point(&spec, 30.0);
        let hp = pushforward_derivative_asym(&prob, 1, w).unwrap();
        let tail_mag = (hp - c64(1.0, 0.0)).norm();
        assert!((0.8..1.2).contains(&tail_mag), "tail magnitude {tail_mag}");
        // Deep in the region the derivative tends to 1.
        let hp = pushforward_derivative_asym(&prob, 1, c64(400.0, 30.0)).unwrap();
        assert!((hp - c64(1.0, 0.0)).norm() < 1e-3);
    }

    #[test]
    fn sector_limit_consistency() {
        // |g(phi_j(w)) - c_j| / (|w|^{-lambda} e^{Re w}) stays within a
        // factor-2 band along a leftward horizontal line.
        let prob = gauss_norm(0.3);
        let cj = sector_constant(&prob, 1).unwrap();
        let lam = prob.lambda();
        for im in [1000.0, 3000.0] {
            let w = c64(-12.0, im);
            let z = inverse_branch(&prob, 1, w).unwrap();
            let g = eval_g(&prob, z, 1e-13).unwrap();
            let ratio = (g - cj).norm() / (w.norm().powf(-lam) * w.re.exp());
            assert!((0.5..2.0).contains(&ratio), "ratio {ratio} at {w}");
        }
    }

    #[test]
    fn scan_reports_exponent_and_majority() {
        let prob = gauss_norm(0.3);
        let params = ZoneParams::defaults_for(prob.lambda());
        let ray = RaySpec {
            j: 1,
            base: c64(0.0, 40.0),
            dir: c64(1.0, 0.0),
            t_min: 50.0,
            t_max: 800.0,
        };
        let rep = decay_scan(&prob, FormulaId::PushforwardRight, &ray, 10, &params).unwrap();
        assert!(rep.fitted_exponent >= 1.0 + 1.0 / prob.d as f64 - 0.2);
        assert!(rep.decreasing_fraction >= 0.8);
    }

    #[test]
    fn scan_region_violation() {
        let prob = gauss_norm(0.3);
        let params = ZoneParams::defaults_for(prob.lambda());
        // A leftward ray exits the right-zone region immediately.
        let ray = RaySpec {
            j: 1,
            base: c64(0.0, 40.0),
            dir: c64(-1.0, 0.0),
            t_min: 10.0,
            t_max: 100.0,
        };
        assert!(matches!(
            decay_scan(&prob, FormulaId::PushforwardRight, &ray, 6, &params),
            Err(Error::RegionViolation(_))
        ));
    }

    #[test]
    fn zero_error_series_reports_infinite_exponent() {
        // Fit path exercised directly: a degenerate all-zero series.
        let rep = AsymptoticReport {
            formula: FormulaId::PushforwardRight,
            ray: "synthetic".into(),
            samples: vec![(10.0, 0.0), (20.0, 0.0), (40.0, 0.0)],
            fitted_exponent: f64::INFINITY,
            decreasing_fraction: 0.0,
        };
        assert!(rep.fitted_exponent.is_infinite());
    }
}
