//! Numerically safe evaluation of `g` and of the Newton map `f`.
//!
//! `g(z) = int_0^z p(t) e^{q(t)} dt + c` is computed by adaptive quadrature
//! along the straight segment (the integrand is entire, so the value is
//! path-independent). The scaled variant returns `g(z) e^{-q(z)}` in a
//! single pass, which keeps the Newton correction `g / g'` representable
//! deep into the region where `g` itself overflows.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::problem::Problem;
use crate::quad::{integrate_segment, E_MAX};

/// Default evaluation tolerance used when an operation does not take one.
pub const DEFAULT_TOL: f64 = 1e-12;

/// `|p(z)| < POLE_SCALE * (1 + |z|)^m` marks a pole of the Newton map.
pub const POLE_SCALE: f64 = 1e-300;

/// Adaptive quadrature of `p(t) e^{q(t)}` from 0 to `z`, plus `c`.
///
/// Fails with `OverflowRegion` when `Re q` exceeds the guard along the
/// segment; callers must then evaluate through the asymptotic forms.
pub fn eval_g(prob: &Problem, z: Complex64, tol: f64) -> Result<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let integral = integrate_segment(&prob.p, &prob.q, zero, zero, z, tol)?;
    Ok(integral + prob.c)
}

/// `g(z) * e^{-q(z)}` in one pass: the integrand is shifted by `q(z)` and
/// the constant becomes `c e^{-q(z)}`.
///
/// Representable whenever `Re(q(t) - q(z))` stays under the guard along the
/// segment and `Re q(z) >= -E_MAX` (otherwise the `c`-term overflows, which
/// is the genuine left-zone blowup).
pub fn eval_g_scaled(prob: &Problem, z: Complex64, tol: f64) -> Result<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let qz = prob.q.eval(z);
    let c_term = if prob.c.norm() == 0.0 {
        zero
    } else {
        if -qz.re > E_MAX {
            return Err(Error::OverflowRegion(-qz.re));
        }
        prob.c * (-qz).exp()
    };
    let integral = integrate_segment(&prob.p, &prob.q, qz, zero, z, tol)?;
    Ok(integral + c_term)
}

/// The pole guard: true when `|p(z)|` is small beyond underflow doubt.
pub fn is_pole(prob: &Problem, z: Complex64) -> bool {
    prob.p.eval(z).norm() < POLE_SCALE * (1.0 + z.norm()).powi(prob.m as i32)
}

/// One application of the Newton map, `f(z) = z - g(z) e^{-q(z)} / p(z)`.
///
/// The exponential is folded into the quadrature so the quotient
/// `g e^{-q}` is formed before the division by `p`.
pub fn eval_f(prob: &Problem, z: Complex64, tol: f64) -> Result<Complex64> {
    let pz = prob.p.eval(z);
    if pz.norm() < POLE_SCALE * (1.0 + z.norm()).powi(prob.m as i32) {
        return Err(Error::PoleHit(z));
    }
    let gsc = eval_g_scaled(prob, z, tol)?;
    Ok(z - gsc / pz)
}

/// The Newton correction `g(z) e^{-q(z)} / p(z)` alone (the orbit residual).
pub fn newton_correction(prob: &Problem, z: Complex64, tol: f64) -> Result<Complex64> {
    let pz = prob.p.eval(z);
    if pz.norm() < POLE_SCALE * (1.0 + z.norm()).powi(prob.m as i32) {
        return Err(Error::PoleHit(z));
    }
    Ok(eval_g_scaled(prob, z, tol)? / pz)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::problem::normalize;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Raw flipped-Gaussian problem (p = 1, q = -t^2, c as given);
    /// un-normalized evaluation is exercised on purpose.
    fn gauss_raw(c: f64) -> Problem {
        Problem::raw(
            Polynomial::from_real(&[1.0]),
            Polynomial::from_real(&[0.0, 0.0, -1.0]),
            c64(c, 0.0),
        )
        .unwrap()
    }

    #[test]
    fn g_at_origin_is_c() {
        let prob = gauss_raw(0.25);
        let v = eval_g(&prob, c64(0.0, 0.0), 1e-12).unwrap();
        assert_eq!(v, c64(0.25, 0.0));
    }

    #[test]
    fn g_matches_series_oracle() {
        let prob = gauss_raw(0.0);
        let v = eval_g(&prob, c64(1.0, 0.0), 1e-13).unwrap();
        assert!((v.re - 0.746824132812427).abs() < 1e-12);
    }

    #[test]
    fn f_on_flipped_gaussian() {
        // f(1) = 1 - 0.746824132812... * e.
        let prob = gauss_raw(0.0);
        let v = eval_f(&prob, c64(1.0, 0.0), 1e-13).unwrap();
        let expected = 1.0 - 0.746824132812427 * std::f64::consts::E;
        assert!((v.re - expected).abs() < 1e-10, "{v}");
        assert!((v.re - -1.0300785).abs() < 1e-6);
    }

    #[test]
    fn root_is_fixed_point() {
        // c = 0 makes the origin a zero of g with p(0) != 0.
        let prob = gauss_raw(0.0);
        let v = eval_f(&prob, c64(0.0, 0.0), 1e-12).unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn pole_is_reported() {
        // p = t vanishes at 0 while g(0) = c != 0.
        let prob = Problem::raw(
            Polynomial::from_real(&[0.0, 1.0]),
            Polynomial::from_real(&[0.0, 0.0, 1.0]),
            c64(1.0, 0.0),
        )
        .unwrap();
        assert!(matches!(
            eval_f(&prob, c64(0.0, 0.0), 1e-12),
            Err(Error::PoleHit(_))
        ));
    }

    #[test]
    fn path_independence() {
        // Straight segment vs a detour through z/2 + i.
        let prob = gauss_raw(0.2);
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 3.0 - 1.5
        };
        let zero = c64(0.0, 0.0);
        for _ in 0..20 {
            let z = c64(next(), next());
            let direct = eval_g(&prob, z, 1e-13).unwrap();
            let mid = z * 0.5 + c64(0.0, 1.0);
            let leg1 =
                integrate_segment(&prob.p, &prob.q, zero, zero, mid, 1e-13).unwrap();
            let leg2 = integrate_segment(&prob.p, &prob.q, zero, mid, z, 1e-13).unwrap();
            let detour = leg1 + leg2 + prob.c;
            assert!(
                (direct - detour).norm() < 1e-11 * (1.0 + direct.norm()),
                "direct {direct} vs detour {detour} at {z}"
            );
        }
    }

    #[test]
    fn scaled_evaluation_survives_large_exponent() {
        // Normalized flipped Gaussian: q = t^2. At z = 40 the plain g
        // overflows its tolerance scale, the scaled form does not.
        let (prob, _) = normalize(
            &Polynomial::from_real(&[1.0]),
            &Polynomial::from_real(&[0.0, 0.0, -1.0]),
            c64(0.3, 0.0),
        )
        .unwrap();
        let z = c64(40.0, 0.5);
        assert!(matches!(
            eval_g(&prob, z, 1e-12),
            Err(Error::OverflowRegion(_))
        ));
        let gsc = eval_g_scaled(&prob, z, 1e-12).unwrap();
        // g e^{-q} ~ p / q' = 2 / (2 z) = 1 / z out here.
        let expected = z.inv();
        assert!(
            (gsc - expected).norm() < 1e-2 * expected.norm(),
            "gsc {gsc} vs {expected}"
        );
    }

    #[test]
    fn f_agrees_with_log_derivative_differences() {
        // f(z) = z - 1 / (d/dz log g)(z) away from roots and poles.
        let prob = gauss_raw(0.35);
        let pts = [c64(0.9, 0.4), c64(-0.7, 0.8), c64(0.3, -0.6), c64(1.2, 0.1)];
        for &z in &pts {
            let h = 1e-5;
            let gp = (eval_g(&prob, z + c64(h, 0.0), 1e-13).unwrap()
                - eval_g(&prob, z - c64(h, 0.0), 1e-13).unwrap())
                / c64(2.0 * h, 0.0);
            let g = eval_g(&prob, z, 1e-13).unwrap();
            let expected = z - g / gp;
            let got = eval_f(&prob, z, 1e-13).unwrap();
            assert!(
                (got - expected).norm() <= 1e-5 * (1.0 + expected.norm()),
                "z {z}: {got} vs {expected}"
            );
        }
    }
}
