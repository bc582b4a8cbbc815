//! Dense complex polynomials with the handful of operations the engine needs:
//! Horner evaluation, formal derivatives, arithmetic for building `p q' + p'`,
//! and a simultaneous root finder for small degrees.

use num_complex::Complex64;

/// Dense polynomial with complex coefficients in ascending degree order.
///
/// The coefficient vector never carries trailing zeros, so `coeffs.len()`
/// is `degree + 1` except for the zero polynomial, which is empty.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// (numerically zero) leading terms.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while let Some(c) = coeffs.last() {
            if c.norm() == 0.0 {
                coeffs.pop();
            } else {
                break;
            }
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Polynomial::new(vec![c])
    }

    /// Real-coefficient convenience constructor.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Complex64 {
        self.coeffs
            .last()
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Horner evaluation; exact for degree 0.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Formal derivative; degree drops by exactly one for degree >= 1.
    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        Polynomial::new(coeffs)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Polynomial::new(out)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, s: Complex64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Coefficients of `z -> self(z / alpha)`.
    pub fn compose_scale_inv(&self, alpha: Complex64) -> Polynomial {
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut pw = Complex64::new(1.0, 0.0);
        for &c in &self.coeffs {
            out.push(c * pw);
            pw /= alpha;
        }
        Polynomial::new(out)
    }

    /// All complex roots (with multiplicity) by the Aberth–Ehrlich
    /// simultaneous iteration, each polished with one Newton step.
    ///
    /// Intended for the tiny degrees this engine meets (m + d - 1); the
    /// stopping tolerance is relative to the local scale.
    pub fn roots(&self) -> Vec<Complex64> {
        let n = self.degree();
        if self.is_zero() || n == 0 {
            return Vec::new();
        }
        let deriv = self.derivative();
        let lead = self.leading_coeff();
        // Cauchy-style inclusion radius.
        let radius = 1.0
            + self
                .coeffs
                .iter()
                .take(n)
                .map(|c| (c / lead).norm())
                .fold(0.0, f64::max);
        let mut zs: Vec<Complex64> = (0..n)
            .map(|k| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
                Complex64::from_polar(0.7 * radius, theta)
            })
            .collect();
        for _ in 0..200 {
            let mut shift_max = 0.0f64;
            let prev = zs.clone();
            for k in 0..n {
                let z = prev[k];
                let pv = self.eval(z);
                let dv = deriv.eval(z);
                if pv.norm() == 0.0 {
                    continue;
                }
                let newton = if dv.norm() > 0.0 { pv / dv } else { pv };
                let mut rep = Complex64::new(0.0, 0.0);
                for (l, &other) in prev.iter().enumerate() {
                    if l != k {
                        let diff = z - other;
                        if diff.norm() > 1e-14 {
                            rep += diff.inv();
                        }
                    }
                }
                let denom = Complex64::new(1.0, 0.0) - newton * rep;
                let step = if denom.norm() > 1e-14 {
                    newton / denom
                } else {
                    newton
                };
                zs[k] = z - step;
                shift_max = shift_max.max(step.norm() / (1.0 + zs[k].norm()));
            }
            if shift_max < 1e-14 {
                break;
            }
        }
        // One Newton polish per root.
        for z in &mut zs {
            let dv = deriv.eval(*z);
            if dv.norm() > 1e-14 {
                *z -= self.eval(*z) / dv;
            }
        }
        zs.sort_by(|a, b| {
            a.re.partial_cmp(&b.re)
                .unwrap()
                .then(a.im.partial_cmp(&b.im).unwrap())
        });
        zs
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.norm() == 0.0 && self.coeffs.len() > 1 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "({:.6}{:+.6}i)", c.re, c.im)?;
            } else if k == 1 {
                write!(f, "({:.6}{:+.6}i)t", c.re, c.im)?;
            } else {
                write!(f, "({:.6}{:+.6}i)t^{}", c.re, c.im, k)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        // t^2 + 1 at i is a root; at 0 it is the constant term.
        let p = Polynomial::from_real(&[1.0, 0.0, 1.0]);
        assert!(p.eval(c(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(p.eval(c(0.0, 0.0)), c(1.0, 0.0));
        // 2t^3 - t at 2: 16 - 2 = 14.
        let p = Polynomial::from_real(&[0.0, -1.0, 0.0, 2.0]);
        assert_eq!(p.eval(c(2.0, 0.0)), c(14.0, 0.0));
    }

    #[test]
    fn derivative_degree_drops_by_one() {
        let p = Polynomial::from_real(&[3.0, 0.0, 5.0, 7.0]);
        assert_eq!(p.degree(), 3);
        assert_eq!(p.derivative().degree(), 2);
        assert_eq!(Polynomial::constant(c(2.0, 0.0)).derivative(), Polynomial::zero());
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 4.0 - 2.0
        };
        let p = Polynomial::new(vec![c(1.0, -0.5), c(0.0, 2.0), c(-3.0, 0.25), c(0.5, 0.5)]);
        let dp = p.derivative();
        for _ in 0..100 {
            let z = c(next(), next());
            let h = 1e-5;
            let fd = (p.eval(z + c(h, 0.0)) - p.eval(z - c(h, 0.0))) / c(2.0 * h, 0.0);
            let exact = dp.eval(z);
            assert!(
                (fd - exact).norm() <= 1e-6 * (1.0 + exact.norm()),
                "fd {fd} vs exact {exact} at {z}"
            );
        }
    }

    #[test]
    fn roots_of_small_polynomials() {
        // 4t: single root at 0.
        let p = Polynomial::from_real(&[0.0, 4.0]);
        let r = p.roots();
        assert_eq!(r.len(), 1);
        assert!(r[0].norm() < 1e-12);

        // t^3 + 8: cube roots of -8.
        let p = Polynomial::from_real(&[8.0, 0.0, 0.0, 1.0]);
        let r = p.roots();
        assert_eq!(r.len(), 3);
        for root in &r {
            assert!(p.eval(*root).norm() < 1e-9 * 8.0, "residual at {root}");
        }
    }

    #[test]
    fn roots_count_matches_degree() {
        let p = Polynomial::new(vec![c(1.0, 2.0), c(-0.3, 0.1), c(2.0, 0.0), c(0.0, 1.5), c(1.0, 0.0)]);
        let r = p.roots();
        assert_eq!(r.len(), p.degree());
        let scale: f64 = p.coeffs().iter().map(|x| x.norm()).sum();
        for root in &r {
            assert!(p.eval(*root).norm() <= 1e-9 * scale * (1.0 + root.norm().powi(p.degree() as i32)));
        }
    }
}
