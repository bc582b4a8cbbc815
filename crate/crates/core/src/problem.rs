//! The normalized problem triple `(p, q, c)` and its construction.
//!
//! Every downstream operation consumes a [`Problem`]. Normalization applies
//! the conformal change of variables `z -> z / alpha` (making `q` monic) and
//! a global rescale of the integrand (giving `p` leading coefficient `d`);
//! both transformations leave the Newton dynamics conjugate to the original,
//! and the applied pair is recorded so results can be mapped back.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// The conformal scaling applied by [`normalize`].
///
/// `alpha` satisfies `alpha^d = a` (principal root of the original leading
/// coefficient of `q`); `b` is the scalar the integrand was multiplied by.
#[derive(Debug, Clone, PartialEq)]
pub struct ConformalMapRecord {
    pub alpha: Complex64,
    pub b: Complex64,
}

/// A problem triple with its derived constants.
///
/// `lambda = (d - 1 - m) / d` is kept as an exact integer fraction. The
/// sector cutoff radius and the sector constants are computed lazily by the
/// `sectors` and `asym` modules and cached here; both caches are write-once.
#[derive(Debug)]
pub struct Problem {
    pub p: Polynomial,
    pub q: Polynomial,
    pub c: Complex64,
    pub d: usize,
    pub m: usize,
    lambda_num: i64,
    lambda_den: i64,
    pub(crate) r: OnceLock<f64>,
    pub(crate) cj: Vec<OnceLock<Complex64>>,
}

impl Clone for Problem {
    fn clone(&self) -> Self {
        let r = OnceLock::new();
        if let Some(v) = self.r.get() {
            let _ = r.set(*v);
        }
        let cj = self
            .cj
            .iter()
            .map(|slot| {
                let s = OnceLock::new();
                if let Some(v) = slot.get() {
                    let _ = s.set(*v);
                }
                s
            })
            .collect();
        Problem {
            p: self.p.clone(),
            q: self.q.clone(),
            c: self.c,
            d: self.d,
            m: self.m,
            lambda_num: self.lambda_num,
            lambda_den: self.lambda_den,
            r,
            cj,
        }
    }
}

impl Problem {
    /// Wraps a triple without normalizing. Evaluation of `g` and `f` is
    /// well-defined on such problems; the sector machinery is not.
    pub fn raw(p: Polynomial, q: Polynomial, c: Complex64) -> Result<Self> {
        if q.degree() < 1 || q.is_zero() {
            return Err(Error::DegenerateInput("q must be non-constant".into()));
        }
        if p.is_zero() {
            return Err(Error::DegenerateInput(
                "p must not be identically zero".into(),
            ));
        }
        let d = q.degree();
        let m = p.degree();
        let cj = (0..d).map(|_| OnceLock::new()).collect();
        Ok(Problem {
            p,
            q,
            c,
            d,
            m,
            lambda_num: d as i64 - 1 - m as i64,
            lambda_den: d as i64,
            r: OnceLock::new(),
            cj,
        })
    }

    /// The exponent `(d - 1 - m) / d` as an exact fraction `(num, den)`.
    pub fn lambda_fraction(&self) -> (i64, i64) {
        (self.lambda_num, self.lambda_den)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda_num as f64 / self.lambda_den as f64
    }

    /// `d * lambda = d - 1 - m`, always an integer.
    pub fn d_lambda(&self) -> i64 {
        self.lambda_num
    }

    /// True when `q` is monic and `p` has leading coefficient `d`.
    pub fn is_normalized(&self) -> bool {
        let lq = self.q.leading_coeff();
        let lp = self.p.leading_coeff();
        (lq - Complex64::new(1.0, 0.0)).norm() < 1e-12
            && (lp - Complex64::new(self.d as f64, 0.0)).norm() < 1e-12 * self.d as f64
    }

    /// Largest |z| the plain complex representation can carry such that
    /// q(z) still fits in an f64.
    pub fn z_rep_max(&self) -> f64 {
        (10f64).powf(250.0 / self.d as f64)
    }

    /// The cached sector constant for 1-based sector index `j`, if computed.
    pub fn sector_constant_cached(&self, j: usize) -> Option<Complex64> {
        self.cj.get(j - 1).and_then(|s| s.get()).copied()
    }
}

/// Normalizes a raw triple: `q` becomes monic via `z -> z / alpha` with
/// `alpha` the principal d-th root of the original leading coefficient, and
/// the integrand is rescaled by `b` so that `p` has leading coefficient `d`.
/// `c` becomes `b * c`. Newton's method for the result is conjugate to the
/// original via `z -> alpha * z`.
pub fn normalize(
    p_raw: &Polynomial,
    q_raw: &Polynomial,
    c_raw: Complex64,
) -> Result<(Problem, ConformalMapRecord)> {
    if q_raw.degree() < 1 || q_raw.is_zero() {
        return Err(Error::DegenerateInput("q must be non-constant".into()));
    }
    if p_raw.is_zero() {
        return Err(Error::DegenerateInput(
            "p must not be identically zero".into(),
        ));
    }
    let d = q_raw.degree();
    let a = q_raw.leading_coeff();
    // Principal d-th root.
    let alpha = Complex64::from_polar(a.norm().powf(1.0 / d as f64), a.arg() / d as f64);

    let mut q = q_raw.compose_scale_inv(alpha);
    // g(z/alpha) has integrand (1/alpha) p(t/alpha) e^{q(t/alpha)}.
    let p_scaled = p_raw.compose_scale_inv(alpha).scale(alpha.inv());
    let b = Complex64::new(d as f64, 0.0) / p_scaled.leading_coeff();
    let mut p = p_scaled.scale(b);
    let c = b * c_raw;

    // Pin the two normalized leading coefficients exactly.
    let mut qc = q.coeffs().to_vec();
    *qc.last_mut().unwrap() = Complex64::new(1.0, 0.0);
    q = Polynomial::new(qc);
    let mut pc = p.coeffs().to_vec();
    *pc.last_mut().unwrap() = Complex64::new(d as f64, 0.0);
    p = Polynomial::new(pc);

    let prob = Problem::raw(p, q, c)?;
    Ok((prob, ConformalMapRecord { alpha, b }))
}

/// One coefficient in the ingestion schema: a plain number, an `[re, im]`
/// pair, or decimal strings in either position.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawNum {
    Num(f64),
    Str(String),
}

impl RawNum {
    fn value(&self) -> Result<f64> {
        match self {
            RawNum::Num(x) => Ok(*x),
            RawNum::Str(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::InvalidProblem(format!("bad decimal {s:?}: {e}"))),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawCoeff {
    Pair([RawNum; 2]),
    Single(RawNum),
}

impl RawCoeff {
    fn value(&self) -> Result<Complex64> {
        match self {
            RawCoeff::Pair([re, im]) => Ok(Complex64::new(re.value()?, im.value()?)),
            RawCoeff::Single(x) => Ok(Complex64::new(x.value()?, 0.0)),
        }
    }
}

#[derive(Debug, Deserialize)]
struct RawProblem {
    p: Vec<RawCoeff>,
    q: Vec<RawCoeff>,
    c: RawCoeff,
}

/// Parses the problem JSON schema
/// `{"p": [[re,im], ...], "q": [...], "c": [re,im]}` (coefficients ascending;
/// entries may be numbers or exact decimal strings) and returns the
/// normalized problem together with its conformal record.
pub fn problem_from_json(text: &str) -> Result<(Problem, ConformalMapRecord)> {
    let raw: RawProblem =
        serde_json::from_str(text).map_err(|e| Error::InvalidProblem(e.to_string()))?;
    let p = Polynomial::new(raw.p.iter().map(|c| c.value()).collect::<Result<_>>()?);
    let q = Polynomial::new(raw.q.iter().map(|c| c.value()).collect::<Result<_>>()?);
    let c = raw.c.value()?;
    normalize(&p, &q, c)
}
