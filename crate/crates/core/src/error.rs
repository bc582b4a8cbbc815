//! Error types shared across the engine.

use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by evaluation, inversion and localization routines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// The exponential factor leaves the representable range; the caller
    /// must switch to an asymptotic evaluation path.
    #[error("exponent {0} exceeds the overflow guard; use asymptotic evaluation")]
    OverflowRegion(f64),

    /// Adaptive subdivision hit the depth cap before meeting the tolerance.
    #[error("quadrature tolerance not met (error estimate {err:.3e}, requested {tol:.3e})")]
    ToleranceNotMet { err: f64, tol: f64 },

    /// `p` vanishes at the evaluation point, so the Newton map has a pole
    /// there unless the numerator vanishes as well.
    #[error("|p(z)| below pole threshold at z = {0}")]
    PoleHit(Complex64),

    /// The argument is not in the slit region where the branch inverses live.
    #[error("w = {0} is not in the slit region G")]
    NotInG(Complex64),

    /// The branch inversion left its annulus even with damped steps.
    #[error("branch inversion escaped the seed annulus for w = {0}")]
    SeedEscape(Complex64),

    /// Anchor index too close to the real axis for the boundary curve.
    #[error("anchor height {y:.4} below the curve domain bound {bound:.4}")]
    AnchorTooLow { y: f64, bound: f64 },

    /// The guaranteed-basin formula only applies to large-modulus roots.
    #[error("|z0| = {0:.4} is below the configured basin-formula threshold")]
    BelowThreshold(f64),

    /// An iterative refinement ran out of iterations.
    #[error("no convergence after {0} iterations")]
    MaxIterations(u32),

    /// Refinement wandered too far from its seed to be trusted.
    #[error("refined iterate moved {0:.4} away from the seed")]
    DivergedFromSeed(f64),

    /// Sector-constant estimation did not stabilize before the probe cap;
    /// this is the numerical signature of a vanishing sector constant,
    /// which the verified family excludes.
    #[error("sector constant for sector {sector} did not stabilize by X = {x_cap}; Baker domain likely")]
    NonConvergence { sector: usize, x_cap: f64 },

    /// A sector constant is numerically zero: the run must abort.
    #[error("sector constant c_{sector} is numerically zero (|c| = {magnitude:.3e}); Baker domain likely")]
    CjNearZero { sector: usize, magnitude: f64 },

    /// The pullback solution fell outside its guaranteed disk.
    #[error("pullback preimage {found} not in D({center}, {radius:.4})")]
    ContainmentViolated {
        found: Complex64,
        center: Complex64,
        radius: f64,
    },

    /// A scan ray left the validity region of the formula under test.
    #[error("scan ray leaves the validity region at w = {0}")]
    RegionViolation(Complex64),

    /// No evaluation path produces a representable value.
    #[error("no representable evaluation path at this point")]
    NumericLoss,

    /// Degenerate problem input (constant q, identically zero p, ...).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// Malformed problem description (JSON schema violations and the like).
    #[error("invalid problem description: {0}")]
    InvalidProblem(String),
}

pub type Result<T> = std::result::Result<T, Error>;
