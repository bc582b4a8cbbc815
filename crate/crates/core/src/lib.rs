//! Numerical engine for Newton maps of `g(z) = int_0^z p e^q dt + c`:
//! direct and asymptotic evaluation, the `w = q(z)` sector machinery, zero
//! localization, orbit classification, and density estimation.

pub mod asym;
pub mod dynamics;
pub mod error;
pub mod eval;
pub mod measure;
pub mod poly;
pub mod problem;
pub mod quad;
pub mod render;
pub mod roots;
pub mod sampler;
pub mod sectors;

pub use error::{Error, Result};
pub use eval::{eval_f, eval_g, eval_g_scaled, DEFAULT_TOL};
pub use poly::Polynomial;
pub use problem::{normalize, problem_from_json, ConformalMapRecord, Problem};
pub use sectors::{RegionSpec, Zone, ZoneParams};

pub use asym::AsymptoticReport;
pub use dynamics::{OrbitParams, OrbitResult, PullbackTrace, Verdict};
pub use measure::{AreaStudy, DensityReport};
pub use render::ImageBuffer;
pub use roots::{RootId, RootRegistry, ZeroAnchor};
