//! Sample- and grid-based density estimation: the empirical layer that
//! probes how much of a shape the attracting basins fill, how the
//! unresolved remainder scales with budget, and whether the postsingular
//! orbits satisfy the convergence hypothesis.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::asym::all_sector_constants;
use crate::dynamics::{classify_orbit, step, OrbitParams, RawKind, RawOutcome};
use crate::error::Result;
use crate::problem::Problem;
use crate::roots::{critical_points, RootRegistry};
use crate::sampler::LowDiscrepancy2;

/// Sampling shape for density estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    Disk { center: Complex64, radius: f64 },
    Rect { x0: f64, y0: f64, x1: f64, y1: f64 },
}

impl Shape {
    pub fn area(&self) -> f64 {
        match self {
            Shape::Disk { radius, .. } => std::f64::consts::PI * radius * radius,
            Shape::Rect { x0, y0, x1, y1 } => (x1 - x0) * (y1 - y0),
        }
    }

    fn sample(&self, seq: &LowDiscrepancy2, n: u64) -> Complex64 {
        match *self {
            Shape::Disk { center, radius } => seq.point_in_disk(n, center, radius),
            Shape::Rect { x0, y0, x1, y1 } => seq.point_in_rect(n, x0, y0, x1, y1),
        }
    }
}

/// Density of the certified-Fatou set in a shape, from seeded
/// low-discrepancy samples.
#[derive(Debug, Clone)]
pub struct DensityReport {
    pub shape: Shape,
    pub n_samples: u64,
    pub fatou: u64,
    pub unresolved: u64,
    pub density: f64,
    /// 95% binomial confidence half-width.
    pub half_width: f64,
    pub seed: u64,
}

impl DensityReport {
    pub fn csv_header() -> &'static str {
        "center_re,center_im,r,n,fatou,unresolved,density,halfwidth"
    }

    pub fn csv_row(&self) -> String {
        let (cre, cim, r) = match self.shape {
            Shape::Disk { center, radius } => (center.re, center.im, radius),
            Shape::Rect { x0, y0, x1, y1 } => {
                ((x0 + x1) / 2.0, (y0 + y1) / 2.0, (x1 - x0).max(y1 - y0) / 2.0)
            }
        };
        format!(
            "{cre:.12e},{cim:.12e},{r:.12e},{},{},{},{:.12e},{:.12e}",
            self.n_samples, self.fatou, self.unresolved, self.density, self.half_width
        )
    }
}

/// True when the outcome certifies a Fatou point: a converged orbit, or a
/// cycle verified to attract.
fn is_fatou(prob: &Problem, out: &RawOutcome, params: &OrbitParams) -> bool {
    match out.kind {
        RawKind::Converged => true,
        RawKind::Cycle { period } => cycle_attracts(prob, out.final_point, period, params),
        _ => false,
    }
}

/// Multiplier of a detected cycle by central differences along it.
fn cycle_attracts(prob: &Problem, rep: Complex64, period: u32, params: &OrbitParams) -> bool {
    let h = 1e-6 * (1.0 + rep.norm());
    let mut mult = Complex64::new(1.0, 0.0);
    let mut z = rep;
    for _ in 0..period {
        let fp = match (
            step(prob, z + Complex64::new(h, 0.0), params),
            step(prob, z - Complex64::new(h, 0.0), params),
        ) {
            (Ok(a), Ok(b)) => (a - b) / (2.0 * h),
            _ => return false,
        };
        mult *= fp;
        z = match step(prob, z, params) {
            Ok(zn) => zn,
            Err(_) => return false,
        };
    }
    mult.norm() < 1.0
}

/// Estimates the Fatou density in a shape with `n` seeded low-discrepancy
/// samples, each classified by the orbit engine at the given budget.
/// Deterministic for a fixed seed; shards over disjoint index ranges merge
/// by count addition.
pub fn density(
    prob: &Problem,
    shape: Shape,
    n: u64,
    budget: u32,
    seed: u64,
    params: &OrbitParams,
) -> Result<DensityReport> {
    assert!(n >= 100, "density estimates need at least 100 samples");
    all_sector_constants(prob)?;
    let seq = LowDiscrepancy2::new(seed);
    let p = params.clone().with_budget(budget);
    let empty = RootRegistry::new();
    let (fatou, unresolved) = (0..n)
        .into_par_iter()
        .map(|i| {
            let z = shape.sample(&seq, i);
            let out = classify_orbit(prob, &empty, z, &p);
            (
                is_fatou(prob, &out, &p) as u64,
                matches!(out.kind, RawKind::Unresolved) as u64,
            )
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let density = fatou as f64 / n as f64;
    let half_width = 1.959963984540054 * (density * (1.0 - density) / n as f64).sqrt();
    Ok(DensityReport {
        shape,
        n_samples: n,
        fatou,
        unresolved,
        density,
        half_width,
        seed,
    })
}

/// Far-field thinness scan: minimum Fatou density over disks of radius
/// `r0` centered on a regular grid across the window.
#[derive(Debug, Clone)]
pub struct ThinnessScan {
    pub r0: f64,
    pub min_density: f64,
    pub rows: Vec<DensityReport>,
}

impl ThinnessScan {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(DensityReport::csv_header());
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.csv_row());
            out.push('\n');
        }
        out
    }
}

#[allow(clippy::too_many_arguments)]
pub fn thin_at_infinity_scan(
    prob: &Problem,
    r0: f64,
    window: (f64, f64, f64, f64),
    centers_per_side: usize,
    n_per_disk: u64,
    budget: u32,
    seed: u64,
    params: &OrbitParams,
) -> Result<ThinnessScan> {
    let (x0, y0, x1, y1) = window;
    let mut rows = Vec::new();
    let mut min_density = f64::INFINITY;
    for iy in 0..centers_per_side {
        for ix in 0..centers_per_side {
            let fx = (ix as f64 + 0.5) / centers_per_side as f64;
            let fy = (iy as f64 + 0.5) / centers_per_side as f64;
            let center = Complex64::new(x0 + (x1 - x0) * fx, y0 + (y1 - y0) * fy);
            let shape = Shape::Disk { center, radius: r0 };
            let sub_seed = seed
                .wrapping_mul(0x100000001b3)
                .wrapping_add((iy * centers_per_side + ix) as u64);
            let rep = density(prob, shape, n_per_disk, budget, sub_seed, params)?;
            min_density = min_density.min(rep.density);
            rows.push(rep);
        }
    }
    Ok(ThinnessScan {
        r0,
        min_density,
        rows,
    })
}

/// Verdict for one tracked singular orbit.
#[derive(Debug, Clone)]
pub struct SingularOrbit {
    pub critical_point: Complex64,
    pub kind: RawKind,
    pub iterations: u32,
    pub final_point: Complex64,
}

#[derive(Debug, Clone)]
pub struct PostsingularReport {
    pub orbits: Vec<SingularOrbit>,
    pub pass: bool,
}

/// Runs the orbit of each free critical point (zero of `g''` that is not a
/// zero of `g` or `g'`) and checks the convergence hypothesis: every such
/// orbit must reach a root or an attracting cycle.
pub fn postsingular_check(
    prob: &Problem,
    budget: u32,
    params: &OrbitParams,
) -> Result<PostsingularReport> {
    all_sector_constants(prob)?;
    let p = params.clone().with_budget(budget);
    let empty = RootRegistry::new();
    let mut orbits = Vec::new();
    let mut pass = true;
    for z in critical_points(prob) {
        let out = classify_orbit(prob, &empty, z, &p);
        let ok = is_fatou(prob, &out, &p);
        pass &= ok;
        orbits.push(SingularOrbit {
            critical_point: z,
            kind: out.kind,
            iterations: out.iterations,
            final_point: out.final_point,
        });
    }
    Ok(PostsingularReport { orbits, pass })
}

#[derive(Debug, Clone)]
pub struct UniformThinnessReport {
    pub r1: f64,
    pub min_density: f64,
    pub rows: Vec<DensityReport>,
}

/// Uniform thinness at the far superattracting fixed points: for registered
/// roots beyond modulus `r1`, estimates the Fatou density in disks touching
/// the root at the scales in `deltas`. Reports the minimum over all scanned
/// disks (adding rings can only lower it).
#[allow(clippy::too_many_arguments)]
pub fn uniform_thinness_check(
    prob: &Problem,
    registry: &RootRegistry,
    r1: f64,
    deltas: &[f64],
    ring_points: usize,
    n_per_disk: u64,
    max_roots: usize,
    budget: u32,
    seed: u64,
    params: &OrbitParams,
) -> Result<UniformThinnessReport> {
    let mut far_roots: Vec<Complex64> = registry
        .entries()
        .iter()
        .map(|e| e.location)
        .filter(|z| z.norm() > r1)
        .collect();
    far_roots.sort_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap());
    far_roots.truncate(max_roots);
    let mut rows = Vec::new();
    let mut min_density = f64::INFINITY;
    for (ri, z0) in far_roots.iter().enumerate() {
        for (di, &delta) in deltas.iter().enumerate() {
            for k in 0..ring_points {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / ring_points as f64;
                let z = z0 + Complex64::from_polar(delta, theta);
                let shape = Shape::Disk {
                    center: z,
                    radius: (z - z0).norm(),
                };
                let sub_seed = seed
                    .wrapping_mul(0x9e3779b97f4a7c15)
                    .wrapping_add((ri * 1000 + di * 100 + k) as u64);
                let rep = density(prob, shape, n_per_disk, budget, sub_seed, params)?;
                min_density = min_density.min(rep.density);
                rows.push(rep);
            }
        }
    }
    Ok(UniformThinnessReport {
        r1,
        min_density,
        rows,
    })
}

/// Full-grid classification of a window at one (resolution, budget) cell.
pub fn classify_grid(
    prob: &Problem,
    window: (f64, f64, f64, f64),
    resolution: usize,
    budget: u32,
    params: &OrbitParams,
) -> Result<Vec<RawOutcome>> {
    all_sector_constants(prob)?;
    let (x0, y0, x1, y1) = window;
    let p = params.clone().with_budget(budget);
    let empty = RootRegistry::new();
    Ok((0..resolution * resolution)
        .into_par_iter()
        .map(|idx| {
            let i = idx % resolution;
            let jrow = idx / resolution;
            let x = x0 + (x1 - x0) * (i as f64 + 0.5) / resolution as f64;
            let y = y1 - (y1 - y0) * (jrow as f64 + 0.5) / resolution as f64;
            classify_orbit(prob, &empty, Complex64::new(x, y), &p)
        })
        .collect())
}

/// Unresolved-fraction matrix over a resolution and budget grid.
#[derive(Debug, Clone)]
pub struct AreaStudy {
    pub window: (f64, f64, f64, f64),
    pub resolutions: Vec<usize>,
    pub budgets: Vec<u32>,
    /// `fractions[i][j]` is the unresolved fraction at
    /// `(resolutions[i], budgets[j])`.
    pub fractions: Vec<Vec<f64>>,
}

impl AreaStudy {
    /// The diagonal cells (resolution i paired with budget i).
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.resolutions.len().min(self.budgets.len()))
            .map(|i| self.fractions[i][i])
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("resolution,budget,unresolved_fraction\n");
        for (i, &res) in self.resolutions.iter().enumerate() {
            for (j, &b) in self.budgets.iter().enumerate() {
                out.push_str(&format!("{res},{b},{:.12e}\n", self.fractions[i][j]));
            }
        }
        out
    }
}

/// Classifies the full window grid at every (resolution, budget) pair and
/// reports unresolved fractions. Grids must be strictly increasing.
pub fn julia_area_study(
    prob: &Problem,
    window: (f64, f64, f64, f64),
    resolutions: &[usize],
    budgets: &[u32],
    params: &OrbitParams,
) -> Result<AreaStudy> {
    assert!(resolutions.windows(2).all(|p| p[0] < p[1]));
    assert!(budgets.windows(2).all(|p| p[0] < p[1]));
    let max_budget = *budgets.last().unwrap();
    let mut fractions = Vec::new();
    for &res in resolutions {
        // One pass at the largest budget; a verdict at a smaller budget is
        // the prefix of the same deterministic orbit, so the cell counts
        // follow from the recorded iteration counts.
        let grid = classify_grid(prob, window, res, max_budget, params)?;
        let mut row = Vec::new();
        for &budget in budgets {
            let unres = grid
                .iter()
                .filter(|o| {
                    matches!(o.kind, RawKind::Unresolved) || o.iterations > budget
                })
                .count();
            row.push(unres as f64 / grid.len() as f64);
        }
        fractions.push(row);
    }
    Ok(AreaStudy {
        window,
        resolutions: resolutions.to_vec(),
        budgets: budgets.to_vec(),
        fractions,
    })
}

/// Fatou density of a `w`-plane square, classified through the sector's
/// branch inverse (the pushforward picture of the basins).
pub fn pushforward_square_density(
    prob: &Problem,
    j: usize,
    center: Complex64,
    side: f64,
    n: u64,
    budget: u32,
    seed: u64,
    params: &OrbitParams,
) -> Result<DensityReport> {
    all_sector_constants(prob)?;
    let seq = LowDiscrepancy2::new(seed);
    let p = params.clone().with_budget(budget);
    let empty = RootRegistry::new();
    let (x0, y0) = (center.re - side / 2.0, center.im - side / 2.0);
    let (fatou, unresolved) = (0..n)
        .into_par_iter()
        .map(|i| {
            let w = seq.point_in_rect(i, x0, y0, x0 + side, y0 + side);
            match crate::sectors::inverse_branch(prob, j, w) {
                Ok(z) => {
                    let out = classify_orbit(prob, &empty, z, &p);
                    (
                        is_fatou(prob, &out, &p) as u64,
                        matches!(out.kind, RawKind::Unresolved) as u64,
                    )
                }
                Err(_) => (0, 0),
            }
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let dens = fatou as f64 / n as f64;
    Ok(DensityReport {
        shape: Shape::Rect {
            x0,
            y0,
            x1: x0 + side,
            y1: y0 + side,
        },
        n_samples: n,
        fatou,
        unresolved,
        density: dens,
        half_width: 1.959963984540054 * (dens * (1.0 - dens) / n as f64).sqrt(),
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::problem::normalize;
    use crate::roots::{register_zero, zero_anchor};
    use crate::sectors::inverse_branch;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn gauss_norm(c: f64) -> Problem {
        let (prob, _) = normalize(
            &Polynomial::from_real(&[1.0]),
            &Polynomial::from_real(&[0.0, 0.0, -1.0]),
            c64(c, 0.0),
        )
        .unwrap();
        prob
    }

    #[test]
    fn basin_disk_has_full_density() {
        let prob = gauss_norm(0.3);
        let mut registry = RootRegistry::new();
        let a = zero_anchor(&prob, 1, 20).unwrap();
        let seed = inverse_branch(&prob, 1, a.v).unwrap();
        let (_, z0) = register_zero(&prob, &mut registry, seed, 1e-12).unwrap();
        let r = crate::roots::basin_disk_radius(&prob, z0, 5.0).unwrap();
        let params = OrbitParams::defaults_for(&prob);
        let rep = density(
            &prob,
            Shape::Disk {
                center: z0,
                radius: 0.5 * r,
            },
            200,
            100,
            9,
            &params,
        )
        .unwrap();
        assert_eq!(rep.density, 1.0);
        assert_eq!(rep.unresolved, 0);
    }

    #[test]
    fn density_is_deterministic_per_seed() {
        let prob = gauss_norm(0.3);
        let params = OrbitParams::defaults_for(&prob);
        let shape = Shape::Disk {
            center: c64(0.0, 0.0),
            radius: 2.0,
        };
        let a = density(&prob, shape, 300, 60, 1234, &params).unwrap();
        let b = density(&prob, shape, 300, 60, 1234, &params).unwrap();
        assert_eq!(a.fatou, b.fatou);
        assert_eq!(a.unresolved, b.unresolved);
        assert_eq!(a.density.to_bits(), b.density.to_bits());
        let c = density(&prob, shape, 300, 60, 4321, &params).unwrap();
        assert!(c.fatou != a.fatou || c.unresolved != a.unresolved || c.density != a.density);
    }

    #[test]
    fn center_disk_density_honest_band() {
        // The central disk mixes basins with the escape channels; at this
        // budget roughly half the area certifies as Fatou. The channel
        // share never certifies, so a claim near 1 would be dishonest.
        let prob = gauss_norm(0.3);
        let params = OrbitParams::defaults_for(&prob);
        let rep = density(
            &prob,
            Shape::Disk {
                center: c64(0.0, 0.0),
                radius: 4.0,
            },
            2000,
            200,
            7,
            &params,
        )
        .unwrap();
        assert!(
            rep.density > 0.35 && rep.density < 0.75,
            "density {}",
            rep.density
        );
        assert!(rep.unresolved as f64 / rep.n_samples as f64 <= 0.45);
    }

    #[test]
    fn postsingular_check_on_gaussian() {
        let prob = gauss_norm(0.3);
        let params = OrbitParams::defaults_for(&prob);
        let rep = postsingular_check(&prob, 200, &params).unwrap();
        assert_eq!(rep.orbits.len(), 1);
        assert!(rep.pass, "orbit ended as {:?}", rep.orbits[0].kind);

        // c = 0: the candidate is itself a zero of g: vacuous pass.
        let prob0 = gauss_norm(0.0);
        let rep0 = postsingular_check(&prob0, 200, &params).unwrap();
        assert!(rep0.orbits.is_empty());
        assert!(rep0.pass);

        // Budget 1 cannot resolve the critical orbit: honest FAIL.
        let rep1 = postsingular_check(&prob, 1, &params).unwrap();
        assert!(!rep1.pass);
        assert!(matches!(rep1.orbits[0].kind, RawKind::Unresolved));
    }

    #[test]
    fn area_study_monotone_in_budget() {
        let prob = gauss_norm(0.3);
        let params = OrbitParams::defaults_for(&prob);
        let study = julia_area_study(
            &prob,
            (-4.0, -4.0, 4.0, 4.0),
            &[48],
            &[40, 80],
            &params,
        )
        .unwrap();
        assert!(study.fractions[0][1] <= study.fractions[0][0]);
    }

    #[test]
    fn area_study_all_zero_inside_basin() {
        let prob = gauss_norm(0.3);
        let mut registry = RootRegistry::new();
        let a = zero_anchor(&prob, 1, 20).unwrap();
        let seed = inverse_branch(&prob, 1, a.v).unwrap();
        let (_, z0) = register_zero(&prob, &mut registry, seed, 1e-12).unwrap();
        let r = crate::roots::basin_disk_radius(&prob, z0, 5.0).unwrap();
        let params = OrbitParams::defaults_for(&prob);
        let s = 0.35 * r;
        let study = julia_area_study(
            &prob,
            (z0.re - s, z0.im - s, z0.re + s, z0.im + s),
            &[16, 24],
            &[30, 60],
            &params,
        )
        .unwrap();
        for row in &study.fractions {
            for &f in row {
                assert_eq!(f, 0.0);
            }
        }
    }

    #[test]
    fn nested_disk_consistency() {
        let prob = gauss_norm(0.3);
        let params = OrbitParams::defaults_for(&prob);
        let inner = Shape::Disk {
            center: c64(-0.3, 0.0),
            radius: 0.5,
        };
        let outer = Shape::Disk {
            center: c64(-0.3, 0.0),
            radius: 1.0,
        };
        let di = density(&prob, inner, 600, 120, 5, &params).unwrap();
        let do_ = density(&prob, outer, 600, 120, 5, &params).unwrap();
        let lhs = di.density * inner.area() / outer.area();
        let rhs = do_.density * (1.0 + 3.0 * do_.half_width);
        assert!(lhs <= rhs + 1e-12, "{lhs} vs {rhs}");
    }

    #[test]
    fn pushforward_squares_have_positive_density() {
        // Squares along the anchor belt in the w-plane report positive
        // Fatou density once the side passes the belt spacing.
        let prob = gauss_norm(0.3);
        let params = OrbitParams::defaults_for(&prob);
        for center in [c64(4.0, 40.0), c64(10.0, 64.0)] {
            let rep =
                pushforward_square_density(&prob, 1, center, 8.0, 400, 120, 3, &params).unwrap();
            assert!(rep.density > 0.0, "square at {center}");
        }
    }
}
