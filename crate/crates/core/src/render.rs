//! Basin images in the `z`- and `w`-planes: per-pixel orbit classification
//! with a deterministic palette keyed to the canonical registry order, and
//! byte-exact PPM encoding for golden comparisons.

use num_complex::Complex64;

use crate::dynamics::{OrbitParams, RawKind};
use crate::error::{Error, Result};
use crate::measure::classify_grid;
use crate::problem::Problem;
use crate::roots::{RootId, RootRegistry};
use crate::sectors::{choose_r, curve_x, RegionSpec};

/// Pixel classification carried by an image buffer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PixelClass {
    Root(RootId),
    Cycle,
    Pole,
    Escaped,
    Unresolved,
    Overlay,
}

#[derive(Debug, Clone, Copy)]
pub struct Pixel {
    pub class: PixelClass,
    pub iterations: u32,
}

/// Classified pixel grid over a complex-plane window, row-major from the
/// top scanline.
#[derive(Debug, Clone)]
pub struct ImageBuffer {
    pub width: usize,
    pub height: usize,
    pub window: (f64, f64, f64, f64),
    pub budget: u32,
    pub pixels: Vec<Pixel>,
}

/// Fixed 16-color wheel; roots are colored by canonical registry index.
const PALETTE: [[u8; 3]; 16] = [
    [230, 70, 60],
    [60, 140, 230],
    [70, 190, 90],
    [235, 170, 50],
    [150, 80, 200],
    [60, 200, 200],
    [230, 110, 180],
    [160, 200, 60],
    [120, 100, 240],
    [240, 130, 80],
    [50, 170, 140],
    [200, 80, 90],
    [90, 120, 180],
    [180, 160, 90],
    [110, 180, 230],
    [190, 110, 120],
];

impl ImageBuffer {
    /// RGB bytes, top scanline first.
    pub fn to_rgb(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.pixels.len() * 3);
        let denom = (1.0 + self.budget as f64).ln();
        for px in &self.pixels {
            let rgb = match px.class {
                PixelClass::Root(id) => {
                    let base = PALETTE[id.0 % PALETTE.len()];
                    let t = (1.0 + px.iterations as f64).ln() / denom;
                    let shade = 1.0 - 0.65 * t.min(1.0);
                    [
                        (base[0] as f64 * shade) as u8,
                        (base[1] as f64 * shade) as u8,
                        (base[2] as f64 * shade) as u8,
                    ]
                }
                PixelClass::Cycle => [200, 200, 200],
                PixelClass::Pole => [255, 255, 255],
                PixelClass::Escaped => [90, 90, 90],
                PixelClass::Unresolved => [0, 0, 0],
                PixelClass::Overlay => [255, 255, 255],
            };
            out.extend_from_slice(&rgb);
        }
        out
    }

    /// Binary PPM (P6) encoding; bit-exact across runs.
    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.to_rgb());
        out
    }

    /// Fraction of pixels rendered black (unresolved).
    pub fn unresolved_fraction(&self) -> f64 {
        let n = self
            .pixels
            .iter()
            .filter(|p| matches!(p.class, PixelClass::Unresolved))
            .count();
        n as f64 / self.pixels.len() as f64
    }
}

/// Converts grid outcomes into pixels, registering converged roots in
/// pixel order and resolving ids against the final registry so the palette
/// assignment is deterministic.
fn assign_pixels(
    prob: &Problem,
    registry: &mut RootRegistry,
    outcomes: &[crate::dynamics::RawOutcome],
) -> Vec<Pixel> {
    for out in outcomes {
        if matches!(out.kind, RawKind::Converged) {
            let residual = crate::eval::eval_g_scaled(prob, out.final_point, 1e-13)
                .map(|g| g.norm())
                .unwrap_or(f64::NAN);
            registry.match_or_insert(out.final_point, residual);
        }
    }
    outcomes
        .iter()
        .map(|out| {
            let class = match out.kind {
                RawKind::Converged => match registry.match_point(out.final_point) {
                    Some(id) => PixelClass::Root(id),
                    None => PixelClass::Unresolved,
                },
                RawKind::Cycle { .. } => PixelClass::Cycle,
                RawKind::Escaped => PixelClass::Escaped,
                RawKind::PoleHit => PixelClass::Pole,
                RawKind::Unresolved => PixelClass::Unresolved,
            };
            Pixel {
                class,
                iterations: out.iterations,
            }
        })
        .collect()
}

/// Renders the basin image of a `z`-plane window at pixel centers.
pub fn render_basins(
    prob: &Problem,
    registry: &mut RootRegistry,
    window: (f64, f64, f64, f64),
    resolution: usize,
    budget: u32,
    params: &OrbitParams,
) -> Result<ImageBuffer> {
    let (x0, y0, x1, y1) = window;
    assert!(x1 > x0 && y1 > y0, "window must have positive area");
    let outcomes = classify_grid(prob, window, resolution, budget, params)?;
    let pixels = assign_pixels(prob, registry, &outcomes);
    Ok(ImageBuffer {
        width: resolution,
        height: resolution,
        window,
        budget,
        pixels,
    })
}

/// Renders the pushforward picture: pixels are `w`-plane points classified
/// through the branch inverse of sector `j`, with the partition curves
/// overlaid as 1-pixel polylines.
///
/// The window must avoid the slit and the cutoff disk.
pub fn render_wplane(
    prob: &Problem,
    registry: &mut RootRegistry,
    j: usize,
    window: (f64, f64, f64, f64),
    resolution: usize,
    budget: u32,
    params: &OrbitParams,
) -> Result<ImageBuffer> {
    let (x0, y0, x1, y1) = window;
    assert!(x1 > x0 && y1 > y0, "window must have positive area");
    let r = choose_r(prob);
    let touches_slit = y0 <= 0.0 && y1 >= 0.0 && x1 >= 0.0;
    let corner_min = corners_min_norm(window);
    if touches_slit || corner_min <= r {
        return Err(Error::NotInG(Complex64::new(x0, y0)));
    }
    let cj = crate::asym::sector_constant(prob, j)?;
    let lam = prob.lambda();

    use rayon::prelude::*;
    let p = params.clone().with_budget(budget);
    let empty = RootRegistry::new();
    let outcomes: Vec<crate::dynamics::RawOutcome> = (0..resolution * resolution)
        .into_par_iter()
        .map(|idx| {
            let i = idx % resolution;
            let jrow = idx / resolution;
            let x = x0 + (x1 - x0) * (i as f64 + 0.5) / resolution as f64;
            let y = y1 - (y1 - y0) * (jrow as f64 + 0.5) / resolution as f64;
            let w = Complex64::new(x, y);
            match crate::sectors::inverse_branch(prob, j, w) {
                Ok(z) => crate::dynamics::classify_orbit(prob, &empty, z, &p),
                Err(_) => crate::dynamics::RawOutcome {
                    kind: RawKind::Unresolved,
                    final_point: w,
                    iterations: 0,
                },
            }
        })
        .collect();
    let mut pixels = assign_pixels(prob, registry, &outcomes);

    // Overlay the partition curves.
    let curves = [
        (lam, 1.0 / cj.norm()),
        (lam - 1.0, params.zone.alpha1 / cj.norm()),
        (lam - 1.0, params.zone.beta2 / cj.norm()),
    ];
    for jrow in 0..resolution {
        let y = y1 - (y1 - y0) * (jrow as f64 + 0.5) / resolution as f64;
        for (mu, alpha) in curves {
            if y.abs() < 2.0 * mu.abs() {
                continue;
            }
            let x = curve_x(mu, alpha, y);
            if x >= x0 && x < x1 {
                let i = ((x - x0) / (x1 - x0) * resolution as f64).floor() as usize;
                if i < resolution {
                    pixels[jrow * resolution + i].class = PixelClass::Overlay;
                }
            }
        }
    }

    Ok(ImageBuffer {
        width: resolution,
        height: resolution,
        window,
        budget,
        pixels,
    })
}

fn corners_min_norm(window: (f64, f64, f64, f64)) -> f64 {
    let (x0, y0, x1, y1) = window;
    // Closest approach of the rectangle to the origin.
    let dx = if x0 > 0.0 {
        x0
    } else if x1 < 0.0 {
        -x1
    } else {
        0.0
    };
    let dy = if y0 > 0.0 {
        y0
    } else if y1 < 0.0 {
        -y1
    } else {
        0.0
    };
    (dx * dx + dy * dy).sqrt()
}

/// Pixel index of a `w`-plane point in a window (for overlay checks).
pub fn pixel_of(
    window: (f64, f64, f64, f64),
    resolution: usize,
    w: Complex64,
) -> Option<(usize, usize)> {
    let (x0, y0, x1, y1) = window;
    if w.re < x0 || w.re >= x1 || w.im < y0 || w.im >= y1 {
        return None;
    }
    let i = ((w.re - x0) / (x1 - x0) * resolution as f64).floor() as usize;
    let jrow = ((y1 - w.im) / (y1 - y0) * resolution as f64).floor() as usize;
    Some((i.min(resolution - 1), jrow.min(resolution - 1)))
}

/// A `w`-plane region spec for the anchor curve of sector `j` (overlay and
/// anchor checks share it).
pub fn anchor_spec(prob: &Problem, j: usize, nu: f64) -> Result<RegionSpec> {
    let cj = crate::asym::sector_constant(prob, j)?;
    Ok(RegionSpec::new(prob.lambda(), 1.0 / cj.norm(), nu))
}
