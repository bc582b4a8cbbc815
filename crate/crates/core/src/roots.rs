//! Zero localization: the `w`-plane anchor lattice that predicts where the
//! zeros of `g` sit, Newton refinement onto actual zeros, the deterministic
//! root registry, guaranteed basin disks, and the critical points of the
//! Newton map.

use num_complex::Complex64;

use crate::asym::sector_constant;
use crate::error::{Error, Result};
use crate::eval::{eval_g_scaled, newton_correction};
use crate::poly::Polynomial;
use crate::problem::Problem;
use crate::sectors::{curve_x, RegionSpec};

/// Registry matching radius scale: two points within
/// `MATCH_RADIUS_SCALE * (1 + |z|)` are the same root.
pub const MATCH_RADIUS_SCALE: f64 = 1e-6;

/// Default modulus threshold below which the asymptotic basin-disk formula
/// is not applied.
pub const BASIN_R1_DEFAULT: f64 = 10.0;

/// Stable handle into the registry's canonically sorted root list.
///
/// Handles index the sorted order; inserting a new root can shift the
/// handles of roots sorting after it, so long-lived flows register all
/// roots before classification or re-match afterwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootId(pub usize);

#[derive(Debug, Clone)]
pub struct RootEntry {
    pub location: Complex64,
    /// Scaled residual `|g e^{-q}|` at the registered location.
    pub residual: f64,
    /// Set when another candidate landed suspiciously close (within twice
    /// the matching radius), hinting at a multiple zero.
    pub multiple: bool,
}

/// Ordered collection of refined zeros, sorted by `(Re, Im)` so that
/// iteration order, CSV output and palette assignment are deterministic.
#[derive(Debug, Clone, Default)]
pub struct RootRegistry {
    entries: Vec<RootEntry>,
}

fn canonical_less(a: Complex64, b: Complex64) -> bool {
    (a.re, a.im) < (b.re, b.im)
}

impl RootRegistry {
    pub fn new() -> Self {
        RootRegistry::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[RootEntry] {
        &self.entries
    }

    pub fn get(&self, id: RootId) -> Option<&RootEntry> {
        self.entries.get(id.0)
    }

    pub fn matching_radius(z: Complex64) -> f64 {
        MATCH_RADIUS_SCALE * (1.0 + z.norm())
    }

    /// Finds the registered root matching `z` within the matching radius.
    pub fn match_point(&self, z: Complex64) -> Option<RootId> {
        let r = Self::matching_radius(z);
        // Entries are sorted by re; restrict to the re-window first.
        let lo = self.entries.partition_point(|e| e.location.re < z.re - r);
        let mut best: Option<(usize, f64)> = None;
        for (off, e) in self.entries[lo..].iter().enumerate() {
            if e.location.re > z.re + r {
                break;
            }
            let dist = (e.location - z).norm();
            if dist <= r {
                match best {
                    Some((_, d)) if d <= dist => {}
                    _ => best = Some((lo + off, dist)),
                }
            }
        }
        best.map(|(i, _)| RootId(i))
    }

    /// Matches or inserts, returning the root's handle. Candidates within
    /// twice the matching radius of an existing root are merged into it and
    /// both are flagged as possibly multiple.
    pub fn match_or_insert(&mut self, z: Complex64, residual: f64) -> RootId {
        if let Some(id) = self.match_point(z) {
            let e = &mut self.entries[id.0];
            if residual < e.residual {
                e.residual = residual;
            }
            return id;
        }
        // Near-collision check at twice the radius.
        let r2 = 2.0 * Self::matching_radius(z);
        let lo = self.entries.partition_point(|e| e.location.re < z.re - r2);
        for e in self.entries[lo..].iter_mut() {
            if e.location.re > z.re + r2 {
                break;
            }
            if (e.location - z).norm() <= r2 {
                e.multiple = true;
                let loc = e.location;
                let id = self
                    .match_point(loc)
                    .expect("entry must match its own location");
                return id;
            }
        }
        let pos = self
            .entries
            .partition_point(|e| canonical_less(e.location, z));
        self.entries.insert(
            pos,
            RootEntry {
                location: z,
                residual,
                multiple: false,
            },
        );
        RootId(pos)
    }

    /// Associative merge: union of the two root sets, deduplicated by the
    /// matching radius, canonically re-sorted.
    pub fn merge(mut self, other: &RootRegistry) -> RootRegistry {
        for e in &other.entries {
            self.match_or_insert(e.location, e.residual);
        }
        self
    }
}

/// A predicted zero location on the unit-magnitude boundary curve.
#[derive(Debug, Clone, Copy)]
pub struct ZeroAnchor {
    pub j: usize,
    pub k: i64,
    pub v: Complex64,
}

/// The anchor height lattice: the imaginary parts at which the curve
/// carries predicted zeros for sector `j`.
pub fn anchor_height(prob: &Problem, j: usize, n: i64) -> Result<f64> {
    let cj = sector_constant(prob, j)?;
    let lam = prob.lambda();
    let base = (-cj).arg();
    let pi = std::f64::consts::PI;
    Ok(if n >= 0 {
        base + lam * (pi / 2.0 + 2.0 * pi * (j as f64 - 1.0)) + 2.0 * pi * n as f64
    } else {
        base + lam * (-pi / 2.0 + 2.0 * pi * j as f64) + 2.0 * pi * n as f64
    })
}

/// The full anchor: height from the lattice, abscissa from the boundary
/// curve of `H(lambda, 1/|c_j|, *)`. Heights inside the curve's excluded
/// strip are rejected.
pub fn zero_anchor(prob: &Problem, j: usize, k: i64) -> Result<ZeroAnchor> {
    let cj = sector_constant(prob, j)?;
    let lam = prob.lambda();
    let y = anchor_height(prob, j, k)?;
    if y.abs() < 2.0 * lam.abs() {
        return Err(Error::AnchorTooLow {
            y,
            bound: 2.0 * lam.abs(),
        });
    }
    let x = curve_x(lam, 1.0 / cj.norm(), y);
    Ok(ZeroAnchor {
        j,
        k,
        v: Complex64::new(x, y),
    })
}

/// Damped Newton refinement of a zero of `g` from a seed, with the
/// correction `g e^{-q} / p` computed in scaled form. The refined zero is
/// not registered here; use [`register_zero`] for that.
pub fn refine_zero(prob: &Problem, guess: Complex64, tol: f64) -> Result<Complex64> {
    let mut z = guess;
    for _ in 0..50 {
        let delta = newton_correction(prob, z, tol.min(1e-12))?;
        if delta.norm() <= tol * (1.0 + z.norm()) {
            return Ok(z);
        }
        // A long correction far from the zero gets damped once.
        let step = if delta.norm() > 1.0 { delta * 0.5 } else { delta };
        z -= step;
        if (z - guess).norm() > 2.0 {
            return Err(Error::DivergedFromSeed((z - guess).norm()));
        }
    }
    Err(Error::MaxIterations(50))
}

/// Refines and registers, returning the handle and the refined location.
pub fn register_zero(
    prob: &Problem,
    registry: &mut RootRegistry,
    guess: Complex64,
    tol: f64,
) -> Result<(RootId, Complex64)> {
    let z = refine_zero(prob, guess, tol)?;
    let residual = eval_g_scaled(prob, z, 1e-13)
        .map(|g| g.norm())
        .unwrap_or(f64::NAN);
    Ok((registry.match_or_insert(z, residual), z))
}

/// The guaranteed immediate-basin radius `1 / (3 d |z0|^{d-1})` for a
/// large-modulus superattracting fixed point.
pub fn basin_disk_radius(prob: &Problem, z0: Complex64, r1_threshold: f64) -> Result<f64> {
    let n = z0.norm();
    if n <= r1_threshold {
        return Err(Error::BelowThreshold(n));
    }
    Ok(1.0 / (3.0 * prob.d as f64 * n.powi(prob.d as i32 - 1)))
}

/// The boundary-curve spec whose curve carries the zero anchors of sector
/// `j`.
pub fn anchor_curve_spec(prob: &Problem, j: usize, nu: f64) -> Result<RegionSpec> {
    let cj = sector_constant(prob, j)?;
    Ok(RegionSpec::new(prob.lambda(), 1.0 / cj.norm(), nu))
}

/// Critical points of the Newton map other than the superattracting fixed
/// points: the zeros of `p q' + p'` that are zeros of neither `g` nor `p`.
pub fn critical_points(prob: &Problem) -> Vec<Complex64> {
    let b = prob.p.mul(&prob.q.derivative()).add(&prob.p.derivative());
    let mut out = Vec::new();
    for z in b.roots() {
        if prob.p.eval(z).norm() <= 1e-9 * (1.0 + z.norm()).powi(prob.m as i32) {
            continue; // zero of g'
        }
        match eval_g_scaled(prob, z, 1e-12) {
            Ok(g) if g.norm() <= 1e-9 => continue, // superattracting fixed point
            Ok(_) => out.push(z),
            // Not evaluable here means certainly not a zero of g.
            Err(_) => out.push(z),
        }
    }
    out.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    out
}

/// The polynomial whose roots are scanned by [`critical_points`].
pub fn second_derivative_factor(prob: &Problem) -> Polynomial {
    prob.p.mul(&prob.q.derivative()).add(&prob.p.derivative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::eval_f;
    use crate::problem::normalize;
    use crate::sectors::{curve_residual, inverse_branch};

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
    fn anchor_height_lattice() {
        let prob = gauss_norm(0.3);
        // j = 1, k = 0: arg(-c_1) + lambda pi / 2.
        let c1 = sector_constant(&prob, 1).unwrap();
        let want = (-c1).arg() + 0.5 * std::f64::consts::PI / 2.0;
        assert!((anchor_height(&prob, 1, 0).unwrap() - want).abs() < 1e-14);
        // Consecutive anchors are spaced exactly 2 pi.
        for j in 1..=2 {
            for k in [-7i64, -2, 0, 3, 9] {
                let a = anchor_height(&prob, j, k).unwrap();
                let b = anchor_height(&prob, j, k + 1).unwrap();
                assert!((b - a - 2.0 * std::f64::consts::PI).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn anchor_sits_on_curve() {
        let prob = gauss_norm(0.3);
        let spec = anchor_curve_spec(&prob, 1, 2.0).unwrap();
        for k in [2i64, 5, 20, -5, -20] {
            let a = zero_anchor(&prob, 1, k).unwrap();
            assert!(curve_residual(a.v, &spec).abs() <= 1e-10);
            // The curve identity |e^{-v}| = |v|^{-lambda} / |c_j|.
            let cj = sector_constant(&prob, 1).unwrap();
            let lhs = (-a.v).exp().norm();
            let rhs = a.v.norm().powf(-prob.lambda()) / cj.norm();
            assert!((lhs / rhs - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn anchor_too_low_rejected() {
        let prob = gauss_norm(0.3);
        // j = 1, k = 0 has height -pi/4, inside the excluded strip for
        // lambda = 1/2.
        assert!(matches!(
            zero_anchor(&prob, 1, 0),
            Err(Error::AnchorTooLow { .. })
        ));
    }

    #[test]
    fn refine_from_origin_seed() {
        // c = 0: the origin is a zero of g.
        let prob = gauss_norm(0.0);
        let z = refine_zero(&prob, c64(0.1, 0.0), 1e-12).unwrap();
        assert!(z.norm() < 1e-10);
    }

    #[test]
    fn refined_roots_follow_anchors() {
        let prob = gauss_norm(0.3);
        let mut registry = RootRegistry::new();
        let mut errs = Vec::new();
        for k in [5i64, 10, 20, 40] {
            let a = zero_anchor(&prob, 1, k).unwrap();
            let seed = inverse_branch(&prob, 1, a.v).unwrap();
            let (_, z) = register_zero(&prob, &mut registry, seed, 1e-12).unwrap();
            let err = (prob.q.eval(z) - a.v).norm();
            errs.push(err);
            // Termination contract: the scaled residual is tiny.
            let resid = eval_g_scaled(&prob, z, 1e-13).unwrap().norm();
            assert!(resid <= 1e-10 * prob.p.eval(z).norm());
        }
        assert_eq!(registry.len(), 4);
        // Anchor error decreases along the scan.
        assert!(errs.windows(2).all(|p| p[1] < p[0]), "{errs:?}");
    }

    #[test]
    fn argument_law_for_refined_roots() {
        // Roots in the upper sector approach arg = pi / (2 d).
        let prob = gauss_norm(0.3);
        let mut last_gap = f64::INFINITY;
        for k in [5i64, 15, 40] {
            let a = zero_anchor(&prob, 1, k).unwrap();
            let seed = inverse_branch(&prob, 1, a.v).unwrap();
            let z = refine_zero(&prob, seed, 1e-12).unwrap();
            assert!(prob.q.eval(z).im > 0.0);
            let gap = (z.arg() - std::f64::consts::PI / 4.0).abs();
            assert!(gap < last_gap + 1e-3);
            last_gap = gap;
        }
        assert!(last_gap < 0.02);
    }

    #[test]
    fn superattracting_derivative_vanishes() {
        // |f'(z0)| at a registered simple zero, by central differences.
        let prob = gauss_norm(0.3);
        let a = zero_anchor(&prob, 1, 6).unwrap();
        let seed = inverse_branch(&prob, 1, a.v).unwrap();
        let z0 = refine_zero(&prob, seed, 1e-13).unwrap();
        let h = 1e-6;
        let fd = (eval_f(&prob, z0 + c64(h, 0.0), 1e-13).unwrap()
            - eval_f(&prob, z0 - c64(h, 0.0), 1e-13).unwrap())
            / c64(2.0 * h, 0.0);
        assert!(fd.norm() <= 1e-4, "|f'(z0)| = {}", fd.norm());
    }

    #[test]
    fn basin_radius_formula() {
        let prob = gauss_norm(0.3);
        let r = basin_disk_radius(&prob, c64(10.0, 0.0), BASIN_R1_DEFAULT - 1.0).unwrap();
        assert!((r - 1.0 / 60.0).abs() < 1e-15);
        assert!(matches!(
            basin_disk_radius(&prob, c64(1.0, 0.0), BASIN_R1_DEFAULT),
            Err(Error::BelowThreshold(_))
        ));
        // Monotone decreasing in |z0| for d >= 2.
        let r2 = basin_disk_radius(&prob, c64(20.0, 0.0), 5.0).unwrap();
        assert!(r2 < r);
    }

    #[test]
    fn critical_points_of_gaussian_family() {
        // p q' + p' = 4t: the origin, kept exactly when c != 0.
        let prob = gauss_norm(0.3);
        let crit = critical_points(&prob);
        assert_eq!(crit.len(), 1);
        assert!(crit[0].norm() < 1e-10);

        let prob0 = gauss_norm(0.0);
        assert!(critical_points(&prob0).is_empty());

        // Residual of the factor polynomial at each reported point.
        let b = second_derivative_factor(&prob);
        for z in &crit {
            assert!(b.eval(*z).norm() <= 1e-9 * 4.0);
        }
        // Count with multiplicity matches the degree m + d - 1.
        assert_eq!(b.degree(), prob.m + prob.d - 1);
    }

    #[test]
    fn height_lattice_matches_anchor_parts() {
        let prob = gauss_norm(0.3);
        for j in 1..=2 {
            for n in [-9i64, -3, 2, 7] {
                let y = anchor_height(&prob, j, n).unwrap();
                if let Ok(a) = zero_anchor(&prob, j, n) {
                    assert_eq!(a.v.im, y);
                }
            }
        }
    }

    #[test]
    fn registry_dedup_and_order() {
        let mut reg = RootRegistry::new();
        reg.match_or_insert(c64(1.0, 0.0), 1e-12);
        reg.match_or_insert(c64(-1.0, 0.0), 1e-12);
        assert_ne!(reg.match_point(c64(1.0, 0.0)), reg.match_point(c64(-1.0, 0.0)));
        // A nearby point within the matching radius maps to the same root.
        let c = reg.match_or_insert(c64(1.0 + 1e-7, 0.0), 1e-13);
        assert_eq!(reg.get(c).unwrap().location, c64(1.0, 0.0));
        assert_eq!(reg.len(), 2);
        // Canonical order: sorted by (re, im).
        assert!(reg.entries()[0].location.re < reg.entries()[1].location.re);
        // Merge is a set union with dedup.
        let mut other = RootRegistry::new();
        other.match_or_insert(c64(1.0, 0.0), 1e-12);
        other.match_or_insert(c64(0.0, 2.0), 1e-12);
        let merged = reg.clone().merge(&other);
        assert_eq!(merged.len(), 3);
        let merged2 = other.merge(&reg);
        assert_eq!(merged2.len(), 3);
    }
}
