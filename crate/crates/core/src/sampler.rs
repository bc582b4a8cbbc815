//! Deterministic sampling utilities: a splitmix generator for seeding and a
//! two-dimensional low-discrepancy sequence with a seeded rotation, shared
//! by the density estimators and the test suites.

use num_complex::Complex64;

/// SplitMix64: tiny, portable, and stable across platforms, which keeps
/// frozen test values meaningful.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in `[lo, hi)`.
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// Additive low-discrepancy sequence on the unit square (the plastic-ratio
/// lattice), rotated by a seed-derived offset. Points are addressable by
/// index, so shards over disjoint index ranges merge associatively.
#[derive(Debug, Clone)]
pub struct LowDiscrepancy2 {
    off_u: f64,
    off_v: f64,
}

// Inverse powers of the plastic ratio.
const A1: f64 = 0.754877666246693;
const A2: f64 = 0.569840290998053;

impl LowDiscrepancy2 {
    pub fn new(seed: u64) -> Self {
        let mut rng = SplitMix64::new(seed);
        LowDiscrepancy2 {
            off_u: rng.next_f64(),
            off_v: rng.next_f64(),
        }
    }

    /// The n-th point of the sequence in `[0,1)^2`.
    pub fn point(&self, n: u64) -> (f64, f64) {
        let u = (self.off_u + A1 * (n + 1) as f64).fract();
        let v = (self.off_v + A2 * (n + 1) as f64).fract();
        (u, v)
    }

    /// The n-th point mapped into the disk `D(center, radius)` with the
    /// area-preserving polar map.
    pub fn point_in_disk(&self, n: u64, center: Complex64, radius: f64) -> Complex64 {
        let (u, v) = self.point(n);
        let r = radius * u.sqrt();
        let theta = 2.0 * std::f64::consts::PI * v;
        center + Complex64::from_polar(r, theta)
    }

    /// The n-th point mapped into an axis-aligned rectangle.
    pub fn point_in_rect(&self, n: u64, x0: f64, y0: f64, x1: f64, y1: f64) -> Complex64 {
        let (u, v) = self.point(n);
        Complex64::new(x0 + (x1 - x0) * u, y0 + (y1 - y0) * v)
    }
}
