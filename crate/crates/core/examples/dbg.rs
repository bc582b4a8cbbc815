use std::time::Instant;
use num_complex::Complex64;
use newton_measure_core::dynamics::{classify_orbit, OrbitParams, RawKind};
use newton_measure_core::poly::Polynomial;
use newton_measure_core::problem::normalize;
use newton_measure_core::roots::RootRegistry;

fn main() {
    let (prob, _) = normalize(
        &Polynomial::from_real(&[1.0]),
        &Polynomial::from_real(&[0.0, 0.0, -1.0]),
        Complex64::new(0.3, 0.0),
    ).unwrap();
    let params = OrbitParams::defaults_for(&prob).with_budget(200);
    let empty = RootRegistry::new();
    let n = 128usize;
    // serial, with per-class time accounting
    let mut time_by = [0.0f64; 5];
    let mut iters_by = [0u64; 5];
    let mut count_by = [0u64; 5];
    for idx in 0..n*n {
        let i = idx % n; let j = idx / n;
        let x = -4.0 + 8.0 * (i as f64 + 0.5) / n as f64;
        let y = -4.0 + 8.0 * (j as f64 + 0.5) / n as f64;
        let t = Instant::now();
        let out = classify_orbit(&prob, &empty, Complex64::new(x, y), &params);
        let dt = t.elapsed().as_secs_f64();
        let k = match out.kind { RawKind::Converged => 0, RawKind::Cycle{..} => 1,
            RawKind::Escaped => 2, RawKind::PoleHit => 3, RawKind::Unresolved => 4 };
        time_by[k] += dt; iters_by[k] += out.iterations as u64; count_by[k] += 1;
    }
    let names = ["conv", "cycle", "esc", "pole", "unres"];
    for k in 0..5 {
        if count_by[k] > 0 {
            println!("{}: n={} time={:.2}s avg_iters={:.1} avg_ms={:.3}",
                names[k], count_by[k], time_by[k], iters_by[k] as f64 / count_by[k] as f64,
                1e3 * time_by[k] / count_by[k] as f64);
        }
    }
}
