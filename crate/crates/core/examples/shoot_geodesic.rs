//! Integrates the geodesic equation from a point and angle, then checks the
//! shot against the unit circle, a hyperbolic geodesic.
//!
//! cargo run --example shoot_geodesic

use std::f64::consts::FRAC_PI_2;

use calib_geo::catalog::entry_by_name;
use calib_geo::geodesic::shoot_geodesic;
use calib_geo::Point2;

fn main() -> calib_geo::Result<()> {
    let e = entry_by_name("conic-eps-0")?;
    // Start at angle 1.2 on the circle and head clockwise along it.
    let a = 1.2f64;
    let start = Point2::new(a.cos(), a.sin());
    for step in [1e-2, 5e-3, 2.5e-3] {
        let n = (1.0 / step) as usize;
        let shot = shoot_geodesic(&e.pair.rho, start, a - FRAC_PI_2, step, n, Some(&e.pair.domain))?;
        let worst = shot
            .curve
            .sample(0)
            .iter()
            .map(|p| (p.x.hypot(p.y) - 1.0).abs())
            .fold(0.0, f64::max);
        println!("step {step:.1e}: {:?} after {} steps, max |r - 1| = {worst:.2e}", shot.status, shot.steps);
    }
    Ok(())
}
