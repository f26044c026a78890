//! Traces the brachistochrone level curve of `g` and measures its distance
//! to the exact cycloid.
//!
//! cargo run --example trace_level_curve

use calib_geo::catalog::entry_by_name;
use calib_geo::curve::point_polyline_distance;
use calib_geo::geodesic::{trace_level, TraceConfig};
use calib_geo::Point2;

fn main() -> calib_geo::Result<()> {
    let e = entry_by_name("brachistochrone")?;
    let cycloid: Vec<Point2> = (0..=20_000)
        .map(|i| {
            let t = 0.05 + 3.0 * i as f64 / 20_000.0;
            Point2::new(t - t.sin(), -(1.0 - t.cos()))
        })
        .collect();
    for step in [4e-2, 2e-2, 1e-2] {
        let cfg = TraceConfig::new(step)?
            .with_domain(e.pair.domain.clone())
            .with_stop(|p| p.x >= 2.5);
        let traced = trace_level(&e.pair.g, e.default_endpoints.0, -1.0, &cfg)?.sample(0);
        let worst = traced.iter().map(|&p| point_polyline_distance(p, &cycloid)).fold(0.0, f64::max);
        println!("step {step:.0e}: {} points, max distance to cycloid {worst:.2e}", traced.len());
    }
    Ok(())
}
