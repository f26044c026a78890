//! The Beltrami first integral `(1/v) dx/ds = c` along the cycloid, and its
//! failure along a straight chord.
//!
//! cargo run --example first_integral

use std::f64::consts::FRAC_1_SQRT_2;

use calib_geo::catalog::entry_by_name;
use calib_geo::geodesic::first_integral_residual;
use calib_geo::Curve;

fn main() -> calib_geo::Result<()> {
    let e = entry_by_name("brachistochrone")?;
    let v = |y: f64| (-y).sqrt();
    let on = first_integral_residual(v, &e.minimizer, FRAC_1_SQRT_2)?;
    let (a, b) = e.default_endpoints;
    let off = first_integral_residual(v, &Curve::segment(a, b)?, FRAC_1_SQRT_2)?;
    println!("cycloid residual {on:.2e}");
    println!("chord residual   {off:.2e}");
    Ok(())
}
