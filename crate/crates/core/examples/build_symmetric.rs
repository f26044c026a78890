//! Builds a calibration pair for the density `1/y` from its speed factor
//! alone and checks that the circle `x² + y² = 1` is a level curve of `g`.
//!
//! cargo run --example build_symmetric

use std::f64::consts::PI;

use calib_geo::builder::{build_symmetric_pair, detect_validity_strip, SymmetricDensitySpec};
use calib_geo::{check_density, check_orthogonality, Curve, Domain, Point2};

fn main() -> calib_geo::Result<()> {
    // v(y) = y with c = 1 admits 0 < y < 1: unit circles about the x-axis.
    let spec = SymmetricDensitySpec::new(|y| y, 1.0, 0.5, Domain::rect(-2.0, 2.0, 0.0, 1.5)?);
    let (lo, hi) = detect_validity_strip(&spec)?;
    println!("validity strip: ({lo}, {hi})");

    let pair = build_symmetric_pair(&spec)?;
    println!("orthogonality residual {:.2e}", check_orthogonality(&pair, 500, 1)?);
    println!("density error          {:.2e}", check_density(&pair, 500, 1)?);

    let arc = Curve::parametric(|t| Point2::new(t.cos(), t.sin()), PI / 6.0, PI / 3.0)?;
    let g: Vec<f64> = arc.sample(50).into_iter().map(|p| pair.g.value(p)).collect();
    let spread = g.iter().cloned().fold(f64::MIN, f64::max) - g.iter().cloned().fold(f64::MAX, f64::min);
    println!("spread of g along the arc {spread:.2e}");
    Ok(())
}
