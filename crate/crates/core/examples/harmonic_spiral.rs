//! Rotating `log z` by `α` turns logarithmic spirals into minimizers for the
//! density `1/r`.
//!
//! cargo run --example harmonic_spiral

use calib_geo::builder::{build_harmonic_pair, HolomorphicSpec};
use calib_geo::catalog::log_spiral;
use calib_geo::{Domain, ScalarField, Tolerances};

fn main() -> calib_geo::Result<()> {
    let alpha = 0.9;
    let e = log_spiral(1.0, 0.0, alpha)?;
    let r = e.verify(100, 7, Tolerances::default())?;
    println!("spiral alpha = {alpha}: passed {} bound {:.12} (2/sin α = {:.12})", r.passed, r.bound, 2.0 / alpha.sin());

    // Any rotation of the same holomorphic function keeps rho = |∇p|.
    let domain = Domain::rect(0.5, 2.0, 0.2, 1.5)?;
    for a in [0.0, 0.5, 1.0] {
        let pair = build_harmonic_pair(&HolomorphicSpec::z_squared(a), domain.clone())?;
        let p = domain.bbox().map_unit(0.3, 0.6);
        println!("z² rotated by {a}: rho({p}) = {:.12}", pair.rho.value(p));
    }

    // A pair with p = x, q = x is rejected.
    let bad = HolomorphicSpec::new(
        ScalarField::new(|p| p.x),
        ScalarField::new(|p| p.x),
        0.0,
    );
    match build_harmonic_pair(&bad, domain) {
        Err(err) => println!("rejected: {err}"),
        Ok(_) => println!("unexpectedly accepted"),
    }
    Ok(())
}
