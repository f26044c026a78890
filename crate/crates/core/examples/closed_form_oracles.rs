//! Weighted length of each minimizer against its closed-form value.
//!
//! cargo run --example closed_form_oracles

use calib_geo::catalog::catalog_entries;
use calib_geo::{calibrated_bound, weighted_length};

fn main() -> calib_geo::Result<()> {
    for e in catalog_entries() {
        let len = weighted_length(&e.minimizer, &e.pair.rho, 1e-12)?;
        let (p1, p2) = e.default_endpoints;
        let bound = calibrated_bound(&e.pair, p1, p2)?;
        match e.oracle_length {
            Some(oracle) => println!("{:<18} length {len:.15} oracle {oracle:.15} bound {bound:.15}", e.name),
            None => println!("{:<18} length {len:.15} bound {bound:.15}", e.name),
        }
    }
    Ok(())
}
