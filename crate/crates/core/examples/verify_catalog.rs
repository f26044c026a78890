//! Certifies every catalog entry against 100 seeded competitors.
//!
//! cargo run --release --example verify_catalog

use calib_geo::catalog::catalog_entries;
use calib_geo::Tolerances;

fn main() -> calib_geo::Result<()> {
    println!("{:<18} {:>8} {:>12} {:>10} {:>10}", "entry", "passed", "bound", "min margin", "orth");
    for e in catalog_entries() {
        let r = e.verify(100, 42, Tolerances::default())?;
        println!(
            "{:<18} {:>8} {:>12.9} {:>10.2e} {:>10.1e}",
            r.entry_name,
            r.passed,
            r.bound,
            r.min_margin().unwrap_or(f64::NAN),
            r.orthogonality_max_residual
        );
    }
    Ok(())
}
