//! Round-trips a sampled curve through CSV and measures its weighted length.
//!
//! cargo run --example weighted_length_csv

use std::io::BufReader;

use calib_geo::catalog::entry_by_name;
use calib_geo::curve::{read_polyline_csv, write_polyline_csv};
use calib_geo::numfmt::format_sig;
use calib_geo::{resample_arclength, weighted_length, Curve};

fn main() -> calib_geo::Result<()> {
    let e = entry_by_name("grim-reaper")?;
    let exact = e.oracle_length.expect("grim reaper has a closed form");
    for n in [11, 101, 1001] {
        let pts = resample_arclength(&e.minimizer, n)?.sample(0);
        let mut csv = Vec::new();
        write_polyline_csv(&pts, &mut csv)?;
        let poly = read_polyline_csv(BufReader::new(csv.as_slice()))?;
        let len = weighted_length(&Curve::polyline(poly.into_points())?, &e.pair.rho, 1e-12)?;
        println!("{n:>5} vertices: {} (error {:.2e})", format_sig(len, 15), len - exact);
    }
    Ok(())
}
