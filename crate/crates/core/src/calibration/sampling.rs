//! Halton (2, 3) points in a domain's bounding box.

use crate::error::{Error, Result};
use crate::geometry::{Domain, Point2};

/// Van der Corput radical inverse of `i` in `base`.
pub fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    r
}

/// Starting index of the Halton stream for `seed`.
fn stream_offset(seed: u64) -> u64 {
    // splitmix64 finalizer, folded to keep indices moderate.
    let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    1 + (z % (1 << 24))
}

/// `n` low-discrepancy points of the domain's interior (at least `margin`
/// from the boundary), deterministic in `seed`.
pub fn sample_interior(domain: &Domain, n: usize, seed: u64) -> Result<Vec<Point2>> {
    if n == 0 {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    let bbox = domain.bbox();
    let budget = 1000 * n as u64 + 10_000;
    let start = stream_offset(seed);
    let mut out = Vec::with_capacity(n);
    for i in start..start + budget {
        let p = bbox.map_unit(radical_inverse(i, 2), radical_inverse(i, 3));
        if domain.contains_interior(p) {
            out.push(p);
            if out.len() == n {
                return Ok(out);
            }
        }
    }
    Err(Error::InvalidInput(format!(
        "only {} of {n} samples landed inside the domain",
        out.len()
    )))
}
