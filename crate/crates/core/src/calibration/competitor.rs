//! Random admissible competitors: the chord plus a few sine modes normal to it.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::geometry::{Domain, Point2};

/// Rejections tolerated before giving up; the amplitude halves on each one.
pub const MAX_ATTEMPTS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompetitorSpec {
    pub n_modes: usize,
    /// Displacement scale relative to the chord length.
    pub amplitude: f64,
    /// Polyline vertex count, endpoints included.
    pub vertices: usize,
}

impl Default for CompetitorSpec {
    fn default() -> Self {
        CompetitorSpec {
            n_modes: 4,
            amplitude: 0.25,
            vertices: 65,
        }
    }
}

/// Per-competitor seed derived from a batch seed.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 33)).wrapping_mul(0xFF51_AFD7_ED55_8CCD);
    z = (z ^ (z >> 33)).wrapping_mul(0xC4CE_B9FE_1A85_EC53);
    z ^ (z >> 33)
}

fn build(p1: Point2, p2: Point2, coeffs: &[f64], scale: f64, vertices: usize) -> Vec<Point2> {
    let chord = p2 - p1;
    let normal = chord.perp().normalized().expect("endpoints differ");
    let n = vertices.max(2);
    (0..n)
        .map(|i| {
            if i == 0 {
                return p1;
            }
            if i == n - 1 {
                return p2;
            }
            let u = i as f64 / (n - 1) as f64;
            let offset: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| a * ((k + 1) as f64 * PI * u).sin())
                .sum();
            p1 + chord * u + normal * (scale * offset)
        })
        .collect()
}

fn admissible(domain: &Domain, pts: &[Point2]) -> bool {
    pts.windows(2).all(|w| w[0] != w[1] && domain.segment_inside(w[0], w[1]))
}

/// Polyline from `p1` to `p2` with random normal displacement, kept inside
/// `domain` with its standoff margin.
pub fn generate_competitor(
    p1: Point2,
    p2: Point2,
    domain: &Domain,
    seed: u64,
    n_modes: usize,
    amplitude: f64,
) -> Result<Curve> {
    generate_with_vertices(
        p1,
        p2,
        domain,
        seed,
        CompetitorSpec {
            n_modes,
            amplitude,
            ..CompetitorSpec::default()
        },
    )
}

fn generate_with_vertices(p1: Point2, p2: Point2, domain: &Domain, seed: u64, spec: CompetitorSpec) -> Result<Curve> {
    if p1 == p2 {
        return Err(Error::InvalidInput("competitor endpoints coincide".into()));
    }
    if spec.n_modes == 0 || !(spec.amplitude > 0.0) {
        return Err(Error::InvalidInput("competitors need n_modes >= 1 and amplitude > 0".into()));
    }
    if !domain.contains_interior(p1) || !domain.contains_interior(p2) {
        return Err(Error::CannotFitInDomain(0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut amplitude = spec.amplitude;
    let len = p1.distance(p2);
    for _ in 0..MAX_ATTEMPTS {
        let coeffs: Vec<f64> = (0..spec.n_modes).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let pts = build(p1, p2, &coeffs, amplitude * len, spec.vertices);
        if admissible(domain, &pts) {
            return Curve::polyline(pts);
        }
        amplitude *= 0.5;
    }
    Err(Error::CannotFitInDomain(MAX_ATTEMPTS))
}

/// `count` competitors, the `i`-th seeded with `derive_seed(seed, i)`.
pub fn generate_competitors(
    p1: Point2,
    p2: Point2,
    domain: &Domain,
    seed: u64,
    count: usize,
    spec: CompetitorSpec,
) -> Result<Vec<Curve>> {
    (0..count as u64)
        .map(|i| generate_with_vertices(p1, p2, domain, derive_seed(seed, i), spec))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Domain {
        Domain::rect(-1.0, 2.0, -1.0, 1.0).unwrap()
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let (a, b) = (Point2::new(0.0, 0.0), Point2::new(1.0, 0.0));
        let c1 = generate_competitor(a, b, &square(), 9, 3, 0.2).unwrap();
        let c2 = generate_competitor(a, b, &square(), 9, 3, 0.2).unwrap();
        let c3 = generate_competitor(a, b, &square(), 10, 3, 0.2).unwrap();
        assert_eq!(c1.as_polyline(), c2.as_polyline());
        assert_ne!(c1.as_polyline(), c3.as_polyline());
        assert_eq!(c1.start(), a);
        assert_eq!(c1.end(), b);
    }

    #[test]
    fn tiny_amplitude_is_the_chord() {
        let (a, b) = (Point2::new(0.0, 0.0), Point2::new(1.0, 0.5));
        let c = generate_competitor(a, b, &square(), 1, 4, 1e-14).unwrap();
        for p in c.as_polyline().unwrap().points() {
            let cross = (*p - a).perp().dot(b - a);
            assert!(cross.abs() < 1e-12);
        }
    }

    #[test]
    fn large_amplitude_is_shrunk_into_domain() {
        let d = Domain::rect(0.0, 1.0, -0.05, 0.05).unwrap();
        let (a, b) = (Point2::new(0.1, 0.0), Point2::new(0.9, 0.0));
        let c = generate_competitor(a, b, &d, 3, 4, 5.0).unwrap();
        assert!(c.as_polyline().unwrap().points().iter().all(|p| d.contains_interior(*p)));
    }

    #[test]
    fn chord_outside_cannot_fit() {
        let d = Domain::rect(-1.0, 1.0, -1.0, 1.0)
            .unwrap()
            .with_clearance(|p| p.x.hypot(p.y) - 0.5);
        let err = generate_competitor(Point2::new(-0.8, 0.0), Point2::new(0.8, 0.0), &d, 0, 2, 0.1).unwrap_err();
        assert_eq!(err, Error::CannotFitInDomain(MAX_ATTEMPTS));
    }
}
