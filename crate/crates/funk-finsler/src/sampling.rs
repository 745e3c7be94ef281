//! Deterministic random sampling of base points and directions for the
//! verification sweeps. ChaCha8 keeps the streams reproducible across
//! platforms for a fixed seed.

use crate::geometry::{DiscChart, Point2, Tangent2, TangentSample};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Name of the generator, echoed in verification reports.
pub const RNG_NAME: &str = "chacha8";

/// Fraction of the radius up to which base points are drawn; keeps samples
/// clear of the `1e-9` interior margin and the worst conditioning.
pub const SAMPLE_RADIUS_FRACTION: f64 = 0.95;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Area-uniform point in the disc of radius `0.95 r`.
    pub fn point(&mut self, chart: &DiscChart) -> Point2 {
        let u: f64 = self.rng.gen();
        let rad = SAMPLE_RADIUS_FRACTION * chart.r() * u.sqrt();
        let th: f64 = self.rng.gen::<f64>() * 2.0 * std::f64::consts::PI;
        Point2::new(rad * th.cos(), rad * th.sin())
    }

    /// Euclidean-unit direction with uniform angle.
    pub fn direction(&mut self) -> Tangent2 {
        let th: f64 = self.rng.gen::<f64>() * 2.0 * std::f64::consts::PI;
        Tangent2::new(th.cos(), th.sin())
    }

    pub fn tangent_sample(&mut self, chart: &DiscChart) -> TangentSample {
        TangentSample::new(self.point(chart), self.direction())
    }

    /// Uniform scalar in `[lo, hi)`, for scale perturbations.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_fixed_seed() {
        let c = DiscChart::new(0, 1.0).unwrap();
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        for _ in 0..10 {
            assert_eq!(a.tangent_sample(&c), b.tangent_sample(&c));
        }
    }

    #[test]
    fn samples_respect_bounds() {
        let c = DiscChart::new(1, 0.8).unwrap();
        let mut s = Sampler::new(1);
        for _ in 0..200 {
            let p = s.point(&c);
            assert!(p.norm() <= 0.95 * 0.8 + 1e-12);
            let d = s.direction();
            assert!((d.norm() - 1.0).abs() < 1e-12);
        }
    }
}
