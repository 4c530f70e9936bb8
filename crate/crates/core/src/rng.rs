//! Small seeded generator for spot-check points.
//!
//! SplitMix64: deterministic across platforms, no global state; every caller
//! passes an explicit seed, which is echoed in reports for reproduction.

use crate::rational::{rat, Rational};

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Integer in `[lo, hi]` inclusive.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    /// Spot-check coordinate: an integer in [-10, 10] as a rational.
    pub fn small_rational(&mut self) -> Rational {
        rat(self.int_in(-10, 10))
    }

    pub fn rational_point(&mut self, dim: usize) -> Vec<Rational> {
        (0..dim).map(|_| self.small_rational()).collect()
    }

    /// Uniform float in [lo, hi).
    pub fn f64_in(&mut self, lo: f64, hi: f64) -> f64 {
        let unit = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + unit * (hi - lo)
    }

    pub fn f64_point(&mut self, dim: usize, lo: f64, hi: f64) -> Vec<f64> {
        (0..dim).map(|_| self.f64_in(lo, hi)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_fixed_seed() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn ranges_respected() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..1000 {
            let x = rng.int_in(-10, 10);
            assert!((-10..=10).contains(&x));
            let f = rng.f64_in(-2.0, 2.0);
            assert!((-2.0..2.0).contains(&f));
        }
    }
}
