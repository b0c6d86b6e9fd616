//! Deterministic sampling.
//!
//! The generator is the 64-bit linear congruential recurrence
//!
//! ```text
//! x_{k+1} = 6364136223846793005 * x_k + 1442695040888963407  (mod 2^64)
//! ```
//!
//! started from `x_0 = seed`; each draw advances once and returns the high
//! 32 bits of the new state. Every derived sampler below is specified in
//! terms of [`Lcg::below`], so other implementations can reproduce the same
//! sample points.

use crate::exact::{ratio, Rational};
use crate::lattice::{ArrangementSpec, Chain, DecoratedSubset};
use crate::tropical::{Spoke, TropicalCurve};

pub const MULTIPLIER: u64 = 6364136223846793005;
pub const INCREMENT: u64 = 1442695040888963407;

#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self.state.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
        (self.state >> 32) as u32
    }

    /// `next_u32() mod bound`.
    pub fn below(&mut self, bound: u32) -> u32 {
        assert!(bound > 0, "empty range");
        self.next_u32() % bound
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u32) as i64
    }

    /// `p/q` with `q = 1 + below(max_den)` and `p = below(max_num * q + 1)`,
    /// a nonnegative rational in `[0, max_num]`.
    pub fn rational(&mut self, max_num: u32, max_den: u32) -> Rational {
        let q = 1 + self.below(max_den);
        let p = self.below(max_num * q + 1);
        ratio(p as i64, q as i64)
    }

    /// A curve with each point on the center with probability `1/(r+1)`,
    /// otherwise on a uniform spoke at a positive length from
    /// [`Lcg::rational`]. Lengths are drawn from a few values so that ties
    /// (shared levels) are common.
    pub fn curve(&mut self, spec: &ArrangementSpec, max_len: u32) -> TropicalCurve {
        let r = spec.r();
        let points = (0..spec.n())
            .map(|_| {
                let s = self.below(r + 1);
                if s == r {
                    (Spoke::Center, Rational::from_integer(0.into()))
                } else {
                    let mut len = self.rational(max_len, 2);
                    if len == Rational::from_integer(0.into()) {
                        len = Rational::from_integer(1.into());
                    }
                    (Spoke::Spoke(s), len)
                }
            })
            .collect();
        TropicalCurve::new(spec, points).expect("sampled curve is valid")
    }

    /// Ambient point with integer coordinates in `-bound..=bound`.
    pub fn ambient_point(&mut self, spec: &ArrangementSpec, bound: i64) -> Vec<Rational> {
        (0..spec.dim())
            .map(|_| Rational::from_integer(self.int_in(-bound, bound).into()))
            .collect()
    }

    /// Ambient point with coordinates `p/q`, `|p| <= bound * q`, `q <= max_den`.
    pub fn rational_point(&mut self, spec: &ArrangementSpec, bound: u32, max_den: u32) -> Vec<Rational> {
        (0..spec.dim())
            .map(|_| {
                let q = 1 + self.below(max_den) as i64;
                let p = self.int_in(-(bound as i64) * q, bound as i64 * q);
                ratio(p, q)
            })
            .collect()
    }

    /// A chain built by adding a random nonempty block of unused indices at
    /// each level, with uniform decorations.
    pub fn chain(&mut self, spec: &ArrangementSpec) -> Chain {
        let mut unused: Vec<usize> = (1..=spec.n()).collect();
        let mut levels = Vec::new();
        let mut current: Vec<(usize, u32)> = Vec::new();
        let length = self.below(spec.n() as u32 + 1);
        for _ in 0..length {
            if unused.is_empty() {
                break;
            }
            let take = 1 + self.below(unused.len() as u32) as usize;
            for _ in 0..take {
                let k = self.below(unused.len() as u32) as usize;
                let i = unused.swap_remove(k);
                current.push((i, self.below(spec.r())));
            }
            levels.push(DecoratedSubset::new(current.clone()).expect("distinct indices"));
        }
        Chain::new(levels).expect("nested levels")
    }
}
