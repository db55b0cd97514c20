//! Seeded random inputs for the property suites.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graded::GradedFunction;
use crate::poly::{rat, Rational};
use crate::scalar::HalfPowerScalar as S;
use crate::torus::{LaurentPoly, TorusRational};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn bit(&mut self) -> bool {
        self.rng.random_bool(0.5)
    }

    /// Small rational `n/d` with `|n| <= 9`, `1 <= d <= 5`.
    pub fn rational(&mut self) -> Rational {
        let n = self.int(-9, 9);
        let d = self.int(1, 5);
        rat(n, d)
    }

    fn values(&mut self, lo: i64, hi: i64) -> BTreeMap<i64, S> {
        (lo..hi).map(|n| (n, S::rational(self.rational()))).collect()
    }

    /// Finitely supported, support inside `[-reach, reach]`.
    pub fn finite(&mut self, reach: i64) -> GradedFunction {
        let terms = self.int(1, 6);
        let values: Vec<(i64, S)> = (0..terms)
            .map(|_| (self.int(-reach, reach), S::rational(self.rational())))
            .collect();
        GradedFunction::finite(values)
    }

    pub fn d_plus(&mut self) -> GradedFunction {
        let lo = self.int(-4, 1);
        let threshold = lo + self.int(0, 5);
        let support = self.values(lo, threshold);
        GradedFunction::eventually_constant(support, threshold, S::rational(self.rational()))
    }

    pub fn d_plus_plus(&mut self, q: u64) -> GradedFunction {
        let lo = self.int(-4, 1);
        let threshold = lo + self.int(0, 5);
        let support = self.values(lo, threshold);
        let a = S::rational(self.rational());
        let b = S::rational(self.rational());
        GradedFunction::eventually_geometric(support, threshold, a, b, q)
    }

    /// Laurent numerator of degree at most 8 over random pole flags.
    pub fn torus(&mut self, q: u64) -> TorusRational {
        let lo = self.int(-4, 2);
        let len = self.int(1, 9);
        let num = LaurentPoly::from_terms((0..len).map(|i| (lo + i, S::rational(self.rational()))));
        let e1 = u8::from(self.bit());
        let e2 = u8::from(self.bit());
        TorusRational::new(num, e1, e2, q)
    }
}
