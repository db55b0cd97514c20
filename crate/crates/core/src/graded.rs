//! Functions on the degree lattice `Z`: finitely supported (`D`), eventually
//! constant (`D+`) and eventually `a q^n + b` (`D++`), all vanishing for
//! `n << 0`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::poly::{big, int, rat_pow};
use crate::scalar::HalfPowerScalar as S;
use crate::torus;
use crate::zeta::{series_coefficients, ZetaData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Space {
    D,
    DPlus,
    DPlusPlus,
}

impl Space {
    pub fn as_str(self) -> &'static str {
        match self {
            Space::D => "D",
            Space::DPlus => "D_plus",
            Space::DPlusPlus => "D_plus_plus",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error("expected a function in {expected}, got {found}")]
    SpaceMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("the tail functional is undefined on D_plus_plus")]
    TailUndefined,
    #[error("result leaves the space: {0}")]
    NotInSpace(String),
}

fn mismatch(expected: Space, found: Space) -> GradedError {
    GradedError::SpaceMismatch {
        expected: expected.as_str(),
        found: found.as_str(),
    }
}

/// `f(n) = support[n]` for `n < threshold` (missing keys are zero) and
/// `f(n) = a q^n + b` for `n >= threshold`.
///
/// Values are kept canonical: the threshold is as low as the tail formula
/// allows and the support holds no zeros, so structural equality is equality
/// of functions. The declared space does not take part in comparisons.
#[derive(Debug, Clone)]
pub struct GradedFunction {
    space: Space,
    support: BTreeMap<i64, S>,
    threshold: i64,
    a: S,
    b: S,
    q: u64,
}

impl PartialEq for GradedFunction {
    fn eq(&self, other: &Self) -> bool {
        self.support == other.support
            && self.threshold == other.threshold
            && self.a == other.a
            && self.b == other.b
            && (self.a.is_zero() || self.q == other.q)
    }
}

impl GradedFunction {
    /// General constructor; support keys at or above `threshold` are ignored.
    pub fn from_parts(
        space: Space,
        support: BTreeMap<i64, S>,
        threshold: i64,
        a: S,
        b: S,
        q: u64,
    ) -> Result<Self, GradedError> {
        if space != Space::DPlusPlus && !a.is_zero() {
            return Err(GradedError::NotInSpace(format!(
                "{} has no q^n tail",
                space.as_str()
            )));
        }
        if space == Space::D && !b.is_zero() {
            return Err(GradedError::NotInSpace("D has no constant tail".into()));
        }
        let mut f = GradedFunction {
            space,
            support,
            threshold,
            a,
            b,
            q,
        };
        f.canonicalize();
        Ok(f)
    }

    pub fn finite(values: impl IntoIterator<Item = (i64, S)>) -> Self {
        let support: BTreeMap<i64, S> = values.into_iter().collect();
        let threshold = support.keys().next_back().map_or(0, |k| k + 1);
        Self::from_parts(Space::D, support, threshold, S::zero(), S::zero(), 1)
            .expect("finite support")
    }

    /// `δ_(m)`.
    pub fn delta(m: i64) -> Self {
        Self::finite([(m, S::one())])
    }

    /// `δ_{>=m}`.
    pub fn step(m: i64) -> Self {
        Self::eventually_constant(BTreeMap::new(), m, S::one())
    }

    pub fn eventually_constant(support: BTreeMap<i64, S>, threshold: i64, c: S) -> Self {
        Self::from_parts(Space::DPlus, support, threshold, S::zero(), c, 1).expect("D_plus")
    }

    pub fn eventually_geometric(
        support: BTreeMap<i64, S>,
        threshold: i64,
        a: S,
        b: S,
        q: u64,
    ) -> Self {
        Self::from_parts(Space::DPlusPlus, support, threshold, a, b, q).expect("D_plus_plus")
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn threshold(&self) -> i64 {
        self.threshold
    }

    /// `(a, b)` in `a q^n + b`.
    pub fn tail(&self) -> (&S, &S) {
        (&self.a, &self.b)
    }

    pub fn support(&self) -> &BTreeMap<i64, S> {
        &self.support
    }

    pub fn has_tail(&self) -> bool {
        !(self.a.is_zero() && self.b.is_zero())
    }

    /// Smallest `n` that can carry a nonzero value.
    pub fn lower_cutoff(&self) -> i64 {
        let first = self.support.keys().next().copied();
        match (first, self.has_tail()) {
            (Some(k), true) => k.min(self.threshold),
            (Some(k), false) => k,
            (None, _) => self.threshold,
        }
    }

    /// Largest `n` needed to describe the function together with its tail.
    pub fn upper_cutoff(&self) -> i64 {
        self.support
            .keys()
            .next_back()
            .map_or(self.threshold, |&k| k.max(self.threshold))
    }

    /// The same function declared in a larger space.
    pub fn widened(mut self, space: Space) -> Self {
        self.space = self.space.max(space);
        self
    }

    fn tail_at(&self, n: i64) -> S {
        let geo = if self.a.is_zero() {
            S::zero()
        } else {
            self.a.scale(&rat_pow(&int(self.q as i64), n))
        };
        &geo + &self.b
    }

    pub fn eval(&self, n: i64) -> S {
        if n >= self.threshold {
            self.tail_at(n)
        } else {
            self.support.get(&n).cloned().unwrap_or_else(S::zero)
        }
    }

    fn canonicalize(&mut self) {
        let t = self.threshold;
        self.support.retain(|&k, v| k < t && !v.is_zero());
        if !self.has_tail() {
            self.threshold = self.support.keys().next_back().map_or(0, |k| k + 1);
            return;
        }
        // a q^n + b vanishes for at most one n, so this terminates
        loop {
            let n = self.threshold - 1;
            let below = self.support.get(&n).cloned().unwrap_or_else(S::zero);
            if below != self.tail_at(n) {
                break;
            }
            self.support.remove(&n);
            self.threshold = n;
        }
    }

    fn combine(&self, other: &Self, op: impl Fn(&S, &S) -> S) -> Self {
        let q = if self.a.is_zero() { other.q } else { self.q };
        if !self.a.is_zero() && !other.a.is_zero() {
            assert_eq!(self.q, other.q, "q^n tails over different q");
        }
        let lo = self.lower_cutoff().min(other.lower_cutoff());
        let threshold = self.threshold.max(other.threshold);
        let support = (lo..threshold)
            .map(|n| (n, op(&self.eval(n), &other.eval(n))))
            .collect();
        let mut f = GradedFunction {
            space: self.space.max(other.space),
            support,
            threshold,
            a: op(&self.a, &other.a),
            b: op(&self.b, &other.b),
            q,
        };
        f.canonicalize();
        f
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |x, y| x - y)
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut f = self.clone();
        for v in f.support.values_mut() {
            *v = &*v * c;
        }
        f.a = &f.a * c;
        f.b = &f.b * c;
        f.canonicalize();
        f
    }

    /// `δ_(0)(f) = lim f(n)` on `D+`; zero on `D`.
    pub fn tail_functional(&self) -> Result<S, GradedError> {
        match self.space {
            Space::DPlusPlus => Err(GradedError::TailUndefined),
            _ => Ok(self.b.clone()),
        }
    }

    /// `(f(lo), ..., f(hi))`.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<S> {
        (lo..=hi).map(|n| self.eval(n)).collect()
    }
}

/// Local Fourier transform on `D+` for a point of norm `q_x` and differential
/// order `k_x`: `δ_{>=m} -> q_x^{-k_x/2 - m} δ_{>= -k_x - m}`.
pub fn local_fourier(f: &GradedFunction, q_x: u64, k_x: i64) -> Result<GradedFunction, GradedError> {
    if f.space == Space::DPlusPlus {
        return Err(mismatch(Space::DPlus, f.space));
    }
    let lo = f.lower_cutoff();
    let hi = f.threshold.max(lo);
    // f = Σ c_m δ_{>=m}; image steps start at -k - m
    let mut steps: BTreeMap<i64, S> = BTreeMap::new();
    for m in lo..=hi {
        let c = &f.eval(m) - &f.eval(m - 1);
        if c.is_zero() {
            continue;
        }
        let coef = &c * &S::q_half_power(q_x, -k_x - 2 * m);
        steps.insert(-k_x - m, coef);
    }
    let Some((&last, _)) = steps.iter().next_back() else {
        return Ok(GradedFunction::eventually_constant(BTreeMap::new(), 0, S::zero()));
    };
    let mut acc = S::zero();
    let mut support = BTreeMap::new();
    let first = *steps.keys().next().expect("nonempty");
    for n in first..last {
        if let Some(c) = steps.get(&n) {
            acc = &acc + c;
        }
        support.insert(n, acc.clone());
    }
    let total = steps.values().fold(S::zero(), |s, c| &s + c);
    Ok(GradedFunction::eventually_constant(support, last, total))
}

/// `(f * g)(n) = Σ_m f(n - m) g(m)` for `f` in `D` and `g` in `D+`.
pub fn convolve(f: &GradedFunction, g: &GradedFunction) -> Result<GradedFunction, GradedError> {
    if f.space != Space::D {
        return Err(mismatch(Space::D, f.space));
    }
    if g.space == Space::DPlusPlus {
        return Err(mismatch(Space::DPlus, g.space));
    }
    if f.support.is_empty() {
        return Ok(GradedFunction::finite([]).widened(g.space));
    }
    let f_lo = *f.support.keys().next().expect("nonempty");
    let f_hi = *f.support.keys().next_back().expect("nonempty");
    let lo = f_lo + g.lower_cutoff();
    let threshold = f_hi + g.threshold;
    let support = (lo..threshold)
        .map(|n| {
            let v = f
                .support
                .iter()
                .fold(S::zero(), |acc, (m, fm)| &acc + &(fm * &g.eval(n - m)));
            (n, v)
        })
        .collect();
    let total = f.support.values().fold(S::zero(), |s, v| &s + v);
    GradedFunction::from_parts(g.space, support, threshold, S::zero(), &total * &g.b, g.q)
}

/// Global graded Fourier transform on `D++`: Mellin transform, pull back along
/// `z -> 1/(q z)`, re-expand by partial fractions. On finite support this is
/// `n -> q^n f(-n)`.
pub fn graded_fourier_pp(f: &GradedFunction, q: u64) -> Result<GradedFunction, GradedError> {
    if !f.a.is_zero() && f.q != q {
        return Err(GradedError::NotInSpace(format!(
            "tail is geometric in {} but the transform uses q = {q}",
            f.q
        )));
    }
    let r = torus::mellin(f, q);
    Ok(torus::inverse_mellin(&torus::involution_pullback(&r)).widened(Space::DPlusPlus))
}

/// `n -> b_{n-d}`: the pushforward along the degree map of the standard
/// function of a divisor of degree `d`.
pub fn pushforward_standard(z: &ZetaData, d: i64) -> GradedFunction {
    let g = z.genus() as i64;
    let q = z.q_rat();
    let span = (2 * g - 1).max(0);
    let b = series_coefficients(z, span as usize);
    let support = (0..span).map(|i| (d + i, S::rational(big(&b[i as usize])))).collect();
    let h = big(&z.class_number());
    let scale = &h / (&q - int(1));
    let a = &scale * rat_pow(&q, 1 - g - d);
    GradedFunction::eventually_geometric(
        support,
        d + 2 * g - 1,
        S::rational(a),
        S::rational(-scale),
        z.q(),
    )
}
