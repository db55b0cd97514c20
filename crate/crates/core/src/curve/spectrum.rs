use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::CurveError;

/// Möbius function by trial division.
pub fn mobius(mut n: u64) -> i64 {
    assert!(n >= 1);
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Closed points of each degree and effective divisors of each degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    /// `a[l - 1]` = number of closed points of degree `l`
    pub closed_points: Vec<u64>,
    /// `b[n]` = number of effective divisors of degree `n`
    pub effective_divisors: Vec<BigInt>,
}

impl Spectrum {
    /// Closed points of degree `l` (1-based); `None` past the computed range.
    pub fn a(&self, l: usize) -> Option<u64> {
        l.checked_sub(1).and_then(|i| self.closed_points.get(i).copied())
    }

    pub fn max_degree(&self) -> usize {
        self.closed_points.len()
    }

    /// Rebuilds `N_m = Σ_{l | m} l a_l`.
    pub fn point_counts(&self) -> Vec<u64> {
        (1..=self.max_degree())
            .map(|m| {
                (1..=m)
                    .filter(|l| m % l == 0)
                    .map(|l| l as u64 * self.closed_points[l - 1])
                    .sum()
            })
            .collect()
    }
}

/// Möbius inversion of `N_1..N_M` into `a_1..a_M`, then `b_0..b_M` from the
/// truncated Euler product `Π_l (1 - t^l)^{-a_l}`.
pub fn closed_point_spectrum(counts: &[u64]) -> Result<Spectrum, CurveError> {
    let max = counts.len();
    let mut closed_points = Vec::with_capacity(max);
    for l in 1..=max {
        let mut acc = BigInt::zero();
        for d in (1..=l).filter(|d| l % d == 0) {
            acc += BigInt::from(mobius((l / d) as u64)) * BigInt::from(counts[d - 1]);
        }
        let l_big = BigInt::from(l);
        if acc.is_negative() || !(&acc % &l_big).is_zero() {
            return Err(CurveError::InconsistentCounts(format!(
                "l·a_l = {acc} for l = {l} is not a nonnegative multiple of {l}"
            )));
        }
        let a: u64 = (acc / l_big).try_into().expect("count fits in u64");
        closed_points.push(a);
    }

    let mut series = vec![BigInt::zero(); max + 1];
    series[0] = BigInt::one();
    for (idx, &a) in closed_points.iter().enumerate() {
        let l = idx + 1;
        if a == 0 {
            continue;
        }
        // (1 - t^l)^{-a} = Σ_j C(a + j - 1, j) t^{l j}
        let mut factor = vec![BigInt::zero(); max + 1];
        let mut binom = BigInt::one();
        let a_big = BigInt::from(a);
        for j in 0..=max / l {
            if j > 0 {
                binom = binom * (&a_big + BigInt::from(j - 1)) / BigInt::from(j);
            }
            factor[l * j] = binom.clone();
        }
        let mut next = vec![BigInt::zero(); max + 1];
        for (i, s) in series.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            for (j, fj) in factor.iter().enumerate().take(max + 1 - i) {
                if !fj.is_zero() {
                    next[i + j] += s * fj;
                }
            }
        }
        series = next;
    }

    Ok(Spectrum {
        closed_points,
        effective_divisors: series,
    })
}

/// Point counts of one curve, keyed by extension degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointCountTable {
    pub curve_id: String,
    pub counts: BTreeMap<u32, u64>,
}

impl PointCountTable {
    pub fn new(curve_id: impl Into<String>) -> Self {
        PointCountTable {
            curve_id: curve_id.into(),
            counts: BTreeMap::new(),
        }
    }

    /// `N_1..N_M` if every degree up to `max` is present.
    pub fn prefix(&self, max: u32) -> Option<Vec<u64>> {
        (1..=max).map(|m| self.counts.get(&m).copied()).collect()
    }

    pub fn spectrum(&self, max: u32) -> Result<Spectrum, CurveError> {
        let counts = self
            .prefix(max)
            .ok_or_else(|| CurveError::InconsistentCounts(format!("counts missing below degree {max}")))?;
        closed_point_spectrum(&counts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_values() {
        let expect = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (n, &mu) in (1..=12).zip(expect.iter()) {
            assert_eq!(mobius(n), mu, "mu({n})");
        }
    }

    #[test]
    fn projective_line_over_f2() {
        let counts: Vec<u64> = (1..=4).map(|m| (1u64 << m) + 1).collect();
        let s = closed_point_spectrum(&counts).unwrap();
        assert_eq!(&s.closed_points[..3], &[3, 1, 2]);
        assert_eq!(s.effective_divisors[2], BigInt::from(7));
        assert_eq!(s.point_counts(), counts);
    }

    #[test]
    fn supersingular_elliptic_over_f2() {
        let s = closed_point_spectrum(&[3, 9]).unwrap();
        assert_eq!(s.closed_points, vec![3, 3]);
        assert_eq!(s.effective_divisors[2], BigInt::from(9));
    }

    #[test]
    fn negative_or_fractional_rejected() {
        assert!(closed_point_spectrum(&[5, 4]).is_err()); // 2 a_2 = -1
        assert!(closed_point_spectrum(&[3, 6]).is_err()); // 2 a_2 = 3
    }

    // brute-force oracle: count multisets of closed points by degree
    fn effective_divisors_by_enumeration(a: &[u64], n: usize) -> u64 {
        // dynamic programming over individual points (each point is its own item)
        let mut ways = vec![0u64; n + 1];
        ways[0] = 1;
        for (idx, &count) in a.iter().enumerate() {
            let l = idx + 1;
            for _ in 0..count {
                for deg in l..=n {
                    ways[deg] += ways[deg - l];
                }
            }
        }
        ways[n]
    }

    #[test]
    fn euler_product_matches_multiset_enumeration() {
        let counts = [7u64, 13, 28, 61, 217];
        let s = closed_point_spectrum(&counts).unwrap();
        for n in 0..=5 {
            assert_eq!(
                s.effective_divisors[n],
                BigInt::from(effective_divisors_by_enumeration(&s.closed_points, n))
            );
        }
    }
}
