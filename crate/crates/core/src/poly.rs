//! Dense univariate polynomials and truncated power series over `Q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// `base^exp` for any integer exponent.
pub fn rat_pow(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

/// Ascending coefficients; the zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly(pub Vec<Rational>);

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.0.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.0
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.0[d].clone();
        let mut rem = self.0.clone();
        if rem.len() <= d {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - d];
        for top in (d..rem.len()).rev() {
            let c = &rem[top] / &lead;
            if c.is_zero() {
                continue;
            }
            for (i, b) in divisor.0.iter().enumerate() {
                rem[top - d + i] -= &c * b;
            }
            quot[top - d] = c;
        }
        rem.truncate(d);
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.0.last() {
            Some(lead) => self.scale(&lead.recip()),
            None => Self::zero(),
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `t^n P(1/t)` for `n = deg P`.
    pub fn reversed(&self) -> Self {
        let mut c = self.0.clone();
        c.reverse();
        Self::new(c)
    }

    /// Square-free factorisation (Yun): `[(f_1, 1), (f_2, 2), ...]` with each
    /// `f_i` monic, square-free and pairwise coprime. Characteristic zero.
    pub fn squarefree_decomposition(&self) -> Vec<(QPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // fall back through a scaled division for huge numerators/denominators
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Power series product truncated after degree `order`.
pub fn series_mul(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients `0..=order` of `1 / ((1 - t)(1 - q t))`, i.e. `(q^{n+1}-1)/(q-1)`
/// for `q != 1`.
pub fn two_pole_series(q: &Rational, order: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(order + 1);
    let mut qpow = Rational::one();
    let mut acc = Rational::zero();
    for _ in 0..=order {
        acc += &qpow;
        out.push(acc.clone());
        qpow *= q;
    }
    out
}

/// Render a rational as `"n"` or `"n/d"`.
pub fn fmt_rat(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_integral(r: &Rational) -> bool {
    r.is_integer()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn div_rem_exact() {
        let a = QPoly::from_ints(&[1, -3, 2]); // (1-t)(1-2t)
        let b = QPoly::from_ints(&[1, -1]);
        let (qt, r) = a.div_rem(&b);
        assert_eq!(qt, QPoly::from_ints(&[1, -2]));
        assert!(r.is_zero());
    }

    #[test]
    fn yun_separates_multiplicities() {
        // (1 + 5t^2)^2 (t - 3)
        let f = QPoly::from_ints(&[1, 0, 5])
            .mul(&QPoly::from_ints(&[1, 0, 5]))
            .mul(&QPoly::from_ints(&[-3, 1]));
        let parts = f.squarefree_decomposition();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].1, 1);
        assert_eq!(parts[0].0, QPoly::from_ints(&[-3, 1]));
        assert_eq!(parts[1].1, 2);
        assert_eq!(parts[1].0, QPoly::new(vec![rat(1, 5), int(0), int(1)]));
    }

    #[test]
    fn two_pole_series_matches_closed_form() {
        let s = two_pole_series(&int(2), 4);
        let expect: Vec<_> = [1, 3, 7, 15, 31].iter().map(|&v| int(v)).collect();
        assert_eq!(s, expect);
    }
}
