//! Elements `a + b √q` of `Q(√q)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Roots;
use num_traits::{One, Zero};

use crate::poly::{fmt_rat, int, rat_pow, Rational};

/// `a + b √q` with rational `a`, `b`.
///
/// When `b = 0` the value is an ordinary rational and combines with scalars
/// over any `q`; two irrational operands must share `q`.
#[derive(Debug, Clone)]
pub struct HalfPowerScalar {
    a: Rational,
    b: Rational,
    q: u64,
}

fn exact_sqrt(q: u64) -> Option<u64> {
    let r = q.sqrt();
    (r * r == q).then_some(r)
}

impl HalfPowerScalar {
    pub fn new(a: Rational, b: Rational, q: u64) -> Self {
        assert!(q >= 1, "q must be positive");
        match exact_sqrt(q) {
            Some(r) if !b.is_zero() => HalfPowerScalar {
                a: a + b * int(r as i64),
                b: Rational::zero(),
                q,
            },
            _ => HalfPowerScalar { a, b, q },
        }
    }

    pub fn rational(a: Rational) -> Self {
        HalfPowerScalar {
            a,
            b: Rational::zero(),
            q: 1,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `q^{e/2}` for any integer `e`.
    pub fn q_half_power(q: u64, e: i64) -> Self {
        let qr = int(q as i64);
        if e.rem_euclid(2) == 0 {
            Self::rational(rat_pow(&qr, e / 2))
        } else {
            Self::new(Rational::zero(), rat_pow(&qr, (e - 1) / 2), q)
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn to_f64(&self) -> f64 {
        crate::poly::to_f64(&self.a) + crate::poly::to_f64(&self.b) * (self.q as f64).sqrt()
    }

    fn common_q(&self, other: &Self) -> u64 {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, true) => self.q.max(other.q),
            (true, false) => other.q,
            (false, true) => self.q,
            (false, false) => {
                assert_eq!(self.q, other.q, "mixing √{} and √{}", self.q, other.q);
                self.q
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        HalfPowerScalar {
            a: &self.a * c,
            b: &self.b * c,
            q: self.q,
        }
    }

    /// `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // (a + b√q)(a - b√q) = a² - b² q, nonzero because √q is irrational here
        let norm = &self.a * &self.a - &self.b * &self.b * int(self.q as i64);
        Some(HalfPowerScalar {
            a: &self.a / &norm,
            b: -&self.b / &norm,
            q: self.q,
        })
    }
}

impl PartialEq for HalfPowerScalar {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.q == other.q)
    }
}

impl Eq for HalfPowerScalar {}

impl From<Rational> for HalfPowerScalar {
    fn from(a: Rational) -> Self {
        Self::rational(a)
    }
}

impl fmt::Display for HalfPowerScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", fmt_rat(&self.a))
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", fmt_rat(&self.b), self.q)
        } else {
            write!(f, "{} + {}*sqrt({})", fmt_rat(&self.a), fmt_rat(&self.b), self.q)
        }
    }
}

impl Add for &HalfPowerScalar {
    type Output = HalfPowerScalar;
    fn add(self, rhs: Self) -> HalfPowerScalar {
        let q = self.common_q(rhs);
        HalfPowerScalar::new(&self.a + &rhs.a, &self.b + &rhs.b, q)
    }
}

impl Sub for &HalfPowerScalar {
    type Output = HalfPowerScalar;
    fn sub(self, rhs: Self) -> HalfPowerScalar {
        let q = self.common_q(rhs);
        HalfPowerScalar::new(&self.a - &rhs.a, &self.b - &rhs.b, q)
    }
}

impl Mul for &HalfPowerScalar {
    type Output = HalfPowerScalar;
    fn mul(self, rhs: Self) -> HalfPowerScalar {
        let q = self.common_q(rhs);
        let qr = int(q as i64);
        HalfPowerScalar::new(
            &self.a * &rhs.a + &self.b * &rhs.b * qr,
            &self.a * &rhs.b + &self.b * &rhs.a,
            q,
        )
    }
}

impl Div for &HalfPowerScalar {
    type Output = HalfPowerScalar;
    fn div(self, rhs: Self) -> HalfPowerScalar {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &HalfPowerScalar {
    type Output = HalfPowerScalar;
    fn neg(self) -> HalfPowerScalar {
        HalfPowerScalar {
            a: -&self.a,
            b: -&self.b,
            q: self.q,
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for HalfPowerScalar {
            type Output = HalfPowerScalar;
            fn $m(self, rhs: Self) -> HalfPowerScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&HalfPowerScalar> for HalfPowerScalar {
            type Output = HalfPowerScalar;
            fn $m(self, rhs: &HalfPowerScalar) -> HalfPowerScalar {
                (&self).$m(rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for HalfPowerScalar {
    type Output = HalfPowerScalar;
    fn neg(self) -> HalfPowerScalar {
        -&self
    }
}

impl Zero for HalfPowerScalar {
    fn zero() -> Self {
        HalfPowerScalar::zero()
    }
    fn is_zero(&self) -> bool {
        HalfPowerScalar::is_zero(self)
    }
}

impl One for HalfPowerScalar {
    fn one() -> Self {
        HalfPowerScalar::one()
    }
}
