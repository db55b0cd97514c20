//! The rational zeta function `Z(t) = P(t) / ((1 - t)(1 - q t))` of a curve.
//!
//! Everything here is exact except the root moduli in
//! [`functional_equation_check`]; power sums of the inverse roots come from
//! Newton's identities on the integer coefficients of `P`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::{big, int, rat, rat_pow, series_mul, two_pole_series, QPoly, Rational};
use crate::roots;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZetaError {
    #[error("fitted numerator has a non-integral coefficient {coeff} at t^{degree}")]
    CountsInconsistent { degree: usize, coeff: String },
    #[error("need {needed} point counts, got {got}")]
    NotEnoughCounts { needed: usize, got: usize },
    #[error("invalid zeta data: {0}")]
    Invalid(String),
}

/// `(q, g, P)` with `P` of length `2g + 1`, ascending in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaData {
    q: u64,
    g: u32,
    p: Vec<BigInt>,
}

impl ZetaData {
    /// Validated constructor: `P(0) = 1`, the functional-equation symmetry
    /// and `P(1) >= 1`.
    pub fn new(q: u64, g: u32, p: Vec<BigInt>) -> Result<Self, ZetaError> {
        let z = Self::from_raw(q, g, p)?;
        if !z.p[0].is_one() {
            return Err(ZetaError::Invalid("P(0) must be 1".into()));
        }
        if !z.is_symmetric() {
            return Err(ZetaError::Invalid(
                "coefficients violate a_{2g-i} = q^{g-i} a_i".into(),
            ));
        }
        if z.class_number() < BigInt::one() {
            return Err(ZetaError::Invalid("P(1) must be positive".into()));
        }
        Ok(z)
    }

    /// Only checks the length; for probing the checks with synthetic input.
    pub fn from_raw(q: u64, g: u32, p: Vec<BigInt>) -> Result<Self, ZetaError> {
        if q < 2 {
            return Err(ZetaError::Invalid("q must be at least 2".into()));
        }
        if p.len() != 2 * g as usize + 1 {
            return Err(ZetaError::Invalid(format!(
                "P must have {} coefficients for genus {g}",
                2 * g + 1
            )));
        }
        Ok(ZetaData { q, g, p })
    }

    pub fn from_ints(q: u64, g: u32, p: &[i64]) -> Result<Self, ZetaError> {
        Self::new(q, g, p.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn q_rat(&self) -> Rational {
        int(self.q as i64)
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.p
    }

    pub fn numerator_poly(&self) -> QPoly {
        QPoly::new(self.p.iter().map(big).collect())
    }

    /// `h = P(1) = #Pic^0(C)(F_q)`.
    pub fn class_number(&self) -> BigInt {
        self.p.iter().sum()
    }

    fn is_symmetric(&self) -> bool {
        let g = self.g as i64;
        let q = BigInt::from(self.q);
        (0..=2 * g).all(|i| {
            let lhs = &self.p[(2 * g - i) as usize];
            let rhs = &self.p[i as usize];
            // a_{2g-i} = q^{g-i} a_i, cleared of negative powers
            if i <= g {
                *lhs == num_traits::pow(q.clone(), (g - i) as usize) * rhs
            } else {
                lhs * num_traits::pow(q.clone(), (i - g) as usize) == *rhs
            }
        })
    }
}

/// Exact fit of `P` from `N_1..N_{2g}`: exponentiate `Σ N_m t^m / m`, multiply
/// by `(1 - t)(1 - q t)` and truncate at degree `2g`.
pub fn fit_numerator(q: u64, g: u32, counts: &[u64]) -> Result<ZetaData, ZetaError> {
    let order = 2 * g as usize;
    if counts.len() < order {
        return Err(ZetaError::NotEnoughCounts {
            needed: order,
            got: counts.len(),
        });
    }
    // Z' = (log Z)' Z  =>  n z_n = Σ_{k=1}^{n} N_k z_{n-k}
    let mut z = vec![Rational::one()];
    for n in 1..=order {
        let mut acc = Rational::zero();
        for k in 1..=n {
            acc += int(counts[k - 1] as i64) * &z[n - k];
        }
        z.push(acc / int(n as i64));
    }
    let q_r = int(q as i64);
    let denom = [Rational::one(), -(Rational::one() + &q_r), q_r];
    let p = series_mul(&z, &denom, order);
    let mut out = Vec::with_capacity(order + 1);
    for (degree, c) in p.into_iter().enumerate() {
        if !c.is_integer() {
            return Err(ZetaError::CountsInconsistent {
                degree,
                coeff: crate::poly::fmt_rat(&c),
            });
        }
        out.push(c.to_integer());
    }
    ZetaData::from_raw(q, g, out)
}

#[derive(Debug, Clone)]
pub struct FunctionalEquationReport {
    pub symmetric: bool,
    /// `|λ|` for each inverse root of `P`
    pub root_moduli: Vec<f64>,
    /// `max | |λ| - √q |`, zero when there are no roots
    pub max_deviation: f64,
}

/// Exact coefficient symmetry plus numerical moduli of the inverse roots.
pub fn functional_equation_check(z: &ZetaData) -> FunctionalEquationReport {
    let moduli: Vec<f64> = inverse_roots(z).iter().map(|r| r.norm()).collect();
    let sqrt_q = (z.q as f64).sqrt();
    let max_deviation = moduli
        .iter()
        .map(|m| (m - sqrt_q).abs())
        .fold(0.0, f64::max);
    FunctionalEquationReport {
        symmetric: z.is_symmetric(),
        root_moduli: moduli,
        max_deviation,
    }
}

/// The `λ_j` with `P(t) = Π (1 - λ_j t)`: roots of `t^{2g} P(1/t)`.
pub fn inverse_roots(z: &ZetaData) -> Vec<num_complex::Complex64> {
    roots::roots(&z.numerator_poly().reversed())
}

/// Residue of `ζ_C(s)` stored as the rational `coeff`, meaning `coeff / ln q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueValue {
    pub coeff: Rational,
}

impl ResidueValue {
    pub fn to_f64(&self, q: u64) -> f64 {
        crate::poly::to_f64(&self.coeff) / (q as f64).ln()
    }
}

/// `h = P(1)`, `res_{s=0} = -h/(q-1)` and `res_{s=1} = q^{1-g} h/(q-1)`, in units of `1/ln q`.
pub fn class_number_and_residues(z: &ZetaData) -> (BigInt, ResidueValue, ResidueValue) {
    let h = z.class_number();
    let q = z.q_rat();
    let base = big(&h) / (&q - Rational::one());
    let res0 = ResidueValue { coeff: -base.clone() };
    let res1 = ResidueValue {
        coeff: rat_pow(&q, 1 - z.g as i64) * base,
    };
    (h, res0, res1)
}

/// The same residues read off the Laurent expansion of `Z` at its poles:
/// `s -> 0` is `t -> 1` with `1 - t ~ s ln q`, and `s -> 1` is `t -> 1/q` with
/// `1 - q t ~ (s - 1) ln q`. No functional equation is used.
pub fn residues_by_laurent(z: &ZetaData) -> (ResidueValue, ResidueValue) {
    let p = z.numerator_poly();
    let q = z.q_rat();
    let one = Rational::one();
    // (1 - t) Z(t) at t = 1
    let at_one = p.eval(&one) / (&one - &q);
    // (1 - q t) Z(t) at t = 1/q
    let q_inv = q.recip();
    let at_q_inv = p.eval(&q_inv) / (&one - &q_inv);
    (ResidueValue { coeff: at_one }, ResidueValue { coeff: at_q_inv })
}

/// `b_0..b_{n_max}` of `P(t) / ((1 - t)(1 - q t))`.
pub fn series_coefficients(z: &ZetaData, n_max: usize) -> Vec<BigInt> {
    let p: Vec<Rational> = z.p.iter().map(big).collect();
    let geo = two_pole_series(&z.q_rat(), n_max);
    series_mul(&p, &geo, n_max)
        .into_iter()
        .map(|c| c.to_integer())
        .collect()
}

/// Riemann–Roch closed form `b_n = h (q^{n+1-g} - 1)/(q - 1)`, valid for `n >= 2g - 1`.
pub fn riemann_roch_tail(z: &ZetaData, n: usize) -> Rational {
    let q = z.q_rat();
    let h = big(&z.class_number());
    h * (rat_pow(&q, n as i64 + 1 - z.g as i64) - Rational::one()) / (q - Rational::one())
}

/// `s_1..s_{n_max}` with `s_n = Σ_j λ_j^n`, from `-t P'(t)/P(t) = Σ s_n t^n`.
pub fn newton_power_sums(p: &[BigInt], n_max: usize) -> Vec<BigInt> {
    let coeff = |i: usize| p.get(i).cloned().unwrap_or_default();
    let mut s: Vec<BigInt> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        // s_n = -n a_n - Σ_{i=1}^{n-1} a_i s_{n-i}
        let mut acc = -BigInt::from(n) * coeff(n);
        for i in 1..n {
            acc -= coeff(i) * &s[n - i - 1];
        }
        s.push(acc);
    }
    s
}

/// `N_m = 1 + q^m - s_m`, exact.
pub fn predict_count(z: &ZetaData, m: usize) -> BigInt {
    assert!(m >= 1);
    let s = newton_power_sums(&z.p, m);
    BigInt::one() + num_traits::pow(BigInt::from(z.q), m) - &s[m - 1]
}

#[derive(Debug, Clone)]
pub struct PrincipalPartsReport {
    pub entire_part: QPoly,
    pub remainder_zero: bool,
    pub ok: bool,
}

/// `E(t) = Z(t) - [ -h/((q-1)(1-t)) + q^{1-g} h/((q-1)(1-q t)) ]` as an exact
/// quotient; `ok` when the division is exact and `deg E <= 2g - 2`.
pub fn principal_parts_check(z: &ZetaData) -> PrincipalPartsReport {
    let q = z.q_rat();
    let one = Rational::one();
    let h = big(&z.class_number());
    let qm1 = &q - &one;
    // over the common denominator (q-1)(1-t)(1-qt)
    let p_scaled = z.numerator_poly().scale(&qm1);
    let pole0 = QPoly::new(vec![-h.clone(), h.clone() * &q]); // -h (1 - q t)
    let c1 = rat_pow(&q, 1 - z.g as i64) * &h;
    let pole1 = QPoly::new(vec![c1.clone(), -c1]); // q^{1-g} h (1 - t)
    let numer = p_scaled.sub(&pole0.add(&pole1));
    let denom = QPoly::new(vec![one.clone(), -(&one + &q), q.clone()]);
    let (quot, rem) = numer.div_rem(&denom);
    let entire = quot.scale(&qm1.recip());
    let remainder_zero = rem.is_zero();
    let bound = (2 * z.g as i64 - 2).max(0);
    let ok = remainder_zero && entire.degree().is_none_or(|d| (d as i64) <= bound);
    PrincipalPartsReport {
        entire_part: entire,
        remainder_zero,
        ok,
    }
}

#[derive(Debug, Clone)]
pub struct TateIwasawaReport {
    pub truncation: usize,
    /// `Σ_{0<=n<=N} b_n t^n`
    pub lhs: Vec<Rational>,
    /// the four terms, coefficientwise in degrees `0..=N`
    pub terms: [Vec<Rational>; 4],
    pub ok: bool,
}

/// Regularised decomposition of the box-truncated sum over divisor degrees,
/// with the boundary degree weighted by one half on each side.
pub fn tate_iwasawa_decomposition(z: &ZetaData, n: usize) -> TateIwasawaReport {
    let g = z.g as i64;
    let q = z.q_rat();
    let one = Rational::one();
    let half = rat(1, 2);
    let b = series_coefficients(z, n.max(2 * z.g as usize));
    let b_at = |i: i64| -> Rational {
        if i < 0 {
            Rational::zero()
        } else {
            big(&b[i as usize])
        }
    };
    let h = big(&z.class_number());
    let hq = &h / (&q - &one);
    let q_shift = rat_pow(&q, 1 - g);

    let lhs: Vec<Rational> = (0..=n as i64).map(&b_at).collect();
    let mut t1 = vec![Rational::zero(); n + 1];
    t1[0] = &half * b_at(0);
    let mut t2 = vec![Rational::zero(); n + 1];
    t2[0] = &q_shift * &half * b_at(2 * g - 2);
    for m in 1..=n {
        t2[m] = &q_shift * b_at(2 * g - 2 - m as i64) * rat_pow(&q, m as i64);
    }
    let mut t3 = vec![Rational::zero(); n + 1];
    let mut t4 = vec![Rational::zero(); n + 1];
    t3[0] = &q_shift * &hq * &half;
    t4[0] = -(&hq * &half);
    for m in 1..=n {
        t3[m] = &q_shift * &hq * rat_pow(&q, m as i64);
        t4[m] = -hq.clone();
    }
    let ok = (0..=n).all(|i| lhs[i] == &t1[i] + &t2[i] + &t3[i] + &t4[i]);
    TateIwasawaReport {
        truncation: n,
        lhs,
        terms: [t1, t2, t3, t4],
        ok,
    }
}

/// `|N_m - (q^m + 1)| <= 2g q^{m/2}` with a small float slack.
pub fn within_weil_bound(q: u64, g: u32, m: u32, n_m: u64) -> bool {
    let dev = (n_m as f64 - (q as f64).powi(m as i32) - 1.0).abs();
    dev <= 2.0 * g as f64 * (q as f64).powf(m as f64 / 2.0) + 1e-6
}

pub fn is_nonnegative(n: &BigInt) -> bool {
    !n.is_negative()
}
