//! Rational functions on the torus `G_m` with poles of order at most one at
//! `z = 1` and `z = 1/q`, the Mellin transform from graded functions, the
//! involution `z -> 1/(q z)` and residues of `R dz/z`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::graded::{GradedError, GradedFunction, Space};
use crate::poly::{big, int, rat_pow, Rational};
use crate::scalar::HalfPowerScalar as S;
use crate::zeta::ZetaData;

/// Laurent polynomial with nonzero coefficients keyed by exponent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly(BTreeMap<i64, S>);

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly(BTreeMap::new())
    }

    pub fn monomial(k: i64, c: S) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, S)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn from_ints(lowest: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (lowest + i as i64, S::from_int(c))),
        )
    }

    fn add_term(&mut self, k: i64, c: S) {
        let v = match self.0.remove(&k) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.0.insert(k, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &S)> {
        self.0.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, k: i64) -> S {
        self.0.get(&k).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (k, c) in other.terms() {
            p.add_term(k, c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&S::from_int(-1)))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.terms().map(|(k, v)| (k, v * c)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero();
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                p.add_term(i + j, a * b);
            }
        }
        p
    }

    /// Multiplication by `z^m`.
    pub fn shift(&self, m: i64) -> Self {
        LaurentPoly(self.0.iter().map(|(&k, c)| (k + m, c.clone())).collect())
    }

    /// Value at a nonzero rational point.
    pub fn eval(&self, z: &Rational) -> S {
        self.terms()
            .fold(S::zero(), |acc, (k, c)| &acc + &c.scale(&rat_pow(z, k)))
    }

    /// `N(1/(q z))`.
    pub fn at_inverse_qz(&self, q: u64) -> Self {
        let qr = int(q as i64);
        Self::from_terms(self.terms().map(|(k, c)| (-k, c.scale(&rat_pow(&qr, -k)))))
    }

    /// Exact quotient by `(1 - c z)`, `None` when `1/c` is not a root.
    fn div_one_minus(&self, c: &Rational) -> Option<Self> {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return Some(Self::zero());
        };
        let cs = S::rational(c.clone());
        let mut out = Vec::with_capacity((hi - lo) as usize);
        let mut prev = S::zero();
        for k in lo..=hi {
            let r = &self.coeff(k) + &(&cs * &prev);
            if k == hi {
                return r.is_zero().then(|| {
                    Self::from_terms(out.into_iter().enumerate().map(|(i, v)| (lo + i as i64, v)))
                });
            }
            out.push(r.clone());
            prev = r;
        }
        unreachable!()
    }
}

/// The four places of the compactified torus where `R dz/z` can have poles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TorusPoint {
    Zero,
    One,
    QInv,
    Infinity,
}

impl TorusPoint {
    pub const ALL: [TorusPoint; 4] = [
        TorusPoint::Zero,
        TorusPoint::One,
        TorusPoint::QInv,
        TorusPoint::Infinity,
    ];

    /// Image under `z -> 1/(q z)`.
    pub fn image(self) -> Self {
        match self {
            TorusPoint::Zero => TorusPoint::Infinity,
            TorusPoint::Infinity => TorusPoint::Zero,
            TorusPoint::One => TorusPoint::QInv,
            TorusPoint::QInv => TorusPoint::One,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TorusPoint::Zero => "0",
            TorusPoint::One => "1",
            TorusPoint::QInv => "q_inv",
            TorusPoint::Infinity => "infinity",
        }
    }
}

/// `N(z) / ((1 - z)^{e1} (1 - q z)^{e2})` with `e1, e2 ∈ {0, 1}`, reduced so
/// that no declared pole cancels against the numerator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusRational {
    num: LaurentPoly,
    e1: u8,
    e2: u8,
    q: u64,
}

impl fmt::Display for TorusRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.num.terms().map(|(k, c)| format!("({c})z^{k}")).collect();
        let num = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        write!(f, "[{num}]")?;
        if self.e1 == 1 {
            write!(f, "/(1-z)")?;
        }
        if self.e2 == 1 {
            write!(f, "/(1-{}z)", self.q)?;
        }
        Ok(())
    }
}

impl TorusRational {
    pub fn new(num: LaurentPoly, e1: u8, e2: u8, q: u64) -> Self {
        assert!(e1 <= 1 && e2 <= 1, "pole orders are at most one");
        assert!(q >= 2, "q must be at least 2");
        let mut r = TorusRational { num, e1, e2, q };
        if r.e1 == 1 {
            if let Some(quot) = r.num.div_one_minus(&int(1)) {
                r.num = quot;
                r.e1 = 0;
            }
        }
        if r.e2 == 1 {
            if let Some(quot) = r.num.div_one_minus(&int(q as i64)) {
                r.num = quot;
                r.e2 = 0;
            }
        }
        r
    }

    pub fn laurent(num: LaurentPoly, q: u64) -> Self {
        Self::new(num, 0, 0, q)
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn poles(&self) -> (u8, u8) {
        (self.e1, self.e2)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    fn q_rat(&self) -> Rational {
        int(self.q as i64)
    }

    pub fn shift(&self, m: i64) -> Self {
        Self::new(self.num.shift(m), self.e1, self.e2, self.q)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.num.scale(c), self.e1, self.e2, self.q)
    }

    /// Numerator over the full denominator `(1 - z)(1 - q z)`.
    fn over_full_denominator(&self) -> LaurentPoly {
        let mut n = self.num.clone();
        if self.e1 == 0 {
            n = n.mul(&LaurentPoly::from_ints(0, &[1, -1]));
        }
        if self.e2 == 0 {
            n = n.mul(&LaurentPoly::from_ints(0, &[1, -(self.q as i64)]));
        }
        n
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.q, other.q);
        let n = self.over_full_denominator().add(&other.over_full_denominator());
        Self::new(n, 1, 1, self.q)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&S::from_int(-1)))
    }

    pub fn mul_laurent(&self, p: &LaurentPoly) -> Self {
        Self::new(self.num.mul(p), self.e1, self.e2, self.q)
    }

    /// Value at a rational point away from the poles.
    pub fn eval(&self, z: &Rational) -> S {
        let one = Rational::from_integer(1.into());
        let mut d = Rational::from_integer(1.into());
        if self.e1 == 1 {
            d *= &one - z;
        }
        if self.e2 == 1 {
            d *= &one - self.q_rat() * z;
        }
        self.num.eval(z).scale(&d.recip())
    }

    /// `((1 - z) R)(1)`, zero without a pole at 1.
    pub fn coefficient_at_one(&self) -> S {
        if self.e1 == 0 {
            return S::zero();
        }
        let one = int(1);
        let mut v = self.num.eval(&one);
        if self.e2 == 1 {
            v = v.scale(&(&one - self.q_rat()).recip());
        }
        v
    }

    /// `((1 - q z) R)(1/q)`, zero without a pole at `1/q`.
    pub fn coefficient_at_q_inv(&self) -> S {
        if self.e2 == 0 {
            return S::zero();
        }
        let qi = self.q_rat().recip();
        let mut v = self.num.eval(&qi);
        if self.e1 == 1 {
            v = v.scale(&(int(1) - &qi).recip());
        }
        v
    }
}

/// `n`-th Taylor coefficient at 0 of `1/((1 - z)^{e1} (1 - c z)^{e2})`.
fn pole_series(e1: u8, e2: u8, c: &Rational, n: i64) -> Rational {
    if n < 0 {
        return Rational::zero();
    }
    match (e1, e2) {
        (0, 0) => int(i64::from(n == 0)),
        (1, 0) => int(1),
        (0, 1) => rat_pow(c, n),
        _ => {
            if *c == int(1) {
                int(n + 1)
            } else {
                (rat_pow(c, n + 1) - int(1)) / (c - int(1))
            }
        }
    }
}

/// `Σ f(n) z^n` as a rational function.
pub fn mellin(f: &GradedFunction, q: u64) -> TorusRational {
    let finite = LaurentPoly::from_terms(f.support().iter().map(|(&k, v)| (k, v.clone())));
    let n1 = f.threshold();
    let (a, b) = f.tail();
    // a Σ_{n>=n1} q^n z^n + b Σ_{n>=n1} z^n
    let one_minus_z = LaurentPoly::from_ints(0, &[1, -1]);
    let one_minus_qz = LaurentPoly::from_ints(0, &[1, -(q as i64)]);
    let num = finite
        .mul(&one_minus_z)
        .mul(&one_minus_qz)
        .add(&one_minus_z.scale(&a.scale(&rat_pow(&int(q as i64), n1))).shift(n1))
        .add(&one_minus_qz.scale(b).shift(n1));
    TorusRational::new(num, 1, 1, q)
}

/// Inverse of [`mellin`]: `R = L + c1/(1 - z) + c2/(1 - q z)` expands to
/// `f(n) = L_n + [n >= 0](c1 + c2 q^n)`.
pub fn inverse_mellin(r: &TorusRational) -> GradedFunction {
    let c1 = r.coefficient_at_one();
    let c2 = r.coefficient_at_q_inv();
    let poles = TorusRational::new(LaurentPoly::monomial(0, c1.clone()), 1, 0, r.q)
        .add(&TorusRational::new(LaurentPoly::monomial(0, c2.clone()), 0, 1, r.q));
    let rest = r.sub(&poles);
    debug_assert_eq!(rest.poles(), (0, 0));
    let space = if r.e2 == 1 {
        Space::DPlusPlus
    } else if r.e1 == 1 {
        Space::DPlus
    } else {
        Space::D
    };
    let threshold = rest.num.max_exp().map_or(0, |k| (k + 1).max(0));
    let support: BTreeMap<i64, S> = (rest.num.min_exp().unwrap_or(0).min(0)..threshold)
        .map(|n| {
            let mut v = rest.num.coeff(n);
            if n >= 0 {
                v = &(&v + &c1) + &c2.scale(&rat_pow(&r.q_rat(), n));
            }
            (n, v)
        })
        .collect();
    GradedFunction::from_parts(space, support, threshold, c2, c1, r.q)
        .expect("space chosen from the pole pattern")
}

/// `R(1/(q z))`; the poles at 1 and `1/q` trade places.
pub fn involution_pullback(r: &TorusRational) -> TorusRational {
    // (1 - 1/(qz)) = -(1 - qz)/(qz) and (1 - 1/z) = -(1 - z)/z
    let mut num = r.num.at_inverse_qz(r.q);
    if r.e1 == 1 {
        num = num.mul(&LaurentPoly::monomial(1, S::from_int(-(r.q as i64))));
    }
    if r.e2 == 1 {
        num = num.mul(&LaurentPoly::monomial(1, S::from_int(-1)));
    }
    TorusRational::new(num, r.e2, r.e1, r.q)
}

/// Local Fourier transform on the Mellin side:
/// `q^{-k/2} z^{-k} (1 - 1/(q z)) (1 - z)^{-1} R(1/(q z))`.
pub fn torus_fourier_local(r: &TorusRational, q_x: u64, k_x: i64) -> Result<TorusRational, GradedError> {
    if r.e2 != 0 {
        return Err(GradedError::NotInSpace("pole at 1/q outside C_+".into()));
    }
    let mut num = r.num.at_inverse_qz(q_x);
    if r.e1 == 0 {
        // the factor (1 - 1/(q z)) survives
        let factor = LaurentPoly::from_terms([
            (0, S::one()),
            (-1, S::rational(-int(q_x as i64).recip())),
        ]);
        num = num.mul(&factor);
    }
    let num = num.shift(-k_x).scale(&S::q_half_power(q_x, -k_x));
    Ok(TorusRational::new(num, 1, 0, q_x))
}

/// `z^d P(z) / ((1 - z)(1 - q z))`.
pub fn standard_global(z: &ZetaData, d: i64) -> TorusRational {
    let num = LaurentPoly::from_terms(
        z.numerator()
            .iter()
            .enumerate()
            .map(|(i, c)| (d + i as i64, S::rational(big(c)))),
    );
    TorusRational::new(num, 1, 1, z.q())
}

/// Residue of `R dz/z` at one of the four points.
pub fn residue_at(r: &TorusRational, point: TorusPoint) -> S {
    let q = r.q_rat();
    match point {
        // z^0 coefficient of the expansion at 0
        TorusPoint::Zero => r.num.terms().fold(S::zero(), |acc, (k, c)| {
            &acc + &c.scale(&pole_series(r.e1, r.e2, &q, -k))
        }),
        // R ~ A/(1 - z) = -A/(z - 1) and dz/z -> dz
        TorusPoint::One => -r.coefficient_at_one(),
        // R ~ B/(1 - q z) = -(B/q)/(z - 1/q) and 1/z -> q
        TorusPoint::QInv => -r.coefficient_at_q_inv(),
        TorusPoint::Infinity => {
            // w = 1/z: dz/z = -dw/w and
            // R(1/w) = N(1/w) w^{e1+e2} / ((-1)^{e1} (1 - w)^{e1} (-q)^{e2} (1 - w/q)^{e2})
            let e = i64::from(r.e1 + r.e2);
            let qi = q.recip();
            let w0 = r.num.terms().fold(S::zero(), |acc, (k, c)| {
                &acc + &c.scale(&pole_series(r.e1, r.e2, &qi, k - e))
            });
            let mut sign = int(if r.e1 == 1 { -1 } else { 1 });
            if r.e2 == 1 {
                sign *= -q.clone();
            }
            -w0.scale(&sign.recip())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueReport {
    pub residues: BTreeMap<TorusPoint, S>,
    pub sum: S,
}

pub fn residue_report(r: &TorusRational) -> ResidueReport {
    let residues: BTreeMap<TorusPoint, S> =
        TorusPoint::ALL.iter().map(|&p| (p, residue_at(r, p))).collect();
    let sum = residues.values().fold(S::zero(), |s, v| &s + v);
    ResidueReport { residues, sum }
}

#[derive(Debug, Clone)]
pub struct PoissonReport {
    pub d: i64,
    pub shift: i64,
    /// `(res_0(z^n f dz/z), res_1(f dz/z))`
    pub lhs: (S, S),
    /// `(res_0(z^{-n} i*f dz/z), res_1(i*f dz/z))`
    pub rhs: (S, S),
    /// `lhs = q^{-n} rhs`, summed
    pub ok: bool,
    /// `lhs = rhs` without the `q^{-n}` factor
    pub literal_ok: bool,
}

/// Poisson summation for the standard function of a degree-`d` divisor, as an
/// identity between residues at 0 and 1.
///
/// Shifting by `z^n` multiplies the pulled-back side by `q^{-n}` because
/// `i*(z^n) = q^{-n} z^{-n}`; `ok` includes that factor and `literal_ok`
/// records whether the unweighted sums agree too (they do only for `n = 0`
/// or when both sides vanish).
pub fn poisson_residue_check(z: &ZetaData, d: i64, shift: i64) -> PoissonReport {
    let f = standard_global(z, d);
    let pulled = involution_pullback(&f);
    let lhs = (
        residue_at(&f.shift(shift), TorusPoint::Zero),
        residue_at(&f, TorusPoint::One),
    );
    let rhs = (
        residue_at(&pulled.shift(-shift), TorusPoint::Zero),
        residue_at(&pulled, TorusPoint::One),
    );
    let lhs_sum = &lhs.0 + &lhs.1;
    let rhs_sum = &rhs.0 + &rhs.1;
    let weight = S::rational(rat_pow(&z.q_rat(), -shift));
    PoissonReport {
        d,
        shift,
        ok: lhs_sum == &weight * &rhs_sum,
        literal_ok: lhs_sum == rhs_sum,
        lhs,
        rhs,
    }
}
