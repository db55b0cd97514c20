//! The explicit formula for curves, evaluated exactly through power sums of
//! the inverse roots of `P`, plus the trace identity and prime counting.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::curve::Spectrum;
use crate::graded::{GradedFunction, Space};
use crate::poly::{big, int, rat_pow, Rational};
use crate::scalar::HalfPowerScalar as S;
use crate::zeta::{predict_count, ZetaData};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExplicitError {
    #[error("test function must be finitely supported, got {0}")]
    NotFinite(&'static str),
    #[error("need closed points up to degree {needed}, have {available}")]
    NeedMoreCounts { needed: usize, available: usize },
}

/// `s_n = Σ λ^n` and `s_{-n} = Σ λ^{-n}` for `0 <= n <= n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSumTable {
    pub q: u64,
    pub positive: Vec<Rational>,
    pub negative: Vec<Rational>,
}

impl PowerSumTable {
    pub fn n_max(&self) -> usize {
        self.positive.len() - 1
    }

    /// `s_n` for any `|n| <= n_max`.
    pub fn get(&self, n: i64) -> &Rational {
        if n >= 0 {
            &self.positive[n as usize]
        } else {
            &self.negative[n.unsigned_abs() as usize]
        }
    }
}

/// Newton's identities over `Q` for `Π (1 - μ t) = Σ c_i t^i`, returning
/// `Σ μ^n` for `n = 1..=n_max`.
fn newton(c: &[Rational], n_max: usize) -> Vec<Rational> {
    let coeff = |i: usize| c.get(i).cloned().unwrap_or_else(Rational::zero);
    let mut s: Vec<Rational> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut acc = -int(n as i64) * coeff(n);
        for i in 1..n {
            acc -= coeff(i) * &s[n - i - 1];
        }
        s.push(acc);
    }
    s
}

pub fn power_sums(z: &ZetaData, n_max: usize) -> PowerSumTable {
    let p: Vec<Rational> = z.numerator().iter().map(big).collect();
    let two_g = int(2 * z.genus() as i64);
    let mut positive = vec![two_g.clone()];
    positive.extend(newton(&p, n_max));
    // inverse roots of P reversed and normalised: Π (1 - t/λ)
    let lead = p.last().expect("P is nonempty").clone();
    let reciprocal: Vec<Rational> = p.iter().rev().map(|c| c / &lead).collect();
    let mut negative = vec![two_g];
    negative.extend(newton(&reciprocal, n_max));
    PowerSumTable {
        q: z.q(),
        positive,
        negative,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitFormulaReport {
    pub lhs: S,
    pub rhs: S,
    pub ok: bool,
}

/// Both sides for a finitely supported `f`, with `h = Σ f(n) z^n`:
///
/// `h(1/q) - Σ_λ h(1/λ) + h(1)` against
/// `(2 - 2g) f(0) + Σ_{l, n >= 1} l a_l [f(-n l) + q^{-n l} f(n l)]`.
pub fn explicit_formula_sides(
    f: &GradedFunction,
    z: &ZetaData,
    spectrum: &Spectrum,
) -> Result<ExplicitFormulaReport, ExplicitError> {
    if f.space() != Space::D {
        return Err(ExplicitError::NotFinite(f.space().as_str()));
    }
    let reach = f
        .support()
        .keys()
        .map(|k| k.unsigned_abs() as usize)
        .max()
        .unwrap_or(0);
    if reach > spectrum.max_degree() {
        return Err(ExplicitError::NeedMoreCounts {
            needed: reach,
            available: spectrum.max_degree(),
        });
    }
    let q = z.q_rat();
    let sums = power_sums(z, reach);
    let mut lhs = S::zero();
    for (&m, v) in f.support() {
        // h(1/q) + h(1) - Σ_λ λ^{-m}
        let w = rat_pow(&q, -m) + Rational::one() - sums.get(-m);
        lhs = &lhs + &v.scale(&w);
    }
    let g = z.genus() as i64;
    let mut rhs = f.eval(0).scale(&int(2 - 2 * g));
    for l in 1..=reach {
        let a_l = spectrum.a(l).expect("checked against max_degree");
        if a_l == 0 {
            continue;
        }
        let weight = int(l as i64) * big(&BigInt::from(a_l));
        for n in 1..=reach / l {
            let m = (n * l) as i64;
            let term = &f.eval(-m) + &f.eval(m).scale(&rat_pow(&q, -m));
            rhs = &rhs + &term.scale(&weight);
        }
    }
    Ok(ExplicitFormulaReport {
        ok: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Unramified local term `Σ_{n >= 1} [f(n) + q_x^n f(-n)]` with `vol(O*) = 1`.
pub fn artin_unramified(f: &GradedFunction, q_x: u64) -> Result<S, ExplicitError> {
    if f.space() != Space::D {
        return Err(ExplicitError::NotFinite(f.space().as_str()));
    }
    let q = int(q_x as i64);
    Ok(f.support().iter().fold(S::zero(), |acc, (&n, v)| {
        let w = match n {
            n if n > 0 => Rational::one(),
            n if n < 0 => rat_pow(&q, -n),
            _ => Rational::zero(),
        };
        &acc + &v.scale(&w)
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzEntry {
    pub m: u32,
    pub observed: u64,
    pub predicted: BigInt,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzReport {
    pub entries: Vec<LefschetzEntry>,
    pub ok: bool,
}

/// `N_m = 1 + q^m - s_m` for counts that were not used to fit `P`.
pub fn lefschetz_check(z: &ZetaData, extra: &[(u32, u64)]) -> LefschetzReport {
    let entries: Vec<LefschetzEntry> = extra
        .iter()
        .map(|&(m, observed)| {
            let predicted = predict_count(z, m as usize);
            LefschetzEntry {
                m,
                observed,
                ok: predicted == BigInt::from(observed),
                predicted,
            }
        })
        .collect();
    LefschetzReport {
        ok: !entries.is_empty() && entries.iter().all(|e| e.ok),
        entries,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrimeCountingReport {
    pub m: usize,
    /// `#{x : deg x <= m}`
    pub pi: u64,
    /// `N = q^m`
    pub norm_bound: f64,
    pub n_over_ln_n: f64,
    /// `pi ln N / N`
    pub raw_ratio: f64,
    /// `m a_m / q^m`
    pub degree_ratio: f64,
    /// `3 g q^{-m/2} + q^{1-m/2}`
    pub bound: f64,
    pub within_bound: bool,
}

pub fn prime_counting_report(spectrum: &Spectrum, q: u64, g: u32, m: usize) -> PrimeCountingReport {
    assert!(m >= 1 && m <= spectrum.max_degree(), "degree {m} out of range");
    let pi: u64 = spectrum.closed_points[..m].iter().sum();
    let qf = q as f64;
    let norm = qf.powi(m as i32);
    let a_m = spectrum.closed_points[m - 1] as f64;
    let degree_ratio = m as f64 * a_m / norm;
    let bound = 3.0 * g as f64 * qf.powf(-(m as f64) / 2.0) + qf.powf(1.0 - m as f64 / 2.0);
    PrimeCountingReport {
        m,
        pi,
        norm_bound: norm,
        n_over_ln_n: norm / norm.ln(),
        raw_ratio: pi as f64 * norm.ln() / norm,
        degree_ratio,
        bound,
        within_bound: (degree_ratio - 1.0).abs() <= bound,
    }
}
