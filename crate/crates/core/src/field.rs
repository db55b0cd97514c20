//! Finite fields `F_{p^k}` as `F_p[x] / (m(x))` with an explicitly chosen modulus.
//!
//! Every extension is built directly over the prime field. Moving curve
//! coefficients from `F_q` into `F_{q^m}` goes through an explicit
//! [`Embedding`] instead of a tower of quotient rings.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

/// Largest field cardinality the crate will construct.
pub const FIELD_CAP: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    InvalidPrime(u64),
    #[error("field of size {p}^{k} exceeds the cap of {FIELD_CAP} elements")]
    TooLarge { p: u64, k: u32 },
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    SpecMismatch,
    #[error("no embedding of F_{{p^{small}}} into F_{{p^{big}}}")]
    NoEmbedding { small: u32, big: u32 },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Field description: characteristic, degree and the defining monic modulus
/// (ascending coefficients, length `k + 1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    modulus: Vec<u32>,
    q: u32,
}

impl FieldSpec {
    /// Builds `F_{p^k}` using the lexicographically smallest monic irreducible
    /// of degree `k` (coefficients compared from the constant term upwards).
    /// The prime field uses the sentinel modulus `x`.
    pub fn build(p: u64, k: u32) -> Result<Arc<FieldSpec>, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::InvalidPrime(p));
        }
        if k == 0 {
            return Err(FieldError::InvalidDegree);
        }
        let q = checked_pow(p, k).filter(|&q| q <= FIELD_CAP);
        let Some(q) = q else {
            return Err(FieldError::TooLarge { p, k });
        };
        let p32 = p as u32;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p32, k as usize)
        };
        Ok(Arc::new(FieldSpec {
            p: p32,
            k,
            modulus,
            q: q as u32,
        }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn same_field(&self, other: &FieldSpec) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
        if acc > FIELD_CAP {
            return Some(acc);
        }
    }
    Some(acc)
}

// ---------------------------------------------------------------------------
// Polynomials over F_p as ascending coefficient vectors, trailing zeros trimmed.

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    // p is small; Fermat is plenty fast
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Remainder of `a` modulo `b` (b nonzero), both trimmed.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p) as u64;
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = (*r.last().unwrap() as u64 * lead_inv) % p as u64;
        for (i, &bc) in b.iter().enumerate() {
            let sub = factor * bc as u64 % p as u64;
            let slot = &mut r[shift + i];
            *slot = ((*slot as u64 + p as u64 - sub) % p as u64) as u32;
        }
        trim(&mut r);
    }
    r
}

fn poly_divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quot = vec![0u32; r.len() - db];
    let lead_inv = inv_mod_p(b[db], p) as u64;
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = (*r.last().unwrap() as u64 * lead_inv) % p as u64;
        quot[shift] = factor as u32;
        for (i, &bc) in b.iter().enumerate() {
            let sub = factor * bc as u64 % p as u64;
            let slot = &mut r[shift + i];
            *slot = ((*slot as u64 + p as u64 - sub) % p as u64) as u32;
        }
        trim(&mut r);
    }
    trim(&mut quot);
    (quot, r)
}

fn poly_sub_mul(a: &[u32], b: &[u32], c: &[u32], p: u32) -> Vec<u32> {
    // a - b*c
    let mut out = a.to_vec();
    let len = (b.len() + c.len()).saturating_sub(1).max(a.len());
    out.resize(len, 0);
    for (i, &bi) in b.iter().enumerate() {
        for (j, &cj) in c.iter().enumerate() {
            let sub = bi as u64 * cj as u64 % p as u64;
            out[i + j] = ((out[i + j] as u64 + p as u64 - sub) % p as u64) as u32;
        }
    }
    trim(&mut out);
    out
}

/// Monic polynomial of degree `deg` whose non-leading coefficients are the
/// base-`p` digits of `index` (constant term least significant).
fn monic_from_index(mut index: u64, deg: usize, p: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        v.push((index % p as u64) as u32);
        index /= p as u64;
    }
    v.push(1);
    v
}

/// Irreducibility by trial division against every monic polynomial of degree
/// at most `deg / 2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let divisor = monic_from_index(idx, d, p);
            if poly_rem(poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, k: usize) -> Vec<u32> {
    // Lexicographic order low-to-high: the constant term is the most
    // significant key, so iterate with c0 outermost.
    let total = (p as u64).pow(k as u32);
    for rank in 0..total {
        // rank's most significant digit is c0
        let mut coeffs = vec![0u32; k + 1];
        let mut r = rank;
        for i in (0..k).rev() {
            coeffs[i] = (r % p as u64) as u32;
            r /= p as u64;
        }
        coeffs[k] = 1;
        if coeffs[0] == 0 {
            continue;
        }
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

// ---------------------------------------------------------------------------

/// Element of a finite field: a coefficient vector of length `k` over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    spec: Arc<FieldSpec>,
    coeffs: Vec<u32>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}{:?}", self.spec.q, self.coeffs)
    }
}

impl FieldElement {
    pub fn zero(spec: &Arc<FieldSpec>) -> Self {
        FieldElement {
            spec: spec.clone(),
            coeffs: vec![0; spec.k as usize],
        }
    }

    pub fn one(spec: &Arc<FieldSpec>) -> Self {
        Self::from_int(spec, 1)
    }

    /// Prime-field element `c mod p`.
    pub fn from_int(spec: &Arc<FieldSpec>, c: i64) -> Self {
        let mut e = Self::zero(spec);
        e.coeffs[0] = c.rem_euclid(spec.p as i64) as u32;
        e
    }

    /// Element from a coefficient vector (ascending powers of the generator);
    /// entries are reduced mod `p`, missing entries are zero.
    pub fn from_coeffs(spec: &Arc<FieldSpec>, coeffs: &[i64]) -> Result<Self, FieldError> {
        if coeffs.len() > spec.k as usize {
            // only allowed if the excess is zero
            if coeffs[spec.k as usize..]
                .iter()
                .any(|c| c.rem_euclid(spec.p as i64) != 0)
            {
                return Err(FieldError::SpecMismatch);
            }
        }
        let mut e = Self::zero(spec);
        for (slot, &c) in e.coeffs.iter_mut().zip(coeffs) {
            *slot = c.rem_euclid(spec.p as i64) as u32;
        }
        Ok(e)
    }

    /// The residue class of `x`; for the prime field this is the sentinel 0.
    pub fn generator(spec: &Arc<FieldSpec>) -> Self {
        let mut e = Self::zero(spec);
        if spec.k > 1 {
            e.coeffs[1] = 1;
        }
        e
    }

    /// Element at position `index` of the counting order (constant term is
    /// the least significant base-`p` digit).
    pub fn from_index(spec: &Arc<FieldSpec>, mut index: u32) -> Self {
        let mut e = Self::zero(spec);
        for slot in e.coeffs.iter_mut() {
            *slot = index % spec.p;
            index /= spec.p;
        }
        e
    }

    pub fn index(&self) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u32, |acc, &c| acc * self.spec.p + c)
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if Arc::ptr_eq(&self.spec, &other.spec) || self.spec.same_field(&other.spec) {
            Ok(())
        } else {
            Err(FieldError::SpecMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let p = self.spec.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        Ok(FieldElement {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let p = self.spec.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        Ok(FieldElement {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let p = self.spec.p as u64;
        let k = self.spec.k as usize;
        if k == 1 {
            return Ok(FieldElement {
                spec: self.spec.clone(),
                coeffs: vec![((self.coeffs[0] as u64 * other.coeffs[0] as u64) % p) as u32],
            });
        }
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] += a as u64 * b as u64;
            }
        }
        // reduce by the monic modulus from the top down
        let m = &self.spec.modulus;
        for top in (k..prod.len()).rev() {
            let c = prod[top] % p;
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for i in 0..k {
                // x^k = -(m_0 + ... + m_{k-1} x^{k-1})
                let sub = c * m[i] as u64 % p;
                prod[top - k + i] += p - sub;
            }
        }
        let coeffs = prod[..k].iter().map(|&c| (c % p) as u32).collect();
        Ok(FieldElement {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        let p = self.spec.p;
        FieldElement {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(|&c| (p - c) % p).collect(),
        }
    }

    /// Square-and-multiply.
    pub fn pow(&self, mut exp: u64) -> Self {
        let mut result = Self::one(&self.spec);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        result
    }

    /// Inverse via the extended Euclidean algorithm on `F_p[x]`.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let p = self.spec.p;
        let k = self.spec.k as usize;
        if k == 1 {
            return Ok(Self::from_int(
                &self.spec,
                inv_mod_p(self.coeffs[0], p) as i64,
            ));
        }
        // invariant: s_i * a ≡ r_i (mod m)
        let mut r0 = self.spec.modulus.clone();
        let mut r1 = self.coeffs.clone();
        trim(&mut r1);
        let mut s0: Vec<u32> = Vec::new();
        let mut s1: Vec<u32> = vec![1];
        while !r1.is_empty() {
            let (quot, rem) = poly_divrem(&r0, &r1, p);
            let s2 = poly_sub_mul(&s0, &quot, &s1, p);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant
        let c_inv = inv_mod_p(r0[0], p) as u64;
        let mut coeffs: Vec<u32> = s0
            .iter()
            .map(|&c| ((c as u64 * c_inv) % p as u64) as u32)
            .collect();
        coeffs.resize(k, 0);
        Ok(FieldElement {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    /// Absolute trace down to `F_p`, as an integer in `[0, p)`.
    pub fn absolute_trace(&self) -> u32 {
        let mut acc = Self::zero(&self.spec);
        let mut term = self.clone();
        for _ in 0..self.spec.k {
            acc = &acc + &term;
            term = term.pow(self.spec.p as u64);
        }
        acc.coeffs[0]
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field mismatch in add")
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("field mismatch in sub")
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("field mismatch in mul")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

/// Every element of the field in counting order.
pub fn enumerate(spec: &Arc<FieldSpec>) -> Vec<FieldElement> {
    (0..spec.q).map(|i| FieldElement::from_index(spec, i)).collect()
}

/// Field homomorphism `F_{p^a} -> F_{p^b}` determined by the image of the
/// generator of the small field.
#[derive(Debug, Clone)]
pub struct Embedding {
    small: Arc<FieldSpec>,
    big: Arc<FieldSpec>,
    /// image of `x^i` for `i < small.k`
    basis_images: Vec<FieldElement>,
}

impl Embedding {
    pub fn small(&self) -> &Arc<FieldSpec> {
        &self.small
    }

    pub fn big(&self) -> &Arc<FieldSpec> {
        &self.big
    }

    pub fn generator_image(&self) -> FieldElement {
        if self.small.k == 1 {
            FieldElement::zero(&self.big)
        } else {
            self.basis_images[1].clone()
        }
    }

    pub fn apply(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if !a.spec.same_field(&self.small) {
            return Err(FieldError::SpecMismatch);
        }
        let mut acc = FieldElement::zero(&self.big);
        for (c, img) in a.coeffs.iter().zip(&self.basis_images) {
            if *c != 0 {
                let scaled = &FieldElement::from_int(&self.big, *c as i64) * img;
                acc = &acc + &scaled;
            }
        }
        Ok(acc)
    }
}

fn eval_prime_poly(coeffs: &[u32], x: &FieldElement) -> FieldElement {
    let mut acc = FieldElement::zero(&x.spec);
    for &c in coeffs.iter().rev() {
        acc = &(&acc * x) + &FieldElement::from_int(&x.spec, c as i64);
    }
    acc
}

/// Full enumeration of `big` and the embedding sending the generator of
/// `small` to the first root of `small`'s modulus in that enumeration.
pub fn enumerate_and_embed(
    small: &Arc<FieldSpec>,
    big: &Arc<FieldSpec>,
) -> Result<(Vec<FieldElement>, Embedding), FieldError> {
    if small.p != big.p || big.k % small.k != 0 {
        return Err(FieldError::NoEmbedding {
            small: small.k,
            big: big.k,
        });
    }
    let elements = enumerate(big);
    let root = elements
        .iter()
        .find(|e| eval_prime_poly(&small.modulus, e).is_zero())
        .cloned()
        .expect("a subfield modulus splits in the extension");
    let mut basis_images = Vec::with_capacity(small.k as usize);
    let mut power = FieldElement::one(big);
    for _ in 0..small.k {
        basis_images.push(power.clone());
        power = &power * &root;
    }
    Ok((
        elements,
        Embedding {
            small: small.clone(),
            big: big.clone(),
            basis_images,
        },
    ))
}
