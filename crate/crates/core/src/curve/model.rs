use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use super::CurveError;
use crate::field::{enumerate_and_embed, FieldElement, FieldSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Elliptic,
    Hyperelliptic,
    Plane,
    /// The projective line, admitted as a reference model.
    P1,
}

impl CurveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveKind::Elliptic => "elliptic",
            CurveKind::Hyperelliptic => "hyperelliptic",
            CurveKind::Plane => "plane",
            CurveKind::P1 => "p1",
        }
    }
}

/// `coeff · x^ex · y^ey · z^ez`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneTerm {
    pub ex: u32,
    pub ey: u32,
    pub ez: u32,
    pub coeff: FieldElement,
}

/// A validated curve over `F_q`.
///
/// Weierstrass-type models (`elliptic`, `hyperelliptic`) are
/// `y^2 + h(x) y = f(x)` with ascending coefficient lists; plane models are a
/// homogeneous polynomial `F(x, y, z)`.
#[derive(Debug, Clone)]
pub struct CurveModel {
    name: String,
    base: Arc<FieldSpec>,
    kind: CurveKind,
    f: Vec<FieldElement>,
    h: Vec<FieldElement>,
    degree: u32,
    terms: Vec<PlaneTerm>,
    genus: u32,
    canonical: String,
}

impl CurveModel {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &Arc<FieldSpec> {
        &self.base
    }

    pub fn q(&self) -> u64 {
        self.base.q() as u64
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn f(&self) -> &[FieldElement] {
        &self.f
    }

    pub fn h(&self) -> &[FieldElement] {
        &self.h
    }

    pub fn plane_degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[PlaneTerm] {
        &self.terms
    }

    /// Normalised text of the defining data; name excluded.
    pub fn canonical(&self) -> &str {
        &self.canonical
    }

    /// Stable identifier: first 16 hex digits of SHA-256 over the canonical text.
    pub fn id(&self) -> String {
        let digest = Sha256::digest(self.canonical.as_bytes());
        hex::encode(&digest[..8])
    }

    /// `P^1` over `F_{p^k}`.
    pub fn projective_line(p: u64, k: u32) -> Result<Self, CurveError> {
        let base = FieldSpec::build(p, k)?;
        Ok(Self::finish(
            format!("P1/F{}", base.q()),
            base,
            CurveKind::P1,
            Vec::new(),
            Vec::new(),
            1,
            Vec::new(),
            0,
        ))
    }

    /// `y^2 + h(x) y = f(x)`; the kind and genus follow from the degrees.
    pub fn weierstrass(
        name: &str,
        base: Arc<FieldSpec>,
        f: Vec<FieldElement>,
        h: Vec<FieldElement>,
        elliptic: bool,
    ) -> Result<Self, CurveError> {
        let f = trimmed(f);
        let h = trimmed(h);
        let deg_f = f.len().checked_sub(1);
        let deg_h = h.len().checked_sub(1);
        let odd = base.p() != 2;
        let genus = if elliptic {
            if deg_f != Some(3) {
                return Err(invalid("elliptic model needs deg f = 3"));
            }
            if deg_h.is_some_and(|d| d > 1) {
                return Err(invalid("elliptic model needs deg h <= 1"));
            }
            1
        } else {
            let Some(df) = deg_f.filter(|&d| d >= 1) else {
                return Err(invalid("hyperelliptic model needs deg f >= 1"));
            };
            let g = ((df - 1) / 2) as u32;
            if deg_h.is_some_and(|d| d > g as usize + 1) {
                return Err(invalid("hyperelliptic model needs deg h <= g + 1"));
            }
            if odd && !h.is_empty() {
                return Err(invalid(
                    "hyperelliptic model in odd characteristic needs h = 0",
                ));
            }
            g
        };
        if odd {
            // y^2 + h y = f  <=>  (2y + h)^2 = h^2 + 4f
            let disc = add_polys(&mul_polys(&h, &h, &base), &scale_poly(&f, 4, &base));
            if !is_squarefree(&disc) {
                return Err(invalid(if elliptic {
                    "h^2 + 4f is not squarefree (singular cubic)"
                } else {
                    "f is not squarefree (gcd(f, f') != 1)"
                }));
            }
        } else if h.is_empty() {
            return Err(invalid(
                "h = 0 in characteristic 2 gives a singular model",
            ));
        } else {
            char2_affine_smooth(&base, &f, &h)?;
        }
        let kind = if elliptic {
            CurveKind::Elliptic
        } else {
            CurveKind::Hyperelliptic
        };
        Ok(Self::finish(
            name.to_string(),
            base,
            kind,
            f,
            h,
            0,
            Vec::new(),
            genus,
        ))
    }

    /// Homogeneous plane curve of degree `d`; `d = 1` is a line (genus 0).
    pub fn plane(name: &str, base: Arc<FieldSpec>, terms: Vec<PlaneTerm>) -> Result<Self, CurveError> {
        let mut merged: BTreeMap<(u32, u32, u32), FieldElement> = BTreeMap::new();
        for t in terms {
            let slot = merged
                .entry((t.ex, t.ey, t.ez))
                .or_insert_with(|| FieldElement::zero(&base));
            *slot = &*slot + &t.coeff;
        }
        let terms: Vec<PlaneTerm> = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((ex, ey, ez), coeff)| PlaneTerm { ex, ey, ez, coeff })
            .collect();
        let Some(first) = terms.first() else {
            return Err(invalid("plane polynomial is zero"));
        };
        let d = first.ex + first.ey + first.ez;
        if d == 0 {
            return Err(invalid("plane polynomial must have degree >= 1"));
        }
        if terms.iter().any(|t| t.ex + t.ey + t.ez != d) {
            return Err(invalid("plane polynomial is not homogeneous"));
        }
        let genus = (d - 1) * d.saturating_sub(2) / 2;
        let curve = Self::finish(
            name.to_string(),
            base,
            CurveKind::Plane,
            Vec::new(),
            Vec::new(),
            d,
            terms,
            genus,
        );
        if d >= 2 {
            curve.spot_check_smooth()?;
        }
        Ok(curve)
    }

    #[allow(clippy::too_many_arguments)]
    fn finish(
        name: String,
        base: Arc<FieldSpec>,
        kind: CurveKind,
        f: Vec<FieldElement>,
        h: Vec<FieldElement>,
        degree: u32,
        terms: Vec<PlaneTerm>,
        genus: u32,
    ) -> Self {
        let mut canonical = format!("model={};p={};k={}", kind.as_str(), base.p(), base.k());
        let idx = |v: &[FieldElement]| v.iter().map(|c| c.index().to_string()).collect::<Vec<_>>().join(",");
        match kind {
            CurveKind::Elliptic | CurveKind::Hyperelliptic => {
                let _ = write!(canonical, ";f=[{}];h=[{}]", idx(&f), idx(&h));
            }
            CurveKind::Plane => {
                let body: Vec<String> = terms
                    .iter()
                    .map(|t| format!("{}:{}:{}:{}", t.ex, t.ey, t.ez, t.coeff.index()))
                    .collect();
                let _ = write!(canonical, ";terms=[{}]", body.join(","));
            }
            CurveKind::P1 => {}
        }
        CurveModel {
            name,
            base,
            kind,
            f,
            h,
            degree,
            terms,
            genus,
            canonical,
        }
    }

    /// Searches for singular points over `F_{q^m}`, `m <= 4`, as far as the
    /// extension stays below 1024 elements. A partial certificate only.
    fn spot_check_smooth(&self) -> Result<(), CurveError> {
        let q = self.q();
        let mut degrees: Vec<u32> = Vec::new();
        for m in [4u32, 3] {
            if q.pow(m) <= 1024 {
                degrees.push(m);
            }
        }
        if degrees.is_empty() {
            degrees.extend((1..=2).rev().find(|&m| q.pow(m) <= 1024));
        }
        if degrees.is_empty() {
            degrees.push(1);
        }
        for m in degrees {
            let big = FieldSpec::build(self.base.p() as u64, self.base.k() * m)?;
            let (elems, emb) = enumerate_and_embed(&self.base, &big)?;
            let lifted: Vec<PlaneTerm> = self
                .terms
                .iter()
                .map(|t| PlaneTerm {
                    coeff: emb.apply(&t.coeff).expect("coefficient in base field"),
                    ..*t
                })
                .collect();
            let zero = FieldElement::zero(&big);
            let one = FieldElement::one(&big);
            let mut points: Vec<[&FieldElement; 3]> = Vec::new();
            for x in &elems {
                for y in &elems {
                    points.push([x, y, &one]);
                }
                points.push([x, &one, &zero]);
            }
            points.push([&one, &zero, &zero]);
            for pt in points {
                if plane_eval(&lifted, pt).is_zero()
                    && (0..3).all(|v| plane_partial(&lifted, v, pt).is_zero())
                {
                    return Err(invalid(&format!(
                        "singular point found over F_{}",
                        big.q()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// In characteristic 2 an affine singular point of `y^2 + h y = f` has
/// `h(x) = 0`, `y = sqrt(f(x))` and `h'(x) y = f'(x)`. The roots of `h` lie in
/// extensions of degree at most `deg h`, all of which are searched.
fn char2_affine_smooth(
    base: &Arc<FieldSpec>,
    f: &[FieldElement],
    h: &[FieldElement],
) -> Result<(), CurveError> {
    let dh = derivative(h);
    let df = derivative(f);
    let ev = |poly: &[FieldElement], x: &FieldElement| {
        poly.iter()
            .rev()
            .fold(FieldElement::zero(x.spec()), |acc, c| &(&acc * x) + c)
    };
    for m in 1..h.len() as u32 {
        let big = FieldSpec::build(2, base.k() * m)?;
        let (elems, emb) = enumerate_and_embed(base, &big)?;
        let lift = |v: &[FieldElement]| -> Vec<FieldElement> {
            v.iter().map(|c| emb.apply(c).expect("base coefficient")).collect()
        };
        let (f, h, dh, df) = (lift(f), lift(h), lift(&dh), lift(&df));
        for x in elems.iter().filter(|x| ev(&h, x).is_zero()) {
            // square root in characteristic 2: y = v^(q/2)
            let y = ev(&f, x).pow(big.q() as u64 / 2);
            if (&(&ev(&dh, x) * &y) + &ev(&df, x)).is_zero() {
                return Err(invalid(&format!("singular affine point over F_{}", big.q())));
            }
        }
    }
    Ok(())
}

fn invalid(msg: &str) -> CurveError {
    CurveError::InvalidCurve(msg.to_string())
}

pub(crate) fn plane_eval(terms: &[PlaneTerm], pt: [&FieldElement; 3]) -> FieldElement {
    let spec = pt[0].spec();
    let mut acc = FieldElement::zero(spec);
    for t in terms {
        let mono = &(&pt[0].pow(t.ex as u64) * &pt[1].pow(t.ey as u64)) * &pt[2].pow(t.ez as u64);
        acc = &acc + &(&t.coeff * &mono);
    }
    acc
}

fn plane_partial(terms: &[PlaneTerm], var: usize, pt: [&FieldElement; 3]) -> FieldElement {
    let spec = pt[0].spec();
    let derived: Vec<PlaneTerm> = terms
        .iter()
        .filter_map(|t| {
            let e = [t.ex, t.ey, t.ez][var];
            if e == 0 {
                return None;
            }
            let mut exps = [t.ex, t.ey, t.ez];
            exps[var] -= 1;
            Some(PlaneTerm {
                ex: exps[0],
                ey: exps[1],
                ez: exps[2],
                coeff: &t.coeff * &FieldElement::from_int(spec, e as i64),
            })
        })
        .collect();
    plane_eval(&derived, pt)
}

// --- polynomials over F_q (ascending, trimmed) -------------------------------

fn trimmed(mut v: Vec<FieldElement>) -> Vec<FieldElement> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn add_polys(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (slot, c) in out.iter_mut().zip(short) {
        *slot = &*slot + c;
    }
    trimmed(out)
}

fn mul_polys(a: &[FieldElement], b: &[FieldElement], spec: &Arc<FieldSpec>) -> Vec<FieldElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![FieldElement::zero(spec); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trimmed(out)
}

fn scale_poly(a: &[FieldElement], c: i64, spec: &Arc<FieldSpec>) -> Vec<FieldElement> {
    let c = FieldElement::from_int(spec, c);
    trimmed(a.iter().map(|x| x * &c).collect())
}

fn derivative(a: &[FieldElement]) -> Vec<FieldElement> {
    trimmed(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &FieldElement::from_int(c.spec(), i as i64))
            .collect(),
    )
}

fn rem(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut r = trimmed(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = b[db].inv().expect("nonzero leading coefficient");
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = r.last().unwrap() * &lead_inv;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&factor * c);
        }
        r = trimmed(r);
    }
    r
}

fn is_squarefree(f: &[FieldElement]) -> bool {
    if f.len() <= 2 {
        return !f.is_empty();
    }
    let mut a = f.to_vec();
    let mut b = derivative(f);
    if b.is_empty() {
        return false;
    }
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a.len() == 1
}

// --- config document ----------------------------------------------------------

#[derive(Deserialize)]
struct ConfigDoc {
    curve: CurveBlock,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveBlock {
    name: Option<String>,
    model: String,
    p: u64,
    #[serde(default = "default_k")]
    k: u32,
    f: Option<Vec<CoeffSpec>>,
    h: Option<Vec<CoeffSpec>>,
    terms: Option<Vec<TermSpec>>,
    genus: Option<u32>,
}

fn default_k() -> u32 {
    1
}

/// A base-field coefficient: an integer (prime-field element) or a
/// coefficient vector over `F_p` in the base field's polynomial basis.
#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffSpec {
    Int(i64),
    Vector(Vec<i64>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TermSpec {
    Compact([i64; 4]),
    Table { x: u32, y: u32, z: u32, c: CoeffSpec },
}

fn coeff(spec: &Arc<FieldSpec>, c: &CoeffSpec) -> Result<FieldElement, CurveError> {
    match c {
        CoeffSpec::Int(v) => Ok(FieldElement::from_int(spec, *v)),
        CoeffSpec::Vector(v) => FieldElement::from_coeffs(spec, v)
            .map_err(|_| CurveError::Parse(format!("coefficient vector {v:?} too long for F_{}", spec.q()))),
    }
}

/// Parses a `[curve]` document and validates the model.
pub fn parse_curve(text: &str) -> Result<CurveModel, CurveError> {
    let doc: ConfigDoc = toml::from_str(text).map_err(|e| CurveError::Parse(e.to_string()))?;
    let block = doc.curve;
    let base = FieldSpec::build(block.p, block.k).map_err(|e| match e {
        crate::field::FieldError::TooLarge { .. } => CurveError::Field(e),
        other => CurveError::InvalidCurve(other.to_string()),
    })?;
    let list = |v: &Option<Vec<CoeffSpec>>| -> Result<Vec<FieldElement>, CurveError> {
        v.iter().flatten().map(|c| coeff(&base, c)).collect()
    };
    let name = block.name.clone().unwrap_or_default();
    let curve = match block.model.as_str() {
        "p1" => {
            let mut c = CurveModel::projective_line(block.p, block.k)?;
            if !name.is_empty() {
                c.name = name;
            }
            c
        }
        "elliptic" | "hyperelliptic" => {
            if block.f.is_none() {
                return Err(CurveError::Parse("missing key `f`".into()));
            }
            CurveModel::weierstrass(
                &name,
                base.clone(),
                list(&block.f)?,
                list(&block.h)?,
                block.model == "elliptic",
            )?
        }
        "plane" => {
            let Some(specs) = &block.terms else {
                return Err(CurveError::Parse("missing key `terms`".into()));
            };
            let mut terms = Vec::with_capacity(specs.len());
            for t in specs {
                let term = match t {
                    TermSpec::Compact([x, y, z, c]) => {
                        if *x < 0 || *y < 0 || *z < 0 {
                            return Err(CurveError::Parse("negative exponent".into()));
                        }
                        PlaneTerm {
                            ex: *x as u32,
                            ey: *y as u32,
                            ez: *z as u32,
                            coeff: FieldElement::from_int(&base, *c),
                        }
                    }
                    TermSpec::Table { x, y, z, c } => PlaneTerm {
                        ex: *x,
                        ey: *y,
                        ez: *z,
                        coeff: coeff(&base, c)?,
                    },
                };
                terms.push(term);
            }
            CurveModel::plane(&name, base.clone(), terms)?
        }
        other => return Err(CurveError::Parse(format!("unknown model `{other}`"))),
    };
    if let Some(g) = block.genus {
        if g != curve.genus {
            return Err(invalid(&format!(
                "declared genus {g} but the model has genus {}",
                curve.genus
            )));
        }
    }
    Ok(curve)
}
