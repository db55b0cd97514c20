use super::model::{plane_eval, CurveKind, CurveModel, PlaneTerm};
use super::CurveError;
use crate::field::{enumerate_and_embed, FieldElement, FieldSpec};
use crate::par::{sum_range, Execution};

/// `N_m = #C(F_{q^m})`, enumerating on all available cores.
pub fn count_points(curve: &CurveModel, m: u32) -> Result<u64, CurveError> {
    count_points_with(curve, m, Execution::Parallel)
}

/// `N_1, ..., N_max`.
pub fn count_range(curve: &CurveModel, max_m: u32, exec: Execution) -> Result<Vec<u64>, CurveError> {
    (1..=max_m).map(|m| count_points_with(curve, m, exec)).collect()
}

fn eval(poly: &[FieldElement], x: &FieldElement) -> FieldElement {
    let mut acc = FieldElement::zero(x.spec());
    for c in poly.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Projective point count over `F_{q^m}`.
///
/// The affine part enumerates every `x`; the number of `y` above each `x` is
/// read from a table built by enumerating all `y` once (`#{y : y^2 = v}` in
/// odd characteristic, `#{u : u^2 + u = w}` in characteristic 2).
pub fn count_points_with(curve: &CurveModel, m: u32, exec: Execution) -> Result<u64, CurveError> {
    assert!(m >= 1, "extension degree must be positive");
    let base = curve.base();
    let big = FieldSpec::build(base.p() as u64, base.k() * m)?;
    let (elems, emb) = enumerate_and_embed(base, &big)?;
    let lift = |v: &[FieldElement]| -> Vec<FieldElement> {
        v.iter().map(|c| emb.apply(c).expect("base coefficient")).collect()
    };
    let q = big.q();
    match curve.kind() {
        CurveKind::P1 => Ok(sum_range(0..q, exec, |_| 1) + 1),
        CurveKind::Elliptic | CurveKind::Hyperelliptic => {
            let f = lift(curve.f());
            let h = lift(curve.h());
            let table = FiberTable::build(&elems);
            let affine = sum_range(0..q, exec, |i| {
                let x = &elems[i as usize];
                table.fiber(&eval(&h, x), &eval(&f, x))
            });
            let g = curve.genus() as usize;
            let infinity = if curve.kind() == CurveKind::Elliptic || f.len() - 1 == 2 * g + 1 {
                1
            } else {
                // two branches at infinity: roots of y^2 + h_{g+1} y = f_{2g+2}
                let zero = FieldElement::zero(&big);
                let h_top = h.get(g + 1).unwrap_or(&zero);
                table.fiber(h_top, &f[2 * g + 2])
            };
            Ok(affine + infinity)
        }
        CurveKind::Plane => {
            let terms: Vec<PlaneTerm> = curve
                .terms()
                .iter()
                .map(|t| PlaneTerm {
                    coeff: emb.apply(&t.coeff).expect("base coefficient"),
                    ..*t
                })
                .collect();
            let d = curve.plane_degree() as usize;
            let one = FieldElement::one(&big);
            let zero = FieldElement::zero(&big);
            let affine = sum_range(0..q, exec, |i| {
                let x = &elems[i as usize];
                // F(x, y, 1) as a polynomial in y
                let mut in_y = vec![FieldElement::zero(&big); d + 1];
                for t in &terms {
                    let c = &t.coeff * &x.pow(t.ex as u64);
                    in_y[t.ey as usize] = &in_y[t.ey as usize] + &c;
                }
                elems.iter().filter(|y| eval(&in_y, y).is_zero()).count() as u64
            });
            let at_infinity = elems
                .iter()
                .filter(|x| plane_eval(&terms, [x, &one, &zero]).is_zero())
                .count() as u64
                + u64::from(plane_eval(&terms, [&one, &zero, &zero]).is_zero());
            Ok(affine + at_infinity)
        }
    }
}

/// Number of `y` with `y^2 + b y = c`, tabulated by enumeration.
struct FiberTable {
    odd: bool,
    /// odd p: `#{y : y^2 = v}`; p = 2: `#{u : u^2 + u = w}`
    counts: Vec<u8>,
}

impl FiberTable {
    fn build(elems: &[FieldElement]) -> Self {
        let odd = elems[0].spec().p() != 2;
        let mut counts = vec![0u8; elems.len()];
        for y in elems {
            let v = if odd { y * y } else { &(y * y) + y };
            counts[v.index() as usize] += 1;
        }
        FiberTable { odd, counts }
    }

    fn fiber(&self, b: &FieldElement, c: &FieldElement) -> u64 {
        if self.odd {
            // (2y + b)^2 = b^2 + 4c
            let four = FieldElement::from_int(c.spec(), 4);
            let disc = &(b * b) + &(&four * c);
            self.counts[disc.index() as usize] as u64
        } else if b.is_zero() {
            // squaring is bijective in characteristic 2
            1
        } else {
            // y = b u turns it into u^2 + u = c / b^2
            let w = c * &(b * b).inv().expect("b is nonzero");
            self.counts[w.index() as usize] as u64
        }
    }
}
