//! Numerical roots of rational polynomials.
//!
//! Multiple roots are separated exactly first (square-free decomposition over
//! `Q`) so that the floating-point stage only ever sees simple roots and can be
//! polished to full double precision.

use num_complex::Complex64;

use crate::poly::{to_f64, QPoly};

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    // value and derivative
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// Roots of a polynomial with simple roots (ascending `f64` coefficients).
fn simple_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return vec![Complex64::new(-monic[0], 0.0)];
    }
    // Cauchy bound for the starting circle
    let radius = 1.0 + monic[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| seed.powu(k as u32 + 1) / seed.norm().powi(k as i32 + 1) * radius * 0.5)
        .collect();
    // Durand–Kerner
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let (v, _) = horner(&monic, z[i]);
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            let step = v / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    // Newton polish on the original polynomial
    for root in z.iter_mut() {
        for _ in 0..8 {
            let (v, d) = horner(&monic, *root);
            if d.norm() == 0.0 {
                break;
            }
            *root -= v / d;
        }
    }
    z
}

/// All complex roots of `poly`, repeated according to multiplicity.
pub fn roots(poly: &QPoly) -> Vec<Complex64> {
    let mut out = Vec::new();
    for (factor, mult) in poly.squarefree_decomposition() {
        let coeffs: Vec<f64> = factor.0.iter().map(to_f64).collect();
        for r in simple_roots(&coeffs) {
            for _ in 0..mult {
                out.push(r);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_with_complex_roots() {
        // t^2 + 2: roots ±i√2
        let r = roots(&QPoly::from_ints(&[2, 0, 1]));
        assert_eq!(r.len(), 2);
        for z in r {
            assert!((z.norm() - 2f64.sqrt()).abs() < 1e-14);
            assert!(z.re.abs() < 1e-14);
        }
    }

    #[test]
    fn repeated_roots_keep_full_precision() {
        // (t^2 + 5)^2
        let p = QPoly::from_ints(&[5, 0, 1]).mul(&QPoly::from_ints(&[5, 0, 1]));
        let r = roots(&p);
        assert_eq!(r.len(), 4);
        for z in r {
            assert!((z.norm() - 5f64.sqrt()).abs() < 1e-13);
        }
    }

    #[test]
    fn real_roots_recovered() {
        // (t - 1)(t - 2)(t + 3)(t - 0.5)
        let p = QPoly::from_ints(&[-1, 2])
            .mul(&QPoly::from_ints(&[-1, 1]))
            .mul(&QPoly::from_ints(&[-2, 1]))
            .mul(&QPoly::from_ints(&[3, 1]));
        let mut re: Vec<f64> = roots(&p).iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in re.iter().zip([-3.0, 0.5, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-13);
        }
    }
}
