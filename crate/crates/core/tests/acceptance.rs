//! Acceptance run: one line per criterion, nonzero exit if any fails.
//! Oracles here are computed independently of the library paths they check.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_integer::gcd;
use num_traits::{One, ToPrimitive, Zero};

use zetalab::cli::{self, NfArgs, VerifyArgs};
use zetalab::curve::{closed_point_spectrum, count_range, parse_curve, CurveModel, Spectrum};
use zetalab::explicit::explicit_formula_sides;
use zetalab::field::{enumerate, FieldElement, FieldSpec};
use zetalab::graded::{graded_fourier_pp, local_fourier, GradedFunction};
use zetalab::number_field as nf;
use zetalab::par::Execution;
use zetalab::sample::Sampler;
use zetalab::scalar::HalfPowerScalar as S;
use zetalab::torus::{involution_pullback, mellin, standard_global, torus_fourier_local};
use zetalab::zeta::{self, ZetaData};

type Q = BigRational;

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn qpow(q: u64, e: i64) -> Q {
    let base = qi(q as i64);
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

enum Shape {
    Line,
    /// `y^2 + h0 y = f(x)` with constant `h0` and odd-degree `f`
    Weierstrass { h0: i64, f: &'static [i64] },
}

struct TestCurve {
    file: &'static str,
    p: u64,
    genus: u32,
    shape: Shape,
}

const CURVES: [TestCurve; 5] = [
    TestCurve { file: "p1_f2.toml", p: 2, genus: 0, shape: Shape::Line },
    TestCurve { file: "p1_f3.toml", p: 3, genus: 0, shape: Shape::Line },
    TestCurve { file: "elliptic_f2.toml", p: 2, genus: 1, shape: Shape::Weierstrass { h0: 1, f: &[0, 0, 0, 1] } },
    TestCurve { file: "elliptic_f3.toml", p: 3, genus: 1, shape: Shape::Weierstrass { h0: 0, f: &[1, 0, 2, 1] } },
    TestCurve { file: "genus2_f5.toml", p: 5, genus: 2, shape: Shape::Weierstrass { h0: 0, f: &[0, -1, 0, 0, 0, 1] } },
];

/// Largest degree counted per curve: up to 12 while `q^m` stays under the field cap.
fn max_degree(p: u64) -> u32 {
    (1..=12).take_while(|&m| p.pow(m) <= 1 << 20).last().unwrap()
}

/// Projective points over `F_{p^m}` by tabulating `y^2 + h0 y` over all `y`
/// and looking each `f(x)` up, plus the single point at infinity.
fn brute_force_count(c: &TestCurve, m: u32) -> u64 {
    let q = c.p.pow(m);
    match c.shape {
        Shape::Line => q + 1,
        Shape::Weierstrass { h0, f } => {
            let spec: Arc<FieldSpec> = FieldSpec::build(c.p, m).unwrap();
            let elems = enumerate(&spec);
            let h = FieldElement::from_int(&spec, h0);
            let mut fibre: HashMap<u32, u64> = HashMap::new();
            for y in &elems {
                *fibre.entry((&(y * y) + &(&h * y)).index()).or_default() += 1;
            }
            let coeffs: Vec<FieldElement> = f.iter().map(|&a| FieldElement::from_int(&spec, a)).collect();
            let affine: u64 = elems
                .iter()
                .map(|x| {
                    let fx = coeffs.iter().rev().fold(FieldElement::zero(&spec), |acc, a| &(&acc * x) + a);
                    fibre.get(&fx.index()).copied().unwrap_or(0)
                })
                .sum();
            affine + 1
        }
    }
}

fn mobius(n: u64) -> i64 {
    let (mut n, mut sign, mut d) = (n, 1, 2);
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        -sign
    } else {
        sign
    }
}

/// `Π_l (1 - t^l)^{-a_l}` up to `t^n`, via binomial series per factor.
fn euler_product(a: &[u64], n: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); n + 1];
    acc[0] = BigInt::one();
    for (i, &a_l) in a.iter().enumerate().take(n) {
        let l = i + 1;
        // (1 - t^l)^{-a} = Σ_j C(a + j - 1, j) t^{l j}
        let mut factor = vec![BigInt::zero(); n + 1];
        let mut binom = BigInt::one();
        for j in 0..=n / l {
            factor[l * j] = binom.clone();
            binom = binom * BigInt::from(a_l + j as u64) / BigInt::from(j as u64 + 1);
        }
        let mut next = vec![BigInt::zero(); n + 1];
        for (x, ax) in acc.iter().enumerate() {
            for (y, fy) in factor.iter().enumerate().take(n + 1 - x) {
                next[x + y] += ax * fy;
            }
        }
        acc = next;
    }
    acc
}

/// Power series of `P(t) / ((1 - t)(1 - q t))` up to `t^n`.
fn zeta_series(p: &[BigInt], q: u64, n: usize) -> Vec<BigInt> {
    let coeff = |i: usize| p.get(i).cloned().unwrap_or_default();
    // divide by (1 - t): partial sums; then by (1 - q t): c_k = s_k + q c_{k-1}
    let mut partial = BigInt::zero();
    let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        partial += coeff(k);
        let prev = out.last().cloned().unwrap_or_default();
        out.push(&partial + prev * BigInt::from(q));
    }
    out
}

fn eval_f64(p: &[BigInt], t: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * t + c.to_f64().unwrap())
}

/// Reduced primitive forms of discriminant `-d` by direct enumeration.
fn count_reduced_forms(d: i64) -> u64 {
    let mut h = 0;
    let mut a = 1;
    while 3 * a * a <= d {
        for b in -a + 1..=a {
            let num = b * b + d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if gcd(gcd(a, b.abs()), c) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    h
}

struct Fitted {
    curve: &'static TestCurve,
    spectrum: Spectrum,
    z: ZetaData,
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn load(curve: &'static TestCurve) -> CurveModel {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../curves").join(curve.file);
    parse_curve(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn criterion_1(fitted: &mut Vec<Fitted>) -> Outcome {
    let start = Instant::now();
    for c in &CURVES {
        let model = load(c);
        let g = c.genus;
        ensure(model.genus() == g, || format!("{}: genus {}", c.file, model.genus()))?;
        let m = max_degree(c.p);
        let counts = count_range(&model, m, Execution::default()).map_err(|e| e.to_string())?;
        let z = zeta::fit_numerator(model.q(), g, &counts[..2 * g as usize]).map_err(|e| e.to_string())?;
        for k in 2 * g + 1..=2 * g + 3 {
            let oracle = brute_force_count(c, k);
            let predicted = zeta::predict_count(&z, k as usize);
            ensure(predicted == BigInt::from(oracle), || {
                format!("{}: N_{k} predicted {predicted}, brute force {oracle}", c.file)
            })?;
        }
        let spectrum = closed_point_spectrum(&counts).map_err(|e| e.to_string())?;
        fitted.push(Fitted { curve: c, spectrum, z });
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 30.0, || format!("took {secs:.1}s"))?;
    let ps: Vec<String> = fitted.iter().map(|f| format!("{:?}", f.z.numerator().iter().map(|c| c.to_string()).collect::<Vec<_>>())).collect();
    Ok(format!("P = {}; {secs:.2}s", ps.join(" ")))
}

fn criterion_2(fitted: &[Fitted]) -> Outcome {
    let mut worst: f64 = 0.0;
    for f in fitted {
        let g = f.curve.genus as usize;
        let p = f.z.numerator();
        ensure(p.len() == 2 * g + 1, || format!("{}: degree", f.curve.file))?;
        for i in 0..=2 * g {
            let lhs = Q::from_integer(p[2 * g - i].clone());
            let rhs = qpow(f.z.q(), g as i64 - i as i64) * Q::from_integer(p[i].clone());
            ensure(lhs == rhs, || format!("{}: a_{} != q^{} a_{i}", f.curve.file, 2 * g - i, g as i64 - i as i64))?;
        }
        let sqrt_q = (f.z.q() as f64).sqrt();
        for root in zeta::inverse_roots(&f.z) {
            worst = worst.max((root.norm() - sqrt_q).abs());
        }
        let report = zeta::functional_equation_check(&f.z);
        ensure(report.symmetric, || format!("{}: library symmetry flag", f.curve.file))?;
    }
    ensure(worst < 1e-9, || format!("max ||λ| - √q| = {worst:e}"))?;
    Ok(format!("symmetric on all curves; max ||λ| - √q| = {worst:.1e}"))
}

fn criterion_3(fitted: &[Fitted]) -> Outcome {
    for f in fitted {
        let (q, g) = (f.z.q(), f.curve.genus as i64);
        let h: BigInt = f.z.numerator().iter().sum();
        let r0 = -Q::from_integer(h.clone()) / qi(q as i64 - 1);
        let r1 = qpow(q, 1 - g) * Q::from_integer(h.clone()) / qi(q as i64 - 1);
        let (lh, c0, c1) = zeta::class_number_and_residues(&f.z);
        let (l0, l1) = zeta::residues_by_laurent(&f.z);
        ensure(lh == h, || format!("{}: h {lh} vs {h}", f.curve.file))?;
        ensure(c0.coeff == r0 && l0.coeff == r0, || format!("{}: res0 {} / {} vs {r0}", f.curve.file, c0.coeff, l0.coeff))?;
        ensure(c1.coeff == r1 && l1.coeff == r1, || format!("{}: res1 {} / {} vs {r1}", f.curve.file, c1.coeff, l1.coeff))?;
        // numerically: (s - s0) Z(q^{-s}) near s0 = 0 and 1
        let p = f.z.numerator();
        let z_of_s = |s: f64| {
            let t = (q as f64).powf(-s);
            eval_f64(p, t) / ((1.0 - t) * (1.0 - q as f64 * t))
        };
        let ln_q = (q as f64).ln();
        let eps = 1e-7;
        for (s0, r) in [(0.0, &r0), (1.0, &r1)] {
            let numeric = eps * z_of_s(s0 + eps);
            let expected = r.to_f64().unwrap() / ln_q;
            ensure((numeric - expected).abs() <= 1e-5 * expected.abs(), || {
                format!("{}: numeric residue at s={s0}: {numeric} vs {expected}", f.curve.file)
            })?;
        }
    }
    let list: Vec<String> = fitted
        .iter()
        .map(|f| {
            let (h, r0, r1) = zeta::class_number_and_residues(&f.z);
            format!("h={h} ({}, {})", r0.coeff, r1.coeff)
        })
        .collect();
    Ok(list.join(", ") + " in units of 1/ln q")
}

fn criterion_4(fitted: &[Fitted]) -> Outcome {
    for f in fitted {
        let (q, g) = (f.z.q(), f.curve.genus as usize);
        let euler = euler_product(&f.spectrum.closed_points, 8);
        let series = zeta_series(f.z.numerator(), q, 8);
        ensure(euler == series, || format!("{}: Euler {euler:?} vs series {series:?}", f.curve.file))?;
        ensure(f.spectrum.effective_divisors[..=8] == euler[..], || format!("{}: library Euler product", f.curve.file))?;
        ensure(zeta::series_coefficients(&f.z, 8) == series, || format!("{}: library series", f.curve.file))?;
        let h = Q::from_integer(f.z.numerator().iter().sum());
        for n in (2 * g).saturating_sub(1)..=8 {
            let tail = &h * (qpow(q, n as i64 + 1 - g as i64) - qi(1)) / qi(q as i64 - 1);
            ensure(Q::from_integer(series[n].clone()) == tail, || format!("{}: b_{n} tail", f.curve.file))?;
        }
    }
    Ok("b_0..b_8 agree on all curves; Riemann–Roch tail exact".into())
}

fn criterion_5(fitted: &[Fitted]) -> Outcome {
    let mut total = 0;
    for f in fitted {
        let checks = cli::poisson_suite(&f.z);
        ensure(checks.len() == 77, || format!("{}: {} grid points", f.curve.file, checks.len()))?;
        if let Some(bad) = checks.iter().find(|c| !c.ok) {
            return Err(format!("{}: {}", f.curve.file, bad.name));
        }
        total += checks.len();
    }
    Ok(format!("{total} grid identities exact"))
}

fn criterion_6(fitted: &[Fitted]) -> Outcome {
    let mut n = 0;
    for f in fitted {
        let (q, g) = (f.z.q(), f.curve.genus as i64);
        for d in -5..=5 {
            let lhs = involution_pullback(&standard_global(&f.z, d));
            let rhs = standard_global(&f.z, 2 - 2 * g - d).scale(&S::rational(qpow(q, 1 - g - d)));
            ensure(lhs == rhs, || format!("{}: d={d}", f.curve.file))?;
        }
        let mut sampler = Sampler::new(2024);
        for i in 0..20 {
            for (label, x) in [("D", sampler.finite(5)), ("D_plus", sampler.d_plus())] {
                for (qx, k) in [(2, 0), (3, 1), (4, -1), (q, 2)] {
                    let lhs = mellin(&local_fourier(&x, qx, k).unwrap(), qx);
                    let rhs = torus_fourier_local(&mellin(&x, qx), qx, k).unwrap();
                    ensure(lhs == rhs, || format!("{}: local {label} #{i} q_x={qx} k_x={k}", f.curve.file))?;
                    n += 1;
                }
            }
            for (label, x) in [("D", sampler.finite(5)), ("D_plus", sampler.d_plus()), ("D_plus_plus", sampler.d_plus_plus(q))] {
                let lhs = mellin(&graded_fourier_pp(&x, q).unwrap(), q);
                let rhs = involution_pullback(&mellin(&x, q));
                ensure(lhs == rhs, || format!("{}: global {label} #{i}", f.curve.file))?;
                n += 1;
            }
        }
    }
    Ok(format!("involution commutes with the standard functions for d in [-5, 5] for all curves; {n} conjugacy checks"))
}

fn criterion_7(fitted: &[Fitted]) -> Outcome {
    for f in fitted {
        let (q, g) = (f.z.q(), f.curve.genus as usize);
        for n in [2 * g, 2 * g + 5, 2 * g + 10] {
            let rep = zeta::tate_iwasawa_decomposition(&f.z, n);
            let series = zeta_series(f.z.numerator(), q, n);
            let sums: Vec<Q> = (0..=n).map(|i| rep.terms.iter().map(|t| t[i].clone()).sum()).collect();
            let oracle: Vec<Q> = series.into_iter().map(Q::from_integer).collect();
            ensure(rep.ok && rep.lhs == oracle && sums == oracle, || format!("{}: N={n}", f.curve.file))?;
        }
        let pp = zeta::principal_parts_check(&f.z);
        let bound = 2 * g as i64 - 2;
        let degree_ok = match pp.entire_part.degree() {
            None => true,
            Some(d) => (d as i64) <= bound,
        };
        ensure(pp.remainder_zero && degree_ok, || format!("{}: entire part {:?}", f.curve.file, pp.entire_part))?;
        // E + principal parts reproduces the series of Z
        let h = Q::from_integer(f.z.numerator().iter().sum());
        let series = zeta_series(f.z.numerator(), q, 10);
        for (k, b) in series.iter().enumerate() {
            let principal = (qpow(q, 1 - g as i64) * qpow(q, k as i64) - qi(1)) * &h / qi(q as i64 - 1);
            let e_k = pp.entire_part.coeff(k);
            ensure(e_k + principal == Q::from_integer(b.clone()), || format!("{}: t^{k}", f.curve.file))?;
        }
    }
    Ok("N in {2g, 2g+5, 2g+10} exact; entire part degree <= 2g - 2".into())
}

fn criterion_8(fitted: &[Fitted]) -> Outcome {
    let mut n = 0;
    for f in fitted {
        let mut sampler = Sampler::new(1);
        let checks = cli::explicit_suite(&f.z, &f.spectrum, &mut sampler).map_err(|e| e.to_string())?;
        for c in checks {
            ensure(c.ok, || format!("{}: {}", f.curve.file, c.name))?;
            n += 1;
        }
    }
    ensure(n == 20 * fitted.len(), || format!("{n} random checks"))?;
    let anchor = |file: &str, m: i64| {
        let f = fitted.iter().find(|f| f.curve.file == file).unwrap();
        explicit_formula_sides(&GradedFunction::delta(m), &f.z, &f.spectrum).unwrap()
    };
    let a = anchor("p1_f2.toml", 1);
    let b = anchor("elliptic_f2.toml", 2);
    let three_halves = S::rational(qi(3) / qi(2));
    let nine_quarters = S::rational(qi(9) / qi(4));
    ensure(a.lhs == three_halves && a.rhs == three_halves, || format!("P1/F2 anchor {} = {}", a.lhs, a.rhs))?;
    ensure(b.lhs == nine_quarters && b.rhs == nine_quarters, || format!("elliptic anchor {} = {}", b.lhs, b.rhs))?;
    Ok(format!("{n} random f exact; anchors {} = {}, {} = {}", a.lhs, a.rhs, b.lhs, b.rhs))
}

fn criterion_9(fitted: &[Fitted]) -> Outcome {
    let mut sampler = Sampler::new(9);
    let mut n = 0;
    for i in 0..50 {
        let x = sampler.d_plus();
        for qx in cli::LOCAL_GRID_Q {
            for k in cli::LOCAL_GRID_K {
                let ff = local_fourier(&local_fourier(&x, qx, k).unwrap(), qx, k).unwrap();
                ensure(ff == x, || format!("D_plus #{i} q_x={qx} k_x={k}"))?;
                n += 1;
            }
        }
    }
    for f in fitted {
        for i in 0..50 {
            let x = sampler.d_plus_plus(f.z.q());
            let ff = graded_fourier_pp(&graded_fourier_pp(&x, f.z.q()).unwrap(), f.z.q()).unwrap();
            ensure(ff == x, || format!("{}: D_plus_plus #{i}", f.curve.file))?;
            n += 1;
        }
    }
    Ok(format!("{n} involution checks exact"))
}

fn criterion_10(fitted: &[Fitted]) -> Outcome {
    let p1 = fitted.iter().find(|f| f.curve.file == "p1_f2.toml").unwrap();
    let necklace: i64 = (1..=12u64)
        .filter(|d| 12 % d == 0)
        .map(|d| mobius(12 / d) * (2i64.pow(d as u32) + 1))
        .sum::<i64>()
        / 12;
    let a12 = p1.spectrum.a(12).unwrap();
    ensure(a12 as i64 == necklace && a12 == 335, || format!("a_12 = {a12}, necklace {necklace}"))?;
    let ratio = 12.0 * a12 as f64 / 4096.0;
    ensure((ratio - 1.0).abs() < 0.05, || format!("ratio {ratio}"))?;
    let mut lines = vec![format!("P1/F2 a_12 = {a12}, ratio {ratio:.4}")];
    for f in fitted {
        let m = f.spectrum.max_degree();
        let q = f.z.q() as f64;
        let ratio = m as f64 * f.spectrum.a(m).unwrap() as f64 / q.powi(m as i32);
        let bound = 3.0 * f.curve.genus as f64 * q.powf(-(m as f64) / 2.0) + q.powf(1.0 - m as f64 / 2.0);
        ensure((ratio - 1.0).abs() <= bound, || format!("{}: m={m} |{ratio} - 1| > {bound}", f.curve.file))?;
        lines.push(format!("{} m={m} dev {:.1e} <= {bound:.1e}", f.curve.file, (ratio - 1.0).abs()));
    }
    Ok(lines.join("; "))
}

fn criterion_11() -> Outcome {
    let expected = [1, 1, 1, 1, 1, 2, 2, 3];
    let mut found = Vec::new();
    for (&d, &h_expected) in cli::BATTERY_DISCRIMINANTS.iter().zip(&expected) {
        let (h, _) = nf::class_number_bqf(d).map_err(|e| e.to_string())?;
        let oracle = count_reduced_forms(d);
        ensure(h == h_expected && oracle == h_expected, || format!("D={d}: forms {h}, brute force {oracle}"))?;
        let analytic = nf::analytic_class_number(d, cli::ANALYTIC_TERMS).unwrap();
        ensure((analytic - h as f64).abs() <= 0.01 * h as f64, || format!("D={d}: analytic {analytic}"))?;
        for y in [1.0, 0.5, 2.0, 1.0 / (d as f64).sqrt()] {
            let rep = nf::theta_checks(d, y, None).unwrap();
            ensure(rep.rel_err < 1e-10, || format!("D={d} y={y}: theta rel err {:e}", rep.rel_err))?;
        }
        let rep = nf::residue_identity_check(d, None).unwrap();
        ensure(rep.abs_err < 1e-10, || format!("D={d}: residue identity {:e}", rep.abs_err))?;
        found.push(h);
    }
    let xi2 = nf::riemann_xi(Complex64::new(2.0, 0.0), None).unwrap();
    ensure((xi2 - PI / 6.0).norm() <= 1e-9, || format!("xi(2) = {xi2}"))?;
    let mut worst: f64 = 0.0;
    for s in cli::xi_sample() {
        let diff = (nf::riemann_xi(s, None).unwrap() - nf::riemann_xi(1.0 - s, None).unwrap()).norm();
        worst = worst.max(diff);
    }
    ensure(worst < 1e-9, || format!("xi symmetry {worst:e}"))?;
    let mut gauss: f64 = 0.0;
    for (a, n, s) in cli::gaussian_sample() {
        let rep = nf::gaussian_checks(a, n, s).unwrap();
        let poisson = rep.poisson.iter().map(|p| p.3).fold(0.0, f64::max);
        for err in [rep.fourier_sup_err, rep.mellin_rel_err, poisson] {
            gauss = gauss.max(err);
        }
    }
    ensure(gauss <= 1e-8, || format!("Gaussian checks {gauss:e}"))?;
    Ok(format!(
        "h = {found:?}; xi(2) = {:.10}; max |xi(s) - xi(1-s)| = {worst:.1e}; Gaussian max err {gauss:.1e}",
        xi2.re
    ))
}

fn criterion_12() -> Outcome {
    let start = Instant::now();
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../curves");
    let mut checks = 0;
    for c in &CURVES {
        let args = VerifyArgs {
            curve: root.join(c.file),
            suite: "all".into(),
            seed: 0,
            cache: None,
            exec: Execution::default(),
        };
        let report = cli::verify(&args).map_err(|e| e.to_string())?;
        ensure(report["ok"] == true, || format!("{}: verify failed", c.file))?;
        checks += report["checks"].as_array().unwrap().len();
    }
    let report = cli::number_field(&NfArgs { battery: true, ..NfArgs::default() }).map_err(|e| e.to_string())?;
    ensure(report["ok"] == true, || "number-field battery failed".into())?;
    checks += report["checks"].as_array().unwrap().len();
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{checks} checks in {secs:.2}s"))
}

fn main() {
    let mut fitted = Vec::new();
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    results.push((1, "zeta fit predicts brute-force counts", criterion_1(&mut fitted)));
    if fitted.len() == CURVES.len() {
        results.push((2, "functional equation and root moduli", criterion_2(&fitted)));
        results.push((3, "residues closed form vs Laurent", criterion_3(&fitted)));
        results.push((4, "b_n two paths and Riemann–Roch tail", criterion_4(&fitted)));
        results.push((5, "Poisson residue identity grid", criterion_5(&fitted)));
        results.push((6, "diagram commutation and conjugacy", criterion_6(&fitted)));
        results.push((7, "Tate–Iwasawa and principal parts", criterion_7(&fitted)));
        results.push((8, "explicit formula", criterion_8(&fitted)));
        results.push((9, "Fourier involutivity", criterion_9(&fitted)));
        results.push((10, "prime counting", criterion_10(&fitted)));
    } else {
        for n in 2..=10 {
            results.push((n, "depends on fitted curves", Err("skipped: curve fitting failed".into())));
        }
    }
    results.push((11, "number fields", criterion_11()));
    results.push((12, "full suite runtime", criterion_12()));

    let mut failed = 0;
    for (n, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
