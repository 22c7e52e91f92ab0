//! Factors of degree at most two of real bivariate polynomials in `(x, z)`.
//!
//! Floating-point roots only propose candidates; every factor is confirmed by
//! exact division, so a missed candidate leaves it in the unfactored rest and
//! never produces a wrong factor.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{content_in, squarefree_decomposition, Var};
use crate::scalar::Coeff;
use crate::{Poly, QI};

const X: Var = Var::X1;
const Z: Var = Var::Z;

/// `p = c · Π factorsᵢ^mᵢ · Π restⱼ^mⱼ`, with every entry of `factors` of
/// total degree one or two and irreducible over `ℚ`. Entries of `rest` are
/// squarefree products whose factors were not found among low degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowDegreeFactors {
    pub factors: Vec<(Poly, u32)>,
    pub rest: Vec<(Poly, u32)>,
}

/// Low-degree factorization of a real polynomial in `x` and `z`; `seed`
/// drives the choice of shear and slices.
pub fn factor_low_degree(p: &Poly, seed: u64) -> LowDegreeFactors {
    assert!(p.vars().iter().all(|v| v == X || v == Z), "expected a polynomial in x and z");
    assert!(p.is_real(), "expected real coefficients");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = LowDegreeFactors { factors: Vec::new(), rest: Vec::new() };
    for (s, m) in squarefree_decomposition(p) {
        let (found, rest) = factor_squarefree(&s, &mut rng);
        out.factors.extend(found.into_iter().map(|f| (f, m)));
        if !rest.is_constant() {
            out.rest.push((rest, m));
        }
    }
    out.factors.sort_by(|a, b| {
        a.0.total_degree()
            .cmp(&b.0.total_degree())
            .then_with(|| a.0.terms()[0].0.cmp(&b.0.terms()[0].0).reverse())
    });
    out
}

fn factor_squarefree(s: &Poly, rng: &mut ChaCha8Rng) -> (Vec<Poly>, Poly) {
    let mut found = Vec::new();
    let mut rest = Poly::one();
    let cz = content_in(s, X);
    let s1 = s.div_exact(&cz).expect("content divides");
    let cx = content_in(&s1, Z);
    let s2 = s1.div_exact(&cx).expect("content divides");
    for (c, v) in [(cz, Z), (cx, X)] {
        let (f, r) = univariate_split(&c, v);
        found.extend(f);
        rest = &rest * &r;
    }
    let (f, r) = bivariate_split(&s2, rng);
    found.extend(f);
    rest = &rest * &r;
    (found, rest.monic())
}

fn dense(p: &Poly, v: Var) -> Vec<BigRational> {
    p.coeffs_in(v)
        .into_iter()
        .map(|c| c.constant_value().unwrap_or_else(QI::zero).re)
        .collect()
}

fn from_dense(c: &[BigRational], v: Var) -> Poly {
    let cs: Vec<Poly> = c.iter().map(|a| Poly::constant(QI::from_rational(a.clone()))).collect();
    Poly::from_coeffs_in(v, &cs)
}

fn univariate_split(p: &Poly, v: Var) -> (Vec<Poly>, Poly) {
    if p.is_constant() {
        return (Vec::new(), Poly::one());
    }
    let mut f = dense(p, v);
    let mut found = Vec::new();
    for e in 1..=2 {
        loop {
            let Some(h) = low_degree_rational_factors(&f, e).into_iter().next() else {
                break;
            };
            f = udiv_exact(&f, &h).expect("verified factor");
            found.push(from_dense(&h, v).monic());
        }
    }
    (found, from_dense(&f, v).monic())
}

fn bivariate_split(s: &Poly, rng: &mut ChaCha8Rng) -> (Vec<Poly>, Poly) {
    if s.is_constant() {
        return (Vec::new(), Poly::one());
    }
    let d = s.total_degree();
    if d == 1 {
        return (vec![s.monic()], Poly::one());
    }
    // z ↦ z + λx makes the leading coefficient in x constant
    let mut width = 6i64;
    let lambda = loop {
        width += 1;
        let l = BigRational::from_integer(rng.gen_range(-width..=width).into());
        let sheared = shear(s, &l);
        if sheared.degree(X) == d {
            break l;
        }
    };
    let mut t = shear(s, &lambda);
    let mut found = Vec::new();
    for e in 1..=2usize {
        if t.total_degree() < 2 * e as i64 {
            break;
        }
        let slices = pick_slices(&t, e + 1, rng);
        let cands: Vec<Vec<Vec<BigRational>>> = slices
            .iter()
            .map(|c| low_degree_rational_factors(&dense(&t.eval(Z, &QI::from_rational(c.clone())), X), e))
            .collect();
        for combo in cartesian(&cands, 20_000) {
            if t.total_degree() <= e as i64 {
                break;
            }
            let Some(h) = interpolate(&slices, &combo, e) else {
                continue;
            };
            if let Some(q) = t.div_exact(&h) {
                t = q;
                found.push(shear(&h, &-lambda.clone()).monic());
            }
        }
    }
    let rest = shear(&t, &-lambda);
    if rest.total_degree() <= 2 && !rest.is_constant() {
        found.push(rest.monic());
        return (found, Poly::one());
    }
    (found, rest)
}

fn shear(p: &Poly, l: &BigRational) -> Poly {
    let by = &Poly::var(Z) + &Poly::var(X).scale(&QI::from_rational(l.clone()));
    p.compose(Z, &by)
}

fn pick_slices(t: &Poly, k: usize, rng: &mut ChaCha8Rng) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = Vec::new();
    let mut tries = 0;
    while out.len() < k {
        tries += 1;
        let c = BigRational::from_integer(rng.gen_range(-(10 + tries)..=(10 + tries)).into());
        if out.contains(&c) {
            continue;
        }
        let f = dense(&t.eval(Z, &QI::from_rational(c.clone())), X);
        if udeg(&ugcd(&f, &uderiv(&f))) == 0 {
            out.push(c);
        }
    }
    out
}

fn cartesian<T: Clone>(sets: &[Vec<T>], cap: usize) -> Vec<Vec<T>> {
    let mut acc: Vec<Vec<T>> = vec![Vec::new()];
    for s in sets {
        let mut next = Vec::new();
        for a in &acc {
            for x in s {
                if next.len() >= cap {
                    break;
                }
                let mut b = a.clone();
                b.push(x.clone());
                next.push(b);
            }
        }
        acc = next;
    }
    acc
}

/// Monic `h(x, z)` of degree `e` with `h(x, cⱼ) = combo[j]`, when the
/// coefficient of `xᵏ` interpolates to degree at most `e − k` in `z`.
fn interpolate(slices: &[BigRational], combo: &[Vec<BigRational>], e: usize) -> Option<Poly> {
    let mut h = Poly::zero();
    for k in 0..=e {
        let ys: Vec<BigRational> = combo.iter().map(|f| f[k].clone() / f[e].clone()).collect();
        let c = lagrange(slices, &ys);
        if udeg(&c) > (e - k) as i64 {
            return None;
        }
        let ck = from_dense(&c, Z);
        h = &h + &ck.mul_monomial(&crate::Monomial::var(X, k as u16), &QI::int(1));
    }
    Some(h)
}

fn lagrange(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let mut acc = vec![BigRational::zero()];
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = umul(&basis, &[-xj.clone(), BigRational::one()]);
            denom *= xi - xj;
        }
        let scale = yi / denom;
        acc = uadd(&acc, &basis.iter().map(|b| b * &scale).collect::<Vec<_>>());
    }
    trim(&mut acc);
    acc
}

/// Monic rational factors of degree `e ∈ {1, 2}` of a squarefree `f`.
fn low_degree_rational_factors(f: &[BigRational], e: usize) -> Vec<Vec<BigRational>> {
    let n = udeg(f);
    if n < e as i64 {
        return Vec::new();
    }
    let ints = primitive_integer(f);
    let lc = BigRational::from_integer(ints.last().unwrap().clone());
    let lc_f = lc.to_f64().unwrap_or(f64::INFINITY);
    let roots = aberth(&ints.iter().map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)).collect::<Vec<_>>());
    let mut out: Vec<Vec<BigRational>> = Vec::new();
    let push = |h: Vec<BigRational>, out: &mut Vec<Vec<BigRational>>| {
        if !out.contains(&h) && udiv_exact(f, &h).is_some() {
            out.push(h);
        }
    };
    let snap = |v: Complex64| -> Option<BigRational> {
        let scaled = v.re * lc_f;
        if v.im.abs() > 1e-6 * (1.0 + v.re.abs()) || !scaled.is_finite() || scaled.abs() > 9.0e15 {
            return None;
        }
        Some(BigRational::from_integer(BigInt::from(scaled.round() as i64)) / lc.clone())
    };
    match e {
        1 => {
            for r in &roots {
                if let Some(a) = snap(*r) {
                    push(vec![-a, BigRational::one()], &mut out);
                }
            }
        }
        _ => {
            for i in 0..roots.len() {
                for j in i + 1..roots.len() {
                    let (Some(p), Some(q)) = (snap(-(roots[i] + roots[j])), snap(roots[i] * roots[j])) else {
                        continue;
                    };
                    push(vec![q, p, BigRational::one()], &mut out);
                }
            }
        }
    }
    out
}

fn primitive_integer(f: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let l = f.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    ints.into_iter().map(|c| c / &g * &sign).collect()
}

/// All complex roots by the Aberth–Ehrlich iteration, coefficients low to high.
pub(crate) fn aberth(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lc = c[n];
    let a: Vec<Complex64> = c.iter().map(|x| x / lc).collect();
    let bound = 1.0 + a[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(bound, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let (mut p, mut dp) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for ak in a.iter().rev() {
            dp = dp * x + p;
            p = p * x + ak;
        }
        (p, dp)
    };
    for _ in 0..2000 {
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if w.is_finite() {
                z[k] -= w;
                worst = worst.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        if worst < 1e-15 {
            break;
        }
    }
    z
}

fn udeg(f: &[BigRational]) -> i64 {
    f.iter().rposition(|c| !c.is_zero()).map_or(-1, |i| i as i64)
}

fn trim(f: &mut Vec<BigRational>) {
    while f.len() > 1 && f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
}

fn uadd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    (0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect()
}

fn umul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn uderiv(f: &[BigRational]) -> Vec<BigRational> {
    if f.len() <= 1 {
        return vec![BigRational::zero()];
    }
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigRational::from_integer(k.into()))
        .collect()
}

fn urem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = udeg(b);
    let mut r = a.to_vec();
    trim(&mut r);
    let mut q = vec![BigRational::zero(); (udeg(&r) - db + 1).max(1) as usize];
    while udeg(&r) >= db && !(udeg(&r) == 0 && r[0].is_zero()) {
        let dr = udeg(&r);
        let c = &r[dr as usize] / &b[db as usize];
        let shift = (dr - db) as usize;
        for (i, bi) in b.iter().enumerate().take(db as usize + 1) {
            r[i + shift] -= &c * bi;
        }
        q[shift] = c;
        trim(&mut r);
        if dr == 0 {
            break;
        }
    }
    (q, r)
}

fn ugcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while udeg(&b) >= 0 {
        let (_, r) = urem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn udiv_exact(a: &[BigRational], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let (mut q, r) = urem(a, b);
    if udeg(&r) >= 0 {
        return None;
    }
    trim(&mut q);
    Some(q)
}
