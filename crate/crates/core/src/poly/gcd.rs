//! Multivariate gcd by recursive content / primitive-part reduction onto a
//! univariate subresultant remainder sequence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::{MPoly, Monomial, Var, VarSet, NVARS};
use crate::scalar::Coeff;

/// Dense univariate polynomial in a main variable with polynomial coefficients.
pub(crate) type UPoly<C> = Vec<MPoly<C>>;

pub(crate) fn trim<C: Coeff>(p: &mut UPoly<C>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn udeg<C: Coeff>(p: &UPoly<C>) -> i64 {
    p.len() as i64 - 1
}

/// Pseudo-remainder `lc(b)^(deg a − deg b + 1) · a mod b`.
pub(crate) fn prem<C: Coeff>(a: &UPoly<C>, b: &UPoly<C>) -> UPoly<C> {
    let db = udeg(b);
    assert!(db >= 0);
    let lcb = &b[db as usize];
    let mut r = a.clone();
    trim(&mut r);
    let mut e = udeg(a) - db + 1;
    while udeg(&r) >= db {
        let dr = udeg(&r) as usize;
        let lr = r[dr].clone();
        let shift = dr - db as usize;
        for c in r.iter_mut() {
            *c = &*c * lcb;
        }
        for (k, bk) in b.iter().enumerate() {
            let t = &lr * bk;
            r[k + shift] = &r[k + shift] - &t;
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lcb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn monomial_content<C: Coeff>(p: &MPoly<C>) -> Monomial {
    let mut exps = [u16::MAX; NVARS];
    for (m, _) in p.terms() {
        for (e, f) in exps.iter_mut().zip(m.exps().iter()) {
            *e = (*e).min(*f);
        }
    }
    if p.is_zero() {
        return Monomial::one();
    }
    Monomial::from_exps(exps)
}

fn monomial_gcd(a: &Monomial, b: &Monomial) -> Monomial {
    let mut exps = *a.exps();
    for (e, f) in exps.iter_mut().zip(b.exps().iter()) {
        *e = (*e).min(*f);
    }
    Monomial::from_exps(exps)
}

/// Greatest common divisor, normalized to leading coefficient 1.
///
/// `gcd(0, 0) = 0`.
pub fn gcd<C: Coeff>(a: &MPoly<C>, b: &MPoly<C>) -> MPoly<C> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    let ma = monomial_content(a);
    let mb = monomial_content(b);
    let mg = monomial_gcd(&ma, &mb);
    let a1 = if ma.is_one() { a.clone() } else { a.div_exact(&MPoly::term(ma, C::one())).unwrap() };
    let b1 = if mb.is_one() { b.clone() } else { b.div_exact(&MPoly::term(mb, C::one())).unwrap() };
    let g = gcd_nonmonomial(&a1, &b1);
    g.mul_monomial(&mg, &C::one()).monic()
}

/// Gcd of a list; zero for an empty list.
pub fn gcd_many<'a, C: Coeff, I: IntoIterator<Item = &'a MPoly<C>>>(polys: I) -> MPoly<C> {
    let mut g = MPoly::zero();
    for p in polys {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

fn gcd_nonmonomial<C: Coeff>(a: &MPoly<C>, b: &MPoly<C>) -> MPoly<C> {
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    if a.num_terms() == 1 || b.num_terms() == 1 {
        // monomial content already removed, so a single term is a constant
        return MPoly::one();
    }
    // cheap divisibility checks cover the common "one divides the other" case
    if a.total_degree() >= b.total_degree() {
        if a.div_exact(b).is_some() {
            return b.monic();
        }
    } else if b.div_exact(a).is_some() {
        return a.monic();
    }
    let (va, vb) = (a.vars(), b.vars());
    let common = va.intersect(vb);
    if common.is_empty() {
        return MPoly::one();
    }
    if va != common || vb != common {
        // a divisor free of a variable divides each coefficient in it
        let mut parts: Vec<MPoly<C>> = Vec::new();
        for (p, vs) in [(a, va), (b, vb)] {
            if vs == common {
                parts.push(p.clone());
            } else {
                parts.extend(p.coeffs_in_set(vs.minus(common)).into_values());
            }
        }
        parts.sort_by_key(|c| (c.num_terms(), c.total_degree()));
        return gcd_many(parts.iter());
    }
    if common.len() == 1 {
        let v = common.iter().next().unwrap();
        return univariate_gcd(a, b, v);
    }
    let v = choose_main_var(a, b, common);
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let gc = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    if images_coprime(&pa, &pb, v, common) {
        return gc;
    }
    let gp = subresultant_gcd(&pa, &pb, v);
    (&gc * &gp).monic()
}

fn choose_main_var<C: Coeff>(a: &MPoly<C>, b: &MPoly<C>, common: VarSet) -> Var {
    common
        .iter()
        .min_by_key(|v| (a.degree(*v).max(b.degree(*v)), std::cmp::Reverse(v.index())))
        .unwrap()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in<C: Coeff>(p: &MPoly<C>, v: Var) -> MPoly<C> {
    if !p.contains(v) {
        return p.monic();
    }
    let mut cs = p.coeffs_in(v);
    cs.retain(|c| !c.is_zero());
    cs.sort_by_key(|c| (c.num_terms(), c.total_degree()));
    gcd_many(cs.iter())
}

/// Gcd of the coefficients of `p` viewed as a polynomial in the variables of `set`.
pub fn content_in_set<C: Coeff>(p: &MPoly<C>, set: VarSet) -> MPoly<C> {
    let mut cs: Vec<MPoly<C>> = p.coeffs_in_set(set).into_values().collect();
    cs.sort_by_key(|c| (c.num_terms(), c.total_degree()));
    gcd_many(cs.iter())
}

pub fn primitive_part_in<C: Coeff>(p: &MPoly<C>, v: Var) -> MPoly<C> {
    if p.is_zero() {
        return MPoly::zero();
    }
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides")
}

pub fn primitive_part_in_set<C: Coeff>(p: &MPoly<C>, set: VarSet) -> MPoly<C> {
    if p.is_zero() {
        return MPoly::zero();
    }
    let c = content_in_set(p, set);
    p.div_exact(&c).expect("content divides")
}

fn univariate_gcd<C: Coeff>(a: &MPoly<C>, b: &MPoly<C>, v: Var) -> MPoly<C> {
    let to_dense = |p: &MPoly<C>| -> Vec<C> {
        p.coeffs_in(v).into_iter().map(|c| c.constant_value().expect("univariate")).collect()
    };
    let g = dense_gcd(to_dense(a), to_dense(b));
    let coeffs: Vec<MPoly<C>> = g.into_iter().map(MPoly::constant).collect();
    MPoly::from_coeffs_in(v, &coeffs).monic()
}

/// Euclid over the coefficient field on dense coefficient vectors (low to high).
pub(crate) fn dense_gcd<C: Coeff>(mut a: Vec<C>, mut b: Vec<C>) -> Vec<C> {
    let trim = |p: &mut Vec<C>| {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let inv = b.last().unwrap().inv();
        let db = b.len() - 1;
        while a.len() >= b.len() {
            let da = a.len() - 1;
            let f = a[da].mul_ref(&inv);
            for k in 0..=db {
                a[k + da - db] = a[k + da - db].sub_ref(&f.mul_ref(&b[k]));
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(l) = a.last().cloned() {
        let inv = l.inv();
        for c in a.iter_mut() {
            *c = c.mul_ref(&inv);
        }
    }
    a
}

/// Evaluation shortcut: if the images of `a` and `b` at a point of the other
/// variables keep their degree in `v` and are coprime, the gcd of the
/// `v`-primitive parts is 1.
fn images_coprime<C: Coeff>(a: &MPoly<C>, b: &MPoly<C>, v: Var, vars: VarSet) -> bool {
    const POINTS: [i64; 8] = [3, -5, 7, 11, -13, 17, 19, -23];
    let others: Vec<Var> = vars.iter().filter(|w| *w != v).collect();
    let lca = a.lc_in(v);
    let lcb = b.lc_in(v);
    for attempt in 0..3 {
        let pt: Vec<(Var, C)> = others
            .iter()
            .enumerate()
            .map(|(i, w)| (*w, C::from_i64(POINTS[(i + 3 * attempt) % POINTS.len()] + attempt as i64)))
            .collect();
        if lca.eval_many(&pt).is_zero() || lcb.eval_many(&pt).is_zero() {
            continue;
        }
        let ia = a.eval_many(&pt);
        let ib = b.eval_many(&pt);
        let g = univariate_gcd(&ia, &ib, v);
        return g.is_constant();
    }
    false
}

/// Gcd of two `v`-primitive polynomials via the subresultant remainder sequence.
/// Least common multiple of the coefficient denominators.
pub(crate) fn denominator_lcm<C: Coeff>(p: &MPoly<C>) -> BigInt {
    let mut l = BigInt::one();
    for (_, c) in p.terms() {
        for part in [c.real_part(), c.imag_part()] {
            if !part.is_integer() {
                l = l.lcm(part.denom());
            }
        }
    }
    l
}

/// `(λ·p, λ)` with `λ` the least integer giving Gaussian-integer coefficients.
pub(crate) fn clear_denominators<C: Coeff>(p: &MPoly<C>) -> (MPoly<C>, C) {
    let l = denominator_lcm(p);
    if l.is_one() {
        (p.clone(), C::one())
    } else {
        let l = C::from_rational(BigRational::from_integer(l));
        (p.scale(&l), l)
    }
}

fn subresultant_gcd<C: Coeff>(a: &MPoly<C>, b: &MPoly<C>, v: Var) -> MPoly<C> {
    let mut pa = clear_denominators(a).0.coeffs_in(v);
    let mut pb = clear_denominators(b).0.coeffs_in(v);
    if udeg(&pa) < udeg(&pb) {
        std::mem::swap(&mut pa, &mut pb);
    }
    let mut g = MPoly::one();
    let mut h = MPoly::one();
    loop {
        let delta = (udeg(&pa) - udeg(&pb)) as u32;
        let r = prem(&pa, &pb);
        if r.is_empty() {
            break;
        }
        if udeg(&r) == 0 {
            return MPoly::one();
        }
        let div = &g * &h.pow(delta);
        pa = pb;
        pb = r.iter().map(|c| c.div_exact(&div).expect("subresultant division is exact")).collect();
        g = pa.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            d => g.pow(d).div_exact(&h.pow(d - 1)).expect("subresultant division is exact"),
        };
    }
    primitive_part_in(&MPoly::from_coeffs_in(v, &pb), v)
}

/// Squarefree decomposition `p = c · Π fᵢ^mᵢ` with pairwise coprime,
/// squarefree, monic `fᵢ`; returns `(fᵢ, mᵢ)` sorted by multiplicity.
pub fn squarefree_decomposition<C: Coeff>(p: &MPoly<C>) -> Vec<(MPoly<C>, u32)> {
    let mut out: Vec<(MPoly<C>, u32)> = Vec::new();
    sqf_into(p, &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.terms()[0].0.cmp(&a.0.terms()[0].0)));
    // merge factors of equal multiplicity coming from different variables
    let mut merged: Vec<(MPoly<C>, u32)> = Vec::new();
    for (f, m) in out {
        match merged.last_mut() {
            Some((g, k)) if *k == m => *g = (&*g * &f).monic(),
            _ => merged.push((f, m)),
        }
    }
    merged
}

fn sqf_into<C: Coeff>(p: &MPoly<C>, out: &mut Vec<(MPoly<C>, u32)>) {
    if p.is_constant() {
        return;
    }
    let v = p.vars().iter().min_by_key(|&v| (p.degree(v), v.index())).unwrap();
    let c = content_in(p, v);
    let pp = p.div_exact(&c).expect("content divides");
    // Yun's algorithm in v over the ring of the remaining variables
    let d = pp.derivative(v);
    let a0 = gcd(&pp, &d);
    let mut b = pp.div_exact(&a0).unwrap();
    let c1 = d.div_exact(&a0).unwrap();
    let mut dd = &c1 - &b.derivative(v);
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd(&b, &dd);
        if !a.is_constant() {
            out.push((a.monic(), i));
        }
        let nb = b.div_exact(&a).unwrap();
        let nc = dd.div_exact(&a).unwrap();
        dd = &nc - &nb.derivative(v);
        b = nb;
        i += 1;
    }
    sqf_into(&c, out);
}
