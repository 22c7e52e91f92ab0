//! Sparse multivariate polynomials over an exact field in a fixed variable universe.

mod gcd;
mod resultant;
mod var;

pub use gcd::{content_in, content_in_set, gcd, gcd_many, primitive_part_in, primitive_part_in_set, squarefree_decomposition};
pub(crate) use gcd::denominator_lcm;
pub use resultant::{resultant, sylvester_resultant};
pub use var::{Var, VarSet, NVARS};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Coeff;

/// An exponent vector with cached total degree.
///
/// The derived ordering is graded lexicographic with `u` as the most
/// significant variable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    deg: u32,
    exps: [u16; NVARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var, e: u16) -> Self {
        let mut m = Monomial::default();
        m.exps[v.index()] = e;
        m.deg = e as u32;
        m
    }

    pub fn from_exps(exps: [u16; NVARS]) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { deg, exps }
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.exps[v.index()]
    }

    pub fn exps(&self) -> &[u16; NVARS] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, f) in exps.iter_mut().zip(o.exps.iter()) {
            *e += *f;
        }
        Monomial {
            deg: self.deg + o.deg,
            exps,
        }
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.deg <= o.deg && self.exps.iter().zip(o.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        let mut exps = o.exps;
        for (e, f) in exps.iter_mut().zip(self.exps.iter()) {
            *e -= *f;
        }
        Monomial {
            deg: o.deg - self.deg,
            exps,
        }
    }

    pub fn with_exp(&self, v: Var, e: u16) -> Monomial {
        let mut exps = self.exps;
        exps[v.index()] = e;
        Monomial::from_exps(exps)
    }

    pub fn vars(&self) -> VarSet {
        let mut s = VarSet::empty();
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                s.insert(Var::from_index(i));
            }
        }
        s
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", Var::from_index(i).name())?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A multivariate polynomial, stored as terms sorted by decreasing monomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly<C> {
    terms: Vec<(Monomial, C)>,
}

impl<C: Coeff> MPoly<C> {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MPoly {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(C::from_i64(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v, 1), C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MPoly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unordered) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(it: I) -> Self {
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in it {
            match acc.get_mut(&m) {
                Some(e) => *e = e.add_ref(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, C>) -> Self {
        let mut terms: Vec<(Monomial, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MPoly { terms }
    }

    /// Wraps terms already sorted by decreasing monomial with no zeros or repeats.
    fn from_sorted(terms: Vec<(Monomial, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        MPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> C {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => C::zero(),
        }
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> C {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(C::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms
            .binary_search_by(|t| m.cmp(&t.0))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| C::zero())
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.first().map(|t| t.0.degree() as i64).unwrap_or(-1)
    }

    /// Degree in `v`; `-1` for the zero polynomial.
    pub fn degree(&self, v: Var) -> i64 {
        if self.is_zero() {
            return -1;
        }
        self.terms.iter().map(|t| t.0.exp(v) as i64).max().unwrap_or(0)
    }

    /// Total degree in the variables of `set`.
    pub fn degree_in(&self, set: VarSet) -> i64 {
        if self.is_zero() {
            return -1;
        }
        self.terms
            .iter()
            .map(|t| set.iter().map(|v| t.0.exp(v) as i64).sum::<i64>())
            .max()
            .unwrap_or(0)
    }

    pub fn vars(&self) -> VarSet {
        let mut s = VarSet::empty();
        for (m, _) in &self.terms {
            s = s.union(m.vars());
        }
        s
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.iter().any(|t| t.0.exp(v) > 0)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly::from_sorted(self.terms.iter().map(|(m, d)| (*m, d.mul_ref(c))).collect())
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly::from_sorted(self.terms.iter().map(|(n, d)| (n.mul(m), d.mul_ref(c))).collect())
    }

    /// Normalizes to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.leading_coeff();
        if lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.inv())
    }

    /// Equality up to a nonzero constant factor.
    pub fn is_associate(&self, other: &Self) -> bool {
        self.monic() == other.monic()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Self {
        let i = v.index();
        MPoly::from_terms(self.terms.iter().filter(|(m, _)| m.exps[i] > 0).map(|(m, c)| {
            let e = m.exps[i];
            (m.with_exp(v, e - 1), c.mul_ref(&C::from_i64(e as i64)))
        }))
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Complex conjugation of every coefficient.
    pub fn conj(&self) -> Self {
        MPoly::from_sorted(self.terms.iter().map(|(m, c)| (*m, c.conj())).collect())
    }

    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_real())
    }

    /// Real and imaginary parts, treating every variable as real.
    pub fn split_re_im(&self) -> (Self, Self) {
        let re = MPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, C::from_rational(c.real_part()))));
        let im = MPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, C::from_rational(c.imag_part()))));
        (re, im)
    }

    /// Coefficients with respect to `v`: `self = Σ out[k]·v^k`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MPoly<C>> {
        let d = self.degree(v);
        if d < 0 {
            return Vec::new();
        }
        let mut buckets: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); d as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exp(v);
            buckets[e as usize].push((m.with_exp(v, 0), c.clone()));
        }
        // Removing a variable keeps relative order within a bucket only for the
        // lexicographic tie-break, not the degree, so re-sort.
        buckets
            .into_iter()
            .map(|mut t| {
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                MPoly::from_sorted(t)
            })
            .collect()
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[MPoly<C>]) -> Self {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                debug_assert_eq!(m.exp(v), 0);
                terms.push((m.with_exp(v, k as u16), a.clone()));
            }
        }
        MPoly::from_terms(terms)
    }

    /// Coefficients with respect to a set of variables, keyed by the exponent
    /// monomial in those variables.
    pub fn coeffs_in_set(&self, set: VarSet) -> BTreeMap<Monomial, MPoly<C>> {
        let mut out: BTreeMap<Monomial, Vec<(Monomial, C)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut outer = [0u16; NVARS];
            let mut inner = *m.exps();
            for v in set.iter() {
                outer[v.index()] = inner[v.index()];
                inner[v.index()] = 0;
            }
            out.entry(Monomial::from_exps(outer))
                .or_default()
                .push((Monomial::from_exps(inner), c.clone()));
        }
        out.into_iter().map(|(k, t)| (k, MPoly::from_terms(t))).collect()
    }

    /// Leading coefficient with respect to `v`.
    pub fn lc_in(&self, v: Var) -> MPoly<C> {
        self.coeffs_in(v).pop().unwrap_or_else(Self::zero)
    }

    /// Substitutes a constant for `v`.
    pub fn eval(&self, v: Var, val: &C) -> Self {
        let i = v.index();
        let maxe = self.degree(v).max(0) as usize;
        let mut pows = vec![C::one()];
        for k in 1..=maxe {
            pows.push(pows[k - 1].mul_ref(val));
        }
        MPoly::from_terms(self.terms.iter().map(|(m, c)| (m.with_exp(v, 0), c.mul_ref(&pows[m.exps[i] as usize]))))
    }

    /// Substitutes constants for several variables at once.
    pub fn eval_many(&self, vals: &[(Var, C)]) -> Self {
        let mut p = self.clone();
        for (v, c) in vals {
            p = p.eval(*v, c);
        }
        p
    }

    /// Substitutes a polynomial for `v`.
    pub fn compose(&self, v: Var, by: &MPoly<C>) -> Self {
        let coeffs = self.coeffs_in(v);
        let mut acc = Self::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * by) + c;
        }
        acc
    }

    /// Renames variables; `map[v]` must be injective on the variables present.
    pub fn rename(&self, map: &[(Var, Var)]) -> Self {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut exps = [0u16; NVARS];
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = Var::from_index(i);
                let w = map.iter().find(|(a, _)| *a == v).map(|(_, b)| *b).unwrap_or(v);
                exps[w.index()] += e;
            }
            (Monomial::from_exps(exps), c.clone())
        }))
    }

    /// Multivariate division with remainder by a single divisor under the
    /// graded lexicographic order.
    pub fn div_rem(&self, d: &MPoly<C>) -> (MPoly<C>, MPoly<C>) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (lm, lc) = (d.terms[0].0, d.terms[0].1.clone());
        let lc_inv = lc.inv();
        let mut rem: BTreeMap<Monomial, C> = self.terms.iter().cloned().collect();
        let mut q = Vec::new();
        let mut r = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = c.mul_ref(&lc_inv);
                for (dm, dc) in &d.terms[1..] {
                    sub_into(&mut rem, qm.mul(dm), qc.mul_ref(dc));
                }
                q.push((qm, qc));
            } else {
                r.push((m, c));
            }
        }
        (MPoly::from_sorted(q), MPoly::from_sorted(r))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly<C>) -> Option<MPoly<C>> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.inv()));
        }
        if d.total_degree() > self.total_degree() {
            return None;
        }
        let (lm, lc) = (d.terms[0].0, d.terms[0].1.clone());
        let lc_inv = lc.inv();
        let mut rem: BTreeMap<Monomial, C> = self.terms.iter().cloned().collect();
        let mut q = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.quotient_of(&m);
            let qc = c.mul_ref(&lc_inv);
            for (dm, dc) in &d.terms[1..] {
                sub_into(&mut rem, qm.mul(dm), qc.mul_ref(dc));
            }
            q.push((qm, qc));
        }
        Some(MPoly::from_sorted(q))
    }

    pub fn divides(&self, other: &MPoly<C>) -> bool {
        other.div_exact(self).is_some()
    }
}

fn sub_into<C: Coeff>(rem: &mut BTreeMap<Monomial, C>, m: Monomial, c: C) {
    use std::collections::btree_map::Entry;
    match rem.entry(m) {
        Entry::Occupied(mut e) => {
            let v = e.get().sub_ref(&c);
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
        Entry::Vacant(e) => {
            e.insert(-c);
        }
    }
}

fn merge<C: Coeff>(a: &[(Monomial, C)], b: &[(Monomial, C)], negate_b: bool) -> Vec<(Monomial, C)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                let c = if negate_b { -b[j].1.clone() } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { a[i].1.sub_ref(&b[j].1) } else { a[i].1.add_ref(&b[j].1) };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        let c = if negate_b { -t.1.clone() } else { t.1.clone() };
        out.push((t.0, c));
    }
    out
}

impl<'a, C: Coeff> Add<&'a MPoly<C>> for &'a MPoly<C> {
    type Output = MPoly<C>;

    fn add(self, o: &MPoly<C>) -> MPoly<C> {
        MPoly::from_sorted(merge(&self.terms, &o.terms, false))
    }
}

impl<'a, C: Coeff> Sub<&'a MPoly<C>> for &'a MPoly<C> {
    type Output = MPoly<C>;

    fn sub(self, o: &MPoly<C>) -> MPoly<C> {
        MPoly::from_sorted(merge(&self.terms, &o.terms, true))
    }
}

impl<'a, C: Coeff> Mul<&'a MPoly<C>> for &'a MPoly<C> {
    type Output = MPoly<C>;

    fn mul(self, o: &MPoly<C>) -> MPoly<C> {
        if self.is_zero() || o.is_zero() {
            return MPoly::zero();
        }
        if self.terms.len() == 1 {
            return o.mul_monomial(&self.terms[0].0, &self.terms[0].1);
        }
        if o.terms.len() == 1 {
            return self.mul_monomial(&o.terms[0].0, &o.terms[0].1);
        }
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (m, c) in &self.terms {
            for (n, d) in &o.terms {
                let k = m.mul(n);
                let p = c.mul_ref(d);
                match acc.get_mut(&k) {
                    Some(e) => *e = e.add_ref(&p),
                    None => {
                        acc.insert(k, p);
                    }
                }
            }
        }
        MPoly::from_map(acc)
    }
}

impl<C: Coeff> Neg for &MPoly<C> {
    type Output = MPoly<C>;

    fn neg(self) -> MPoly<C> {
        MPoly::from_sorted(self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect())
    }
}

impl<C: Coeff> Neg for MPoly<C> {
    type Output = MPoly<C>;

    fn neg(self) -> MPoly<C> {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl<C: Coeff> $tr<MPoly<C>> for MPoly<C> {
            type Output = MPoly<C>;

            fn $f(self, o: MPoly<C>) -> MPoly<C> {
                (&self).$f(&o)
            }
        }

        impl<'a, C: Coeff> $tr<&'a MPoly<C>> for MPoly<C> {
            type Output = MPoly<C>;

            fn $f(self, o: &MPoly<C>) -> MPoly<C> {
                (&self).$f(o)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<C: Coeff> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::print_poly(self))
    }
}

impl<C: Coeff> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::print_poly(self))
    }
}
