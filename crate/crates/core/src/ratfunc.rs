//! Reduced rational functions over an exact field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{denominator_lcm, gcd, MPoly, Var, VarSet};
use crate::scalar::Coeff;

/// `num / den` with `gcd(num, den) = 1` and `den` monic under the monomial order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction<C> {
    num: MPoly<C>,
    den: MPoly<C>,
}

impl<C: Coeff> RationalFunction<C> {
    pub fn new(num: MPoly<C>, den: MPoly<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MPoly<C>, den: MPoly<C>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = gcd(&num, &den);
        let (n, d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        Self::normalized(n, d)
    }

    /// Fixes the unit so that the denominator is monic; assumes coprime input.
    fn normalized(num: MPoly<C>, den: MPoly<C>) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.inv();
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(MPoly::one())
    }

    pub fn int(n: i64) -> Self {
        Self::from_poly(MPoly::int(n))
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MPoly::var(v))
    }

    pub fn from_poly(p: MPoly<C>) -> Self {
        RationalFunction {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn num(&self) -> &MPoly<C> {
        &self.num
    }

    pub fn den(&self) -> &MPoly<C> {
        &self.den
    }

    pub fn into_parts(self) -> (MPoly<C>, MPoly<C>) {
        (self.num, self.den)
    }

    /// Total number of terms; a cheap measure of expression size.
    pub fn size(&self) -> usize {
        self.num.num_terms() + self.den.num_terms()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<C> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn vars(&self) -> VarSet {
        self.num.vars().union(self.den.vars())
    }

    pub fn contains(&self, v: Var) -> bool {
        self.num.contains(v) || self.den.contains(v)
    }

    /// `max(deg_v num, deg_v den)`.
    pub fn degree(&self, v: Var) -> i64 {
        self.num.degree(v).max(self.den.degree(v))
    }

    pub fn is_real(&self) -> bool {
        self.num.is_real() && self.den.is_real()
    }

    pub fn conj(&self) -> Self {
        // conjugation preserves coprimality and a real leading coefficient 1
        RationalFunction {
            num: self.num.conj(),
            den: self.den.conj(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        RationalFunction {
            num: self.num.scale(c),
            den: if c.is_zero() { MPoly::one() } else { self.den.clone() },
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = e as u32;
        Ok(RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        })
    }

    pub fn derivative(&self, v: Var) -> Self {
        if !self.contains(v) {
            return Self::zero();
        }
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative(v));
        }
        // (n'd − nd')/d², with the gcd taken against d only
        let dn = self.num.derivative(v);
        let dd = self.den.derivative(v);
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        if top.is_zero() {
            return Self::zero();
        }
        let g = gcd(&top, &self.den);
        let top = top.div_exact(&g).unwrap();
        let d1 = self.den.div_exact(&g).unwrap();
        Self::reduce(top, &d1 * &self.den)
    }

    /// Simultaneous substitution of rational functions for variables.
    pub fn substitute(&self, bindings: &[(Var, RationalFunction<C>)]) -> Result<Self> {
        let (nn, nd) = substitute_poly(&self.num, bindings);
        let (dn, dd) = substitute_poly(&self.den, bindings);
        if dn.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce(&nn * &dd, &nd * &dn))
    }

    /// Replaces `v` by `r`.
    pub fn compose(&self, v: Var, r: &RationalFunction<C>) -> Result<Self> {
        self.substitute(&[(v, r.clone())])
    }

    pub fn eval(&self, v: Var, c: &C) -> Result<Self> {
        let d = self.den.eval(v, c);
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce(self.num.eval(v, c), d))
    }
}

/// Substitutes into a polynomial without reducing: returns `(N, D)` with
/// `p(bindings) = N / D`, where `D` is a constant times a product of powers
/// of the binding denominators.
pub fn substitute_poly<C: Coeff>(p: &MPoly<C>, bindings: &[(Var, RationalFunction<C>)]) -> (MPoly<C>, MPoly<C>) {
    let active: Vec<(Var, MPoly<C>, MPoly<C>)> = bindings
        .iter()
        .filter(|(v, _)| p.contains(*v))
        .map(|(v, r)| {
            // a common integer factor on num and den keeps the value and avoids fraction arithmetic
            let l = denominator_lcm(&r.num).lcm(&denominator_lcm(&r.den));
            if l.is_one() {
                (*v, r.num.clone(), r.den.clone())
            } else {
                let l = C::from_rational(BigRational::from_integer(l));
                (*v, r.num.scale(&l), r.den.scale(&l))
            }
        })
        .collect();
    if active.is_empty() {
        return (p.clone(), MPoly::one());
    }
    let degs: Vec<u32> = active.iter().map(|(v, _, _)| p.degree(*v) as u32).collect();
    let mut den = MPoly::one();
    for ((_, _, d), &m) in active.iter().zip(&degs) {
        if !d.is_one() {
            den = &den * &d.pow(m);
        }
    }
    // homogenized powers num^k · den^(m−k), shared by every coefficient
    let tables: Vec<(Var, Vec<MPoly<C>>)> = active
        .iter()
        .zip(&degs)
        .map(|((v, n, d), &m)| {
            let m = m as usize;
            let mut num_pows = vec![MPoly::one()];
            let mut den_pows = vec![MPoly::one()];
            for k in 1..=m {
                num_pows.push(&num_pows[k - 1] * n);
                den_pows.push(&den_pows[k - 1] * d);
            }
            (*v, (0..=m).map(|k| &num_pows[k] * &den_pows[m - k]).collect())
        })
        .collect();
    let num = subst_rec(p, &tables);
    (num, den)
}

fn subst_rec<C: Coeff>(p: &MPoly<C>, tables: &[(Var, Vec<MPoly<C>>)]) -> MPoly<C> {
    let Some(((v, pows), rest)) = tables.split_first() else {
        return p.clone();
    };
    let mut acc = MPoly::zero();
    for (k, c) in p.coeffs_in(*v).iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = &acc + &(&subst_rec(c, rest) * &pows[k]);
    }
    acc
}

impl<C: Coeff> From<MPoly<C>> for RationalFunction<C> {
    fn from(p: MPoly<C>) -> Self {
        Self::from_poly(p)
    }
}

impl<'a, C: Coeff> Add<&'a RationalFunction<C>> for &'a RationalFunction<C> {
    type Output = RationalFunction<C>;

    fn add(self, o: &RationalFunction<C>) -> RationalFunction<C> {
        add_sub(self, o, false)
    }
}

impl<'a, C: Coeff> Sub<&'a RationalFunction<C>> for &'a RationalFunction<C> {
    type Output = RationalFunction<C>;

    fn sub(self, o: &RationalFunction<C>) -> RationalFunction<C> {
        add_sub(self, o, true)
    }
}

fn add_sub<C: Coeff>(a: &RationalFunction<C>, b: &RationalFunction<C>, negate: bool) -> RationalFunction<C> {
    let comb = |x: &MPoly<C>, y: &MPoly<C>| if negate { x - y } else { x + y };
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate { -b } else { b.clone() };
    }
    if a.den.is_one() && b.den.is_one() {
        return RationalFunction::from_poly(comb(&a.num, &b.num));
    }
    if a.den == b.den {
        return RationalFunction::reduce(comb(&a.num, &b.num), a.den.clone());
    }
    // gcd(num, den) can only come from g = gcd(a.den, b.den)
    let g = gcd(&a.den, &b.den);
    let ad = a.den.div_exact(&g).unwrap();
    let bd = b.den.div_exact(&g).unwrap();
    let num = comb(&(&a.num * &bd), &(&b.num * &ad));
    if num.is_zero() {
        return RationalFunction::zero();
    }
    let den = &ad * &b.den;
    if g.is_one() {
        return RationalFunction::normalized(num, den);
    }
    let h = gcd(&num, &g);
    if h.is_one() {
        RationalFunction::normalized(num, den)
    } else {
        RationalFunction::normalized(num.div_exact(&h).unwrap(), den.div_exact(&h).unwrap())
    }
}

impl<'a, C: Coeff> Mul<&'a RationalFunction<C>> for &'a RationalFunction<C> {
    type Output = RationalFunction<C>;

    fn mul(self, o: &RationalFunction<C>) -> RationalFunction<C> {
        if self.is_zero() || o.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RationalFunction::from_poly(&self.num * &o.num);
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = o.den.div_exact(&g1).unwrap();
        let n2 = o.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        RationalFunction::normalized(&n1 * &n2, &d1 * &d2)
    }
}

impl<'a, C: Coeff> Div<&'a RationalFunction<C>> for &'a RationalFunction<C> {
    type Output = RationalFunction<C>;

    /// Panics on division by zero; use [`RationalFunction::checked_div`] otherwise.
    fn div(self, o: &RationalFunction<C>) -> RationalFunction<C> {
        self.checked_div(o).expect("division by zero rational function")
    }
}

impl<C: Coeff> Neg for &RationalFunction<C> {
    type Output = RationalFunction<C>;

    fn neg(self) -> RationalFunction<C> {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<C: Coeff> Neg for RationalFunction<C> {
    type Output = RationalFunction<C>;

    fn neg(self) -> RationalFunction<C> {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl<C: Coeff> $tr<RationalFunction<C>> for RationalFunction<C> {
            type Output = RationalFunction<C>;

            fn $f(self, o: RationalFunction<C>) -> RationalFunction<C> {
                (&self).$f(&o)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl<C: Coeff> fmt::Debug for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::print_ratfunc(self))
    }
}

impl<C: Coeff> fmt::Display for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::print_ratfunc(self))
    }
}
