//! Real realizations of first-order equations through the analytic split
//! `P(x + iz) = (U + iV)/W`.

mod conic;
mod factor;

pub use conic::{classify, conic_parametrization, line_parametrization, rational_point, CurveKind, RealCurveFactor};
pub use factor::{factor_low_degree, LowDegreeFactors};

use crate::diff::{corresponding_parametrization, reparametrize_realization, verify_realization, IOEquation, Parametrization, Realization};
use crate::error::{Error, Result};
use crate::observable::{observable_realize, tracing_index};
use crate::poly::{gcd, primitive_part_in_set, Var, VarSet};
use crate::ratfunc::substitute_poly;
use crate::{Poly, RatFunc, QI};

/// Default height bound of the rational point search on conics.
pub const DEFAULT_HEIGHT_BOUND: u64 = 50;

/// Split of one component `f/g`: `g(x + iz) = A + iB`,
/// `f(x + iz)·(A − iB) = U + iV` and `W = A² + B²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSplit {
    pub u: Poly,
    pub v: Poly,
    pub w: Poly,
    pub a: Poly,
    pub b: Poly,
}

impl ComponentSplit {
    /// `(U + iV)/W`.
    pub fn recombine(&self) -> Result<RatFunc> {
        let top = &self.u + &self.v.scale(&QI::i());
        RatFunc::new(top, self.w.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalyticSplit {
    pub components: Vec<ComponentSplit>,
}

fn x_plus_iz() -> Poly {
    &Poly::var(Var::X1) + &Poly::var(Var::Z).scale(&QI::i())
}

/// `P(x + iz)`.
pub fn analytic_substitute(r: &RatFunc) -> Result<RatFunc> {
    r.substitute(&[(Var::X1, RatFunc::from_poly(x_plus_iz()))])
}

pub fn split_component(r: &RatFunc) -> ComponentSplit {
    let s = x_plus_iz();
    let f = r.num().compose(Var::X1, &s);
    let g = r.den().compose(Var::X1, &s);
    let (a, b) = g.split_re_im();
    let g_bar = &a - &b.scale(&QI::i());
    let (u, v) = (&f * &g_bar).split_re_im();
    let w = &(&a * &a) + &(&b * &b);
    ComponentSplit { u, v, w, a, b }
}

pub fn analytic_split(p: &Parametrization) -> Result<AnalyticSplit> {
    if p.n() != 1 {
        return Err(Error::Invalid("the analytic split is defined for n = 1".into()));
    }
    let components: Vec<ComponentSplit> = p.components().iter().map(split_component).collect();
    for (c, r) in components.iter().zip(p.components()) {
        if c.recombine()? != analytic_substitute(r)? {
            return Err(Error::Internal(format!("analytic split of {r} does not recombine")));
        }
    }
    Ok(AnalyticSplit { components })
}

/// `gcd(V₁, V₂)` with its content in `u, u'` removed, leading coefficient 1.
pub fn common_v(p: &Parametrization) -> Result<Poly> {
    let split = analytic_split(p)?;
    let g = gcd(&split.components[0].v, &split.components[1].v);
    if g.is_zero() {
        return Err(Error::Degenerate("both components are real constants".into()));
    }
    let plane = VarSet::of(&[Var::X1, Var::Z]);
    let v = primitive_part_in_set(&g, plane).monic();
    if !v.vars().is_subset(plane) || !v.is_real() {
        return Err(Error::Internal(format!("V = {v} has no representative in R[x, z]")));
    }
    Ok(v)
}

/// Factors of `V` of degree at most two, classified, followed by any
/// unfactored part of higher degree. Lines come first, then circles, then the
/// remaining conics, each group in canonical order.
pub fn detect_real_curve_factors(v: &Poly, height_bound: u64, seed: u64) -> Vec<RealCurveFactor> {
    if v.is_constant() {
        return Vec::new();
    }
    let low = factor_low_degree(v, seed);
    let mut out: Vec<RealCurveFactor> = low
        .factors
        .iter()
        .map(|(f, m)| RealCurveFactor { multiplicity: *m, ..classify(f, height_bound) })
        .collect();
    out.extend(low.rest.iter().map(|(f, m)| RealCurveFactor {
        factor: f.clone(),
        multiplicity: *m,
        kind: CurveKind::Higher,
        parametrization: None,
    }));
    let rank = |k: CurveKind| match k {
        CurveKind::Line => 0,
        CurveKind::Circle => 1,
        CurveKind::OtherConic => 2,
        CurveKind::NonReal => 3,
        CurveKind::Higher => 4,
    };
    out.sort_by(|a, b| {
        rank(a.kind)
            .cmp(&rank(b.kind))
            .then_with(|| a.factor.terms()[0].0.cmp(&b.factor.terms()[0].0))
    });
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealVerdict {
    Realized {
        realization: Realization,
        /// `s = s₁ + i·s₂` applied to the observable realization.
        s: RatFunc,
        /// Index into the report's factors.
        chosen: usize,
    },
    NoRealRealization,
    /// A real factor exists but no real parametrization of it was found.
    Indeterminate(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealOutcome {
    pub verdict: RealVerdict,
    pub observable: Realization,
    pub v: Poly,
    pub factors: Vec<RealCurveFactor>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RealOptions {
    pub height_bound: u64,
    pub seed: u64,
}

impl Default for RealOptions {
    fn default() -> Self {
        RealOptions { height_bound: DEFAULT_HEIGHT_BOUND, seed: 0 }
    }
}

pub fn real_realize(sigma: &Realization, f: &IOEquation) -> Result<RealOutcome> {
    real_realize_with(sigma, f, RealOptions::default())
}

pub fn real_realize_with(sigma: &Realization, f: &IOEquation, opts: RealOptions) -> Result<RealOutcome> {
    let observable = observable_realize(sigma, f)?;
    let p = corresponding_parametrization(&observable, 1);
    let v = common_v(&p)?;
    let factors = detect_real_curve_factors(&v, opts.height_bound, opts.seed);
    let split = analytic_split(&p)?;
    let chosen = factors.iter().position(|c| c.parametrization.is_some());
    let verdict = match chosen {
        Some(k) => {
            let (s1, s2) = factors[k].parametrization.clone().expect("chosen factor is parametrized");
            for c in &split.components {
                let w = substitute_poly(&c.w, &[(Var::X1, s1.clone()), (Var::Z, s2.clone())]).0;
                if w.is_zero() {
                    return Err(Error::Internal("W vanishes on the chosen real curve".into()));
                }
            }
            let s = &s1 + &s2.scale(&QI::i());
            let out = reparametrize_realization(&observable, std::slice::from_ref(&s))?;
            if !out.is_real() || !verify_realization(&out, f) {
                return Err(Error::Internal(format!("reparametrization by {s} is not a real realization")));
            }
            if matches!(factors[k].kind, CurveKind::Line | CurveKind::Circle)
                && tracing_index(&corresponding_parametrization(&out, 1))? != 1
            {
                return Err(Error::Internal("real realization from a line or circle is not observable".into()));
            }
            RealVerdict::Realized { realization: out, s, chosen: k }
        }
        None => match factors.iter().find(|c| c.kind.is_real_curve() != Some(false)) {
            Some(c) => RealVerdict::Indeterminate(match c.kind {
                CurveKind::Higher => format!("factor {} of degree {} is not classified", c.factor, c.factor.total_degree()),
                _ => format!("no rational point found on the real curve {}", c.factor),
            }),
            None => RealVerdict::NoRealRealization,
        },
    };
    Ok(RealOutcome { verdict, observable, v, factors })
}

/// Whether every coefficient is real after canonical reduction.
pub trait IsReal {
    fn is_real(&self) -> bool;
}

impl IsReal for Poly {
    fn is_real(&self) -> bool {
        Poly::is_real(self)
    }
}

impl IsReal for RatFunc {
    fn is_real(&self) -> bool {
        RatFunc::is_real(self)
    }
}

impl IsReal for Parametrization {
    fn is_real(&self) -> bool {
        Parametrization::is_real(self)
    }
}

impl IsReal for Realization {
    fn is_real(&self) -> bool {
        Realization::is_real(self)
    }
}

/// Complex conjugation of every coefficient.
pub trait Conjugate {
    fn conjugate(&self) -> Self;
}

impl Conjugate for Poly {
    fn conjugate(&self) -> Self {
        self.conj()
    }
}

impl Conjugate for RatFunc {
    fn conjugate(&self) -> Self {
        self.conj()
    }
}

impl Conjugate for Realization {
    fn conjugate(&self) -> Self {
        Realization::new(self.p().iter().map(RatFunc::conj).collect(), self.q().conj()).expect("conjugation keeps validity")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{parse_expr, parse_poly};

    fn rf(s: &str) -> RatFunc {
        parse_expr(s).unwrap()
    }

    #[test]
    fn square_splits_by_binomial() {
        let c = split_component(&rf("x^2"));
        assert_eq!(c.u, parse_poly("x^2 - z^2").unwrap());
        assert_eq!(c.v, parse_poly("2*x*z").unwrap());
        assert_eq!(c.w, Poly::one());
    }

    #[test]
    fn real_parametrization_has_z_in_v() {
        let p = Parametrization::new(vec![rf("(x^2 + u)/(x - 1)"), rf("u'*x + u")]).unwrap();
        let split = analytic_split(&p).unwrap();
        for c in &split.components {
            assert!(Poly::var(Var::Z).divides(&c.v));
        }
        assert_eq!(common_v(&p).unwrap(), Poly::var(Var::Z));
    }

    #[test]
    fn is_real_after_reduction() {
        assert!(IsReal::is_real(&rf("I*x - I*x + x")));
        assert!(!IsReal::is_real(&rf("I*x")));
        let r = Realization::new(vec![rf("I*x")], rf("x")).unwrap();
        assert_eq!(r.conjugate().conjugate(), r);
        assert_eq!(r.conjugate().p()[0], rf("-I*x"));
    }
}
