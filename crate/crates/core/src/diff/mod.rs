//! Differential layer: input-output equations, realizations and their
//! parametrizations, and the conversions between them.

mod checks;
mod implicit;
mod operators;

pub use checks::{check_order_obstruction, check_param_shape, verify_realization, OrderVerdict, ShapeVerdict};
pub use implicit::implicitize_curve;
pub use operators::{
    corresponding_parametrization, d_u, lie_derivative, realization_from_parametrization, reparametrize_realization,
};

use crate::error::{Error, Result};
use crate::poly::{primitive_part_in_set, squarefree_decomposition, Var, VarSet};
use crate::ratfunc::substitute_poly;
use crate::{Poly, RatFunc, QI};

/// Largest state dimension supported by the variable universe.
pub const MAX_STATES: usize = 3;

pub(crate) fn state_vars(n: usize) -> Vec<Var> {
    (1..=n).map(Var::x).collect()
}

fn u_derivatives() -> VarSet {
    VarSet::of(&[Var::u(1), Var::u(2), Var::u(3)])
}

/// Highest derivative order of `u` appearing in `f`, if any.
pub fn u_level(f: &RatFunc) -> Option<usize> {
    f.vars().max_u_order()
}

/// A differential polynomial `F(u, u', …, y, y', …)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IOEquation {
    f: Poly,
    order_y: usize,
    order_u: Option<usize>,
}

impl IOEquation {
    /// Normalizes `f`: content in the `y` variables is removed and the leading
    /// coefficient is made 1. Rejects polynomials without `y`, polynomials in
    /// variables other than `u⁽ʲ⁾, y⁽ʲ⁾`, and ones that are not squarefree in
    /// the highest `y` derivative.
    pub fn new(f: Poly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::Invalid("the zero polynomial is not an IO-equation".into()));
        }
        let allowed = VarSet::inputs().union(VarSet::outputs());
        if !f.vars().is_subset(allowed) {
            return Err(Error::Invalid(format!("IO-equation may only involve u and y derivatives: {f}")));
        }
        let Some(order_y) = f.vars().max_y_order() else {
            return Err(Error::Invalid(format!("IO-equation does not involve y: {f}")));
        };
        let f = primitive_part_in_set(&f, VarSet::outputs()).monic();
        let top = Var::y(order_y);
        if !crate::poly::gcd(&f, &f.derivative(top)).degree(top).eq(&0) {
            return Err(Error::Invalid(format!("IO-equation is not squarefree in {}", top.name())));
        }
        let order_u = f.vars().max_u_order();
        Ok(IOEquation { f, order_y, order_u })
    }

    pub fn poly(&self) -> &Poly {
        &self.f
    }

    /// Order `n` in `y`.
    pub fn order_y(&self) -> usize {
        self.order_y
    }

    /// Order in `u`; `None` when `u` does not occur.
    pub fn order_u(&self) -> Option<usize> {
        self.order_u
    }

    /// `∂F/∂y⁽ⁿ⁾`.
    pub fn separant(&self) -> Poly {
        self.f.derivative(Var::y(self.order_y))
    }

    pub fn degree(&self, v: Var) -> i64 {
        self.f.degree(v)
    }

    /// `F(P) ≡ 0`, checked by unreduced substitution.
    pub fn vanishes_on(&self, comps: &[RatFunc]) -> bool {
        if comps.len() != self.order_y + 1 {
            return false;
        }
        let bindings: Vec<(Var, RatFunc)> = comps.iter().enumerate().map(|(i, c)| (Var::y(i), c.clone())).collect();
        substitute_poly(&self.f, &bindings).0.is_zero()
    }

    /// Equality up to a nonzero constant.
    pub fn same_up_to_unit(&self, other: &Poly) -> bool {
        self.f.is_associate(other)
    }

    /// Sanity proxy for irreducibility: the squarefree decomposition has a
    /// single factor of multiplicity one.
    pub fn is_squarefree(&self) -> bool {
        matches!(squarefree_decomposition(&self.f).as_slice(), [(_, 1)])
    }
}

/// State-space system `xᵢ' = pᵢ(u, x)`, `y = q(u, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    p: Vec<RatFunc>,
    q: RatFunc,
}

impl Realization {
    pub fn new(p: Vec<RatFunc>, q: RatFunc) -> Result<Self> {
        let n = p.len();
        if n == 0 || n > MAX_STATES {
            return Err(Error::Invalid(format!("realization needs 1 to {MAX_STATES} states, got {n}")));
        }
        let allowed = VarSet::of(&state_vars(n)).union(VarSet::of(&[Var::U]));
        for (i, f) in p.iter().chain(std::iter::once(&q)).enumerate() {
            if !f.vars().is_subset(allowed) {
                let name = if i < n { format!("p{}", i + 1) } else { "q".into() };
                return Err(Error::Invalid(format!(
                    "{name} = {f} may only involve u and the states x1..x{n}"
                )));
            }
        }
        if q.is_constant() {
            return Err(Error::Invalid("output q must be nonconstant".into()));
        }
        Ok(Realization { p, q })
    }

    pub fn dim(&self) -> usize {
        self.p.len()
    }

    pub fn p(&self) -> &[RatFunc] {
        &self.p
    }

    pub fn q(&self) -> &RatFunc {
        &self.q
    }

    pub fn is_real(&self) -> bool {
        self.q.is_real() && self.p.iter().all(RatFunc::is_real)
    }
}

/// A tuple `(P₀, …, Pₙ)` of rational functions in `u⁽ʲ⁾` and the states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    comps: Vec<RatFunc>,
}

impl Parametrization {
    pub fn new(comps: Vec<RatFunc>) -> Result<Self> {
        let n = comps.len().saturating_sub(1);
        if n == 0 || n > MAX_STATES {
            return Err(Error::Invalid(format!(
                "parametrization needs 2 to {} components, got {}",
                MAX_STATES + 1,
                comps.len()
            )));
        }
        let allowed = VarSet::of(&state_vars(n)).union(VarSet::inputs());
        for (i, c) in comps.iter().enumerate() {
            if !c.vars().is_subset(allowed) {
                return Err(Error::Invalid(format!(
                    "P{i} = {c} may only involve u derivatives and x1..x{n}"
                )));
            }
        }
        Ok(Parametrization { comps })
    }

    pub fn components(&self) -> &[RatFunc] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &RatFunc {
        &self.comps[i]
    }

    /// Number of states `n`; there are `n + 1` components.
    pub fn n(&self) -> usize {
        self.comps.len() - 1
    }

    /// Highest derivative order of `u` in component `i` (`None` if `u`-free).
    pub fn field_level(&self, i: usize) -> Option<usize> {
        u_level(&self.comps[i])
    }

    pub fn is_real(&self) -> bool {
        self.comps.iter().all(RatFunc::is_real)
    }

    /// Rank of the Jacobian of all components with respect to the states.
    pub fn jacobian_rank(&self) -> usize {
        crate::matrix::RFMatrix::jacobian(&self.comps, &state_vars(self.n())).rank()
    }

    /// Simultaneous substitution of `s` for the states in every component.
    pub fn compose(&self, s: &[RatFunc]) -> Result<Parametrization> {
        if s.len() != self.n() {
            return Err(Error::Invalid("reparametrization has the wrong number of components".into()));
        }
        let bindings: Vec<(Var, RatFunc)> = state_vars(self.n()).into_iter().zip(s.iter().cloned()).collect();
        let comps = self.comps.iter().map(|c| c.substitute(&bindings)).collect::<Result<Vec<_>>>()?;
        Ok(Parametrization { comps })
    }
}

/// Möbius transformation `x ↦ (a·x + b)/(c·x + d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius {
    pub a: QI,
    pub b: QI,
    pub c: QI,
    pub d: QI,
}

impl Mobius {
    pub fn new(a: QI, b: QI, c: QI, d: QI) -> Result<Self> {
        let m = Mobius { a, b, c, d };
        if m.det() == QI::int(0) {
            return Err(Error::Degenerate("Möbius transformation with ad - bc = 0".into()));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Mobius { a: QI::int(1), b: QI::int(0), c: QI::int(0), d: QI::int(1) }
    }

    pub fn det(&self) -> QI {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn inverse(&self) -> Mobius {
        Mobius { a: self.d.clone(), b: -self.b.clone(), c: -self.c.clone(), d: self.a.clone() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Mobius) -> Mobius {
        let mul = |p: &QI, q: &QI| p.clone() * q.clone();
        Mobius {
            a: mul(&self.a, &other.a) + mul(&self.b, &other.c),
            b: mul(&self.a, &other.b) + mul(&self.b, &other.d),
            c: mul(&self.c, &other.a) + mul(&self.d, &other.c),
            d: mul(&self.c, &other.b) + mul(&self.d, &other.d),
        }
    }

    /// The transformation as a rational function of `v`.
    pub fn as_ratfunc(&self, v: Var) -> RatFunc {
        let x = Poly::var(v);
        let num = &x.scale(&self.a) + &Poly::constant(self.b.clone());
        let den = &x.scale(&self.c) + &Poly::constant(self.d.clone());
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    /// Recognizes a degree-one rational function of `v` with constant coefficients.
    pub fn from_ratfunc(r: &RatFunc, v: Var) -> Option<Mobius> {
        if !r.vars().is_subset(VarSet::of(&[v])) || r.num().degree(v).max(r.den().degree(v)) != 1 {
            return None;
        }
        let coef = |p: &Poly, k: usize| {
            p.coeffs_in(v).get(k).and_then(Poly::constant_value).unwrap_or_else(|| QI::int(0))
        };
        Mobius::new(coef(r.num(), 1), coef(r.num(), 0), coef(r.den(), 1), coef(r.den(), 0)).ok()
    }
}
