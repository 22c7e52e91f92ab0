use super::{state_vars, u_derivatives, Parametrization, Realization};
use crate::error::{Error, Result};
use crate::matrix::{solve_linear, RFMatrix};
use crate::poly::{Var, VarSet};
use crate::RatFunc;

/// `D_u(f) = Σⱼ u⁽ʲ⁺¹⁾·∂f/∂u⁽ʲ⁾`; states are constants.
///
/// # Panics
/// If `f` already involves the highest representable derivative `u'''`.
pub fn d_u(f: &RatFunc) -> RatFunc {
    let top = Var::u(Var::MAX_DERIVATIVE);
    assert!(!f.contains(top), "D_u would exceed the supported derivative order");
    let mut acc = RatFunc::zero();
    for j in 0..Var::MAX_DERIVATIVE {
        let v = Var::u(j);
        if f.contains(v) {
            acc = &acc + &(&RatFunc::var(Var::u(j + 1)) * &f.derivative(v));
        }
    }
    acc
}

/// `ℒ_p(q) = Σᵢ pᵢ·∂q/∂xᵢ + D_u(q)`.
pub fn lie_derivative(q: &RatFunc, p: &[RatFunc]) -> RatFunc {
    let mut acc = d_u(q);
    for (i, pi) in p.iter().enumerate() {
        let x = Var::x(i + 1);
        if q.contains(x) && !pi.is_zero() {
            acc = &acc + &(pi * &q.derivative(x));
        }
    }
    acc
}

/// `(q, ℒ_p(q), …, ℒ_pⁿ(q))`.
pub fn corresponding_parametrization(sigma: &Realization, n: usize) -> Parametrization {
    let mut comps = vec![sigma.q().clone()];
    for k in 1..=n {
        let next = lie_derivative(&comps[k - 1], sigma.p());
        comps.push(next);
    }
    Parametrization::new(comps).expect("Lie derivatives stay in the state variables")
}

/// Recovers `x' = z, y = P₀` with `z = 𝒥(P₀,…,Pₙ₋₁)⁻¹·(P₁ − D_u P₀, …, Pₙ − D_u Pₙ₋₁)`.
///
/// Fails with [`Error::NotRealizableFromP`] when `z` depends on derivatives of `u`.
pub fn realization_from_parametrization(p: &Parametrization) -> Result<Realization> {
    let z = eq6_vector(p)?;
    if z.iter().any(|zi| !zi.vars().intersect(u_derivatives()).is_empty()) {
        return Err(Error::NotRealizableFromP { z });
    }
    Realization::new(z, p.component(0).clone())
}

/// The vector `z` of the realizability criterion, whatever its dependencies.
pub(crate) fn eq6_vector(p: &Parametrization) -> Result<Vec<RatFunc>> {
    let n = p.n();
    let comps = p.components();
    let jac = RFMatrix::jacobian(&comps[..n], &state_vars(n));
    let rhs: Vec<RatFunc> = (0..n).map(|i| &comps[i + 1] - &d_u(&comps[i])).collect();
    solve_linear(&jac, &rhs).map_err(|e| match e {
        Error::SingularMatrix => Error::SingularJacobian,
        e => e,
    })
}

/// `x' = 𝒥(s)⁻¹·p(u, s)`, `y = q(u, s)` for a `u`-free reparametrization `s`.
pub fn reparametrize_realization(sigma: &Realization, s: &[RatFunc]) -> Result<Realization> {
    let n = sigma.dim();
    if s.len() != n {
        return Err(Error::Invalid(format!("reparametrization needs {n} components")));
    }
    let xs = state_vars(n);
    let states = VarSet::of(&xs);
    if s.iter().any(|si| !si.vars().is_subset(states)) {
        return Err(Error::Invalid("reparametrization must depend on the states only".into()));
    }
    let bindings: Vec<(Var, RatFunc)> = xs.iter().copied().zip(s.iter().cloned()).collect();
    let ps = sigma.p().iter().map(|pi| pi.substitute(&bindings)).collect::<Result<Vec<_>>>()?;
    let q = sigma.q().substitute(&bindings)?;
    let jac = RFMatrix::jacobian(s, &xs);
    let p = solve_linear(&jac, &ps).map_err(|e| match e {
        Error::SingularMatrix => Error::SingularReparametrization,
        e => e,
    })?;
    Realization::new(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{parse_expr, QI};

    fn rf(s: &str) -> RatFunc {
        parse_expr(s).unwrap()
    }

    #[test]
    fn d_u_examples() {
        assert_eq!(d_u(&rf("u")), rf("u'"));
        assert_eq!(d_u(&rf("u^2 + u'")), rf("2*u*u' + u''"));
        assert_eq!(d_u(&rf("x^2")), RatFunc::zero());
        // quotient rule, written out independently
        let q = rf("(1-x)^4/(u^2+(1-x)^6)");
        assert_eq!(d_u(&q), rf("u'*(-2*u*(1-x)^4)/(u^2+(1-x)^6)^2"));
    }

    #[test]
    fn lie_examples() {
        assert!(lie_derivative(&rf("3"), &[rf("x")]).is_zero());
        assert_eq!(lie_derivative(&rf("u*x^3 + x^2"), &[rf("u*x")]), rf("3*u^2*x^3 + 2*u*x^2 + u'*x^3"));
    }

    #[test]
    fn trivial_parametrization() {
        let sigma = Realization::new(vec![RatFunc::zero()], rf("x")).unwrap();
        let p = corresponding_parametrization(&sigma, 1);
        assert_eq!(p.components(), &[rf("x"), RatFunc::zero()]);
        assert_eq!(realization_from_parametrization(&p).unwrap(), sigma);
    }

    #[test]
    fn non_realizable_parametrization() {
        let p = Parametrization::new(vec![rf("u/(u-x)^3"), rf("u*x/(u-x)^3")]).unwrap();
        match realization_from_parametrization(&p) {
            Err(Error::NotRealizableFromP { z }) => {
                assert_eq!(z, vec![rf("(u*x*(u-x) + (2*u+x)*u')/(3*u)")]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn singular_jacobian() {
        let p = Parametrization::new(vec![rf("u"), rf("x")]).unwrap();
        assert_eq!(realization_from_parametrization(&p), Err(Error::SingularJacobian));
    }

    #[test]
    fn reparametrize_identity_and_singular() {
        let sigma = Realization::new(vec![rf("u*x")], rf("u*x^3 + x^2")).unwrap();
        assert_eq!(reparametrize_realization(&sigma, &[rf("x")]).unwrap(), sigma);
        assert_eq!(
            reparametrize_realization(&sigma, &[RatFunc::constant(QI::int(2))]),
            Err(Error::SingularReparametrization)
        );
        assert!(reparametrize_realization(&sigma, &[rf("u*x")]).is_err());
    }
}
