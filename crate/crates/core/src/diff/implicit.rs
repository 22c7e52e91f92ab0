use super::{IOEquation, Parametrization};
use crate::error::{Error, Result};
use crate::poly::{primitive_part_in_set, resultant, squarefree_decomposition, Var, VarSet};
use crate::ratfunc::substitute_poly;
use crate::{Poly, RatFunc};

/// Implicit equation of a planar parametrization `(P₀, P₁)` in `(y, y')`.
///
/// The resultant `Res_x(num P₀ − y·den P₀, num P₁ − y'·den P₁)` is a power of
/// the implicit equation times a factor free of `y, y'`; that factor and the
/// power are stripped, and only squarefree factors vanishing on `P` are kept.
pub fn implicitize_curve(p: &Parametrization) -> Result<IOEquation> {
    if p.n() != 1 {
        return Err(Error::Invalid("implicitization is implemented for n = 1 only".into()));
    }
    let (p0, p1) = (p.component(0), p.component(1));
    let x = Var::X1;
    if !p0.contains(x) && !p1.contains(x) {
        return Err(Error::Degenerate("both components are constant in x".into()));
    }
    let a = p0.num() - &p0.den().mul_monomial(&crate::Monomial::var(Var::Y, 1), &crate::QI::int(1));
    let b = p1.num() - &p1.den().mul_monomial(&crate::Monomial::var(Var::y(1), 1), &crate::QI::int(1));
    let r = resultant(&a, &b, x);
    if r.is_zero() {
        return Err(Error::Degenerate("resultant vanishes identically".into()));
    }
    let r = primitive_part_in_set(&r, VarSet::of(&[Var::Y, Var::y(1)]));
    let comps = [p0.clone(), p1.clone()];
    let factors: Vec<Poly> = squarefree_decomposition(&r).into_iter().map(|(f, _)| f).collect();
    // a single factor is the implicit equation itself
    let vanishing: Vec<Poly> =
        if factors.len() == 1 { factors } else { factors.into_iter().filter(|f| vanishes(f, &comps)).collect() };
    let f = vanishing
        .into_iter()
        .reduce(|acc, f| &acc * &f)
        .ok_or_else(|| Error::Internal("no factor of the resultant vanishes on the parametrization".into()))?;
    IOEquation::new(f)
}

fn vanishes(f: &Poly, comps: &[RatFunc; 2]) -> bool {
    let bindings = [(Var::Y, comps[0].clone()), (Var::y(1), comps[1].clone())];
    substitute_poly(f, &bindings).0.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{parse_expr, parse_poly};

    fn param(a: &str, b: &str) -> Parametrization {
        Parametrization::new(vec![parse_expr(a).unwrap(), parse_expr(b).unwrap()]).unwrap()
    }

    #[test]
    fn first_order_example() {
        let f = implicitize_curve(&param("u/(u-x)^3", "u*x/(u-x)^3")).unwrap();
        assert!(f.same_up_to_unit(&parse_poly("(y' - u*y)^3 + u*y^2").unwrap()));
    }

    #[test]
    fn trivial() {
        let f = implicitize_curve(&param("x", "0")).unwrap();
        assert_eq!(f.poly(), &parse_poly("y'").unwrap());
    }

    #[test]
    fn degenerate() {
        assert!(matches!(implicitize_curve(&param("u", "u'")), Err(Error::Degenerate(_))));
    }

    #[test]
    fn improper_parametrization_gives_the_reduced_equation() {
        // (x², 2x²) traces y' = 2y twice
        let f = implicitize_curve(&param("x^2", "2*x^2")).unwrap();
        assert_eq!(f.poly(), &parse_poly("y - 1/2*y'").unwrap());
    }
}
