use super::rational_degree;
use crate::diff::Parametrization;
use crate::error::{Error, Result};
use crate::matrix::{nullspace, RFMatrix};
use crate::poly::{primitive_part_in_set, resultant, squarefree_decomposition, Monomial, Var, VarSet};
use crate::{Poly, RatFunc, QI};

/// Variable standing for the value `z₁` of a component in implicit equations.
pub const Z1: Var = Var::T;
/// Variable standing for the parameter `z₂` of `r` in implicit equations.
pub const Z2: Var = Var::Z;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperReparametrization {
    /// Proper `Q` with `Q(r) = P`.
    pub q: Parametrization,
    /// Implicit equations `gᵢ(z₁, z₂)` of `(Pᵢ, r)`, in the variables `t = z₁`, `z = z₂`.
    pub g: Vec<Poly>,
}

/// `z₁·den(Q)(z₂) − num(Q)(z₂)`, which vanishes at `(Q(z₂), z₂)`.
pub fn vanishing_form(q: &RatFunc) -> Poly {
    let to_z2 = [(Var::X1, Z2)];
    let z1 = Monomial::var(Z1, 1);
    &q.den().rename(&to_z2).mul_monomial(&z1, &QI::int(1)) - &q.num().rename(&to_z2)
}

/// `den(Q)(z₂) − z₁·num(Q)(z₂)`: the same shape with the roles of numerator
/// and denominator exchanged; it vanishes at `(1/Q(z₂), z₂)`.
pub fn reciprocal_form(q: &RatFunc) -> Poly {
    let to_z2 = [(Var::X1, Z2)];
    let z1 = Monomial::var(Z1, 1);
    &q.den().rename(&to_z2) - &q.num().rename(&to_z2).mul_monomial(&z1, &QI::int(1))
}

/// Proper `Q` with `Q(r) = P`, via implicit equations of `(Pᵢ, r)`; the result
/// is checked against a linear ansatz and by substitution.
pub fn proper_reparametrize(p: &Parametrization, r: &RatFunc) -> Result<ProperReparametrization> {
    let q = p
        .components()
        .iter()
        .map(|pi| by_implicit_equation(pi, r))
        .collect::<Result<Vec<_>>>()?;
    for (pi, qi) in p.components().iter().zip(&q) {
        if qi.compose(Var::X1, r)? != *pi {
            return Err(Error::InconsistentAnsatz(format!("Q({r}) does not reproduce {pi}")));
        }
        if pi.contains(Var::X1) && by_ansatz(pi, r)? != *qi {
            return Err(Error::Internal(format!("ansatz and implicit equation disagree on {pi}")));
        }
    }
    let g = q.iter().map(vanishing_form).collect();
    Ok(ProperReparametrization { q: Parametrization::new(q)?, g })
}

/// `Res_x(num Pᵢ − z₁·den Pᵢ, num r − z₂·den r)` is a power of
/// `z₁·den(Qᵢ)(z₂) − num(Qᵢ)(z₂)` up to a factor free of `z₁, z₂`.
pub(crate) fn by_implicit_equation(pi: &RatFunc, r: &RatFunc) -> Result<RatFunc> {
    if !pi.contains(Var::X1) {
        return Ok(pi.clone());
    }
    let one = QI::int(1);
    let a = pi.num() - &pi.den().mul_monomial(&Monomial::var(Z1, 1), &one);
    let b = r.num() - &r.den().mul_monomial(&Monomial::var(Z2, 1), &one);
    let res = resultant(&a, &b, Var::X1);
    let res = primitive_part_in_set(&res, VarSet::of(&[Z1, Z2]));
    let linear: Vec<Poly> = squarefree_decomposition(&res)
        .into_iter()
        .map(|(f, _)| f)
        .filter(|f| f.degree(Z1) == 1)
        .collect();
    let [g] = linear.as_slice() else {
        return Err(Error::InconsistentAnsatz(format!(
            "implicit equation of ({pi}, {r}) has {} factors linear in z1",
            linear.len()
        )));
    };
    let cs = g.coeffs_in(Z1);
    let back = [(Z2, Var::X1)];
    RatFunc::new(-cs[0].rename(&back), cs[1].rename(&back))
}

/// Linear ansatz `Q = A/B` with `deg A, deg B ≤ deg Pᵢ / deg r`.
pub fn by_ansatz(pi: &RatFunc, r: &RatFunc) -> Result<RatFunc> {
    let dr = rational_degree(r, Var::X1);
    let dp = rational_degree(pi, Var::X1);
    if dr == 0 || !dp.is_multiple_of(dr) {
        return Err(Error::InconsistentAnsatz(format!("deg P = {dp} is not a multiple of deg r = {dr}")));
    }
    let d = dp / dr;
    let (m, n) = (r.num(), r.den());
    // columns: a_0..a_d then b_0..b_d; each contributes r-powers cleared by N^d
    let mut cols: Vec<Poly> = Vec::with_capacity(2 * d + 2);
    let basis: Vec<Poly> = (0..=d).map(|k| &m.pow(k as u32) * &n.pow((d - k) as u32)).collect();
    for bk in &basis {
        cols.push(bk * pi.den());
    }
    for bk in &basis {
        cols.push(-(bk * pi.num()));
    }
    let height = cols.iter().map(|c| c.degree(Var::X1).max(0) as usize).max().unwrap_or(0) + 1;
    let mut mat = RFMatrix::zeros(height, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (e, ce) in c.coeffs_in(Var::X1).into_iter().enumerate() {
            mat.set(e, j, RatFunc::from_poly(ce));
        }
    }
    let ker = nullspace(&mat);
    let [v] = ker.as_slice() else {
        return Err(Error::InconsistentAnsatz(format!("ansatz kernel has dimension {}", ker.len())));
    };
    let poly_of = |coeffs: &[RatFunc]| -> RatFunc {
        coeffs.iter().enumerate().fold(RatFunc::zero(), |acc, (k, c)| {
            &acc + &(c * &RatFunc::from_poly(Poly::var(Var::X1).pow(k as u32)))
        })
    };
    poly_of(&v[..=d]).checked_div(&poly_of(&v[d + 1..]))
}
