//! Properness analysis of first-order realizations and their upgrade to
//! observable ones.

mod reparam;

pub use reparam::{by_ansatz, proper_reparametrize, reciprocal_form, vanishing_form, ProperReparametrization};

use crate::diff::{
    corresponding_parametrization, realization_from_parametrization, verify_realization, IOEquation, Parametrization,
    Realization,
};
use crate::error::{Error, Result};
use crate::matrix::{row_space_rref, solve_linear, RFMatrix};
use crate::poly::{gcd, primitive_part_in_set, Var, VarSet};
use crate::scalar::Coeff;
use crate::{Poly, RatFunc, QI};

/// `Gᵢ(w, x) = num(Pᵢ)(w)·den(Pᵢ)(x) − num(Pᵢ)(x)·den(Pᵢ)(w)` and their gcd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GPair {
    pub g1: Poly,
    pub g2: Poly,
    /// `gcd(G₁, G₂)` with its content in `(w, x)` removed, leading coefficient 1.
    pub g: Poly,
}

impl GPair {
    pub fn tracing_index(&self) -> usize {
        self.g.degree(Var::W) as usize
    }
}

fn g_component(p: &RatFunc) -> Poly {
    let to_w = [(Var::X1, Var::W)];
    let (n, d) = (p.num(), p.den());
    &(&n.rename(&to_w) * d) - &(n * &d.rename(&to_w))
}

pub fn gp_pair(p: &Parametrization) -> Result<GPair> {
    if p.n() != 1 {
        return Err(Error::Invalid("G-pair is defined for n = 1".into()));
    }
    for (i, c) in p.components().iter().enumerate() {
        if !c.contains(Var::X1) {
            return Err(Error::Degenerate(format!("component P{i} = {c} is constant in x")));
        }
    }
    let g1 = g_component(p.component(0));
    let g2 = g_component(p.component(1));
    let g = primitive_part_in_set(&gcd(&g1, &g2), VarSet::of(&[Var::W, Var::X1])).monic();
    if !g.vars().intersect(VarSet::of(&[Var::u(1), Var::u(2), Var::u(3)])).is_empty() {
        return Err(Error::Internal(format!("G depends on derivatives of u: {g}")));
    }
    Ok(GPair { g1, g2, g })
}

/// Cardinality of a generic fibre: `deg_w G`. One exactly when `P` is proper.
pub fn tracing_index(p: &Parametrization) -> Result<usize> {
    Ok(gp_pair(p)?.tracing_index())
}

/// Degree of a rational function in `x`: the larger of numerator and denominator degrees.
pub fn rational_degree(r: &RatFunc, v: Var) -> usize {
    r.num().degree(v).max(r.den().degree(v)).max(0) as usize
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCheck {
    pub deg_q: usize,
    pub deg_lie_q: usize,
    pub deg_y1_f: usize,
    pub deg_y_f: usize,
}

impl DegreeCheck {
    pub fn passed(&self) -> bool {
        self.deg_q == self.deg_y1_f && self.deg_lie_q == self.deg_y_f
    }
}

/// `deg_x(q) = deg_{y'}(F)` and `deg_x(ℒ_p q) = deg_y(F)`.
pub fn degree_condition_check(sigma: &Realization, f: &IOEquation) -> Result<DegreeCheck> {
    if sigma.dim() != 1 || f.order_y() != 1 {
        return Err(Error::Invalid("degree conditions apply to first-order systems".into()));
    }
    let p = corresponding_parametrization(sigma, 1);
    Ok(DegreeCheck {
        deg_q: rational_degree(p.component(0), Var::X1),
        deg_lie_q: rational_degree(p.component(1), Var::X1),
        deg_y1_f: f.degree(Var::y(1)).max(0) as usize,
        deg_y_f: f.degree(Var::Y).max(0) as usize,
    })
}

/// Proof that `r` lies in the set `R` built from `G`:
/// `r = (a·G(α, x) + b·G(β, x)) / (c·G(α, x) + d·G(β, x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub alpha: QI,
    pub beta: QI,
    pub a: RatFunc,
    pub b: RatFunc,
    pub c: RatFunc,
    pub d: RatFunc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReparamCandidate {
    /// `r(x)`, free of `u`.
    pub r: RatFunc,
    pub witness: Option<Witness>,
}

/// Coefficient vector of `p` in `x`, highest degree first, padded to `len`.
fn x_vector(p: &Poly, len: usize) -> Vec<RatFunc> {
    let cs = p.coeffs_in(Var::X1);
    (0..len)
        .map(|k| {
            let e = len - 1 - k;
            cs.get(e).cloned().map(RatFunc::from_poly).unwrap_or_else(RatFunc::zero)
        })
        .collect()
}

fn from_x_vector(v: &[RatFunc]) -> Result<Poly> {
    let len = v.len();
    let mut acc = Poly::zero();
    for (k, c) in v.iter().enumerate() {
        let Some(c) = c.constant_value() else {
            return Err(Error::SearchExhausted(format!("coefficient {c} still depends on u")));
        };
        acc = &acc + &Poly::term(crate::Monomial::var(Var::X1, (len - 1 - k) as u16), c);
    }
    Ok(acc)
}

fn lex_key(p: &Poly) -> Vec<(num_rational::BigRational, num_rational::BigRational)> {
    p.coeffs_in(Var::X1)
        .iter()
        .rev()
        .map(|c| {
            let c = c.constant_value().unwrap_or_else(|| QI::int(0));
            (c.real_part(), c.imag_part())
        })
        .collect()
}

/// A `u`-free `r` with `P = Q(r)` for a proper `Q`.
///
/// The `w`-coefficients of `G` span the two-dimensional `ℚ(i)(u)`-space
/// `⟨M, N⟩` of any generator `r = M/N`. A `u`-free generator exists, so the
/// reduced echelon basis of that span is `u`-free; its two rows give `r`.
/// Among `±row₁/row₂` the one with the lexicographically smaller numerator
/// coefficients (highest degree first) is returned.
pub fn find_common_reparametrization(p: &Parametrization) -> Result<ReparamCandidate> {
    let gp = gp_pair(p)?;
    let t = gp.tracing_index();
    if t < 2 {
        return Err(Error::Invalid("parametrization is already proper".into()));
    }
    let coeffs: Vec<Poly> = gp.g.coeffs_in(Var::W).into_iter().filter(|c| !c.is_zero()).collect();
    let len = gp.g.degree(Var::X1).max(0) as usize + 1;
    let rows: Vec<Vec<RatFunc>> = coeffs.iter().map(|c| x_vector(c, len)).collect();
    let rref = row_space_rref(&rows);
    if rref.len() != 2 {
        return Err(Error::Internal(format!(
            "coefficients of G span a space of dimension {}, expected 2",
            rref.len()
        )));
    }
    let top = from_x_vector(&rref[0])?;
    let bottom = from_x_vector(&rref[1])?;
    let plus = RatFunc::new(top.clone(), bottom.clone())?;
    let minus = -plus.clone();
    let r = if lex_key(minus.num()) < lex_key(plus.num()) { minus } else { plus };
    if rational_degree(&r, Var::X1) != t {
        return Err(Error::Internal(format!("deg r = {} differs from the tracing index {t}", rational_degree(&r, Var::X1))));
    }
    let witness = witness_for(&gp.g, &r);
    Ok(ReparamCandidate { r, witness })
}

/// Small integers `α, β` with `G(α, β) ≠ 0` and the coefficients expressing
/// `num r`, `den r` through `G(α, x)`, `G(β, x)`.
fn witness_for(g: &Poly, r: &RatFunc) -> Option<Witness> {
    let len = g.degree(Var::X1).max(r.num().degree(Var::X1)).max(r.den().degree(Var::X1)).max(0) as usize + 1;
    let points: Vec<i64> = vec![0, 1, -1, 2, -2, 3, -3, 4];
    for (i, &al) in points.iter().enumerate() {
        for &be in &points[i + 1..] {
            let (a, b) = (QI::int(al), QI::int(be));
            if g.eval(Var::W, &a).eval(Var::X1, &b).is_zero() {
                continue;
            }
            let ga = g.eval(Var::W, &a);
            let gb = g.eval(Var::W, &b);
            let basis = RFMatrix::from_rows(vec![x_vector(&ga, len), x_vector(&gb, len)]).ok()?;
            if basis.rank() != 2 {
                continue;
            }
            // least-squares-free solve: pick two independent coordinates
            let solve = |target: &Poly| -> Option<(RatFunc, RatFunc)> {
                let tv = x_vector(target, len);
                for j in 0..len {
                    for k in j + 1..len {
                        let m = RFMatrix::from_rows(vec![
                            vec![basis.get(0, j).clone(), basis.get(1, j).clone()],
                            vec![basis.get(0, k).clone(), basis.get(1, k).clone()],
                        ])
                        .ok()?;
                        if let Ok(sol) = solve_linear(&m, &[tv[j].clone(), tv[k].clone()]) {
                            let fits = (0..len).all(|l| &(&sol[0] * basis.get(0, l)) + &(&sol[1] * basis.get(1, l)) == tv[l]);
                            return fits.then(|| (sol[0].clone(), sol[1].clone()));
                        }
                    }
                }
                None
            };
            let (wa, wb) = solve(r.num())?;
            let (wc, wd) = solve(r.den())?;
            return Some(Witness { alpha: a, beta: b, a: wa, b: wb, c: wc, d: wd });
        }
    }
    None
}

/// Two rational functions of `x` differ by a Möbius transformation exactly
/// when their numerator and denominator span the same space.
pub fn mobius_equivalent(r1: &RatFunc, r2: &RatFunc) -> bool {
    let len = [r1.num(), r1.den(), r2.num(), r2.den()]
        .iter()
        .map(|p| p.degree(Var::X1).max(0) as usize)
        .max()
        .unwrap()
        + 1;
    let rank = |ps: &[&Poly]| {
        RFMatrix::from_rows(ps.iter().map(|p| x_vector(p, len)).collect()).expect("rectangular").rank()
    };
    let a = rank(&[r1.num(), r1.den()]);
    a == rank(&[r2.num(), r2.den()]) && a == rank(&[r1.num(), r1.den(), r2.num(), r2.den()])
}

/// Result of upgrading a realization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObservableOutcome {
    pub realization: Realization,
    pub tracing_index_before: usize,
    pub reparametrization: Option<ReparamCandidate>,
    pub proper: Option<ProperReparametrization>,
}

/// An observable realization of `F`, obtained from `σ` by a proper
/// reparametrization of its parametrization. Observable inputs come back
/// unchanged.
pub fn observable_realize(sigma: &Realization, f: &IOEquation) -> Result<Realization> {
    observable_realize_detailed(sigma, f).map(|o| o.realization)
}

pub fn observable_realize_detailed(sigma: &Realization, f: &IOEquation) -> Result<ObservableOutcome> {
    if sigma.dim() != 1 || f.order_y() != 1 {
        return Err(Error::Invalid("observable realizations are computed for first-order systems".into()));
    }
    if !verify_realization(sigma, f) {
        return Err(Error::Invalid("the given system does not realize the equation".into()));
    }
    let p = corresponding_parametrization(sigma, 1);
    let t = tracing_index(&p)?;
    if t == 1 {
        return Ok(ObservableOutcome {
            realization: sigma.clone(),
            tracing_index_before: 1,
            reparametrization: None,
            proper: None,
        });
    }
    let cand = find_common_reparametrization(&p)?;
    let proper = proper_reparametrize(&p, &cand.r)?;
    let out = realization_from_parametrization(&proper.q)?;
    if !verify_realization(&out, f) {
        return Err(Error::Internal("observable realization fails verification".into()));
    }
    if tracing_index(&corresponding_parametrization(&out, 1))? != 1 {
        return Err(Error::Internal("reparametrized system is still not observable".into()));
    }
    Ok(ObservableOutcome {
        realization: out,
        tracing_index_before: t,
        reparametrization: Some(cand),
        proper: Some(proper),
    })
}
