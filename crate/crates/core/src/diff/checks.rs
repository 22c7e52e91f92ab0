use super::{corresponding_parametrization, u_derivatives, IOEquation, Parametrization, Realization};
use crate::poly::{Var, VarSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderVerdict {
    /// The order in `u` exceeds the order in `y`.
    NotRealizable,
    Inconclusive,
}

/// Order obstruction: no realization exists when `ord_u F > ord_y F`.
pub fn check_order_obstruction(f: &IOEquation) -> OrderVerdict {
    match f.order_u() {
        Some(k) if k > f.order_y() => OrderVerdict::NotRealizable,
        _ => OrderVerdict::Inconclusive,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeVerdict {
    Pass,
    /// Every violated clause, in a readable form.
    Fail(Vec<String>),
}

impl ShapeVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, ShapeVerdict::Pass)
    }
}

/// Shape conditions a parametrization must meet to come from a realization.
///
/// For `order_u = 0`: `P₀…Pₙ₋₁` are `u`-free and `Pₙ` involves no derivative
/// of `u`. For `order_u ≤ 1`: `P₀…Pₙ₋₂` are `u`-free, `Pₙ₋₁` involves no
/// derivative of `u`, `Pₙ` none beyond `u'`, and `∂_{u'}Pₙ = ∂_u Pₙ₋₁`.
/// Higher orders in `u` have no criterion and always fail.
pub fn check_param_shape(p: &Parametrization, order_u: usize) -> ShapeVerdict {
    let n = p.n();
    let mut bad = Vec::new();
    let u_all = VarSet::inputs();
    let beyond_first = VarSet::of(&[Var::u(2), Var::u(3)]);
    let free_below = |k: usize, bad: &mut Vec<String>| {
        for i in 0..k {
            if !p.component(i).vars().intersect(u_all).is_empty() {
                bad.push(format!("P{i} depends on u"));
            }
        }
    };
    match order_u {
        0 => {
            free_below(n, &mut bad);
            if !p.component(n).vars().intersect(u_derivatives()).is_empty() {
                bad.push(format!("P{n} depends on derivatives of u"));
            }
        }
        1 => {
            free_below(n - 1, &mut bad);
            if !p.component(n - 1).vars().intersect(u_derivatives()).is_empty() {
                bad.push(format!("P{} depends on derivatives of u", n - 1));
            }
            if !p.component(n).vars().intersect(beyond_first).is_empty() {
                bad.push(format!("P{n} depends on u'' or higher"));
            }
        }
        k => bad.push(format!("no shape criterion for order {k} in u")),
    }
    if order_u <= 1 {
        let lhs = p.component(n).derivative(Var::u(1));
        let rhs = p.component(n - 1).derivative(Var::U);
        if lhs != rhs {
            bad.push(format!("d/du' P{n} = {lhs} differs from d/du P{} = {rhs}", n - 1));
        }
    }
    if bad.is_empty() {
        ShapeVerdict::Pass
    } else {
        ShapeVerdict::Fail(bad)
    }
}

/// `F(q, ℒ_p q, …, ℒ_pⁿ q) ≡ 0` with `n` the order of `F`.
pub fn verify_realization(sigma: &Realization, f: &IOEquation) -> bool {
    if sigma.dim() != f.order_y() {
        return false;
    }
    if f.order_y() + sigma.q().vars().max_u_order().unwrap_or(0) > Var::MAX_DERIVATIVE {
        return false;
    }
    let p = corresponding_parametrization(sigma, f.order_y());
    f.vanishes_on(p.components())
}
