use super::gcd::{clear_denominators, prem, udeg, UPoly};
use super::{MPoly, Var};
use crate::scalar::Coeff;

/// Resultant with respect to `v` through the subresultant remainder sequence.
///
/// A polynomial of degree 0 in `v` is treated as a constant of degree 0, so
/// `res(c, b) = c^deg(b)`.
pub fn resultant<C: Coeff>(a: &MPoly<C>, b: &MPoly<C>, v: Var) -> MPoly<C> {
    if a.is_zero() || b.is_zero() {
        return MPoly::zero();
    }
    let (da, db) = (a.degree(v), b.degree(v));
    if da == 0 {
        return a.pow(db as u32);
    }
    if db == 0 {
        return b.pow(da as u32);
    }
    // res(λa, μb) = λ^deg b · μ^deg a · res(a, b)
    let (ca, la) = clear_denominators(a);
    let (cb, lb) = clear_denominators(b);
    let scale = num_traits::pow(la, db as usize) * num_traits::pow(lb, da as usize);
    let r = resultant_rs(&ca, &cb, v);
    if scale.is_one() {
        r
    } else {
        r.scale(&scale.inv())
    }
}

fn resultant_rs<C: Coeff>(a: &MPoly<C>, b: &MPoly<C>, v: Var) -> MPoly<C> {
    let mut pa: UPoly<C> = a.coeffs_in(v);
    let mut pb: UPoly<C> = b.coeffs_in(v);
    let (da, db) = (udeg(&pa), udeg(&pb));
    let mut negate = false;
    if da < db {
        std::mem::swap(&mut pa, &mut pb);
        negate = da % 2 == 1 && db % 2 == 1;
    }
    let mut g = MPoly::one();
    let mut h = MPoly::one();
    loop {
        let (d_a, d_b) = (udeg(&pa), udeg(&pb));
        let delta = (d_a - d_b) as u32;
        if d_a % 2 == 1 && d_b % 2 == 1 {
            negate = !negate;
        }
        let r = prem(&pa, &pb);
        if r.is_empty() {
            return MPoly::zero();
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
        if udeg(&pb) == 0 {
            let k = udeg(&pa) as u32;
            let lb = &pb[0];
            let res = lb.pow(k).div_exact(&h.pow(k - 1)).expect("subresultant division is exact");
            return if negate { -res } else { res };
        }
    }
}

/// Resultant as the determinant of the Sylvester matrix, by fraction-free
/// (Bareiss) elimination. Slower than [`resultant`]; kept as an independent
/// route for cross-checking.
pub fn sylvester_resultant<C: Coeff>(a: &MPoly<C>, b: &MPoly<C>, v: Var) -> MPoly<C> {
    if a.is_zero() || b.is_zero() {
        return MPoly::zero();
    }
    let ca = a.coeffs_in(v);
    let cb = b.coeffs_in(v);
    let (m, n) = (ca.len() - 1, cb.len() - 1);
    let size = m + n;
    if size == 0 {
        return MPoly::one();
    }
    let mut mat = vec![vec![MPoly::<C>::zero(); size]; size];
    for i in 0..n {
        for (k, c) in ca.iter().rev().enumerate() {
            mat[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in cb.iter().rev().enumerate() {
            mat[n + i][i + k] = c.clone();
        }
    }
    bareiss_det(mat)
}

pub(crate) fn bareiss_det<C: Coeff>(mut mat: Vec<Vec<MPoly<C>>>) -> MPoly<C> {
    let n = mat.len();
    let mut negate = false;
    let mut prev = MPoly::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !mat[i][k].is_zero()) else {
            return MPoly::zero();
        };
        if p != k {
            mat.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&mat[i][j] * &mat[k][k]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            mat[i][k] = MPoly::zero();
        }
        prev = mat[k][k].clone();
    }
    let d = mat[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Poly;

    #[test]
    fn resultant_eliminates_parameter() {
        let (x, t, y) = (Poly::var(Var::X1), Poly::var(Var::T), Poly::var(Var::Y));
        let a = &x - &t;
        let b = &(&x * &x) - &y;
        assert_eq!(resultant(&a, &b, Var::X1), &(&t * &t) - &y);
        assert_eq!(sylvester_resultant(&a, &b, Var::X1), &(&t * &t) - &y);
    }

    #[test]
    fn resultant_vanishes_on_common_factor() {
        let (x, u) = (Poly::var(Var::X1), Poly::var(Var::U));
        let c = &x - &u;
        let a = &c * &(&x + &Poly::int(2));
        let b = &c * &(&(&x * &x) + &u);
        assert!(resultant(&a, &b, Var::X1).is_zero());
    }

    #[test]
    fn routes_agree_on_odd_degrees() {
        let (x, u) = (Poly::var(Var::X1), Poly::var(Var::U));
        let a = &x.pow(3) + &(&u * &x) + &Poly::one();
        let b = &x.pow(5) - &(&u.pow(2) * &x.pow(2)) + &u;
        assert_eq!(resultant(&a, &b, Var::X1), sylvester_resultant(&a, &b, Var::X1));
        assert_eq!(resultant(&b, &a, Var::X1), sylvester_resultant(&b, &a, Var::X1));
    }
}
