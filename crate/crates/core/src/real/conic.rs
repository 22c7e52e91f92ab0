use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{Monomial, Var};
use crate::scalar::Coeff;
use crate::{Poly, RatFunc, QI};

const X: Var = Var::X1;
const Z: Var = Var::Z;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveKind {
    Line,
    /// Real circle `a(x² + z²) + bx + cz + d` with positive radius.
    Circle,
    /// Real conic that is not a circle, including line pairs defined over a
    /// real quadratic field.
    OtherConic,
    /// Degree two without a real curve: empty real locus or a single point.
    NonReal,
    /// Degree three or more; reality and rationality are not decided.
    Higher,
}

impl CurveKind {
    pub fn is_real_curve(self) -> Option<bool> {
        match self {
            CurveKind::Line | CurveKind::Circle | CurveKind::OtherConic => Some(true),
            CurveKind::NonReal => Some(false),
            CurveKind::Higher => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealCurveFactor {
    pub factor: Poly,
    pub multiplicity: u32,
    pub kind: CurveKind,
    /// Proper real parametrization `(s₁(x), s₂(x))` of the curve, when found.
    pub parametrization: Option<(RatFunc, RatFunc)>,
}

/// Coefficients `(a, b, c, d, e, f)` of `a x² + b xz + c z² + d x + e z + f`.
fn conic_coeffs(p: &Poly) -> [BigRational; 6] {
    let c = |ex: u16, ez: u16| p.coeff(&Monomial::var(X, ex).mul(&Monomial::var(Z, ez))).re;
    [c(2, 0), c(1, 1), c(0, 2), c(1, 0), c(0, 1), c(0, 0)]
}

fn rq(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn classify(p: &Poly, height_bound: u64) -> RealCurveFactor {
    let mut out = RealCurveFactor { factor: p.clone(), multiplicity: 1, kind: CurveKind::Higher, parametrization: None };
    match p.total_degree() {
        1 => {
            out.kind = CurveKind::Line;
            out.parametrization = Some(line_parametrization(p));
        }
        2 => {
            let [a, b, c, d, e, f] = conic_coeffs(p);
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            let (b2, d2, e2) = (&b * &half, &d * &half, &e * &half);
            let delta = &a * &c - &b2 * &b2;
            let det = &a * (&c * &f - &e2 * &e2) - &b2 * (&b2 * &f - &e2 * &d2) + &d2 * (&b2 * &e2 - &c * &d2);
            let real = if !det.is_zero() {
                !delta.is_positive() || (&a * &det).is_negative()
            } else if delta.is_positive() {
                false
            } else if delta.is_negative() {
                true
            } else if !a.is_zero() {
                (&d * &d - rq(4) * &a * &f).is_positive()
            } else {
                (&e * &e - rq(4) * &c * &f).is_positive()
            };
            out.kind = match (real, det.is_zero()) {
                (false, _) => CurveKind::NonReal,
                (true, false) if b.is_zero() && a == c => CurveKind::Circle,
                _ => CurveKind::OtherConic,
            };
            if real && !det.is_zero() {
                out.parametrization = rational_point(p, height_bound).map(|pt| conic_parametrization(p, &pt));
            }
        }
        _ => {}
    }
    out
}

/// `(x, −(a x + c)/b)` for `a x + b z + c` with `b ≠ 0`, otherwise `(−c/a, x)`.
pub fn line_parametrization(p: &Poly) -> (RatFunc, RatFunc) {
    let a = p.coeff(&Monomial::var(X, 1));
    let b = p.coeff(&Monomial::var(Z, 1));
    let c = p.constant_term();
    let x = RatFunc::var(X);
    if !b.is_zero() {
        let rhs = (&x.scale(&a) + &RatFunc::constant(c)).scale(&-(QI::one() / b));
        (x, rhs)
    } else {
        (RatFunc::constant(-(c / a)), x)
    }
}

/// First point of smallest height on the conic, scanning `x₀ = p/q` with
/// `max(|p|, q) ≤ bound` in increasing height, then value.
pub fn rational_point(p: &Poly, bound: u64) -> Option<(BigRational, BigRational)> {
    let [a, b, c, d, e, f] = conic_coeffs(p);
    for h in 1..=bound as i64 {
        let mut xs: Vec<BigRational> = Vec::new();
        for q in 1..=h {
            for num in -h..=h {
                if (num.abs() == h || q == h) && num_integer::gcd(num, q) == 1 {
                    xs.push(BigRational::new(num.into(), q.into()));
                }
            }
        }
        xs.sort();
        xs.dedup();
        for x0 in xs {
            let lin = &b * &x0 + &e;
            let cst = &a * &x0 * &x0 + &d * &x0 + &f;
            if c.is_zero() {
                if !lin.is_zero() {
                    return Some((x0, -cst / lin));
                }
                continue;
            }
            let disc = &lin * &lin - rq(4) * &c * &cst;
            if let Some(r) = rational_sqrt(&disc) {
                return Some((x0, (-lin - r) / (rq(2) * &c)));
            }
        }
    }
    None
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

/// Lines of slope `t` through a smooth rational point meet the conic once more.
pub fn conic_parametrization(p: &Poly, pt: &(BigRational, BigRational)) -> (RatFunc, RatFunc) {
    let [a, b, c, ..] = conic_coeffs(p);
    let (x0, z0) = (QI::from_rational(pt.0.clone()), QI::from_rational(pt.1.clone()));
    let at = |q: &Poly| q.eval(X, &x0).eval(Z, &z0).constant_term();
    let (fx, fz) = (at(&p.derivative(X)), at(&p.derivative(Z)));
    let t = Poly::var(X);
    let lin = &Poly::constant(fx) + &t.scale(&fz);
    let quad = Poly::from_coeffs_in(X, &[a, b, c].map(|k| Poly::constant(QI::from_rational(k))));
    let m = -RatFunc::new(lin, quad).expect("nonzero quadratic part");
    let s1 = &RatFunc::constant(x0) + &m;
    let s2 = &RatFunc::constant(z0) + &(&RatFunc::var(X) * &m);
    (s1, s2)
}
