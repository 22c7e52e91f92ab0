use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{MPoly, Monomial, Var, NVARS};
use crate::ratfunc::RationalFunction;
use crate::scalar::Coeff;

fn monomial_str(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for i in 0..NVARS {
        let v = Var::from_index(i);
        match m.exp(v) {
            0 => {}
            1 => parts.push(v.name().to_string()),
            e => parts.push(format!("{}^{}", v.name(), e)),
        }
    }
    parts.join("*")
}

/// Sign and unsigned text of one coefficient, without the monomial.
/// The text is empty when the coefficient is ±1 and a monomial follows.
fn coeff_str(re: &BigRational, im: &BigRational, bare: bool) -> (bool, String) {
    let factor = |q: &BigRational, unit: &str| -> String {
        let q = q.abs();
        match (q.is_one(), unit.is_empty()) {
            (true, true) => "1".to_string(),
            (true, false) => unit.to_string(),
            (false, true) => q.to_string(),
            (false, false) => format!("{}*{}", q, unit),
        }
    };
    if im.is_zero() {
        if re.abs().is_one() && !bare {
            return (re.is_negative(), String::new());
        }
        return (re.is_negative(), factor(re, ""));
    }
    if re.is_zero() {
        return (im.is_negative(), factor(im, "I"));
    }
    let sign = if im.is_negative() { "-" } else { "+" };
    (false, format!("({} {} {})", re, sign, factor(im, "I")))
}

/// Canonical text of a polynomial: terms in descending graded
/// lexicographic order, `*` between every factor, `I` for the imaginary unit.
pub fn print_poly<C: Coeff>(p: &MPoly<C>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let (neg, cs) = coeff_str(&c.real_part(), &c.imag_part(), m.is_one());
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&cs);
        if !m.is_one() {
            if !cs.is_empty() {
                out.push('*');
            }
            out.push_str(&monomial_str(m));
        }
    }
    out
}

fn is_atomic(p: &MPoly<impl Coeff>) -> bool {
    match p.terms() {
        [(m, c)] => {
            let (neg, cs) = coeff_str(&c.real_part(), &c.imag_part(), m.is_one());
            !neg && (m.is_one() && !cs.contains('/') || cs.is_empty() && m.vars().len() == 1)
        }
        _ => false,
    }
}

/// `num/den` with parentheses only where the grammar needs them.
pub fn print_ratfunc<C: Coeff>(r: &RationalFunction<C>) -> String {
    let num = print_poly(r.num());
    if r.den().is_one() {
        return num;
    }
    let num = if r.num().num_terms() > 1 { format!("({num})") } else { num };
    let den = print_poly(r.den());
    if is_atomic(r.den()) {
        format!("{num}/{den}")
    } else {
        format!("{num}/({den})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Poly, RatFunc, QI};

    #[test]
    fn zero_prints_as_zero() {
        assert_eq!(print_poly(&Poly::zero()), "0");
    }

    #[test]
    fn canonical_term_order() {
        let x = Poly::var(Var::X1);
        assert_eq!(print_poly(&(&x * &x - Poly::one())), "x^2 - 1");
        assert_eq!(print_poly(&(Poly::one() - x)), "-x + 1");
    }

    #[test]
    fn coefficient_forms() {
        let x = Poly::var(Var::X1);
        let half = QI::from_ratio(3, 2);
        assert_eq!(print_poly(&x.scale(&half)), "3/2*x");
        assert_eq!(print_poly(&x.scale(&QI::i())), "I*x");
        assert_eq!(print_poly(&x.scale(&-QI::i())), "-I*x");
        let c = QI::from_ratio(1, 2) - QI::i();
        assert_eq!(print_poly(&x.scale(&c)), "(1/2 - I)*x");
        assert_eq!(print_poly(&Poly::constant(c)), "(1/2 - I)");
        let u1 = Poly::var(Var::u(1));
        assert_eq!(print_poly(&(&u1 * &u1)), "u'^2");
    }

    #[test]
    fn ratfunc_parentheses() {
        let (x, u) = (Poly::var(Var::X1), Poly::var(Var::U));
        let r = RatFunc::new(Poly::one() - x.clone(), u.clone()).unwrap();
        assert_eq!(print_ratfunc(&r), "(-x + 1)/u");
        let r = RatFunc::new(x.clone(), &u * &u).unwrap();
        assert_eq!(print_ratfunc(&r), "x/u^2");
        let r = RatFunc::new(x.clone(), &(&u * &u) + &x).unwrap();
        assert_eq!(print_ratfunc(&r), "x/(u^2 + x)");
        let r = RatFunc::new(Poly::one(), &u * &x).unwrap();
        assert_eq!(print_ratfunc(&r), "1/(u*x)");
    }
}
