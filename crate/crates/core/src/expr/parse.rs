use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Var;
use crate::scalar::Coeff;
use crate::{Poly, RatFunc, QI};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Prime,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(pos, ch)) = it.peek() {
        if ch.is_whitespace() {
            it.next();
            continue;
        }
        if ch.is_ascii_digit() {
            let mut end = pos;
            while let Some(&(i, c)) = it.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                end = i + c.len_utf8();
                it.next();
            }
            let n: BigInt = src[pos..end].parse().expect("digits");
            out.push((Tok::Int(n), pos));
            continue;
        }
        if ch.is_ascii_alphabetic() || ch == '_' {
            let mut end = pos;
            while let Some(&(i, c)) = it.peek() {
                if !(c.is_ascii_alphanumeric() || c == '_') {
                    break;
                }
                end = i + c.len_utf8();
                it.next();
            }
            out.push((Tok::Ident(src[pos..end].to_string()), pos));
            continue;
        }
        let tok = match ch {
            '\'' | '′' => Tok::Prime,
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("unexpected character `{ch}`"),
                })
            }
        };
        out.push((tok, pos));
        it.next();
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

/// Intermediate value: stays polynomial as long as possible so that
/// parsing a large polynomial never touches gcd computations.
#[derive(Clone)]
enum Val {
    P(Poly),
    R(RatFunc),
}

impl Val {
    fn into_rf(self) -> RatFunc {
        match self {
            Val::P(p) => RatFunc::from_poly(p),
            Val::R(r) => r,
        }
    }

    fn simplify(r: RatFunc) -> Val {
        if r.is_poly() {
            Val::P(r.into_parts().0)
        } else {
            Val::R(r)
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Val> {
        let mut acc = match self.peek() {
            Tok::Minus => {
                self.bump();
                neg(self.term()?)
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = add(acc, self.term()?, false);
                }
                Tok::Minus => {
                    self.bump();
                    acc = add(acc, self.term()?, true);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Val> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = mul(acc, self.unary()?);
                }
                Tok::Slash => {
                    self.bump();
                    let pos = self.pos();
                    let d = self.unary()?;
                    acc = div(acc, d).map_err(|_| Error::Syntax {
                        pos,
                        msg: "division by zero".into(),
                    })?;
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                    return self.err("implicit multiplication is not allowed; use `*`")
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Val> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Val> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let pos = self.pos();
        let Tok::Int(e) = self.bump() else {
            return Err(Error::Syntax {
                pos,
                msg: "exponent must be an integer literal".into(),
            });
        };
        let e: u32 = u32::try_from(&e).ok().filter(|&e| e <= 10_000).ok_or(Error::Syntax {
            pos,
            msg: "exponent too large".into(),
        })?;
        let v = match base {
            Val::P(p) => Val::P(p.pow(e)),
            Val::R(r) => Val::R(r.pow(e as i32).expect("nonnegative power")),
        };
        if negative {
            div(Val::P(Poly::one()), v).map_err(|_| Error::Syntax {
                pos,
                msg: "negative power of zero".into(),
            })
        } else {
            Ok(v)
        }
    }

    fn atom(&mut self) -> Result<Val> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(Val::P(Poly::constant(QI::from_rational(BigRational::from_integer(n))))),
            Tok::LParen => {
                let v = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.err("expected `)`");
                }
                self.bump();
                Ok(v)
            }
            Tok::Ident(name) => {
                let mut primes = 0;
                while *self.peek() == Tok::Prime {
                    self.bump();
                    primes += 1;
                }
                if name == "I" {
                    if primes > 0 {
                        return Err(Error::Syntax { pos, msg: "`I` cannot carry primes".into() });
                    }
                    return Ok(Val::P(Poly::constant(QI::i())));
                }
                resolve(&name, primes, pos).map(|v| Val::P(Poly::var(v)))
            }
            Tok::End => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
            t => Err(Error::Syntax { pos, msg: format!("unexpected token {t:?}") }),
        }
    }
}

fn resolve(name: &str, primes: usize, pos: usize) -> Result<Var> {
    let derivative = |base: fn(usize) -> Var, k: usize| -> Result<Var> {
        if k > Var::MAX_DERIVATIVE {
            return Err(Error::Syntax {
                pos,
                msg: format!("derivative order {k} exceeds {}", Var::MAX_DERIVATIVE),
            });
        }
        Ok(base(k))
    };
    match name {
        "u" => return derivative(Var::u, primes),
        "y" => return derivative(Var::y, primes),
        _ => {}
    }
    if primes > 0 {
        return Err(Error::Syntax {
            pos,
            msg: format!("only u and y may carry primes, not `{name}`"),
        });
    }
    if let Some(k) = name.strip_prefix('y').and_then(|d| d.parse::<usize>().ok()) {
        return derivative(Var::y, k);
    }
    let v = match name {
        "x" | "x1" => Var::X1,
        "x2" => Var::X2,
        "x3" => Var::X3,
        "z" => Var::Z,
        "w" => Var::W,
        "t" => Var::T,
        "a0" => Var::A0,
        "a1" => Var::A1,
        _ => {
            return Err(Error::UnknownIdentifier {
                name: name.to_string(),
                pos,
            })
        }
    };
    Ok(v)
}

fn neg(v: Val) -> Val {
    match v {
        Val::P(p) => Val::P(-p),
        Val::R(r) => Val::R(-r),
    }
}

fn add(a: Val, b: Val, sub: bool) -> Val {
    match (a, b) {
        (Val::P(a), Val::P(b)) => Val::P(if sub { a - b } else { a + b }),
        (a, b) => {
            let (a, b) = (a.into_rf(), b.into_rf());
            Val::simplify(if sub { a - b } else { a + b })
        }
    }
}

fn mul(a: Val, b: Val) -> Val {
    match (a, b) {
        (Val::P(a), Val::P(b)) => Val::P(a * b),
        (a, b) => Val::simplify(a.into_rf() * b.into_rf()),
    }
}

fn div(a: Val, b: Val) -> Result<Val> {
    if let Val::P(d) = &b {
        if let Some(c) = d.constant_value() {
            if c.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let inv = c.inv();
            return Ok(match a {
                Val::P(p) => Val::P(p.scale(&inv)),
                Val::R(r) => Val::R(r.scale(&inv)),
            });
        }
    }
    let r = a.into_rf().checked_div(&b.into_rf())?;
    Ok(Val::simplify(r))
}

/// Parses an expression into a reduced rational function.
pub fn parse_expr(src: &str) -> Result<RatFunc> {
    let mut p = Parser { toks: lex(src)?, i: 0 };
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(v.into_rf())
}

/// Parses an expression that must be a polynomial.
pub fn parse_poly(src: &str) -> Result<Poly> {
    let r = parse_expr(src)?;
    if !r.is_poly() {
        return Err(Error::Invalid(format!("`{}` is not a polynomial", src.trim())));
    }
    Ok(r.into_parts().0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> Poly {
        Poly::var(x)
    }

    #[test]
    fn parses_first_order_equation() {
        let f = parse_poly("(y' - u*y)^3 + u*y^2").unwrap();
        let lin = v(Var::y(1)) - v(Var::U) * v(Var::Y);
        assert_eq!(f, lin.pow(3) + v(Var::U) * v(Var::Y).pow(2));
    }

    #[test]
    fn zero() {
        assert!(parse_expr("0").unwrap().is_zero());
        assert!(parse_poly("x - x").unwrap().is_zero());
    }

    #[test]
    fn rational_function_is_reduced() {
        let r = parse_expr("(1-x)^4/(u^2+(1-x)^6)").unwrap();
        let one_minus_x = Poly::one() - v(Var::X1);
        assert_eq!(r.num(), &one_minus_x.pow(4));
        assert_eq!(r.den(), &(v(Var::U).pow(2) + one_minus_x.pow(6)));
        assert_eq!(parse_expr("(x^2-1)/(x-1)").unwrap(), RatFunc::from_poly(v(Var::X1) + Poly::one()));
    }

    #[test]
    fn primes_and_aliases() {
        assert_eq!(parse_poly("u''").unwrap(), v(Var::u(2)));
        assert_eq!(parse_poly("y2").unwrap(), v(Var::y(2)));
        assert_eq!(parse_poly("y′").unwrap(), v(Var::y(1)));
        assert_eq!(parse_poly("x1").unwrap(), v(Var::X1));
        assert_eq!(parse_poly("I^2").unwrap(), Poly::int(-1));
    }

    #[test]
    fn negative_exponent() {
        assert_eq!(parse_expr("x^-2").unwrap(), RatFunc::new(Poly::one(), v(Var::X1).pow(2)).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_expr("x + q"),
            Err(Error::UnknownIdentifier { name: "q".into(), pos: 4 })
        );
        assert!(matches!(parse_expr("2x"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_expr("x'"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_expr("(x"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expr("x/0"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expr("x $ 1"), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn complex_coefficients() {
        let p = parse_poly("(1/2 - I)*x").unwrap();
        assert_eq!(p.leading_coeff(), QI::from_ratio(1, 2) - QI::i());
        assert!(p.coeff(&crate::poly::Monomial::one()).is_zero());
    }
}
