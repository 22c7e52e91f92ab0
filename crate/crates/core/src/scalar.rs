//! Exact coefficient fields.
//!
//! The polynomial kernel is generic over [`Coeff`], an exact field. Two
//! instances ship with the crate: [`BigRational`] (the rationals) and
//! [`GaussRat`] (the Gaussian rationals `ℚ(i)`), which is the field every
//! higher-level module works over.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact field usable as polynomial coefficients.
pub trait Coeff:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(n: i64) -> Self;

    /// Builds `re + i·im`; `None` when the field has no imaginary unit and `im ≠ 0`.
    fn from_parts(re: BigRational, im: BigRational) -> Option<Self>;

    fn real_part(&self) -> BigRational;
    fn imag_part(&self) -> BigRational;

    fn conj(&self) -> Self;

    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    fn is_real(&self) -> bool {
        self.imag_part().is_zero()
    }

    fn imag_unit() -> Option<Self> {
        Self::from_parts(BigRational::zero(), BigRational::one())
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn from_rational(q: BigRational) -> Self {
        Self::from_parts(q, BigRational::zero()).expect("every field contains ℚ")
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.real_part().to_f64().unwrap_or(f64::NAN),
            self.imag_part().to_f64().unwrap_or(f64::NAN),
        )
    }
}

/// Product with a gcd-free path for integers.
fn qmul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() || b.is_zero() {
        BigRational::zero()
    } else if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

fn qadd(a: &BigRational, b: &BigRational) -> BigRational {
    if b.is_zero() {
        a.clone()
    } else if a.is_zero() {
        b.clone()
    } else if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() + b.numer())
    } else {
        a + b
    }
}

fn qsub(a: &BigRational, b: &BigRational) -> BigRational {
    if b.is_zero() {
        a.clone()
    } else if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() - b.numer())
    } else {
        a - b
    }
}

impl Coeff for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_parts(re: BigRational, im: BigRational) -> Option<Self> {
        im.is_zero().then_some(re)
    }

    fn real_part(&self) -> BigRational {
        self.clone()
    }

    fn imag_part(&self) -> BigRational {
        BigRational::zero()
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn add_ref(&self, other: &Self) -> Self {
        qadd(self, other)
    }

    fn sub_ref(&self, other: &Self) -> Self {
        qsub(self, other)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        qmul(self, other)
    }

    fn inv(&self) -> Self {
        self.recip()
    }

    fn is_real(&self) -> bool {
        true
    }
}

/// An element `re + i·im` of `ℚ(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn int(n: i64) -> Self {
        GaussRat {
            re: BigRational::from_integer(n.into()),
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*I", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "({} - {}*I)", self.re, -&self.im)
                } else {
                    write!(f, "({} + {}*I)", self.re, self.im)
                }
            }
        }
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat::default()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::int(1)
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;

    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Add for GaussRat {
    type Output = GaussRat;

    fn add(self, o: GaussRat) -> GaussRat {
        self.add_ref(&o)
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;

    fn sub(self, o: GaussRat) -> GaussRat {
        self.sub_ref(&o)
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;

    fn mul(self, o: GaussRat) -> GaussRat {
        self.mul_ref(&o)
    }
}

impl Div for GaussRat {
    type Output = GaussRat;

    fn div(self, o: GaussRat) -> GaussRat {
        self.mul_ref(&o.inv())
    }
}

impl Coeff for GaussRat {
    fn from_i64(n: i64) -> Self {
        GaussRat::int(n)
    }

    fn from_parts(re: BigRational, im: BigRational) -> Option<Self> {
        Some(GaussRat { re, im })
    }

    fn real_part(&self) -> BigRational {
        self.re.clone()
    }

    fn imag_part(&self) -> BigRational {
        self.im.clone()
    }

    fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    fn add_ref(&self, o: &Self) -> Self {
        GaussRat {
            re: qadd(&self.re, &o.re),
            im: qadd(&self.im, &o.im),
        }
    }

    fn sub_ref(&self, o: &Self) -> Self {
        GaussRat {
            re: qsub(&self.re, &o.re),
            im: qsub(&self.im, &o.im),
        }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        match (self.im.is_zero(), o.im.is_zero()) {
            (true, true) => GaussRat {
                re: qmul(&self.re, &o.re),
                im: BigRational::zero(),
            },
            (true, false) => GaussRat {
                re: qmul(&self.re, &o.re),
                im: qmul(&self.re, &o.im),
            },
            (false, true) => GaussRat {
                re: qmul(&self.re, &o.re),
                im: qmul(&self.im, &o.re),
            },
            (false, false) => GaussRat {
                re: qsub(&qmul(&self.re, &o.re), &qmul(&self.im, &o.im)),
                im: qadd(&qmul(&self.re, &o.im), &qmul(&self.im, &o.re)),
            },
        }
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        if self.im.is_zero() {
            return GaussRat {
                re: self.re.recip(),
                im: BigRational::zero(),
            };
        }
        let n = self.norm_sqr();
        GaussRat {
            re: &self.re / &n,
            im: -&self.im / &n,
        }
    }

    fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

/// Parses a decimal integer literal into a field element.
pub fn parse_integer<C: Coeff>(digits: &str) -> Option<C> {
    let n: BigInt = digits.parse().ok()?;
    Some(C::from_rational(BigRational::from_integer(n)))
}
