//! Elements of the quadratic field ℚ(√2).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

/// `rational + root2·√2` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QuadExt {
    rational: Rational,
    root2: Rational,
}

impl QuadExt {
    pub fn new(rational: Rational, root2: Rational) -> Self {
        QuadExt { rational, root2 }
    }

    pub fn from_rational(r: Rational) -> Self {
        QuadExt { rational: r, root2: Rational::zero() }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as an element of ℚ ⊂ ℚ(√2). Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn sqrt2() -> Self {
        QuadExt { rational: Rational::zero(), root2: Rational::one() }
    }

    /// 1/√2 = √2/2.
    pub fn inv_sqrt2() -> Self {
        QuadExt { rational: Rational::zero(), root2: Rational::new(1.into(), 2.into()) }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn root2_part(&self) -> &Rational {
        &self.root2
    }

    pub fn is_rational(&self) -> bool {
        self.root2.is_zero()
    }

    /// Galois conjugate `a − b√2`.
    pub fn conjugate(&self) -> Self {
        QuadExt { rational: self.rational.clone(), root2: -self.root2.clone() }
    }

    /// Field norm `a² − 2b²`.
    pub fn norm(&self) -> Rational {
        &self.rational * &self.rational - Rational::from_integer(2.into()) * &self.root2 * &self.root2
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conjugate();
        Some(QuadExt { rational: c.rational / &n, root2: c.root2 / n })
    }

    /// Nearest `f64`, for ordering and display only.
    pub fn to_f64(&self) -> f64 {
        let r = self.rational.to_f64().unwrap_or(f64::NAN);
        let q = self.root2.to_f64().unwrap_or(f64::NAN);
        r + q * std::f64::consts::SQRT_2
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = QuadExt::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::default()
    }
    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.root2.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        Self::from_integer(1)
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        QuadExt { rational: &self.rational + &rhs.rational, root2: &self.root2 + &rhs.root2 }
    }
}

impl<'a> Sub<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        QuadExt { rational: &self.rational - &rhs.rational, root2: &self.root2 - &rhs.root2 }
    }
}

impl<'a> Mul<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        let two = Rational::from_integer(2.into());
        QuadExt {
            rational: &self.rational * &rhs.rational + two * &self.root2 * &rhs.root2,
            root2: &self.rational * &rhs.root2 + &self.root2 * &rhs.rational,
        }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { rational: -&self.rational, root2: -&self.root2 }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

/// Panics when dividing by zero, like the rational types it wraps.
#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: &QuadExt) -> QuadExt {
        self * &rhs.inverse().expect("division by zero in Q(sqrt2)")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: &QuadExt) -> QuadExt {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&QuadExt> for QuadExt {
    fn add_assign(&mut self, rhs: &QuadExt) {
        self.rational += &rhs.rational;
        self.root2 += &rhs.root2;
    }
}

impl SubAssign<&QuadExt> for QuadExt {
    fn sub_assign(&mut self, rhs: &QuadExt) {
        self.rational -= &rhs.rational;
        self.root2 -= &rhs.root2;
    }
}

impl MulAssign<&QuadExt> for QuadExt {
    fn mul_assign(&mut self, rhs: &QuadExt) {
        *self = &*self * rhs;
    }
}

pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders `a`, `b*sqrt2`, or `a + b*sqrt2`; re-parses with the scalar grammar.
impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root2 = |r: &Rational| {
            if r.is_one() {
                "sqrt2".to_string()
            } else if (-r).is_one() {
                "-sqrt2".to_string()
            } else {
                format!("{}*sqrt2", fmt_rational(r))
            }
        };
        match (self.rational.is_zero(), self.root2.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.rational)),
            (true, false) => write!(f, "{}", root2(&self.root2)),
            (false, false) => {
                let sign = if self.root2.is_negative() { "-" } else { "+" };
                write!(f, "{} {} {}", fmt_rational(&self.rational), sign, root2(&self.root2.abs()))
            }
        }
    }
}
