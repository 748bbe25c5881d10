//! Exact coefficients: ℚ(√2)-linear combinations of monomials in the formal
//! parameters. `lam`, `alp`, `mu`, `bet` are invertible (Laurent); `a`, `b`
//! are ordinary polynomial parameters.

pub mod quad;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, ParseError};
use crate::text::{power, render_sum, Term};

pub use quad::QuadExt;

pub type Rational = num_rational::BigRational;

/// Formal parameters, in the fixed order used for exponent vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    Lam,
    Alp,
    Mu,
    Bet,
    A,
    B,
}

impl Param {
    pub const ALL: [Param; 6] = [Param::Lam, Param::Alp, Param::Mu, Param::Bet, Param::A, Param::B];

    pub fn name(self) -> &'static str {
        match self {
            Param::Lam => "lam",
            Param::Alp => "alp",
            Param::Mu => "mu",
            Param::Bet => "bet",
            Param::A => "a",
            Param::B => "b",
        }
    }

    pub fn from_name(name: &str) -> Option<Param> {
        Param::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn is_laurent(self) -> bool {
        matches!(self, Param::Lam | Param::Alp | Param::Mu | Param::Bet)
    }

    fn slot(self) -> usize {
        self as usize
    }
}

/// Exponent vector over [`Param::ALL`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial([i32; 6]);

impl Monomial {
    pub fn exponent(&self, p: Param) -> i32 {
        self.0[p.slot()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    pub(crate) fn factors(&self) -> Vec<String> {
        Param::ALL
            .into_iter()
            .filter(|&p| self.exponent(p) != 0)
            .map(|p| power(p.name(), self.exponent(p) as i64))
            .collect()
    }
}

/// Values for a numeric specialization of the formal parameters.
#[derive(Clone, Debug, Default)]
pub struct ParamValues(BTreeMap<Param, QuadExt>);

impl ParamValues {
    pub fn new() -> Self {
        Self::default()
    }

    /// Laurent parameters must be nonzero.
    pub fn with(mut self, p: Param, value: QuadExt) -> Result<Self, Error> {
        if p.is_laurent() && value.is_zero() {
            return Err(Error::ZeroLaurentValue(p.name()));
        }
        self.0.insert(p, value);
        Ok(self)
    }

    pub fn get(&self, p: Param) -> Option<&QuadExt> {
        self.0.get(&p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar {
    terms: BTreeMap<Monomial, QuadExt>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Self::constant(QuadExt::one())
    }

    pub fn constant(c: QuadExt) -> Self {
        let mut s = Scalar::zero();
        s.add_term(Monomial::default(), c);
        s
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(QuadExt::from_integer(n))
    }

    pub fn rational(r: Rational) -> Self {
        Self::constant(QuadExt::from_rational(r))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::constant(QuadExt::ratio(num, den))
    }

    pub fn param(p: Param) -> Self {
        let mut m = Monomial::default();
        m.0[p.slot()] = 1;
        let mut s = Scalar::zero();
        s.add_term(m, QuadExt::one());
        s
    }

    /// `p^exp`; negative exponents only for Laurent parameters.
    pub fn param_pow(p: Param, exp: i32) -> Result<Self, Error> {
        if exp < 0 && !p.is_laurent() {
            return Err(Error::NotAUnit(format!("{}^{}", p.name(), exp)));
        }
        let mut m = Monomial::default();
        m.0[p.slot()] = exp;
        let mut s = Scalar::zero();
        s.add_term(m, QuadExt::one());
        Ok(s)
    }

    pub fn monomial(m: Monomial, c: QuadExt) -> Self {
        let mut s = Scalar::zero();
        s.add_term(m, c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QuadExt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if no formal parameter occurs.
    pub fn as_constant(&self) -> Option<QuadExt> {
        match self.terms.len() {
            0 => Some(QuadExt::zero()),
            1 => self.terms.get(&Monomial::default()).cloned(),
            _ => None,
        }
    }

    pub fn mentions(&self, p: Param) -> bool {
        self.terms.keys().any(|m| m.exponent(p) != 0)
    }

    fn add_term(&mut self, m: Monomial, c: QuadExt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &QuadExt) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(m, q)| (*m, q * c)).collect() }
    }

    /// Inverse of a unit: a single term with nonzero coefficient and no
    /// positive power of a polynomial-only parameter.
    pub fn invert_monomial(&self) -> Result<Scalar, Error> {
        let mut it = self.terms.iter();
        let (m, c) = match (it.next(), it.next()) {
            (Some(t), None) => t,
            _ => return Err(Error::NotAUnit(self.to_string())),
        };
        if Param::ALL.iter().any(|p| !p.is_laurent() && m.exponent(*p) != 0) {
            return Err(Error::NotAUnit(self.to_string()));
        }
        let inv = c.inverse().ok_or_else(|| Error::NotAUnit(self.to_string()))?;
        let mut e = m.0;
        for x in e.iter_mut() {
            *x = -*x;
        }
        Ok(Scalar::monomial(Monomial(e), inv))
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluation at numeric parameter values.
    pub fn evaluate(&self, values: &ParamValues) -> Result<QuadExt, Error> {
        let mut total = QuadExt::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for p in Param::ALL {
                let e = m.exponent(p);
                if e == 0 {
                    continue;
                }
                let x = values.get(p).ok_or(Error::UnassignedParameter(p.name()))?;
                let base = if e < 0 { x.inverse().ok_or(Error::ZeroLaurentValue(p.name()))? } else { x.clone() };
                v = &v * &base.pow(e.unsigned_abs());
            }
            total += &v;
        }
        Ok(total)
    }

    /// Replaces every occurrence of `p` by `value`.
    pub fn substitute(&self, p: Param, value: &Scalar) -> Result<Scalar, Error> {
        let inverse = if self.terms.keys().any(|m| m.exponent(p) < 0) { Some(value.invert_monomial()?) } else { None };
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(p);
            let mut rest = *m;
            rest.0[p.slot()] = 0;
            let factor = if e >= 0 {
                value.pow(e as u32)
            } else {
                inverse.as_ref().expect("computed above").pow(e.unsigned_abs())
            };
            out += &(&Scalar::monomial(rest, c.clone()) * &factor);
        }
        Ok(out)
    }

    /// Terms expanded over ℚ, with `sqrt2` as a trailing pseudo-factor.
    pub(crate) fn expanded_terms(&self, trailing: &[String]) -> Vec<Term> {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let mut factors = m.factors();
            if !c.rational_part().is_zero() {
                let mut f = factors.clone();
                f.extend_from_slice(trailing);
                out.push(Term { coef: c.rational_part().clone(), factors: f });
            }
            if !c.root2_part().is_zero() {
                factors.push("sqrt2".to_string());
                factors.extend_from_slice(trailing);
                out.push(Term { coef: c.root2_part().clone(), factors });
            }
        }
        out
    }
}

impl From<QuadExt> for Scalar {
    fn from(c: QuadExt) -> Self {
        Scalar::constant(c)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::integer(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.times(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_sum(self.expanded_terms(&[])))
    }
}

impl FromStr for Scalar {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        crate::expr::parse_scalar(s)
    }
}

impl FromStr for QuadExt {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let v = crate::expr::parse_scalar(s)?;
        v.as_constant().ok_or_else(|| ParseError {
            position: 0,
            token: s.to_string(),
            message: "expected a number in Q(sqrt2) without formal parameters".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam() -> Scalar {
        Scalar::param(Param::Lam)
    }

    #[test]
    fn additive_identity_and_merge() {
        assert_eq!(&lam() + &Scalar::zero(), lam());
        let half_sq = &Scalar::ratio(1, 2) * &lam().pow(2);
        assert_eq!(&half_sq + &half_sq, lam().pow(2));
    }

    #[test]
    fn two_over_alpha_cancels() {
        let two_over = &Scalar::integer(2) * &Scalar::param_pow(Param::Alp, -1).unwrap();
        let minus = &Scalar::integer(-2) * &Scalar::param(Param::Alp).invert_monomial().unwrap();
        assert!((&two_over + &minus).is_zero());
    }

    #[test]
    fn unit_products() {
        let l3 = lam().pow(3);
        assert!((&l3 * &Scalar::param_pow(Param::Lam, -3).unwrap()).is_one());
        let h = Scalar::constant(QuadExt::inv_sqrt2());
        assert_eq!(&h * &h, Scalar::ratio(1, 2));
        let alp = Scalar::param(Param::Alp);
        let two_over = &Scalar::integer(2) * &alp.invert_monomial().unwrap();
        assert_eq!(&alp * &two_over, Scalar::integer(2));
    }

    #[test]
    fn invert_monomial_cases() {
        let two_alp = &Scalar::integer(2) * &Scalar::param(Param::Alp);
        let want = &Scalar::ratio(1, 2) * &Scalar::param_pow(Param::Alp, -1).unwrap();
        assert_eq!(two_alp.invert_monomial().unwrap(), want);

        let u = &lam().pow(2) * &Scalar::param_pow(Param::Alp, -1).unwrap();
        let want = &Scalar::param_pow(Param::Lam, -2).unwrap() * &Scalar::param(Param::Alp);
        assert_eq!(u.invert_monomial().unwrap(), want);

        assert!(matches!((&lam() + &Scalar::one()).invert_monomial(), Err(Error::NotAUnit(_))));
        assert!(matches!(Scalar::param(Param::A).invert_monomial(), Err(Error::NotAUnit(_))));
        assert!(matches!(Scalar::zero().invert_monomial(), Err(Error::NotAUnit(_))));
        assert!(Scalar::param_pow(Param::B, -1).is_err());
    }

    #[test]
    fn rendering() {
        let s = &(&Scalar::constant(QuadExt::sqrt2()) * &Scalar::ratio(3, 2))
            * &(&lam().pow(2) * &Scalar::param_pow(Param::Alp, -1).unwrap());
        assert_eq!(s.to_string(), "3/2*lam^2*alp^-1*sqrt2");
        assert_eq!(Scalar::param(Param::A).to_string(), "a");
        assert_eq!(Scalar::one().to_string(), "1");
        assert_eq!(Scalar::zero().to_string(), "0");
    }

    #[test]
    fn evaluation_and_substitution() {
        let vals = ParamValues::new()
            .with(Param::Lam, QuadExt::ratio(3, 2))
            .unwrap()
            .with(Param::Alp, QuadExt::from_integer(2))
            .unwrap();
        let s = &lam().pow(2) * &Scalar::param_pow(Param::Alp, -1).unwrap();
        assert_eq!(s.evaluate(&vals).unwrap(), QuadExt::ratio(9, 8));
        assert!(matches!(Scalar::param(Param::A).evaluate(&vals), Err(Error::UnassignedParameter("a"))));
        assert!(ParamValues::new().with(Param::Lam, QuadExt::zero()).is_err());

        let t = s.substitute(Param::Alp, &Scalar::integer(2)).unwrap();
        assert_eq!(t, &Scalar::ratio(1, 2) * &lam().pow(2));
    }
}
