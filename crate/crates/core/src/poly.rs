//! Sparse polynomials with [`Scalar`] coefficients, plus dense univariate
//! polynomials over ℚ(√2) used for submodule data.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::{QuadExt, Rational, Scalar};
use crate::text::{power, render_sum};

fn binomial(n: u32, k: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// Expansion of `(v + c)^n` as coefficients of `v^0..=v^n`.
fn shifted_powers(n: u32, c: &Scalar) -> Vec<Scalar> {
    let mut cpow = vec![Scalar::one()];
    for i in 1..=n as usize {
        let next = &cpow[i - 1] * c;
        cpow.push(next);
    }
    (0..=n).map(|k| cpow[(n - k) as usize].scale(&QuadExt::from_rational(binomial(n, k)))).collect()
}

/// Polynomial in two variables; the caller decides whether they read as
/// `(x, y)` or `(s, t)`. Keys are `(first exponent, second exponent)`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: Scalar) -> Self {
        let mut p = Poly2::zero();
        p.add_term((i, j), c);
        p
    }

    pub fn first() -> Self {
        Self::monomial(1, 0, Scalar::one())
    }

    pub fn second() -> Self {
        Self::monomial(0, 1, Scalar::one())
    }

    /// `h(second)` as a bivariate polynomial.
    pub fn from_second(h: &DensePoly) -> Poly2 {
        let mut out = Poly2::zero();
        for (j, c) in h.coeffs().iter().enumerate() {
            out.add_term((0, j as u32), Scalar::constant(c.clone()));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, i: u32, j: u32) -> Scalar {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub(crate) fn add_term(&mut self, key: (u32, u32), c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly2 {
        let mut out = Poly2::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    /// `f(v1 + d1, v2 + d2)`.
    pub fn shift(&self, d1: &Scalar, d2: &Scalar) -> Poly2 {
        let mut cache1: BTreeMap<u32, Vec<Scalar>> = BTreeMap::new();
        let mut cache2: BTreeMap<u32, Vec<Scalar>> = BTreeMap::new();
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            let e1 = cache1.entry(i).or_insert_with(|| shifted_powers(i, d1)).clone();
            let e2 = cache2.entry(j).or_insert_with(|| shifted_powers(j, d2));
            for (k, a) in e1.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let ca = c * a;
                for (l, b) in e2.iter().enumerate() {
                    if b.is_zero() {
                        continue;
                    }
                    out.add_term((k as u32, l as u32), &ca * b);
                }
            }
        }
        out
    }

    /// `f(v1, value)` as a univariate polynomial in the first variable.
    pub fn eval_second(&self, value: &Scalar) -> UPoly {
        let mut out = UPoly::zero();
        let mut pows: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            let p = pows.entry(j).or_insert_with(|| value.pow(j));
            out.add_term(i, c * p);
        }
        out
    }

    /// Coefficients of `f` grouped by first-variable exponent, as polynomials
    /// in the second variable.
    pub(crate) fn slices(&self) -> BTreeMap<u32, UPoly> {
        let mut out: BTreeMap<u32, UPoly> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            out.entry(i).or_default().add_term(j, c.clone());
        }
        out
    }

    pub(crate) fn from_slices(slices: &BTreeMap<u32, UPoly>) -> Poly2 {
        let mut out = Poly2::zero();
        for (&i, s) in slices {
            for (&j, c) in s.terms() {
                out.add_term((i, j), c.clone());
            }
        }
        out
    }

    /// Quotient and remainder on division by a monic polynomial in the
    /// second variable.
    pub fn div_rem_second(&self, divisor: &DensePoly) -> (Poly2, Poly2) {
        let mut quot = BTreeMap::new();
        let mut rem = BTreeMap::new();
        for (i, s) in self.slices() {
            let (q, r) = s.div_rem_monic(divisor);
            quot.insert(i, q);
            rem.insert(i, r);
        }
        (Poly2::from_slices(&quot), Poly2::from_slices(&rem))
    }

    /// Every coefficient mapped through `f`.
    pub fn map_coefficients<F: Fn(&Scalar) -> Scalar>(&self, f: F) -> Poly2 {
        let mut out = Poly2::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, f(c));
        }
        out
    }

    pub fn render(&self, names: (&str, &str)) -> String {
        // graded, then by first exponent, both descending
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        let mut terms = Vec::new();
        for k in keys {
            let mut vars = Vec::new();
            if k.0 > 0 {
                vars.push(power(names.0, k.0 as i64));
            }
            if k.1 > 0 {
                vars.push(power(names.1, k.1 as i64));
            }
            terms.extend(self.terms[&k].expanded_terms(&vars));
        }
        render_sum(terms)
    }
}

impl<'a> Add<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        self.scale(&Scalar::integer(-1))
    }
}

/// Sparse univariate polynomial with [`Scalar`] coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct UPoly {
    terms: BTreeMap<u32, Scalar>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Scalar::one())
    }

    pub fn monomial(k: u32, c: Scalar) -> Self {
        let mut p = UPoly::zero();
        p.add_term(k, c);
        p
    }

    pub fn var() -> Self {
        Self::monomial(1, Scalar::one())
    }

    /// `var + c`
    pub fn linear(c: Scalar) -> Self {
        let mut p = Self::var();
        p.add_term(0, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, k: u32) -> Scalar {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, k: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn scale(&self, c: &Scalar) -> UPoly {
        let mut out = UPoly::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    /// `f(var + d)`.
    pub fn shift(&self, d: &Scalar) -> UPoly {
        let mut out = UPoly::zero();
        for (&i, c) in &self.terms {
            for (k, a) in shifted_powers(i, d).into_iter().enumerate() {
                out.add_term(k as u32, c * &a);
            }
        }
        out
    }

    pub fn eval(&self, value: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for (&i, c) in &self.terms {
            acc += &(c * &value.pow(i));
        }
        acc
    }

    /// Division by a monic polynomial with constant coefficients.
    pub fn div_rem_monic(&self, divisor: &DensePoly) -> (UPoly, UPoly) {
        let n = divisor.degree();
        let mut rem = self.clone();
        let mut quot = UPoly::zero();
        while let Some(d) = rem.degree() {
            if d < n {
                break;
            }
            let lead = rem.coefficient(d);
            let shift = d - n;
            quot.add_term(shift, lead.clone());
            for (k, hk) in divisor.coeffs().iter().enumerate() {
                if hk.is_zero() {
                    continue;
                }
                rem.add_term(shift + k as u32, -&lead.scale(hk));
            }
        }
        (quot, rem)
    }

    /// Embeds as `f(first)` in a bivariate polynomial.
    pub fn to_first(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (&i, c) in &self.terms {
            out.add_term((i, 0), c.clone());
        }
        out
    }

    pub fn render(&self, name: &str) -> String {
        let mut terms = Vec::new();
        for (&k, c) in self.terms.iter().rev() {
            let vars = if k > 0 { vec![power(name, k as i64)] } else { vec![] };
            terms.extend(c.expanded_terms(&vars));
        }
        render_sum(terms)
    }
}

impl<'a> Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl<'a> Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        let mut out = UPoly::zero();
        for (&i, c1) in &self.terms {
            for (&j, c2) in &rhs.terms {
                out.add_term(i + j, c1 * c2);
            }
        }
        out
    }
}

/// Dense univariate polynomial over ℚ(√2), coefficients low to high, no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DensePoly {
    coeffs: Vec<QuadExt>,
}

impl DensePoly {
    pub fn new(mut coeffs: Vec<QuadExt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn one() -> Self {
        DensePoly { coeffs: vec![QuadExt::one()] }
    }

    /// `var − root`
    pub fn linear_factor(root: &QuadExt) -> Self {
        DensePoly { coeffs: vec![-root, QuadExt::one()] }
    }

    pub fn coeffs(&self) -> &[QuadExt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; the zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.coeffs.len().saturating_sub(1) as u32
    }

    pub fn leading(&self) -> Option<&QuadExt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(QuadExt::is_rational)
    }

    pub fn monic(&self) -> Option<DensePoly> {
        let inv = self.leading()?.inverse()?;
        Some(DensePoly { coeffs: self.coeffs.iter().map(|c| c * &inv).collect() })
    }

    pub fn conjugate(&self) -> DensePoly {
        DensePoly { coeffs: self.coeffs.iter().map(QuadExt::conjugate).collect() }
    }

    pub fn eval(&self, x: &QuadExt) -> QuadExt {
        let mut acc = QuadExt::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `h(var + d)`.
    pub fn shift(&self, d: &QuadExt) -> DensePoly {
        let sparse = self.to_upoly().shift(&Scalar::constant(d.clone()));
        DensePoly::from_upoly(&sparse).expect("constant coefficients stay constant")
    }

    pub fn mul(&self, other: &DensePoly) -> DensePoly {
        if self.is_zero() || other.is_zero() {
            return DensePoly::new(vec![]);
        }
        let mut out = vec![QuadExt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        DensePoly::new(out)
    }

    /// Synthetic division by `var − root`; `None` unless `root` is a root.
    pub fn deflate(&self, root: &QuadExt) -> Option<DensePoly> {
        if self.is_zero() || !self.eval(root).is_zero() {
            return None;
        }
        let n = self.coeffs.len();
        let mut out = vec![QuadExt::zero(); n - 1];
        let mut carry = QuadExt::zero();
        for k in (1..n).rev() {
            carry = &(&carry * root) + &self.coeffs[k];
            out[k - 1] = carry.clone();
        }
        Some(DensePoly::new(out))
    }

    pub fn to_upoly(&self) -> UPoly {
        let mut out = UPoly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            out.add_term(k as u32, Scalar::constant(c.clone()));
        }
        out
    }

    /// `None` if some coefficient involves a formal parameter.
    pub fn from_upoly(p: &UPoly) -> Option<DensePoly> {
        let n = p.degree().map_or(0, |d| d as usize + 1);
        let mut coeffs = vec![QuadExt::zero(); n];
        for (&k, c) in p.terms() {
            coeffs[k as usize] = c.as_constant()?;
        }
        Some(DensePoly::new(coeffs))
    }

    pub fn render(&self, name: &str) -> String {
        self.to_upoly().render(name)
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("y"))
    }
}
