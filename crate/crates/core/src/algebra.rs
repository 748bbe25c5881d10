//! The Ramond, Neveu-Schwarz and topological N=2 superconformal algebras and
//! the centerless N=1 Ramond and Neveu-Schwarz algebras.
//!
//! Indices are stored doubled (`twice_index = 2r`) so half-integral odd
//! indices stay integral. Only one ordering of each bracket pair is
//! tabulated; the other follows from super-antisymmetry.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, ParseError, Result};
use crate::report::{VerificationReport, Violation};
use crate::scalar::{quad::fmt_rational, Rational, Scalar};
use crate::text::{render_sum, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algebra {
    /// Ramond N=2.
    R,
    /// Neveu-Schwarz N=2.
    NS,
    /// Topological N=2.
    T,
    /// Centerless N=1 Ramond.
    N1R,
    /// Centerless N=1 Neveu-Schwarz.
    N1NS,
}

impl Algebra {
    pub const ALL: [Algebra; 5] = [Algebra::R, Algebra::NS, Algebra::T, Algebra::N1R, Algebra::N1NS];

    pub fn name(self) -> &'static str {
        match self {
            Algebra::R => "R",
            Algebra::NS => "NS",
            Algebra::T => "T",
            Algebra::N1R => "N1R",
            Algebra::N1NS => "N1NS",
        }
    }

    pub fn families(self) -> &'static [Family] {
        use Family::*;
        match self {
            Algebra::R | Algebra::NS => &[L, H, GPlus, GMinus, C],
            Algebra::T => &[L, H, G, Q, C],
            Algebra::N1R | Algebra::N1NS => &[L, G],
        }
    }

    /// Whether odd generators sit at half-integral indices.
    pub fn half_integral_odd(self) -> bool {
        matches!(self, Algebra::NS | Algebra::N1NS)
    }

    pub fn has_center(self) -> bool {
        self.families().contains(&Family::C)
    }

    /// Every basis symbol with `|index| <= window`.
    pub fn basis(self, window: i64) -> Vec<BasisSymbol> {
        let mut out = Vec::new();
        for &family in self.families() {
            if family == Family::C {
                out.push(BasisSymbol { algebra: self, family, twice_index: 0 });
                continue;
            }
            for twice in -2 * window..=2 * window {
                if let Ok(s) = BasisSymbol::new(self, family, twice) {
                    out.push(s);
                }
            }
        }
        out
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algebra {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Algebra::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown algebra `{s}` (expected R, NS, T, N1R or N1NS)"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn plus(self, other: Parity) -> Parity {
        if other == Parity::Odd {
            self.flip()
        } else {
            self
        }
    }

    /// `(-1)^{|x||y|}`.
    pub fn sign(self, other: Parity) -> i64 {
        if self == Parity::Odd && other == Parity::Odd {
            -1
        } else {
            1
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl FromStr for Parity {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(format!("unknown parity `{s}` (expected even or odd)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    L,
    H,
    GPlus,
    GMinus,
    /// `G` of the topological algebra, or the single odd family of N=1.
    G,
    Q,
    C,
}

impl Family {
    pub fn parity(self) -> Parity {
        match self {
            Family::L | Family::H | Family::C => Parity::Even,
            _ => Parity::Odd,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::L => "L",
            Family::H => "H",
            Family::GPlus => "Gp",
            Family::GMinus => "Gm",
            Family::G => "G",
            Family::Q => "Q",
            Family::C => "C",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        [Family::L, Family::H, Family::GPlus, Family::GMinus, Family::G, Family::Q, Family::C]
            .into_iter()
            .find(|f| f.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisSymbol {
    pub algebra: Algebra,
    pub family: Family,
    pub twice_index: i64,
}

impl BasisSymbol {
    pub fn new(algebra: Algebra, family: Family, twice_index: i64) -> Result<Self> {
        let sym = BasisSymbol { algebra, family, twice_index };
        if !algebra.families().contains(&family) {
            return Err(Error::InvalidSymbol(format!("{} has no {} generators", algebra, family.name())));
        }
        let ok = match family {
            Family::C => twice_index == 0,
            Family::L | Family::H => twice_index % 2 == 0,
            _ if algebra.half_integral_odd() => twice_index % 2 != 0,
            _ => twice_index % 2 == 0,
        };
        if !ok {
            return Err(Error::InvalidSymbol(format!("{} cannot carry index {}", sym.label(), sym.index_text())));
        }
        Ok(sym)
    }

    /// Integral-index shorthand; panics on an invalid symbol.
    pub fn at(algebra: Algebra, family: Family, index: i64) -> Self {
        Self::new(algebra, family, 2 * index).expect("valid basis symbol")
    }

    pub fn parity(&self) -> Parity {
        self.family.parity()
    }

    pub fn index(&self) -> Rational {
        Rational::new(BigInt::from(self.twice_index), BigInt::from(2))
    }

    fn index_text(&self) -> String {
        fmt_rational(&self.index())
    }

    fn label(&self) -> String {
        self.family.name().to_string()
    }
}

impl fmt::Display for BasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family == Family::C {
            f.write_str("C")
        } else {
            write!(f, "{}[{}]", self.family.name(), self.index_text())
        }
    }
}

/// Finite linear combination of basis symbols of one algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    algebra: Algebra,
    terms: BTreeMap<BasisSymbol, Scalar>,
}

impl AlgebraElement {
    pub fn zero(algebra: Algebra) -> Self {
        AlgebraElement { algebra, terms: BTreeMap::new() }
    }

    pub fn basis(sym: BasisSymbol) -> Self {
        Self::term(sym, Scalar::one())
    }

    pub fn term(sym: BasisSymbol, c: Scalar) -> Self {
        let mut e = Self::zero(sym.algebra);
        e.add_term(sym, c);
        e
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisSymbol, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, sym: &BasisSymbol) -> Scalar {
        self.terms.get(sym).cloned().unwrap_or_default()
    }

    /// Panics if `sym` belongs to another algebra.
    pub fn add_term(&mut self, sym: BasisSymbol, c: Scalar) {
        assert_eq!(sym.algebra, self.algebra, "basis symbol from another algebra");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(sym).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&sym);
        }
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        let mut out = Self::zero(self.algebra);
        for (s, v) in &self.terms {
            out.add_term(*s, v * c);
        }
        out
    }

    /// `None` for zero; `MixedParity` if not homogeneous.
    pub fn parity(&self) -> Result<Option<Parity>> {
        let mut found = None;
        for s in self.terms.keys() {
            match found {
                None => found = Some(s.parity()),
                Some(p) if p != s.parity() => return Err(Error::MixedParity),
                _ => {}
            }
        }
        Ok(found)
    }

    /// Drops the `C` component (comparison in the quotient by the center).
    pub fn drop_center(&self) -> AlgebraElement {
        let mut out = self.clone();
        out.terms.retain(|s, _| s.family != Family::C);
        out
    }

    fn check_same(&self, other: &AlgebraElement) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch { expected: self.algebra, found: other.algebra });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(*s, c.clone());
        }
        Ok(out)
    }
}

/// Panics on mismatched algebras; use [`AlgebraElement::checked_add`] otherwise.
impl<'a> Add<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_add(rhs).expect("same algebra")
    }
}

impl<'a> Sub<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self + &-rhs
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&Scalar::integer(-1))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<Term> = Vec::new();
        for (s, c) in &self.terms {
            terms.extend(c.expanded_terms(&[s.to_string()]));
        }
        f.write_str(&render_sum(terms))
    }
}

impl AlgebraElement {
    /// Parses e.g. `2*L[1] + lam*H[0] - C` as an element of `algebra`.
    pub fn parse(algebra: Algebra, text: &str) -> std::result::Result<Self, ParseError> {
        crate::expr::parse_algebra_element(algebra, text)
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Collects `(family, twice_index, coefficient)` triples into an element.
fn combo(algebra: Algebra, parts: &[(Family, i64, Rational)]) -> AlgebraElement {
    let mut e = AlgebraElement::zero(algebra);
    for (family, twice, c) in parts {
        if c.is_zero() {
            continue;
        }
        let sym = BasisSymbol::new(algebra, *family, *twice).expect("structure constant on valid symbol");
        e.add_term(sym, Scalar::rational(c.clone()));
    }
    e
}

/// The tabulated ordering of a basis pair, or `None` if only the swapped
/// pair is listed.
fn listed(x: &BasisSymbol, y: &BasisSymbol) -> Option<AlgebraElement> {
    use Family::*;
    let alg = x.algebra;
    let (m, n) = (x.index(), y.index());
    let sum = x.twice_index + y.twice_index;
    let delta = sum == 0;
    let central = |c: Rational| if delta { c } else { Rational::zero() };
    let half = q(1, 2);
    let zero = || Some(AlgebraElement::zero(alg));

    match alg {
        Algebra::R | Algebra::NS => match (x.family, y.family) {
            (C, _) | (_, C) => zero(),
            (L, L) => {
                let c = central(q(1, 12) * (&m * &m * &m - &m));
                Some(combo(alg, &[(L, sum, &m - &n), (C, 0, c)]))
            }
            (L, H) => Some(combo(alg, &[(H, sum, -n)])),
            (H, H) => Some(combo(alg, &[(C, 0, central(q(1, 3) * m))])),
            (L, GPlus) | (L, GMinus) => Some(combo(alg, &[(y.family, sum, &half * &m - &n)])),
            (H, GPlus) => Some(combo(alg, &[(GPlus, sum, q(1, 1))])),
            (H, GMinus) => Some(combo(alg, &[(GMinus, sum, q(-1, 1))])),
            (GMinus, GPlus) => {
                // [G-_r, G+_s] = 2L_{r+s} - (r-s)H_{r+s} + 1/3 (r^2 - 1/4) δ C
                let c = central(q(1, 3) * (&m * &m - q(1, 4)));
                Some(combo(alg, &[(L, sum, q(2, 1)), (H, sum, &n - &m), (C, 0, c)]))
            }
            (GPlus, GPlus) | (GMinus, GMinus) => zero(),
            _ => None,
        },
        Algebra::T => match (x.family, y.family) {
            (C, _) | (_, C) => zero(),
            (L, L) => Some(combo(alg, &[(L, sum, &m - &n)])),
            (L, H) => {
                let c = central(q(1, 6) * (&m * &m + &m));
                Some(combo(alg, &[(H, sum, -n), (C, 0, c)]))
            }
            (H, H) => Some(combo(alg, &[(C, 0, central(q(1, 3) * m))])),
            (L, G) => Some(combo(alg, &[(G, sum, &m - &n)])),
            (L, Q) => Some(combo(alg, &[(Q, sum, -n)])),
            (H, G) => Some(combo(alg, &[(G, sum, q(1, 1))])),
            (H, Q) => Some(combo(alg, &[(Q, sum, q(-1, 1))])),
            (G, Q) => {
                let c = central(q(1, 3) * (&m * &m + &m));
                Some(combo(alg, &[(L, sum, q(2, 1)), (H, sum, q(-2, 1) * n), (C, 0, c)]))
            }
            (G, G) | (Q, Q) => zero(),
            _ => None,
        },
        Algebra::N1R | Algebra::N1NS => match (x.family, y.family) {
            (L, L) => Some(combo(alg, &[(L, sum, &m - &n)])),
            (L, G) => Some(combo(alg, &[(G, sum, &half * &m - &n)])),
            (G, G) => Some(combo(alg, &[(L, sum, q(2, 1))])),
            _ => None,
        },
    }
}

/// Super-bracket of two basis symbols of the same algebra.
pub fn bracket_basis(x: &BasisSymbol, y: &BasisSymbol) -> Result<AlgebraElement> {
    if x.algebra != y.algebra {
        return Err(Error::AlgebraMismatch { expected: x.algebra, found: y.algebra });
    }
    if let Some(e) = listed(x, y) {
        return Ok(e);
    }
    // [x, y] = -(-1)^{|x||y|} [y, x]
    let swapped = listed(y, x).expect("every family pair is tabulated in one order");
    let sign = -x.parity().sign(y.parity());
    Ok(swapped.scale(&Scalar::integer(sign)))
}

/// Bilinear super-bracket of homogeneous elements.
pub fn bracket(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    x.check_same(y)?;
    x.parity()?;
    y.parity()?;
    let mut out = AlgebraElement::zero(x.algebra);
    for (sx, cx) in &x.terms {
        for (sy, cy) in &y.terms {
            let b = bracket_basis(sx, sy)?;
            out = &out + &b.scale(&(cx * cy));
        }
    }
    Ok(out)
}

/// Graded Jacobi expression
/// `(-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]]`.
pub fn jacobiator(x: &BasisSymbol, y: &BasisSymbol, z: &BasisSymbol) -> Result<AlgebraElement> {
    let (px, py, pz) = (x.parity(), y.parity(), z.parity());
    let (ex, ey, ez) = (AlgebraElement::basis(*x), AlgebraElement::basis(*y), AlgebraElement::basis(*z));
    let t1 = bracket(&ex, &bracket_basis(y, z)?)?.scale(&Scalar::integer(px.sign(pz)));
    let t2 = bracket(&ey, &bracket_basis(z, x)?)?.scale(&Scalar::integer(py.sign(px)));
    let t3 = bracket(&ez, &bracket_basis(x, y)?)?.scale(&Scalar::integer(pz.sign(py)));
    Ok(&(&t1 + &t2) + &t3)
}

/// Exhaustive graded Jacobi sweep over basis triples with `|index| <= window`.
pub fn check_super_jacobi(algebra: Algebra, window: i64) -> VerificationReport {
    let basis = algebra.basis(window);
    let violations: Vec<Violation> = basis
        .par_iter()
        .flat_map_iter(|x| {
            let basis = &basis;
            basis.iter().flat_map(move |y| {
                basis.iter().filter_map(move |z| {
                    let j = jacobiator(x, y, z).expect("basis symbols share the algebra");
                    (!j.is_zero()).then(|| Violation::new(format!("({x}, {y}, {z})"), j, 0))
                })
            })
        })
        .collect();
    let mut report = VerificationReport::new("super-jacobi").param("algebra", algebra.name()).param("window", window);
    report.record(basis.len().pow(3), violations);
    report
}

/// Super-antisymmetry `[x,y] + (-1)^{|x||y|}[y,x] = 0` over a window.
pub fn check_antisymmetry(algebra: Algebra, window: i64) -> VerificationReport {
    let basis = algebra.basis(window);
    let mut violations = Vec::new();
    for x in &basis {
        for y in &basis {
            let xy = bracket_basis(x, y).expect("same algebra");
            let yx = bracket_basis(y, x).expect("same algebra");
            let sum = &xy + &yx.scale(&Scalar::integer(x.parity().sign(y.parity())));
            if !sum.is_zero() {
                violations.push(Violation::new(format!("({x}, {y})"), sum, 0));
            }
        }
    }
    let mut report =
        VerificationReport::new("super-antisymmetry").param("algebra", algebra.name()).param("window", window);
    report.record(basis.len().pow(2), violations);
    report
}
