//! The module Ω(λ,α) = ℂ[x,y] ⊕ ℂ[s,t] over the Ramond N=2 algebra.
//!
//! For `f(x,y)` even and `g(s,t)` odd:
//!
//! ```text
//! L_m f = λ^m (x + m y/2) f(x+m, y)        L_m g = λ^m (s + m t/2 + m) g(s+m, t)
//! H_m f = λ^m y f(x+m, y)                  H_m g = λ^m t g(s+m, t)
//! G⁺_m f = 0                               G⁺_m g = λ^m (2/α)(x + m y) g(x+m, y−1)
//! G⁻_m f = λ^m α f(s+m, t+1)               G⁻_m g = 0
//! C acts as 0.
//! ```
//!
//! Both parities share one bivariate representation; the odd-to-even and
//! even-to-odd substitutions are shifts of the two variables plus a parity
//! flip.

use std::fmt;
use std::ops::{Add, Sub};

use rayon::prelude::*;

use crate::algebra::{Algebra, AlgebraElement, BasisSymbol, Family, Parity};
use crate::error::{Error, ParseError, Result};
use crate::poly::Poly2;
use crate::report::{VerificationReport, Violation};
use crate::representation::{check_bracket_compatibility, ModuleVector, Representation};
use crate::scalar::{Param, Scalar};

#[derive(Clone, Debug)]
pub struct ModuleElement {
    parity: Parity,
    poly: Poly2,
}

impl ModuleElement {
    pub fn new(parity: Parity, poly: Poly2) -> Self {
        ModuleElement { parity, poly }
    }

    pub fn zero(parity: Parity) -> Self {
        Self::new(parity, Poly2::zero())
    }

    /// `1_even` or `1_odd`.
    pub fn unit(parity: Parity) -> Self {
        Self::new(parity, Poly2::one())
    }

    pub fn monomial(parity: Parity, i: u32, j: u32) -> Self {
        Self::new(parity, Poly2::monomial(i, j, Scalar::one()))
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn poly(&self) -> &Poly2 {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.parity, self.poly.scale(c))
    }

    pub fn var_names(parity: Parity) -> (&'static str, &'static str) {
        match parity {
            Parity::Even => ("x", "y"),
            Parity::Odd => ("s", "t"),
        }
    }

    /// Parses `x^2*y - 3` or `s*t^3`; constants take `default_parity`.
    pub fn parse(text: &str, default_parity: Parity) -> std::result::Result<Self, ParseError> {
        let (poly, vars) = crate::expr::parse_polynomial(text)?;
        Ok(Self::new(vars.unwrap_or(default_parity), poly))
    }

    /// Every monomial of total degree `<= degree` in one parity.
    pub fn monomials(parity: Parity, degree: u32) -> Vec<ModuleElement> {
        (0..=degree)
            .flat_map(|d| (0..=d).rev().map(move |i| (i, d - i)))
            .map(|(i, j)| Self::monomial(parity, i, j))
            .collect()
    }

    /// Monomials of both parities.
    pub fn all_monomials(degree: u32) -> Vec<ModuleElement> {
        let mut v = Self::monomials(Parity::Even, degree);
        v.extend(Self::monomials(Parity::Odd, degree));
        v
    }

    fn merge(&self, other: &ModuleElement, poly: Poly2) -> ModuleElement {
        let parity = if self.is_zero() { other.parity } else { self.parity };
        ModuleElement { parity, poly }
    }
}

/// Zero elements compare equal whatever their parity tag.
impl PartialEq for ModuleElement {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly && (self.parity == other.parity || self.poly.is_zero())
    }
}

impl Eq for ModuleElement {}

/// Panics when both summands are nonzero and of different parity.
impl<'a> Add<&'a ModuleElement> for &'a ModuleElement {
    type Output = ModuleElement;
    fn add(self, rhs: &ModuleElement) -> ModuleElement {
        assert!(
            self.parity == rhs.parity || self.is_zero() || rhs.is_zero(),
            "sum of nonzero elements of different parity"
        );
        self.merge(rhs, &self.poly + &rhs.poly)
    }
}

impl<'a> Sub<&'a ModuleElement> for &'a ModuleElement {
    type Output = ModuleElement;
    fn sub(self, rhs: &ModuleElement) -> ModuleElement {
        self + &rhs.scale(&Scalar::integer(-1))
    }
}

impl ModuleVector for ModuleElement {
    fn combine(&self, other: &Self, coef: i64) -> Self {
        self + &other.scale(&Scalar::integer(coef))
    }
    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.render(Self::var_names(self.parity)))
    }
}

/// Ω(λ,α) with `λ`, `α` any invertible scalars: the formal parameters by
/// default, or numbers for specializations.
#[derive(Clone, Debug, PartialEq)]
pub struct Omega {
    lam: Scalar,
    lam_inv: Scalar,
    alp: Scalar,
    alp_inv: Scalar,
}

impl Default for Omega {
    fn default() -> Self {
        Self::formal()
    }
}

impl Omega {
    pub fn new(lam: Scalar, alp: Scalar) -> Result<Self> {
        let lam_inv = lam.invert_monomial()?;
        let alp_inv = alp.invert_monomial()?;
        Ok(Omega { lam, lam_inv, alp, alp_inv })
    }

    pub fn formal() -> Self {
        Self::new(Scalar::param(Param::Lam), Scalar::param(Param::Alp)).expect("parameters are units")
    }

    pub fn lam(&self) -> &Scalar {
        &self.lam
    }

    pub fn alp(&self) -> &Scalar {
        &self.alp
    }

    pub(crate) fn lam_pow(&self, m: i64) -> Scalar {
        if m >= 0 {
            self.lam.pow(m as u32)
        } else {
            self.lam_inv.pow(m.unsigned_abs() as u32)
        }
    }

    pub(crate) fn alp_inv(&self) -> &Scalar {
        &self.alp_inv
    }

    fn act_symbol(&self, sym: &BasisSymbol, v: &ModuleElement) -> ModuleElement {
        let m = sym.twice_index / 2;
        let ms = Scalar::integer(m);
        let zero = Scalar::zero();
        let lm = self.lam_pow(m);
        let p = &v.poly;
        let out_parity = v.parity.plus(sym.parity());
        let poly = match (sym.family, v.parity) {
            (Family::C, _) => Poly2::zero(),
            (Family::L, Parity::Even) => {
                // (x + m y / 2) f(x+m, y)
                let mut factor = Poly2::first();
                factor.add_term((0, 1), Scalar::ratio(m, 2));
                &factor * &p.shift(&ms, &zero)
            }
            (Family::L, Parity::Odd) => {
                let mut factor = Poly2::first();
                factor.add_term((0, 1), Scalar::ratio(m, 2));
                factor.add_term((0, 0), ms.clone());
                &factor * &p.shift(&ms, &zero)
            }
            (Family::H, _) => &Poly2::second() * &p.shift(&ms, &zero),
            (Family::GPlus, Parity::Even) | (Family::GMinus, Parity::Odd) => Poly2::zero(),
            (Family::GPlus, Parity::Odd) => {
                // (2/α)(x + m y) g(x+m, y−1)
                let mut factor = Poly2::first();
                factor.add_term((0, 1), ms.clone());
                let c = &Scalar::integer(2) * &self.alp_inv;
                (&factor * &p.shift(&ms, &Scalar::integer(-1))).scale(&c)
            }
            (Family::GMinus, Parity::Even) => p.shift(&ms, &Scalar::one()).scale(&self.alp),
            (f, _) => unreachable!("{f:?} is not a Ramond generator"),
        };
        ModuleElement::new(out_parity, poly.scale(&lm))
    }

    /// Checks the module axioms on all generator pairs with `|index| <=
    /// window` and all monomials of total degree `<= degree`.
    pub fn check_module_compatibility(&self, window: i64, degree: u32) -> VerificationReport {
        let gens = Algebra::R.basis(window);
        let vectors = ModuleElement::all_monomials(degree);
        let (n, violations) = check_bracket_compatibility(self, &gens, &vectors);
        let mut report =
            VerificationReport::new("module-compatibility").param("window", window).param("degree", degree);
        report.record(n, violations);
        report
    }

    /// `L₀` acts as `x`/`s` and `H₀` as `y`/`t`, so `L₀^i H₀^j 1` runs
    /// through the monomial basis of each parity.
    pub fn check_uh_freeness(&self, degree: u32) -> VerificationReport {
        let l0 = AlgebraElement::basis(BasisSymbol::at(Algebra::R, Family::L, 0));
        let h0 = AlgebraElement::basis(BasisSymbol::at(Algebra::R, Family::H, 0));
        let mut violations = Vec::new();
        let mut count = 0;
        for parity in [Parity::Even, Parity::Odd] {
            let (vx, vy) = ModuleElement::var_names(parity);
            for v in ModuleElement::monomials(parity, degree) {
                let by_first = ModuleElement::new(parity, &Poly2::first() * &v.poly);
                let by_second = ModuleElement::new(parity, &Poly2::second() * &v.poly);
                for (op, name, want) in [(&l0, vx, by_first), (&h0, vy, by_second)] {
                    count += 1;
                    let got = self.act(op, &v).expect("R element");
                    if got != want {
                        violations.push(Violation::new(format!("{op} on {v} vs {name}*({v})"), got, want));
                    }
                }
            }
            for v in ModuleElement::monomials(parity, degree) {
                let (i, j) = *v.poly.terms().next().expect("monomial").0;
                let mut w = ModuleElement::unit(parity);
                for _ in 0..j {
                    w = self.act(&h0, &w).expect("R element");
                }
                for _ in 0..i {
                    w = self.act(&l0, &w).expect("R element");
                }
                count += 1;
                if w != v {
                    violations.push(Violation::new(format!("L[0]^{i} H[0]^{j} 1_{}", parity.name()), w, v));
                }
            }
        }
        let mut report = VerificationReport::new("uh-freeness").param("degree", degree);
        report.record(count, violations);
        report
    }

    /// Commutation of `L_m, H_m, G±_m` past powers of `L₀` and `H₀`:
    /// `X L₀ⁿ = (L₀ + m)ⁿ X`, `L_m H₀ⁿ = H₀ⁿ L_m`, `H_m H₀ⁿ = H₀ⁿ H_m`,
    /// `G±_m H₀ⁿ = (H₀ ∓ 1)ⁿ G±_m`, as operators on monomials.
    pub fn check_shift_identities(&self, window: i64, max_power: u32, degree: u32) -> VerificationReport {
        let l0 = BasisSymbol::at(Algebra::R, Family::L, 0);
        let h0 = BasisSymbol::at(Algebra::R, Family::H, 0);
        let gens: Vec<BasisSymbol> = Algebra::R.basis(window).into_iter().filter(|s| s.family != Family::C).collect();
        let vectors = ModuleElement::all_monomials(degree);

        // w ↦ (op + shift)^n w
        let shifted_power = |op: &BasisSymbol, shift: i64, n: u32, w: &ModuleElement| {
            let mut out = w.clone();
            for _ in 0..n {
                out = self.act_basis(op, &out).combine(&out, shift);
            }
            out
        };

        let violations: Vec<Violation> = gens
            .par_iter()
            .flat_map_iter(|x| {
                let m = x.twice_index / 2;
                let h_shift = match x.family {
                    Family::GPlus => -1,
                    Family::GMinus => 1,
                    _ => 0,
                };
                let vectors = &vectors;
                let shifted_power = &shifted_power;
                (1..=max_power).flat_map(move |n| {
                    vectors.iter().flat_map(move |v| {
                        let xv = self.act_basis(x, v);
                        [(l0, m), (h0, h_shift)].into_iter().filter_map(move |(op, shift)| {
                            let lhs = self.act_basis(x, &shifted_power(&op, 0, n, v));
                            let rhs = shifted_power(&op, shift, n, &xv);
                            (lhs != rhs).then(|| Violation::new(format!("{x} {op}^{n} on {v}"), lhs, rhs))
                        })
                    })
                })
            })
            .collect();
        let mut report = VerificationReport::new("shift-identities")
            .param("window", window)
            .param("max_power", max_power)
            .param("degree", degree);
        report.record(gens.len() * max_power as usize * vectors.len() * 2, violations);
        report
    }

    /// `C` and `3 H₁H₋₁ − 3 H₋₁H₁` annihilate every monomial.
    pub fn check_central_triviality(&self, degree: u32) -> VerificationReport {
        let c = BasisSymbol::new(Algebra::R, Family::C, 0).expect("C");
        let h1 = BasisSymbol::at(Algebra::R, Family::H, 1);
        let hm1 = BasisSymbol::at(Algebra::R, Family::H, -1);
        let mut violations = Vec::new();
        let vectors = ModuleElement::all_monomials(degree);
        for v in &vectors {
            let cv = self.act_basis(&c, v);
            if !cv.is_zero() {
                violations.push(Violation::new(format!("C on {v}"), cv, 0));
            }
            let a = self.act_basis(&h1, &self.act_basis(&hm1, v));
            let b = self.act_basis(&hm1, &self.act_basis(&h1, v));
            let comm = (&a - &b).scale(&Scalar::integer(3));
            if !comm.is_zero() {
                violations.push(Violation::new(format!("3H[1]H[-1] - 3H[-1]H[1] on {v}"), comm, 0));
            }
        }
        let mut report = VerificationReport::new("central-triviality").param("degree", degree);
        report.record(2 * vectors.len(), violations);
        report
    }
}

impl Representation for Omega {
    type Vector = ModuleElement;

    fn algebra(&self) -> Algebra {
        Algebra::R
    }

    fn act(&self, x: &AlgebraElement, v: &ModuleElement) -> Result<ModuleElement> {
        if x.algebra() != Algebra::R {
            return Err(Error::AlgebraMismatch { expected: Algebra::R, found: x.algebra() });
        }
        let parity = x.parity()?;
        let mut out = ModuleElement::zero(v.parity.plus(parity.unwrap_or(Parity::Even)));
        for (sym, c) in x.terms() {
            out = &out + &self.act_symbol(sym, v).scale(c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(f: Family, m: i64) -> AlgebraElement {
        AlgebraElement::basis(BasisSymbol::at(Algebra::R, f, m))
    }

    fn even(text: &str) -> ModuleElement {
        ModuleElement::parse(text, Parity::Even).unwrap()
    }

    fn odd(text: &str) -> ModuleElement {
        ModuleElement::parse(text, Parity::Odd).unwrap()
    }

    #[test]
    fn spot_actions() {
        let om = Omega::formal();
        assert_eq!(om.act(&gen(Family::L, 1), &even("1")).unwrap(), even("lam*x + 1/2*lam*y"));

        let got = om.act(&gen(Family::GPlus, 2), &odd("1")).unwrap();
        assert_eq!(got.parity(), Parity::Even);
        assert_eq!(got, even("lam^2*2/alp*(x + 2*y)"));

        let got = om.act(&gen(Family::GMinus, 0), &even("x^2")).unwrap();
        assert_eq!(got, odd("alp*s^2"));

        let got = om.act(&gen(Family::H, -1), &odd("s")).unwrap();
        assert_eq!(got, odd("lam^-1*t*(s - 1)"));

        let c = AlgebraElement::basis(BasisSymbol::new(Algebra::R, Family::C, 0).unwrap());
        assert!(om.act(&c, &even("x^5*y")).unwrap().is_zero());
    }

    #[test]
    fn worked_bracket_examples() {
        let om = Omega::formal();
        // [G-_0, G+_0] on 1_even: 2 L_0 1 = 2x
        let lhs =
            om.act(&crate::bracket(&gen(Family::GMinus, 0), &gen(Family::GPlus, 0)).unwrap(), &even("1")).unwrap();
        assert_eq!(lhs, even("2*x"));
        let rhs = &om.act_word(&[gen(Family::GMinus, 0), gen(Family::GPlus, 0)], &even("1")).unwrap()
            + &om.act_word(&[gen(Family::GPlus, 0), gen(Family::GMinus, 0)], &even("1")).unwrap();
        assert_eq!(rhs, even("2*x"));

        // H_1 H_-1 1 - H_-1 H_1 1 = 0
        let a = om.act_word(&[gen(Family::H, 1), gen(Family::H, -1)], &even("1")).unwrap();
        let b = om.act_word(&[gen(Family::H, -1), gen(Family::H, 1)], &even("1")).unwrap();
        assert_eq!(a, even("y^2"));
        assert!((&a - &b).is_zero());
    }

    #[test]
    fn cartan_multiplication() {
        let om = Omega::formal();
        assert_eq!(om.act(&gen(Family::L, 0), &even("x^2*y")).unwrap(), even("x^3*y"));
        assert_eq!(om.act(&gen(Family::H, 0), &odd("s*t")).unwrap(), odd("s*t^2"));
    }

    #[test]
    fn rejects_foreign_and_mixed() {
        let om = Omega::formal();
        let ns = AlgebraElement::basis(BasisSymbol::at(Algebra::NS, Family::L, 0));
        assert!(matches!(om.act(&ns, &even("1")), Err(Error::AlgebraMismatch { .. })));
        let mixed = &gen(Family::L, 0) + &gen(Family::GPlus, 0);
        assert_eq!(om.act(&mixed, &even("1")), Err(Error::MixedParity));
    }

    #[test]
    fn odd_squares_vanish() {
        let om = Omega::formal();
        for v in ModuleElement::all_monomials(3) {
            for m in -2..=2 {
                for n in -2..=2 {
                    for f in [Family::GPlus, Family::GMinus] {
                        let w = om.act_word(&[gen(f, m), gen(f, n)], &v).unwrap();
                        assert!(w.is_zero(), "{f:?}_{m} {f:?}_{n} on {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn parity_bookkeeping() {
        let om = Omega::formal();
        for v in ModuleElement::all_monomials(2) {
            for s in Algebra::R.basis(2) {
                let w = om.act_basis(&s, &v);
                if !w.is_zero() {
                    assert_eq!(w.parity(), v.parity().plus(s.parity()), "{s} on {v}");
                }
            }
        }
    }

    #[test]
    fn small_sweeps_pass() {
        let om = Omega::formal();
        assert!(om.check_module_compatibility(2, 2).passed());
        assert!(om.check_uh_freeness(3).passed());
        assert!(om.check_shift_identities(2, 2, 2).passed());
        assert!(om.check_central_triviality(3).passed());
    }

    #[test]
    fn numeric_specialization_is_a_module_too() {
        let om = Omega::new(Scalar::ratio(3, 2), Scalar::integer(2)).unwrap();
        assert!(om.check_module_compatibility(1, 2).passed());
        assert!(Omega::new(Scalar::zero(), Scalar::one()).is_err());
    }
}
