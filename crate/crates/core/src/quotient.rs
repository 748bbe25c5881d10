//! The simple quotients `S(λ,α,a) = Ω(λ,α)/M_{y+a} = ℂ[x] ⊕ ℂ[s]`:
//!
//! ```text
//! L_m f = λ^m (x − ma/2) f(x+m)            L_m g = λ^m (s − ma/2 + m/2) g(s+m)
//! H_m f = −a λ^m f(x+m)                    H_m g = −(a+1) λ^m g(s+m)
//! G⁺_m f = 0                               G⁺_m g = λ^m (2/α)(x − ma) g(x+m)
//! G⁻_m f = λ^m α f(s+m)                    G⁻_m g = 0
//! ```
//!
//! together with the projection from Ω, the isomorphism `Φ` between
//! quotients with equal `λ` and `a`, and the embedding `Ξ` of `S(λ,α,a)`
//! as the subquotient `M_h̃ / M_{(y+a)h̃}`.

use std::fmt;
use std::ops::{Add, Sub};

use rayon::prelude::*;

use crate::algebra::{Algebra, AlgebraElement, BasisSymbol, Family, Parity};
use crate::error::{Error, ParseError, Result};
use crate::lattice::SubmoduleSpec;
use crate::linalg::{SpanBasis, SparseVector};
use crate::omega::{ModuleElement, Omega};
use crate::poly::{DensePoly, Poly2, UPoly};
use crate::report::{VerificationReport, Violation};
use crate::representation::{check_bracket_compatibility, ModuleVector, Representation};
use crate::scalar::{Param, QuadExt, Scalar};

#[derive(Clone, Debug)]
pub struct QuotientElement {
    parity: Parity,
    poly: UPoly,
}

impl QuotientElement {
    pub fn new(parity: Parity, poly: UPoly) -> Self {
        QuotientElement { parity, poly }
    }

    pub fn zero(parity: Parity) -> Self {
        Self::new(parity, UPoly::zero())
    }

    pub fn unit(parity: Parity) -> Self {
        Self::new(parity, UPoly::one())
    }

    pub fn monomial(parity: Parity, k: u32) -> Self {
        Self::new(parity, UPoly::monomial(k, Scalar::one()))
    }

    /// `x^0..=x^degree` followed by `s^0..=s^degree`.
    pub fn all_monomials(degree: u32) -> Vec<QuotientElement> {
        [Parity::Even, Parity::Odd].into_iter().flat_map(|p| (0..=degree).map(move |k| Self::monomial(p, k))).collect()
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn poly(&self) -> &UPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.parity, self.poly.scale(c))
    }

    pub fn var_name(parity: Parity) -> &'static str {
        ModuleElement::var_names(parity).0
    }

    /// Parses a polynomial in `x` or in `s`; constants take `default_parity`.
    pub fn parse(text: &str, default_parity: Parity) -> std::result::Result<Self, ParseError> {
        let v = ModuleElement::parse(text, default_parity)?;
        if let Some(((_, j), _)) = v.poly().terms().find(|((_, j), _)| *j > 0) {
            let name = ModuleElement::var_names(v.parity()).1;
            return Err(ParseError {
                position: text.find(name).unwrap_or(0),
                token: format!("{name}^{j}"),
                message: "quotient elements are polynomials in x or s only".into(),
            });
        }
        Ok(Self::new(v.parity(), v.poly().eval_second(&Scalar::zero())))
    }

    /// Coefficients as field elements keyed by `(parity, exponent)`; `None`
    /// if a formal parameter survives.
    pub fn to_sparse(&self) -> Option<SparseVector<(Parity, u32)>> {
        self.poly.terms().map(|(&k, c)| Some(((self.parity, k), c.as_constant()?))).collect()
    }
}

impl PartialEq for QuotientElement {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly && (self.parity == other.parity || self.poly.is_zero())
    }
}

impl Eq for QuotientElement {}

/// Panics when both summands are nonzero and of different parity.
impl<'a> Add<&'a QuotientElement> for &'a QuotientElement {
    type Output = QuotientElement;
    fn add(self, rhs: &QuotientElement) -> QuotientElement {
        assert!(
            self.parity == rhs.parity || self.is_zero() || rhs.is_zero(),
            "sum of nonzero elements of different parity"
        );
        let parity = if self.is_zero() { rhs.parity } else { self.parity };
        QuotientElement::new(parity, &self.poly + &rhs.poly)
    }
}

impl<'a> Sub<&'a QuotientElement> for &'a QuotientElement {
    type Output = QuotientElement;
    fn sub(self, rhs: &QuotientElement) -> QuotientElement {
        self + &rhs.scale(&Scalar::integer(-1))
    }
}

impl ModuleVector for QuotientElement {
    fn combine(&self, other: &Self, coef: i64) -> Self {
        self + &other.scale(&Scalar::integer(coef))
    }
    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

impl fmt::Display for QuotientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.render(Self::var_name(self.parity)))
    }
}

/// `S(λ,α,a)`. `λ`, `α` must be units; `a` may be a formal parameter for
/// the action, but projection and `Ξ` need a number.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientModule {
    omega: Omega,
    a: Scalar,
}

impl QuotientModule {
    pub fn new(lam: Scalar, alp: Scalar, a: Scalar) -> Result<Self> {
        Ok(QuotientModule { omega: Omega::new(lam, alp)?, a })
    }

    /// Formal `λ`, `α` with a numeric `a`.
    pub fn with_a(a: QuadExt) -> Self {
        QuotientModule { omega: Omega::formal(), a: Scalar::constant(a) }
    }

    /// Formal `λ`, `α` and `a`.
    pub fn formal() -> Self {
        QuotientModule { omega: Omega::formal(), a: Scalar::param(Param::A) }
    }

    pub fn lam(&self) -> &Scalar {
        self.omega.lam()
    }

    pub fn alp(&self) -> &Scalar {
        self.omega.alp()
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn a_value(&self) -> Option<QuadExt> {
        self.a.as_constant()
    }

    /// The module `Ω(λ,α)` this is a quotient of.
    pub fn omega(&self) -> &Omega {
        &self.omega
    }

    /// `S(lam,alp,-1)` style label.
    pub fn label(&self) -> String {
        format!("S({},{},{})", self.lam(), self.alp(), self.a).replace(' ', "")
    }

    fn act_symbol(&self, sym: &BasisSymbol, v: &QuotientElement) -> QuotientElement {
        let m = sym.twice_index / 2;
        let ms = Scalar::integer(m);
        let lm = self.omega.lam_pow(m);
        let p = &v.poly;
        let half_ma = &Scalar::ratio(m, 2) * &self.a;
        let poly = match (sym.family, v.parity) {
            (Family::C, _) => UPoly::zero(),
            (Family::L, Parity::Even) => &UPoly::linear(-&half_ma) * &p.shift(&ms),
            (Family::L, Parity::Odd) => &UPoly::linear(&Scalar::ratio(m, 2) - &half_ma) * &p.shift(&ms),
            (Family::H, Parity::Even) => p.shift(&ms).scale(&-&self.a),
            (Family::H, Parity::Odd) => p.shift(&ms).scale(&-&(&self.a + &Scalar::one())),
            (Family::GPlus, Parity::Even) | (Family::GMinus, Parity::Odd) => UPoly::zero(),
            (Family::GPlus, Parity::Odd) => {
                let c = &Scalar::integer(2) * self.omega.alp_inv();
                (&UPoly::linear(-&(&ms * &self.a)) * &p.shift(&ms)).scale(&c)
            }
            (Family::GMinus, Parity::Even) => p.shift(&ms).scale(self.alp()),
            (f, _) => unreachable!("{f:?} is not a Ramond generator"),
        };
        QuotientElement::new(v.parity.plus(sym.parity()), poly.scale(&lm))
    }

    /// `f(x,y) ↦ f(x,−a)`, `g(s,t) ↦ g(s,−a−1)`.
    pub fn project(&self, v: &ModuleElement) -> QuotientElement {
        let value = match v.parity() {
            Parity::Even => -&self.a,
            Parity::Odd => -&(&self.a + &Scalar::one()),
        };
        QuotientElement::new(v.parity(), v.poly().eval_second(&value))
    }

    /// The kernel of [`project`](Self::project), `M_{y+a}`.
    pub fn kernel(&self) -> Result<SubmoduleSpec> {
        let a = self.a_value().ok_or_else(|| Error::ParamMismatch("the kernel needs a numeric a".into()))?;
        SubmoduleSpec::m(DensePoly::linear_factor(&-&a))
    }

    /// `Φ: S(λ,α,a) → S(μ,β,b)`, defined when `λ = μ` and `a = b`.
    pub fn iso_phi(&self, v: &QuotientElement, target: &QuotientModule) -> Result<QuotientElement> {
        if self.lam() != target.lam() {
            return Err(Error::ParamMismatch(format!("lambda {} vs {}", self.lam(), target.lam())));
        }
        if self.a != target.a {
            return Err(Error::ParamMismatch(format!("a {} vs {}", self.a, target.a)));
        }
        Ok(match v.parity {
            Parity::Even => v.clone(),
            Parity::Odd => v.scale(&(target.alp() * self.omega.alp_inv())),
        })
    }

    /// `Ξ: f(x) ↦ h̃(y) f(x)`, `g(s) ↦ h̃(t+1) g(s)`, a representative of a
    /// class in `M_h̃ / M_{(y+a)h̃}`.
    pub fn iso_xi(&self, v: &QuotientElement, h_tilde: &DensePoly) -> ModuleElement {
        let h = match v.parity {
            Parity::Even => h_tilde.clone(),
            Parity::Odd => h_tilde.shift(&QuadExt::from_integer(1)),
        };
        ModuleElement::new(v.parity, &Poly2::from_second(&h) * &v.poly.to_first())
    }

    /// Bracket compatibility on `x^k`, `s^k` for `k <= degree`.
    pub fn check_module_compatibility(&self, window: i64, degree: u32) -> VerificationReport {
        let gens = Algebra::R.basis(window);
        let vectors = QuotientElement::all_monomials(degree);
        let (n, violations) = check_bracket_compatibility(self, &gens, &vectors);
        let mut report = VerificationReport::new("quotient-compatibility")
            .param("a", self.a.to_string())
            .param("window", window)
            .param("degree", degree);
        report.record(n, violations);
        report
    }

    /// `project(X·v) = X·project(v)` on Ω monomials.
    pub fn check_projection(&self, window: i64, degree: u32) -> VerificationReport {
        let gens = Algebra::R.basis(window);
        let vectors = ModuleElement::all_monomials(degree);
        let violations: Vec<Violation> = gens
            .par_iter()
            .flat_map_iter(|x| {
                vectors.iter().filter_map(move |v| {
                    let lhs = self.project(&self.omega.act_basis(x, v));
                    let rhs = self.act_basis(x, &self.project(v));
                    (lhs != rhs).then(|| Violation::new(format!("project({x} on {v})"), lhs, rhs))
                })
            })
            .collect();
        let mut report = VerificationReport::new("quotient-projection")
            .param("a", self.a.to_string())
            .param("window", window)
            .param("degree", degree);
        report.record(gens.len() * vectors.len(), violations);
        report
    }

    /// On Ω monomials of degree `<= degree`, the projection has rank
    /// `2(degree+1)` and its kernel is spanned by `M_{y+a}` elements of the
    /// same degree.
    pub fn check_kernel(&self, degree: u32) -> Result<VerificationReport> {
        let kernel = self.kernel()?;
        let mut report =
            VerificationReport::new("quotient-kernel").param("a", self.a.to_string()).param("degree", degree);
        let mut violations = Vec::new();
        let monomials = ModuleElement::all_monomials(degree);
        let mut image = SpanBasis::new();
        for v in &monomials {
            image.insert(&self.project(v).to_sparse().expect("numeric projection"));
        }
        let full = 2 * (degree as usize + 1);
        if image.rank() != full {
            violations.push(Violation::new("rank of projection", image.rank(), full));
        }
        let span = if degree == 0 { Vec::new() } else { kernel.spanning_set(degree - 1) };
        let mut kernel_span = SpanBasis::new();
        for v in &span {
            if !self.project(v).is_zero() {
                violations.push(Violation::new(format!("project({v})"), self.project(v), 0));
            }
            let sparse: SparseVector<(Parity, u32, u32)> =
                v.poly().terms().map(|(&(i, j), c)| ((v.parity(), i, j), c.as_constant().expect("numeric"))).collect();
            kernel_span.insert(&sparse);
        }
        let nullity = monomials.len() - image.rank();
        if kernel_span.rank() != nullity {
            violations.push(Violation::new("dimension of kernel", kernel_span.rank(), nullity));
        }
        report.record(3 + span.len(), violations);
        Ok(report)
    }

    /// `Φ(X·v) = X·Φ(v)` for every generator in the window.
    pub fn check_phi_intertwining(
        &self,
        target: &QuotientModule,
        window: i64,
        degree: u32,
    ) -> Result<VerificationReport> {
        self.iso_phi(&QuotientElement::unit(Parity::Even), target)?;
        let gens = Algebra::R.basis(window);
        let vectors = QuotientElement::all_monomials(degree);
        let violations: Vec<Violation> = gens
            .par_iter()
            .flat_map_iter(|x| {
                vectors.iter().filter_map(move |v| {
                    let lhs = self.iso_phi(&self.act_basis(x, v), target).expect("checked");
                    let rhs = target.act_basis(x, &self.iso_phi(v, target).expect("checked"));
                    (lhs != rhs).then(|| Violation::new(format!("phi({x} on {v})"), lhs, rhs))
                })
            })
            .collect();
        let mut report = VerificationReport::new("phi-intertwining")
            .param("source", self.label())
            .param("target", target.label())
            .param("window", window)
            .param("degree", degree);
        report.record(gens.len() * vectors.len(), violations);
        Ok(report)
    }

    /// `X·Ξ(v) − Ξ(X·v) ∈ M_{(y+a)h̃}` for every generator in the window.
    pub fn check_xi_intertwining(&self, h_tilde: &DensePoly, window: i64, degree: u32) -> Result<VerificationReport> {
        let a = self.a_value().ok_or_else(|| Error::ParamMismatch("Xi needs a numeric a".into()))?;
        let h_tilde = h_tilde.monic().ok_or_else(|| Error::InvalidSubmodule("h~ must be nonzero".into()))?;
        let outer = SubmoduleSpec::m(DensePoly::linear_factor(&-&a).mul(&h_tilde))?;
        let gens = Algebra::R.basis(window);
        let vectors = QuotientElement::all_monomials(degree);
        let violations: Vec<Violation> = gens
            .par_iter()
            .flat_map_iter(|x| {
                let (outer, h_tilde) = (&outer, &h_tilde);
                vectors.iter().filter_map(move |v| {
                    let lhs = self.omega.act_basis(x, &self.iso_xi(v, h_tilde));
                    let rhs = self.iso_xi(&self.act_basis(x, v), h_tilde);
                    let diff = &lhs - &rhs;
                    (!outer.contains(&diff)).then(|| Violation::new(format!("{x} on xi({v}) mod {outer}"), lhs, rhs))
                })
            })
            .collect();
        let mut report = VerificationReport::new("xi-intertwining")
            .param("a", a.to_string())
            .param("h_tilde", h_tilde.to_string())
            .param("window", window)
            .param("degree", degree);
        report.record(gens.len() * vectors.len(), violations);
        Ok(report)
    }
}

impl Representation for QuotientModule {
    type Vector = QuotientElement;

    fn algebra(&self) -> Algebra {
        Algebra::R
    }

    fn act(&self, x: &AlgebraElement, v: &QuotientElement) -> Result<QuotientElement> {
        if x.algebra() != Algebra::R {
            return Err(Error::AlgebraMismatch { expected: Algebra::R, found: x.algebra() });
        }
        let parity = x.parity()?;
        let mut out = QuotientElement::zero(v.parity.plus(parity.unwrap_or(Parity::Even)));
        for (sym, c) in x.terms() {
            out = &out + &self.act_symbol(sym, v).scale(c);
        }
        Ok(out)
    }
}

/// Remainder of `v` on division by `h(y)` (even) or `h(t+1)` (odd): the
/// canonical representative of its class modulo `M_h`.
pub fn reduce_mod(v: &ModuleElement, h: &DensePoly) -> ModuleElement {
    let divisor = match v.parity() {
        Parity::Even => h.clone(),
        Parity::Odd => h.shift(&QuadExt::from_integer(1)),
    };
    ModuleElement::new(v.parity(), v.poly().div_rem_second(&divisor).1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(f: Family, m: i64) -> AlgebraElement {
        AlgebraElement::basis(BasisSymbol::at(Algebra::R, f, m))
    }

    fn q(text: &str, p: Parity) -> QuotientElement {
        QuotientElement::parse(text, p).unwrap()
    }

    fn s_a(a: i64) -> QuotientModule {
        QuotientModule::with_a(QuadExt::from_integer(a))
    }

    #[test]
    fn action_examples() {
        let s = s_a(1);
        assert_eq!(s.act(&gen(Family::L, 1), &q("x", Parity::Even)).unwrap(), q("lam*(x - 1/2)*(x + 1)", Parity::Even));
        assert_eq!(s.act(&gen(Family::H, 0), &q("1", Parity::Even)).unwrap(), q("-1", Parity::Even));
        let g = QuotientModule::formal().act(&gen(Family::GPlus, 0), &q("1", Parity::Odd)).unwrap();
        assert_eq!(g, q("2*alp^-1*x", Parity::Even));
        assert_eq!(g.parity(), Parity::Even);
    }

    #[test]
    fn projection_examples() {
        let s = s_a(1);
        let ev = |t: &str| ModuleElement::parse(t, Parity::Even).unwrap();
        assert!(s.project(&ev("y + 1")).is_zero());
        assert_eq!(s.project(&ev("x*y")), q("-x", Parity::Even));

        for (v, want) in [("s", "-2*lam^2*(s + 2)"), ("s*t", "4*lam^2*(s + 2)")] {
            let v = ModuleElement::parse(v, Parity::Odd).unwrap();
            let lhs = s.project(&s.omega().act(&gen(Family::H, 2), &v).unwrap());
            let rhs = s.act(&gen(Family::H, 2), &s.project(&v)).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(lhs, q(want, Parity::Odd));
        }
    }

    #[test]
    fn phi_examples() {
        let src = s_a(1);
        let dst =
            QuotientModule::new(Scalar::param(Param::Lam), Scalar::param(Param::Bet), Scalar::integer(1)).unwrap();
        assert_eq!(src.iso_phi(&q("x^2", Parity::Even), &dst).unwrap(), q("x^2", Parity::Even));
        assert_eq!(src.iso_phi(&q("s", Parity::Odd), &dst).unwrap(), q("bet*alp^-1*s", Parity::Odd));

        let wrong_a =
            QuotientModule::new(Scalar::param(Param::Lam), Scalar::param(Param::Bet), Scalar::integer(2)).unwrap();
        assert!(matches!(src.iso_phi(&q("1", Parity::Even), &wrong_a), Err(Error::ParamMismatch(_))));
        let wrong_lam =
            QuotientModule::new(Scalar::param(Param::Mu), Scalar::param(Param::Bet), Scalar::integer(1)).unwrap();
        assert!(matches!(src.check_phi_intertwining(&wrong_lam, 1, 1), Err(Error::ParamMismatch(_))));
        assert!(src.check_phi_intertwining(&dst, 2, 2).unwrap().passed());
    }

    #[test]
    fn xi_examples() {
        let s = s_a(1);
        let h_tilde = DensePoly::linear_factor(&QuadExt::from_integer(1));
        assert_eq!(s.iso_xi(&q("1", Parity::Even), &h_tilde), ModuleElement::parse("y - 1", Parity::Even).unwrap());
        let outer = SubmoduleSpec::m(DensePoly::linear_factor(&QuadExt::from_integer(-1)).mul(&h_tilde)).unwrap();
        let v = q("1", Parity::Even);
        let lhs = s.omega().act(&gen(Family::GMinus, 0), &s.iso_xi(&v, &h_tilde)).unwrap();
        let rhs = s.iso_xi(&s.act(&gen(Family::GMinus, 0), &v).unwrap(), &h_tilde);
        assert!(outer.contains(&(&lhs - &rhs)));
        assert!(s.check_xi_intertwining(&h_tilde, 2, 2).unwrap().passed());

        // h~ = 1 is a section of the projection
        let one = DensePoly::one();
        for v in QuotientElement::all_monomials(3) {
            assert_eq!(s.project(&s.iso_xi(&v, &one)), v);
        }
    }

    #[test]
    fn wrong_xi_is_caught() {
        // S(λ,α,1) does not sit inside M_{y-1}/M_{(y+2)(y-1)}
        let s = s_a(1);
        let h_tilde = DensePoly::linear_factor(&QuadExt::from_integer(1));
        let outer = SubmoduleSpec::m(DensePoly::linear_factor(&QuadExt::from_integer(-2)).mul(&h_tilde)).unwrap();
        let v = q("1", Parity::Even);
        let lhs = s.omega().act(&gen(Family::H, 0), &s.iso_xi(&v, &h_tilde)).unwrap();
        let rhs = s.iso_xi(&s.act(&gen(Family::H, 0), &v).unwrap(), &h_tilde);
        assert!(!outer.contains(&(&lhs - &rhs)));
    }

    #[test]
    fn axioms_and_kernel() {
        for a in [QuadExt::from_integer(0), QuadExt::ratio(3, 2), QuadExt::sqrt2()] {
            let s = QuotientModule::with_a(a);
            assert!(s.check_module_compatibility(2, 2).passed());
            assert!(s.check_projection(2, 2).passed());
            assert!(s.check_kernel(3).unwrap().passed());
        }
        assert!(QuotientModule::formal().check_module_compatibility(1, 2).passed());
        assert!(QuotientModule::formal().check_kernel(2).is_err());
    }

    #[test]
    fn canonical_representatives() {
        let h = DensePoly::new(vec![QuadExt::from_integer(-1), QuadExt::from_integer(0), QuadExt::from_integer(1)]);
        let v = ModuleElement::parse("x*y^3", Parity::Even).unwrap();
        assert_eq!(reduce_mod(&v, &h), ModuleElement::parse("x*y", Parity::Even).unwrap());
        // t^2 mod (t+1)^2 - 1 = t^2 + 2t
        let w = ModuleElement::parse("t^2", Parity::Odd).unwrap();
        assert_eq!(reduce_mod(&w, &h), ModuleElement::parse("-2*t", Parity::Odd).unwrap());
    }

    #[test]
    fn parse_rejects_second_variable() {
        assert!(QuotientElement::parse("x*y", Parity::Even).is_err());
        assert_eq!(q("s^2 + 1", Parity::Even).parity(), Parity::Odd);
    }
}
