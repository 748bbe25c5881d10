//! Submodules of Ω(λ,α):
//!
//! ```text
//! M_h = h(y) ℂ[x,y] ⊕ h(t+1) ℂ[s,t]
//! N_h = h(y) (x ℂ[x,y] + y ℂ[x,y]) ⊕ h(t+1) ℂ[s,t]
//! ```
//!
//! for a monic `h` over ℚ(√2).

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use rayon::prelude::*;

use crate::algebra::{Algebra, Parity};
use crate::error::{Error, Result};
use crate::omega::{ModuleElement, Omega};
use crate::poly::{DensePoly, Poly2};
use crate::report::{VerificationReport, Violation};
use crate::representation::Representation;
use crate::scalar::QuadExt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubmoduleKind {
    M,
    N,
}

impl SubmoduleKind {
    pub fn name(self) -> &'static str {
        match self {
            SubmoduleKind::M => "M",
            SubmoduleKind::N => "N",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubmoduleSpec {
    kind: SubmoduleKind,
    h: DensePoly,
}

impl SubmoduleSpec {
    /// Normalizes `h` to be monic; the zero polynomial is rejected.
    pub fn new(kind: SubmoduleKind, h: DensePoly) -> Result<Self> {
        let h = h.monic().ok_or_else(|| Error::InvalidSubmodule("h must be nonzero".into()))?;
        Ok(SubmoduleSpec { kind, h })
    }

    pub fn m(h: DensePoly) -> Result<Self> {
        Self::new(SubmoduleKind::M, h)
    }

    pub fn n(h: DensePoly) -> Result<Self> {
        Self::new(SubmoduleKind::N, h)
    }

    /// Roots `r₁, …` give `h = (y − r₁)⋯`.
    pub fn m_from_roots(roots: &[QuadExt]) -> Self {
        let h = roots.iter().fold(DensePoly::one(), |acc, r| acc.mul(&DensePoly::linear_factor(r)));
        SubmoduleSpec { kind: SubmoduleKind::M, h }
    }

    pub fn kind(&self) -> SubmoduleKind {
        self.kind
    }

    pub fn h(&self) -> &DensePoly {
        &self.h
    }

    /// `h(t+1)`, the odd-part divisor.
    pub fn odd_divisor(&self) -> DensePoly {
        self.h.shift(&QuadExt::one())
    }

    fn h_poly(&self) -> Poly2 {
        Poly2::from_second(&self.h)
    }

    /// Generators of the submodule as a ℂ[x,y] ⊕ ℂ[s,t]-module.
    pub fn generators(&self) -> Vec<ModuleElement> {
        let hy = self.h_poly();
        let mut gens = match self.kind {
            SubmoduleKind::M => vec![ModuleElement::new(Parity::Even, hy)],
            SubmoduleKind::N => vec![
                ModuleElement::new(Parity::Even, &Poly2::first() * &hy),
                ModuleElement::new(Parity::Even, &Poly2::second() * &hy),
            ],
        };
        gens.push(ModuleElement::new(Parity::Odd, Poly2::from_second(&self.odd_divisor())));
        gens
    }

    /// Generators times every monomial of total degree `<= degree`.
    pub fn spanning_set(&self, degree: u32) -> Vec<ModuleElement> {
        let gens = self.generators();
        gens.iter()
            .flat_map(|g| {
                ModuleElement::monomials(g.parity(), degree)
                    .into_iter()
                    .map(move |m| ModuleElement::new(g.parity(), g.poly() * m.poly()))
            })
            .collect()
    }

    pub fn contains(&self, v: &ModuleElement) -> bool {
        match v.parity() {
            Parity::Odd => v.poly().div_rem_second(&self.odd_divisor()).1.is_zero(),
            Parity::Even => {
                let (q, r) = v.poly().div_rem_second(&self.h);
                r.is_zero() && (self.kind == SubmoduleKind::M || q.coefficient(0, 0).is_zero())
            }
        }
    }

    /// Checks that every generator in the window maps the spanning set up
    /// to `degree` back into the submodule.
    pub fn check_closure(&self, window: i64, degree: u32) -> VerificationReport {
        let omega = Omega::formal();
        let gens = Algebra::R.basis(window);
        let span = self.spanning_set(degree);
        let violations: Vec<Violation> = gens
            .par_iter()
            .flat_map_iter(|x| {
                let omega = &omega;
                span.iter().filter_map(move |v| {
                    let w = omega.act_basis(x, v);
                    (!self.contains(&w)).then(|| Violation::new(format!("{x} on {v}"), w, format!("element of {self}")))
                })
            })
            .collect();
        let mut report = VerificationReport::new("submodule-closure")
            .param("spec", self.to_string())
            .param("window", window)
            .param("degree", degree);
        report.record(gens.len() * span.len(), violations);
        report
    }

    /// `self ⊆ outer`, decided on module generators (both sides are
    /// ℂ[x,y] ⊕ ℂ[s,t]-submodules).
    pub fn is_contained_in(&self, outer: &SubmoduleSpec) -> bool {
        self.generators().iter().all(|g| outer.contains(g))
    }
}

pub fn check_containment(inner: &SubmoduleSpec, outer: &SubmoduleSpec) -> bool {
    inner.is_contained_in(outer)
}

/// Closure of `M_h` and `N_h` for every `h` in `hs`, the inclusions
/// `N_h ⊆ M_h` and `M_{h h'} ⊆ M_h`, strictness of `M_{h h'} ⊂ M_h` when
/// `deg h' > 0`, and properness of `M_y` (`1_even ∉ M_y`).
pub fn check_lattice_battery(hs: &[DensePoly], window: i64, degree: u32) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("submodule").param("window", window).param("degree", degree);
    let mut specs = Vec::new();
    for h in hs {
        specs.push((SubmoduleSpec::m(h.clone())?, SubmoduleSpec::n(h.clone())?));
    }
    for (m, n) in &specs {
        report.absorb(m.check_closure(window, degree));
        report.absorb(n.check_closure(window, degree));
    }
    let mut violations = Vec::new();
    let mut count = 0;
    for (m, n) in &specs {
        count += 1;
        if !n.is_contained_in(m) {
            violations.push(Violation::new("containment", n, format!("subset of {m}")));
        }
        for (other, _) in &specs {
            let product = SubmoduleSpec::m(m.h().mul(other.h()))?;
            count += 1;
            if !product.is_contained_in(m) {
                violations.push(Violation::new("containment", &product, format!("subset of {m}")));
            }
            if other.h().degree() > 0 {
                count += 1;
                let witness = ModuleElement::new(Parity::Even, Poly2::from_second(m.h()));
                if product.contains(&witness) {
                    violations.push(Violation::new("strictness", witness, format!("outside {product}")));
                }
            }
        }
    }
    let m_y = SubmoduleSpec::m(DensePoly::linear_factor(&QuadExt::from_integer(0)))?;
    let one = ModuleElement::unit(Parity::Even);
    let y = ModuleElement::new(Parity::Even, Poly2::second());
    count += 2;
    if m_y.contains(&one) {
        violations.push(Violation::new("properness", one, format!("outside {m_y}")));
    }
    if !m_y.contains(&y) {
        violations.push(Violation::new("nonzero", y, format!("inside {m_y}")));
    }
    report.record(count, violations);
    Ok(report)
}

impl fmt::Display for SubmoduleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[h={}]", self.kind.name(), self.h.render("y").replace(' ', ""))
    }
}

/// Accepts `M[h=y^2-1]` or `N[h=1]`.
impl FromStr for SubmoduleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidSubmodule(format!("expected M[h=...] or N[h=...], got `{s}`"));
        let kind = match s.chars().next() {
            Some('M') => SubmoduleKind::M,
            Some('N') => SubmoduleKind::N,
            _ => return Err(bad()),
        };
        let body = s[1..].trim().strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(bad)?;
        let expr =
            body.trim().strip_prefix("h").map(str::trim_start).and_then(|b| b.strip_prefix('=')).ok_or_else(bad)?;
        let h = crate::expr::parse_y_polynomial(expr)?;
        Self::new(kind, h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn spec(s: &str) -> SubmoduleSpec {
        s.parse().unwrap()
    }

    fn even(s: &str) -> ModuleElement {
        ModuleElement::parse(s, Parity::Even).unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(spec("M[h=y]").contains(&even("x*y")));
        assert!(!spec("M[h=y]").contains(&even("x")));
        let n1 = spec("N[h=1]");
        assert!(!n1.contains(&even("1")));
        assert!(n1.contains(&even("x")));
        assert!(n1.contains(&even("y")));
        let odd = ModuleElement::parse("(t+2)*s", Parity::Odd).unwrap();
        assert!(spec("M[h=y+1]").contains(&odd));
    }

    #[test]
    fn parse_and_render() {
        let s = spec("M[h=2*y^2-2]");
        assert_eq!(s.to_string(), "M[h=y^2-1]");
        assert_eq!(spec(" N [ h = 1 ] ").to_string(), "N[h=1]");
        assert!("M[h=0]".parse::<SubmoduleSpec>().is_err());
        assert!("M[h=lam*y]".parse::<SubmoduleSpec>().is_err());
        assert!("K[h=y]".parse::<SubmoduleSpec>().is_err());
        assert!("M[h=x]".parse::<SubmoduleSpec>().is_err());
    }

    #[test]
    fn containments() {
        assert!(check_containment(&spec("N[h=y+1]"), &spec("M[h=y+1]")));
        assert!(!check_containment(&spec("M[h=y+1]"), &spec("N[h=y+1]")));
        assert!(check_containment(&spec("M[h=y^2-1]"), &spec("M[h=y+1]")));
        assert!(!check_containment(&spec("M[h=y+1]"), &spec("M[h=y-1]")));
        assert!(check_containment(&spec("M[h=y]"), &spec("N[h=1]")));
    }

    #[test]
    fn closure_small() {
        for s in ["M[h=1]", "N[h=1]", "M[h=y+1]", "N[h=y-2]"] {
            let r = spec(s).check_closure(2, 2);
            assert!(r.passed(), "{s}: {:?}", r.violations);
        }
    }

    #[test]
    fn small_battery() {
        let hs: Vec<DensePoly> =
            ["1", "y", "y^2 - 1"].iter().map(|h| crate::expr::parse_y_polynomial(h).unwrap()).collect();
        let r = check_lattice_battery(&hs, 1, 1).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
    }

    #[test]
    fn maximal_chain_is_strict() {
        let big = spec("M[h=y^2-1]");
        let mid = spec("M[h=y-1]");
        assert!(big.is_contained_in(&mid));
        assert!(!big.contains(&even("y-1")));
        assert!(mid.contains(&even("y-1")));
        assert!(!mid.contains(&even("1")));
    }

    #[test]
    fn quotient_dimension_counts() {
        // even classes of Ω/M_h with x-degree <= d: remainders of degree < n in y
        for (s, n) in [("M[h=y]", 1usize), ("M[h=y^2-1]", 2), ("M[h=y^3+y]", 3)] {
            let h = spec(s);
            for d in 0..3u32 {
                let mut classes = std::collections::BTreeSet::new();
                for i in 0..=d {
                    for j in 0..6u32 {
                        let v = Poly2::monomial(i, j, Scalar::one());
                        let r = v.div_rem_second(h.h()).1;
                        for ((a, b), _) in r.terms() {
                            classes.insert((*a, *b));
                        }
                    }
                }
                assert_eq!(classes.len(), n * (d as usize + 1), "{s} d={d}");
            }
        }
    }
}
