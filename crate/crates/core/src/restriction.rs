//! `S(λ,α,a)` as a module over the centerless N=1 algebras, through
//! `Υ₂: 𝓛_m ↦ L_m, 𝒢_m ↦ (G⁺_m + G⁻_m)/√2` (Ramond) and `Υ₂∘Υ₁`
//! (Neveu-Schwarz, where `Υ₁` doubles indices).
//!
//! Over the Ramond N=1 algebra the restriction is free of rank 1 over
//! `ℂ[𝓛₀, 𝒢₀]` on `1_even`: `𝓛₀^k 1 = x^k` and `𝓛₀^k 𝒢₀ 1 = (α/√2) s^k`.
//! Read through `x ↔ x²` this is the change of basis `f(x²) ↦ f(x)`,
//! `x g(x²) ↦ (α/√2) g(s)` onto a rank-one module in a single variable.

use std::collections::BTreeSet;

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{Algebra, AlgebraElement, BasisSymbol, Family, Parity};
use crate::error::{Error, Result};
use crate::linalg::{SpanBasis, SparseVector};
use crate::maps::GeneratorMap;
use crate::quotient::{QuotientElement, QuotientModule};
use crate::report::{VerificationReport, Violation};
use crate::representation::{check_bracket_compatibility, Representation};
use crate::scalar::{QuadExt, Scalar};

#[derive(Clone, Debug)]
pub struct RestrictedAction {
    source: Algebra,
    embedding: GeneratorMap,
    module: QuotientModule,
}

impl RestrictedAction {
    pub fn new(source: Algebra, module: QuotientModule) -> Result<Self> {
        let embedding = match source {
            Algebra::N1R => GeneratorMap::upsilon2(),
            Algebra::N1NS => GeneratorMap::compose(&GeneratorMap::upsilon2(), &GeneratorMap::upsilon1())?,
            other => return Err(Error::AlgebraMismatch { expected: Algebra::N1R, found: other }),
        };
        Ok(RestrictedAction { source, embedding: embedding.with_mod_center(true), module })
    }

    pub fn source(&self) -> Algebra {
        self.source
    }

    pub fn embedding(&self) -> &GeneratorMap {
        &self.embedding
    }

    pub fn module(&self) -> &QuotientModule {
        &self.module
    }

    fn generator(&self, family: Family, twice_index: i64) -> AlgebraElement {
        AlgebraElement::basis(BasisSymbol::new(self.source, family, twice_index).expect("valid generator"))
    }

    fn params(&self, report: VerificationReport) -> VerificationReport {
        report.param("algebra", self.source.to_string()).param("a", self.module.a().to_string())
    }

    /// Bracket compatibility for all generator pairs in the window.
    pub fn check_n1_relations(&self, window: i64, degree: u32) -> VerificationReport {
        let gens = self.source.basis(window);
        let vectors = QuotientElement::all_monomials(degree);
        let (n, violations) = check_bracket_compatibility(self, &gens, &vectors);
        let mut report =
            self.params(VerificationReport::new("n1-relations")).param("window", window).param("degree", degree);
        report.record(n, violations);
        report
    }

    /// `𝒢₀(𝒢₀ v) = 𝓛₀ v`, i.e. `[𝒢₀,𝒢₀] = 2𝓛₀` on monomials.
    pub fn check_g0_square(&self, degree: u32) -> Result<VerificationReport> {
        self.require_ramond()?;
        let g0 = self.generator(Family::G, 0);
        let l0 = self.generator(Family::L, 0);
        let vectors = QuotientElement::all_monomials(degree);
        let violations: Vec<Violation> = vectors
            .iter()
            .filter_map(|v| {
                let lhs = self.act_word(&[g0.clone(), g0.clone()], v).expect("N=1 element");
                let rhs = self.act(&l0, v).expect("N=1 element");
                (lhs != rhs).then(|| Violation::new(format!("G[0] G[0] on {v}"), lhs, rhs))
            })
            .collect();
        let mut report = self.params(VerificationReport::new("g0-square")).param("degree", degree);
        report.record(vectors.len(), violations);
        Ok(report)
    }

    /// `𝓛₀^k 1_even = x^k` and `𝓛₀^k 𝒢₀ 1_even = (α/√2) s^k` for `k <=
    /// degree`: the free basis maps onto the monomial basis, up to units.
    pub fn check_rank1_freeness(&self, degree: u32) -> Result<VerificationReport> {
        self.require_ramond()?;
        let g0 = self.generator(Family::G, 0);
        let l0 = self.generator(Family::L, 0);
        let odd_unit = self.module.alp().scale(&QuadExt::inv_sqrt2());
        let mut violations = Vec::new();
        let mut even = QuotientElement::unit(Parity::Even);
        let mut odd = self.act(&g0, &even)?;
        for k in 0..=degree {
            let want_even = QuotientElement::monomial(Parity::Even, k);
            let want_odd = QuotientElement::monomial(Parity::Odd, k).scale(&odd_unit);
            if even != want_even {
                violations.push(Violation::new(format!("L[0]^{k} on 1_even"), &even, want_even));
            }
            if odd != want_odd {
                violations.push(Violation::new(format!("L[0]^{k} G[0] on 1_even"), &odd, want_odd));
            }
            even = self.act(&l0, &even)?;
            odd = self.act(&l0, &odd)?;
        }
        let mut report = self.params(VerificationReport::new("rank1-freeness")).param("degree", degree);
        report.record(2 * (degree as usize + 1), violations);
        Ok(report)
    }

    fn require_ramond(&self) -> Result<()> {
        if self.source != Algebra::N1R {
            return Err(Error::AlgebraMismatch { expected: Algebra::N1R, found: self.source });
        }
        Ok(())
    }
}

impl Representation for RestrictedAction {
    type Vector = QuotientElement;

    fn algebra(&self) -> Algebra {
        self.source
    }

    fn act(&self, x: &AlgebraElement, v: &QuotientElement) -> Result<QuotientElement> {
        if x.algebra() != self.source {
            return Err(Error::AlgebraMismatch { expected: self.source, found: x.algebra() });
        }
        x.parity()?;
        self.module.act(&self.embedding.apply(x)?, v)
    }
}

/// Bounds for [`check_simplicity_witness`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessBounds {
    pub degree: u32,
    pub word_length: u32,
    pub window: i64,
}

impl Default for WitnessBounds {
    fn default() -> Self {
        WitnessBounds { degree: 3, word_length: 3, window: 3 }
    }
}

fn sparse(v: &QuotientElement) -> SparseVector<(Parity, u32)> {
    v.to_sparse().expect("numeric specialization")
}

/// Evidence for simplicity of the restriction of `S(λ₀,α₀,a)`.
///
/// For `a ≠ 0`, the span of all generator words of length `<= word_length`
/// applied to each monomial of degree `<= degree` must contain every such
/// monomial; falling short is inconclusive. For `a = 0`, `xℂ[x] ⊕ ℂ[s]` is
/// checked to be a proper submodule closed under the window.
pub fn check_simplicity_witness(
    source: Algebra,
    a: &QuadExt,
    lam0: &QuadExt,
    alp0: &QuadExt,
    bounds: WitnessBounds,
) -> Result<VerificationReport> {
    let module = QuotientModule::new(
        Scalar::constant(lam0.clone()),
        Scalar::constant(alp0.clone()),
        Scalar::constant(a.clone()),
    )?;
    let r = RestrictedAction::new(source, module)?;
    let gens = source.basis(bounds.window);
    let targets = QuotientElement::all_monomials(bounds.degree);
    let mut report = VerificationReport::new("simplicity-witness")
        .param("algebra", source.to_string())
        .param("a", a.to_string())
        .param("lam0", lam0.to_string())
        .param("alp0", alp0.to_string())
        .param("degree", bounds.degree)
        .param("word_length", bounds.word_length)
        .param("window", bounds.window);

    if a.is_zero() {
        // xℂ[x] ⊕ ℂ[s]: even part without constant term
        let inside =
            |v: &QuotientElement| v.parity() == Parity::Odd || v.is_zero() || v.poly().coefficient(0).is_zero();
        let members: Vec<QuotientElement> =
            targets.iter().filter(|v| !(v.parity() == Parity::Even && v.poly().degree() == Some(0))).cloned().collect();
        let mut violations: Vec<Violation> = gens
            .par_iter()
            .flat_map_iter(|x| {
                let r = &r;
                members.iter().filter_map(move |v| {
                    let w = r.act_basis(x, v);
                    (!inside(&w)).then(|| Violation::new(format!("{x} on {v}"), w, "element of x*C[x] + C[s]"))
                })
            })
            .collect();
        let one = QuotientElement::unit(Parity::Even);
        if inside(&one) {
            violations.push(Violation::new("properness", one, "outside x*C[x] + C[s]"));
        }
        report.note("a = 0: x*C[x] + C[s] is a proper submodule");
        report.record(gens.len() * members.len() + 1, violations);
        return Ok(report);
    }

    let unreached: Vec<String> = targets
        .par_iter()
        .filter_map(|start| {
            let mut span = SpanBasis::new();
            span.insert(&sparse(start));
            let mut frontier = vec![start.clone()];
            for _ in 0..bounds.word_length {
                let mut next = Vec::new();
                for v in &frontier {
                    for x in &gens {
                        let w = r.act_basis(x, v);
                        if span.insert(&sparse(&w)) {
                            next.push(w);
                        }
                    }
                }
                frontier = next;
            }
            let missing: BTreeSet<String> =
                targets.iter().filter(|t| !span.contains(&sparse(t))).map(ToString::to_string).collect();
            (!missing.is_empty())
                .then(|| format!("from {start}: missing {}", missing.into_iter().collect::<Vec<_>>().join(", ")))
        })
        .collect();
    report.record(targets.len() * targets.len(), []);
    if unreached.is_empty() {
        report.note("every start monomial generates all monomials within the bounds");
    } else {
        for u in unreached {
            report.mark_inconclusive(u);
        }
    }
    Ok(report)
}
