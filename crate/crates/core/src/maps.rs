//! Linear maps between the algebras, given on basis symbols: the spectral
//! flow NS → R, the topological twist NS → T, the isomorphism T → R, and the
//! N=1 embeddings NS₁ → R₁ → R/ℂC.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::algebra::{bracket, bracket_basis, Algebra, AlgebraElement, BasisSymbol, Family};
use crate::error::{Error, Result};
use crate::report::{VerificationReport, Violation};
use crate::scalar::{QuadExt, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardMap {
    /// Spectral flow NS → R.
    Sigma,
    /// Topological twist NS → T.
    Tau,
    /// T → R.
    TToR,
    /// N=1 Neveu-Schwarz → N=1 Ramond, `𝓛_m ↦ ½𝓛_{2m}`, `𝒢_r ↦ 𝒢_{2r}/√2`.
    Upsilon1,
    /// N=1 Ramond → R/ℂC, `𝒢_m ↦ (G⁺_m + G⁻_m)/√2`.
    Upsilon2,
}

impl StandardMap {
    pub const ALL: [StandardMap; 5] =
        [StandardMap::Sigma, StandardMap::Tau, StandardMap::TToR, StandardMap::Upsilon1, StandardMap::Upsilon2];

    pub fn name(self) -> &'static str {
        match self {
            StandardMap::Sigma => "sigma",
            StandardMap::Tau => "tau",
            StandardMap::TToR => "t2r",
            StandardMap::Upsilon1 => "upsilon1",
            StandardMap::Upsilon2 => "upsilon2",
        }
    }

    pub fn source(self) -> Algebra {
        match self {
            StandardMap::Sigma | StandardMap::Tau => Algebra::NS,
            StandardMap::TToR => Algebra::T,
            StandardMap::Upsilon1 => Algebra::N1NS,
            StandardMap::Upsilon2 => Algebra::N1R,
        }
    }

    pub fn target(self) -> Algebra {
        match self {
            StandardMap::Sigma | StandardMap::TToR | StandardMap::Upsilon2 => Algebra::R,
            StandardMap::Tau => Algebra::T,
            StandardMap::Upsilon1 => Algebra::N1R,
        }
    }

    fn image(self, s: &BasisSymbol) -> AlgebraElement {
        use Family::*;
        let tgt = self.target();
        let sym = |f: Family, twice: i64| BasisSymbol::new(tgt, f, twice).expect("image symbol is valid");
        let mut e = AlgebraElement::zero(tgt);
        let mut put = |f: Family, twice: i64, c: Scalar| e.add_term(sym(f, twice), c);
        let k = s.twice_index;
        let m = k / 2;
        let at_zero = |c: Scalar| if k == 0 { c } else { Scalar::zero() };
        match (self, s.family) {
            (_, C) => put(C, 0, Scalar::one()),

            (StandardMap::Sigma, L) => {
                put(L, k, Scalar::one());
                put(H, k, Scalar::ratio(1, 2));
                put(C, 0, at_zero(Scalar::ratio(1, 24)));
            }
            (StandardMap::Sigma, H) | (StandardMap::TToR, H) => {
                put(H, k, Scalar::one());
                put(C, 0, at_zero(Scalar::ratio(1, 6)));
            }
            // G±_r ↦ G±_{r±1/2}
            (StandardMap::Sigma, GPlus) => put(GPlus, k + 1, Scalar::one()),
            (StandardMap::Sigma, GMinus) => put(GMinus, k - 1, Scalar::one()),

            (StandardMap::Tau, L) => {
                put(L, k, Scalar::one());
                put(H, k, Scalar::ratio(-(m + 1), 2));
            }
            (StandardMap::Tau, H) => put(H, k, Scalar::one()),
            // G⁺_{n+1/2} ↦ G_n, G⁻_{n-1/2} ↦ Q_n
            (StandardMap::Tau, GPlus) => put(G, k - 1, Scalar::one()),
            (StandardMap::Tau, GMinus) => put(Q, k + 1, Scalar::one()),

            (StandardMap::TToR, L) => {
                put(L, k, Scalar::one());
                put(H, k, Scalar::ratio(m + 2, 2));
                put(C, 0, at_zero(Scalar::ratio(1, 8)));
            }
            (StandardMap::TToR, G) => put(GPlus, k + 2, Scalar::one()),
            (StandardMap::TToR, Q) => put(GMinus, k - 2, Scalar::one()),

            (StandardMap::Upsilon1, L) => put(L, 2 * k, Scalar::ratio(1, 2)),
            (StandardMap::Upsilon1, G) => put(G, 2 * k, Scalar::constant(QuadExt::inv_sqrt2())),

            (StandardMap::Upsilon2, L) => put(L, k, Scalar::one()),
            (StandardMap::Upsilon2, G) => {
                put(GPlus, k, Scalar::constant(QuadExt::inv_sqrt2()));
                put(GMinus, k, Scalar::constant(QuadExt::inv_sqrt2()));
            }
            _ => unreachable!("{} has no {:?} generators", self.source(), s.family),
        }
        e
    }
}

impl fmt::Display for StandardMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StandardMap {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        StandardMap::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown map `{s}` (expected sigma, tau, t2r, upsilon1 or upsilon2)"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Rule {
    Standard(StandardMap),
    /// `outer ∘ inner`
    Compose(Box<GeneratorMap>, Box<GeneratorMap>),
}

/// A homomorphism candidate given by the images of basis symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMap {
    source: Algebra,
    target: Algebra,
    rule: Rule,
    /// Compare images in the quotient by the center.
    mod_center: bool,
}

impl GeneratorMap {
    pub fn standard(map: StandardMap) -> Self {
        GeneratorMap {
            source: map.source(),
            target: map.target(),
            rule: Rule::Standard(map),
            mod_center: map == StandardMap::Upsilon2,
        }
    }

    pub fn sigma() -> Self {
        Self::standard(StandardMap::Sigma)
    }

    pub fn tau() -> Self {
        Self::standard(StandardMap::Tau)
    }

    pub fn t_to_r() -> Self {
        Self::standard(StandardMap::TToR)
    }

    pub fn upsilon1() -> Self {
        Self::standard(StandardMap::Upsilon1)
    }

    pub fn upsilon2() -> Self {
        Self::standard(StandardMap::Upsilon2)
    }

    /// `outer ∘ inner`; errors unless `inner`'s target is `outer`'s source.
    pub fn compose(outer: &GeneratorMap, inner: &GeneratorMap) -> Result<Self> {
        if inner.target != outer.source {
            return Err(Error::AlgebraMismatch { expected: outer.source, found: inner.target });
        }
        Ok(GeneratorMap {
            source: inner.source,
            target: outer.target,
            rule: Rule::Compose(Box::new(outer.clone()), Box::new(inner.clone())),
            mod_center: outer.mod_center || inner.mod_center,
        })
    }

    pub fn with_mod_center(mut self, mod_center: bool) -> Self {
        self.mod_center = mod_center;
        self
    }

    pub fn source(&self) -> Algebra {
        self.source
    }

    pub fn target(&self) -> Algebra {
        self.target
    }

    pub fn mod_center(&self) -> bool {
        self.mod_center
    }

    pub fn name(&self) -> String {
        match &self.rule {
            Rule::Standard(m) => m.name().to_string(),
            Rule::Compose(o, i) => format!("{}∘{}", o.name(), i.name()),
        }
    }

    pub fn image(&self, s: &BasisSymbol) -> Result<AlgebraElement> {
        if s.algebra != self.source {
            return Err(Error::AlgebraMismatch { expected: self.source, found: s.algebra });
        }
        let e = match &self.rule {
            Rule::Standard(m) => m.image(s),
            Rule::Compose(outer, inner) => outer.apply(&inner.image(s)?)?,
        };
        Ok(if self.mod_center { e.drop_center() } else { e })
    }

    /// Linear extension to arbitrary elements of the source algebra.
    pub fn apply(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        if x.algebra() != self.source {
            return Err(Error::AlgebraMismatch { expected: self.source, found: x.algebra() });
        }
        let mut out = AlgebraElement::zero(self.target);
        for (s, c) in x.terms() {
            out = &out + &self.image(s)?.scale(c);
        }
        Ok(out)
    }
}

/// `f([x,y]) = [f(x), f(y)]` for all basis pairs in the window, modulo the
/// center when the map says so.
pub fn check_homomorphism(map: &GeneratorMap, window: i64) -> VerificationReport {
    let basis = map.source.basis(window);
    let violations: Vec<Violation> = basis
        .par_iter()
        .flat_map_iter(|x| {
            basis.iter().filter_map(move |y| {
                let lhs = map.apply(&bracket_basis(x, y).expect("same algebra")).expect("source element");
                let rhs = bracket(&map.image(x).expect("source"), &map.image(y).expect("source"))
                    .expect("images are homogeneous");
                let (lhs, rhs) = if map.mod_center { (lhs.drop_center(), rhs.drop_center()) } else { (lhs, rhs) };
                (lhs != rhs).then(|| Violation::new(format!("[{x}, {y}]"), lhs, rhs))
            })
        })
        .collect();
    let mut report = VerificationReport::new("homomorphism")
        .param("map", map.name())
        .param("window", window)
        .param("mod_center", map.mod_center);
    report.record(basis.len().pow(2), violations);
    report
}

/// `f(x) = g(x)` on every basis symbol in the window.
pub fn check_maps_agree(f: &GeneratorMap, g: &GeneratorMap, window: i64) -> VerificationReport {
    let mut report = VerificationReport::new("map-agreement")
        .param("left", f.name())
        .param("right", g.name())
        .param("window", window);
    if f.source != g.source || f.target != g.target {
        report.record(
            1,
            [Violation::new("signature", format!("{}→{}", f.source, f.target), format!("{}→{}", g.source, g.target))],
        );
        return report;
    }
    let basis = f.source.basis(window);
    let violations: Vec<Violation> = basis
        .iter()
        .filter_map(|x| {
            let (a, b) = (f.image(x).expect("source"), g.image(x).expect("source"));
            (a != b).then(|| Violation::new(x.to_string(), a, b))
        })
        .collect();
    report.record(basis.len(), violations);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use Family::*;

    #[test]
    fn sigma_on_l0() {
        let l0 = BasisSymbol::at(Algebra::NS, L, 0);
        let img = GeneratorMap::sigma().image(&l0).unwrap();
        assert_eq!(img.to_string(), "L[0] + 1/2*H[0] + 1/24*C");
    }

    #[test]
    fn t2r_on_l1() {
        let l1 = BasisSymbol::at(Algebra::T, L, 1);
        assert_eq!(GeneratorMap::t_to_r().image(&l1).unwrap().to_string(), "L[1] + 3/2*H[1]");
    }

    #[test]
    fn upsilon2_on_g2() {
        let g2 = BasisSymbol::at(Algebra::N1R, G, 2);
        let img = GeneratorMap::upsilon2().image(&g2).unwrap();
        let h = Scalar::constant(QuadExt::inv_sqrt2());
        let want = &AlgebraElement::term(BasisSymbol::at(Algebra::R, GPlus, 2), h.clone())
            + &AlgebraElement::term(BasisSymbol::at(Algebra::R, GMinus, 2), h);
        assert_eq!(img, want);
    }

    #[test]
    fn spectral_flow_shifts_odd_indices() {
        let gp = BasisSymbol::new(Algebra::NS, GPlus, 1).unwrap();
        let gm = BasisSymbol::new(Algebra::NS, GMinus, 1).unwrap();
        assert_eq!(GeneratorMap::sigma().image(&gp).unwrap().to_string(), "Gp[1]");
        assert_eq!(GeneratorMap::sigma().image(&gm).unwrap().to_string(), "Gm[0]");
    }

    #[test]
    fn apply_rejects_foreign_elements() {
        let x = AlgebraElement::basis(BasisSymbol::at(Algebra::R, L, 0));
        assert!(matches!(GeneratorMap::sigma().apply(&x), Err(Error::AlgebraMismatch { .. })));
        assert!(GeneratorMap::compose(&GeneratorMap::sigma(), &GeneratorMap::upsilon1()).is_err());
    }

    #[test]
    fn upsilon2_needs_mod_center() {
        let strict = GeneratorMap::upsilon2().with_mod_center(false);
        let r = check_homomorphism(&strict, 1);
        assert!(!r.passed());
        assert!(r.violations.iter().any(|v| v.context == "[G[1], G[-1]]"), "{:?}", r.violations);
        assert!(check_homomorphism(&GeneratorMap::upsilon2(), 1).passed());
    }

    #[test]
    fn composite_upsilon() {
        let both = GeneratorMap::compose(&GeneratorMap::upsilon2(), &GeneratorMap::upsilon1()).unwrap();
        let g = BasisSymbol::new(Algebra::N1NS, G, 1).unwrap();
        // G_{1/2} ↦ (G+_1 + G-_1)/2
        assert_eq!(both.image(&g).unwrap().to_string(), "1/2*Gp[1] + 1/2*Gm[1]");
        assert!(check_homomorphism(&both, 2).passed());
    }
}
