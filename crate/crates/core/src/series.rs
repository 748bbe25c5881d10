//! Composition series of `Ω(λ,α)/M_h` for `h` splitting over ℚ(√2).
//!
//! With `h = (y − r₁)⋯(y − r_n)` and `h_i = (y − r₁)⋯(y − r_i)`, the chain
//! `Ω = M_1 ⊃ M_{h_1} ⊃ ⋯ ⊃ M_{h_n}` has factors
//! `M_{h_{i−1}}/M_{h_i} ≅ S(λ,α,−r_i)` via `Ξ` with `h̃ = h_{i−1}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::Parity;
use crate::error::{Error, Result};
use crate::lattice::SubmoduleSpec;
use crate::omega::ModuleElement;
use crate::poly::{DensePoly, Poly2};
use crate::quotient::QuotientModule;
use crate::report::{VerificationReport, Violation};
use crate::scalar::{QuadExt, Rational};

fn integer(n: BigInt) -> QuadExt {
    QuadExt::from_rational(Rational::from_integer(n))
}

/// Give up on exhaustive candidate search beyond this many trials.
const SEARCH_LIMIT: u64 = 50_000_000;

/// Prime factorization by trial division.
fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Positive divisors of `n > 0`, or `None` if `n` is too large to factor by
/// trial division.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pk = 1u64;
            for _ in 0..=e {
                next.push(d * pk);
                pk *= p;
            }
        }
        out = next;
    }
    out.sort_unstable();
    Some(out.into_iter().map(BigInt::from).collect())
}

/// Smallest `D` with `c_k D^(n−k)` integral for every `k < n`.
fn integral_scale(coeffs: &[Rational]) -> Option<BigInt> {
    let n = coeffs.len() - 1;
    let mut d = BigInt::one();
    for (k, c) in coeffs.iter().enumerate().take(n) {
        let den = c.denom().to_u64()?;
        if den > 1_000_000_000_000 {
            return None;
        }
        let span = (n - k) as u32;
        let r: u64 = factorize(den).into_iter().map(|(p, e)| p.pow(e.div_ceil(span))).product();
        d = d.lcm(&BigInt::from(r));
    }
    Some(d)
}

/// `h · h̄`, which has rational coefficients.
fn norm_poly(h: &DensePoly) -> Vec<Rational> {
    let n = if h.is_rational() { h.clone() } else { h.mul(&h.conjugate()) };
    n.coeffs().iter().map(|c| c.rational_part().clone()).collect()
}

/// Candidate roots of a monic rational polynomial in ℚ(√2).
///
/// Substituting `y = z/D` gives a monic integer polynomial whose roots in
/// ℚ(√2) lie in ℤ[√2]: integers dividing the constant term, or conjugate
/// pairs `p ± q√2` whose norm `p² − 2q²` divides it, with `|p|` below a
/// root bound.
fn candidates(coeffs: &[Rational]) -> Option<Vec<QuadExt>> {
    let n = coeffs.len() - 1;
    let d = integral_scale(coeffs)?;
    let mut ints: Vec<BigInt> = Vec::with_capacity(n + 1);
    let mut scale = BigInt::one();
    for k in (0..=n).rev() {
        let c = &coeffs[k] * Rational::from_integer(scale.clone());
        ints.push(c.to_integer());
        scale *= &d;
    }
    ints.reverse();

    let mut out = Vec::new();
    let zeros = ints.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        out.push(integer(BigInt::zero()));
    }
    let ints = &ints[zeros..];
    if ints.len() > 1 {
        // Fujiwara: every root has |z| <= 2 max |c_{m-k}|^(1/k)
        let m = ints.len() - 1;
        let bound = (1..=m)
            .map(|k| ints[m - k].to_f64().unwrap_or(f64::INFINITY).abs().powf(1.0 / k as f64))
            .fold(0.0, f64::max);
        let b = (2.0 * bound).ceil() + 1.0;
        if !b.is_finite() || b > 1e9 {
            return None;
        }
        let b = b as u64;
        let divs = divisors(&ints[0].abs())?;
        if (divs.len() as u64).saturating_mul(2 * b + 1) > SEARCH_LIMIT {
            return None;
        }
        let b = b as i64;
        for dv in &divs {
            out.push(integer(dv.clone()));
            out.push(integer(-dv));
        }
        let two = BigInt::from(2);
        for dv in &divs {
            for c in [dv.clone(), -dv] {
                for p in 0..=b {
                    let r = BigInt::from(p) * BigInt::from(p) - &c;
                    if !r.is_positive() || r.is_odd() {
                        continue;
                    }
                    let half = &r / &two;
                    let q = half.sqrt();
                    if &q * &q != half {
                        continue;
                    }
                    for sp in [p, -p] {
                        for sq in [q.clone(), -&q] {
                            out.push(QuadExt::new(Rational::from_integer(sp.into()), Rational::from_integer(sq)));
                        }
                    }
                }
            }
        }
    }
    let dq = QuadExt::from_rational(Rational::from_integer(d));
    let inv = dq.inverse().expect("nonzero");
    let mut roots: Vec<QuadExt> = out.into_iter().map(|z| &z * &inv).collect();
    roots.sort();
    roots.dedup();
    Some(roots)
}

/// All roots of `h` in ℚ(√2) with multiplicity, largest first, or `None` if
/// `h` does not split into linear factors over ℚ(√2).
pub fn find_roots(h: &DensePoly) -> Option<Vec<QuadExt>> {
    let h = h.monic()?;
    if h.degree() == 0 {
        return Some(Vec::new());
    }
    let mut rest = h.clone();
    let mut roots = Vec::new();
    for r in candidates(&norm_poly(&h))? {
        while let Some(next) = rest.deflate(&r) {
            roots.push(r.clone());
            rest = next;
        }
    }
    if rest.degree() > 0 {
        return None;
    }
    roots.sort_by(|a, b| b.to_f64().total_cmp(&a.to_f64()));
    Some(roots)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompositionSeries {
    h: DensePoly,
    roots: Vec<QuadExt>,
    chain: Vec<SubmoduleSpec>,
}

/// One step `outer ⊃ inner` with `outer/inner ≅ S(λ,α,a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Link {
    pub outer: Option<SubmoduleSpec>,
    pub inner: SubmoduleSpec,
    pub factor: QuadExt,
}

impl Link {
    pub fn outer_label(&self) -> String {
        self.outer.as_ref().map_or_else(|| "Omega".to_string(), |s| s.to_string())
    }
}

/// `S(lam,alp,a)` for a numeric `a`.
pub fn factor_label(a: &QuadExt) -> String {
    QuotientModule::with_a(a.clone()).label()
}

impl CompositionSeries {
    /// Builds the chain from `root_hint` in the given order, or from an
    /// exact root search.
    pub fn new(h: &DensePoly, root_hint: Option<&[QuadExt]>) -> Result<Self> {
        let h = h.monic().ok_or_else(|| Error::InvalidSubmodule("h must be nonzero".into()))?;
        let unsplit = || Error::UnsplitPolynomial(h.to_string());
        let roots = match root_hint {
            Some(hint) => {
                let mut rest = h.clone();
                for r in hint {
                    rest = rest.deflate(r).ok_or_else(unsplit)?;
                }
                if rest.degree() > 0 {
                    return Err(unsplit());
                }
                hint.to_vec()
            }
            None => find_roots(&h).ok_or_else(unsplit)?,
        };
        let chain = (1..=roots.len()).map(|i| SubmoduleSpec::m_from_roots(&roots[..i])).collect();
        Ok(CompositionSeries { h, roots, chain })
    }

    pub fn h(&self) -> &DensePoly {
        &self.h
    }

    pub fn roots(&self) -> &[QuadExt] {
        &self.roots
    }

    /// `M_{h_1} ⊃ ⋯ ⊃ M_{h_n}`.
    pub fn chain(&self) -> &[SubmoduleSpec] {
        &self.chain
    }

    /// The `a` of each factor `S(λ,α,a)`, in chain order.
    pub fn factors(&self) -> Vec<QuadExt> {
        self.roots.iter().map(|r| -r).collect()
    }

    /// Factor parameters sorted, for comparing series up to reordering.
    pub fn factor_multiset(&self) -> Vec<QuadExt> {
        let mut f = self.factors();
        f.sort();
        f
    }

    pub fn links(&self) -> Vec<Link> {
        (0..self.chain.len())
            .map(|i| Link {
                outer: i.checked_sub(1).map(|j| self.chain[j].clone()),
                inner: self.chain[i].clone(),
                factor: -&self.roots[i],
            })
            .collect()
    }

    /// Per link: containment, strictness, and `Ξ` intertwining modulo the
    /// inner submodule at the given bounds.
    pub fn verify_links(&self, window: i64, degree: u32) -> Vec<VerificationReport> {
        self.links()
            .par_iter()
            .map(|link| {
                let h_tilde = link.outer.as_ref().map_or_else(DensePoly::one, |s| s.h().clone());
                let outer = SubmoduleSpec::m(h_tilde.clone()).expect("monic");
                let mut report = VerificationReport::new("composition-link")
                    .param("outer", link.outer_label())
                    .param("inner", link.inner.to_string())
                    .param("factor", factor_label(&link.factor));
                let mut violations = Vec::new();
                if !link.inner.is_contained_in(&outer) {
                    violations.push(Violation::new("containment", link.inner.to_string(), link.outer_label()));
                }
                let witness = ModuleElement::new(Parity::Even, Poly2::from_second(&h_tilde));
                if link.inner.contains(&witness) {
                    violations.push(Violation::new("strictness", witness, link.inner.to_string()));
                }
                report.record(2, violations);
                let xi = QuotientModule::with_a(link.factor.clone())
                    .check_xi_intertwining(&h_tilde, window, degree)
                    .expect("numeric a");
                report.absorb(xi);
                report
            })
            .collect()
    }

    /// All link reports folded into one.
    pub fn verify(&self, window: i64, degree: u32) -> VerificationReport {
        let mut report = VerificationReport::new("composition-series")
            .param("h", self.h.to_string())
            .param("window", window)
            .param("degree", degree);
        report.record(0, []);
        for link in self.verify_links(window, degree) {
            report.absorb(link);
        }
        report
    }

    pub fn to_json(&self) -> Value {
        json!({
            "h": self.h.to_string(),
            "roots": self.roots.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "chain": self.chain.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "factors": self.factors().iter().map(factor_label).collect::<Vec<_>>(),
        })
    }
}
