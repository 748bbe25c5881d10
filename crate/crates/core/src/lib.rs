//! Exact symbolic computations with the untwisted N=2 superconformal
//! algebras and their U(h)-free modules of rank 2.
//!
//! The crate builds the Ramond, Neveu-Schwarz and topological N=2 algebras
//! (and the centerless N=1 algebras) from their structure constants, the
//! module Ω(λ,α) = ℂ[x,y] ⊕ ℂ[s,t], its submodules `M_h`, `N_h`, the simple
//! quotients `S(λ,α,a)`, and checkers that verify every identity exactly
//! over ℚ(√2)-coefficient Laurent polynomials in the formal parameters.

pub mod algebra;
pub mod error;
pub mod expr;
pub mod lattice;
pub mod linalg;
pub mod maps;
pub mod omega;
pub mod poly;
pub mod quotient;
pub mod report;
pub mod representation;
pub mod restriction;
pub mod scalar;
pub mod series;
mod text;

pub use algebra::{bracket, Algebra, AlgebraElement, BasisSymbol, Family, Parity};
pub use error::{Error, ParseError, Result};
pub use lattice::{check_containment, check_lattice_battery, SubmoduleKind, SubmoduleSpec};
pub use maps::{check_homomorphism, GeneratorMap, StandardMap};
pub use omega::{ModuleElement, Omega};
pub use quotient::{QuotientElement, QuotientModule};
pub use report::{Status, VerificationReport, Violation};
pub use representation::{ModuleVector, Representation};
pub use restriction::{check_simplicity_witness, RestrictedAction, WitnessBounds};
pub use scalar::{Param, ParamValues, QuadExt, Rational, Scalar};
pub use series::{find_roots, CompositionSeries};
