//! Modules over the algebras and the bracket-compatibility sweep shared by
//! Ω(λ,α), the simple quotients and the N=1 restrictions.

use std::fmt;

use rayon::prelude::*;

use crate::algebra::{bracket_basis, Algebra, AlgebraElement, BasisSymbol};
use crate::error::Result;
use crate::report::Violation;

pub trait ModuleVector: Clone + PartialEq + fmt::Display + Send + Sync {
    /// `self + coef·other`.
    fn combine(&self, other: &Self, coef: i64) -> Self;
    fn is_zero(&self) -> bool;
}

pub trait Representation: Sync {
    type Vector: ModuleVector;

    fn algebra(&self) -> Algebra;

    fn act(&self, x: &AlgebraElement, v: &Self::Vector) -> Result<Self::Vector>;

    fn act_basis(&self, s: &BasisSymbol, v: &Self::Vector) -> Self::Vector {
        self.act(&AlgebraElement::basis(*s), v).expect("basis symbol of the acting algebra")
    }

    /// Applies `word[0] (word[1] (... word[n-1] v))`.
    fn act_word(&self, word: &[AlgebraElement], v: &Self::Vector) -> Result<Self::Vector> {
        let mut out = v.clone();
        for x in word.iter().rev() {
            out = self.act(x, &out)?;
        }
        Ok(out)
    }
}

/// Checks `[X,Y]·v = X·(Y·v) − (−1)^{|X||Y|} Y·(X·v)` for all ordered pairs
/// of `generators` and all `vectors`. Returns the number of identities
/// evaluated and the failures.
pub fn check_bracket_compatibility<M: Representation>(
    module: &M,
    generators: &[BasisSymbol],
    vectors: &[M::Vector],
) -> (usize, Vec<Violation>) {
    // Y·v for every generator Y and vector v
    let once: Vec<Vec<M::Vector>> =
        generators.par_iter().map(|y| vectors.iter().map(|v| module.act_basis(y, v)).collect()).collect();

    let pairs: Vec<(usize, usize)> =
        (0..generators.len()).flat_map(|i| (0..generators.len()).map(move |j| (i, j))).collect();

    let violations: Vec<Violation> = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            let (x, y) = (&generators[i], &generators[j]);
            let br = bracket_basis(x, y).expect("generators share the algebra");
            let sign = x.parity().sign(y.parity());
            let once = &once;
            vectors.iter().enumerate().filter_map(move |(k, v)| {
                let lhs = module.act(&br, v).expect("bracket stays in the algebra");
                let xy = module.act_basis(x, &once[j][k]);
                let yx = module.act_basis(y, &once[i][k]);
                let rhs = xy.combine(&yx, -sign);
                (lhs != rhs).then(|| Violation::new(format!("[{x}, {y}] on {v}"), lhs, rhs))
            })
        })
        .collect();
    (pairs.len() * vectors.len(), violations)
}
