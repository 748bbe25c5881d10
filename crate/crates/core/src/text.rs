//! Shared rendering of sums of products, e.g. `2*lam^2*alp^-1*x - 1/2*y`.

use num_traits::{One, Signed, Zero};

use crate::scalar::quad::fmt_rational;
use crate::scalar::Rational;

/// A rational coefficient times a product of already-rendered factors.
#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub coef: Rational,
    pub factors: Vec<String>,
}

pub(crate) fn power(name: &str, exp: i64) -> String {
    if exp == 1 {
        name.to_string()
    } else {
        format!("{name}^{exp}")
    }
}

fn unsigned_term(coef: &Rational, factors: &[String]) -> String {
    let product = factors.join("*");
    if factors.is_empty() {
        fmt_rational(coef)
    } else if coef.is_one() {
        product
    } else {
        format!("{}*{}", fmt_rational(coef), product)
    }
}

/// Joins terms with ` + ` / ` - `; zero terms are skipped and an empty sum
/// renders as `0`.
pub(crate) fn render_sum<I: IntoIterator<Item = Term>>(terms: I) -> String {
    let mut out = String::new();
    for t in terms {
        if t.coef.is_zero() {
            continue;
        }
        let neg = t.coef.is_negative();
        let body = unsigned_term(&t.coef.abs(), &t.factors);
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
