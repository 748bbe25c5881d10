//! Text grammar for scalars, polynomials and algebra elements.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := atom ('^' '-'? integer)?
//! atom    := integer | ident ('[' index ']')? | '(' sum ')'
//! ```
//!
//! Identifiers are interpreted by the target domain: `lam alp mu bet a b
//! sqrt2` everywhere, `x y` / `s t` in polynomials, `L H Gp Gm G Q C` in
//! algebra elements.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::{Algebra, AlgebraElement, BasisSymbol, Family, Parity};
use crate::error::ParseError;
use crate::poly::{DensePoly, Poly2};
use crate::scalar::{Param, QuadExt, Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String, Option<(String, usize)>),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: usize,
    text: String,
}

fn err(pos: usize, token: &str, message: impl Into<String>) -> ParseError {
    ParseError { position: pos, token: token.to_string(), message: message.into() }
}

fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            i += 1;
            out.push(Token { tok, pos: start, text: c.to_string() });
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let text = &src[start..i];
            let n: BigInt = text.parse().expect("digits");
            out.push(Token { tok: Tok::Num(n), pos: start, text: text.to_string() });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let name = src[start..i].to_string();
            let mut index = None;
            if i < bytes.len() && bytes[i] == b'[' {
                let open = i;
                let close =
                    src[open..].find(']').map(|k| open + k).ok_or_else(|| err(open, "[", "unclosed index bracket"))?;
                index = Some((src[open + 1..close].to_string(), open + 1));
                i = close + 1;
            }
            out.push(Token { tok: Tok::Ident(name, index), pos: start, text: src[start..i].to_string() });
            continue;
        }
        let ch = src[start..].chars().next().expect("non-empty");
        return Err(err(start, &ch.to_string(), "unexpected character"));
    }
    out.push(Token { tok: Tok::End, pos: src.len(), text: "<end>".into() });
    Ok(out)
}

/// Parses an index such as `-3`, `1/2` or `-3/2` into its doubled value.
fn parse_twice_index(text: &str, pos: usize) -> Result<i64, ParseError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || err(pos, text, "index must be an integer or a half-integer like 1/2");
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.as_str()),
    };
    let value = match body.split_once('/') {
        None => Rational::from_integer(body.parse::<BigInt>().map_err(|_| bad())?),
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Rational::new(n, d)
        }
    };
    let twice = value * Rational::from_integer(2.into());
    if !twice.is_integer() {
        return Err(bad());
    }
    let v = twice.to_integer().to_i64().ok_or_else(bad)?;
    Ok(if neg { -v } else { v })
}

#[derive(Clone, Debug)]
enum Node {
    Num(BigInt),
    Sym { name: String, twice: Option<i64>, pos: usize, text: String },
    Neg(Box<Node>),
    Bin { op: char, lhs: Box<Node>, rhs: Box<Node>, pos: usize },
    Pow { base: Box<Node>, exp: i64, pos: usize },
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn sum(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => '+',
                Tok::Minus => '-',
                _ => return Ok(lhs),
            };
            let t = self.bump();
            let rhs = self.product()?;
            lhs = Node::Bin { op, lhs: Box::new(lhs), rhs: Box::new(rhs), pos: t.pos };
        }
    }

    fn product(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => '*',
                Tok::Slash => '/',
                _ => return Ok(lhs),
            };
            let t = self.bump();
            let rhs = self.unary()?;
            lhs = Node::Bin { op, lhs: Box::new(lhs), rhs: Box::new(rhs), pos: t.pos };
        }
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Ok(Node::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        let caret = self.bump();
        let neg = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let t = self.bump();
        let exp = match &t.tok {
            Tok::Num(n) => n.to_i64().filter(|v| *v <= 64).ok_or_else(|| err(t.pos, &t.text, "exponent too large"))?,
            _ => return Err(err(t.pos, &t.text, "expected an integer exponent")),
        };
        Ok(Node::Pow { base: Box::new(base), exp: if neg { -exp } else { exp }, pos: caret.pos })
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Num(n) => Ok(Node::Num(n)),
            Tok::Ident(name, index) => {
                let twice = match index {
                    Some((text, pos)) => Some(parse_twice_index(&text, pos)?),
                    None => None,
                };
                Ok(Node::Sym { name, twice, pos: t.pos, text: t.text })
            }
            Tok::LParen => {
                let inner = self.sum()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(err(close.pos, &close.text, "expected `)`"));
                }
                Ok(inner)
            }
            Tok::End => Err(err(t.pos, &t.text, "unexpected end of input")),
            _ => Err(err(t.pos, &t.text, "expected a number, identifier or `(`")),
        }
    }
}

fn parse_tree(src: &str) -> Result<Node, ParseError> {
    let mut p = Parser { toks: tokenize(src)?, at: 0 };
    let node = p.sum()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(err(t.pos, &t.text, "unexpected token"));
    }
    Ok(node)
}

/// How identifiers and operations are interpreted.
trait Domain {
    type Value;
    fn number(&self, n: BigInt) -> Self::Value;
    fn symbol(&self, name: &str, twice: Option<i64>, pos: usize, text: &str) -> Result<Self::Value, ParseError>;
    fn neg(&self, v: Self::Value) -> Self::Value;
    fn add(&self, a: Self::Value, b: Self::Value, pos: usize) -> Result<Self::Value, ParseError>;
    fn mul(&self, a: Self::Value, b: Self::Value, pos: usize) -> Result<Self::Value, ParseError>;
    fn div(&self, a: Self::Value, b: Self::Value, pos: usize) -> Result<Self::Value, ParseError>;
    fn pow(&self, a: Self::Value, exp: i64, pos: usize) -> Result<Self::Value, ParseError>;

    fn eval(&self, node: &Node) -> Result<Self::Value, ParseError> {
        match node {
            Node::Num(n) => Ok(self.number(n.clone())),
            Node::Sym { name, twice, pos, text } => self.symbol(name, *twice, *pos, text),
            Node::Neg(inner) => Ok(self.neg(self.eval(inner)?)),
            Node::Bin { op, lhs, rhs, pos } => {
                let (a, b) = (self.eval(lhs)?, self.eval(rhs)?);
                match op {
                    '+' => self.add(a, b, *pos),
                    '-' => self.add(a, self.neg(b), *pos),
                    '*' => self.mul(a, b, *pos),
                    _ => self.div(a, b, *pos),
                }
            }
            Node::Pow { base, exp, pos } => self.pow(self.eval(base)?, *exp, *pos),
        }
    }
}

fn scalar_symbol(name: &str, twice: Option<i64>, pos: usize, text: &str) -> Result<Option<Scalar>, ParseError> {
    let value = if name == "sqrt2" {
        Scalar::constant(QuadExt::sqrt2())
    } else if let Some(p) = Param::from_name(name) {
        Scalar::param(p)
    } else {
        return Ok(None);
    };
    if twice.is_some() {
        return Err(err(pos, text, "parameters take no index"));
    }
    Ok(Some(value))
}

fn scalar_pow(s: Scalar, exp: i64, pos: usize) -> Result<Scalar, ParseError> {
    if exp >= 0 {
        return Ok(s.pow(exp as u32));
    }
    let inv = s.invert_monomial().map_err(|e| err(pos, "^", e.to_string()))?;
    Ok(inv.pow(exp.unsigned_abs() as u32))
}

fn scalar_div(a: &Scalar, b: &Scalar, pos: usize) -> Result<Scalar, ParseError> {
    let inv = b.invert_monomial().map_err(|_| err(pos, "/", "can only divide by a nonzero monomial"))?;
    Ok(a * &inv)
}

struct ScalarDomain;

impl Domain for ScalarDomain {
    type Value = Scalar;
    fn number(&self, n: BigInt) -> Scalar {
        Scalar::rational(Rational::from_integer(n))
    }
    fn symbol(&self, name: &str, twice: Option<i64>, pos: usize, text: &str) -> Result<Scalar, ParseError> {
        scalar_symbol(name, twice, pos, text)?.ok_or_else(|| err(pos, text, "unknown identifier"))
    }
    fn neg(&self, v: Scalar) -> Scalar {
        -v
    }
    fn add(&self, a: Scalar, b: Scalar, _: usize) -> Result<Scalar, ParseError> {
        Ok(a + b)
    }
    fn mul(&self, a: Scalar, b: Scalar, _: usize) -> Result<Scalar, ParseError> {
        Ok(a * b)
    }
    fn div(&self, a: Scalar, b: Scalar, pos: usize) -> Result<Scalar, ParseError> {
        scalar_div(&a, &b, pos)
    }
    fn pow(&self, a: Scalar, exp: i64, pos: usize) -> Result<Scalar, ParseError> {
        scalar_pow(a, exp, pos)
    }
}

/// A polynomial value plus the variable pair it has committed to.
#[derive(Clone)]
struct PolyVal {
    poly: Poly2,
    vars: Option<Parity>,
}

struct PolyDomain;

impl PolyDomain {
    fn join(a: Option<Parity>, b: Option<Parity>, pos: usize) -> Result<Option<Parity>, ParseError> {
        match (a, b) {
            (Some(x), Some(y)) if x != y => Err(err(pos, "", "cannot mix x/y with s/t in one polynomial")),
            (x, None) => Ok(x),
            (None, y) => Ok(y),
            (x, _) => Ok(x),
        }
    }

    fn as_scalar(v: &PolyVal) -> Option<Scalar> {
        if v.poly.is_zero() {
            return Some(Scalar::zero());
        }
        let c = v.poly.coefficient(0, 0);
        (v.poly.terms().count() == 1 && !c.is_zero()).then_some(c)
    }
}

impl Domain for PolyDomain {
    type Value = PolyVal;
    fn number(&self, n: BigInt) -> PolyVal {
        PolyVal { poly: Poly2::constant(Scalar::rational(Rational::from_integer(n))), vars: None }
    }
    fn symbol(&self, name: &str, twice: Option<i64>, pos: usize, text: &str) -> Result<PolyVal, ParseError> {
        if let Some(s) = scalar_symbol(name, twice, pos, text)? {
            return Ok(PolyVal { poly: Poly2::constant(s), vars: None });
        }
        let (poly, parity) = match name {
            "x" => (Poly2::first(), Parity::Even),
            "y" => (Poly2::second(), Parity::Even),
            "s" => (Poly2::first(), Parity::Odd),
            "t" => (Poly2::second(), Parity::Odd),
            _ => return Err(err(pos, text, "unknown identifier")),
        };
        if twice.is_some() {
            return Err(err(pos, text, "variables take no index"));
        }
        Ok(PolyVal { poly, vars: Some(parity) })
    }
    fn neg(&self, v: PolyVal) -> PolyVal {
        PolyVal { poly: -&v.poly, vars: v.vars }
    }
    fn add(&self, a: PolyVal, b: PolyVal, pos: usize) -> Result<PolyVal, ParseError> {
        Ok(PolyVal { vars: Self::join(a.vars, b.vars, pos)?, poly: &a.poly + &b.poly })
    }
    fn mul(&self, a: PolyVal, b: PolyVal, pos: usize) -> Result<PolyVal, ParseError> {
        Ok(PolyVal { vars: Self::join(a.vars, b.vars, pos)?, poly: &a.poly * &b.poly })
    }
    fn div(&self, a: PolyVal, b: PolyVal, pos: usize) -> Result<PolyVal, ParseError> {
        let d = Self::as_scalar(&b).ok_or_else(|| err(pos, "/", "can only divide by a nonzero monomial scalar"))?;
        let inv = scalar_div(&Scalar::one(), &d, pos)?;
        Ok(PolyVal { poly: a.poly.scale(&inv), vars: a.vars })
    }
    fn pow(&self, a: PolyVal, exp: i64, pos: usize) -> Result<PolyVal, ParseError> {
        if exp < 0 {
            let s = Self::as_scalar(&a).ok_or_else(|| err(pos, "^", "negative powers only apply to scalars"))?;
            return Ok(PolyVal { poly: Poly2::constant(scalar_pow(s, exp, pos)?), vars: a.vars });
        }
        let mut acc = Poly2::one();
        for _ in 0..exp {
            acc = &acc * &a.poly;
        }
        Ok(PolyVal { poly: acc, vars: a.vars })
    }
}

enum AlgVal {
    Scalar(Scalar),
    Elem(AlgebraElement),
}

struct AlgebraDomain(Algebra);

impl Domain for AlgebraDomain {
    type Value = AlgVal;
    fn number(&self, n: BigInt) -> AlgVal {
        AlgVal::Scalar(Scalar::rational(Rational::from_integer(n)))
    }
    fn symbol(&self, name: &str, twice: Option<i64>, pos: usize, text: &str) -> Result<AlgVal, ParseError> {
        if let Some(s) = scalar_symbol(name, twice, pos, text)? {
            return Ok(AlgVal::Scalar(s));
        }
        let family = Family::from_name(name).ok_or_else(|| err(pos, text, "unknown identifier"))?;
        let twice = match (family, twice) {
            (Family::C, None) | (Family::C, Some(0)) => 0,
            (Family::C, Some(_)) => return Err(err(pos, text, "C takes no index")),
            (_, Some(t)) => t,
            (_, None) => return Err(err(pos, text, "generator needs an index, e.g. L[1]")),
        };
        let sym = BasisSymbol::new(self.0, family, twice).map_err(|e| err(pos, text, e.to_string()))?;
        Ok(AlgVal::Elem(AlgebraElement::basis(sym)))
    }
    fn neg(&self, v: AlgVal) -> AlgVal {
        match v {
            AlgVal::Scalar(s) => AlgVal::Scalar(-s),
            AlgVal::Elem(e) => AlgVal::Elem(-&e),
        }
    }
    fn add(&self, a: AlgVal, b: AlgVal, pos: usize) -> Result<AlgVal, ParseError> {
        match (a, b) {
            (AlgVal::Scalar(x), AlgVal::Scalar(y)) => Ok(AlgVal::Scalar(x + y)),
            (AlgVal::Elem(x), AlgVal::Elem(y)) => Ok(AlgVal::Elem(&x + &y)),
            (AlgVal::Elem(e), AlgVal::Scalar(s)) | (AlgVal::Scalar(s), AlgVal::Elem(e)) if s.is_zero() => {
                Ok(AlgVal::Elem(e))
            }
            _ => Err(err(pos, "+", "cannot add a scalar to an algebra element")),
        }
    }
    fn mul(&self, a: AlgVal, b: AlgVal, pos: usize) -> Result<AlgVal, ParseError> {
        match (a, b) {
            (AlgVal::Scalar(x), AlgVal::Scalar(y)) => Ok(AlgVal::Scalar(x * y)),
            (AlgVal::Scalar(s), AlgVal::Elem(e)) | (AlgVal::Elem(e), AlgVal::Scalar(s)) => {
                Ok(AlgVal::Elem(e.scale(&s)))
            }
            _ => Err(err(pos, "*", "products of algebra elements are not supported")),
        }
    }
    fn div(&self, a: AlgVal, b: AlgVal, pos: usize) -> Result<AlgVal, ParseError> {
        let d = match b {
            AlgVal::Scalar(s) => s,
            AlgVal::Elem(_) => return Err(err(pos, "/", "cannot divide by an algebra element")),
        };
        let inv = scalar_div(&Scalar::one(), &d, pos)?;
        Ok(match a {
            AlgVal::Scalar(s) => AlgVal::Scalar(s * inv),
            AlgVal::Elem(e) => AlgVal::Elem(e.scale(&inv)),
        })
    }
    fn pow(&self, a: AlgVal, exp: i64, pos: usize) -> Result<AlgVal, ParseError> {
        match a {
            AlgVal::Scalar(s) => Ok(AlgVal::Scalar(scalar_pow(s, exp, pos)?)),
            AlgVal::Elem(_) => Err(err(pos, "^", "powers of algebra elements are not supported")),
        }
    }
}

pub fn parse_scalar(src: &str) -> Result<Scalar, ParseError> {
    ScalarDomain.eval(&parse_tree(src)?)
}

/// A polynomial and the variable pair it uses (`None` for constants).
pub fn parse_polynomial(src: &str) -> Result<(Poly2, Option<Parity>), ParseError> {
    let v = PolyDomain.eval(&parse_tree(src)?)?;
    Ok((v.poly, v.vars))
}

pub fn parse_algebra_element(algebra: Algebra, src: &str) -> Result<AlgebraElement, ParseError> {
    match AlgebraDomain(algebra).eval(&parse_tree(src)?)? {
        AlgVal::Elem(e) => Ok(e),
        AlgVal::Scalar(s) if s.is_zero() => Ok(AlgebraElement::zero(algebra)),
        AlgVal::Scalar(_) => Err(err(0, src, "expected an algebra element, found a scalar")),
    }
}

/// A polynomial in `y` alone with coefficients in ℚ(√2).
pub fn parse_y_polynomial(src: &str) -> Result<DensePoly, ParseError> {
    let (poly, vars) = parse_polynomial(src)?;
    if vars == Some(Parity::Odd) || poly.terms().any(|((i, _), _)| *i > 0) {
        return Err(err(0, src, "expected a polynomial in y only"));
    }
    let slices = poly.slices();
    let upoly = slices.get(&0).cloned().unwrap_or_default();
    DensePoly::from_upoly(&upoly).ok_or_else(|| err(0, src, "coefficients must be numbers in Q(sqrt2)"))
}

/// Rational numbers only, as used for index-like CLI arguments.
pub fn parse_rational(src: &str) -> Result<Rational, ParseError> {
    let q = parse_scalar(src)?
        .as_constant()
        .filter(QuadExt::is_rational)
        .ok_or_else(|| err(0, src, "expected a rational number"))?;
    Ok(q.rational_part().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_grammar() {
        let s = parse_scalar("3/2*lam^2*alp^-1*sqrt2").unwrap();
        assert_eq!(s.to_string(), "3/2*lam^2*alp^-1*sqrt2");
        assert_eq!(parse_scalar("a").unwrap().to_string(), "a");
        assert_eq!(parse_scalar("(lam + 1)^2 - lam^2 - 2*lam").unwrap().to_string(), "1");
        assert_eq!(parse_scalar("2/alp").unwrap(), parse_scalar("2*alp^-1").unwrap());
    }

    #[test]
    fn scalar_errors_point_at_token() {
        let e = parse_scalar("lam + foo").unwrap_err();
        assert_eq!((e.position, e.token.as_str()), (6, "foo"));
        let e = parse_scalar("1/(lam + 1)").unwrap_err();
        assert_eq!(e.position, 1);
        let e = parse_scalar("a^-1").unwrap_err();
        assert_eq!(e.token, "^");
        let e = parse_scalar("2 $ 3").unwrap_err();
        assert_eq!((e.position, e.token.as_str()), (2, "$"));
        assert!(parse_scalar("(1 + 2").is_err());
        assert!(parse_scalar("1 2").is_err());
    }

    #[test]
    fn polynomial_grammar() {
        let (p, v) = parse_polynomial("x^2*y - 3").unwrap();
        assert_eq!(v, Some(Parity::Even));
        assert_eq!(p.render(("x", "y")), "x^2*y - 3");
        let (_, v) = parse_polynomial("s*t^3").unwrap();
        assert_eq!(v, Some(Parity::Odd));
        let (_, v) = parse_polynomial("1").unwrap();
        assert_eq!(v, None);
        let e = parse_polynomial("x + s").unwrap_err();
        assert!(e.message.contains("mix"));
    }

    #[test]
    fn algebra_grammar() {
        let e = parse_algebra_element(Algebra::R, "2*L[1] + lam*H[0] - C").unwrap();
        assert_eq!(e.to_string(), "2*L[1] + lam*H[0] - C");
        let e = parse_algebra_element(Algebra::NS, "Gp[1/2] - Gm[-3/2]").unwrap();
        assert_eq!(e.to_string(), "Gp[1/2] - Gm[-3/2]");
        let e = parse_algebra_element(Algebra::T, "G[0] + Q[0]").unwrap();
        assert_eq!(e.to_string(), "G[0] + Q[0]");
        assert!(parse_algebra_element(Algebra::R, "Gp[1/2]").is_err());
        assert!(parse_algebra_element(Algebra::R, "L[1]*L[2]").is_err());
        let err = parse_algebra_element(Algebra::R, "L[1] + Z[2]").unwrap_err();
        assert_eq!(err.token, "Z[2]");
        assert!(parse_algebra_element(Algebra::R, "0").unwrap().is_zero());
    }

    #[test]
    fn y_polynomials() {
        let h = parse_y_polynomial("y^2-1").unwrap();
        assert_eq!(h.degree(), 2);
        assert!(parse_y_polynomial("x*y").is_err());
        assert!(parse_y_polynomial("y + a").is_err());
        assert!(parse_y_polynomial("t + 1").is_err());
    }

    #[test]
    fn twice_index_parsing() {
        assert_eq!(parse_twice_index("-3/2", 0).unwrap(), -3);
        assert_eq!(parse_twice_index("4", 0).unwrap(), 8);
        assert!(parse_twice_index("1/3", 0).is_err());
    }
}
