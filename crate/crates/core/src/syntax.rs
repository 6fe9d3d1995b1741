//! Text forms of scalars, Laurent polynomials and superalgebra elements.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := ['-'] atom ['^' ['-'] integer]
//! atom   := integer | symbol | '(' expr ')'
//! symbol := q | s | L | s2 | s3 | T | z | C | E11 | E12 | E21 | E22
//! ```
//!
//! Values are promoted along scalar -> Laurent in `T` -> operator in `z, T`
//! -> matrix element. Products of operators respect `T z = q z T`, so
//! `T*z` parses to `q*z*T`.

use std::collections::BTreeMap;
use std::fmt;

use crate::laurent::LaurentPoly;
use crate::scalar::Scalar;
use crate::superq::{Sector, SuperQElement};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at offset {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

fn perr<T>(offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        offset,
        message: message.into(),
    })
}

// ---------------------------------------------------------------- printing

/// Writes `c * var^n` sums in descending exponent order.
pub fn write_laurent_in(f: &mut fmt::Formatter<'_>, p: &LaurentPoly, var: &str) -> fmt::Result {
    f.write_str(&laurent_string(p, var))
}

pub(crate) fn write_laurent(f: &mut fmt::Formatter<'_>, p: &LaurentPoly) -> fmt::Result {
    write_laurent_in(f, p, "T")
}

/// Formats a Laurent polynomial using `var` as the variable name.
pub fn laurent_string(p: &LaurentPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (n, c) in p.terms().rev() {
        let (neg, body) = signed_term(c, n, var);
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

fn power_string(var: &str, n: i64) -> String {
    if n == 1 {
        var.to_string()
    } else {
        format!("{}^{}", var, n)
    }
}

/// Splits a term into a sign and an unsigned body.
fn signed_term(c: &Scalar, n: i64, var: &str) -> (bool, String) {
    if n == 0 {
        let s = c.to_string();
        // A printed sum can be spliced in textually after its leading sign.
        return match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        };
    }
    let p = power_string(var, n);
    let (neg, coef) = coefficient_prefix(c);
    (neg, format!("{}{}", coef, p))
}

/// `("", false)` for 1, `("q*", false)`, `("(1/q)*", false)`, with the sign
/// split off for atomic negatives.
fn coefficient_prefix(c: &Scalar) -> (bool, String) {
    if c.is_one() {
        return (false, String::new());
    }
    let neg_c = -c;
    if neg_c.is_one() {
        return (true, String::new());
    }
    if c.is_atomic() {
        let s = c.to_string();
        if let Some(rest) = s.strip_prefix('-') {
            return (true, format!("{}*", rest));
        }
        return (false, format!("{}*", s));
    }
    (false, format!("({})*", c))
}

pub(crate) fn write_element(f: &mut fmt::Formatter<'_>, x: &SuperQElement) -> fmt::Result {
    f.write_str(&element_string(x))
}

/// Canonical text of an element, accepted back by [`parse_element`].
pub fn element_string(x: &SuperQElement) -> String {
    let mut parts: Vec<(bool, String)> = Vec::new();
    for (n, s, p) in x.terms() {
        let body = if p.is_monomial() {
            let (k, c) = p.terms().next().unwrap();
            let (neg, coef) = coefficient_prefix(c);
            let mut b = coef;
            if n != 0 {
                b.push_str(&format!("{}*", power_string("z", n)));
            }
            if k != 0 {
                b.push_str(&format!("{}*", power_string("T", k)));
            }
            b.push_str(s.name());
            parts.push((neg, b));
            continue;
        } else if n == 0 {
            format!("({})*{}", p, s)
        } else {
            format!("{}*({})*{}", power_string("z", n), p, s)
        };
        parts.push((false, body));
    }
    let c = x.central_part();
    if !c.is_zero() {
        let (neg, coef) = coefficient_prefix(c);
        parts.push((neg, format!("{}C", coef)));
    }
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (neg, body) in parts {
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

// ----------------------------------------------------------------- lexing

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(num_bigint::BigInt),
    Ident(String),
    Op(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = text[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap();
            return perr(i, format!("unexpected character {:?}", ch));
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

// ----------------------------------------------------------------- values

/// Intermediate parse value. `Op` is a quantum-torus operator
/// `sum_n z^n f_n(T)` without a matrix part.
#[derive(Debug, Clone)]
enum Value {
    Scalar(Scalar),
    Laurent(LaurentPoly),
    Op(BTreeMap<i64, LaurentPoly>),
    Elem(SuperQElement),
}

fn op_add(a: &mut BTreeMap<i64, LaurentPoly>, n: i64, f: LaurentPoly) {
    let e = a.entry(n).or_default();
    *e = &*e + &f;
    if e.is_zero() {
        a.remove(&n);
    }
}

impl Value {
    fn rank(&self) -> u8 {
        match self {
            Value::Scalar(_) => 0,
            Value::Laurent(_) => 1,
            Value::Op(_) => 2,
            Value::Elem(_) => 3,
        }
    }

    fn to_laurent(&self) -> LaurentPoly {
        match self {
            Value::Scalar(c) => LaurentPoly::constant(c.clone()),
            Value::Laurent(p) => p.clone(),
            _ => unreachable!("rank checked"),
        }
    }

    fn to_op(&self) -> BTreeMap<i64, LaurentPoly> {
        match self {
            Value::Op(m) => m.clone(),
            _ => {
                let p = self.to_laurent();
                let mut m = BTreeMap::new();
                if !p.is_zero() {
                    m.insert(0, p);
                }
                m
            }
        }
    }

    fn op_as_element(m: &BTreeMap<i64, LaurentPoly>) -> SuperQElement {
        let mut x = SuperQElement::zero();
        for (n, f) in m {
            x = &x + &SuperQElement::identity_term(*n, f.clone());
        }
        x
    }

    fn neg(self) -> Value {
        match self {
            Value::Scalar(c) => Value::Scalar(-c),
            Value::Laurent(p) => Value::Laurent(-&p),
            Value::Op(m) => Value::Op(m.into_iter().map(|(n, f)| (n, -&f)).collect()),
            Value::Elem(x) => Value::Elem(-&x),
        }
    }

    fn add(self, other: Value, at: usize) -> Result<Value, ParseError> {
        let r = self.rank().max(other.rank());
        match r {
            0 => match (self, other) {
                (Value::Scalar(a), Value::Scalar(b)) => Ok(Value::Scalar(a + b)),
                _ => unreachable!(),
            },
            1 => Ok(Value::Laurent(&self.to_laurent() + &other.to_laurent())),
            2 => {
                let mut a = self.to_op();
                for (n, f) in other.to_op() {
                    op_add(&mut a, n, f);
                }
                Ok(Value::Op(a))
            }
            _ => match (self, other) {
                (Value::Elem(a), Value::Elem(b)) => Ok(Value::Elem(&a + &b)),
                _ => perr(at, "cannot add a term without a matrix unit to an element"),
            },
        }
    }

    fn mul(self, other: Value, at: usize) -> Result<Value, ParseError> {
        match (&self, &other) {
            (Value::Scalar(a), Value::Scalar(b)) => return Ok(Value::Scalar(a * b)),
            (Value::Scalar(a), _) => return Ok(other.scaled(a)),
            (_, Value::Scalar(b)) => return Ok(self.scaled(b)),
            _ => {}
        }
        let r = self.rank().max(other.rank());
        match r {
            1 => Ok(Value::Laurent(&self.to_laurent() * &other.to_laurent())),
            2 => {
                let a = self.to_op();
                let b = other.to_op();
                let mut out = BTreeMap::new();
                for (n, f) in &a {
                    for (m, g) in &b {
                        op_add(&mut out, n + m, &f.q_shift(*m) * g);
                    }
                }
                Ok(Value::Op(out))
            }
            _ => {
                let x = self.into_element()?;
                let y = other.into_element()?;
                if !x.central_part().is_zero() || !y.central_part().is_zero() {
                    return perr(at, "C can only be multiplied by scalars");
                }
                Ok(Value::Elem(x.assoc_mul(&y)))
            }
        }
    }

    fn into_element(self) -> Result<SuperQElement, ParseError> {
        Ok(match self {
            Value::Elem(x) => x,
            v => Value::op_as_element(&v.to_op()),
        })
    }

    fn scaled(self, c: &Scalar) -> Value {
        match self {
            Value::Scalar(a) => Value::Scalar(&a * c),
            Value::Laurent(p) => Value::Laurent(p.scale(c)),
            Value::Op(m) => Value::Op(
                m.into_iter()
                    .map(|(n, f)| (n, f.scale(c)))
                    .filter(|(_, f)| !f.is_zero())
                    .collect(),
            ),
            Value::Elem(x) => Value::Elem(x.scale(c)),
        }
    }

    fn pow(self, k: i64, at: usize) -> Result<Value, ParseError> {
        match self {
            Value::Scalar(c) => match c.pow(k) {
                Ok(v) => Ok(Value::Scalar(v)),
                Err(_) => perr(at, "negative power of zero"),
            },
            Value::Laurent(p) => {
                if p.is_monomial() {
                    let (n, c) = p.terms().next().unwrap();
                    let c = c.pow(k).expect("nonzero coefficient");
                    return Ok(Value::Laurent(LaurentPoly::monomial(n * k, c)));
                }
                if k < 0 {
                    return perr(at, "negative power of a non-monomial");
                }
                let mut r = LaurentPoly::one();
                for _ in 0..k {
                    r = &r * &p;
                }
                Ok(Value::Laurent(r))
            }
            Value::Op(m) => {
                if m.len() == 1 {
                    let (n, f) = m.iter().next().unwrap();
                    if f.is_one() {
                        return Ok(Value::Op(BTreeMap::from([(n * k, LaurentPoly::one())])));
                    }
                }
                if k < 0 {
                    return perr(at, "negative power of a non-monomial operator");
                }
                let mut r = Value::Scalar(Scalar::one());
                for _ in 0..k {
                    r = r.mul(Value::Op(m.clone()), at)?;
                }
                Ok(r)
            }
            Value::Elem(x) => {
                if k < 1 {
                    return perr(at, "elements can only be raised to positive powers");
                }
                let mut r = x.clone();
                for _ in 1..k {
                    r = Value::Elem(r).mul(Value::Elem(x.clone()), at)?.into_element()?;
                }
                Ok(Value::Elem(r))
            }
        }
    }
}

fn is_zero_value(v: &Value) -> bool {
    match v {
        Value::Scalar(c) => c.is_zero(),
        Value::Laurent(p) => p.is_zero(),
        Value::Op(m) => m.is_empty(),
        Value::Elem(x) => x.is_zero(),
    }
}

// ----------------------------------------------------------------- parser

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = match self.peek() {
            Tok::Op('+') => {
                self.bump();
                self.term()?
            }
            Tok::Op('-') => {
                self.bump();
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    let (at, _) = self.bump();
                    let t = self.term()?;
                    acc = acc.add(t, at)?;
                }
                Tok::Op('-') => {
                    let (at, _) = self.bump();
                    let t = self.term()?;
                    acc = acc.add(t.neg(), at)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    let (at, _) = self.bump();
                    let f = self.factor()?;
                    acc = acc.mul(f, at)?;
                }
                Tok::Op('/') => {
                    let (at, _) = self.bump();
                    let f = self.factor()?;
                    let Value::Scalar(d) = f else {
                        return perr(at, "division is only allowed by scalars");
                    };
                    let Ok(inv) = d.inv() else {
                        return perr(at, "division by zero");
                    };
                    acc = acc.scaled(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Value, ParseError> {
        if let Tok::Op('-') = self.peek() {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if let Tok::Op('^') = self.peek() {
            let (at, _) = self.bump();
            let neg = if let Tok::Op('-') = self.peek() {
                self.bump();
                true
            } else {
                false
            };
            let off = self.offset();
            let k = match self.bump().1 {
                Tok::Int(n) => match i64::try_from(n) {
                    Ok(k) if k <= 100_000 => k,
                    _ => return perr(off, "exponent too large"),
                },
                Tok::End => return perr(off, "unexpected end of input, expected exponent"),
                _ => return perr(off, "expected integer exponent"),
            };
            return base.pow(if neg { -k } else { k }, at);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let (off, tok) = self.bump();
        match tok {
            Tok::Int(n) => Ok(Value::Scalar(Scalar::from_rational(
                num_rational::BigRational::from_integer(n),
            ))),
            Tok::Ident(name) => symbol_value(&name).map_or_else(
                || perr(off, format!("unknown symbol {:?}", name)),
                Ok,
            ),
            Tok::Op('(') => {
                let v = self.expr()?;
                let (off2, t) = self.bump();
                match t {
                    Tok::Op(')') => Ok(v),
                    Tok::End => perr(off2, "unexpected end of input, expected ')'"),
                    _ => perr(off2, "expected ')'"),
                }
            }
            Tok::End => perr(off, "unexpected end of input"),
            Tok::Op(c) => perr(off, format!("unexpected {:?}", c)),
        }
    }
}

fn symbol_value(name: &str) -> Option<Value> {
    if let Some(c) = Scalar::symbol(name) {
        return Some(Value::Scalar(c));
    }
    match name {
        "T" => Some(Value::Laurent(LaurentPoly::power(1))),
        "z" => Some(Value::Op(BTreeMap::from([(1, LaurentPoly::one())]))),
        "C" => Some(Value::Elem(SuperQElement::central(Scalar::one()))),
        _ => {
            let rest = name.strip_prefix('E')?;
            let b = rest.as_bytes();
            if b.len() != 2 {
                return None;
            }
            let s = Sector::new(b[0].wrapping_sub(b'0'), b[1].wrapping_sub(b'0'))?;
            Some(Value::Elem(SuperQElement::diag(LaurentPoly::one(), s)))
        }
    }
}

fn parse_value(text: &str) -> Result<Value, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    match p.peek() {
        Tok::End => Ok(v),
        _ => perr(p.offset(), "unexpected trailing input"),
    }
}

pub fn parse_scalar(text: &str) -> Result<Scalar, ParseError> {
    match parse_value(text)? {
        Value::Scalar(c) => Ok(c),
        _ => perr(0, "expected a scalar (symbols q, s, L, s2, s3)"),
    }
}

pub fn parse_laurent(text: &str) -> Result<LaurentPoly, ParseError> {
    match parse_value(text)? {
        v @ (Value::Scalar(_) | Value::Laurent(_)) => Ok(v.to_laurent()),
        _ => perr(0, "expected a Laurent polynomial in T"),
    }
}

/// Parses an element. Every term needs a matrix unit `E11..E22` or `C`;
/// the zero element may be written `0`.
pub fn parse_element(text: &str) -> Result<SuperQElement, ParseError> {
    match parse_value(text)? {
        Value::Elem(x) => Ok(x),
        v if is_zero_value(&v) => Ok(SuperQElement::zero()),
        _ => perr(0, "expected an element with matrix units E11, E12, E21, E22 or C"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalars() {
        let c = parse_scalar("(q^2-1)/(2*q)").unwrap();
        assert_eq!(c.to_string(), "(q^2 - 1)/(2*q)");
        assert_eq!(parse_scalar("(q^2-1)/(q-1)").unwrap().to_string(), "q + 1");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("T").is_err());
    }

    #[test]
    fn laurent_roundtrip() {
        let p = parse_laurent("T^2 + 3*T^-1 - q").unwrap();
        assert_eq!(p.to_string(), "T^2 - q + 3*T^-1");
        assert_eq!(parse_laurent(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn element_examples() {
        let x = parse_element("z^-1*(T - q)*E12 + (T - 1)*E21").unwrap();
        assert_eq!(x.coeff(-1, Sector::E12), parse_laurent("T - q").unwrap());
        assert_eq!(x.coeff(0, Sector::E21), parse_laurent("T - 1").unwrap());
        assert_eq!(parse_element(&x.to_string()).unwrap(), x);
        let h = parse_element("(1/2)*C").unwrap();
        assert_eq!(h, SuperQElement::central(Scalar::ratio(1, 2)));
        let e = parse_element("z^1*(T+").unwrap_err();
        assert_eq!(e.offset, 7);
    }

    #[test]
    fn shift_commutation() {
        let a = parse_element("T*z*E11").unwrap();
        let b = parse_element("q*z*T*E11").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn printing() {
        let x = parse_element("z*T*E11").unwrap();
        let y = parse_element("z^-1*T^-1*E11").unwrap();
        assert_eq!(x.bracket(&y).to_string(), "(1/q)*C");
        assert_eq!(parse_element("-C").unwrap().to_string(), "-C");
        assert_eq!(parse_element("E11 - q*T*E22").unwrap().to_string(), "E11 - q*T*E22");
    }
}
