//! Text formats for algebra and r-matrix definitions.
//!
//! ```text
//! # comment
//! algebra sl2
//! basis: h, e_plus, e_minus
//! [h, e_plus] = 2*e_plus
//! [h, e_minus] = -2*e_minus
//! [e_plus, e_minus] = h
//! ```
//!
//! ```text
//! r = 1/2 * h ^ e_plus
//!   - i*sqrt2 * e_plus ^ e_minus
//! ```
//!
//! Scalars are `a`, `a/b`, `i`, `sqrt2` and products/sums of them. Operator
//! precedence, loosest first: `+ -`, `* /`, `^` (wedge) and `⊗` (tensor), unary minus.
//! A line starting with `+` or `-` continues the previous statement.

use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::liealg::{Basis, Element, LieAlgebra, LieError};
use crate::scalars::Scalar;
use crate::tensoralg::TwoTensor;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    UnknownLabel,
    Type,
    Definition,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind:?} error: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn at(kind: ParseErrorKind, pos: Pos, message: impl Into<String>) -> Self {
        ParseError { kind, line: pos.line, col: pos.col, message: message.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Otimes,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Equals,
    Colon,
    Newline,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(n) => format!("`{n}`"),
        Tok::Newline => "end of line".into(),
        other => format!("`{}`", match other {
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Caret => "^",
            Tok::Otimes => "⊗",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Equals => "=",
            _ => ":",
        }),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = Pos { line: line_no, col: i + 1 };
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Int(s.parse().expect("digits")), pos));
                continue;
            }
            if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
                continue;
            }
            let tok = match c {
                '+' => Tok::Plus,
                '-' | '−' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' | '∧' => Tok::Caret,
                '⊗' => Tok::Otimes,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                '=' => Tok::Equals,
                ':' => Tok::Colon,
                other => return Err(ParseError::at(ParseErrorKind::Lexical, pos, format!("unexpected character `{other}`"))),
            };
            out.push((tok, pos));
            i += 1;
        }
        out.push((Tok::Newline, Pos { line: line_no, col: chars.len() + 1 }));
    }
    Ok(out)
}

/// Splits tokens into logical statements, joining `+`/`-` continuation lines.
fn statements(tokens: Vec<(Tok, Pos)>) -> Vec<Vec<(Tok, Pos)>> {
    let mut out: Vec<Vec<(Tok, Pos)>> = Vec::new();
    let mut current: Vec<(Tok, Pos)> = Vec::new();
    let mut iter = tokens.into_iter().peekable();
    while let Some((t, p)) = iter.next() {
        if t == Tok::Newline {
            let continues = matches!(iter.peek(), Some((Tok::Plus | Tok::Minus, _))) && !current.is_empty();
            if !continues && !current.is_empty() {
                out.push(std::mem::take(&mut current));
            }
            continue;
        }
        current.push((t, p));
    }
    if !current.is_empty() {
        out.push(current);
    }
    out
}

/// Value of an expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Scalar(Scalar),
    Vector(Element),
    Tensor(TwoTensor),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Vector(_) => "algebra element",
            Value::Tensor(_) => "two-tensor",
        }
    }
}

struct Parser<'a> {
    toks: &'a [(Tok, Pos)],
    i: usize,
    resolve: &'a dyn Fn(&str) -> Option<Element>,
    end: Pos,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.i).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.i).cloned();
        self.i += 1;
        t
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        ParseError::at(ParseErrorKind::Syntax, self.pos(), msg)
    }

    fn expect(&mut self, want: &Tok) -> Result<Pos, ParseError> {
        match self.next() {
            Some((t, p)) if &t == want => Ok(p),
            Some((t, p)) => Err(ParseError::at(ParseErrorKind::Syntax, p, format!("expected {}, found {}", describe(want), describe(&t)))),
            None => Err(ParseError::at(ParseErrorKind::Syntax, self.end, format!("expected {}, found end of statement", describe(want)))),
        }
    }

    fn type_error(pos: Pos, op: &str, a: &Value, b: &Value) -> ParseError {
        ParseError::at(ParseErrorKind::Type, pos, format!("cannot apply `{op}` to {} and {}", a.kind(), b.kind()))
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut lhs = self.term()?;
        while let Some(op @ (Tok::Plus | Tok::Minus)) = self.peek().cloned() {
            let pos = self.pos();
            self.i += 1;
            let rhs = self.term()?;
            let sub = op == Tok::Minus;
            lhs = match (lhs, rhs) {
                (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(if sub { &a - &b } else { &a + &b }),
                (Value::Vector(a), Value::Vector(b)) => Value::Vector(if sub { &a - &b } else { &a + &b }),
                (Value::Tensor(a), Value::Tensor(b)) => Value::Tensor(if sub { &a - &b } else { &a + &b }),
                (a, b) => return Err(Self::type_error(pos, if sub { "-" } else { "+" }, &a, &b)),
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut lhs = self.wedge()?;
        while let Some(op @ (Tok::Star | Tok::Slash)) = self.peek().cloned() {
            let pos = self.pos();
            self.i += 1;
            let rhs = self.wedge()?;
            lhs = if op == Tok::Star {
                match (lhs, rhs) {
                    (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(&a * &b),
                    (Value::Scalar(s), Value::Vector(v)) | (Value::Vector(v), Value::Scalar(s)) => Value::Vector(v.scale(&s)),
                    (Value::Scalar(s), Value::Tensor(t)) | (Value::Tensor(t), Value::Scalar(s)) => Value::Tensor(t.scale(&s)),
                    (a, b) => return Err(Self::type_error(pos, "*", &a, &b)),
                }
            } else {
                let Value::Scalar(d) = rhs else {
                    return Err(Self::type_error(pos, "/", &lhs, &rhs));
                };
                let inv = Scalar::one()
                    .checked_div(&d)
                    .map_err(|_| ParseError::at(ParseErrorKind::Definition, pos, "division by zero"))?;
                match lhs {
                    Value::Scalar(a) => Value::Scalar(&a * &inv),
                    Value::Vector(v) => Value::Vector(v.scale(&inv)),
                    Value::Tensor(t) => Value::Tensor(t.scale(&inv)),
                }
            };
        }
        Ok(lhs)
    }

    fn wedge(&mut self) -> Result<Value, ParseError> {
        let lhs = self.unary()?;
        if let Some(op @ (Tok::Caret | Tok::Otimes)) = self.peek().cloned() {
            let pos = self.pos();
            self.i += 1;
            let rhs = self.unary()?;
            return match (lhs, rhs) {
                (Value::Vector(a), Value::Vector(b)) => {
                    let t = if op == Tok::Caret { crate::tensoralg::wedge(&a, &b) } else { TwoTensor::tensor(&a, &b) };
                    t.map(Value::Tensor).map_err(|e| ParseError::at(ParseErrorKind::Type, pos, e.to_string()))
                }
                (a, b) => Err(Self::type_error(pos, if op == Tok::Caret { "^" } else { "⊗" }, &a, &b)),
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.i += 1;
            return Ok(match self.unary()? {
                Value::Scalar(s) => Value::Scalar(-&s),
                Value::Vector(v) => Value::Vector(-&v),
                Value::Tensor(t) => Value::Tensor(t.scale(&Scalar::from_int(-1))),
            });
        }
        if self.peek() == Some(&Tok::Plus) {
            self.i += 1;
            return self.unary();
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        match self.next() {
            Some((Tok::Int(n), _)) => Ok(Value::Scalar(Scalar::from_rational(crate::scalars::Rational::from_integer(n)))),
            Some((Tok::Ident(name), pos)) => match name.as_str() {
                "i" => Ok(Value::Scalar(Scalar::i())),
                "sqrt2" => Ok(Value::Scalar(Scalar::sqrt2())),
                _ => (self.resolve)(&name)
                    .map(Value::Vector)
                    .ok_or_else(|| ParseError::at(ParseErrorKind::UnknownLabel, pos, format!("unknown label `{name}`"))),
            },
            Some((Tok::LParen, _)) => {
                let v = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(v)
            }
            Some((t, p)) => Err(ParseError::at(ParseErrorKind::Syntax, p, format!("expected a value, found {}", describe(&t)))),
            None => Err(ParseError::at(ParseErrorKind::Syntax, self.end, "expected a value after the operator, found end of statement")),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.toks.get(self.i) {
            None => Ok(()),
            Some((t, p)) => Err(ParseError::at(ParseErrorKind::Syntax, *p, format!("unexpected {}", describe(t)))),
        }
    }
}

fn end_of(stmt: &[(Tok, Pos)]) -> Pos {
    stmt.last().map(|(_, p)| Pos { line: p.line, col: p.col + 1 }).unwrap_or_default()
}

/// Parses one expression with labels resolved by `resolve`.
pub fn parse_expression(text: &str, resolve: &dyn Fn(&str) -> Option<Element>) -> Result<Value, ParseError> {
    let toks: Vec<(Tok, Pos)> = lex(text)?.into_iter().filter(|(t, _)| *t != Tok::Newline).collect();
    let mut p = Parser { toks: &toks, i: 0, resolve, end: end_of(&toks) };
    let v = p.expr()?;
    p.finish()?;
    Ok(v)
}

pub fn parse_scalar(text: &str) -> Result<Scalar, ParseError> {
    match parse_expression(text, &|_| None)? {
        Value::Scalar(s) => Ok(s),
        other => Err(ParseError::at(ParseErrorKind::Type, Pos { line: 1, col: 1 }, format!("expected a scalar, found {}", other.kind()))),
    }
}

/// Parses an algebra definition file.
pub fn parse_algebra(text: &str) -> Result<LieAlgebra, ParseError> {
    let stmts = statements(lex(text)?);
    let mut name: Option<String> = None;
    let mut basis: Option<Arc<Basis>> = None;
    let mut brackets: Vec<(usize, usize, Vec<(usize, Scalar)>)> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for stmt in &stmts {
        let (head, pos) = &stmt[0];
        match head {
            Tok::Ident(k) if k == "algebra" => {
                match stmt.get(1) {
                    Some((Tok::Ident(n), _)) if stmt.len() == 2 => name = Some(n.clone()),
                    _ => return Err(ParseError::at(ParseErrorKind::Syntax, *pos, "expected `algebra <name>`")),
                }
            }
            Tok::Ident(k) if k == "basis" => {
                let mut labels = Vec::new();
                let mut p = Parser { toks: stmt, i: 1, resolve: &|_| None, end: end_of(stmt) };
                p.expect(&Tok::Colon)?;
                loop {
                    match p.next() {
                        Some((Tok::Ident(l), lp)) => {
                            if l == "i" || l == "sqrt2" {
                                return Err(ParseError::at(ParseErrorKind::Definition, lp, format!("`{l}` is reserved for scalars")));
                            }
                            labels.push(l)
                        }
                        Some((t, tp)) => return Err(ParseError::at(ParseErrorKind::Syntax, tp, format!("expected a label, found {}", describe(&t)))),
                        None => return Err(p.syntax("expected a label")),
                    }
                    match p.next() {
                        None => break,
                        Some((Tok::Comma, _)) => {}
                        Some((t, tp)) => return Err(ParseError::at(ParseErrorKind::Syntax, tp, format!("expected `,`, found {}", describe(&t)))),
                    }
                }
                let b = Basis::new(name.as_deref().unwrap_or("algebra"), labels)
                    .map_err(|e| ParseError::at(ParseErrorKind::Definition, *pos, e.to_string()))?;
                basis = Some(b);
            }
            Tok::LBracket => {
                let b = basis.clone().ok_or_else(|| ParseError::at(ParseErrorKind::Definition, *pos, "bracket before `basis:`"))?;
                let resolve = |l: &str| b.position(l).map(|i| Element::basis_vector(&b, i));
                let mut p = Parser { toks: stmt, i: 1, resolve: &resolve, end: end_of(stmt) };
                let label = |p: &mut Parser| -> Result<usize, ParseError> {
                    match p.next() {
                        Some((Tok::Ident(l), lp)) => {
                            b.position(&l).ok_or_else(|| ParseError::at(ParseErrorKind::UnknownLabel, lp, format!("unknown label `{l}`")))
                        }
                        Some((t, tp)) => Err(ParseError::at(ParseErrorKind::Syntax, tp, format!("expected a label, found {}", describe(&t)))),
                        None => Err(p.syntax("expected a label")),
                    }
                };
                let a = label(&mut p)?;
                p.expect(&Tok::Comma)?;
                let c = label(&mut p)?;
                p.expect(&Tok::RBracket)?;
                p.expect(&Tok::Equals)?;
                let value = p.expr()?;
                p.finish()?;
                let v = match value {
                    Value::Vector(v) => v,
                    Value::Scalar(s) if s.is_zero() => Element::zero(&b),
                    other => {
                        return Err(ParseError::at(ParseErrorKind::Type, *pos, format!("bracket value must be an algebra element, found {}", other.kind())))
                    }
                };
                if a == c {
                    if !v.is_zero() {
                        return Err(ParseError::at(ParseErrorKind::Definition, *pos, "a bracket [x,x] must vanish"));
                    }
                    continue;
                }
                let (lo, hi, v) = if a < c { (a, c, v) } else { (c, a, -&v) };
                if !seen.insert((lo, hi)) {
                    return Err(ParseError::at(ParseErrorKind::Definition, *pos, format!("bracket [{}, {}] defined twice", b.label(lo), b.label(hi))));
                }
                brackets.push((lo, hi, v.terms().map(|(i, s)| (i, s.clone())).collect()));
            }
            other => return Err(ParseError::at(ParseErrorKind::Syntax, *pos, format!("unexpected {} at start of statement", describe(other)))),
        }
    }
    let basis = basis.ok_or_else(|| ParseError::at(ParseErrorKind::Definition, Pos { line: 1, col: 1 }, "missing `basis:` line"))?;
    let name = name.unwrap_or_else(|| "algebra".to_string());
    LieAlgebra::new(&name, basis.labels().to_vec(), brackets)
        .map_err(|e: LieError| ParseError::at(ParseErrorKind::Definition, Pos { line: 1, col: 1 }, e.to_string()))
}

/// Parses an r-matrix definition (`r = ...`) over `g`.
pub fn parse_rmatrix(text: &str, g: &LieAlgebra) -> Result<TwoTensor, ParseError> {
    parse_rmatrix_with(text, g, &|l| g.element(l).ok())
}

/// Like [`parse_rmatrix`], with a custom label resolver (e.g. catalog aliases).
pub fn parse_rmatrix_with(text: &str, g: &LieAlgebra, resolve: &dyn Fn(&str) -> Option<Element>) -> Result<TwoTensor, ParseError> {
    let stmts = statements(lex(text)?);
    let mut result: Option<TwoTensor> = None;
    for stmt in &stmts {
        let mut p = Parser { toks: stmt, i: 0, resolve, end: end_of(stmt) };
        match p.next() {
            Some((Tok::Ident(n), _)) if n == "r" => {}
            Some((t, tp)) => return Err(ParseError::at(ParseErrorKind::Syntax, tp, format!("expected `r =`, found {}", describe(&t)))),
            None => continue,
        }
        let eq = p.expect(&Tok::Equals)?;
        if result.is_some() {
            return Err(ParseError::at(ParseErrorKind::Definition, eq, "r defined more than once"));
        }
        let v = p.expr()?;
        p.finish()?;
        result = Some(match v {
            Value::Tensor(t) => {
                if !t.basis().same_as(g.basis()) {
                    return Err(ParseError::at(ParseErrorKind::Type, eq, "labels resolve into a different algebra"));
                }
                t
            }
            Value::Scalar(s) if s.is_zero() => TwoTensor::zero(g.basis()),
            other => return Err(ParseError::at(ParseErrorKind::Type, eq, format!("r must be a two-tensor, found {}", other.kind()))),
        });
    }
    result.ok_or_else(|| ParseError::at(ParseErrorKind::Definition, Pos { line: 1, col: 1 }, "no `r = ...` statement"))
}

/// Canonical text of an algebra: every nonzero bracket with `A < B` in basis order.
pub fn serialize_algebra(g: &LieAlgebra) -> String {
    let mut out = format!("algebra {}\nbasis: {}\n", g.name(), g.labels().join(", "));
    for (a, b, v) in g.structure() {
        if !v.is_zero() {
            out.push_str(&format!("[{}, {}] = {}\n", g.labels()[a], g.labels()[b], v));
        }
    }
    out
}

pub fn serialize_rmatrix(r: &TwoTensor) -> String {
    format!("r = {}\n", if r.is_zero() { "0".to_string() } else { r.to_text() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_sl2, build_so32};
    use crate::tensoralg::w;

    const SL2: &str = "algebra sl2\nbasis: h, e_plus, e_minus\n[h,e_plus] = 2*e_plus\n[h, e_minus] = -2*e_minus\n[e_plus, e_minus] = h\n";

    #[test]
    fn algebra_matches_catalog() {
        let g = parse_algebra(SL2).unwrap();
        let c = build_sl2();
        for (a, b, v) in c.structure() {
            assert_eq!(g.bracket_basis(a, b).to_dense(), v.to_dense());
        }
    }

    #[test]
    fn rmatrix_wedge_and_continuation() {
        let g = build_sl2();
        let r = parse_rmatrix("r = 1 * h ^ e_plus", &g).unwrap();
        assert_eq!(r, w(&g.el("h"), &g.el("e_plus")));
        let r2 = parse_rmatrix("r = 2/4 * h ^ e_plus\n  + 1/2*h^e_plus # two halves\n", &g).unwrap();
        assert_eq!(r2, r);
    }

    #[test]
    fn dangling_operator_is_a_syntax_error() {
        let g = build_sl2();
        let err = parse_rmatrix("r = h ^", &g).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Syntax);
        assert_eq!((err.line, err.col), (1, 8));
        let err = parse_rmatrix("r = h ^ x", &g).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownLabel);
        assert_eq!(parse_rmatrix("r = h $ e", &g).unwrap_err().kind, ParseErrorKind::Lexical);
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("-1/2*i*sqrt2 + 3/4").unwrap(), &Scalar::ratio(3, 4) - &(&Scalar::ratio(1, 2) * &(&Scalar::i() * &Scalar::sqrt2())));
        assert_eq!(parse_scalar("6/4").unwrap(), Scalar::ratio(3, 2));
    }

    #[test]
    fn serialization_round_trips() {
        let so = build_so32().unwrap();
        let text = serialize_algebra(&so.ambient);
        let again = serialize_algebra(&parse_algebra(&text).unwrap());
        assert_eq!(text, again);
        let g = build_sl2();
        let r = &w(&g.el("h"), &g.el("e_plus")).scale(&Scalar::i()) - &TwoTensor::tensor(&g.el("h"), &g.el("h")).unwrap();
        let t1 = serialize_rmatrix(&r);
        let back = parse_rmatrix(&t1, &g).unwrap();
        assert_eq!(back, r);
        assert_eq!(serialize_rmatrix(&back), t1);
    }

    proptest::proptest! {
        #[test]
        fn random_rmatrices_round_trip(coeffs in proptest::collection::vec((-4i64..5, 1i64..4, -2i64..3), 9)) {
            let g = build_sl2();
            let mut r = TwoTensor::zero(g.basis());
            for (k, (n, d, im)) in coeffs.iter().enumerate() {
                let c = &Scalar::ratio(*n, *d) + &(&Scalar::i() * &Scalar::from_int(*im));
                r.add_term([k / 3, k % 3], &c);
            }
            let text = serialize_rmatrix(&r);
            let back = parse_rmatrix(&text, &g).unwrap();
            proptest::prop_assert_eq!(&back, &r);
            proptest::prop_assert_eq!(serialize_rmatrix(&back), text);
        }
    }
}
