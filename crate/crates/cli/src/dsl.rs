//! Parser for the presentation language
//!
//! ```text
//! algebra QP over Q(q) { gens: x:1, y:1; rels: y*x - q*x*y; }
//! ```
//!
//! and for the scalar expressions that appear in command-line literals.

use std::fmt;
use std::sync::Arc;

use ncproj::field::{FieldKind, QuadraticFieldElement, Rational, Scalar};
use ncproj::poly::{FreeAlgebra, NcPolynomial};
use ncproj::presentation::AlgebraPresentation;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

/// 1-based position in the source text.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    pub span: Option<Span>,
}

impl Diagnostic {
    pub fn error(message: impl Into<String>, span: Option<Span>) -> Self {
        Diagnostic { severity: Severity::Error, message: message.into(), span }
    }

    pub fn at(message: impl Into<String>, span: Span) -> Self {
        Self::error(message, Some(span))
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        match self.span {
            Some(s) => write!(f, "{sev} at {}:{}: {}", s.line, s.column, self.message),
            None => write!(f, "{sev}: {}", self.message),
        }
    }
}

pub type ParseResult<T> = Result<T, Diagnostic>;

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

fn lex(src: &str) -> ParseResult<Vec<(Tok, Span)>> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let span = Span { line, column: col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push((Tok::Int(s.parse().expect("digits")), span));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push((Tok::Ident(s), span));
        } else if "{}();:,+-*/^[]".contains(c) {
            chars.next();
            col += 1;
            out.push((Tok::Sym(c), span));
        } else {
            return Err(Diagnostic::at(format!("unexpected character `{c}`"), span));
        }
    }
    out.push((Tok::Eof, Span { line, column: col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> ParseResult<Self> {
        Ok(Parser { toks: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    /// Position just past the previous token, where a missing token belongs.
    fn after_prev(&self) -> Span {
        if self.pos == 0 {
            return self.span();
        }
        let (tok, s) = &self.toks[self.pos - 1];
        let width = match tok {
            Tok::Ident(x) => x.len(),
            Tok::Int(n) => n.to_string().len(),
            _ => 1,
        };
        Span { line: s.line, column: s.column + width }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> ParseResult<()> {
        if self.eat(c) {
            return Ok(());
        }
        let found = self.peek().clone();
        // A missing terminator is reported where it should have been.
        let span = if matches!(c, ';' | ')' | ']' | '}') { self.after_prev() } else { self.span() };
        Err(Diagnostic::at(format!("expected `{c}`, found {found}"), span))
    }

    fn keyword(&mut self, kw: &str) -> ParseResult<()> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            t => Err(Diagnostic::at(format!("expected `{kw}`, found {t}"), self.span())),
        }
    }

    fn ident(&mut self, what: &str) -> ParseResult<(String, Span)> {
        let span = self.span();
        match self.bump() {
            Tok::Ident(s) => Ok((s, span)),
            t => {
                self.pos = self.pos.saturating_sub(usize::from(t != Tok::Eof));
                Err(Diagnostic::at(format!("expected {what}, found {t}"), span))
            }
        }
    }

    fn int(&mut self, what: &str) -> ParseResult<(BigInt, Span)> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok((n, span))
            }
            t => Err(Diagnostic::at(format!("expected {what}, found {t}"), span)),
        }
    }

    fn at_eof(&self) -> ParseResult<()> {
        match self.peek() {
            Tok::Eof => Ok(()),
            t => Err(Diagnostic::at(format!("unexpected {t} after end of input"), self.span())),
        }
    }

    fn field(&mut self) -> ParseResult<FieldKind> {
        let (name, span) = self.ident("a field (Q, Q(q) or Q(sqrt(D)))")?;
        if name != "Q" {
            return Err(Diagnostic::at(format!("unknown field `{name}`"), span));
        }
        if !self.eat('(') {
            return Ok(FieldKind::Rationals);
        }
        let (inner, ispan) = self.ident("`q` or `sqrt`")?;
        let kind = match inner.as_str() {
            "q" => FieldKind::RationalFunctions,
            "sqrt" => {
                self.expect('(')?;
                let (d, dspan) = self.int("a radicand")?;
                self.expect(')')?;
                let d = d.to_u64().ok_or_else(|| Diagnostic::at("radicand out of range", dspan))?;
                let (_, core) = ncproj::field::squarefree_decompose(d);
                if core <= 1 {
                    return Err(Diagnostic::at(format!("Q(sqrt({d})) is not a real quadratic field"), dspan));
                }
                FieldKind::Quadratic(core)
            }
            _ => return Err(Diagnostic::at(format!("unknown field parameter `{inner}`"), ispan)),
        };
        self.expect(')')?;
        Ok(kind)
    }

    fn expr(&mut self, ring: &Arc<FreeAlgebra>) -> ParseResult<NcPolynomial> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term(ring)?;
        if negate {
            acc = acc.neg();
        }
        loop {
            let span = self.span();
            if self.eat('+') {
                let t = self.term(ring)?;
                acc = acc.checked_add(&t).map_err(|e| Diagnostic::at(e.to_string(), span))?;
            } else if self.eat('-') {
                let t = self.term(ring)?;
                acc = acc.checked_sub(&t).map_err(|e| Diagnostic::at(e.to_string(), span))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, ring: &Arc<FreeAlgebra>) -> ParseResult<NcPolynomial> {
        let mut acc = self.factor(ring)?;
        loop {
            let span = self.span();
            if self.eat('*') {
                let f = self.factor(ring)?;
                acc = acc.checked_mul(&f).map_err(|e| Diagnostic::at(e.to_string(), span))?;
            } else if self.eat('/') {
                let dspan = self.span();
                let f = self.factor(ring)?;
                let c = constant_of(&f)
                    .ok_or_else(|| Diagnostic::at("division is only defined by nonzero scalars", dspan))?;
                let inv = c.inv().map_err(|_| Diagnostic::at("division by zero", dspan))?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self, ring: &Arc<FreeAlgebra>) -> ParseResult<NcPolynomial> {
        let base = self.atom(ring)?;
        if self.eat('^') {
            let (e, span) = self.int("an exponent")?;
            let e = e.to_u32().ok_or_else(|| Diagnostic::at("exponent out of range", span))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self, ring: &Arc<FreeAlgebra>) -> ParseResult<NcPolynomial> {
        let span = self.span();
        let field = ring.field();
        let constant = |c: Scalar| NcPolynomial::constant(ring, c).map_err(|e| Diagnostic::at(e.to_string(), span));
        match self.bump() {
            Tok::Int(n) => constant(Scalar::from_rational(field, Rational::from_int(n))),
            Tok::Sym('(') => {
                let e = self.expr(ring)?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if let Some(g) = ring.index_of(&name) {
                    return Ok(NcPolynomial::generator(ring, g));
                }
                match name.as_str() {
                    "q" if field == FieldKind::RationalFunctions => constant(Scalar::q()),
                    "q" => Err(Diagnostic::at(format!("`q` is not an element of {field}"), span)),
                    "sqrt" => {
                        self.expect('(')?;
                        let (d, dspan) = self.int("a radicand")?;
                        self.expect(')')?;
                        let d = d.to_u64().ok_or_else(|| Diagnostic::at("radicand out of range", dspan))?;
                        match (field, ncproj::field::squarefree_decompose(d)) {
                            (_, (k, 1)) => constant(Scalar::from_int(field, k as i64)),
                            (_, (_, 0)) => constant(Scalar::zero(field)),
                            (FieldKind::Quadratic(core), (_, c)) if core == c => {
                                let root = QuadraticFieldElement::sqrt_d(d).map_err(|e| Diagnostic::at(e.to_string(), dspan))?;
                                constant(Scalar::Quadratic(root))
                            }
                            _ => Err(Diagnostic::at(format!("sqrt({d}) is not an element of {field}"), span)),
                        }
                    }
                    _ => Err(Diagnostic::at(format!("unknown symbol `{name}`"), span)),
                }
            }
            t => {
                self.pos = self.pos.saturating_sub(usize::from(t != Tok::Eof));
                Err(Diagnostic::at(format!("expected a generator, number or `(`, found {t}"), span))
            }
        }
    }
}

fn constant_of(p: &NcPolynomial) -> Option<Scalar> {
    match p.degree() {
        None => Some(Scalar::zero(p.field())),
        Some(0) => p.iter().next().map(|(_, c)| c.clone()),
        _ => None,
    }
}

const RESERVED: [&str; 2] = ["sqrt", "q"];

/// Parses one presentation in the DSL.
pub fn parse_presentation(src: &str) -> ParseResult<AlgebraPresentation> {
    let mut p = Parser::new(src)?;
    p.keyword("algebra")?;
    let (name, _) = p.ident("an algebra name")?;
    p.keyword("over")?;
    let field = p.field()?;
    p.expect('{')?;

    p.keyword("gens")?;
    p.expect(':')?;
    let mut gens: Vec<(String, u32)> = Vec::new();
    loop {
        let (g, span) = p.ident("a generator name")?;
        if RESERVED.contains(&g.as_str()) || g == "Q" {
            return Err(Diagnostic::at(format!("`{g}` is reserved and cannot name a generator"), span));
        }
        if gens.iter().any(|(h, _)| *h == g) {
            return Err(Diagnostic::at(format!("duplicate generator `{g}`"), span));
        }
        let weight = if p.eat(':') {
            let (w, wspan) = p.int("a weight")?;
            match w.to_u32() {
                Some(w) if w > 0 => w,
                _ => return Err(Diagnostic::at("weights must be positive integers", wspan)),
            }
        } else {
            1
        };
        gens.push((g, weight));
        if !p.eat(',') {
            break;
        }
    }
    p.expect(';')?;
    let ring = FreeAlgebra::new(field, gens).map_err(|e| Diagnostic::error(e.to_string(), None))?;

    let mut rels = Vec::new();
    if matches!(p.peek(), Tok::Ident(s) if s == "rels") {
        p.bump();
        p.expect(':')?;
        if !p.eat(';') {
            loop {
                let span = p.span();
                let r = p.expr(&ring)?;
                if r.is_zero() {
                    return Err(Diagnostic::at("relation is zero", span));
                }
                if !r.is_homogeneous() {
                    return Err(Diagnostic::at(format!("relation `{r}` is not homogeneous"), span));
                }
                if r.degree() == Some(0) {
                    return Err(Diagnostic::at("relation is a nonzero constant", span));
                }
                rels.push(r);
                if !p.eat(',') {
                    break;
                }
            }
            p.expect(';')?;
        }
    }
    p.expect('}')?;
    p.at_eof()?;
    AlgebraPresentation::new(name, ring, rels).map_err(|e| Diagnostic::error(e.to_string(), None))
}

/// A scalar expression such as `q`, `-3/4` or `(1 + sqrt(5))/2` in `field`.
pub fn parse_scalar(src: &str, field: FieldKind) -> ParseResult<Scalar> {
    let ring = FreeAlgebra::new(field, Vec::new()).map_err(|e| Diagnostic::error(e.to_string(), None))?;
    let mut p = Parser::new(src)?;
    let start = p.span();
    let e = p.expr(&ring)?;
    p.at_eof()?;
    constant_of(&e).ok_or_else(|| Diagnostic::at("expected a scalar", start))
}

/// The smallest supported field containing every literal in `srcs`.
pub fn infer_field(srcs: &[&str]) -> ParseResult<FieldKind> {
    let mut kind = FieldKind::Rationals;
    for src in srcs {
        let toks = lex(src)?;
        for (i, (t, span)) in toks.iter().enumerate() {
            let found = match t {
                Tok::Ident(s) if s == "q" => FieldKind::RationalFunctions,
                Tok::Ident(s) if s == "sqrt" => match toks.get(i + 2) {
                    Some((Tok::Int(d), _)) => {
                        let d = d.to_u64().ok_or_else(|| Diagnostic::at("radicand out of range", *span))?;
                        match ncproj::field::squarefree_decompose(d) {
                            (_, core) if core > 1 => FieldKind::Quadratic(core),
                            _ => continue,
                        }
                    }
                    _ => return Err(Diagnostic::at("expected `sqrt(<integer>)`", *span)),
                },
                _ => continue,
            };
            kind = match (kind, found) {
                (FieldKind::Rationals, k) => k,
                (a, b) if a == b => a,
                (a, b) => return Err(Diagnostic::at(format!("literals mix the fields {a} and {b}"), *span)),
            };
        }
    }
    Ok(kind)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_plane() {
        let p = parse_presentation("algebra QP over Q(q) { gens: x:1, y:1; rels: y*x - q*x*y; }").unwrap();
        assert_eq!(p.name(), "QP");
        assert_eq!(p.field(), FieldKind::RationalFunctions);
        assert_eq!(p.relations().len(), 1);
        assert_eq!(p.relations()[0].to_string(), "y*x - q*x*y");
    }

    #[test]
    fn empty_rels_give_the_free_algebra() {
        for src in ["algebra F over Q { gens: x, y; rels: ; }", "algebra F over Q { gens: x, y; }"] {
            let p = parse_presentation(src).unwrap();
            assert!(p.relations().is_empty());
            assert_eq!(p.generators(), vec![("x".to_string(), 1), ("y".to_string(), 1)]);
        }
    }

    #[test]
    fn missing_semicolon_points_at_the_gap() {
        let src = "algebra A over Q {\n  gens: x:1, y:1\n  rels: x*y - y*x;\n}";
        let d = parse_presentation(src).unwrap_err();
        assert_eq!(d.span, Some(Span { line: 2, column: 17 }));
        assert!(d.message.contains("expected `;`"), "{d}");
    }

    #[test]
    fn inhomogeneous_relation_is_located() {
        let d = parse_presentation("algebra A over Q { gens: x, y;\nrels: x*y - x; }").unwrap_err();
        assert_eq!(d.span, Some(Span { line: 2, column: 7 }));
    }

    #[test]
    fn scalars_and_powers() {
        let p = parse_presentation("algebra B over Q(sqrt(8)) { gens: x; rels: (1 + sqrt(2))/2*x^3 - 3*x^3; }").unwrap();
        assert_eq!(p.field(), FieldKind::Quadratic(2));
        assert_eq!(p.relations()[0].to_string(), "-(5 - sqrt(2))/2*x^3");
        assert_eq!(parse_presentation(&p.to_dsl()).unwrap(), p);
        assert_eq!(parse_scalar("q^2/(q - 1)", FieldKind::RationalFunctions).unwrap().to_string(), "q^2/(q - 1)");
        assert!(parse_scalar("x", FieldKind::Rationals).is_err());
    }

    #[test]
    fn field_inference() {
        assert_eq!(infer_field(&["1", "0", "2/3"]).unwrap(), FieldKind::Rationals);
        assert_eq!(infer_field(&["q", "0"]).unwrap(), FieldKind::RationalFunctions);
        assert_eq!(infer_field(&["(1 + sqrt(20))/2"]).unwrap(), FieldKind::Quadratic(5));
        assert!(infer_field(&["q", "sqrt(2)"]).is_err());
    }
}
