//! Text format for monoid definitions.
//!
//! ```text
//! dim 2
//! mul = (u1*v1, u1^2*v2 + v1^3*u2)   # A2_semidirect(2,3)
//! unit = (1, 0)
//! ```
//!
//! Statements are separated by `;` or by line breaks outside parentheses.
//! Expressions are polynomials over `u1..un, v1..vn` with integer or `p/q`
//! coefficients, `+ - * ^` and parentheses. Exponents are nonnegative
//! integer literals.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::error::Result;
use crate::monoid::{argument_names, Point, PolynomialMonoid};
use crate::poly::{LaurentPolynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("negative exponents are not allowed in monoid definitions")]
    NegativeExponent,
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// A parse failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Sep,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    let mut depth = 0usize;
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let ch = chars.next();
            if ch == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            ch
        };
        match ch {
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars);
                }
            }
            '\n' => {
                bump(&mut chars);
                if depth == 0 {
                    out.push(Token { tok: Tok::Sep, line: l, column: c });
                }
            }
            c0 if c0.is_whitespace() => {
                bump(&mut chars);
            }
            ';' => {
                bump(&mut chars);
                out.push(Token { tok: Tok::Sep, line: l, column: c });
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    s.push(d);
                    bump(&mut chars);
                }
                let n = s.parse::<BigInt>().expect("digits");
                out.push(Token { tok: Tok::Int(n), line: l, column: c });
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                    s.push(d);
                    bump(&mut chars);
                }
                out.push(Token { tok: Tok::Ident(s), line: l, column: c });
            }
            '(' | ')' | ',' | '=' | '+' | '-' | '*' | '^' | '/' => {
                if ch == '(' {
                    depth += 1;
                } else if ch == ')' {
                    depth = depth.saturating_sub(1);
                }
                bump(&mut chars);
                out.push(Token { tok: Tok::Sym(ch), line: l, column: c });
            }
            other => {
                return Err(ParseError {
                    line: l,
                    column: c,
                    kind: ParseErrorKind::Syntax(format!("unexpected character `{other}`")),
                })
            }
        }
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    dimension: Option<usize>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(t: &Token, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: t.line,
            column: t.column,
            kind,
        }
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(Self::error_at(self.peek(), ParseErrorKind::Syntax(msg.into())))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.syntax(format!("expected `{c}`"))
        }
    }

    fn skip_separators(&mut self) {
        while self.peek().tok == Tok::Sep {
            self.next();
        }
    }

    fn unsigned(&mut self) -> Result<BigInt, ParseError> {
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                self.next();
                Ok(n)
            }
            _ => self.syntax("expected an integer"),
        }
    }

    /// `int` or `int/int`.
    fn unsigned_rational(&mut self) -> Result<Rational, ParseError> {
        let num = self.unsigned()?;
        if self.eat('/') {
            let at = self.peek().clone();
            let den = self.unsigned()?;
            if den.is_zero() {
                return Err(Self::error_at(&at, ParseErrorKind::Syntax("zero denominator".into())));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn signed_rational(&mut self) -> Result<Rational, ParseError> {
        let negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        let q = self.unsigned_rational()?;
        Ok(if negative { -q } else { q })
    }

    fn arity(&self) -> usize {
        2 * self.dimension.unwrap_or(0)
    }

    fn expr(&mut self) -> Result<LaurentPolynomial, ParseError> {
        let mut acc = self.signed_term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.signed_term()?;
            } else if self.eat('-') {
                acc = &acc - &self.signed_term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn signed_term(&mut self) -> Result<LaurentPolynomial, ParseError> {
        if self.eat('-') {
            Ok(-self.signed_term()?)
        } else if self.eat('+') {
            self.signed_term()
        } else {
            self.term()
        }
    }

    fn term(&mut self) -> Result<LaurentPolynomial, ParseError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                let rhs = if self.eat('-') { -self.power()? } else { self.power()? };
                acc = &acc * &rhs;
            } else if self.peek().tok == Tok::Sym('/') {
                return self.syntax("division is only allowed inside a rational literal p/q");
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<LaurentPolynomial, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        if self.peek().tok == Tok::Sym('-') {
            return Err(Self::error_at(self.peek(), ParseErrorKind::NegativeExponent));
        }
        let at = self.peek().clone();
        let e = self.unsigned()?;
        let e = e
            .to_u32()
            .ok_or_else(|| Self::error_at(&at, ParseErrorKind::Syntax("exponent too large".into())))?;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<LaurentPolynomial, ParseError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(_) => Ok(LaurentPolynomial::constant(self.arity(), self.unsigned_rational()?)),
            Tok::Ident(name) => {
                self.next();
                let names = argument_names(self.dimension.unwrap_or(0));
                match names.iter().position(|n| n == name) {
                    Some(i) => Ok(LaurentPolynomial::var(self.arity(), i)),
                    None => Err(Self::error_at(&t, ParseErrorKind::UnknownVariable(name.clone()))),
                }
            }
            Tok::Sym('(') => {
                self.next();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => self.syntax("expected a number, variable or `(`"),
        }
    }

    /// `( item, item, … )` with exactly `n` items.
    fn tuple<T>(&mut self, n: usize, mut item: impl FnMut(&mut Self) -> Result<T, ParseError>) -> Result<Vec<T>, ParseError> {
        let open = self.peek().clone();
        self.expect('(')?;
        let mut items = vec![item(self)?];
        while self.eat(',') {
            items.push(item(self)?);
        }
        self.expect(')')?;
        if items.len() != n {
            return Err(Self::error_at(
                &open,
                ParseErrorKind::DimensionMismatch {
                    expected: n,
                    found: items.len(),
                },
            ));
        }
        Ok(items)
    }

    fn end_statement(&mut self) -> Result<(), ParseError> {
        match self.peek().tok {
            Tok::Sep | Tok::End => Ok(()),
            _ => self.syntax("expected `;` or end of line"),
        }
    }
}

/// A parsed monoid definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidSource {
    pub dimension: usize,
    pub unit_hint: Option<Point>,
    pub components: Vec<LaurentPolynomial>,
}

impl MonoidSource {
    /// Builds the monoid. A unit hint is verified; without one the unit is
    /// searched on `{0,1}^n`.
    pub fn into_monoid(self) -> Result<PolynomialMonoid> {
        match self.unit_hint {
            Some(e) => PolynomialMonoid::new(self.components, Some(e)),
            None => PolynomialMonoid::with_grid_unit(self.components),
        }
    }
}

pub fn parse_source(text: &str) -> Result<MonoidSource, ParseError> {
    let mut p = Parser {
        tokens: lex(text)?,
        pos: 0,
        dimension: None,
    };
    let mut components = None;
    let mut unit = None;
    loop {
        p.skip_separators();
        let t = p.peek().clone();
        let keyword = match &t.tok {
            Tok::End => break,
            Tok::Ident(k) => k.clone(),
            _ => return p.syntax("expected `dim`, `mul` or `unit`"),
        };
        p.next();
        match keyword.as_str() {
            "dim" if p.dimension.is_none() => {
                let at = p.peek().clone();
                let n = p.unsigned()?;
                match n.to_usize().filter(|&n| n > 0 && n <= 64) {
                    Some(n) => p.dimension = Some(n),
                    None => {
                        return Err(Parser::error_at(
                            &at,
                            ParseErrorKind::Syntax("dimension must be between 1 and 64".into()),
                        ))
                    }
                }
            }
            "mul" if components.is_none() => {
                let Some(n) = p.dimension else {
                    return Err(Parser::error_at(&t, ParseErrorKind::Syntax("`dim` must come before `mul`".into())));
                };
                p.expect('=')?;
                components = Some(p.tuple(n, Parser::expr)?);
            }
            "unit" if unit.is_none() => {
                let Some(n) = p.dimension else {
                    return Err(Parser::error_at(&t, ParseErrorKind::Syntax("`dim` must come before `unit`".into())));
                };
                p.expect('=')?;
                unit = Some(p.tuple(n, Parser::signed_rational)?);
            }
            "dim" | "mul" | "unit" => {
                return Err(Parser::error_at(&t, ParseErrorKind::Syntax(format!("duplicate `{keyword}`"))))
            }
            _ => {
                return Err(Parser::error_at(
                    &t,
                    ParseErrorKind::Syntax(format!("unknown statement `{keyword}`")),
                ))
            }
        }
        p.end_statement()?;
    }
    let end = p.peek().clone();
    let missing = |what: &str| Parser::error_at(&end, ParseErrorKind::Syntax(format!("missing `{what}`")));
    let dimension = p.dimension.ok_or_else(|| missing("dim"))?;
    let components = components.ok_or_else(|| missing("mul"))?;
    Ok(MonoidSource {
        dimension,
        unit_hint: unit,
        components,
    })
}

/// Parses and builds a monoid definition.
pub fn parse_monoid(text: &str) -> Result<PolynomialMonoid> {
    parse_source(text)?.into_monoid()
}

fn fmt_rational(q: &Rational) -> String {
    q.to_string()
}

/// Prints a monoid in the format read by [`parse_monoid`].
pub fn to_source(m: &PolynomialMonoid) -> String {
    let names = m.variable_names();
    let comps: Vec<String> = m
        .components()
        .iter()
        .map(|c| c.display_with(&names).to_string())
        .collect();
    let mut s = format!("dim {}; mul = ({})", m.dimension(), comps.join(", "));
    if let Some(e) = m.unit() {
        let e: Vec<String> = e.iter().map(fmt_rational).collect();
        s.push_str(&format!("; unit = ({})", e.join(", ")));
    }
    s
}

impl fmt::Display for MonoidSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = argument_names(self.dimension);
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|c| c.display_with(&names).to_string())
            .collect();
        write!(f, "dim {}; mul = ({})", self.dimension, comps.join(", "))?;
        if let Some(e) = &self.unit_hint {
            let e: Vec<String> = e.iter().map(fmt_rational).collect();
            write!(f, "; unit = ({})", e.join(", "))?;
        }
        Ok(())
    }
}

impl From<&PolynomialMonoid> for MonoidSource {
    fn from(m: &PolynomialMonoid) -> Self {
        MonoidSource {
            dimension: m.dimension(),
            unit_hint: m.unit().cloned(),
            components: m.components().to_vec(),
        }
    }
}
