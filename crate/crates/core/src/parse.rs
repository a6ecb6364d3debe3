//! Text form of polynomials.
//!
//! Grammar (whitespace is ignored between tokens):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := ('+'|'-') factor | atom ['^' INT]
//! atom   := INT ['/' INT] | NAME | '(' expr ')'
//! ```
//!
//! Juxtaposition is rejected (`2x` and `x y` are syntax errors), and `/` is
//! only allowed inside a rational literal. Printing emits the same grammar with
//! terms in decreasing order under the ring's order, so `parse(print(p)) == p`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Variable names plus the order used for printing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    names: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    /// A ring with the local degree order.
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(|s| s.as_ref().to_string()).collect();
        let order = MonomialOrder::local_degree(names.len());
        Ring::with_order(names, order)
    }

    pub fn with_order(names: Vec<String>, order: MonomialOrder) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidSpacePair("no variables declared".into()));
        }
        for (i, n) in names.iter().enumerate() {
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::Syntax {
                    position: 0,
                    message: format!("invalid variable name `{n}`"),
                });
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidSpacePair(format!("duplicate variable `{n}`")));
            }
        }
        if order.nvars() != names.len() {
            return Err(Error::RingMismatch(names.len(), order.nvars()));
        }
        Ok(Ring { names, order })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse_poly(text, &self.names)
    }

    pub fn format(&self, p: &Polynomial) -> String {
        format_polynomial(p, &self.names, &self.order)
    }
}

/// `x, y, z` for up to three variables, `z0, z1, ...` otherwise.
pub fn default_names(nvars: usize) -> Vec<String> {
    if nvars <= 3 {
        ["x", "y", "z"][..nvars].iter().map(|s| s.to_string()).collect()
    } else {
        (0..nvars).map(|i| format!("z{i}")).collect()
    }
}

/// Parses `text` over the declared variables.
pub fn parse_poly<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<Polynomial> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        vars,
        end: text.len(),
    };
    let out = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(Error::Syntax {
            position: t.position,
            message: format!("unexpected {}", t.kind.describe()),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Int(n) => format!("number `{n}`"),
            TokenKind::Name(s) => format!("name `{s}`"),
            TokenKind::Plus => "`+`".into(),
            TokenKind::Minus => "`-`".into(),
            TokenKind::Star => "`*`".into(),
            TokenKind::Slash => "`/`".into(),
            TokenKind::Caret => "`^`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    position: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let kind = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => TokenKind::Plus,
            b'-' => TokenKind::Minus,
            b'*' => TokenKind::Star,
            b'/' => TokenKind::Slash,
            b'^' => TokenKind::Caret,
            b'(' => TokenKind::LParen,
            b')' => TokenKind::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token {
                    kind: TokenKind::Int(text[start..i].parse().expect("digits")),
                    position: start,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token {
                    kind: TokenKind::Name(text[start..i].to_string()),
                    position: start,
                });
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    position: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push(Token {
            kind,
            position: start,
        });
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, S> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a [S],
    end: usize,
}

impl<S: AsRef<str>> Parser<'_, S> {
    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn position(&self) -> usize {
        self.peek().map_or(self.end, |t| t.position)
    }

    fn unexpected(&self, expected: &str) -> Error {
        let found = self
            .peek()
            .map_or_else(|| "end of input".to_string(), |t| t.kind.describe());
        Error::Syntax {
            position: self.position(),
            message: format!("expected {expected}, found {found}"),
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Plus) => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Some(TokenKind::Minus) => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while let Some(TokenKind::Star) = self.peek().map(|t| &t.kind) {
            self.next();
            acc = &acc * &self.factor()?;
        }
        match self.peek().map(|t| &t.kind) {
            None
            | Some(TokenKind::Plus)
            | Some(TokenKind::Minus)
            | Some(TokenKind::RParen) => Ok(acc),
            Some(TokenKind::Slash) => Err(Error::Syntax {
                position: self.position(),
                message: "`/` is only allowed inside a rational literal such as 1/2".into(),
            }),
            _ => Err(self.unexpected("an operator (implicit multiplication is not allowed)")),
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        match self.peek().map(|t| &t.kind) {
            Some(TokenKind::Minus) => {
                self.next();
                Ok(-self.factor()?)
            }
            Some(TokenKind::Plus) => {
                self.next();
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                if let Some(TokenKind::Caret) = self.peek().map(|t| &t.kind) {
                    self.next();
                    let pos = self.position();
                    match self.next().map(|t| t.kind) {
                        Some(TokenKind::Int(e)) => {
                            let e = e.to_u32().ok_or(Error::Syntax {
                                position: pos,
                                message: "exponent too large".into(),
                            })?;
                            Ok(base.pow(e))
                        }
                        _ => {
                            self.pos -= 1;
                            Err(self.unexpected("a non-negative integer exponent"))
                        }
                    }
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let n = self.nvars();
        let Some(tok) = self.peek().cloned() else {
            return Err(self.unexpected("a number, a variable or `(`"));
        };
        match tok.kind {
            TokenKind::Int(num) => {
                self.next();
                if let Some(TokenKind::Slash) = self.peek().map(|t| &t.kind) {
                    self.next();
                    let pos = self.position();
                    match self.next().map(|t| t.kind) {
                        Some(TokenKind::Int(den)) if !den.is_zero() => {
                            Ok(Polynomial::constant(n, Rational::new(num, den)))
                        }
                        Some(TokenKind::Int(_)) => Err(Error::Syntax {
                            position: pos,
                            message: "zero denominator".into(),
                        }),
                        _ => {
                            self.pos -= 1;
                            Err(self.unexpected("an integer denominator"))
                        }
                    }
                } else {
                    Ok(Polynomial::constant(n, Rational::from_integer(num)))
                }
            }
            TokenKind::Name(name) => {
                self.next();
                let idx = self
                    .vars
                    .iter()
                    .position(|v| v.as_ref() == name)
                    .ok_or(Error::UnknownVariable {
                        name: name.clone(),
                        position: tok.position,
                    })?;
                Ok(Polynomial::var(n, idx))
            }
            TokenKind::LParen => {
                self.next();
                let inner = self.expr()?;
                match self.peek().map(|t| &t.kind) {
                    Some(TokenKind::RParen) => {
                        self.next();
                        Ok(inner)
                    }
                    _ => Err(self.unexpected("`)`")),
                }
            }
            _ => Err(self.unexpected("a number, a variable or `(`")),
        }
    }
}

fn format_monomial<S: AsRef<str>>(m: &Monomial, names: &[S]) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                names[i].as_ref().to_string()
            } else {
                format!("{}^{}", names[i].as_ref(), e)
            }
        })
        .collect();
    parts.join("*")
}

/// Prints `p` with terms in decreasing `ord` order.
pub fn format_polynomial<S: AsRef<str>>(p: &Polynomial, names: &[S], ord: &MonomialOrder) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.sorted_terms(ord).into_iter().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&format_monomial(m, names));
        } else {
            out.push_str(&abs.to_string());
            out.push('*');
            out.push_str(&format_monomial(m, names));
        }
    }
    out
}
