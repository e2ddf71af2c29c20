//! Text form of Lie elements.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := [rational '*'] tree
//! tree     := ident | '[' tree ',' tree ']'
//! rational := int ['/' posint]
//! ```
//!
//! Whitespace is insignificant. Identifiers are `[A-Za-z_][A-Za-z0-9_]*`.
//! Every error carries the byte offset it was detected at.

use crate::algebra::rational::{format_rational, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at byte {offset}")]
pub struct ExprError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tree {
    Ident { name: String, offset: usize },
    Bracket(Box<Tree>, Box<Tree>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub tree: Tree,
    pub offset: usize,
}

/// A parsed expression: a signed sum of scaled bracket trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieExpression {
    pub terms: Vec<Term>,
}

pub fn is_identifier(s: &str) -> bool {
    let mut b = s.bytes();
    match b.next() {
        Some(c) if c.is_ascii_alphabetic() || c == b'_' => {}
        _ => return false,
    }
    b.all(|c| c.is_ascii_alphanumeric() || c == b'_')
}

impl Tree {
    pub fn ident(name: &str) -> Tree {
        Tree::Ident {
            name: name.to_string(),
            offset: 0,
        }
    }

    pub fn bracket(a: Tree, b: Tree) -> Tree {
        Tree::Bracket(Box::new(a), Box::new(b))
    }

    pub fn leaves(&self) -> Vec<(&str, usize)> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut Vec<(&'a str, usize)>) {
        match self {
            Tree::Ident { name, offset } => out.push((name, *offset)),
            Tree::Bracket(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Ident { name, .. } => write!(f, "{name}"),
            Tree::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// Writes `sum c_i * t_i` in the grammar above; the empty sum is written `0`,
/// which is not itself parseable.
pub fn format_terms<T: fmt::Display>(terms: &[(Rational, T)]) -> String {
    let mut s = String::new();
    for (i, (c, t)) in terms.iter().enumerate() {
        if i == 0 {
            if c.is_one() {
                s.push_str(&t.to_string());
            } else {
                s.push_str(&format!("{}*{}", format_rational(c), t));
            }
        } else {
            s.push_str(if c.is_negative() { " - " } else { " + " });
            let a = c.abs();
            if a.is_one() {
                s.push_str(&t.to_string());
            } else {
                s.push_str(&format!("{}*{}", format_rational(&a), t));
            }
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl fmt::Display for LieExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Rational, &Tree)> = self.terms.iter().map(|t| (t.coeff.clone(), &t.tree)).collect();
        write!(f, "{}", format_terms(&terms))
    }
}

impl std::str::FromStr for LieExpression {
    type Err = ExprError;
    fn from_str(s: &str) -> Result<Self, ExprError> {
        parse(s)
    }
}

pub fn parse(text: &str) -> Result<LieExpression, ExprError> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let mut terms = vec![p.term(false)?];
    loop {
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(b'+') => {
                p.pos += 1;
                terms.push(p.term(false)?);
            }
            Some(b'-') => {
                p.pos += 1;
                terms.push(p.term(true)?);
            }
            Some(_) => return Err(p.error("expected '+', '-' or end of input")),
        }
    }
    Ok(LieExpression { terms })
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> ExprError {
        ExprError {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn starts_int(&self) -> bool {
        let mut i = self.pos;
        if self.s.get(i) == Some(&b'-') {
            i += 1;
            while matches!(self.s.get(i), Some(c) if c.is_ascii_whitespace()) {
                i += 1;
            }
        }
        matches!(self.s.get(i), Some(c) if c.is_ascii_digit())
    }

    fn digits(&mut self) -> Result<BigInt, ExprError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("ascii digits parse"))
    }

    fn rational(&mut self) -> Result<Rational, ExprError> {
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
            self.skip_ws();
        }
        let mut n = self.digits()?;
        if negative {
            n = -n;
        }
        self.skip_ws();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let d = self.digits()?;
            if d.is_zero() {
                return Err(ExprError {
                    offset: at,
                    message: "zero denominator".to_string(),
                });
            }
            Ok(Rational::new(n, d))
        } else {
            Ok(Rational::from_integer(n))
        }
    }

    fn term(&mut self, negate: bool) -> Result<Term, ExprError> {
        self.skip_ws();
        let offset = self.pos;
        let mut coeff = Rational::one();
        if self.starts_int() {
            coeff = self.rational()?;
            self.skip_ws();
            if self.peek() != Some(b'*') {
                return Err(self.error("expected '*' after coefficient"));
            }
            self.pos += 1;
        }
        let tree = self.tree()?;
        if negate {
            coeff = -coeff;
        }
        Ok(Term { coeff, tree, offset })
    }

    fn tree(&mut self) -> Result<Tree, ExprError> {
        self.skip_ws();
        match self.peek() {
            Some(b'[') => {
                let open = self.pos;
                self.pos += 1;
                let a = self.tree()?;
                self.skip_ws();
                self.expect(b',', open)?;
                let b = self.tree()?;
                self.skip_ws();
                self.expect(b']', open)?;
                Ok(Tree::bracket(a, b))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                Ok(Tree::Ident {
                    name: std::str::from_utf8(&self.s[start..self.pos]).expect("ascii").to_string(),
                    offset: start,
                })
            }
            None => Err(self.error("unexpected end of input, expected a generator or '['")),
            Some(_) => Err(self.error("expected a generator or '['")),
        }
    }

    fn expect(&mut self, c: u8, open: usize) -> Result<(), ExprError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            None => Err(ExprError {
                offset: open,
                message: format!("unclosed '[' (expected '{}' before end of input)", c as char),
            }),
            Some(_) => Err(self.error(&format!("expected '{}'", c as char))),
        }
    }
}
