use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::coeff::{MultiPoly, Rational};
use crate::lie::{AlgebraSpec, Family};
use crate::pbw::{Pbw, PbwError, UeaElement};

const MAX_DEPTH: usize = 200;
const MAX_POWER: u32 = 64;

/// Expression over rational literals, c and the generators of g(n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    C,
    Gen { letter: char, i: i32, j: i32 },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("index [{0},{1}] out of range for {2}")]
    IndexOutOfRange(i32, i32, AlgebraSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let chars: Vec<char> = src.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let ch = chars[k];
        let (l0, c0) = (line, column);
        if ch == '\n' {
            line += 1;
            column = 1;
            k += 1;
            continue;
        }
        if ch.is_whitespace() {
            column += 1;
            k += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let text: String = chars[start..k].iter().collect();
            column += k - start;
            out.push(Token { tok: Tok::Num(text.parse().expect("digits")), line: l0, column: c0 });
            continue;
        }
        if ch.is_alphabetic() || ch == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            let text: String = chars[start..k].iter().collect();
            column += k - start;
            out.push(Token { tok: Tok::Ident(text), line: l0, column: c0 });
            continue;
        }
        if "+-*^/()[],".contains(ch) {
            out.push(Token { tok: Tok::Sym(ch), line: l0, column: c0 });
            column += 1;
            k += 1;
            continue;
        }
        return Err(ParseError { line: l0, column: c0, kind: ParseErrorKind::UnknownSymbol(ch.to_string()) });
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    depth: usize,
    spec: Option<&'a AlgebraSpec>,
}

impl Parser<'_> {
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

    fn error_at(&self, t: &Token, kind: ParseErrorKind) -> ParseError {
        ParseError { line: t.line, column: t.column, kind }
    }

    fn syntax(&self, t: &Token, what: &str) -> ParseError {
        let found = match &t.tok {
            Tok::End => "end of input".to_string(),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
        };
        self.error_at(t, ParseErrorKind::Syntax(format!("expected {what}, found {found}")))
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            Err(self.syntax(&t, &format!("`{c}`")))
        }
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            let t = self.peek().clone();
            return Err(self.error_at(&t, ParseErrorKind::Syntax("nesting too deep".into())));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            if self.is_sym('+') {
                self.next();
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.is_sym('-') {
                self.next();
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.is_sym('*') {
            self.next();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.is_sym('-') {
            self.next();
            self.enter()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.is_sym('^') {
            return Ok(base);
        }
        self.next();
        let t = self.next();
        let Tok::Num(n) = &t.tok else { return Err(self.syntax(&t, "a non-negative integer exponent")) };
        match u32::try_from(n.clone()) {
            Ok(e) if e <= MAX_POWER => Ok(Expr::Pow(Box::new(base), e)),
            _ => Err(self.error_at(&t, ParseErrorKind::Syntax(format!("exponent must be at most {MAX_POWER}")))),
        }
    }

    fn signed_index(&mut self) -> Result<i32, ParseError> {
        let negative = if self.is_sym('-') {
            self.next();
            true
        } else {
            false
        };
        let t = self.next();
        let Tok::Num(n) = &t.tok else { return Err(self.syntax(&t, "an integer index")) };
        let v = i32::try_from(n.clone()).map_err(|_| self.error_at(&t, ParseErrorKind::Syntax("index too large".into())))?;
        Ok(if negative { -v } else { v })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Num(p) => {
                if self.is_sym('/') {
                    self.next();
                    let d = self.next();
                    let Tok::Num(q) = &d.tok else { return Err(self.syntax(&d, "a denominator")) };
                    if q.is_zero() {
                        return Err(self.error_at(&d, ParseErrorKind::Syntax("zero denominator".into())));
                    }
                    Ok(Expr::Num(Rational::new(p.clone(), q.clone())))
                } else {
                    Ok(Expr::Num(Rational::from_integer(p.clone())))
                }
            }
            Tok::Ident(name) if name == "c" => Ok(Expr::C),
            Tok::Ident(name) if name == "E" || name == "F" => {
                let letter = name.chars().next().expect("non-empty");
                self.expect('[')?;
                let i = self.signed_index()?;
                self.expect(',')?;
                let j = self.signed_index()?;
                self.expect(']')?;
                if let Some(spec) = self.spec {
                    let wanted = if spec.family == Family::A { 'E' } else { 'F' };
                    if letter != wanted {
                        return Err(self.error_at(&t, ParseErrorKind::UnknownSymbol(format!("{letter} for {spec}"))));
                    }
                    if !spec.contains(i) || !spec.contains(j) {
                        return Err(self.error_at(&t, ParseErrorKind::IndexOutOfRange(i, j, *spec)));
                    }
                }
                Ok(Expr::Gen { letter, i, j })
            }
            Tok::Ident(name) => Err(self.error_at(&t, ParseErrorKind::UnknownSymbol(name.clone()))),
            Tok::Sym('(') => {
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            _ => Err(self.syntax(&t, "a number, `c`, a generator or `(`")),
        }
    }
}

fn parse_with(src: &str, spec: Option<&AlgebraSpec>) -> Result<Expr, ParseError> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, pos: 0, depth: 0, spec };
    let e = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return Err(p.syntax(&t, "an operator or end of input"));
    }
    Ok(e)
}

/// Syntax-only parse; generator indices are not checked.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    parse_with(src, None)
}

/// Parse and validate generator letters and indices against `spec`.
pub fn parse_expr_for(src: &str, spec: AlgebraSpec) -> Result<Expr, ParseError> {
    parse_with(src, Some(&spec))
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Num(r) if !r.is_integer() => 2,
            Expr::Neg(_) => 3,
            Expr::Num(r) if r < &Rational::zero() => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    /// Value in U(g(n)) with c replaced by `c`.
    pub fn to_element(&self, alg: &Arc<Pbw<MultiPoly>>, c: &MultiPoly) -> Result<UeaElement<MultiPoly>, PbwError> {
        Ok(match self {
            Expr::Num(r) => alg.scalar(MultiPoly::constant(r.clone())),
            Expr::C => alg.scalar(c.clone()),
            Expr::Gen { i, j, .. } => alg.gen(*i, *j)?,
            Expr::Neg(a) => a.to_element(alg, c)?.negated(),
            Expr::Add(a, b) => a.to_element(alg, c)?.try_plus(&b.to_element(alg, c)?)?,
            Expr::Sub(a, b) => a.to_element(alg, c)?.try_minus(&b.to_element(alg, c)?)?,
            Expr::Mul(a, b) => a.to_element(alg, c)?.try_times(&b.to_element(alg, c)?)?,
            Expr::Pow(a, e) => {
                let base = a.to_element(alg, c)?;
                if *e == 0 {
                    alg.one()
                } else {
                    base.pow(*e)
                }
            }
        })
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Expr::Num(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Expr::C => write!(f, "c"),
            Expr::Gen { letter, i, j } => write!(f, "{letter}[{i},{j}]"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.write_child(f, 4)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_child(f, 1)?;
                write!(f, "{}", if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write_child(f, 2)
            }
            Expr::Mul(a, b) => {
                a.write_child(f, 2)?;
                write!(f, "*")?;
                b.write_child(f, 3)
            }
            Expr::Pow(a, e) => {
                a.write_child(f, 5)?;
                write!(f, "^{e}")
            }
        }
    }
}
