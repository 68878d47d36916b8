//! Operator expression language.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | factor
//! factor := atom ("^" int)?
//! atom   := number | symbol | call | "(" expr ")"
//! ```
//!
//! Only `r` takes a negative exponent. Division is by scalar constants.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coeff::Param;
use crate::error::{Error, Result};
use crate::generators::GeneratorId;

/// 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl Pos {
    fn error(self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line, column: self.column, message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expression {
    Number(BigRational),
    Imaginary,
    Param(Param),
    X(usize),
    Dunkl(usize),
    Reflection(usize),
    /// `r^k`
    Radial(i32),
    Generator(GeneratorId),
    Add(Box<Expression>, Box<Expression>),
    Sub(Box<Expression>, Box<Expression>),
    Mul(Box<Expression>, Box<Expression>),
    Div(Box<Expression>, Box<Expression>, Pos),
    Neg(Box<Expression>),
    Pow(Box<Expression>, u32),
    Comm(Box<Expression>, Box<Expression>),
    Acomm(Box<Expression>, Box<Expression>),
    Adj(Box<Expression>),
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Expression::*;
        match self {
            Number(q) => write!(f, "{q}"),
            Imaginary => write!(f, "i"),
            Param(p) => write!(f, "{}", p.plain_name()),
            X(i) => write!(f, "x{i}"),
            Dunkl(i) => write!(f, "D{i}"),
            Reflection(i) => write!(f, "R{i}"),
            Radial(1) => write!(f, "r"),
            Radial(k) => write!(f, "r^{k}"),
            Generator(g) => write!(f, "{g}"),
            Add(a, b) => write!(f, "({a} + {b})"),
            Sub(a, b) => write!(f, "({a} - {b})"),
            Mul(a, b) => write!(f, "{a}*{b}"),
            Div(a, b, _) => write!(f, "{a}/{b}"),
            Neg(a) => write!(f, "-({a})"),
            Pow(a, n) => write!(f, "({a})^{n}"),
            Comm(a, b) => write!(f, "comm({a}, {b})"),
            Acomm(a, b) => write!(f, "acomm({a}, {b})"),
            Adj(a) => write!(f, "adj({a})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut pos = Pos { line: 1, column: 1 };
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let here = pos;
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                pos.line += 1;
                pos.column = 1;
            } else {
                pos.column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                s.push(bump(&mut chars));
            }
            out.push((Tok::Int(s.parse().expect("digits")), here));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                s.push(bump(&mut chars));
            }
            out.push((Tok::Ident(s), here));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            other => return Err(here.error(format!("unexpected character `{other}`"))),
        };
        bump(&mut chars);
        out.push((tok, here));
    }
    out.push((Tok::End, pos));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    dim: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let (tok, pos) = self.next();
        if tok == want {
            Ok(())
        } else {
            Err(pos.error(format!("expected {want}, found {tok}")))
        }
    }

    fn expr(&mut self) -> Result<Expression> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    lhs = Expression::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.next();
                    lhs = Expression::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expression> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.next();
                    lhs = Expression::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    let pos = self.next().1;
                    lhs = Expression::Div(Box::new(lhs), Box::new(self.unary()?), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expression> {
        if *self.peek() == Tok::Minus {
            self.next();
            return Ok(Expression::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expression> {
        let radial = matches!(self.peek(), Tok::Ident(s) if s == "r");
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let negative = *self.peek() == Tok::Minus;
        if negative {
            let pos = self.next().1;
            if !radial {
                return Err(pos.error("negative exponents are only allowed on `r`"));
            }
        }
        let (tok, pos) = self.next();
        let Tok::Int(n) = tok else {
            return Err(pos.error(format!("expected an integer exponent, found {tok}")));
        };
        let n: i32 = n.try_into().map_err(|_| pos.error("exponent too large"))?;
        if radial {
            return Ok(Expression::Radial(if negative { -n } else { n }));
        }
        Ok(Expression::Pow(Box::new(base), n as u32))
    }

    fn index(&mut self, upper: usize) -> Result<usize> {
        let (tok, pos) = self.next();
        let Tok::Int(n) = tok else {
            return Err(pos.error(format!("expected an index, found {tok}")));
        };
        let k: usize = (&n).try_into().unwrap_or(usize::MAX);
        if !(1..=upper).contains(&k) {
            return Err(pos.error(format!("index {n} out of range 1..={upper}")));
        }
        Ok(k)
    }

    fn indices(&mut self, count: usize, upper: usize) -> Result<Vec<usize>> {
        self.expect(Tok::LParen)?;
        let mut out = vec![self.index(upper)?];
        for _ in 1..count {
            self.expect(Tok::Comma)?;
            out.push(self.index(upper)?);
        }
        self.expect(Tok::RParen)?;
        Ok(out)
    }

    fn distinct_pair(&mut self, upper: usize, pos: Pos) -> Result<(usize, usize)> {
        let v = self.indices(2, upper)?;
        if v[0] == v[1] {
            return Err(pos.error(format!("indices must differ, got ({},{})", v[0], v[1])));
        }
        Ok((v[0], v[1]))
    }

    fn args(&mut self, count: usize) -> Result<Vec<Expression>> {
        self.expect(Tok::LParen)?;
        let mut out = vec![self.expr()?];
        for _ in 1..count {
            self.expect(Tok::Comma)?;
            out.push(self.expr()?);
        }
        self.expect(Tok::RParen)?;
        Ok(out)
    }

    fn atom(&mut self) -> Result<Expression> {
        let (tok, pos) = self.next();
        match tok {
            Tok::Int(n) => Ok(Expression::Number(BigRational::from_integer(n))),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => self.symbol(&name, pos),
            other => Err(pos.error(format!("expected an operand, found {other}"))),
        }
    }

    fn symbol(&mut self, name: &str, pos: Pos) -> Result<Expression> {
        use Expression as X;
        use GeneratorId as G;
        let d = self.dim;
        let gen = |g| Ok(X::Generator(g));
        match name {
            "i" => return Ok(X::Imaginary),
            "E" => return Ok(X::Param(Param::E)),
            "alpha" => return Ok(X::Param(Param::Alpha)),
            "r" => return Ok(X::Radial(1)),
            "Gamma0" => return gen(G::Gamma0),
            "GammaD1" => return gen(G::GammaD1),
            "T" => return gen(G::T),
            "K" => return gen(G::K),
            "H" => return gen(G::H),
            "Jsq" => return gen(G::Jsq),
            "Qsq" => return gen(G::Qsq),
            "J" => {
                let (a, b) = self.distinct_pair(d, pos)?;
                return gen(G::J(a, b));
            }
            "L" => {
                let (a, b) = self.distinct_pair(d + 3, pos)?;
                return gen(G::L(a, b));
            }
            "g" => {
                let v = self.indices(2, d + 3)?;
                return gen(G::Metric(v[0], v[1]));
            }
            "A" | "M" | "G" | "B" | "At" => {
                let i = self.indices(1, d)?[0];
                return gen(match name {
                    "A" => G::A(i),
                    "M" => G::M(i),
                    "G" => G::Gamma(i),
                    "B" => G::B(i),
                    _ => G::Atilde(i),
                });
            }
            "comm" | "acomm" => {
                let mut v = self.args(2)?;
                let b = Box::new(v.pop().unwrap());
                let a = Box::new(v.pop().unwrap());
                return Ok(if name == "comm" { X::Comm(a, b) } else { X::Acomm(a, b) });
            }
            "adj" => {
                let a = self.args(1)?.pop().unwrap();
                return Ok(X::Adj(Box::new(a)));
            }
            _ => {}
        }
        for (prefix, make) in
            [("mu", (|i| X::Param(Param::Mu(i))) as fn(usize) -> X), ("x", X::X), ("D", X::Dunkl), ("R", X::Reflection)]
        {
            if let Some(digits) = name.strip_prefix(prefix) {
                if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                    let k: usize = digits.parse().unwrap_or(usize::MAX);
                    if !(1..=d).contains(&k) {
                        return Err(pos.error(format!("index {digits} of `{name}` out of range 1..={d}")));
                    }
                    return Ok(make(k));
                }
            }
        }
        Err(pos.error(format!("unknown symbol `{name}`")))
    }
}

/// Parse `text` with indices checked against dimension `dim`.
pub fn parse(text: &str, dim: usize) -> Result<Expression> {
    if dim == 0 {
        return Err(Error::Usage("dimension must be at least 1".into()));
    }
    let mut p = Parser { toks: lex(text)?, at: 0, dim };
    let e = p.expr()?;
    let (tok, pos) = p.next();
    if tok != Tok::End {
        return Err(pos.error(format!("unexpected {tok}")));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(e: Result<Expression>) -> (usize, usize) {
        match e {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn factor_chain() {
        let e = parse("x1^2 * r^-2", 1).unwrap();
        assert_eq!(
            e,
            Expression::Mul(Box::new(Expression::Pow(Box::new(Expression::X(1)), 2)), Box::new(Expression::Radial(-2)))
        );
    }

    #[test]
    fn index_errors() {
        assert_eq!(at(parse("D0", 3)), (1, 1));
        assert_eq!(at(parse("x1 + x5", 3)), (1, 6));
        assert_eq!(at(parse("J(1,1)", 3)), (1, 1));
        assert!(parse("L(1,6)", 3).is_ok());
        assert!(parse("L(1,7)", 3).is_err());
    }

    #[test]
    fn syntax_errors_carry_position() {
        assert_eq!(at(parse("x1 *\n  * D1", 1)), (2, 3));
        assert_eq!(at(parse("x1^-1", 1)), (1, 4));
        assert_eq!(at(parse("(x1", 1)), (1, 4));
        assert_eq!(at(parse("x1 $", 1)), (1, 4));
    }

    #[test]
    fn calls() {
        assert!(parse("comm(A(1), G(1)) - acomm(R1, D1) + adj(T)", 2).is_ok());
        assert!(parse("-1/2*i*mu2*x1*D2", 2).is_ok());
        assert!(parse("mu3", 2).is_err());
    }
}
