//! A small integer expression language for index formulas.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?
//! atom  := integer | name | name '(' expr ')' | '(' expr ')'
//! ```
//!
//! Names: `n`, `t`, `j`, `alpha`, `p1`, `p2`, ... Functions: `prime(k)` is
//! `p_k`, `sqprod(k)` is `p_1^2 * ... * p_k^2` (1 when `k = 0`).
//! Division must be exact; arithmetic is checked `i128`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Node {
    Int(i128),
    Var(String),
    Call(String, Box<Node>),
    Neg(Box<Node>),
    Bin(Op, Box<Node>, Box<Node>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

/// A parsed index formula. Keeps its source text for display and serde.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexExpr {
    source: String,
    root: Node,
}

/// Values for the free symbols of an [`IndexExpr`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bindings {
    pub n: Option<i128>,
    pub t: Option<i128>,
    pub j: Option<i128>,
    pub alpha: Option<i128>,
    /// `primes[0]` is `p1`.
    pub primes: Vec<i128>,
}

impl Bindings {
    fn var(&self, name: &str) -> Result<i128> {
        let unbound = || Error::Expr(format!("unbound symbol `{name}`"));
        match name {
            "n" => self.n.ok_or_else(unbound),
            "t" => self.t.ok_or_else(unbound),
            "j" => self.j.ok_or_else(unbound),
            "alpha" => self.alpha.ok_or_else(unbound),
            _ => {
                let k: usize = name
                    .strip_prefix('p')
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(|| Error::Expr(format!("unknown symbol `{name}`")))?;
                self.prime(k as i128)
            }
        }
    }

    fn prime(&self, k: i128) -> Result<i128> {
        if k < 1 || k as usize > self.primes.len() {
            return Err(Error::Expr(format!(
                "p{k} is not bound ({} primes)",
                self.primes.len()
            )));
        }
        Ok(self.primes[k as usize - 1])
    }
}

fn overflow() -> Error {
    Error::Expr("integer overflow".into())
}

impl Node {
    fn eval(&self, b: &Bindings) -> Result<i128> {
        match self {
            Node::Int(v) => Ok(*v),
            Node::Var(name) => b.var(name),
            Node::Neg(x) => x.eval(b)?.checked_neg().ok_or_else(overflow),
            Node::Call(f, arg) => {
                let k = arg.eval(b)?;
                match f.as_str() {
                    "prime" => b.prime(k),
                    "sqprod" => {
                        if k < 0 {
                            return Err(Error::Expr(format!("sqprod({k})")));
                        }
                        (1..=k).try_fold(1i128, |acc, i| {
                            let p = b.prime(i)?;
                            acc.checked_mul(p * p).ok_or_else(overflow)
                        })
                    }
                    _ => Err(Error::Expr(format!("unknown function `{f}`"))),
                }
            }
            Node::Bin(op, l, r) => {
                let (x, y) = (l.eval(b)?, r.eval(b)?);
                match op {
                    Op::Add => x.checked_add(y).ok_or_else(overflow),
                    Op::Sub => x.checked_sub(y).ok_or_else(overflow),
                    Op::Mul => x.checked_mul(y).ok_or_else(overflow),
                    Op::Div => {
                        if y == 0 {
                            return Err(Error::Expr("division by zero".into()));
                        }
                        if x % y != 0 {
                            return Err(Error::Expr(format!("{x} is not divisible by {y}")));
                        }
                        Ok(x / y)
                    }
                    Op::Pow => {
                        let e = u32::try_from(y)
                            .map_err(|_| Error::Expr(format!("bad exponent {y}")))?;
                        x.checked_pow(e).ok_or_else(overflow)
                    }
                }
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Expr(format!("{msg} at offset {}", self.pos))
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat(b'+') {
                Op::Add
            } else if self.eat(b'-') {
                Op::Sub
            } else {
                return Ok(lhs);
            };
            lhs = Node::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat(b'*') {
                Op::Mul
            } else if self.eat(b'/') {
                Op::Div
            } else {
                return Ok(lhs);
            };
            lhs = Node::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if self.eat(b'-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            return Ok(Node::Bin(Op::Pow, Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                text.parse()
                    .map(Node::Int)
                    .map_err(|_| self.err("integer literal too large"))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos])
                    .expect("ascii")
                    .to_string();
                if self.eat(b'(') {
                    let arg = self.expr()?;
                    if !self.eat(b')') {
                        return Err(self.err("expected `)`"));
                    }
                    if name != "prime" && name != "sqprod" {
                        return Err(Error::Expr(format!("unknown function `{name}`")));
                    }
                    Ok(Node::Call(name, Box::new(arg)))
                } else {
                    Ok(Node::Var(name))
                }
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

impl IndexExpr {
    pub fn parse(source: &str) -> Result<Self> {
        let mut p = Parser {
            src: source.as_bytes(),
            pos: 0,
        };
        let root = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(IndexExpr {
            source: source.to_string(),
            root,
        })
    }

    pub fn eval(&self, bindings: &Bindings) -> Result<i128> {
        self.root.eval(bindings).map_err(|e| match e {
            Error::Expr(msg) => Error::Expr(format!("{msg} in `{}`", self.source)),
            other => other,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

impl FromStr for IndexExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IndexExpr::parse(s)
    }
}

impl fmt::Display for IndexExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl Serialize for IndexExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.source)
    }
}

impl<'de> Deserialize<'de> for IndexExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        IndexExpr::parse(&s).map_err(serde::de::Error::custom)
    }
}
