//! Plain-text grammar for field elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := power (('*' | '/') power)*
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Integers are read modulo 2. `a` is α and `b` is β; extension fields add
//! their own identifiers (`g` for γ). The parser builds a small syntax tree
//! that each field evaluates with its own arithmetic.

use super::FieldError;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(bool),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Arithmetic needed to evaluate an [`Expr`].
pub trait Evaluator {
    type Value: Clone;
    fn constant(&self, one: bool) -> Self::Value;
    fn variable(&self, name: &str) -> Option<Self::Value>;
    fn add(&self, x: Self::Value, y: Self::Value) -> Self::Value;
    fn mul(&self, x: Self::Value, y: Self::Value) -> Self::Value;
    /// `None` on division by zero.
    fn div(&self, x: Self::Value, y: Self::Value) -> Option<Self::Value>;
}

impl Expr {
    pub fn eval<E: Evaluator>(&self, ev: &E) -> Result<E::Value, FieldError> {
        Ok(match self {
            Expr::Const(c) => ev.constant(*c),
            Expr::Var(v) => ev
                .variable(v)
                .ok_or_else(|| FieldError::Parse(format!("unknown variable `{v}`")))?,
            Expr::Add(x, y) => ev.add(x.eval(ev)?, y.eval(ev)?),
            Expr::Mul(x, y) => ev.mul(x.eval(ev)?, y.eval(ev)?),
            Expr::Div(x, y) => ev
                .div(x.eval(ev)?, y.eval(ev)?)
                .ok_or(FieldError::ZeroDenominator)?,
            Expr::Pow(x, e) => {
                let base = x.eval(ev)?;
                let mut acc = ev.constant(true);
                for _ in 0..*e {
                    acc = ev.mul(acc, base.clone());
                }
                acc
            }
        })
    }
}

pub fn parse(src: &str) -> Result<Expr, FieldError> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(FieldError::Parse(format!(
            "unexpected trailing input in `{src}`"
        )));
    }
    Ok(e)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>, FieldError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut n: u64 = 0;
            while let Some(&d) = chars.peek() {
                let Some(v) = d.to_digit(10) else { break };
                n = n.saturating_mul(10).saturating_add(v as u64);
                chars.next();
            }
            out.push(Tok::Int(n));
        } else if c.is_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_alphanumeric() {
                    break;
                }
                s.push(d);
                chars.next();
            }
            out.push(Tok::Ident(s));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            chars.next();
        } else {
            return Err(FieldError::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat_op(&mut self, ops: &str) -> Option<char> {
        match self.peek() {
            Some(Tok::Op(c)) if ops.contains(*c) => {
                let c = *c;
                self.pos += 1;
                Some(c)
            }
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Expr, FieldError> {
        let mut lhs = self.term()?;
        while self.eat_op("+-").is_some() {
            let rhs = self.term()?;
            lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, FieldError> {
        let mut lhs = self.power()?;
        while let Some(op) = self.eat_op("*/") {
            let rhs = self.power()?;
            lhs = if op == '*' {
                Expr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn power(&mut self) -> Result<Expr, FieldError> {
        let base = self.atom()?;
        if self.eat_op("^").is_some() {
            match self.tokens.get(self.pos) {
                Some(Tok::Int(n)) => {
                    let n = u32::try_from(*n)
                        .map_err(|_| FieldError::Parse("exponent too large".into()))?;
                    self.pos += 1;
                    return Ok(Expr::Pow(Box::new(base), n));
                }
                _ => return Err(FieldError::Parse("expected an integer exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, FieldError> {
        match self.tokens.get(self.pos).cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Const(n % 2 == 1))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Var(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.eat_op(")").is_none() {
                    return Err(FieldError::Parse("missing `)`".into()));
                }
                Ok(e)
            }
            Some(t) => Err(FieldError::Parse(format!("unexpected token {t:?}"))),
            None => Err(FieldError::Parse("unexpected end of input".into())),
        }
    }
}
