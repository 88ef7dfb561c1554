//! Expression syntax.
//!
//! ```text
//! sum     := ['+'|'-'] term (('+'|'-') term)*  |  '0'
//! term    := factor (('*' | whitespace) factor)*
//! factor  := head '[' index (',' index)* ']'
//! index   := ['-'] (symbol | integer)
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Sign;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndexValue {
    Symbol(String),
    Component(u64),
}

/// One index as written: a symbol or component, up (contravariant) or down (covariant).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexAtom {
    pub value: IndexValue,
    pub up: bool,
}

impl IndexAtom {
    pub fn symbol(name: &str, up: bool) -> Self {
        IndexAtom {
            value: IndexValue::Symbol(name.to_string()),
            up,
        }
    }

    pub fn component(value: u64, up: bool) -> Self {
        IndexAtom {
            value: IndexValue::Component(value),
            up,
        }
    }

    pub fn name(&self) -> Option<&str> {
        match &self.value {
            IndexValue::Symbol(s) => Some(s),
            IndexValue::Component(_) => None,
        }
    }
}

impl fmt::Display for IndexAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.up {
            f.write_str("-")?;
        }
        match &self.value {
            IndexValue::Symbol(s) => f.write_str(s),
            IndexValue::Component(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub head: String,
    pub indices: Vec<IndexAtom>,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.head)?;
        for (i, idx) in self.indices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{idx}")?;
        }
        f.write_str("]")
    }
}

/// A signed product of factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub sign: Sign,
    pub factors: Vec<Factor>,
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign.is_minus() {
            f.write_str("-")?;
        }
        for (i, fac) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{fac}")?;
        }
        Ok(())
    }
}

/// A sum of monomials; the empty sum is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expression {
    pub terms: Vec<Monomial>,
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i == 0 {
                write!(f, "{t}")?;
            } else if t.sign.is_minus() {
                write!(f, " - {}", Monomial { sign: Sign::Plus, factors: t.factors.clone() })?;
            } else {
                write!(f, " + {t}")?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return None,
        }
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.bump();
        }
        Some(&self.src[start..self.pos])
    }

    fn integer(&mut self) -> Result<Option<u64>> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Ok(None);
        }
        match self.src[start..self.pos].parse() {
            Ok(v) => Ok(Some(v)),
            Err(_) => {
                self.pos = start;
                self.err("component index out of range")
            }
        }
    }

    fn index(&mut self) -> Result<IndexAtom> {
        self.skip_ws();
        let up = !self.eat('-');
        if let Some(name) = self.ident() {
            return Ok(IndexAtom::symbol(name, up));
        }
        match self.integer()? {
            Some(v) => Ok(IndexAtom::component(v, up)),
            None => self.err("expected an index"),
        }
    }

    fn factor(&mut self) -> Result<Factor> {
        let Some(head) = self.ident() else {
            return self.err("expected a tensor head");
        };
        self.skip_ws();
        if !self.eat('[') {
            return self.err("expected '['");
        }
        let mut indices = vec![self.index()?];
        loop {
            self.skip_ws();
            if self.eat(']') {
                break;
            }
            if !self.eat(',') {
                return self.err("expected ',' or ']'");
            }
            indices.push(self.index()?);
        }
        Ok(Factor {
            head: head.to_string(),
            indices,
        })
    }

    fn term(&mut self, sign: Sign) -> Result<Monomial> {
        let mut factors = vec![self.factor()?];
        loop {
            self.skip_ws();
            if self.eat('*') {
                self.skip_ws();
                factors.push(self.factor()?);
            } else if self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(Monomial { sign, factors })
    }

    fn sign(&mut self) -> Option<Sign> {
        if self.eat('+') {
            Some(Sign::Plus)
        } else if self.eat('-') {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    fn expression(&mut self) -> Result<Expression> {
        self.skip_ws();
        if self.peek().is_none() {
            return self.err("empty expression");
        }
        if self.src.trim() == "0" {
            return Ok(Expression { terms: Vec::new() });
        }
        let mut sign = self.sign().unwrap_or(Sign::Plus);
        let mut terms = Vec::new();
        loop {
            self.skip_ws();
            terms.push(self.term(sign)?);
            self.skip_ws();
            if self.peek().is_none() {
                break;
            }
            match self.sign() {
                Some(s) => sign = s,
                None => return self.err("expected '+', '-', '*' or a factor"),
            }
        }
        Ok(Expression { terms })
    }
}

pub fn parse_expression(text: &str) -> Result<Expression> {
    Parser { src: text, pos: 0 }.expression()
}
