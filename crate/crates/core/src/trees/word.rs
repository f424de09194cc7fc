use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WordOp {
    Mul,
    LDiv,
    RDiv,
}

impl WordOp {
    fn symbol(self) -> char {
        match self {
            WordOp::Mul => '*',
            WordOp::LDiv => '\\',
            WordOp::RDiv => '/',
        }
    }
}

/// A word in the free loop: variables `x1..xn`, the unit `e`, and the three
/// binary operations. Always fully parenthesized.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LoopWord {
    Var(usize),
    Unit,
    Op(WordOp, Box<LoopWord>, Box<LoopWord>),
}

impl LoopWord {
    pub fn var(i: usize) -> Self {
        LoopWord::Var(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: LoopWord, b: LoopWord) -> Self {
        LoopWord::Op(WordOp::Mul, Box::new(a), Box::new(b))
    }

    pub fn ldiv(a: LoopWord, b: LoopWord) -> Self {
        LoopWord::Op(WordOp::LDiv, Box::new(a), Box::new(b))
    }

    pub fn rdiv(a: LoopWord, b: LoopWord) -> Self {
        LoopWord::Op(WordOp::RDiv, Box::new(a), Box::new(b))
    }

    /// Largest variable index used (0 if none).
    pub fn max_var(&self) -> usize {
        match self {
            LoopWord::Var(i) => *i,
            LoopWord::Unit => 0,
            LoopWord::Op(_, a, b) => a.max_var().max(b.max_var()),
        }
    }

    /// Number of occurrences of `x_i` for `i` in `1..=nvars`.
    pub fn occurrences(&self, nvars: usize) -> Vec<usize> {
        let mut out = vec![0; nvars];
        self.count_into(&mut out);
        out
    }

    fn count_into(&self, out: &mut [usize]) {
        match self {
            LoopWord::Var(i) => out[*i - 1] += 1,
            LoopWord::Unit => {}
            LoopWord::Op(_, a, b) => {
                a.count_into(out);
                b.count_into(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            LoopWord::Op(_, a, b) => 1 + a.depth().max(b.depth()),
            _ => 0,
        }
    }
}

impl fmt::Display for LoopWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoopWord::Var(i) => write!(f, "x{i}"),
            LoopWord::Unit => f.write_str("e"),
            LoopWord::Op(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub lhs: LoopWord,
    pub rhs: LoopWord,
    pub nvars: usize,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
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

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { offset: self.pos, message: message.into() })
    }

    fn expr(&mut self) -> Result<LoopWord> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let lhs = self.expr()?;
                let op = match self.peek() {
                    Some(b'*') => WordOp::Mul,
                    Some(b'\\') => WordOp::LDiv,
                    Some(b'/') => WordOp::RDiv,
                    _ => return self.syntax("expected one of `*`, `\\`, `/`"),
                };
                self.pos += 1;
                let rhs = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.syntax("expected `)`");
                }
                self.pos += 1;
                Ok(LoopWord::Op(op, Box::new(lhs), Box::new(rhs)))
            }
            Some(c) if c.is_ascii_alphabetic() => self.ident(),
            None => self.syntax("unexpected end of input"),
            Some(_) => self.syntax("expected a variable, `e` or `(`"),
        }
    }

    fn ident(&mut self) -> Result<LoopWord> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        if name == "e" {
            return Ok(LoopWord::Unit);
        }
        let index = name
            .strip_prefix('x')
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) && !d.starts_with('0'))
            .and_then(|d| d.parse::<usize>().ok());
        match index {
            Some(i) if i <= self.nvars => Ok(LoopWord::Var(i)),
            Some(i) => Err(Error::ArityOverflow { index: i, arity: self.nvars }),
            None => Err(Error::UnknownIdentifier { offset: start, name: name.to_string() }),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => self.syntax("trailing input"),
        }
    }
}

/// Parses a fully parenthesized word over `x1..x{nvars}` and `e`.
pub fn parse_word(src: &str, nvars: usize) -> Result<LoopWord> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, nvars };
    let w = p.expr()?;
    p.finish()?;
    Ok(w)
}

/// Parses `word = word`.
pub fn parse_identity(src: &str, nvars: usize) -> Result<Identity> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, nvars };
    let lhs = p.expr()?;
    if p.peek() != Some(b'=') {
        return p.syntax("expected `=`");
    }
    p.pos += 1;
    let rhs = p.expr()?;
    p.finish()?;
    Ok(Identity { lhs, rhs, nvars })
}
