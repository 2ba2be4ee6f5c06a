use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;

use super::{PathAlgebra, Term, TermError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: &'static str,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: {}", self.position, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token<'a> {
    Word(&'a str),
    Plus,
    Minus,
    Star,
    Open,
    Close,
}

fn is_word_char(c: char) -> bool {
    !c.is_whitespace() && !"()+-*".contains(c)
}

fn tokenize(s: &str) -> alloc::vec::Vec<(usize, Token<'_>)> {
    let mut out = alloc::vec::Vec::new();
    let mut it = s.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                it.next();
                continue;
            }
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '(' => Token::Open,
            ')' => Token::Close,
            _ => {
                let mut end = i;
                while let Some(&(j, d)) = it.peek() {
                    if !is_word_char(d) {
                        break;
                    }
                    end = j + d.len_utf8();
                    it.next();
                }
                out.push((i, Token::Word(&s[i..end])));
                continue;
            }
        };
        it.next();
        out.push((i, tok));
    }
    out
}

struct Parser<'a, 'g> {
    alg: &'a PathAlgebra<'g>,
    tokens: alloc::vec::Vec<(usize, Token<'a>)>,
    pos: usize,
    len: usize,
}

impl<'a, 'g> Parser<'a, 'g> {
    fn peek(&self) -> Option<&Token<'a>> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.len, |(i, _)| *i)
    }

    fn error(&self, message: &'static str) -> TermError {
        TermError::Syntax(ParseError { position: self.offset(), message })
    }

    fn expr(&mut self) -> Result<Term<'g>, TermError> {
        let mut acc = self.alg.zero();
        let mut negate = false;
        match self.peek() {
            Some(Token::Minus) => {
                negate = true;
                self.pos += 1;
            }
            Some(Token::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let p = self.product()?;
            acc = if negate { acc.sub(&p)? } else { acc.add(&p)? };
            match self.peek() {
                Some(Token::Plus) => negate = false,
                Some(Token::Minus) => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<Term<'g>, TermError> {
        let mut acc: Option<Term<'g>> = None;
        while matches!(self.peek(), Some(Token::Word(_) | Token::Open)) {
            let f = self.factor()?;
            acc = Some(match acc {
                None => f,
                Some(a) => a.mul(&f)?,
            });
        }
        acc.ok_or_else(|| self.error("expected a generator, integer or '('"))
    }

    fn factor(&mut self) -> Result<Term<'g>, TermError> {
        let base = match self.peek().cloned() {
            Some(Token::Word(w)) => {
                self.pos += 1;
                self.word(w)?
            }
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                inner
            }
            _ => return Err(self.error("expected a generator, integer or '('")),
        };
        let mut t = base;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            t = t.star();
        }
        Ok(t)
    }

    /// Graph ids take precedence over integer literals.
    fn word(&self, w: &str) -> Result<Term<'g>, TermError> {
        let g = self.alg.graph();
        if g.has_id(w) {
            return self.alg.generator(w);
        }
        if w.bytes().all(|b| b.is_ascii_digit()) {
            let n: BigInt = w.parse().map_err(|_| self.error("bad integer"))?;
            return Ok(self.alg.scalar(n));
        }
        Err(TermError::UnknownGenerator(String::from(w)))
    }
}

pub(super) fn parse<'g>(alg: &PathAlgebra<'g>, expr: &str) -> Result<Term<'g>, TermError> {
    let tokens = tokenize(expr);
    let mut p = Parser { alg, tokens, pos: 0, len: expr.len() };
    let t = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.error("unexpected token"));
    }
    Ok(t)
}
