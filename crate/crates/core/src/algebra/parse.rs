use num::bigint::BigInt;
use num::rational::BigRational;

use super::{AlgebraError, AlgebraPresentation, Element};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Name(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Bar,
    Slash,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Token)>, AlgebraError> {
    let mut out = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '+' => Token::Plus,
            '-' | '−' => Token::Minus,
            '*' | '·' => Token::Star,
            '^' => Token::Caret,
            '|' | '⊗' => Token::Bar,
            '/' => Token::Slash,
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    digits.push(d);
                    chars.next();
                }
                out.push((pos, Token::Int(digits.parse().unwrap())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    name.push(d);
                    chars.next();
                }
                out.push((pos, Token::Name(name)));
                continue;
            }
            other => {
                return Err(AlgebraError::Parse { position: pos, message: format!("unexpected character `{other}`") })
            }
        };
        chars.next();
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    alg: &'a AlgebraPresentation,
    tokens: Vec<(usize, Token)>,
    at: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn error(&self, message: impl Into<String>) -> AlgebraError {
        AlgebraError::Parse { position: self.pos(), message: message.into() }
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<BigInt, AlgebraError> {
        match self.peek() {
            Some(Token::Int(i)) => {
                let i = i.clone();
                self.at += 1;
                Ok(i)
            }
            _ => Err(self.error("expected an integer")),
        }
    }

    fn element(&mut self) -> Result<Element, AlgebraError> {
        let mut acc = self.alg.zero();
        let mut negative = self.eat(&Token::Minus);
        loop {
            let mut term = self.term()?;
            if negative {
                term = term.neg();
            }
            acc = acc.add(&term)?;
            if self.eat(&Token::Plus) {
                negative = false;
            } else if self.eat(&Token::Minus) {
                negative = true;
            } else if self.peek().is_none() {
                return Ok(acc);
            } else {
                return Err(self.error("expected `+`, `-` or end of input"));
            }
        }
    }

    // [coefficient ['*']] block ('|' block)*
    fn term(&mut self) -> Result<Element, AlgebraError> {
        let mut coefficient = None;
        let unit_block = matches!(self.tokens.get(self.at + 1), Some((_, Token::Bar)));
        if matches!(self.peek(), Some(Token::Int(_))) && !unit_block {
            let num = self.int()?;
            let den = if self.eat(&Token::Slash) { self.int()? } else { BigInt::from(1) };
            if den == BigInt::from(0) {
                return Err(self.error("zero denominator"));
            }
            coefficient = Some(BigRational::new(num, den));
            // a bare number is a multiple of the unit
            let continues = matches!(self.peek(), Some(Token::Star) | Some(Token::Name(_)));
            if !continues && !matches!(self.peek(), Some(Token::Bar)) {
                let c = self.alg.ring().try_scalar(coefficient.as_ref().unwrap())?;
                return Ok(self.alg.one().scalar_mul(&c));
            }
            self.eat(&Token::Star);
        }
        let layout = self.alg.layout();
        let mut product = self.alg.one();
        let mut factor = 0;
        loop {
            if factor >= layout.factors {
                return Err(self.error(format!("expected at most {} tensor factors", layout.factors)));
            }
            let block = self.block(factor)?;
            product = self.alg.multiply(&product, &block)?;
            factor += 1;
            if !self.eat(&Token::Bar) {
                break;
            }
        }
        if factor != layout.factors && factor != 1 {
            return Err(self.error(format!("expected {} tensor factors, got {factor}", layout.factors)));
        }
        if factor == 1 && layout.factors > 1 {
            return Err(self.error(format!("expected {} tensor factors", layout.factors)));
        }
        match coefficient {
            Some(c) => Ok(product.scalar_mul(&self.alg.ring().try_scalar(&c)?)),
            None => Ok(product),
        }
    }

    // '1' | factor ('*' factor)*
    fn block(&mut self, factor: usize) -> Result<Element, AlgebraError> {
        if let Some(Token::Int(i)) = self.peek() {
            if *i == BigInt::from(1) {
                self.at += 1;
                return Ok(self.alg.one());
            }
            return Err(self.error("only `1` may stand for a unit factor"));
        }
        let mut acc = self.alg.one();
        loop {
            let name = match self.peek() {
                Some(Token::Name(n)) => n.clone(),
                _ => return Err(self.error("expected a generator name")),
            };
            let index = self.lookup(&name, factor)?;
            self.at += 1;
            let power = if self.eat(&Token::Caret) {
                let p = self.int()?;
                u32::try_from(p).map_err(|_| self.error("exponent too large"))?
            } else {
                1
            };
            let g = self.alg.power(&self.alg.generator(index), power)?;
            acc = self.alg.multiply(&acc, &g)?;
            if !self.eat(&Token::Star) {
                return Ok(acc);
            }
        }
    }

    fn lookup(&self, name: &str, factor: usize) -> Result<usize, AlgebraError> {
        let n = self.alg.layout().base_len;
        (factor * n..(factor + 1) * n)
            .find(|&i| self.alg.base_name(i) == name)
            .ok_or_else(|| self.error(format!("unknown generator `{name}`")))
    }
}

impl AlgebraPresentation {
    /// Parses `2*x1*y^2 - x3`, with `|` (or `⊗`) separating tensor factors
    /// in a tensor power: `x1|y - y|x1`.
    pub fn parse_element(&self, s: &str) -> Result<Element, AlgebraError> {
        let tokens = tokenize(s)?;
        if tokens.is_empty() {
            return Err(AlgebraError::Parse { position: 0, message: "empty element".into() });
        }
        let mut p = Parser { alg: self, tokens, at: 0, end: s.len() };
        p.element()
    }
}
