//! Recursive-descent parser for bracketed expressions.
//!
//! ```text
//! expr     := '0' | [sign] term (sign term)*
//! term     := [rational ['*']] word
//! word     := NAME | '(' word word ')'
//! rational := INT ['/' INT]
//! ```
//!
//! Whitespace is insignificant between tokens. Words need not be good; they
//! are normalized into the good-word basis.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use presym_core::poly::Multiplier;
use presym_core::{Alphabet, Coefficient, Poly, Word};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown generator `{name}` at offset {offset}")]
    UnknownGenerator { name: String, offset: usize },
    #[error("zero denominator at offset {offset}")]
    ZeroDenominator { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownGenerator { offset, .. }
            | ParseError::ZeroDenominator { offset } => *offset,
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    alphabet: Option<&'a Alphabet>,
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, alphabet: Option<&'a Alphabet>) -> Self {
        Parser {
            text,
            pos: 0,
            alphabet,
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.rest().chars().next() {
            self.pos += c.len_utf8();
        }
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.syntax(format!("unexpected `{c}`"))),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let digits: &str = {
            let rest = self.rest();
            let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
            &rest[..end]
        };
        if digits.is_empty() {
            return Err(self.syntax("expected an integer"));
        }
        self.pos += digits.len();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn rational(&mut self) -> Result<Coefficient, ParseError> {
        let numerator = self.integer()?;
        if self.peek() == Some('/') {
            self.bump();
            self.skip_ws();
            let at = self.pos;
            let denominator = self.integer()?;
            if denominator.is_zero() {
                return Err(ParseError::ZeroDenominator { offset: at });
            }
            return Ok(Coefficient::new(numerator, denominator));
        }
        Ok(Coefficient::from_integer(numerator))
    }

    fn name(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        match rest.chars().next() {
            Some(c) if is_name_start(c) => {}
            Some(c) => return Err(self.syntax(format!("expected a word, found `{c}`"))),
            None => return Err(self.syntax("expected a word, found end of input")),
        }
        let end = rest.find(|c: char| !is_name_char(c)).unwrap_or(rest.len());
        self.pos += end;
        Ok(&rest[..end])
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        if self.peek() == Some('(') {
            self.bump();
            let left = self.word()?;
            let right = self.word()?;
            if self.peek() != Some(')') {
                return Err(self.syntax("expected `)`"));
            }
            self.bump();
            return Ok(Word::node(left, right));
        }
        self.skip_ws();
        let offset = self.pos;
        let name = self.name()?;
        let alphabet = self.alphabet.expect("word parsing needs an alphabet");
        alphabet
            .letter(name)
            .map(Word::leaf)
            .ok_or_else(|| ParseError::UnknownGenerator {
                name: name.to_string(),
                offset,
            })
    }

    fn term(&mut self) -> Result<(Coefficient, Word), ParseError> {
        let coefficient = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.rational()?;
                if self.peek() == Some('*') {
                    self.bump();
                }
                c
            }
            _ => Coefficient::one(),
        };
        Ok((coefficient, self.word()?))
    }

    fn expression(&mut self, mul: &mut Multiplier) -> Result<Poly, ParseError> {
        if self.rest().trim() == "0" {
            self.pos = self.text.len();
            return Ok(Poly::zero());
        }
        let mut out = Poly::zero();
        let mut negative = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let (coefficient, word) = self.term()?;
            let coefficient = if negative { -coefficient } else { coefficient };
            let expanded = mul.normalize(&word);
            out.add_scaled(&expanded, &coefficient);
            negative = match self.peek() {
                Some('+') => false,
                Some('-') => true,
                _ => break,
            };
            self.bump();
        }
        self.expect_end()?;
        Ok(out)
    }
}

/// Parses an expression over the given generators into the good-word basis.
pub fn parse_expression(text: &str, alphabet: &Alphabet) -> Result<Poly, ParseError> {
    parse_expression_with(text, alphabet, &mut Multiplier::new())
}

pub fn parse_expression_with(
    text: &str,
    alphabet: &Alphabet,
    mul: &mut Multiplier,
) -> Result<Poly, ParseError> {
    Parser::new(text, Some(alphabet)).expression(mul)
}

/// Parses a single bracketed word.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word, ParseError> {
    let mut parser = Parser::new(text, Some(alphabet));
    let word = parser.word()?;
    parser.expect_end()?;
    Ok(word)
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Result<Coefficient, ParseError> {
    let mut parser = Parser::new(text, None);
    let negative = parser.peek() == Some('-');
    if negative {
        parser.bump();
    }
    let value = parser.rational()?;
    parser.expect_end()?;
    Ok(if negative { -value } else { value })
}

/// Generator names appearing in the texts, sorted and deduplicated.
pub fn scan_names<'t>(texts: impl IntoIterator<Item = &'t str>) -> Vec<String> {
    let mut names = Vec::new();
    for text in texts {
        let mut chars = text.char_indices().peekable();
        while let Some((start, c)) = chars.next() {
            if !is_name_start(c) {
                continue;
            }
            let mut end = start + c.len_utf8();
            while let Some(&(i, c)) = chars.peek() {
                if !is_name_char(c) {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
            }
            names.push(text[start..end].to_string());
        }
    }
    names.sort();
    names.dedup();
    names
}
