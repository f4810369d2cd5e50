//! Tokenizer shared by the element, polynomial, braid-word and free-word parsers.
//!
//! Letters may carry a handle/strand index written directly after them (`a1`, `s2`) or
//! as a subscript (`a_1`, `a_{1}`);
//! exponents are written `^3`, `^-2` or `^{-2}`.

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Token {
    Num(BigInt),
    Sym(char, Option<usize>),
    Caret,
    LBrace,
    RBrace,
    Plus,
    Minus,
    LParen,
    RParen,
    Star,
    Comma,
    Semi,
}

fn normalize_letter(c: char) -> char {
    match c {
        'σ' => 's',
        'α' => 'a',
        'β' => 'b',
        other => other,
    }
}

pub(crate) fn lex(input: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Token::Num(digits.parse().expect("ascii digits")));
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '{' => {
                out.push(Token::LBrace);
                i += 1;
            }
            '}' => {
                out.push(Token::RBrace);
                i += 1;
            }
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' | '−' => {
                out.push(Token::Minus);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '*' | '.' | '·' => {
                out.push(Token::Star);
                i += 1;
            }
            ',' => {
                out.push(Token::Comma);
                i += 1;
            }
            ';' => {
                out.push(Token::Semi);
                i += 1;
            }
            c if c.is_alphabetic() => {
                let letter = normalize_letter(c);
                i += 1;
                // LaTeX subscripts: `a_1`, `a_{12}`
                let braced = chars.get(i) == Some(&'_') && chars.get(i + 1) == Some(&'{');
                if chars.get(i) == Some(&'_') {
                    i += if braced { 2 } else { 1 };
                }
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let end = i;
                if braced {
                    if chars.get(i) != Some(&'}') {
                        return Err(Error::Parse(format!("unclosed subscript in `{input}`")));
                    }
                    i += 1;
                }
                let index = if start == end {
                    None
                } else {
                    let digits: String = chars[start..end].iter().collect();
                    Some(
                        digits
                            .parse()
                            .map_err(|_| Error::Parse(format!("index too large in `{input}`")))?,
                    )
                };
                out.push(Token::Sym(letter, index));
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character `{other}` in `{input}`"
                )))
            }
        }
    }
    Ok(out)
}

pub(crate) struct TokenStream {
    toks: Vec<Token>,
    pos: usize,
}

impl TokenStream {
    pub(crate) fn new(input: &str) -> Result<Self> {
        Ok(Self {
            toks: lex(input)?,
            pos: 0,
        })
    }

    pub(crate) fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    pub(crate) fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn expect(&mut self, want: Token) -> Result<()> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            other => Err(Error::Parse(format!("expected {want:?}, found {other:?}"))),
        }
    }

    /// Parses an optional `^e` suffix; absent means exponent 1.
    pub(crate) fn exponent(&mut self) -> Result<BigInt> {
        if self.peek() != Some(&Token::Caret) {
            return Ok(BigInt::from(1));
        }
        self.next();
        let braced = self.peek() == Some(&Token::LBrace);
        if braced {
            self.next();
        }
        let negative = match self.peek() {
            Some(Token::Minus) => {
                self.next();
                true
            }
            Some(Token::Plus) => {
                self.next();
                false
            }
            _ => false,
        };
        let value = match self.next() {
            Some(Token::Num(n)) => n,
            other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
        };
        if braced {
            self.expect(Token::RBrace)?;
        }
        Ok(if negative { -value } else { value })
    }

    /// Parses a signed integer, allowing a leading `-`.
    pub(crate) fn signed_int(&mut self) -> Result<BigInt> {
        let negative = match self.peek() {
            Some(Token::Minus) => {
                self.next();
                true
            }
            Some(Token::Plus) => {
                self.next();
                false
            }
            _ => false,
        };
        match self.next() {
            Some(Token::Num(n)) => Ok(if negative { -n } else { n }),
            other => Err(Error::Parse(format!("expected integer, found {other:?}"))),
        }
    }
}

/// A letter with optional index and an integer exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Letter {
    pub symbol: char,
    pub index: Option<usize>,
    pub exponent: BigInt,
}

/// Parses a juxtaposed product of letters such as `s1 a1^-1 b1` or `u^2 a1^{-2} b1^2`.
/// The empty string and the literal `1` both denote the empty word.
pub(crate) fn parse_word(input: &str) -> Result<Vec<Letter>> {
    let mut ts = TokenStream::new(input)?;
    let mut letters = Vec::new();
    if ts.toks.len() == 1 && ts.toks[0] == Token::Num(BigInt::from(1)) {
        return Ok(letters);
    }
    while let Some(tok) = ts.next() {
        match tok {
            Token::Star => continue,
            Token::Sym(symbol, index) => {
                let exponent = ts.exponent()?;
                letters.push(Letter {
                    symbol,
                    index,
                    exponent,
                });
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected {other:?} in word `{input}`"
                )))
            }
        }
    }
    Ok(letters)
}
