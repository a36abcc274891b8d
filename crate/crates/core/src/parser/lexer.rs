use num::{BigInt, Zero};

use super::ParseError;
use crate::expr::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Number,
    Ident,
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

impl TokenKind {
    pub fn describe(self) -> &'static str {
        match self {
            TokenKind::Number => "number",
            TokenKind::Ident => "identifier",
            TokenKind::Plus => "'+'",
            TokenKind::Minus => "'-'",
            TokenKind::Star => "'*'",
            TokenKind::Slash => "'/'",
            TokenKind::Caret => "'^'",
            TokenKind::LParen => "'('",
            TokenKind::RParen => "')'",
            TokenKind::Comma => "','",
            TokenKind::End => "end of input",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token<'a> {
    pub kind: TokenKind,
    pub lexeme: &'a str,
    /// Byte offset of the first character.
    pub offset: usize,
}

impl Token<'_> {
    /// Exact value of a number token; decimals are read positionally.
    pub fn number_value(&self) -> Rational {
        let (int_part, frac_part) = match self.lexeme.split_once('.') {
            Some((i, f)) => (i, f),
            None => (self.lexeme, ""),
        };
        let digits = format!("{int_part}{frac_part}");
        let numer: BigInt = digits.parse().unwrap_or_else(|_| BigInt::zero());
        let denom = num::pow::pow(BigInt::from(10), frac_part.len());
        Rational::new(numer, denom)
    }
}

pub fn tokenize(src: &str) -> Result<Vec<Token<'_>>, ParseError> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'+' => Some(TokenKind::Plus),
            b'-' => Some(TokenKind::Minus),
            b'*' => Some(TokenKind::Star),
            b'/' => Some(TokenKind::Slash),
            b'^' => Some(TokenKind::Caret),
            b'(' => Some(TokenKind::LParen),
            b')' => Some(TokenKind::RParen),
            b',' => Some(TokenKind::Comma),
            _ => None,
        };
        if let Some(kind) = single {
            tokens.push(Token {
                kind,
                lexeme: &src[i..i + 1],
                offset: i,
            });
            i += 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                if i >= bytes.len() || !bytes[i].is_ascii_digit() {
                    return Err(ParseError::Syntax {
                        offset: i,
                        expected: vec!["digit".into()],
                        found: found_at(src, i),
                    });
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            tokens.push(Token {
                kind: TokenKind::Number,
                lexeme: &src[start..i],
                offset: start,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            tokens.push(Token {
                kind: TokenKind::Ident,
                lexeme: &src[start..i],
                offset: start,
            });
            continue;
        }
        return Err(ParseError::Syntax {
            offset: start,
            expected: vec!["expression".into()],
            found: found_at(src, start),
        });
    }
    tokens.push(Token {
        kind: TokenKind::End,
        lexeme: "",
        offset: src.len(),
    });
    Ok(tokens)
}

pub(super) fn found_at(src: &str, offset: usize) -> String {
    match src.get(offset..).and_then(|s| s.chars().next()) {
        Some(ch) => format!("'{ch}'"),
        None => "end of input".into(),
    }
}
