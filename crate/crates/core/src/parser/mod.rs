//! Expression grammar and problem-file reader.
//!
//! Precedence from loosest to tightest: `+ -` (left), `* /` (left), unary
//! minus, `^` (right, integer exponent), atoms. Unary minus binds looser than
//! `^`, so `-x1^2` reads as `-(x1^2)`. There is no implicit multiplication.

mod lexer;
mod printer;
mod problem;

use thiserror::Error;

use crate::expr::{Expr, Func};
use lexer::found_at;

pub use lexer::{tokenize, Token, TokenKind};
pub use printer::print_expr;
pub use problem::{parse_problem, parse_rational, write_problem, ProblemError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("exponent at byte {offset} is not an integer constant")]
    NonIntegerExponent { offset: usize },
    #[error("time symbol `t` not allowed here (byte {offset})")]
    TimeNotAllowed { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::NonIntegerExponent { offset }
            | ParseError::TimeNotAllowed { offset } => *offset,
        }
    }
}

/// Whether the time symbol `t` is accepted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TimeSymbol {
    Allowed,
    Forbidden,
}

/// Parses an expression over `x1..x{dims}` and `t`.
pub fn parse_expr(src: &str, dims: usize) -> Result<Expr, ParseError> {
    parse_expr_with(src, dims, TimeSymbol::Allowed)
}

/// Parses a time-free expression over `x1..x{dims}`.
pub fn parse_spatial_expr(src: &str, dims: usize) -> Result<Expr, ParseError> {
    parse_expr_with(src, dims, TimeSymbol::Forbidden)
}

pub fn parse_expr_with(src: &str, dims: usize, time: TimeSymbol) -> Result<Expr, ParseError> {
    let tokens = tokenize(src)?;
    let mut parser = Parser {
        src,
        tokens,
        pos: 0,
        dims,
        time,
    };
    let e = parser.additive()?;
    parser.expect(TokenKind::End, &["operator", "end of input"])?;
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Token<'a>>,
    pos: usize,
    dims: usize,
    time: TimeSymbol,
}

const ATOM_START: &[&str] = &["number", "identifier", "'('", "'-'"];

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token<'a> {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token<'a> {
        let tok = self.tokens[self.pos].clone();
        if tok.kind != TokenKind::End {
            self.pos += 1;
        }
        tok
    }

    fn error_here(&self, expected: &[&str]) -> ParseError {
        let tok = self.peek();
        ParseError::Syntax {
            offset: tok.offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: if tok.kind == TokenKind::End {
                "end of input".into()
            } else {
                found_at(self.src, tok.offset)
            },
        }
    }

    fn expect(&mut self, kind: TokenKind, expected: &[&str]) -> Result<Token<'a>, ParseError> {
        if self.peek().kind == kind {
            Ok(self.bump())
        } else {
            Err(self.error_here(expected))
        }
    }

    fn additive(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.multiplicative()?;
        loop {
            match self.peek().kind {
                TokenKind::Plus => {
                    self.bump();
                    let rhs = self.multiplicative()?;
                    lhs = lhs + rhs;
                }
                TokenKind::Minus => {
                    self.bump();
                    let rhs = self.multiplicative()?;
                    lhs = lhs - rhs;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn multiplicative(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek().kind {
                TokenKind::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = lhs * rhs;
                }
                TokenKind::Slash => {
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = lhs / rhs;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek().kind == TokenKind::Minus {
            self.bump();
            let operand = self.unary()?;
            return Ok(operand.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek().kind != TokenKind::Caret {
            return Ok(base);
        }
        self.bump();
        let offset = self.peek().offset;
        // Right-associative; the exponent may carry its own unary minus.
        let exponent = self.unary()?;
        let k = exponent
            .as_const()
            .filter(|c| c.is_integer())
            .and_then(|c| i64::try_from(c.to_integer()).ok())
            .ok_or(ParseError::NonIntegerExponent { offset })?;
        Ok(base.pow(k))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let tok = self.peek().clone();
        match tok.kind {
            TokenKind::Number => {
                self.bump();
                Ok(Expr::Const(tok.number_value()))
            }
            TokenKind::LParen => {
                self.bump();
                let inner = self.additive()?;
                self.expect(TokenKind::RParen, &["')'", "operator"])?;
                Ok(inner)
            }
            TokenKind::Ident => {
                self.bump();
                self.identifier(&tok)
            }
            _ => Err(self.error_here(ATOM_START)),
        }
    }

    fn identifier(&mut self, tok: &Token<'a>) -> Result<Expr, ParseError> {
        let name = tok.lexeme;
        if name == "t" {
            return match self.time {
                TimeSymbol::Allowed => Ok(Expr::Time),
                TimeSymbol::Forbidden => Err(ParseError::TimeNotAllowed { offset: tok.offset }),
            };
        }
        if let Some(index) = variable_index(name) {
            if (1..=self.dims).contains(&index) {
                return Ok(Expr::Var(index));
            }
        }
        if let Some(func) = Func::from_name(name) {
            self.expect(TokenKind::LParen, &["'('"])?;
            let arg = self.additive()?;
            self.expect(TokenKind::RParen, &["')'", "operator"])?;
            return Ok(Expr::apply(func, arg));
        }
        Err(ParseError::UnknownIdentifier {
            name: name.to_string(),
            offset: tok.offset,
        })
    }
}

/// `x<k>` with a canonical decimal index.
fn variable_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}
