//! Recursive-descent parser.
//!
//! ```text
//! expr   := term (("+"|"-") term)* ;
//! term   := factor (("*"|"/") factor)* ;
//! factor := "-" factor | base ("^" factor)? ;
//! base   := NUMBER | IDENT | IDENT "(" expr ("," expr)* ")" | "(" expr ")" ;
//! ```
//!
//! `^` is right-associative and binds tighter than a leading minus, so
//! `-t^2` is `-(t^2)`. A minus directly in front of a number literal that is
//! not raised to a power folds into a negative constant.

use super::{Expr, Func};
use crate::error::ParseError;

/// Names recognized as function calls.
pub const FUNCTION_NAMES: [&str; 7] = ["sin", "cos", "tan", "exp", "ln", "sqrt", "abs"];

/// Identifiers reserved for weight expressions.
pub const RESERVED: [&str; 2] = ["alpha", "tau"];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn tokenize(text: &str) -> Result<(Vec<Token>, usize), ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = single {
            tokens.push(Token { tok, pos: start });
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            // exponent part, only when digits follow
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let literal: String = chars[start..i].iter().collect();
            let value = literal
                .parse::<f64>()
                .map_err(|_| ParseError::new(start, format!("malformed number `{literal}`")))?;
            tokens.push(Token { tok: Tok::Num(value), pos: start });
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            tokens.push(Token { tok: Tok::Ident(name), pos: start });
        } else {
            return Err(ParseError::new(start, format!("unexpected character `{c}`")));
        }
    }
    Ok((tokens, chars.len()))
}

struct Parser<'a> {
    tokens: Vec<Token>,
    cursor: usize,
    end: usize,
    allowed: Option<&'a [&'a str]>,
    allow_reserved: bool,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.cursor).map(|t| &t.tok)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.tokens.get(self.cursor + offset).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.cursor).map_or(self.end, |t| t.pos)
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).cloned();
        self.cursor += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.cursor += 1;
            Ok(())
        } else {
            Err(ParseError::new(self.pos(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.cursor += 1;
                    lhs = lhs + self.term()?;
                }
                Some(Tok::Minus) => {
                    self.cursor += 1;
                    lhs = lhs - self.term()?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.cursor += 1;
                    lhs = lhs * self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.cursor += 1;
                    lhs = lhs / self.factor()?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.cursor += 1;
            if let Some(&Tok::Num(v)) = self.peek() {
                if self.peek_at(1) != Some(&Tok::Caret) {
                    self.cursor += 1;
                    return Ok(Expr::Const(-v));
                }
            }
            return Ok(-self.factor()?);
        }
        let base = self.base()?;
        if self.peek() == Some(&Tok::Caret) {
            self.cursor += 1;
            let exponent = self.factor()?;
            return Ok(base.pow(exponent));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        let Some(token) = self.advance() else {
            return Err(ParseError::new(pos, "unexpected end of input"));
        };
        match token.tok {
            Tok::Num(v) => Ok(Expr::Const(v)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                if self.peek() == Some(&Tok::LParen) {
                    self.call(name, pos)
                } else {
                    self.variable(name, pos)
                }
            }
            other => Err(ParseError::new(pos, format!("unexpected token {}", describe(&other)))),
        }
    }

    fn call(&mut self, name: String, pos: usize) -> Result<Expr, ParseError> {
        let func = Func::from_name(&name)
            .ok_or_else(|| ParseError::new(pos, format!("unknown function `{name}`")))?;
        self.expect(Tok::LParen, "`(`")?;
        let mut args = vec![self.expr()?];
        while self.peek() == Some(&Tok::Comma) {
            self.cursor += 1;
            args.push(self.expr()?);
        }
        self.expect(Tok::RParen, "`)`")?;
        if args.len() != 1 {
            return Err(ParseError::new(
                pos,
                format!("function `{name}` takes 1 argument, got {}", args.len()),
            ));
        }
        Ok(args.pop().unwrap().apply(func))
    }

    fn variable(&self, name: String, pos: usize) -> Result<Expr, ParseError> {
        if FUNCTION_NAMES.contains(&name.as_str()) {
            return Err(ParseError::new(pos, format!("function `{name}` needs an argument list")));
        }
        if RESERVED.contains(&name.as_str()) && !self.allow_reserved {
            return Err(ParseError::new(
                pos,
                format!("`{name}` is reserved for weight expressions"),
            ));
        }
        if let Some(allowed) = self.allowed {
            if !allowed.contains(&name.as_str()) {
                return Err(ParseError::new(pos, format!("unknown identifier `{name}`")));
            }
        }
        Ok(Expr::Var(name))
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Num(v) => format!("number {v}"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "unbalanced `)`".into(),
        Tok::Comma => "`,`".into(),
    }
}

fn run(text: &str, allowed: Option<&[&str]>, allow_reserved: bool) -> Result<Expr, ParseError> {
    let (tokens, end) = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ParseError::new(0, "empty expression"));
    }
    let mut parser = Parser {
        tokens,
        cursor: 0,
        end,
        allowed,
        allow_reserved,
    };
    let e = parser.expr()?;
    if let Some(tok) = parser.peek().cloned() {
        return Err(ParseError::new(parser.pos(), format!("trailing {}", describe(&tok))));
    }
    Ok(e)
}

/// Parses an expression. Any identifier that is not a function name or a
/// reserved word becomes a variable.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    run(text, None, false)
}

/// Parses an expression whose variables must come from `vars`.
pub fn parse_with_vars(text: &str, vars: &[&str]) -> Result<Expr, ParseError> {
    run(text, Some(vars), false)
}

/// Parses a weight expression in `t`, `alpha` and `tau`.
pub fn parse_weight(text: &str) -> Result<Expr, ParseError> {
    run(text, Some(&["t", "alpha", "tau"]), true)
}
