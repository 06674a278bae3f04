//! Tokenizer for the expression grammar shared by scalars, polynomials and
//! tensor expressions. Tracks line/column for diagnostics.

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Amp,
    LParen,
    RParen,
    Comma,
    Eof,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

pub struct Lexer {
    tokens: Vec<(Tok, Pos)>,
    cursor: usize,
}

impl Lexer {
    pub fn new(src: &str) -> Result<Lexer> {
        let mut tokens = Vec::new();
        let mut line = 1usize;
        let mut col = 1usize;
        let mut chars = src.chars().peekable();
        while let Some(&c) = chars.peek() {
            let pos = Pos { line, col };
            match c {
                '\n' => {
                    chars.next();
                    line += 1;
                    col = 1;
                }
                c if c.is_whitespace() => {
                    chars.next();
                    col += 1;
                }
                '0'..='9' => {
                    let mut s = String::new();
                    while let Some(&d) = chars.peek() {
                        if d.is_ascii_digit() {
                            s.push(d);
                            chars.next();
                            col += 1;
                        } else {
                            break;
                        }
                    }
                    let n = s
                        .parse::<BigInt>()
                        .map_err(|_| Error::parse(pos.line, pos.col, "invalid integer"))?;
                    tokens.push((Tok::Int(n), pos));
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut s = String::new();
                    while let Some(&d) = chars.peek() {
                        if d.is_ascii_alphanumeric() || d == '_' {
                            s.push(d);
                            chars.next();
                            col += 1;
                        } else {
                            break;
                        }
                    }
                    tokens.push((Tok::Ident(s), pos));
                }
                _ => {
                    let tok = match c {
                        '+' => Tok::Plus,
                        '-' => Tok::Minus,
                        '*' => Tok::Star,
                        '/' => Tok::Slash,
                        '^' => Tok::Caret,
                        '&' => Tok::Amp,
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        ',' => Tok::Comma,
                        other => {
                            return Err(Error::parse(
                                pos.line,
                                pos.col,
                                format!("unexpected character `{}`", other),
                            ))
                        }
                    };
                    chars.next();
                    col += 1;
                    tokens.push((tok, pos));
                }
            }
        }
        tokens.push((
            Tok::Eof,
            Pos { line, col },
        ));
        Ok(Lexer { tokens, cursor: 0 })
    }

    pub fn peek(&self) -> &(Tok, Pos) {
        &self.tokens[self.cursor]
    }

    pub fn next(&mut self) -> (Tok, Pos) {
        let t = self.tokens[self.cursor].clone();
        if self.cursor + 1 < self.tokens.len() {
            self.cursor += 1;
        }
        t
    }

    pub fn expect(&mut self, tok: &Tok, what: &str) -> Result<Pos> {
        let (t, pos) = self.next();
        if &t == tok {
            Ok(pos)
        } else {
            Err(Error::parse(pos.line, pos.col, format!("expected {}", what)))
        }
    }
}
