//! Expression AST and parser. One grammar serves scalar literals,
//! polynomials, rational functions and tensor expressions; evaluation
//! decides which values are allowed. Precedence, tightest first:
//! `^`, then `*` `/`, then `&`, then `+` `-`; `^` is right-associative,
//! everything else associates left.

use num_bigint::BigInt;

use crate::error::{Error, Result};

use super::lexer::{Lexer, Pos, Tok};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Tensor,
    Pow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameKind {
    /// `d(v)` — a differential, covariant slot.
    Differential,
    /// `D(v)` — a coordinate vector field, contravariant slot.
    VectorField,
}

#[derive(Clone, Debug)]
pub enum Expr {
    Int(BigInt, Pos),
    Zeta(Pos),
    Var(String, Pos),
    Frame(FrameKind, String, Pos),
    Neg(Box<Expr>, Pos),
    Bin(BinOp, Box<Expr>, Box<Expr>, Pos),
}

impl Expr {
    pub fn pos(&self) -> Pos {
        match self {
            Expr::Int(_, p)
            | Expr::Zeta(p)
            | Expr::Var(_, p)
            | Expr::Frame(_, _, p)
            | Expr::Neg(_, p)
            | Expr::Bin(_, _, _, p) => *p,
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut lx = Lexer::new(src)?;
    let e = sum(&mut lx)?;
    let (tok, pos) = lx.next();
    if tok != Tok::Eof {
        return Err(Error::parse(pos.line, pos.col, "unexpected trailing input"));
    }
    Ok(e)
}

fn sum(lx: &mut Lexer) -> Result<Expr> {
    let mut lhs = tensor_term(lx)?;
    loop {
        let (tok, pos) = lx.peek().clone();
        let op = match tok {
            Tok::Plus => BinOp::Add,
            Tok::Minus => BinOp::Sub,
            _ => break,
        };
        lx.next();
        let rhs = tensor_term(lx)?;
        lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), pos);
    }
    Ok(lhs)
}

fn tensor_term(lx: &mut Lexer) -> Result<Expr> {
    let mut lhs = product(lx)?;
    loop {
        let (tok, pos) = lx.peek().clone();
        if tok != Tok::Amp {
            break;
        }
        lx.next();
        let rhs = product(lx)?;
        lhs = Expr::Bin(BinOp::Tensor, Box::new(lhs), Box::new(rhs), pos);
    }
    Ok(lhs)
}

fn product(lx: &mut Lexer) -> Result<Expr> {
    let mut lhs = power(lx)?;
    loop {
        let (tok, pos) = lx.peek().clone();
        let op = match tok {
            Tok::Star => BinOp::Mul,
            Tok::Slash => BinOp::Div,
            _ => break,
        };
        lx.next();
        let rhs = power(lx)?;
        lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), pos);
    }
    Ok(lhs)
}

fn power(lx: &mut Lexer) -> Result<Expr> {
    let base = unary(lx)?;
    let (tok, pos) = lx.peek().clone();
    if tok != Tok::Caret {
        return Ok(base);
    }
    lx.next();
    // exponents may be negative literals: v^-3
    let rhs = power(lx)?;
    Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(rhs), pos))
}

fn unary(lx: &mut Lexer) -> Result<Expr> {
    let (tok, pos) = lx.peek().clone();
    if tok == Tok::Minus {
        lx.next();
        let inner = unary(lx)?;
        return Ok(Expr::Neg(Box::new(inner), pos));
    }
    atom(lx)
}

fn atom(lx: &mut Lexer) -> Result<Expr> {
    let (tok, pos) = lx.next();
    match tok {
        Tok::Int(n) => Ok(Expr::Int(n, pos)),
        Tok::Ident(name) => {
            if (name == "d" || name == "D") && lx.peek().0 == Tok::LParen {
                lx.next();
                let (vt, vp) = lx.next();
                let Tok::Ident(var) = vt else {
                    return Err(Error::parse(vp.line, vp.col, "expected a variable name"));
                };
                lx.expect(&Tok::RParen, "`)`")?;
                let kind = if name == "d" {
                    FrameKind::Differential
                } else {
                    FrameKind::VectorField
                };
                Ok(Expr::Frame(kind, var, pos))
            } else if name == "z" {
                Ok(Expr::Zeta(pos))
            } else {
                Ok(Expr::Var(name, pos))
            }
        }
        Tok::LParen => {
            let e = sum(lx)?;
            lx.expect(&Tok::RParen, "`)`")?;
            Ok(e)
        }
        _ => Err(Error::parse(pos.line, pos.col, "expected an expression")),
    }
}
