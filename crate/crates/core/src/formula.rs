//! Propositional formulas over a per-logic connective signature.
//!
//! Surface syntax (ASCII):
//!
//! | role                          | token     | arity |
//! |-------------------------------|-----------|-------|
//! | primary negation              | `~`       | 1     |
//! | Heyting/Bochvar/Post/dual-Post negation | `neg_h` `neg_b` `neg_p` `neg_dp` | 1 |
//! | necessity / possibility       | `box` `dia` | 1   |
//! | conjunction / disjunction     | `&` `\|`  | 2     |
//! | Lukasiewicz additive pair     | `and_l` `or_l` | 2 |
//! | implication                   | `->`      | 2     |
//! | Palasinska connectives        | `o1` `o2` | 2     |
//! | constants                     | `T` `F` `U` | 0   |
//!
//! Unary connectives bind tightest, then `&`/`and_l`/`o1`/`o2`, then `|`/`or_l`,
//! then `->`. Conjunction and disjunction levels associate to the left,
//! implication to the right.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The role a connective plays in a signature. Each logic binds a truth table
/// to every role it uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConnectiveId {
    Neg,
    NegH,
    NegB,
    NegP,
    NegDP,
    Box,
    Dia,
    And,
    Or,
    Impl,
    AndL,
    OrL,
    Circ1,
    Circ2,
}

impl ConnectiveId {
    pub const ALL: [ConnectiveId; 14] = [
        ConnectiveId::Neg,
        ConnectiveId::NegH,
        ConnectiveId::NegB,
        ConnectiveId::NegP,
        ConnectiveId::NegDP,
        ConnectiveId::Box,
        ConnectiveId::Dia,
        ConnectiveId::And,
        ConnectiveId::Or,
        ConnectiveId::Impl,
        ConnectiveId::AndL,
        ConnectiveId::OrL,
        ConnectiveId::Circ1,
        ConnectiveId::Circ2,
    ];

    pub fn arity(self) -> usize {
        use ConnectiveId::*;
        match self {
            Neg | NegH | NegB | NegP | NegDP | Box | Dia => 1,
            And | Or | Impl | AndL | OrL | Circ1 | Circ2 => 2,
        }
    }

    pub fn token(self) -> &'static str {
        use ConnectiveId::*;
        match self {
            Neg => "~",
            NegH => "neg_h",
            NegB => "neg_b",
            NegP => "neg_p",
            NegDP => "neg_dp",
            Box => "box",
            Dia => "dia",
            And => "&",
            Or => "|",
            Impl => "->",
            AndL => "and_l",
            OrL => "or_l",
            Circ1 => "o1",
            Circ2 => "o2",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.token() == token)
    }

    /// Binding strength of a binary connective; larger binds tighter.
    fn precedence(self) -> u8 {
        use ConnectiveId::*;
        match self {
            Impl => 1,
            Or | OrL => 2,
            And | AndL | Circ1 | Circ2 => 3,
            _ => 4,
        }
    }
}

impl fmt::Display for ConnectiveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Constant {
    Top,
    Bottom,
    Undef,
}

impl Constant {
    pub fn token(self) -> &'static str {
        match self {
            Constant::Top => "T",
            Constant::Bottom => "F",
            Constant::Undef => "U",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Arc<str>),
    Constant(Constant),
    Compound(ConnectiveId, Arc<[Formula]>),
}

impl Formula {
    pub fn atom(name: &str) -> Self {
        Formula::Atom(Arc::from(name))
    }

    pub fn unary(connective: ConnectiveId, arg: Formula) -> Self {
        debug_assert_eq!(connective.arity(), 1);
        Formula::Compound(connective, Arc::from(vec![arg]))
    }

    pub fn binary(connective: ConnectiveId, left: Formula, right: Formula) -> Self {
        debug_assert_eq!(connective.arity(), 2);
        Formula::Compound(connective, Arc::from(vec![left, right]))
    }

    pub fn is_atomic(&self) -> bool {
        !matches!(self, Formula::Compound(..))
    }

    pub fn connective(&self) -> Option<ConnectiveId> {
        match self {
            Formula::Compound(c, _) => Some(*c),
            _ => None,
        }
    }

    pub fn args(&self) -> &[Formula] {
        match self {
            Formula::Compound(_, args) => args,
            _ => &[],
        }
    }

    /// Atom names occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(name) => {
                if !out.contains(&**name) {
                    out.insert(name.to_string());
                }
            }
            Formula::Constant(_) => {}
            Formula::Compound(_, args) => args.iter().for_each(|a| a.collect_atoms(out)),
        }
    }

    /// Number of connective occurrences.
    pub fn complexity(&self) -> usize {
        match self {
            Formula::Compound(_, args) => 1 + args.iter().map(Formula::complexity).sum::<usize>(),
            _ => 0,
        }
    }

    /// Every connective occurring in the formula.
    pub fn connectives(&self) -> BTreeSet<ConnectiveId> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if let Formula::Compound(c, args) = f {
                out.insert(*c);
                stack.extend(args.iter());
            }
        }
        out
    }

    pub fn has_constants(&self) -> bool {
        match self {
            Formula::Atom(_) => false,
            Formula::Constant(_) => true,
            Formula::Compound(_, args) => args.iter().any(Formula::has_constants),
        }
    }

    pub fn render(&self) -> String {
        self.to_string()
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Compound(c, _) if c.arity() == 2 => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => f.write_str(name),
            Formula::Constant(c) => f.write_str(c.token()),
            Formula::Compound(c, args) if args.len() == 1 => {
                f.write_str(c.token())?;
                if *c != ConnectiveId::Neg {
                    f.write_str(" ")?;
                }
                args[0].fmt_operand(f)
            }
            Formula::Compound(c, args) => {
                args[0].fmt_operand(f)?;
                write!(f, " {c} ")?;
                args[1].fmt_operand(f)
            }
        }
    }
}

const RESERVED: [&str; 3] = ["T", "F", "U"];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Conn(ConnectiveId),
    Const(Constant),
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next(&mut self) -> Result<(Tok, usize)> {
        let bytes = self.text.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        if start >= bytes.len() {
            return Ok((Tok::End, start));
        }
        let c = bytes[start];
        let tok = match c {
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'~' => {
                self.pos += 1;
                Tok::Conn(ConnectiveId::Neg)
            }
            b'&' => {
                self.pos += 1;
                Tok::Conn(ConnectiveId::And)
            }
            b'|' => {
                self.pos += 1;
                Tok::Conn(ConnectiveId::Or)
            }
            b'-' if bytes.get(start + 1) == Some(&b'>') => {
                self.pos += 2;
                Tok::Conn(ConnectiveId::Impl)
            }
            c if c.is_ascii_alphabetic() => {
                let mut end = start + 1;
                while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
                    end += 1;
                }
                self.pos = end;
                let word = &self.text[start..end];
                match word {
                    "T" => Tok::Const(Constant::Top),
                    "F" => Tok::Const(Constant::Bottom),
                    "U" => Tok::Const(Constant::Undef),
                    _ => match ConnectiveId::from_token(word) {
                        Some(conn) => Tok::Conn(conn),
                        None if word.starts_with("neg_") => {
                            return Err(Error::UnknownConnective {
                                token: word.to_string(),
                                offset: start,
                            })
                        }
                        None => Tok::Ident(word.to_string()),
                    },
                }
            }
            _ => {
                let ch = self.text[start..].chars().next().unwrap_or('?');
                return Err(Error::UnknownConnective {
                    token: ch.to_string(),
                    offset: start,
                });
            }
        };
        Ok((tok, start))
    }
}

struct Parser<'a, 's> {
    lexer: Lexer<'a>,
    peeked: (Tok, usize),
    signature: &'s BTreeSet<ConnectiveId>,
}

impl<'a, 's> Parser<'a, 's> {
    fn new(text: &'a str, signature: &'s BTreeSet<ConnectiveId>) -> Result<Self> {
        let mut lexer = Lexer { text, pos: 0 };
        let peeked = lexer.next()?;
        Ok(Parser {
            lexer,
            peeked,
            signature,
        })
    }

    fn bump(&mut self) -> Result<(Tok, usize)> {
        let next = self.lexer.next()?;
        Ok(std::mem::replace(&mut self.peeked, next))
    }

    fn check_signature(&self, conn: ConnectiveId, offset: usize) -> Result<()> {
        if self.signature.contains(&conn) {
            Ok(())
        } else {
            Err(Error::UnknownConnective {
                token: conn.token().to_string(),
                offset,
            })
        }
    }

    fn peek_binary(&self) -> Option<(ConnectiveId, usize)> {
        match self.peeked {
            (Tok::Conn(c), off) if c.arity() == 2 => Some((c, off)),
            _ => None,
        }
    }

    fn expression(&mut self, min_prec: u8) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while let Some((conn, offset)) = self.peek_binary() {
            let prec = conn.precedence();
            if prec < min_prec {
                break;
            }
            self.check_signature(conn, offset)?;
            self.bump()?;
            let next_min = if conn == ConnectiveId::Impl { prec } else { prec + 1 };
            let rhs = self.expression(next_min)?;
            lhs = Formula::binary(conn, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        let (tok, offset) = self.bump()?;
        match tok {
            Tok::Ident(name) => Ok(Formula::Atom(Arc::from(name.as_str()))),
            Tok::Const(c) => Ok(Formula::Constant(c)),
            Tok::Conn(conn) if conn.arity() == 1 => {
                self.check_signature(conn, offset)?;
                let arg = self.unary()?;
                Ok(Formula::unary(conn, arg))
            }
            Tok::LParen => {
                let inner = self.expression(0)?;
                match self.bump()? {
                    (Tok::RParen, _) => Ok(inner),
                    (_, off) => Err(Error::syntax(off, "expected `)`")),
                }
            }
            Tok::End => Err(Error::syntax(offset, "unexpected end of input")),
            Tok::RParen => Err(Error::syntax(offset, "unexpected `)`")),
            Tok::Conn(conn) => Err(Error::syntax(
                offset,
                format!("binary connective `{conn}` where a formula was expected"),
            )),
        }
    }
}

/// Parses `text` into a formula, rejecting connectives outside `signature`.
pub fn parse_formula(text: &str, signature: &BTreeSet<ConnectiveId>) -> Result<Formula> {
    let mut parser = Parser::new(text, signature)?;
    let formula = parser.expression(0)?;
    match parser.peeked {
        (Tok::End, _) => Ok(formula),
        (_, offset) => Err(Error::syntax(offset, "unexpected trailing input")),
    }
}

/// Parses a comma-separated list of formulas. Commas inside parentheses do not
/// split. An empty or blank string yields an empty list.
pub fn parse_formula_list(text: &str, signature: &BTreeSet<ConnectiveId>) -> Result<Vec<Formula>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top_level(text, b',')
        .into_iter()
        .map(|(start, piece)| parse_formula(piece, signature).map_err(|e| shift_offset(e, start)))
        .collect()
}

/// Splits at every occurrence of `sep` outside parentheses, keeping the byte
/// offset of each piece.
pub(crate) fn split_top_level(text: &str, sep: u8) -> Vec<(usize, &str)> {
    let mut pieces = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, b) in text.bytes().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            _ if b == sep && depth == 0 => {
                pieces.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    pieces.push((start, &text[start..]));
    pieces
}

pub(crate) fn shift_offset(err: Error, by: usize) -> Error {
    match err {
        Error::Syntax { offset, message } => Error::Syntax {
            offset: offset + by,
            message,
        },
        Error::UnknownConnective { token, offset } => Error::UnknownConnective {
            token,
            offset: offset + by,
        },
        other => other,
    }
}

/// True for names usable as atoms.
pub fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !RESERVED.contains(&name)
        && ConnectiveId::from_token(name).is_none()
}
