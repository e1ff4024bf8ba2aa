use std::fmt;

use crate::error::{Error, Result};

/// A term over named variables and operation symbols.
///
/// Bare symbols are variables unless the signature declares a constant of
/// that name; resolution happens when a term is checked against a model.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn app(op: impl Into<String>, args: Vec<Term>) -> Self {
        Term::App(op.into(), args)
    }

    /// Parses an s-expression such as `(meet a (neg b))`.
    pub fn parse(text: &str) -> Result<Self> {
        let tokens = tokenize(text)?;
        let mut pos = 0;
        let term = parse_term(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Parse(format!("trailing input after term in `{text}`")));
        }
        Ok(term)
    }

    /// Bare symbols in first-occurrence order.
    pub fn symbols(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.symbols(out)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::App(op, args) if args.is_empty() => write!(f, "({op})"),
            Term::App(op, args) => {
                write!(f, "({op}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Token {
    Open,
    Close,
    Comma,
    Colon,
    Symbol(String),
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                tokens.push(Token::Open);
            }
            ')' => {
                chars.next();
                tokens.push(Token::Close);
            }
            ',' => {
                chars.next();
                tokens.push(Token::Comma);
            }
            ':' => {
                chars.next();
                tokens.push(Token::Colon);
            }
            _ => {
                let mut sym = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || "(),:".contains(c) {
                        break;
                    }
                    sym.push(c);
                    chars.next();
                }
                tokens.push(Token::Symbol(sym));
            }
        }
    }
    Ok(tokens)
}

pub(crate) fn parse_term(tokens: &[Token], pos: &mut usize) -> Result<Term> {
    match tokens.get(*pos) {
        Some(Token::Symbol(s)) => {
            *pos += 1;
            Ok(Term::Var(s.clone()))
        }
        Some(Token::Open) => {
            *pos += 1;
            let op = match tokens.get(*pos) {
                Some(Token::Symbol(s)) => s.clone(),
                _ => return Err(Error::Parse("expected an operation name after `(`".into())),
            };
            *pos += 1;
            let mut args = Vec::new();
            loop {
                match tokens.get(*pos) {
                    Some(Token::Close) => {
                        *pos += 1;
                        return Ok(Term::App(op, args));
                    }
                    Some(_) => args.push(parse_term(tokens, pos)?),
                    None => return Err(Error::Parse(format!("unclosed application of `{op}`"))),
                }
            }
        }
        other => Err(Error::Parse(format!("expected a term, found {other:?}"))),
    }
}
