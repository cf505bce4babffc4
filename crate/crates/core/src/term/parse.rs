//! Grammar:
//!
//! ```text
//! term   ::= lam | appseq
//! lam    ::= ("\" | "λ") ident+ "." term
//! appseq ::= atom+
//! atom   ::= ident | "#" ident | "(" term ")"
//! ident  ::= [A-Za-z_][A-Za-z0-9_']*
//! ```

use std::fmt;

use thiserror::Error;

use super::{Signature, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    /// Character offset into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedEnd,
    Unexpected(char),
    ExpectedIdent,
    ExpectedDot,
    ExpectedCloseParen,
    TrailingInput,
    Unbound(String),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = self.position;
        match &self.kind {
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input at {at}"),
            ParseErrorKind::Unexpected(c) => write!(f, "unexpected `{c}` at {at}"),
            ParseErrorKind::ExpectedIdent => write!(f, "expected identifier at {at}"),
            ParseErrorKind::ExpectedDot => write!(f, "expected `.` at {at}"),
            ParseErrorKind::ExpectedCloseParen => write!(f, "expected `)` at {at}"),
            ParseErrorKind::TrailingInput => write!(f, "trailing input at {at}"),
            ParseErrorKind::Unbound(name) => write!(f, "unbound identifier `{name}` at {at}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Lambda,
    Dot,
    Open,
    Close,
    Hash,
    Ident(String),
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '\\' | 'λ' => Tok::Lambda,
            '.' => Tok::Dot,
            '(' => Tok::Open,
            ')' => Tok::Close,
            '#' => Tok::Hash,
            c if is_ident_start(c) => {
                let start = i;
                while i < chars.len() && is_ident_continue(chars[i]) {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(ParseError {
                    position: i,
                    kind: ParseErrorKind::Unexpected(other),
                })
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    /// Context names followed by binder names, innermost last.
    scope: Vec<String>,
    signature: &'a Signature,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.offset(),
            kind,
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                self.pos += 1;
                Ok(name)
            }
            None => Err(self.err(ParseErrorKind::UnexpectedEnd)),
            _ => Err(self.err(ParseErrorKind::ExpectedIdent)),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        if self.peek() == Some(&Tok::Lambda) {
            self.pos += 1;
            let mut binders = vec![self.ident()?];
            while let Some(Tok::Ident(_)) = self.peek() {
                binders.push(self.ident()?);
            }
            if self.peek() != Some(&Tok::Dot) {
                return Err(self.err(ParseErrorKind::ExpectedDot));
            }
            self.pos += 1;
            let k = binders.len();
            self.scope.extend(binders);
            let body = self.term();
            self.scope.truncate(self.scope.len() - k);
            return Ok(Term::lams(k, body?));
        }
        let mut head = self.atom()?;
        while matches!(
            self.peek(),
            Some(Tok::Ident(_) | Tok::Hash | Tok::Open)
        ) {
            let arg = self.atom()?;
            head = Term::app(head, arg);
        }
        Ok(head)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(Tok::Ident(_)) => {
                let at = self.offset();
                let name = self.ident()?;
                match self.scope.iter().rposition(|s| *s == name) {
                    Some(p) => Ok(Term::Var(self.scope.len() - 1 - p)),
                    None => Err(ParseError {
                        position: at,
                        kind: ParseErrorKind::Unbound(name),
                    }),
                }
            }
            Some(Tok::Hash) => {
                self.pos += 1;
                let name = self.ident()?;
                Ok(self.signature.resolve(&name))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let t = self.term()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(self.err(ParseErrorKind::ExpectedCloseParen));
                }
                self.pos += 1;
                Ok(t)
            }
            Some(Tok::Lambda) => Err(self.err(ParseErrorKind::Unexpected('\\'))),
            Some(Tok::Dot) => Err(self.err(ParseErrorKind::Unexpected('.'))),
            Some(Tok::Close) => Err(self.err(ParseErrorKind::Unexpected(')'))),
            None => Err(self.err(ParseErrorKind::UnexpectedEnd)),
        }
    }
}

/// Parses a term in the given context with an explicit constant signature.
pub fn parse_in(
    text: &str,
    context: &[impl AsRef<str>],
    signature: &Signature,
) -> Result<Term, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.chars().count(),
        scope: context.iter().map(|s| s.as_ref().to_string()).collect(),
        signature,
    };
    let t = p.term()?;
    if p.pos != p.toks.len() {
        return Err(p.err(ParseErrorKind::TrailingInput));
    }
    Ok(t)
}

/// Parses a closed term; `#name` resolves through the combinator table.
pub fn parse(text: &str) -> Result<Term, ParseError> {
    parse_in(text, &[] as &[&str], &Signature::standard())
}
