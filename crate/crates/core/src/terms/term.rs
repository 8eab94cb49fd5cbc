use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A lattice term over named variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }

    /// Left-associated join of a nonempty sequence.
    pub fn join_all<I: IntoIterator<Item = Term>>(terms: I) -> Option<Term> {
        terms.into_iter().reduce(Term::join)
    }

    /// Left-associated meet of a nonempty sequence.
    pub fn meet_all<I: IntoIterator<Item = Term>>(terms: I) -> Option<Term> {
        terms.into_iter().reduce(Term::meet)
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Meet(a, b) | Term::Join(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Number of meet and join nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Meet(a, b) | Term::Join(a, b) => 1 + a.size() + b.size(),
        }
    }
}

/// Compound subterms are always parenthesized, so printing and re-parsing
/// gives back the same tree.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                Term::Var(v) => f.write_str(v),
                _ => write!(f, "({t})"),
            }
        }
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Meet(a, b) => {
                child(a, f)?;
                f.write_str(" & ")?;
                child(b, f)
            }
            Term::Join(a, b) => {
                child(a, f)?;
                f.write_str(" | ")?;
                child(b, f)
            }
        }
    }
}

/// A syntax error. `token` is the 1-based index of the offending token and
/// `offset` its byte offset in the source.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at token {token} (offset {offset}): {message}")]
pub struct ParseError {
    pub token: usize,
    pub offset: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    And,
    Or,
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut toks = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(off, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '&' => Tok::And,
            '|' => Tok::Or,
            '(' => Tok::Open,
            ')' => Tok::Close,
            'a'..='z' => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' {
                        name.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(name), off));
                continue;
            }
            other => {
                return Err(ParseError {
                    token: toks.len() + 1,
                    offset: off,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        chars.next();
        toks.push((tok, off));
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn error(&self, message: &str) -> ParseError {
        ParseError {
            token: self.pos + 1,
            offset: self.toks.get(self.pos).map_or(self.len, |&(_, o)| o),
            message: message.to_string(),
        }
    }

    // term := factor { "|" factor }
    fn term(&mut self) -> Result<Term, ParseError> {
        let mut t = self.factor()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            t = Term::join(t, self.factor()?);
        }
        Ok(t)
    }

    // factor := atom { "&" atom }
    fn factor(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            t = Term::meet(t, self.atom()?);
        }
        Ok(t)
    }

    // atom := ident | "(" term ")"
    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Term::Var(name))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let t = self.term()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(t)
            }
            Some(_) => Err(self.error("expected a variable or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parses `term := factor { "|" factor }`, `factor := atom { "&" atom }`,
/// `atom := ident | "(" term ")"`, with identifiers `[a-z][a-z0-9_]*`.
pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0, len: src.len() };
    let t = p.term()?;
    if p.pos < p.toks.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(t)
}

impl FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Term, ParseError> {
        parse_term(s)
    }
}

/// `p_0(x,y,z) = y`, `p_{n+1}(x,y,z) = y & (x | p_n(x,z,y))`.
pub fn p_term(n: usize) -> Term {
    fn build(n: usize, x: &str, y: &str, z: &str) -> Term {
        if n == 0 {
            Term::var(y)
        } else {
            Term::meet(Term::var(y), Term::join(Term::var(x), build(n - 1, x, z, y)))
        }
    }
    build(n, "x", "y", "z")
}

/// Both sides of the `n`-distributive law in `x, y0, ..., yn`:
/// `x & (y0 | ... | yn) = \/_i (x & \/_{j != i} yj)`.
pub fn ndistr_identity(n: usize) -> (Term, Term) {
    assert!(n >= 1, "n-distributivity needs n >= 1");
    let ys: Vec<Term> = (0..=n).map(|i| Term::Var(format!("y{i}"))).collect();
    let lhs = Term::meet(Term::var("x"), Term::join_all(ys.iter().cloned()).unwrap());
    let rhs = Term::join_all((0..=n).map(|i| {
        let others = ys.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, y)| y.clone());
        Term::meet(Term::var("x"), Term::join_all(others).unwrap())
    }))
    .unwrap();
    (lhs, rhs)
}
