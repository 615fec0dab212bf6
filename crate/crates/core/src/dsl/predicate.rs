//! Turn predicates: boolean combinations of comparisons over neighbourhood
//! counts.
//!
//! ```text
//! expr := or
//! or   := and ("or" and)*
//! and  := not ("and" not)*
//! not  := "not" not | cmp | "(" expr ")"
//! cmp  := term rel term
//! term := "p[" int "]" | "q[" int "]" | "own" | "opp" | int
//! rel  := "=" | "!=" | "<" | "<=" | ">" | ">="
//! ```
//!
//! `p[k]` / `q[k]` count members of colour `k` (1-based) on the observer's own
//! edge and on the opposite edge; `own` and `opp` are the totals.

use std::fmt;

use super::ParseError;
use crate::sim::NeighborhoodState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Term {
    /// `p[k]`
    Own(usize),
    /// `q[k]`
    Opp(usize),
    /// `own`
    OwnTotal,
    /// `opp`
    OppTotal,
    Lit(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rel {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

/// Parsed turn predicate. `And` and `Or` hold at least two operands.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Predicate {
    Cmp(Term, Rel, Term),
    Not(Box<Predicate>),
    And(Vec<Predicate>),
    Or(Vec<Predicate>),
}

impl Term {
    fn value(self, ns: &NeighborhoodState) -> u64 {
        let at = |v: &[u32], k: usize| u64::from(v.get(k.wrapping_sub(1)).copied().unwrap_or(0));
        match self {
            Term::Own(k) => at(&ns.own, k),
            Term::Opp(k) => at(&ns.opp, k),
            Term::OwnTotal => ns.own_total(),
            Term::OppTotal => ns.opp_total(),
            Term::Lit(n) => n,
        }
    }

    fn kind_index(self) -> Option<usize> {
        match self {
            Term::Own(k) | Term::Opp(k) => Some(k),
            _ => None,
        }
    }
}

impl Rel {
    fn holds(self, a: u64, b: u64) -> bool {
        match self {
            Rel::Eq => a == b,
            Rel::Ne => a != b,
            Rel::Lt => a < b,
            Rel::Le => a <= b,
            Rel::Gt => a > b,
            Rel::Ge => a >= b,
        }
    }
}

impl Predicate {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let tokens = lex(text)?;
        let mut parser = Parser { tokens, pos: 0 };
        let expr = parser.or()?;
        match parser.peek() {
            Some(tok) => Err(tok.error(format!("unexpected {}", tok.tok.describe()))),
            None => Ok(expr),
        }
    }

    /// Evaluates the predicate. Total: indices past the state's length read 0.
    pub fn eval(&self, ns: &NeighborhoodState) -> bool {
        match self {
            Predicate::Cmp(a, rel, b) => rel.holds(a.value(ns), b.value(ns)),
            Predicate::Not(inner) => !inner.eval(ns),
            Predicate::And(items) => items.iter().all(|p| p.eval(ns)),
            Predicate::Or(items) => items.iter().any(|p| p.eval(ns)),
        }
    }

    /// Largest colour index referenced by `p[k]` / `q[k]`, 0 when none.
    pub fn max_kind_index(&self) -> usize {
        match self {
            Predicate::Cmp(a, _, b) => a.kind_index().unwrap_or(0).max(b.kind_index().unwrap_or(0)),
            Predicate::Not(inner) => inner.max_kind_index(),
            Predicate::And(items) | Predicate::Or(items) => items
                .iter()
                .map(Predicate::max_kind_index)
                .max()
                .unwrap_or(0),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Predicate::Cmp(..) => 1,
            Predicate::Not(inner) => 1 + inner.depth(),
            Predicate::And(items) | Predicate::Or(items) => {
                1 + items.iter().map(Predicate::depth).max().unwrap_or(0)
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Own(k) => write!(f, "p[{k}]"),
            Term::Opp(k) => write!(f, "q[{k}]"),
            Term::OwnTotal => f.write_str("own"),
            Term::OppTotal => f.write_str("opp"),
            Term::Lit(n) => write!(f, "{n}"),
        }
    }
}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rel::Eq => "=",
            Rel::Ne => "!=",
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Gt => ">",
            Rel::Ge => ">=",
        })
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Cmp(a, rel, b) => write!(f, "{a} {rel} {b}"),
            Predicate::Not(inner) => match **inner {
                Predicate::Cmp(..) | Predicate::Not(_) => write!(f, "not {inner}"),
                _ => write!(f, "not ({inner})"),
            },
            Predicate::And(items) => join(f, items, "and", |p| {
                matches!(p, Predicate::And(_) | Predicate::Or(_))
            }),
            Predicate::Or(items) => join(f, items, "or", |p| matches!(p, Predicate::Or(_))),
        }
    }
}

fn join(
    f: &mut fmt::Formatter<'_>,
    items: &[Predicate],
    op: &str,
    needs_parens: impl Fn(&Predicate) -> bool,
) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            write!(f, " {op} ")?;
        }
        if needs_parens(item) {
            write!(f, "({item})")?;
        } else {
            write!(f, "{item}")?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Rel(Rel),
    LParen,
    RParen,
    LBracket,
    RBracket,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Rel(r) => format!("`{r}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

impl Spanned {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col, message)
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (start_line, start_col) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        let tok = if c.is_whitespace() {
            bump(&mut chars);
            continue;
        } else if c.is_ascii_digit() {
            let mut n: u64 = 0;
            while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                n = n
                    .checked_mul(10)
                    .and_then(|n| n.checked_add(u64::from(d)))
                    .ok_or_else(|| {
                        ParseError::new(start_line, start_col, "integer literal too large")
                    })?;
                bump(&mut chars);
            }
            Tok::Int(n)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if !(c.is_ascii_alphanumeric() || c == '_') {
                    break;
                }
                s.push(c);
                bump(&mut chars);
            }
            Tok::Ident(s)
        } else {
            bump(&mut chars);
            let next_is_eq = chars.peek() == Some(&'=');
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                '=' => Tok::Rel(Rel::Eq),
                '!' if next_is_eq => {
                    bump(&mut chars);
                    Tok::Rel(Rel::Ne)
                }
                '<' | '>' if next_is_eq => {
                    bump(&mut chars);
                    Tok::Rel(if c == '<' { Rel::Le } else { Rel::Ge })
                }
                '<' => Tok::Rel(Rel::Lt),
                '>' => Tok::Rel(Rel::Gt),
                _ => {
                    return Err(ParseError::new(
                        start_line,
                        start_col,
                        format!("unexpected character `{c}`"),
                    ))
                }
            }
        };
        out.push(Spanned {
            tok,
            line: start_line,
            col: start_col,
        });
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self, expected: &str) -> Result<Spanned, ParseError> {
        match self.tokens.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(self.eof_error(expected)),
        }
    }

    fn eof_error(&self, expected: &str) -> ParseError {
        // Point just past the last token.
        match self.tokens.last() {
            Some(t) => {
                let width = match &t.tok {
                    Tok::Ident(s) => s.len(),
                    Tok::Int(n) => n.to_string().len(),
                    Tok::Rel(r) => r.to_string().len(),
                    _ => 1,
                };
                ParseError::new(
                    t.line,
                    t.col + width,
                    format!("expected {expected}, found end of input"),
                )
            }
            None => ParseError::new(1, 1, format!("expected {expected}, found end of input")),
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Spanned { tok: Tok::Ident(s), .. }) if s == kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn or(&mut self) -> Result<Predicate, ParseError> {
        let mut items = vec![self.and()?];
        while self.eat_keyword("or") {
            items.push(self.and()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Predicate::Or(items)
        })
    }

    fn and(&mut self) -> Result<Predicate, ParseError> {
        let mut items = vec![self.not()?];
        while self.eat_keyword("and") {
            items.push(self.not()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Predicate::And(items)
        })
    }

    fn not(&mut self) -> Result<Predicate, ParseError> {
        if self.eat_keyword("not") {
            return Ok(Predicate::Not(Box::new(self.not()?)));
        }
        if matches!(
            self.peek(),
            Some(Spanned {
                tok: Tok::LParen,
                ..
            })
        ) {
            self.pos += 1;
            let inner = self.or()?;
            let close = self.next("`)`")?;
            if close.tok != Tok::RParen {
                return Err(close.error(format!("expected `)`, found {}", close.tok.describe())));
            }
            return Ok(inner);
        }
        self.cmp()
    }

    fn cmp(&mut self) -> Result<Predicate, ParseError> {
        let lhs = self.term()?;
        let rel = self.next("a comparison operator")?;
        let Tok::Rel(rel) = rel.tok else {
            return Err(rel.error(format!(
                "expected a comparison operator, found {}",
                rel.tok.describe()
            )));
        };
        let rhs = self.term()?;
        Ok(Predicate::Cmp(lhs, rel, rhs))
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let tok = self.next("a term")?;
        match &tok.tok {
            Tok::Int(n) => Ok(Term::Lit(*n)),
            Tok::Ident(s) if s == "own" => Ok(Term::OwnTotal),
            Tok::Ident(s) if s == "opp" => Ok(Term::OppTotal),
            Tok::Ident(s) if s == "p" || s == "q" => {
                let own = s == "p";
                self.expect(Tok::LBracket, "`[`")?;
                let idx = self.next("a kind index")?;
                let Tok::Int(k) = idx.tok else {
                    return Err(idx.error(format!(
                        "expected a kind index, found {}",
                        idx.tok.describe()
                    )));
                };
                if k == 0 {
                    return Err(idx.error("kind indices start at 1"));
                }
                self.expect(Tok::RBracket, "`]`")?;
                let k = k as usize;
                Ok(if own { Term::Own(k) } else { Term::Opp(k) })
            }
            other => Err(tok.error(format!("expected a term, found {}", other.describe()))),
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        let tok = self.next(what)?;
        if tok.tok == want {
            Ok(())
        } else {
            Err(tok.error(format!("expected {what}, found {}", tok.tok.describe())))
        }
    }
}
