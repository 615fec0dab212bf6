//! Line-oriented scenario files.
//!
//! ```text
//! # comment
//! world cyclic 24 steps 12      # or: world line [steps N]
//! kind relay: opp >= 1          # colour = declaration order, from 1
//! pattern 4                     # repeated over the whole ring
//!   0 + relay                   # offset direction kind
//!   1 - relay
//!   2 + relay
//! place 5 - relay               # one explicit member
//! body A2 = 0 1 2               # member ids
//! query analyze A2
//! query frames A2 A2
//! query isomorphic A2 A2
//! ```
//!
//! Member ids are assigned in placement order; a pattern block contributes
//! its entries repetition by repetition, so entry `i` of repetition `j` gets id
//! `base + j * entries + i` and sits at `j * period + offset`.

use std::collections::HashMap;

use super::predicate::Predicate;
use super::ParseError;
use crate::kinematics::Body;
use crate::sim::{Dir, Edge, Kind, Member, Topology, World};
use crate::trace::Trace;

pub const DEFAULT_STEPS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Analyze(String),
    Frames(String, String),
    Isomorphic(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Placement {
    Explicit {
        edge: Edge,
        kind: usize,
    },
    Pattern {
        period: i64,
        entries: Vec<(i64, Dir, usize)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub topology: Topology,
    pub steps: usize,
    pub kinds: Vec<Kind>,
    pub placements: Vec<Placement>,
    /// Expanded placements, indexed by member id.
    pub members: Vec<Member>,
    pub bodies: Vec<(String, Body)>,
    pub queries: Vec<Query>,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Builder::default().parse(text)
    }

    pub fn world(&self) -> World {
        World::new(self.topology, self.kinds.clone(), self.members.clone())
            .expect("validated while parsing")
    }

    pub fn run(&self, steps: usize) -> Trace {
        self.world().run(steps)
    }

    pub fn body(&self, name: &str) -> Option<&Body> {
        self.bodies.iter().find(|(n, _)| n == name).map(|(_, b)| b)
    }
}

/// A whitespace-separated word with its 1-based column.
#[derive(Debug, Clone, Copy)]
struct Word<'a> {
    text: &'a str,
    col: usize,
}

fn words(line: &str) -> Vec<Word<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, (byte, c)) in line.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((byte, i + 1)),
            (true, Some((b, col))) => {
                out.push(Word {
                    text: &line[b..byte],
                    col,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((b, col)) = start {
        out.push(Word {
            text: &line[b..],
            col,
        });
    }
    out
}

struct Pos {
    line: usize,
    col: usize,
}

impl Pos {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col, msg)
    }
}

/// Body name, member ids with their positions, and the directive position.
type BodyDecl = (String, Vec<(usize, Pos)>, Pos);

#[derive(Default)]
struct Builder {
    world: Option<(Topology, usize, Pos)>,
    kinds: Vec<(Kind, Pos)>,
    kind_names: HashMap<String, usize>,
    placements: Vec<(Placement, Pos)>,
    /// Set while entry lines may follow a `pattern` header.
    open_pattern: bool,
    bodies: Vec<BodyDecl>,
    queries: Vec<(Query, Vec<Pos>)>,
}

fn int_word<T: std::str::FromStr>(line: usize, w: Word<'_>, what: &str) -> Result<T, ParseError> {
    w.text
        .parse()
        .map_err(|_| ParseError::new(line, w.col, format!("expected {what}, found `{}`", w.text)))
}

fn dir_word(line: usize, w: Word<'_>) -> Result<Dir, ParseError> {
    match w.text {
        "+" | "+1" => Ok(Dir::Plus),
        "-" | "-1" => Ok(Dir::Minus),
        other => Err(ParseError::new(
            line,
            w.col,
            format!("expected a direction `+` or `-`, found `{other}`"),
        )),
    }
}

impl Builder {
    fn parse(mut self, text: &str) -> Result<Scenario, ParseError> {
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            let ws = words(content);
            let Some(head) = ws.first() else { continue };
            let is_entry = head.text.starts_with(|c: char| c.is_ascii_digit());
            if !is_entry {
                self.open_pattern = false;
            }
            match head.text {
                "world" => self.world_line(line, &ws)?,
                "kind" => self.kind_line(line, content, &ws)?,
                "pattern" => self.pattern_line(line, &ws)?,
                "place" => self.place_line(line, &ws)?,
                "body" => self.body_line(line, &ws)?,
                "query" => self.query_line(line, &ws)?,
                _ if is_entry => self.entry_line(line, &ws)?,
                other => {
                    return Err(ParseError::new(
                        line,
                        head.col,
                        format!("unknown directive `{other}`"),
                    ))
                }
            }
        }
        self.finish()
    }

    fn world_line(&mut self, line: usize, ws: &[Word<'_>]) -> Result<(), ParseError> {
        let pos = Pos {
            line,
            col: ws[0].col,
        };
        if self.world.is_some() {
            return Err(pos.err("world declared twice"));
        }
        let mut rest = ws[1..].iter().copied();
        let topology = match rest.next() {
            Some(w) if w.text == "cyclic" => {
                let Some(n) = rest.next() else {
                    return Err(ParseError::new(
                        line,
                        w.col + w.text.len(),
                        "expected a circumference",
                    ));
                };
                let circumference: i64 = int_word(line, n, "a circumference")?;
                if circumference <= 0 || circumference % 2 != 0 {
                    return Err(ParseError::new(
                        line,
                        n.col,
                        "circumference must be a positive even integer",
                    ));
                }
                Topology::Cyclic { circumference }
            }
            Some(w) if w.text == "line" => Topology::Line,
            Some(w) => {
                return Err(ParseError::new(
                    line,
                    w.col,
                    format!("expected `cyclic` or `line`, found `{}`", w.text),
                ))
            }
            None => return Err(pos.err("expected `cyclic <L>` or `line`")),
        };
        let mut steps = DEFAULT_STEPS;
        match (rest.next(), rest.next()) {
            (None, _) => {}
            (Some(kw), Some(n)) if kw.text == "steps" => steps = int_word(line, n, "a step count")?,
            (Some(w), _) => {
                return Err(ParseError::new(
                    line,
                    w.col,
                    format!("expected `steps <N>`, found `{}`", w.text),
                ))
            }
        }
        if let Some(w) = rest.next() {
            return Err(ParseError::new(
                line,
                w.col,
                format!("unexpected `{}`", w.text),
            ));
        }
        self.world = Some((topology, steps, pos));
        Ok(())
    }

    fn kind_line(&mut self, line: usize, content: &str, ws: &[Word<'_>]) -> Result<(), ParseError> {
        let pos = Pos {
            line,
            col: ws[0].col,
        };
        let Some(colon) = content.find(':') else {
            return Err(pos.err("expected `kind <name>: <predicate>`"));
        };
        let name = content[..colon].trim_start()["kind".len()..].trim();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(pos.err(format!("invalid kind name `{name}`")));
        }
        if self.kind_names.contains_key(name) {
            return Err(pos.err(format!("kind `{name}` declared twice")));
        }
        let pred_col = content[..colon + 1].chars().count() + 1;
        let turn = Predicate::parse(&content[colon + 1..])
            .map_err(|e| ParseError::new(line, pred_col + e.col - 1, e.message))?;
        self.kind_names.insert(name.to_string(), self.kinds.len());
        self.kinds.push((
            Kind::new(name, turn),
            Pos {
                line,
                col: pred_col,
            },
        ));
        Ok(())
    }

    fn kind_ref(&self, line: usize, w: Word<'_>) -> Result<usize, ParseError> {
        self.kind_names
            .get(w.text)
            .copied()
            .ok_or_else(|| ParseError::new(line, w.col, format!("unknown kind `{}`", w.text)))
    }

    fn expect_len(line: usize, ws: &[Word<'_>], n: usize, usage: &str) -> Result<(), ParseError> {
        if ws.len() == n {
            return Ok(());
        }
        let col = ws.get(n).map_or_else(
            || ws.last().map_or(1, |w| w.col + w.text.chars().count()),
            |w| w.col,
        );
        Err(ParseError::new(line, col, format!("expected `{usage}`")))
    }

    fn pattern_line(&mut self, line: usize, ws: &[Word<'_>]) -> Result<(), ParseError> {
        Self::expect_len(line, ws, 2, "pattern <period>")?;
        let period: i64 = int_word(line, ws[1], "a pattern period")?;
        if period <= 0 {
            return Err(ParseError::new(
                line,
                ws[1].col,
                "pattern period must be positive",
            ));
        }
        self.placements.push((
            Placement::Pattern {
                period,
                entries: Vec::new(),
            },
            Pos {
                line,
                col: ws[1].col,
            },
        ));
        self.open_pattern = true;
        Ok(())
    }

    fn entry_line(&mut self, line: usize, ws: &[Word<'_>]) -> Result<(), ParseError> {
        if !self.open_pattern {
            return Err(ParseError::new(
                line,
                ws[0].col,
                "pattern entry outside a pattern block",
            ));
        }
        Self::expect_len(line, ws, 3, "<offset> <+|-> <kind>")?;
        let offset: i64 = int_word(line, ws[0], "an offset")?;
        let dir = dir_word(line, ws[1])?;
        let kind = self.kind_ref(line, ws[2])?;
        let Some((Placement::Pattern { period, entries }, _)) = self.placements.last_mut() else {
            unreachable!("open pattern block");
        };
        if offset >= *period {
            return Err(ParseError::new(
                line,
                ws[0].col,
                format!("offset must be below the period {period}"),
            ));
        }
        entries.push((offset, dir, kind));
        Ok(())
    }

    fn place_line(&mut self, line: usize, ws: &[Word<'_>]) -> Result<(), ParseError> {
        Self::expect_len(line, ws, 4, "place <x> <+|-> <kind>")?;
        let x: i64 = int_word(line, ws[1], "a coordinate")?;
        let dir = dir_word(line, ws[2])?;
        let kind = self.kind_ref(line, ws[3])?;
        self.placements.push((
            Placement::Explicit {
                edge: Edge::new(x, dir),
                kind,
            },
            Pos {
                line,
                col: ws[1].col,
            },
        ));
        Ok(())
    }

    fn body_line(&mut self, line: usize, ws: &[Word<'_>]) -> Result<(), ParseError> {
        if ws.len() < 4 || ws[2].text != "=" {
            return Err(ParseError::new(
                line,
                ws[0].col,
                "expected `body <name> = <id> ...`",
            ));
        }
        let name = ws[1].text;
        if self.bodies.iter().any(|(n, ..)| n == name) {
            return Err(ParseError::new(
                line,
                ws[1].col,
                format!("body `{name}` declared twice"),
            ));
        }
        let ids = ws[3..]
            .iter()
            .map(|&w| Ok((int_word(line, w, "a member id")?, Pos { line, col: w.col })))
            .collect::<Result<Vec<_>, ParseError>>()?;
        self.bodies.push((
            name.to_string(),
            ids,
            Pos {
                line,
                col: ws[1].col,
            },
        ));
        Ok(())
    }

    fn query_line(&mut self, line: usize, ws: &[Word<'_>]) -> Result<(), ParseError> {
        let Some(kind) = ws.get(1) else {
            return Err(ParseError::new(line, ws[0].col, "expected a query"));
        };
        let names: Vec<String> = ws[2..].iter().map(|w| w.text.to_string()).collect();
        let positions: Vec<Pos> = ws[2..].iter().map(|w| Pos { line, col: w.col }).collect();
        let query = match (kind.text, names.as_slice()) {
            ("analyze", [a]) => Query::Analyze(a.clone()),
            ("frames", [a, b]) => Query::Frames(a.clone(), b.clone()),
            ("isomorphic", [a, b]) => Query::Isomorphic(a.clone(), b.clone()),
            ("analyze" | "frames" | "isomorphic", _) => {
                return Err(ParseError::new(
                    line,
                    kind.col,
                    format!("wrong number of bodies for `{}`", kind.text),
                ))
            }
            (other, _) => {
                return Err(ParseError::new(
                    line,
                    kind.col,
                    format!("unknown query `{other}`"),
                ))
            }
        };
        self.queries.push((query, positions));
        Ok(())
    }

    fn finish(self) -> Result<Scenario, ParseError> {
        let Some((topology, steps, _)) = self.world else {
            return Err(ParseError::new(1, 1, "missing `world` declaration"));
        };
        let kind_count = self.kinds.len();
        for (i, (kind, pos)) in self.kinds.iter().enumerate() {
            let max = kind.turn.max_kind_index();
            if max > kind_count {
                return Err(pos.err(format!(
                    "kind index {max} out of range: {kind_count} kind(s) declared"
                )));
            }
            if let Some((first, _)) = self.kinds[..i].iter().find(|(k, _)| k.turn == kind.turn) {
                return Err(pos.err(format!(
                    "kinds must be non-isomorphic: `{}` has the same turn predicate as `{}`",
                    kind.name, first.name
                )));
            }
        }

        let mut members = Vec::new();
        for (placement, pos) in &self.placements {
            match (placement, topology) {
                (Placement::Pattern { .. }, Topology::Line) => {
                    return Err(pos.err("pattern blocks need a cyclic world"))
                }
                (Placement::Pattern { period, entries }, Topology::Cyclic { circumference }) => {
                    if circumference % period != 0 {
                        return Err(pos.err("period must divide circumference"));
                    }
                    if entries.is_empty() {
                        return Err(pos.err("pattern block has no entries"));
                    }
                    for rep in 0..circumference / period {
                        for &(offset, dir, kind) in entries {
                            members.push(Member {
                                kind,
                                edge: Edge::new(rep * period + offset, dir),
                            });
                        }
                    }
                }
                (Placement::Explicit { edge, kind }, topology) => {
                    if let Topology::Cyclic { circumference } = topology {
                        if !(0..circumference).contains(&edge.x) {
                            return Err(pos.err(format!(
                                "coordinate {} outside the cyclic world [0, {circumference})",
                                edge.x
                            )));
                        }
                    }
                    members.push(Member {
                        kind: *kind,
                        edge: *edge,
                    });
                }
            }
        }

        let mut bodies = Vec::new();
        for (name, ids, pos) in self.bodies {
            for (id, id_pos) in &ids {
                if *id >= members.len() {
                    return Err(id_pos.err(format!(
                        "dangling member reference: member {id} is not placed ({} members)",
                        members.len()
                    )));
                }
            }
            let body =
                Body::new(ids.into_iter().map(|(id, _)| id)).map_err(|e| pos.err(e.to_string()))?;
            bodies.push((name, body));
        }

        let mut queries = Vec::new();
        for (query, positions) in self.queries {
            let names: Vec<&String> = match &query {
                Query::Analyze(a) => vec![a],
                Query::Frames(a, b) | Query::Isomorphic(a, b) => vec![a, b],
            };
            for (name, pos) in names.into_iter().zip(&positions) {
                if !bodies.iter().any(|(n, _)| n == name) {
                    return Err(pos.err(format!("unknown body `{name}`")));
                }
            }
            queries.push(query);
        }

        Ok(Scenario {
            topology,
            steps,
            kinds: self.kinds.into_iter().map(|(k, _)| k).collect(),
            placements: self.placements.into_iter().map(|(p, _)| p).collect(),
            members,
            bodies,
            queries,
        })
    }
}
