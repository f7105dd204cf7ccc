//! Query files: macros, palette bindings, paint and ask commands.
//!
//! ```text
//! // comment
//! let inside = yellow S red;
//! prop wall = #000000;
//! paint "inside" #00ff00;
//! ask "wall -< G wall" at (1,2), (3,4);
//! ask "G red" at 3 4;
//! ```
//!
//! Macros may be referenced before their definition; cycles are rejected.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use super::ast::{CollectiveFormula, IndividualFormula};
use super::desugar::{desugar_collective, desugar_individual, Macros, SurfaceCollective, SurfaceIndividual};
use super::parser::{is_keyword, parse_collective_surface, parse_individual_surface};
use crate::error::ParseError;
use crate::io::Rgb;

/// Points an `ask` is evaluated at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AskPoints {
    /// The whole space.
    All,
    /// `(column, row)` raster coordinates.
    Coordinates(Vec<(usize, usize)>),
    /// Graph node identifiers.
    Nodes(Vec<String>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PaintCommand {
    pub text: String,
    pub formula: Arc<IndividualFormula>,
    pub color: Rgb,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AskCommand {
    pub text: String,
    pub formula: CollectiveFormula,
    pub points: AskPoints,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Declaration {
    Prop { name: String, color: Rgb, line: usize },
    Paint(PaintCommand),
    Ask(AskCommand),
}

/// A parsed query file with macros expanded.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecProgram {
    pub declarations: Vec<Declaration>,
    pub macros: BTreeMap<String, Arc<IndividualFormula>>,
}

impl SpecProgram {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let raw = parse_statements(text)?;
        let macros = resolve_macros(&raw)?;
        let mut declarations = Vec::new();
        let mut painted: HashMap<Rgb, usize> = HashMap::new();
        for stmt in raw {
            match stmt {
                Raw::Let { .. } => {}
                Raw::Prop { name, color, line } => declarations.push(Declaration::Prop { name, color, line }),
                Raw::Paint { text, body, color, line, column } => {
                    if let Some(first) = painted.insert(color, line) {
                        return Err(ParseError::new(
                            line,
                            column,
                            format!("paint color {color} already used on line {first}"),
                        ));
                    }
                    declarations.push(Declaration::Paint(PaintCommand {
                        text,
                        formula: desugar_individual(&body, &macros),
                        color,
                        line,
                    }));
                }
                Raw::Ask { text, body, points, line } => declarations.push(Declaration::Ask(AskCommand {
                    text,
                    formula: desugar_collective(&body, &macros),
                    points,
                    line,
                })),
            }
        }
        Ok(SpecProgram {
            declarations,
            macros: macros.into_iter().collect(),
        })
    }

    pub fn paints(&self) -> impl Iterator<Item = &PaintCommand> {
        self.declarations.iter().filter_map(|d| match d {
            Declaration::Paint(p) => Some(p),
            _ => None,
        })
    }

    pub fn asks(&self) -> impl Iterator<Item = &AskCommand> {
        self.declarations.iter().filter_map(|d| match d {
            Declaration::Ask(a) => Some(a),
            _ => None,
        })
    }

    /// `prop` bindings in declaration order.
    pub fn props(&self) -> impl Iterator<Item = (&str, Rgb)> {
        self.declarations.iter().filter_map(|d| match d {
            Declaration::Prop { name, color, .. } => Some((name.as_str(), *color)),
            _ => None,
        })
    }

    /// Every atom referenced by a paint or ask command after expansion.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for d in &self.declarations {
            match d {
                Declaration::Paint(p) => p.formula.collect_atoms(&mut out),
                Declaration::Ask(a) => out.extend(a.formula.atoms()),
                Declaration::Prop { .. } => {}
            }
        }
        out
    }
}

enum Raw {
    Let {
        name: String,
        body: SurfaceIndividual,
        line: usize,
        column: usize,
    },
    Prop {
        name: String,
        color: Rgb,
        line: usize,
    },
    Paint {
        text: String,
        body: SurfaceIndividual,
        color: Rgb,
        line: usize,
        column: usize,
    },
    Ask {
        text: String,
        body: SurfaceCollective,
        points: AskPoints,
        line: usize,
    },
}

fn surface_atoms(term: &SurfaceIndividual, out: &mut Vec<String>) {
    use SurfaceIndividual as S;
    match term {
        S::Top | S::Bottom => {}
        S::Atom(a) => out.push(a.clone()),
        S::Not(a)
        | S::Near(a)
        | S::Interior(a)
        | S::Boundary(a)
        | S::InnerBoundary(a)
        | S::ClosureBoundary(a)
        | S::Everywhere(a)
        | S::Somewhere(a) => surface_atoms(a, out),
        S::And(a, b)
        | S::Or(a, b)
        | S::Surrounded(a, b)
        | S::Propagation(a, b)
        | S::Reach(a, b)
        | S::Touch(a, b)
        | S::Apart(a, b) => {
            surface_atoms(a, out);
            surface_atoms(b, out);
        }
    }
}

fn resolve_macros(raw: &[Raw]) -> Result<Macros, ParseError> {
    let mut bodies: HashMap<&str, (&SurfaceIndividual, usize, usize)> = HashMap::new();
    let mut order = Vec::new();
    for stmt in raw {
        if let Raw::Let { name, body, line, column } = stmt {
            if bodies.insert(name, (body, *line, *column)).is_some() {
                return Err(ParseError::new(*line, *column, format!("macro '{name}' defined twice")));
            }
            order.push(name.as_str());
        }
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Active,
        Done,
    }
    let mut marks: HashMap<&str, Mark> = HashMap::new();
    let mut macros = Macros::new();
    for root in order {
        if marks.contains_key(root) {
            continue;
        }
        // Iterative post-order so that long macro chains cannot overflow the stack.
        let mut stack: Vec<(&str, bool)> = vec![(root, false)];
        while let Some((name, expanded)) = stack.pop() {
            let (body, line, column) = bodies[name];
            if expanded {
                macros.insert(name.to_string(), desugar_individual(body, &macros));
                marks.insert(name, Mark::Done);
                continue;
            }
            if marks.get(name) == Some(&Mark::Done) {
                continue;
            }
            marks.insert(name, Mark::Active);
            stack.push((name, true));
            let mut deps = Vec::new();
            surface_atoms(body, &mut deps);
            for dep in deps {
                let Some((&key, _)) = bodies.get_key_value(dep.as_str()) else {
                    continue;
                };
                match marks.get(key) {
                    Some(Mark::Active) => {
                        return Err(ParseError::new(
                            line,
                            column,
                            format!("macro '{name}' refers to itself through '{key}'"),
                        ))
                    }
                    Some(Mark::Done) => {}
                    None => stack.push((key, false)),
                }
            }
        }
    }
    Ok(macros)
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column, message)
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('/') if self.text[self.pos..].starts_with("//") => {
                    while !matches!(self.peek(), None | Some('\n')) {
                        self.bump();
                    }
                }
                _ => return,
            }
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.bump();
        }
        &self.text[start..self.pos]
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_trivia();
        let word = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
        if word.is_empty() || word.starts_with(|c: char| c.is_ascii_digit()) {
            return Err(self.error("expected an identifier"));
        }
        Ok(word.to_string())
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_trivia();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn at(&mut self, c: char) -> bool {
        self.skip_trivia();
        self.peek() == Some(c)
    }

    /// A double-quoted string; returns its contents and their starting position.
    fn string(&mut self) -> Result<(String, usize, usize), ParseError> {
        self.expect('"')?;
        let (line, column) = (self.line, self.column);
        let body = self.take_while(|c| c != '"').to_string();
        if self.bump() != Some('"') {
            return Err(ParseError::new(line, column, "unterminated string"));
        }
        Ok((body, line, column))
    }

    fn color(&mut self) -> Result<Rgb, ParseError> {
        self.skip_trivia();
        let (line, column) = (self.line, self.column);
        if self.peek() != Some('#') {
            return Err(self.error("expected a color '#rrggbb'"));
        }
        self.bump();
        let hex = self.take_while(|c| c.is_ascii_alphanumeric());
        Rgb::from_hex(hex).ok_or_else(|| ParseError::new(line, column, format!("malformed color '#{hex}'")))
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        self.skip_trivia();
        let digits = self.take_while(|c| c.is_ascii_digit());
        digits.parse().map_err(|_| self.error("expected a number"))
    }
}

fn parse_statements(text: &str) -> Result<Vec<Raw>, ParseError> {
    let mut cur = Cursor {
        text,
        pos: 0,
        line: 1,
        column: 1,
    };
    let mut out = Vec::new();
    loop {
        cur.skip_trivia();
        if cur.peek().is_none() {
            return Ok(out);
        }
        let (line, column) = (cur.line, cur.column);
        let keyword = cur.ident()?;
        let stmt = match keyword.as_str() {
            "let" => {
                let name_col = (cur.line, cur.column + 1);
                let name = cur.ident()?;
                if is_keyword(&name) {
                    return Err(ParseError::new(name_col.0, name_col.1, format!("'{name}' is reserved")));
                }
                cur.expect('=')?;
                cur.skip_trivia();
                let (bl, bc) = (cur.line, cur.column);
                let body_text = cur.take_while(|c| c != ';');
                let body = parse_individual_surface(body_text, bl, bc)?;
                Raw::Let { name, body, line, column }
            }
            "prop" => {
                let name = cur.ident()?;
                cur.expect('=')?;
                let color = cur.color()?;
                Raw::Prop { name, color, line }
            }
            "paint" => {
                let (text, l, c) = cur.string()?;
                let body = parse_individual_surface(&text, l, c)?;
                let color = cur.color()?;
                Raw::Paint { text, body, color, line, column }
            }
            "ask" => {
                let (text, l, c) = cur.string()?;
                let body = parse_collective_surface(&text, l, c)?;
                let points = ask_points(&mut cur)?;
                Raw::Ask { text, body, points, line }
            }
            other => {
                return Err(ParseError::new(
                    line,
                    column,
                    format!("unknown statement '{other}' (expected let, prop, paint or ask)"),
                ))
            }
        };
        cur.expect(';')?;
        out.push(stmt);
    }
}

fn ask_points(cur: &mut Cursor) -> Result<AskPoints, ParseError> {
    if cur.at(';') {
        return Ok(AskPoints::All);
    }
    if cur.ident()? != "at" {
        return Err(cur.error("expected 'at' or ';'"));
    }
    if cur.at('(') {
        let mut coords = Vec::new();
        loop {
            cur.expect('(')?;
            let column = cur.number()?;
            cur.expect(',')?;
            let row = cur.number()?;
            cur.expect(')')?;
            coords.push((column, row));
            if !cur.at(',') {
                return Ok(AskPoints::Coordinates(coords));
            }
            cur.bump();
        }
    }
    let mut nodes = Vec::new();
    while !cur.at(';') {
        if !nodes.is_empty() && cur.at(',') {
            cur.bump();
            cur.skip_trivia();
        }
        let id = cur.take_while(|c| !c.is_whitespace() && c != ';' && c != ',');
        if id.is_empty() {
            break;
        }
        nodes.push(id.to_string());
    }
    if nodes.is_empty() {
        return Err(cur.error("expected points after 'at'"));
    }
    Ok(AskPoints::Nodes(nodes))
}
