//! Parser for the ASCII formula syntax.
//!
//! Precedence, tightest first: prefix operators (`!`, `N`, `I`, `E`, `F`,
//! `boundary`, `iboundary`, `cboundary`), then `&`, then `|`, then the
//! non-associative spatial binaries (`S`, `P`, `U`, `T`, `Pbar`). In
//! collective formulas `-<` binds loosest and associates to the right;
//! `G`, `forall` and `exists` take a prefix-level individual operand and
//! `CS`/`PART` take `|`-level operands on both sides.

use std::sync::Arc;

use super::ast::{CollectiveFormula, IndividualFormula};
use super::desugar::{desugar_collective, desugar_individual, Macros, SurfaceCollective, SurfaceIndividual};
use crate::error::ParseError;

const KEYWORDS: &[&str] = &[
    "TT", "FF", "N", "I", "S", "P", "U", "T", "E", "F", "G", "Pbar", "boundary", "iboundary",
    "cboundary", "forall", "exists", "empty", "CS", "PART",
];

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Color(String),
    LParen,
    RParen,
    Bang,
    Amp,
    Bar,
    Share,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("'{w}'"),
            Tok::Color(c) => format!("'{c}'"),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Bang => "'!'".into(),
            Tok::Amp => "'&'".into(),
            Tok::Bar => "'|'".into(),
            Tok::Share => "'-<'".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self, Tok::Word(x) if x == w)
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str, line: usize, column: usize) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (line, column);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        };
        let tok = match c {
            c if c.is_whitespace() => {
                bump(&mut chars);
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '!' => Tok::Bang,
            '&' => Tok::Amp,
            '|' => Tok::Bar,
            '-' => {
                bump(&mut chars);
                if chars.peek() != Some(&'<') {
                    return Err(ParseError::new(l, col, "expected '-<'"));
                }
                Tok::Share
            }
            '#' => {
                bump(&mut chars);
                let mut hex = String::from("#");
                while let Some(&h) = chars.peek() {
                    if !h.is_ascii_alphanumeric() {
                        break;
                    }
                    hex.push(h.to_ascii_lowercase());
                    bump(&mut chars);
                }
                if hex.len() != 7 || !hex[1..].chars().all(|h| h.is_ascii_hexdigit()) {
                    return Err(ParseError::new(l, col, format!("malformed color literal '{hex}'")));
                }
                out.push(Spanned { tok: Tok::Color(hex), line: l, column: col });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut word = String::new();
                while let Some(&w) = chars.peek() {
                    if !(w.is_ascii_alphanumeric() || w == '_') {
                        break;
                    }
                    word.push(w);
                    bump(&mut chars);
                }
                out.push(Spanned { tok: Tok::Word(word), line: l, column: col });
                continue;
            }
            other => return Err(ParseError::new(l, col, format!("unexpected character '{other}'"))),
        };
        bump(&mut chars);
        out.push(Spanned { tok, line: l, column: col });
    }
    out.push(Spanned { tok: Tok::End, line, column });
    Ok(out)
}

#[derive(Clone, Copy)]
enum Spatial {
    Surrounded,
    Propagation,
    Reach,
    Touch,
    Apart,
}

fn spatial_op(tok: &Tok) -> Option<Spatial> {
    match tok {
        Tok::Word(w) => match w.as_str() {
            "S" => Some(Spatial::Surrounded),
            "P" => Some(Spatial::Propagation),
            "U" => Some(Spatial::Reach),
            "T" => Some(Spatial::Touch),
            "Pbar" => Some(Spatial::Apart),
            _ => None,
        },
        _ => None,
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

type Result<T> = std::result::Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError::new(s.line, s.column, message)
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.advance();
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn expect_end(&self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            t if spatial_op(t).is_some() => Err(self.error(
                "spatial operators are non-associative; add parentheses",
            )),
            t => Err(self.error(format!("unexpected {}", t.describe()))),
        }
    }

    // Individual fragment.

    fn spatial(&mut self) -> Result<SurfaceIndividual> {
        let left = self.disjunction()?;
        let Some(op) = spatial_op(self.peek()) else {
            return Ok(left);
        };
        self.advance();
        let right = self.disjunction()?;
        if spatial_op(self.peek()).is_some() {
            return Err(self.error("spatial operators are non-associative; add parentheses"));
        }
        let (l, r) = (Box::new(left), Box::new(right));
        Ok(match op {
            Spatial::Surrounded => SurfaceIndividual::Surrounded(l, r),
            Spatial::Propagation => SurfaceIndividual::Propagation(l, r),
            Spatial::Reach => SurfaceIndividual::Reach(l, r),
            Spatial::Touch => SurfaceIndividual::Touch(l, r),
            Spatial::Apart => SurfaceIndividual::Apart(l, r),
        })
    }

    fn disjunction(&mut self) -> Result<SurfaceIndividual> {
        let mut left = self.conjunction()?;
        while *self.peek() == Tok::Bar {
            self.advance();
            let right = self.conjunction()?;
            left = SurfaceIndividual::Or(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<SurfaceIndividual> {
        let mut left = self.prefix()?;
        while *self.peek() == Tok::Amp {
            self.advance();
            let right = self.prefix()?;
            left = SurfaceIndividual::And(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn prefix(&mut self) -> Result<SurfaceIndividual> {
        type S = SurfaceIndividual;
        let wrap: fn(Box<S>) -> S = match self.peek() {
            Tok::Bang => S::Not,
            Tok::Word(w) => match w.as_str() {
                "N" => S::Near,
                "I" => S::Interior,
                "E" => S::Everywhere,
                "F" => S::Somewhere,
                "boundary" => S::Boundary,
                "iboundary" => S::InnerBoundary,
                "cboundary" => S::ClosureBoundary,
                _ => return self.primary(),
            },
            _ => return self.primary(),
        };
        self.advance();
        Ok(wrap(Box::new(self.prefix()?)))
    }

    fn primary(&mut self) -> Result<SurfaceIndividual> {
        match self.peek().clone() {
            Tok::LParen => {
                self.advance();
                let inner = self.spatial()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Color(c) => {
                self.advance();
                Ok(SurfaceIndividual::Atom(c))
            }
            Tok::Word(w) => match w.as_str() {
                "TT" => {
                    self.advance();
                    Ok(SurfaceIndividual::Top)
                }
                "FF" => {
                    self.advance();
                    Ok(SurfaceIndividual::Bottom)
                }
                w if KEYWORDS.contains(&w) => {
                    Err(self.error(format!("operator '{w}' is not allowed here")))
                }
                _ => {
                    self.advance();
                    Ok(SurfaceIndividual::Atom(w))
                }
            },
            _ => Err(self.unexpected("a formula")),
        }
    }

    // Collective fragment.

    fn attempt<T>(&mut self, f: impl FnOnce(&mut Self) -> Result<T>) -> Option<T> {
        let saved = self.pos;
        match f(self) {
            Ok(v) => Some(v),
            Err(_) => {
                self.pos = saved;
                None
            }
        }
    }

    fn collective(&mut self) -> Result<SurfaceCollective> {
        let filter = self.attempt(|p| {
            let f = p.spatial()?;
            if *p.peek() == Tok::Share {
                p.advance();
                Ok(f)
            } else {
                Err(p.error("not a share"))
            }
        });
        match filter {
            Some(f) => Ok(SurfaceCollective::Share(f, Box::new(self.collective()?))),
            None => self.collective_disjunction(),
        }
    }

    fn collective_disjunction(&mut self) -> Result<SurfaceCollective> {
        let mut left = self.collective_conjunction()?;
        while *self.peek() == Tok::Bar {
            self.advance();
            let right = self.collective_conjunction()?;
            left = SurfaceCollective::Or(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn collective_conjunction(&mut self) -> Result<SurfaceCollective> {
        let mut left = self.collective_prefix()?;
        while *self.peek() == Tok::Amp {
            self.advance();
            let right = self.collective_prefix()?;
            left = SurfaceCollective::And(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn collective_prefix(&mut self) -> Result<SurfaceCollective> {
        type C = SurfaceCollective;
        let binary = self.attempt(|p| {
            let left = p.disjunction()?;
            let partitioned = match p.peek() {
                t if t.is_word("CS") => false,
                t if t.is_word("PART") => true,
                _ => return Err(p.error("not a collective binary")),
            };
            p.advance();
            let right = p.disjunction()?;
            Ok(if partitioned {
                C::Partitioned(left, right)
            } else {
                C::CollectivelySurrounded(left, right)
            })
        });
        if let Some(b) = binary {
            return Ok(b);
        }
        match self.peek().clone() {
            Tok::Bang => {
                self.advance();
                Ok(C::Not(Box::new(self.collective_prefix()?)))
            }
            Tok::LParen => {
                self.advance();
                let inner = self.collective()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Word(w) => {
                let unary: Option<fn(SurfaceIndividual) -> C> = match w.as_str() {
                    "G" => Some(C::Group),
                    "forall" => Some(C::Forall),
                    "exists" => Some(C::Exists),
                    _ => None,
                };
                if let Some(wrap) = unary {
                    self.advance();
                    return Ok(wrap(self.prefix()?));
                }
                let constant = match w.as_str() {
                    "TT" => C::Top,
                    "FF" => C::Bottom,
                    "empty" => C::Empty,
                    _ => {
                        return Err(self.error(format!(
                            "expected a collective formula, found {}; individual formulas \
                             must appear under '-<', G, forall, exists, CS or PART",
                            self.peek().describe()
                        )))
                    }
                };
                self.advance();
                Ok(constant)
            }
            _ => Err(self.unexpected("a collective formula")),
        }
    }
}

fn parser(text: &str, line: usize, column: usize) -> Result<Parser> {
    Ok(Parser {
        toks: lex(text, line, column)?,
        pos: 0,
    })
}

/// Parses individual surface syntax without expanding it. `line` and
/// `column` give the position of `text` inside a larger document.
pub fn parse_individual_surface(text: &str, line: usize, column: usize) -> Result<SurfaceIndividual> {
    let mut p = parser(text, line, column)?;
    let f = p.spatial()?;
    p.expect_end()?;
    Ok(f)
}

pub fn parse_collective_surface(text: &str, line: usize, column: usize) -> Result<SurfaceCollective> {
    let mut p = parser(text, line, column)?;
    let f = p.collective()?;
    p.expect_end()?;
    Ok(f)
}

/// Parses and desugars an individual formula.
pub fn parse_individual(text: &str) -> Result<Arc<IndividualFormula>> {
    parse_individual_with(text, &Macros::new())
}

pub fn parse_individual_with(text: &str, macros: &Macros) -> Result<Arc<IndividualFormula>> {
    Ok(desugar_individual(&parse_individual_surface(text, 1, 1)?, macros))
}

/// Parses and desugars a collective formula.
pub fn parse_collective(text: &str) -> Result<CollectiveFormula> {
    parse_collective_with(text, &Macros::new())
}

pub fn parse_collective_with(text: &str, macros: &Macros) -> Result<CollectiveFormula> {
    Ok(desugar_collective(&parse_collective_surface(text, 1, 1)?, macros))
}

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&word)
}
