//! Concrete syntax for threshold formulas and game terms.
//!
//! ```text
//! formula := conj
//! conj    := prefix ('&' prefix)*
//! prefix  := 'dia' '[' p '/' q ']' prefix | atom
//! atom    := 'top' | IDENT | '(' formula ')'
//!
//! game    := seq ('|' seq)*
//! seq     := unary (';' unary)*
//! unary   := 'dual' unary | postfix
//! postfix := primary '*'*
//! primary := IDENT | '(' game ')'
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{format_rational, in_unit_interval, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Top,
    Atom(String),
    And(Box<Formula>, Box<Formula>),
    Dia(Rational, Box<Formula>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GameTerm {
    Prim(String),
    Union(Box<GameTerm>, Box<GameTerm>),
    Seq(Box<GameTerm>, Box<GameTerm>),
    Star(Box<GameTerm>),
    Dual(Box<GameTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Amp,
    Pipe,
    Semi,
    Star,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Number(s) => write!(f, "`{s}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Pipe => f.write_str("`|`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn syntax(pos: Pos, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        let advance = |n: usize, i: &mut usize, column: &mut usize| {
            *i += n;
            *column += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i, &mut column);
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '&' => Some(Tok::Amp),
            '|' => Some(Tok::Pipe),
            ';' => Some(Tok::Semi),
            '*' => Some(Tok::Star),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, pos));
            advance(1, &mut i, &mut column);
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            column += i - start;
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            continue;
        }
        if c.is_ascii_digit() || c == '-' {
            let start = i;
            i += 1;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/' || chars[i] == '-') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == '.' || chars[i] == 'e' || chars[i] == 'E') {
                return Err(syntax(pos, "thresholds must be written as p/q; decimals are not accepted"));
            }
            column += i - start;
            out.push((Tok::Number(chars[start..i].iter().collect()), pos));
            continue;
        }
        return Err(syntax(pos, format!("unexpected character `{c}`")));
    }
    out.push((Tok::Eof, Pos { line, column }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let pos = self.pos();
        let got = self.bump();
        if got == want {
            Ok(())
        } else {
            Err(syntax(pos, format!("expected {want}, found {got}")))
        }
    }

    fn finish(&mut self) -> Result<()> {
        let pos = self.pos();
        match self.bump() {
            Tok::Eof => Ok(()),
            t => Err(syntax(pos, format!("unexpected {t} after end of expression"))),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut lhs = self.formula_prefix()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.formula_prefix()?;
            lhs = Formula::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn formula_prefix(&mut self) -> Result<Formula> {
        if *self.peek() == Tok::Ident("dia".into()) {
            self.bump();
            self.expect(Tok::LBracket)?;
            let pos = self.pos();
            let q = match self.bump() {
                Tok::Number(text) => parse_rational(&text).map_err(|_| {
                    syntax(pos, format!("invalid threshold `{text}`; expected p/q"))
                })?,
                t => return Err(syntax(pos, format!("expected a threshold p/q, found {t}"))),
            };
            if !in_unit_interval(&q) {
                return Err(syntax(
                    pos,
                    format!("threshold {} outside [0, 1]", format_rational(&q)),
                ));
            }
            self.expect(Tok::RBracket)?;
            let body = self.formula_prefix()?;
            return Ok(Formula::Dia(q, Box::new(body)));
        }
        let pos = self.pos();
        match self.bump() {
            Tok::Ident(name) if name == "top" => Ok(Formula::Top),
            Tok::Ident(name) if name == "dual" => {
                Err(syntax(pos, "`dual` is a game operator and cannot appear in a formula"))
            }
            Tok::Ident(name) => Ok(Formula::Atom(name)),
            Tok::LParen => {
                let inner = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            t => Err(syntax(pos, format!("expected a formula, found {t}"))),
        }
    }

    fn game(&mut self) -> Result<GameTerm> {
        let mut lhs = self.game_seq()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let rhs = self.game_seq()?;
            lhs = GameTerm::Union(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn game_seq(&mut self) -> Result<GameTerm> {
        let mut lhs = self.game_unary()?;
        while *self.peek() == Tok::Semi {
            self.bump();
            let rhs = self.game_unary()?;
            lhs = GameTerm::Seq(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn game_unary(&mut self) -> Result<GameTerm> {
        if *self.peek() == Tok::Ident("dual".into()) {
            self.bump();
            return Ok(GameTerm::Dual(Box::new(self.game_unary()?)));
        }
        let mut g = self.game_primary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            g = GameTerm::Star(Box::new(g));
        }
        Ok(g)
    }

    fn game_primary(&mut self) -> Result<GameTerm> {
        let pos = self.pos();
        match self.bump() {
            Tok::Ident(name) if name == "dia" || name == "top" => {
                Err(syntax(pos, format!("`{name}` is reserved for formulas")))
            }
            Tok::Ident(name) => Ok(GameTerm::Prim(name)),
            Tok::LParen => {
                let inner = self.game()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            t => Err(syntax(pos, format!("expected a game, found {t}"))),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_game(text: &str) -> Result<GameTerm> {
    let mut p = Parser::new(text)?;
    let g = p.game()?;
    p.finish()?;
    Ok(g)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Top => f.write_str("top"),
            Formula::Atom(name) => f.write_str(name),
            Formula::And(l, r) => {
                write!(f, "{l} & ")?;
                match **r {
                    Formula::And(..) => write!(f, "({r})"),
                    _ => write!(f, "{r}"),
                }
            }
            Formula::Dia(q, body) => {
                write!(f, "dia[{}] ", format_rational(q))?;
                match **body {
                    Formula::And(..) => write!(f, "({body})"),
                    _ => write!(f, "{body}"),
                }
            }
        }
    }
}

impl fmt::Display for GameTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, g: &GameTerm, parens: bool| {
            if parens {
                write!(f, "({g})")
            } else {
                write!(f, "{g}")
            }
        };
        match self {
            GameTerm::Prim(name) => f.write_str(name),
            GameTerm::Union(l, r) => {
                write!(f, "{l} | ")?;
                wrap(f, r, matches!(**r, GameTerm::Union(..)))
            }
            GameTerm::Seq(l, r) => {
                wrap(f, l, matches!(**l, GameTerm::Union(..)))?;
                f.write_str(" ; ")?;
                wrap(f, r, matches!(**r, GameTerm::Union(..) | GameTerm::Seq(..)))
            }
            GameTerm::Star(g) => {
                wrap(
                    f,
                    g,
                    matches!(**g, GameTerm::Union(..) | GameTerm::Seq(..) | GameTerm::Dual(..)),
                )?;
                f.write_str("*")
            }
            GameTerm::Dual(g) => {
                f.write_str("dual ")?;
                wrap(f, g, matches!(**g, GameTerm::Union(..) | GameTerm::Seq(..)))
            }
        }
    }
}
