use std::fmt;

use thiserror::Error;

use super::{is_reserved, Letter, Word};

/// Syntax tree of a regular expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Regex {
    Empty,
    Epsilon,
    Letter(Letter),
    Concat(Vec<Regex>),
    Union(Vec<Regex>),
    Star(Box<Regex>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at position {pos}: {msg}")]
pub struct RegexParseError {
    pub pos: usize,
    pub msg: String,
}

impl Regex {
    pub fn letter(c: char) -> Regex {
        Regex::Letter(Letter::from(c))
    }

    pub fn word(w: &Word) -> Regex {
        match w.len() {
            0 => Regex::Epsilon,
            1 => Regex::Letter(w.letters()[0].clone()),
            _ => Regex::Concat(w.letters().iter().cloned().map(Regex::Letter).collect()),
        }
    }

    pub fn star(r: Regex) -> Regex {
        Regex::Star(Box::new(r))
    }

    fn precedence(&self) -> u8 {
        match self {
            Regex::Union(v) if v.len() > 1 => 0,
            Regex::Concat(v) if v.len() > 1 => 1,
            _ => 2,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Regex::Empty => f.write_str("∅"),
            Regex::Epsilon => f.write_str("~"),
            Regex::Letter(l) => write!(f, "{l}"),
            Regex::Concat(parts) if parts.is_empty() => f.write_str("~"),
            Regex::Union(parts) if parts.is_empty() => f.write_str("∅"),
            Regex::Concat(parts) => parts.iter().try_for_each(|p| p.fmt_at(f, 2)),
            Regex::Union(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("|")?;
                    }
                    p.fmt_at(f, 1)?;
                }
                Ok(())
            }
            Regex::Star(inner) => {
                inner.fmt_at(f, 2)?;
                f.write_str("*")
            }
        }
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl std::str::FromStr for Regex {
    type Err = RegexParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_regex(s)
    }
}

/// Parses the regex dialect: juxtaposition, `|`, postfix `*`, parentheses,
/// `[name]` letters, `~` for ε and `∅` or `0` for the empty language.
pub fn parse_regex(text: &str) -> Result<Regex, RegexParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let r = p.union()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(r),
        Some(c) => Err(p.error(format!("unexpected {c:?}"))),
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, msg: String) -> RegexParseError {
        RegexParseError { pos: self.pos, msg }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn union(&mut self) -> Result<Regex, RegexParseError> {
        let mut alts = vec![self.concat()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            alts.push(self.concat()?);
        }
        Ok(if alts.len() == 1 {
            alts.pop().unwrap()
        } else {
            Regex::Union(alts)
        })
    }

    fn concat(&mut self) -> Result<Regex, RegexParseError> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            parts.push(self.postfix()?);
        }
        match parts.len() {
            0 => Err(self.error("empty expression (use ~ for the empty word)".into())),
            1 => Ok(parts.pop().unwrap()),
            _ => Ok(Regex::Concat(parts)),
        }
    }

    fn postfix(&mut self) -> Result<Regex, RegexParseError> {
        let mut r = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            r = Regex::star(r);
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Regex, RegexParseError> {
        let c = self
            .peek()
            .ok_or_else(|| self.error("unexpected end of input".into()))?;
        let start = self.pos;
        self.pos += 1;
        match c {
            '~' => Ok(Regex::Epsilon),
            '∅' | '0' => Ok(Regex::Empty),
            '(' => {
                let r = self.union()?;
                if self.peek() != Some(')') {
                    return Err(RegexParseError {
                        pos: self.pos,
                        msg: format!("unclosed '(' opened at position {start}"),
                    });
                }
                self.pos += 1;
                Ok(r)
            }
            '[' => {
                let mut name = String::new();
                loop {
                    match self.chars.get(self.pos) {
                        Some(']') => {
                            self.pos += 1;
                            break;
                        }
                        Some(&ch) => {
                            name.push(ch);
                            self.pos += 1;
                        }
                        None => {
                            return Err(RegexParseError {
                                pos: start,
                                msg: "unterminated letter name".into(),
                            })
                        }
                    }
                }
                if name.is_empty() {
                    return Err(RegexParseError {
                        pos: start,
                        msg: "empty letter name".into(),
                    });
                }
                Ok(Regex::Letter(Letter::new(&name)))
            }
            c if is_reserved(c) => Err(RegexParseError {
                pos: start,
                msg: format!("unexpected {c:?}"),
            }),
            c => Ok(Regex::letter(c)),
        }
    }
}
