//! Labeled graph databases under bag semantics and RPQ evaluation on them.

mod eval;

pub use eval::{enumerate_matches, find_walk, satisfies, Evaluator, Match};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::lang::Letter;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphDbError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: fact {fact} already listed (state its multiplicity once)")]
    Duplicate { line: usize, fact: String },
    #[error("multiplicity overflow")]
    Overflow,
}

/// A labeled edge `tail -label-> head`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fact {
    pub tail: String,
    pub label: Letter,
    pub head: String,
}

impl Fact {
    pub fn new(tail: &str, label: impl Into<Letter>, head: &str) -> Fact {
        Fact {
            tail: tail.to_string(),
            label: label.into(),
            head: head.to_string(),
        }
    }

    pub fn reversed(&self) -> Fact {
        Fact {
            tail: self.head.clone(),
            label: self.label.clone(),
            head: self.tail.clone(),
        }
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.tail, self.label.name(), self.head)
    }
}

impl Serialize for Fact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (&self.tail, self.label.name(), &self.head).serialize(s)
    }
}

/// Resilience values: a natural number or `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ResilienceValue {
    Finite(u64),
    Infinite,
}

impl ResilienceValue {
    pub fn finite(self) -> Option<u64> {
        match self {
            ResilienceValue::Finite(v) => Some(v),
            ResilienceValue::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == ResilienceValue::Infinite
    }
}

impl fmt::Display for ResilienceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResilienceValue::Finite(v) => write!(f, "{v}"),
            ResilienceValue::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for ResilienceValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ResilienceValue::Finite(v) => s.serialize_u64(*v),
            ResilienceValue::Infinite => s.serialize_str("inf"),
        }
    }
}

/// A bag database: facts with positive multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphDb {
    facts: BTreeMap<Fact, u64>,
}

impl GraphDb {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `fact` with multiplicity `mult`, summing with any existing copy.
    pub fn add(&mut self, fact: Fact, mult: u64) -> Result<(), GraphDbError> {
        assert!(mult > 0, "multiplicities are positive");
        let m = self.facts.entry(fact).or_insert(0);
        *m = m.checked_add(mult).ok_or(GraphDbError::Overflow)?;
        Ok(())
    }

    /// Adds a fact with multiplicity 1 (set-style construction helper).
    pub fn add_fact(&mut self, tail: &str, label: impl Into<Letter>, head: &str) {
        self.facts.insert(Fact::new(tail, label, head), 1);
    }

    pub fn from_facts<I: IntoIterator<Item = (Fact, u64)>>(facts: I) -> Result<Self, GraphDbError> {
        let mut db = GraphDb::new();
        for (f, m) in facts {
            db.add(f, m)?;
        }
        Ok(db)
    }

    pub fn mult(&self, fact: &Fact) -> u64 {
        self.facts.get(fact).copied().unwrap_or(0)
    }

    pub fn contains(&self, fact: &Fact) -> bool {
        self.facts.contains_key(fact)
    }

    /// Facts in canonical order.
    pub fn facts(&self) -> impl Iterator<Item = &Fact> + '_ {
        self.facts.keys()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Fact, u64)> + '_ {
        self.facts.iter().map(|(f, &m)| (f, m))
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    /// Active domain: every tail and head.
    pub fn adom(&self) -> BTreeSet<&str> {
        self.facts
            .keys()
            .flat_map(|f| [f.tail.as_str(), f.head.as_str()])
            .collect()
    }

    pub fn remove(&mut self, fact: &Fact) -> Option<u64> {
        self.facts.remove(fact)
    }

    pub fn without<'a, I: IntoIterator<Item = &'a Fact>>(&self, facts: I) -> GraphDb {
        let mut db = self.clone();
        for f in facts {
            db.facts.remove(f);
        }
        db
    }

    pub fn retain<F: FnMut(&Fact) -> bool>(&self, mut keep: F) -> GraphDb {
        GraphDb {
            facts: self
                .facts
                .iter()
                .filter(|(f, _)| keep(f))
                .map(|(f, &m)| (f.clone(), m))
                .collect(),
        }
    }

    /// Total multiplicity of `facts` (which must belong to the database).
    pub fn cost<'a, I: IntoIterator<Item = &'a Fact>>(&self, facts: I) -> Result<u64, GraphDbError> {
        facts.into_iter().try_fold(0u64, |acc, f| {
            acc.checked_add(self.mult(f)).ok_or(GraphDbError::Overflow)
        })
    }

    pub fn total_multiplicity(&self) -> Result<u64, GraphDbError> {
        self.cost(self.facts.keys())
    }

    /// Every multiplicity set to 1.
    pub fn to_set_semantics(&self) -> GraphDb {
        GraphDb {
            facts: self.facts.keys().map(|f| (f.clone(), 1)).collect(),
        }
    }

    pub fn is_set(&self) -> bool {
        self.facts.values().all(|&m| m == 1)
    }

    /// Reverses every edge.
    pub fn reverse_edges(&self) -> GraphDb {
        GraphDb {
            facts: self.facts.iter().map(|(f, &m)| (f.reversed(), m)).collect(),
        }
    }

    pub fn alphabet(&self) -> BTreeSet<Letter> {
        self.facts.keys().map(|f| f.label.clone()).collect()
    }

    /// Parses `tail label head [mult]` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<GraphDb, GraphDbError> {
        let mut db = GraphDb::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |msg: String| GraphDbError::Parse { line, msg };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let (tail, label, head, mult) = match tokens[..] {
                [t, l, h] => (t, l, h, 1),
                [t, l, h, m] => {
                    let m: i128 = m.parse().map_err(|_| err(format!("bad multiplicity {m:?}")))?;
                    if m <= 0 {
                        return Err(err(format!("multiplicity must be positive, got {m}")));
                    }
                    let m = u64::try_from(m).map_err(|_| err("multiplicity too large".into()))?;
                    (t, l, h, m)
                }
                _ => return Err(err(format!("expected 'tail label head [mult]', got {content:?}"))),
            };
            let label = label
                .strip_prefix('[')
                .and_then(|l| l.strip_suffix(']'))
                .unwrap_or(label);
            if label.is_empty() {
                return Err(err("empty label".into()));
            }
            let fact = Fact::new(tail, Letter::new(label), head);
            if db.contains(&fact) {
                return Err(GraphDbError::Duplicate {
                    line,
                    fact: fact.to_string(),
                });
            }
            db.facts.insert(fact, mult);
        }
        Ok(db)
    }

    /// Canonical text form: sorted facts, multiplicity only when not 1.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (f, &m) in &self.facts {
            if m == 1 {
                out.push_str(&format!("{f}\n"));
            } else {
                out.push_str(&format!("{f} {m}\n"));
            }
        }
        out
    }
}

pub fn parse_db(text: &str) -> Result<GraphDb, GraphDbError> {
    GraphDb::parse(text)
}

pub fn serialize_db(db: &GraphDb) -> String {
    db.serialize()
}
