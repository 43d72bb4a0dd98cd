use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::lang::{has_repeated_letter, FiniteLanguage, Letter, Word};

/// Why a language is not a chain language.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ChainViolation {
    RepeatedLetter {
        #[serde(serialize_with = "crate::serde_display")]
        word: Word,
        #[serde(serialize_with = "crate::serde_display")]
        letter: Letter,
    },
    SharedInteriorLetter {
        #[serde(serialize_with = "crate::serde_display")]
        letter: Letter,
        #[serde(serialize_with = "crate::serde_display")]
        word: Word,
        #[serde(serialize_with = "crate::serde_display")]
        other: Word,
    },
}

impl std::fmt::Display for ChainViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChainViolation::RepeatedLetter { word, letter } => write!(f, "letter {letter} repeats in {word}"),
            ChainViolation::SharedInteriorLetter { letter, word, other } => {
                write!(f, "interior letter {letter} of {word} also occurs in {other}")
            }
        }
    }
}

/// Checks that no word repeats a letter and that interior letters of each
/// word occur in no other word.
pub fn chain_violation(l: &FiniteLanguage) -> Option<ChainViolation> {
    for word in l.words() {
        if let Some(r) = has_repeated_letter(word) {
            return Some(ChainViolation::RepeatedLetter {
                word: word.clone(),
                letter: r.letter,
            });
        }
    }
    for word in l.words() {
        if word.len() < 3 {
            continue;
        }
        for letter in &word.letters()[1..word.len() - 1] {
            if let Some(other) = l.words().find(|o| *o != word && o.letters().contains(letter)) {
                return Some(ChainViolation::SharedInteriorLetter {
                    letter: letter.clone(),
                    word: word.clone(),
                    other: other.clone(),
                });
            }
        }
    }
    None
}

pub fn is_chain_language(l: &FiniteLanguage) -> bool {
    chain_violation(l).is_none()
}

/// Undirected graph on the alphabet joining the two endpoints of each word
/// of length at least 2.
pub type EndpointGraph = BTreeMap<Letter, BTreeSet<Letter>>;

pub fn endpoint_graph(l: &FiniteLanguage) -> EndpointGraph {
    let mut g: EndpointGraph = l.alphabet().into_iter().map(|a| (a, BTreeSet::new())).collect();
    for word in l.words() {
        if word.len() >= 2 {
            let (a, b) = (word.first().unwrap(), word.last().unwrap());
            if a != b {
                g.get_mut(a).unwrap().insert(b.clone());
                g.get_mut(b).unwrap().insert(a.clone());
            }
        }
    }
    g
}

/// Greedy BFS two-coloring in letter order; `true` marks the source side
/// (the first letter of each component). On failure returns an odd cycle.
pub fn two_coloring(g: &EndpointGraph) -> Result<BTreeMap<Letter, bool>, Vec<Letter>> {
    let mut color: BTreeMap<&Letter, bool> = BTreeMap::new();
    let mut parent: BTreeMap<&Letter, &Letter> = BTreeMap::new();
    for root in g.keys() {
        if color.contains_key(root) {
            continue;
        }
        color.insert(root, true);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for v in &g[u] {
                match color.get(v) {
                    None => {
                        color.insert(v, !color[u]);
                        parent.insert(v, u);
                        queue.push_back(v);
                    }
                    Some(&c) if c == color[u] => return Err(odd_cycle(&parent, u, v)),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(color.into_iter().map(|(k, v)| (k.clone(), v)).collect())
}

fn odd_cycle<'a>(parent: &BTreeMap<&'a Letter, &'a Letter>, u: &'a Letter, v: &'a Letter) -> Vec<Letter> {
    let path = |mut x: &'a Letter| {
        let mut p = vec![x.clone()];
        while let Some(&y) = parent.get(x) {
            p.push(y.clone());
            x = y;
        }
        p.reverse();
        p
    };
    let (pu, pv) = (path(u), path(v));
    let common = pu.iter().zip(&pv).take_while(|(a, b)| a == b).count();
    // cycle: lca .. u, then v .. back to just after lca
    let mut cycle: Vec<Letter> = pu[common - 1..].to_vec();
    cycle.extend(pv[common..].iter().rev().cloned());
    cycle
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BclFailure {
    NotChain(ChainViolation),
    OddCycle(#[serde(serialize_with = "serialize_letters")] Vec<Letter>),
}

fn serialize_letters<S: serde::Serializer>(v: &[Letter], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(Letter::name))
}

impl std::fmt::Display for BclFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BclFailure::NotChain(v) => write!(f, "not a chain language: {v}"),
            BclFailure::OddCycle(c) => {
                let names: Vec<String> = c.iter().map(ToString::to_string).collect();
                write!(f, "odd cycle in the endpoint graph: {}", names.join("-"))
            }
        }
    }
}

/// Bipartite chain language check; on success returns the side of each
/// letter (`true` = source side).
pub fn bcl_bipartition(l: &FiniteLanguage) -> Result<BTreeMap<Letter, bool>, BclFailure> {
    if let Some(v) = chain_violation(l) {
        return Err(BclFailure::NotChain(v));
    }
    two_coloring(&endpoint_graph(l)).map_err(BclFailure::OddCycle)
}

pub fn is_bcl(l: &FiniteLanguage) -> bool {
    bcl_bipartition(l).is_ok()
}
