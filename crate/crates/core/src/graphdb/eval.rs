use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::automata::{finite_to_epsnfa, EpsNfa};
use crate::lang::{FiniteLanguage, Letter, Word};

use super::{Fact, GraphDb};

/// Product of a database and an automaton, prepared for repeated
/// reachability queries on sub-databases given by a removal predicate.
pub struct Evaluator<'a> {
    facts: Vec<&'a Fact>,
    out: Vec<Vec<usize>>,
    fact_head: Vec<usize>,
    fact_label: Vec<usize>,
    num_nodes: usize,
    /// `moves[s][letter]`: letter successors of automaton state `s`.
    moves: Vec<Vec<Vec<usize>>>,
    eps: Vec<Vec<usize>>,
    initial: Vec<usize>,
    finals: Vec<bool>,
    accepts_epsilon: bool,
}

impl<'a> Evaluator<'a> {
    pub fn new(db: &'a GraphDb, a: &EpsNfa) -> Self {
        let facts: Vec<&Fact> = db.facts().collect();
        let nodes: BTreeMap<&str, usize> = db.adom().into_iter().enumerate().map(|(i, v)| (v, i)).collect();
        let letters: HashMap<&Letter, usize> = a.alphabet().iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut out = vec![Vec::new(); nodes.len()];
        for (i, f) in facts.iter().enumerate() {
            out[nodes[f.tail.as_str()]].push(i);
        }
        let n = a.num_states();
        let mut moves = vec![vec![Vec::new(); letters.len()]; n];
        let mut eps = vec![Vec::new(); n];
        for t in a.transitions() {
            match &t.label {
                Some(l) => moves[t.from][letters[l]].push(t.to),
                None => eps[t.from].push(t.to),
            }
        }
        Evaluator {
            fact_head: facts.iter().map(|f| nodes[f.head.as_str()]).collect(),
            fact_label: facts
                .iter()
                .map(|f| letters.get(&f.label).copied().unwrap_or(usize::MAX))
                .collect(),
            facts,
            out,
            num_nodes: nodes.len(),
            moves,
            eps,
            initial: a.initial().iter().copied().collect(),
            finals: (0..n).map(|s| a.finals().contains(&s)).collect(),
            accepts_epsilon: a.accepts_epsilon(),
        }
    }

    /// Facts indexed as in the `removed` predicate of [`Self::find_walk`].
    pub fn facts(&self) -> &[&'a Fact] {
        &self.facts
    }

    pub fn accepts_epsilon(&self) -> bool {
        self.accepts_epsilon
    }

    /// Fact indices of some accepted walk avoiding removed facts.
    pub fn find_walk(&self, removed: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
        if self.accepts_epsilon {
            return Some(Vec::new());
        }
        let n = self.finals.len();
        let id = |v: usize, s: usize| v * n + s;
        let mut parent: Vec<Option<(usize, Option<usize>)>> = vec![None; self.num_nodes * n];
        let mut seen = vec![false; self.num_nodes * n];
        let mut queue = VecDeque::new();
        for v in 0..self.num_nodes {
            for &s in &self.initial {
                if !seen[id(v, s)] {
                    seen[id(v, s)] = true;
                    queue.push_back((v, s));
                }
            }
        }
        while let Some((v, s)) = queue.pop_front() {
            if self.finals[s] {
                let mut walk = Vec::new();
                let mut cur = id(v, s);
                while let Some((prev, fact)) = parent[cur] {
                    walk.extend(fact);
                    cur = prev;
                }
                walk.reverse();
                return Some(walk);
            }
            let mut visit = |v2: usize, s2: usize, fact: Option<usize>, queue: &mut VecDeque<(usize, usize)>| {
                if !seen[id(v2, s2)] {
                    seen[id(v2, s2)] = true;
                    parent[id(v2, s2)] = Some((id(v, s), fact));
                    queue.push_back((v2, s2));
                }
            };
            for &t in &self.eps[s] {
                visit(v, t, None, &mut queue);
            }
            for &f in &self.out[v] {
                if removed(f) || self.fact_label[f] == usize::MAX {
                    continue;
                }
                for &t in &self.moves[s][self.fact_label[f]] {
                    visit(self.fact_head[f], t, Some(f), &mut queue);
                }
            }
        }
        None
    }
}

/// Whether `D` contains a walk labeled by a word of `L(A)`.
pub fn satisfies(db: &GraphDb, a: &EpsNfa) -> bool {
    Evaluator::new(db, a).find_walk(|_| false).is_some()
}

/// Some accepted walk of `D`, as a fact sequence.
pub fn find_walk(db: &GraphDb, a: &EpsNfa) -> Option<Vec<Fact>> {
    let ev = Evaluator::new(db, a);
    ev.find_walk(|_| false)
        .map(|w| w.into_iter().map(|i| ev.facts[i].clone()).collect())
}

/// A match: the fact set of an accepted walk, with one such walk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Match {
    pub facts: BTreeSet<Fact>,
    pub walk: Vec<Fact>,
}

impl Match {
    pub fn word(&self) -> Word {
        Word::from_letters(self.walk.iter().map(|f| f.label.clone()).collect())
    }
}

/// All matches of the nonempty words of `L` on `D`, one per distinct fact
/// set, sorted by fact set. The kept walk is the first found in canonical
/// order.
pub fn enumerate_matches(db: &GraphDb, l: &FiniteLanguage) -> Vec<Match> {
    let trie = finite_to_epsnfa(l);
    let mut children: BTreeMap<(usize, &Letter), usize> = BTreeMap::new();
    for t in trie.transitions() {
        children.insert((t.from, t.label.as_ref().unwrap()), t.to);
    }
    let mut by_tail: BTreeMap<&str, Vec<&Fact>> = BTreeMap::new();
    for f in db.facts() {
        by_tail.entry(f.tail.as_str()).or_default().push(f);
    }
    let root = *trie.initial().iter().next().unwrap();
    let mut found: BTreeMap<BTreeSet<Fact>, Vec<Fact>> = BTreeMap::new();
    let mut walk: Vec<&Fact> = Vec::new();

    fn extend<'a>(
        node: &str,
        state: usize,
        walk: &mut Vec<&'a Fact>,
        by_tail: &BTreeMap<&str, Vec<&'a Fact>>,
        children: &BTreeMap<(usize, &Letter), usize>,
        finals: &BTreeSet<usize>,
        found: &mut BTreeMap<BTreeSet<Fact>, Vec<Fact>>,
    ) {
        if !walk.is_empty() && finals.contains(&state) {
            let set: BTreeSet<Fact> = walk.iter().map(|f| (*f).clone()).collect();
            found
                .entry(set)
                .or_insert_with(|| walk.iter().map(|f| (*f).clone()).collect());
        }
        for f in by_tail.get(node).into_iter().flatten() {
            if let Some(&next) = children.get(&(state, &f.label)) {
                walk.push(f);
                extend(&f.head, next, walk, by_tail, children, finals, found);
                walk.pop();
            }
        }
    }

    for v in db.adom() {
        extend(v, root, &mut walk, &by_tail, &children, trie.finals(), &mut found);
    }
    found.into_iter().map(|(facts, walk)| Match { facts, walk }).collect()
}
