use std::collections::{BTreeMap, BTreeSet};

use crate::automata::{eps_closure_with, EpsNfa};
use crate::classifier::bcl_bipartition;
use crate::flow::{min_cut, Capacity, FlowNetwork};
use crate::graphdb::{Fact, GraphDb, GraphDbError};
use crate::lang::{reduce_finite, FiniteLanguage, Letter, Word};

use super::{Method, ResilienceAnswer, SolverError};

/// Explicit word list of an automaton for a chain language.
///
/// Handles ε and single-letter words directly; for every pair of endpoint
/// letters `(a, b)` it reads the middles `γ` with `aγb ∈ L` off a trie that
/// may branch only at its root and has depth at most `|Σ|`.
pub fn extract_word_list(a: &EpsNfa) -> Result<FiniteLanguage, SolverError> {
    let t = a.trim();
    let adj = t.adjacency();
    let radj = t.reverse_adjacency();
    let left = eps_closure_with(&adj, t.initial());
    let right = eps_closure_with(&radj, t.finals());
    let depth_cap = t.alphabet().len();
    let mut words = FiniteLanguage::new();
    if left.iter().any(|s| t.finals().contains(s)) {
        words.insert(Word::empty());
    }
    let mut starts: BTreeMap<&Letter, BTreeSet<usize>> = BTreeMap::new();
    let mut ends: BTreeMap<&Letter, BTreeSet<usize>> = BTreeMap::new();
    for tr in t.transitions() {
        let Some(l) = &tr.label else { continue };
        if left.contains(&tr.from) {
            starts.entry(l).or_default().insert(tr.to);
            if right.contains(&tr.to) {
                words.insert(Word::from_letters(vec![l.clone()]));
            }
        }
        if right.contains(&tr.to) {
            ends.entry(l).or_default().insert(tr.from);
        }
    }
    for (a_letter, heads) in &starts {
        for (b_letter, tails) in &ends {
            let init = eps_closure_with(&adj, heads);
            for middle in trie_words(&adj, init, tails, depth_cap)? {
                let mut w = Word::from_letters(vec![(*a_letter).clone()]);
                for l in middle.letters() {
                    w.push(l.clone());
                }
                w.push((*b_letter).clone());
                words.insert(w);
            }
        }
    }
    Ok(words)
}

/// Words leading from `init` into `finals`, explored as a subset trie.
fn trie_words(
    adj: &[Vec<(Option<&Letter>, usize)>],
    init: BTreeSet<usize>,
    finals: &BTreeSet<usize>,
    depth_cap: usize,
) -> Result<Vec<Word>, SolverError> {
    let mut out = Vec::new();
    let mut stack = vec![(init, Word::empty())];
    while let Some((set, word)) = stack.pop() {
        let is_final = set.iter().any(|s| finals.contains(s));
        let mut next: BTreeMap<&Letter, BTreeSet<usize>> = BTreeMap::new();
        for &s in &set {
            for &(l, to) in &adj[s] {
                if let Some(l) = l {
                    next.entry(l).or_default().insert(to);
                }
            }
        }
        // keep only branches that can still reach a final state
        next.retain(|_, targets| reaches(adj, targets, finals));
        if !word.is_empty() {
            let offending = word.last().unwrap();
            if next.len() > 1 || (is_final && !next.is_empty()) {
                return Err(SolverError::Structure {
                    letter: offending.to_string(),
                    msg: format!("middle words branch after {word}"),
                });
            }
        }
        if word.len() > depth_cap {
            return Err(SolverError::Structure {
                letter: word.last().unwrap().to_string(),
                msg: "middle word longer than the alphabet (repeated letter or cycle)".into(),
            });
        }
        if is_final {
            out.push(word.clone());
        }
        for (l, targets) in next {
            let mut w = word.clone();
            w.push(l.clone());
            stack.push((eps_closure_with(adj, &targets), w));
        }
    }
    Ok(out)
}

fn reaches(adj: &[Vec<(Option<&Letter>, usize)>], from: &BTreeSet<usize>, finals: &BTreeSet<usize>) -> bool {
    let mut seen: BTreeSet<usize> = from.clone();
    let mut stack: Vec<usize> = from.iter().copied().collect();
    while let Some(s) = stack.pop() {
        if finals.contains(&s) {
            return true;
        }
        for &(_, t) in &adj[s] {
            if seen.insert(t) {
                stack.push(t);
            }
        }
    }
    false
}

/// Resilience for a bipartite chain language through the per-fact network.
pub fn resilience_bcl(db: &GraphDb, l: &FiniteLanguage) -> Result<ResilienceAnswer, SolverError> {
    if l.contains_epsilon() {
        return Ok(ResilienceAnswer::infinite(Method::Bcl));
    }
    let l = reduce_finite(l);
    let sides = bcl_bipartition(&l).map_err(|e| SolverError::Refused(format!("not a BCL: {e}")))?;

    let single: BTreeSet<&Letter> = l.words().filter(|w| w.len() == 1).map(|w| &w.letters()[0]).collect();
    let forced: BTreeSet<Fact> = db.facts().filter(|f| single.contains(&f.label)).cloned().collect();
    let forced_cost = db.cost(&forced)?;
    let rest = db.without(&forced);

    let mut net = FlowNetwork::new();
    let mut start = BTreeMap::new();
    let mut end = BTreeMap::new();
    let mut fact_edge = BTreeMap::new();
    let relevant: BTreeSet<&Letter> = l.words().filter(|w| w.len() >= 2).flat_map(|w| w.letters()).collect();
    let mut by_label: BTreeMap<&Letter, Vec<&Fact>> = BTreeMap::new();
    for (f, m) in rest.entries() {
        if !relevant.contains(&f.label) {
            continue;
        }
        let (s, e) = (net.add_vertex(), net.add_vertex());
        let id = net.add_edge(s, e, Capacity::Finite(m));
        fact_edge.insert(id, f);
        start.insert(f, s);
        end.insert(f, e);
        by_label.entry(&f.label).or_default().push(f);
    }
    let none = Vec::new();
    for w in l.words().filter(|w| w.len() >= 2) {
        let forward = sides[w.first().unwrap()];
        for pair in w.letters().windows(2) {
            for f in by_label.get(&pair[0]).unwrap_or(&none) {
                for g in by_label.get(&pair[1]).unwrap_or(&none) {
                    if f.head == g.tail {
                        if forward {
                            net.add_edge(end[f], start[g], Capacity::Infinite);
                        } else {
                            net.add_edge(end[g], start[f], Capacity::Infinite);
                        }
                    }
                }
            }
        }
        for letter in [w.first().unwrap(), w.last().unwrap()] {
            for f in by_label.get(letter).unwrap_or(&none) {
                if sides[letter] {
                    net.add_edge(net.source(), start[f], Capacity::Infinite);
                } else {
                    net.add_edge(end[f], net.target(), Capacity::Infinite);
                }
            }
        }
    }
    let cut = min_cut(&net)?;
    let Capacity::Finite(value) = cut.value else {
        unreachable!("every source-target path crosses a fact edge")
    };
    let mut facts = forced;
    facts.extend(cut.edges.iter().map(|e| fact_edge[e].clone()));
    let total = value.checked_add(forced_cost).ok_or(GraphDbError::Overflow)?;
    Ok(ResilienceAnswer::finite(total, facts, Method::Bcl))
}
