//! Finite automata with ε-transitions and the language-level decision
//! procedures built on them.

mod format;
pub(crate) mod local;
mod monoid;
mod reduce;
mod thompson;

pub use format::AutomatonParseError;
pub use local::{
    eps_nfa_to_ro, is_letter_cartesian_finite, is_local_dfa, is_local_language, letter_cartesian_violation,
    CartesianViolation, RoSummary,
};
pub use monoid::{aperiodicity, is_aperiodic, Aperiodicity};
pub use reduce::{delete_one, insert_one, is_neutral_letter, is_reduced_regular, neutral_letters, reduce_regular};
pub use thompson::{finite_to_epsnfa, regex_to_epsnfa};

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::lang::{FiniteLanguage, Letter, Word};

pub type StateId = usize;

/// Default bound on determinized states and monoid elements.
pub const DEFAULT_STATE_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomataError {
    #[error("determinization exceeded the cap of {cap} states")]
    StateCapExceeded { cap: usize },
    #[error("transition monoid exceeded the cap of {cap} elements")]
    MonoidCapExceeded { cap: usize },
    #[error("automaton is not deterministic: {0}")]
    NotDeterministic(String),
    #[error(transparent)]
    Parse(#[from] AutomatonParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub from: StateId,
    /// `None` is an ε-transition.
    pub label: Option<Letter>,
    pub to: StateId,
}

/// An εNFA `(S, I, F, Δ)` over an explicit alphabet.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EpsNfa {
    num_states: usize,
    initial: BTreeSet<StateId>,
    finals: BTreeSet<StateId>,
    transitions: Vec<Transition>,
    alphabet: BTreeSet<Letter>,
}

impl EpsNfa {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_alphabet<I: IntoIterator<Item = Letter>>(alphabet: I) -> Self {
        EpsNfa {
            alphabet: alphabet.into_iter().collect(),
            ..Self::default()
        }
    }

    pub fn add_state(&mut self) -> StateId {
        self.num_states += 1;
        self.num_states - 1
    }

    pub fn add_states(&mut self, n: usize) -> StateId {
        let first = self.num_states;
        self.num_states += n;
        first
    }

    pub fn set_initial(&mut self, s: StateId) {
        assert!(s < self.num_states);
        self.initial.insert(s);
    }

    pub fn set_final(&mut self, s: StateId) {
        assert!(s < self.num_states);
        self.finals.insert(s);
    }

    pub fn add_transition(&mut self, from: StateId, label: Option<Letter>, to: StateId) {
        assert!(from < self.num_states && to < self.num_states);
        if let Some(l) = &label {
            self.alphabet.insert(l.clone());
        }
        self.transitions.push(Transition { from, label, to });
    }

    pub fn add_letter(&mut self, l: Letter) {
        self.alphabet.insert(l);
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn initial(&self) -> &BTreeSet<StateId> {
        &self.initial
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn alphabet(&self) -> &BTreeSet<Letter> {
        &self.alphabet
    }

    /// `|S| + |Δ|`.
    pub fn size(&self) -> usize {
        self.num_states + self.transitions.len()
    }

    pub fn has_epsilon_transitions(&self) -> bool {
        self.transitions.iter().any(|t| t.label.is_none())
    }

    /// At most one transition per letter.
    pub fn is_read_once(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.transitions
            .iter()
            .filter_map(|t| t.label.as_ref())
            .all(|l| seen.insert(l))
    }

    pub fn is_deterministic(&self) -> bool {
        self.determinism_violation().is_none()
    }

    fn determinism_violation(&self) -> Option<String> {
        if self.initial.len() != 1 {
            return Some(format!("{} initial states", self.initial.len()));
        }
        let mut seen = BTreeSet::new();
        for t in &self.transitions {
            match &t.label {
                None => return Some(format!("ε-transition {} -> {}", t.from, t.to)),
                Some(l) => {
                    if !seen.insert((t.from, l)) {
                        return Some(format!("two {l}-transitions leave state {}", t.from));
                    }
                }
            }
        }
        None
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<(Option<&Letter>, StateId)>> {
        let mut adj = vec![Vec::new(); self.num_states];
        for t in &self.transitions {
            adj[t.from].push((t.label.as_ref(), t.to));
        }
        adj
    }

    pub(crate) fn reverse_adjacency(&self) -> Vec<Vec<(Option<&Letter>, StateId)>> {
        let mut adj = vec![Vec::new(); self.num_states];
        for t in &self.transitions {
            adj[t.to].push((t.label.as_ref(), t.from));
        }
        adj
    }

    /// States reachable from `from` through ε-transitions only.
    pub fn eps_closure(&self, from: &BTreeSet<StateId>) -> BTreeSet<StateId> {
        eps_closure_with(&self.adjacency(), from)
    }

    pub fn accepts(&self, word: &Word) -> bool {
        let adj = self.adjacency();
        let mut current = eps_closure_with(&adj, &self.initial);
        for letter in word.letters() {
            let next: BTreeSet<StateId> = current
                .iter()
                .flat_map(|&s| adj[s].iter())
                .filter(|(l, _)| *l == Some(letter))
                .map(|&(_, t)| t)
                .collect();
            current = eps_closure_with(&adj, &next);
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|s| self.finals.contains(s))
    }

    pub fn accepts_epsilon(&self) -> bool {
        self.eps_closure(&self.initial).iter().any(|s| self.finals.contains(s))
    }

    /// Keeps only accessible and co-accessible states, renumbered in order.
    pub fn trim(&self) -> EpsNfa {
        let useful = self.useful_states();
        let mut renumber = vec![usize::MAX; self.num_states];
        let mut out = EpsNfa::with_alphabet(self.alphabet.iter().cloned());
        for s in 0..self.num_states {
            if useful[s] {
                renumber[s] = out.add_state();
            }
        }
        for &s in &self.initial {
            if useful[s] {
                out.set_initial(renumber[s]);
            }
        }
        for &s in &self.finals {
            if useful[s] {
                out.set_final(renumber[s]);
            }
        }
        for t in &self.transitions {
            if useful[t.from] && useful[t.to] {
                out.add_transition(renumber[t.from], t.label.clone(), renumber[t.to]);
            }
        }
        out
    }

    fn useful_states(&self) -> Vec<bool> {
        let forward = reach(&self.adjacency(), self.initial.iter().copied(), |_| true);
        let backward = reach(&self.reverse_adjacency(), self.finals.iter().copied(), |_| true);
        forward.iter().zip(&backward).map(|(a, b)| *a && *b).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_word().is_none()
    }

    /// A shortest accepted word, if any (BFS over states).
    pub fn shortest_word(&self) -> Option<Word> {
        let adj = self.adjacency();
        let mut parent: Vec<Option<(StateId, Option<&Letter>)>> = vec![None; self.num_states];
        let mut seen = vec![false; self.num_states];
        // 0-1 BFS: ε edges cost nothing
        let mut dq = VecDeque::new();
        let mut dist = vec![usize::MAX; self.num_states];
        for &s in &self.initial {
            dist[s] = 0;
            dq.push_back(s);
        }
        while let Some(s) = dq.pop_front() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            if self.finals.contains(&s) {
                let mut letters = Vec::new();
                let mut cur = s;
                while let Some((p, l)) = parent[cur] {
                    if let Some(l) = l {
                        letters.push(l.clone());
                    }
                    cur = p;
                }
                letters.reverse();
                return Some(Word::from_letters(letters));
            }
            for &(l, t) in &adj[s] {
                let cost = usize::from(l.is_some());
                if dist[s] + cost < dist[t] {
                    dist[t] = dist[s] + cost;
                    parent[t] = Some((s, l));
                    if cost == 0 {
                        dq.push_front(t);
                    } else {
                        dq.push_back(t);
                    }
                }
            }
        }
        None
    }

    /// Whether the language is infinite: some letter transition lies on a
    /// cycle of the trimmed automaton.
    pub fn is_infinite(&self) -> bool {
        let t = self.trim();
        let comp = scc(&t.adjacency());
        t.transitions
            .iter()
            .any(|tr| tr.label.is_some() && comp[tr.from] == comp[tr.to])
    }

    /// Explicit word list when the language is finite.
    pub fn finite_words(&self) -> Option<FiniteLanguage> {
        if self.is_infinite() {
            return None;
        }
        let t = self.trim();
        let adj = t.adjacency();
        let mut words = FiniteLanguage::new();
        let start = eps_closure_with(&adj, &t.initial);
        let mut stack = vec![(start, Word::empty())];
        while let Some((set, word)) = stack.pop() {
            if set.iter().any(|s| t.finals.contains(s)) {
                words.insert(word.clone());
            }
            let mut by_letter: BTreeMap<&Letter, BTreeSet<StateId>> = BTreeMap::new();
            for &s in &set {
                for &(l, to) in &adj[s] {
                    if let Some(l) = l {
                        by_letter.entry(l).or_default().insert(to);
                    }
                }
            }
            for (l, next) in by_letter {
                let mut w2 = word.clone();
                w2.push(l.clone());
                stack.push((eps_closure_with(&adj, &next), w2));
            }
        }
        Some(words)
    }

    /// Mirror automaton: reverse every transition, swap initial and final.
    pub fn mirror(&self) -> EpsNfa {
        EpsNfa {
            num_states: self.num_states,
            initial: self.finals.clone(),
            finals: self.initial.clone(),
            transitions: self
                .transitions
                .iter()
                .map(|t| Transition {
                    from: t.to,
                    label: t.label.clone(),
                    to: t.from,
                })
                .collect(),
            alphabet: self.alphabet.clone(),
        }
    }

    pub fn union(&self, other: &EpsNfa) -> EpsNfa {
        let mut out = self.clone();
        let off = out.add_states(other.num_states);
        for &s in &other.initial {
            out.set_initial(s + off);
        }
        for &s in &other.finals {
            out.set_final(s + off);
        }
        for t in &other.transitions {
            out.add_transition(t.from + off, t.label.clone(), t.to + off);
        }
        out.alphabet.extend(other.alphabet.iter().cloned());
        out
    }

    /// Renders in the line-oriented text format.
    pub fn to_text(&self) -> String {
        format::write(self)
    }

    pub fn parse_text(text: &str) -> Result<EpsNfa, AutomataError> {
        Ok(format::parse(text)?)
    }
}

pub(crate) fn eps_closure_with(adj: &[Vec<(Option<&Letter>, StateId)>], from: &BTreeSet<StateId>) -> BTreeSet<StateId> {
    let mut out = from.clone();
    let mut stack: Vec<StateId> = from.iter().copied().collect();
    while let Some(s) = stack.pop() {
        for &(l, t) in &adj[s] {
            if l.is_none() && out.insert(t) {
                stack.push(t);
            }
        }
    }
    out
}

fn reach<F>(adj: &[Vec<(Option<&Letter>, StateId)>], from: impl Iterator<Item = StateId>, follow: F) -> Vec<bool>
where
    F: Fn(Option<&Letter>) -> bool,
{
    let mut seen = vec![false; adj.len()];
    let mut stack: Vec<StateId> = from.collect();
    for &s in &stack {
        seen[s] = true;
    }
    while let Some(s) = stack.pop() {
        for &(l, t) in &adj[s] {
            if follow(l) && !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    seen
}

/// Tarjan's strongly connected components; returns a component id per state.
fn scc(adj: &[Vec<(Option<&Letter>, StateId)>]) -> Vec<usize> {
    struct Tarjan<'a, 'b> {
        adj: &'a [Vec<(Option<&'b Letter>, StateId)>],
        index: Vec<usize>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        comp: Vec<usize>,
        counter: usize,
        ncomp: usize,
    }
    impl Tarjan<'_, '_> {
        fn visit(&mut self, v: usize) {
            // explicit stack of (vertex, next edge index)
            let mut call = vec![(v, 0usize)];
            self.index[v] = self.counter;
            self.low[v] = self.counter;
            self.counter += 1;
            self.stack.push(v);
            self.on_stack[v] = true;
            while let Some(&mut (u, ref mut i)) = call.last_mut() {
                if *i < self.adj[u].len() {
                    let w = self.adj[u][*i].1;
                    *i += 1;
                    if self.index[w] == usize::MAX {
                        self.index[w] = self.counter;
                        self.low[w] = self.counter;
                        self.counter += 1;
                        self.stack.push(w);
                        self.on_stack[w] = true;
                        call.push((w, 0));
                    } else if self.on_stack[w] {
                        self.low[u] = self.low[u].min(self.index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        self.low[parent] = self.low[parent].min(self.low[u]);
                    }
                    if self.low[u] == self.index[u] {
                        loop {
                            let w = self.stack.pop().unwrap();
                            self.on_stack[w] = false;
                            self.comp[w] = self.ncomp;
                            if w == u {
                                break;
                            }
                        }
                        self.ncomp += 1;
                    }
                }
            }
        }
    }
    let n = adj.len();
    let mut t = Tarjan {
        adj,
        index: vec![usize::MAX; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        comp: vec![usize::MAX; n],
        counter: 0,
        ncomp: 0,
    };
    for v in 0..n {
        if t.index[v] == usize::MAX {
            t.visit(v);
        }
    }
    t.comp
}

/// A partial DFA over an indexed alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<Letter>,
    start: StateId,
    finals: Vec<bool>,
    delta: Vec<Vec<Option<StateId>>>,
}

impl Dfa {
    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn is_final(&self, s: StateId) -> bool {
        self.finals[s]
    }

    pub fn next(&self, s: StateId, letter: &Letter) -> Option<StateId> {
        let i = self.alphabet.binary_search(letter).ok()?;
        self.delta[s][i]
    }

    pub(crate) fn next_index(&self, s: StateId, i: usize) -> Option<StateId> {
        self.delta[s][i]
    }

    pub fn run(&self, from: StateId, word: &Word) -> Option<StateId> {
        word.letters().iter().try_fold(from, |s, l| self.next(s, l))
    }

    pub fn accepts(&self, word: &Word) -> bool {
        self.run(self.start, word).is_some_and(|s| self.finals[s])
    }

    /// Converts a deterministic εNFA; errors on nondeterminism.
    pub fn from_nfa(a: &EpsNfa) -> Result<Dfa, AutomataError> {
        if let Some(msg) = a.determinism_violation() {
            return Err(AutomataError::NotDeterministic(msg));
        }
        let alphabet: Vec<Letter> = a.alphabet.iter().cloned().collect();
        let mut delta = vec![vec![None; alphabet.len()]; a.num_states];
        for t in &a.transitions {
            let i = alphabet.binary_search(t.label.as_ref().unwrap()).unwrap();
            delta[t.from][i] = Some(t.to);
        }
        Ok(Dfa {
            alphabet,
            start: *a.initial.iter().next().unwrap(),
            finals: (0..a.num_states).map(|s| a.finals.contains(&s)).collect(),
            delta,
        })
    }

    pub fn to_eps_nfa(&self) -> EpsNfa {
        let mut a = EpsNfa::with_alphabet(self.alphabet.iter().cloned());
        a.add_states(self.num_states());
        a.set_initial(self.start);
        for (s, &f) in self.finals.iter().enumerate() {
            if f {
                a.set_final(s);
            }
        }
        for (s, row) in self.delta.iter().enumerate() {
            for (i, t) in row.iter().enumerate() {
                if let Some(t) = t {
                    a.add_transition(s, Some(self.alphabet[i].clone()), *t);
                }
            }
        }
        a
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(|row| row.iter().all(Option::is_some))
    }

    /// Adds a sink state if needed so that every transition is defined.
    pub fn complete(&self) -> Dfa {
        if self.is_complete() {
            return self.clone();
        }
        let mut d = self.clone();
        let sink = d.finals.len();
        d.finals.push(false);
        d.delta.push(vec![Some(sink); d.alphabet.len()]);
        for row in &mut d.delta {
            for t in row.iter_mut() {
                t.get_or_insert(sink);
            }
        }
        d
    }

    /// Extends the alphabet with letters that have no transitions.
    pub fn with_alphabet(&self, letters: &BTreeSet<Letter>) -> Dfa {
        let alphabet: Vec<Letter> = self
            .alphabet
            .iter()
            .chain(letters.iter())
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if alphabet.len() == self.alphabet.len() {
            return self.clone();
        }
        let delta = self
            .delta
            .iter()
            .map(|row| {
                alphabet
                    .iter()
                    .map(|l| self.alphabet.binary_search(l).ok().and_then(|i| row[i]))
                    .collect()
            })
            .collect();
        Dfa {
            alphabet,
            start: self.start,
            finals: self.finals.clone(),
            delta,
        }
    }

    /// Complement relative to the words over this DFA's alphabet.
    pub fn complement(&self) -> Dfa {
        let mut d = self.complete();
        for f in &mut d.finals {
            *f = !*f;
        }
        d
    }

    /// Minimal complete-free DFA: removes useless states, then merges
    /// equivalent states by partition refinement.
    pub fn minimize(&self) -> Dfa {
        let complete = self.complete();
        let n = complete.num_states();
        let k = complete.alphabet.len();
        // reachable states only
        let mut reachable = vec![false; n];
        let mut stack = vec![complete.start];
        reachable[complete.start] = true;
        while let Some(s) = stack.pop() {
            for t in complete.delta[s].iter().flatten() {
                if !reachable[*t] {
                    reachable[*t] = true;
                    stack.push(*t);
                }
            }
        }
        let mut class: Vec<usize> = (0..n).map(|s| usize::from(complete.finals[s])).collect();
        let mut num_classes = 0;
        loop {
            let mut signatures: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next = vec![0; n];
            let mut order: Vec<(usize, Vec<usize>)> = Vec::new();
            for s in 0..n {
                if !reachable[s] {
                    continue;
                }
                let sig = (
                    class[s],
                    (0..k).map(|i| class[complete.delta[s][i].unwrap()]).collect::<Vec<_>>(),
                );
                let len = signatures.len();
                let id = *signatures.entry(sig.clone()).or_insert_with(|| {
                    order.push(sig);
                    len
                });
                next[s] = id;
            }
            let count = signatures.len();
            class = next;
            if count == num_classes {
                break;
            }
            num_classes = count;
        }
        let mut finals = vec![false; num_classes];
        let mut delta = vec![vec![None; k]; num_classes];
        for s in 0..n {
            if !reachable[s] {
                continue;
            }
            finals[class[s]] = complete.finals[s];
            for i in 0..k {
                delta[class[s]][i] = Some(class[complete.delta[s][i].unwrap()]);
            }
        }
        let d = Dfa {
            alphabet: complete.alphabet.clone(),
            start: class[complete.start],
            finals,
            delta,
        };
        d.drop_dead_states().canonical()
    }

    /// Removes states from which no final state is reachable (the result may
    /// be partial).
    fn drop_dead_states(&self) -> Dfa {
        let n = self.num_states();
        let mut live: Vec<bool> = self.finals.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for s in 0..n {
                if !live[s] && self.delta[s].iter().flatten().any(|&t| live[t]) {
                    live[s] = true;
                    changed = true;
                }
            }
        }
        if !live[self.start] {
            return Dfa {
                alphabet: self.alphabet.clone(),
                start: 0,
                finals: vec![false],
                delta: vec![vec![None; self.alphabet.len()]],
            };
        }
        let mut renumber = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if live[s] {
                renumber[s] = count;
                count += 1;
            }
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            start: renumber[self.start],
            finals: (0..n).filter(|&s| live[s]).map(|s| self.finals[s]).collect(),
            delta: (0..n)
                .filter(|&s| live[s])
                .map(|s| {
                    self.delta[s]
                        .iter()
                        .map(|t| t.filter(|&t| live[t]).map(|t| renumber[t]))
                        .collect()
                })
                .collect(),
        }
    }

    /// Renumbers states in BFS order from the start state.
    fn canonical(&self) -> Dfa {
        let n = self.num_states();
        let mut order = vec![usize::MAX; n];
        let mut queue = VecDeque::from([self.start]);
        order[self.start] = 0;
        let mut count = 1;
        let mut seq = vec![self.start];
        while let Some(s) = queue.pop_front() {
            for t in self.delta[s].iter().flatten() {
                if order[*t] == usize::MAX {
                    order[*t] = count;
                    count += 1;
                    seq.push(*t);
                    queue.push_back(*t);
                }
            }
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            start: 0,
            finals: seq.iter().map(|&s| self.finals[s]).collect(),
            delta: seq
                .iter()
                .map(|&s| self.delta[s].iter().map(|t| t.map(|t| order[t])).collect())
                .collect(),
        }
    }
}

/// Subset construction over `alphabet` (which must contain the letters of
/// `a`), aborting beyond `cap` subset states.
pub fn determinize_over(a: &EpsNfa, alphabet: &BTreeSet<Letter>, cap: usize) -> Result<Dfa, AutomataError> {
    let alphabet: Vec<Letter> = alphabet
        .iter()
        .chain(a.alphabet.iter())
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let adj = a.adjacency();
    let start = eps_closure_with(&adj, &a.initial);
    let mut index: HashMap<BTreeSet<StateId>, StateId> = HashMap::new();
    let mut sets = vec![start.clone()];
    index.insert(start, 0);
    let mut delta: Vec<Vec<Option<StateId>>> = Vec::new();
    let mut i = 0;
    while i < sets.len() {
        let set = sets[i].clone();
        let mut row = vec![None; alphabet.len()];
        let mut by_letter: BTreeMap<&Letter, BTreeSet<StateId>> = BTreeMap::new();
        for &s in &set {
            for &(l, t) in &adj[s] {
                if let Some(l) = l {
                    by_letter.entry(l).or_default().insert(t);
                }
            }
        }
        for (l, next) in by_letter {
            let closed = eps_closure_with(&adj, &next);
            let id = match index.get(&closed) {
                Some(&id) => id,
                None => {
                    if sets.len() >= cap {
                        return Err(AutomataError::StateCapExceeded { cap });
                    }
                    let id = sets.len();
                    sets.push(closed.clone());
                    index.insert(closed, id);
                    id
                }
            };
            row[alphabet.binary_search(l).unwrap()] = Some(id);
        }
        delta.push(row);
        i += 1;
    }
    let finals = sets
        .iter()
        .map(|set| set.iter().any(|s| a.finals.contains(s)))
        .collect();
    Ok(Dfa {
        alphabet,
        start: 0,
        finals,
        delta,
    })
}

pub fn determinize(a: &EpsNfa, cap: usize) -> Result<Dfa, AutomataError> {
    determinize_over(a, &BTreeSet::new(), cap)
}

/// Complement of a DFA over its own alphabet (completion performed here).
pub fn complement(d: &Dfa) -> Dfa {
    d.complement()
}

/// Intersection automaton: ε-moves in either component, letters in lockstep.
pub fn product(a: &EpsNfa, b: &EpsNfa) -> EpsNfa {
    let mut out = EpsNfa::with_alphabet(a.alphabet.intersection(&b.alphabet).cloned());
    let nb = b.num_states;
    let id = |x: StateId, y: StateId| x * nb + y;
    out.add_states(a.num_states * nb);
    for &x in &a.initial {
        for &y in &b.initial {
            out.set_initial(id(x, y));
        }
    }
    for &x in &a.finals {
        for &y in &b.finals {
            out.set_final(id(x, y));
        }
    }
    let b_adj = b.adjacency();
    for ta in &a.transitions {
        match &ta.label {
            None => {
                for y in 0..nb {
                    out.add_transition(id(ta.from, y), None, id(ta.to, y));
                }
            }
            Some(l) => {
                for (y, edges) in b_adj.iter().enumerate() {
                    for &(lb, y2) in edges {
                        if lb == Some(l) {
                            out.add_transition(id(ta.from, y), Some(l.clone()), id(ta.to, y2));
                        }
                    }
                }
            }
        }
    }
    for tb in &b.transitions {
        if tb.label.is_none() {
            for x in 0..a.num_states {
                out.add_transition(id(x, tb.from), None, id(x, tb.to));
            }
        }
    }
    out.trim_keep_alphabet()
}

impl EpsNfa {
    fn trim_keep_alphabet(&self) -> EpsNfa {
        let mut t = self.trim();
        t.alphabet = self.alphabet.clone();
        t
    }
}

pub fn is_empty(a: &EpsNfa) -> bool {
    a.is_empty()
}

/// A word of `L(a) \ L(b)`, if any.
pub fn inclusion_counterexample(a: &EpsNfa, b: &EpsNfa, cap: usize) -> Result<Option<Word>, AutomataError> {
    let letters: BTreeSet<Letter> = a.alphabet.union(&b.alphabet).cloned().collect();
    let not_b = determinize_over(b, &letters, cap)?.complement();
    Ok(product(a, &not_b.to_eps_nfa()).shortest_word())
}

pub fn is_subset(a: &EpsNfa, b: &EpsNfa, cap: usize) -> Result<bool, AutomataError> {
    Ok(inclusion_counterexample(a, b, cap)?.is_none())
}

pub fn is_equivalent(a: &EpsNfa, b: &EpsNfa, cap: usize) -> Result<bool, AutomataError> {
    Ok(is_subset(a, b, cap)? && is_subset(b, a, cap)?)
}

/// Minimal DFA of `L(a)`.
pub fn minimal_dfa(a: &EpsNfa, cap: usize) -> Result<Dfa, AutomataError> {
    Ok(determinize(a, cap)?.minimize())
}
