use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use crate::graphdb::{Fact, Match};

/// A hypergraph over vertices `0..n`; hyperedges are kept sorted and
/// deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hypergraph {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<BTreeSet<usize>>,
}

impl Hypergraph {
    pub fn new(vertices: BTreeSet<usize>, edges: impl IntoIterator<Item = BTreeSet<usize>>) -> Self {
        let edges: BTreeSet<BTreeSet<usize>> = edges.into_iter().collect();
        debug_assert!(edges.iter().all(|e| !e.is_empty() && e.is_subset(&vertices)));
        Hypergraph { vertices, edges }
    }

    /// `E(v)`.
    pub fn incident(&self, v: usize) -> BTreeSet<&BTreeSet<usize>> {
        self.edges.iter().filter(|e| e.contains(&v)).collect()
    }

    /// One edge-domination step: drop an edge strictly containing another.
    pub fn edge_domination_step(&self) -> Option<(BTreeSet<usize>, BTreeSet<usize>)> {
        for big in &self.edges {
            for small in &self.edges {
                if small != big && small.is_subset(big) {
                    return Some((big.clone(), small.clone()));
                }
            }
        }
        None
    }

    pub fn remove_edge(&self, e: &BTreeSet<usize>) -> Hypergraph {
        let mut h = self.clone();
        h.edges.remove(e);
        h
    }

    pub fn remove_vertex(&self, v: usize) -> Hypergraph {
        Hypergraph {
            vertices: self.vertices.iter().copied().filter(|&x| x != v).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| e.iter().copied().filter(|&x| x != v).collect::<BTreeSet<_>>())
                .filter(|e| !e.is_empty())
                .collect(),
        }
    }

    /// Node-domination moves: `(v, v')` with `E(v) ⊆ E(v')`, one per removable
    /// `v` (the smallest dominating `v'`), skipping protected vertices.
    pub fn node_domination_moves(&self, protected: &BTreeSet<usize>) -> Vec<(usize, usize)> {
        let incident: BTreeMap<usize, BTreeSet<&BTreeSet<usize>>> =
            self.vertices.iter().map(|&v| (v, self.incident(v))).collect();
        let mut moves = Vec::new();
        for (&v, ev) in &incident {
            if protected.contains(&v) {
                continue;
            }
            if let Some((&w, _)) = incident.iter().find(|(&w, ew)| w != v && ev.is_subset(ew)) {
                moves.push((v, w));
            }
        }
        moves
    }

    /// The length of the odd path from `from` to `to`, if this hypergraph is one.
    pub fn odd_path_length(&self, from: usize, to: usize) -> Option<usize> {
        if from == to || self.edges.iter().any(|e| e.len() != 2) {
            return None;
        }
        let mut adj: BTreeMap<usize, Vec<usize>> = self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for e in &self.edges {
            let mut it = e.iter();
            let (a, b) = (*it.next().unwrap(), *it.next().unwrap());
            adj.get_mut(&a)?.push(b);
            adj.get_mut(&b)?.push(a);
        }
        let (mut prev, mut cur, mut len) = (usize::MAX, from, 0);
        if adj.get(&from)?.len() != 1 {
            return None;
        }
        while cur != to {
            let next: Vec<usize> = adj[&cur].iter().copied().filter(|&x| x != prev).collect();
            let allowed = if cur == from { 1 } else { 2 };
            if adj[&cur].len() != allowed || next.len() != 1 {
                return None;
            }
            (prev, cur) = (cur, next[0]);
            len += 1;
        }
        let covers = len + 1 == self.vertices.len() && len == self.edges.len() && adj[&to].len() == 1;
        (covers && len % 2 == 1).then_some(len)
    }
}

/// Facts as vertices, matches as hyperedges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchHypergraph {
    pub facts: Vec<Fact>,
    pub graph: Hypergraph,
}

impl MatchHypergraph {
    pub fn from_matches<'a>(facts: impl IntoIterator<Item = &'a Fact>, matches: &[Match]) -> Self {
        let facts: Vec<Fact> = facts.into_iter().cloned().collect();
        let index: BTreeMap<&Fact, usize> = facts.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let edges: Vec<BTreeSet<usize>> = matches
            .iter()
            .map(|m| m.facts.iter().map(|f| index[f]).collect())
            .collect();
        let graph = Hypergraph::new((0..facts.len()).collect(), edges);
        MatchHypergraph { facts, graph }
    }

    pub fn index_of(&self, f: &Fact) -> Option<usize> {
        self.facts.iter().position(|g| g == f)
    }

    pub fn render(&self, h: &Hypergraph) -> Vec<Vec<String>> {
        h.edges
            .iter()
            .map(|e| e.iter().map(|&i| self.facts[i].to_string()).collect())
            .collect()
    }
}

/// A single rewriting step.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Step {
    EdgeDomination {
        removed: BTreeSet<usize>,
        kept: BTreeSet<usize>,
    },
    NodeDomination {
        removed: usize,
        dominator: usize,
    },
}

impl Step {
    pub fn apply(&self, h: &Hypergraph) -> Hypergraph {
        match self {
            Step::EdgeDomination { removed, .. } => h.remove_edge(removed),
            Step::NodeDomination { removed, .. } => h.remove_vertex(*removed),
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::EdgeDomination { removed, kept } => write!(f, "edge-domination: drop {removed:?} ⊇ {kept:?}"),
            Step::NodeDomination { removed, dominator } => {
                write!(f, "node-domination: drop {removed}, dominated by {dominator}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condensation {
    /// An odd path of this length reached via `trace`.
    OddPath {
        length: usize,
        trace: Vec<Step>,
        result: Hypergraph,
    },
    /// The search space was exhausted without reaching an odd path.
    Impossible,
    /// The budget ran out and the greedy fallback failed.
    Inconclusive { explored: usize },
}

fn saturate_edges(mut h: Hypergraph, trace: &mut Vec<Step>) -> Hypergraph {
    while let Some((removed, kept)) = h.edge_domination_step() {
        h = h.remove_edge(&removed);
        trace.push(Step::EdgeDomination { removed, kept });
    }
    h
}

/// Searches for a sequence of condensation rules turning `h` into an odd
/// path between `from` and `to`. Edge domination is applied eagerly; node
/// domination is explored by memoized depth-first search over at most
/// `budget` states, then greedily.
pub fn condense(h: &Hypergraph, from: usize, to: usize, budget: usize) -> Condensation {
    let protected = BTreeSet::from([from, to]);
    let mut trace = Vec::new();
    let start = saturate_edges(h.clone(), &mut trace);
    let mut seen = HashSet::new();
    let mut explored = 0;
    match dfs(
        &start,
        from,
        to,
        &protected,
        &mut trace,
        &mut seen,
        &mut explored,
        budget,
    ) {
        Some(c) => c,
        None if explored < budget => Condensation::Impossible,
        None => greedy(start, from, to, &protected, trace).unwrap_or(Condensation::Inconclusive { explored }),
    }
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    h: &Hypergraph,
    from: usize,
    to: usize,
    protected: &BTreeSet<usize>,
    trace: &mut Vec<Step>,
    seen: &mut HashSet<Hypergraph>,
    explored: &mut usize,
    budget: usize,
) -> Option<Condensation> {
    if let Some(length) = h.odd_path_length(from, to) {
        return Some(Condensation::OddPath {
            length,
            trace: trace.clone(),
            result: h.clone(),
        });
    }
    if *explored >= budget || !seen.insert(h.clone()) {
        return None;
    }
    *explored += 1;
    for (v, w) in h.node_domination_moves(protected) {
        let mark = trace.len();
        trace.push(Step::NodeDomination {
            removed: v,
            dominator: w,
        });
        let next = saturate_edges(h.remove_vertex(v), trace);
        if let Some(c) = dfs(&next, from, to, protected, trace, seen, explored, budget) {
            return Some(c);
        }
        trace.truncate(mark);
    }
    None
}

fn greedy(
    mut h: Hypergraph,
    from: usize,
    to: usize,
    protected: &BTreeSet<usize>,
    mut trace: Vec<Step>,
) -> Option<Condensation> {
    loop {
        if let Some(length) = h.odd_path_length(from, to) {
            return Some(Condensation::OddPath {
                length,
                trace,
                result: h,
            });
        }
        let (v, w) = *h.node_domination_moves(protected).first()?;
        trace.push(Step::NodeDomination {
            removed: v,
            dominator: w,
        });
        h = saturate_edges(h.remove_vertex(v), &mut trace);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(edges: &[&[usize]]) -> Hypergraph {
        let edges: Vec<BTreeSet<usize>> = edges.iter().map(|e| e.iter().copied().collect()).collect();
        let vertices = edges.iter().flatten().copied().collect();
        Hypergraph::new(vertices, edges)
    }

    #[test]
    fn odd_path_detection() {
        assert_eq!(hg(&[&[0, 1], &[1, 2], &[2, 3]]).odd_path_length(0, 3), Some(3));
        assert_eq!(hg(&[&[0, 1], &[1, 2]]).odd_path_length(0, 2), None);
        assert_eq!(hg(&[&[0, 1]]).odd_path_length(0, 1), Some(1));
        assert_eq!(hg(&[&[0, 1], &[1, 2], &[2, 3], &[1, 3]]).odd_path_length(0, 3), None);
        assert_eq!(hg(&[&[0, 1, 2]]).odd_path_length(0, 2), None);
    }

    #[test]
    fn duplicate_edges_collapse() {
        let h = Hypergraph::new(BTreeSet::from([0, 1]), [BTreeSet::from([0, 1]), BTreeSet::from([0, 1])]);
        assert_eq!(h.edges.len(), 1);
        let h = hg(&[&[0, 1], &[0, 1, 2]]);
        let (removed, _) = h.edge_domination_step().unwrap();
        assert_eq!(removed, BTreeSet::from([0, 1, 2]));
    }

    #[test]
    fn node_domination_removes_private_vertex() {
        // 1 occurs only in {0,1,2}, alongside 2
        let h = hg(&[&[0, 1, 2], &[2, 3], &[3, 4]]);
        let moves = h.node_domination_moves(&BTreeSet::from([0, 4]));
        assert!(moves.contains(&(1, 0)) || moves.contains(&(1, 2)));
        match condense(&h, 0, 4, 1000) {
            Condensation::OddPath { length, .. } => assert_eq!(length, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn impossible_vs_inconclusive() {
        let h = hg(&[&[0, 1], &[1, 2]]);
        assert_eq!(condense(&h, 0, 2, 1000), Condensation::Impossible);
        let h = hg(&[&[0, 1, 4], &[1, 2, 5], &[2, 3, 6], &[4, 5, 6]]);
        assert!(matches!(
            condense(&h, 0, 3, 0),
            Condensation::OddPath { .. } | Condensation::Inconclusive { .. }
        ));
    }
}
