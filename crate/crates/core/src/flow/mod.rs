//! Max-flow / min-cut with finite and infinite capacities (Dinic).

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowError {
    #[error("capacity sum overflows 64 bits")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Capacity {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Capacity::Finite(c) => write!(f, "{c}"),
            Capacity::Infinite => f.write_str("INF"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub capacity: Capacity,
}

/// A directed network; parallel edges allowed, edge ids are insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    num_vertices: usize,
    source: usize,
    target: usize,
    edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    pub value: Capacity,
    /// Edge ids of a minimum cut; empty when the value is infinite.
    pub edges: Vec<usize>,
}

impl FlowNetwork {
    /// A network with vertices `0` (source) and `1` (target).
    pub fn new() -> Self {
        FlowNetwork {
            num_vertices: 2,
            source: 0,
            target: 1,
            edges: Vec::new(),
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn add_vertex(&mut self) -> usize {
        self.num_vertices += 1;
        self.num_vertices - 1
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn add_edge(&mut self, from: usize, to: usize, capacity: Capacity) -> usize {
        assert!(from < self.num_vertices && to < self.num_vertices);
        self.edges.push(Edge { from, to, capacity });
        self.edges.len() - 1
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edge list dump, one `from to capacity` line per edge.
    pub fn dump(&self) -> String {
        let mut out = format!("source {} target {}\n", self.source, self.target);
        for e in &self.edges {
            out.push_str(&format!("{} {} {}\n", e.from, e.to, e.capacity));
        }
        out
    }

    fn reaches_target(&self, usable: impl Fn(usize) -> bool) -> bool {
        let mut adj = vec![Vec::new(); self.num_vertices];
        for (i, e) in self.edges.iter().enumerate() {
            if usable(i) {
                adj[e.from].push(e.to);
            }
        }
        let mut seen = vec![false; self.num_vertices];
        let mut stack = vec![self.source];
        seen[self.source] = true;
        while let Some(v) = stack.pop() {
            if v == self.target {
                return true;
            }
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    }
}

impl Default for FlowNetwork {
    fn default() -> Self {
        Self::new()
    }
}

/// Whether removing `cut` disconnects the source from the target.
pub fn check_cut(n: &FlowNetwork, cut: &[usize]) -> bool {
    !n.reaches_target(|i| !cut.contains(&i))
}

struct Dinic {
    // residual arcs: (to, residual capacity); arc i^1 is the reverse of arc i
    to: Vec<usize>,
    cap: Vec<u64>,
    adj: Vec<Vec<usize>>,
    level: Vec<usize>,
    next: Vec<usize>,
}

impl Dinic {
    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = usize::MAX);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &a in &self.adj[v] {
                if self.cap[a] > 0 && self.level[self.to[a]] == usize::MAX {
                    self.level[self.to[a]] = self.level[v] + 1;
                    q.push_back(self.to[a]);
                }
            }
        }
        self.level[t] != usize::MAX
    }

    fn dfs(&mut self, v: usize, t: usize, pushed: u64) -> u64 {
        if v == t {
            return pushed;
        }
        while self.next[v] < self.adj[v].len() {
            let a = self.adj[v][self.next[v]];
            let w = self.to[a];
            if self.cap[a] > 0 && self.level[w] == self.level[v] + 1 {
                let d = self.dfs(w, t, pushed.min(self.cap[a]));
                if d > 0 {
                    self.cap[a] -= d;
                    self.cap[a ^ 1] += d;
                    return d;
                }
            }
            self.next[v] += 1;
        }
        0
    }
}

/// Maximum flow value and a minimum cut read off the residual graph.
pub fn min_cut(n: &FlowNetwork) -> Result<CutResult, FlowError> {
    if n.reaches_target(|i| n.edges[i].capacity == Capacity::Infinite) {
        return Ok(CutResult {
            value: Capacity::Infinite,
            edges: Vec::new(),
        });
    }
    let finite_sum = n
        .edges
        .iter()
        .filter_map(|e| match e.capacity {
            Capacity::Finite(c) => Some(c),
            Capacity::Infinite => None,
        })
        .try_fold(0u64, u64::checked_add)
        .ok_or(FlowError::Overflow)?;
    let big = finite_sum.checked_add(1).ok_or(FlowError::Overflow)?;
    let mut d = Dinic {
        to: Vec::with_capacity(2 * n.edges.len()),
        cap: Vec::with_capacity(2 * n.edges.len()),
        adj: vec![Vec::new(); n.num_vertices],
        level: vec![0; n.num_vertices],
        next: vec![0; n.num_vertices],
    };
    for e in &n.edges {
        let c = match e.capacity {
            Capacity::Finite(c) => c,
            Capacity::Infinite => big,
        };
        d.adj[e.from].push(d.to.len());
        d.to.push(e.to);
        d.cap.push(c);
        d.adj[e.to].push(d.to.len());
        d.to.push(e.from);
        d.cap.push(0);
    }
    let mut flow = 0u64;
    while d.bfs(n.source, n.target) {
        d.next.iter_mut().for_each(|x| *x = 0);
        loop {
            let f = d.dfs(n.source, n.target, u64::MAX);
            if f == 0 {
                break;
            }
            flow += f;
        }
    }
    // after the last BFS, `level` marks the residual source side
    let cut: Vec<usize> = n
        .edges
        .iter()
        .enumerate()
        .filter(|(_, e)| d.level[e.from] != usize::MAX && d.level[e.to] == usize::MAX)
        .map(|(i, _)| i)
        .collect();
    debug_assert!(cut.iter().all(|&i| n.edges[i].capacity != Capacity::Infinite));
    Ok(CutResult {
        value: Capacity::Finite(flow),
        edges: cut,
    })
}
