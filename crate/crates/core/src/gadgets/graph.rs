use std::collections::BTreeSet;
use std::fmt;

use super::GadgetError;

/// A simple graph over string vertices. Undirected edges are stored with the
/// smaller endpoint first, which also fixes the orientation used when
/// encoding.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    pub vertices: BTreeSet<String>,
    pub edges: BTreeSet<(String, String)>,
    pub directed: bool,
}

impl Graph {
    pub fn undirected() -> Self {
        Graph::default()
    }

    pub fn directed() -> Self {
        Graph {
            directed: true,
            ..Graph::default()
        }
    }

    pub fn add_vertex(&mut self, v: &str) {
        self.vertices.insert(v.to_string());
    }

    pub fn add_edge(&mut self, u: &str, v: &str) -> Result<(), GadgetError> {
        if u == v {
            return Err(GadgetError::Graph(format!("self-loop on {u}")));
        }
        self.add_vertex(u);
        self.add_vertex(v);
        let (u, v) = if self.directed || u < v { (u, v) } else { (v, u) };
        self.edges.insert((u.to_string(), v.to_string()));
        Ok(())
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// The triangle on `1 2 3`.
    pub fn triangle() -> Self {
        let mut g = Graph::undirected();
        for (u, v) in [("1", "2"), ("2", "3"), ("1", "3")] {
            g.add_edge(u, v).unwrap();
        }
        g
    }

    /// Orients each undirected edge from its lexicographically smaller
    /// endpoint.
    pub fn oriented(&self) -> Graph {
        Graph {
            directed: true,
            ..self.clone()
        }
    }

    /// Parses `u v` (undirected), `u -> v` (directed) or a lone `u` per line;
    /// `#` starts a comment. Mixing both edge kinds is rejected.
    pub fn parse(text: &str) -> Result<Graph, GadgetError> {
        let mut g = Graph::undirected();
        let mut kind: Option<bool> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let (u, v, directed) = match tokens[..] {
                [u] => {
                    g.add_vertex(u);
                    continue;
                }
                [u, v] => (u, v, false),
                [u, "->", v] => (u, v, true),
                _ => {
                    return Err(GadgetError::Parse {
                        line,
                        msg: format!("expected 'u v' or 'u -> v', got {content:?}"),
                    })
                }
            };
            if *kind.get_or_insert(directed) != directed {
                return Err(GadgetError::Parse {
                    line,
                    msg: "mixed directed and undirected edges".into(),
                });
            }
            g.directed = directed;
            g.add_edge(u, v).map_err(|e| GadgetError::Parse {
                line,
                msg: e.to_string(),
            })?;
        }
        Ok(g)
    }

    /// Replaces every edge by a path with `ell` edges. Fresh vertices are
    /// named `u~v~i`.
    pub fn subdivide(&self, ell: usize) -> Result<Graph, GadgetError> {
        if ell.is_multiple_of(2) {
            return Err(GadgetError::EvenLength(ell));
        }
        let mut out = Graph {
            vertices: self.vertices.clone(),
            edges: BTreeSet::new(),
            directed: self.directed,
        };
        for (u, v) in &self.edges {
            let mut path = vec![u.clone()];
            path.extend((1..ell).map(|i| format!("{u}~{v}~{i}")));
            path.push(v.clone());
            for pair in path.windows(2) {
                out.add_edge(&pair[0], &pair[1])?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.directed { " -> " } else { " " };
        let mut touched = BTreeSet::new();
        for (u, v) in &self.edges {
            writeln!(f, "{u}{sep}{v}")?;
            touched.insert(u);
            touched.insert(v);
        }
        for v in self.vertices.iter().filter(|v| !touched.contains(v)) {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

pub const VERTEX_COVER_BRUTEFORCE_CAP: usize = 20;

/// Vertex cover number by subset enumeration.
pub fn vertex_cover_bruteforce(g: &Graph) -> Result<usize, GadgetError> {
    let n = g.vertices.len();
    if n > VERTEX_COVER_BRUTEFORCE_CAP {
        return Err(GadgetError::CapExceeded {
            what: "vertices for brute-force vertex cover",
            size: n,
            cap: VERTEX_COVER_BRUTEFORCE_CAP,
        });
    }
    let index: Vec<&String> = g.vertices.iter().collect();
    let pos = |v: &String| index.binary_search(&v).unwrap();
    let edges: Vec<u32> = g.edges.iter().map(|(u, v)| (1 << pos(u)) | (1 << pos(v))).collect();
    let best = (0u32..1 << n)
        .filter(|&s| edges.iter().all(|&e| s & e != 0))
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap_or(0);
    Ok(best)
}

/// Vertex cover number by branching on an uncovered edge.
pub fn vertex_cover_number(g: &Graph) -> usize {
    fn go(edges: &[(usize, usize)], removed: &mut Vec<bool>, budget: usize) -> bool {
        let Some(&(u, v)) = edges.iter().find(|(u, v)| !removed[*u] && !removed[*v]) else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        for x in [u, v] {
            removed[x] = true;
            let ok = go(edges, removed, budget - 1);
            removed[x] = false;
            if ok {
                return true;
            }
        }
        false
    }
    let index: Vec<&String> = g.vertices.iter().collect();
    let pos = |v: &String| index.binary_search(&v).unwrap();
    let edges: Vec<(usize, usize)> = g.edges.iter().map(|(u, v)| (pos(u), pos(v))).collect();
    let mut removed = vec![false; index.len()];
    (0..).find(|&k| go(&edges, &mut removed, k)).unwrap()
}
