//! Pre-gadgets, their completion, graph encodings and a checker for the
//! odd-path condition on condensed hypergraphs of matches.

mod graph;
mod hypergraph;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automata::EpsNfa;
use crate::graphdb::{enumerate_matches, Fact, GraphDb, GraphDbError};
use crate::lang::{FiniteLanguage, Letter};
use crate::solvers::{resilience_exact, Limits, SolverError};

pub use graph::{vertex_cover_bruteforce, vertex_cover_number, Graph, VERTEX_COVER_BRUTEFORCE_CAP};
pub use hypergraph::{condense, Condensation, Hypergraph, MatchHypergraph, Step};

pub const DEFAULT_CONDENSE_BUDGET: usize = 100_000;

#[derive(Debug, Error)]
pub enum GadgetError {
    #[error("malformed pre-gadget: {0}")]
    Malformed(String),
    #[error("language is not reduced")]
    NotReduced,
    #[error("subdivision length must be odd, got {0}")]
    EvenLength(usize),
    #[error("{what}: {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid graph: {0}")]
    Graph(String),
    #[error("gadget file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("not a gadget for this language: {0}")]
    NotAGadget(String),
    #[error(transparent)]
    Db(#[from] GraphDbError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

impl GadgetError {
    pub fn is_resource(&self) -> bool {
        match self {
            GadgetError::CapExceeded { .. } => true,
            GadgetError::Solver(e) => e.is_resource(),
            _ => false,
        }
    }
}

/// A database with two distinguished elements that never occur as heads,
/// and the letter used to attach them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreGadget {
    pub db: GraphDb,
    pub t_in: String,
    pub t_out: String,
    pub label: Letter,
}

impl PreGadget {
    pub fn new(db: GraphDb, t_in: &str, t_out: &str, label: Letter) -> Result<Self, GadgetError> {
        let g = PreGadget {
            db: db.to_set_semantics(),
            t_in: t_in.into(),
            t_out: t_out.into(),
            label,
        };
        g.check()?;
        Ok(g)
    }

    pub fn check(&self) -> Result<(), GadgetError> {
        if self.t_in == self.t_out {
            return Err(GadgetError::Malformed("t_in and t_out coincide".into()));
        }
        for t in [&self.t_in, &self.t_out] {
            if let Some(f) = self.db.facts().find(|f| &f.head == t) {
                return Err(GadgetError::Malformed(format!("{t} is the head of {f}")));
            }
        }
        Ok(())
    }
}

/// The completed pre-gadget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    pub db: GraphDb,
    pub f_in: Fact,
    pub f_out: Fact,
}

fn fresh(adom: &BTreeSet<&str>, base: &str) -> String {
    let mut name = base.to_string();
    while adom.contains(name.as_str()) {
        name.push('\'');
    }
    name
}

/// Adds `s_in -a-> t_in` and `s_out -a-> t_out` with fresh `s_in`, `s_out`.
pub fn completion(g: &PreGadget) -> Result<Completion, GadgetError> {
    g.check()?;
    let adom = g.db.adom();
    let s_in = fresh(&adom, "s_in");
    let s_out = fresh(&adom, "s_out");
    let f_in = Fact::new(&s_in, g.label.clone(), &g.t_in);
    let f_out = Fact::new(&s_out, g.label.clone(), &g.t_out);
    let mut db = g.db.clone();
    db.add(f_in.clone(), 1)?;
    db.add(f_out.clone(), 1)?;
    Ok(Completion { db, f_in, f_out })
}

pub fn match_hypergraph(db: &GraphDb, l: &FiniteLanguage) -> MatchHypergraph {
    MatchHypergraph::from_matches(db.facts(), &enumerate_matches(db, l))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Valid,
    NoOddPath,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct GadgetReport {
    pub valid: bool,
    pub outcome: Outcome,
    pub odd_path_length: Option<usize>,
    /// Hyperedges before any rule, rendered as facts.
    pub initial_edges: Vec<Vec<String>>,
    /// Hyperedges of the final odd path.
    pub final_edges: Vec<Vec<String>>,
    pub trace: Vec<TraceStep>,
    pub reason: Option<String>,
    #[serde(skip)]
    pub hypergraph: MatchHypergraph,
    #[serde(skip)]
    pub steps: Vec<Step>,
}

/// A rule application with the affected facts spelled out.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum TraceStep {
    EdgeDomination { removed: Vec<String>, kept: Vec<String> },
    NodeDomination { removed: String, dominator: String },
}

impl GadgetReport {
    pub fn summary(&self) -> String {
        match (self.outcome, self.odd_path_length) {
            (Outcome::Valid, Some(l)) => format!("VALID, odd path length {l}"),
            (Outcome::Inconclusive, _) => "INCONCLUSIVE, search budget exhausted".into(),
            _ => format!("INVALID, {}", self.reason.as_deref().unwrap_or("no odd path")),
        }
    }
}

pub fn validate_gadget(g: &PreGadget, l: &FiniteLanguage) -> Result<GadgetReport, GadgetError> {
    validate_gadget_with(g, l, DEFAULT_CONDENSE_BUDGET)
}

pub fn validate_gadget_with(g: &PreGadget, l: &FiniteLanguage, budget: usize) -> Result<GadgetReport, GadgetError> {
    if !l.is_reduced() {
        return Err(GadgetError::NotReduced);
    }
    let c = completion(g)?;
    let mh = match_hypergraph(&c.db, l);
    let from = mh.index_of(&c.f_in).expect("completion fact");
    let to = mh.index_of(&c.f_out).expect("completion fact");
    let name = |i: usize| mh.facts[i].to_string();
    let names = |e: &BTreeSet<usize>| e.iter().map(|&i| name(i)).collect::<Vec<_>>();
    let initial_edges = mh.render(&mh.graph);
    let mut report = GadgetReport {
        valid: false,
        outcome: Outcome::NoOddPath,
        odd_path_length: None,
        initial_edges,
        final_edges: Vec::new(),
        trace: Vec::new(),
        reason: None,
        hypergraph: mh.clone(),
        steps: Vec::new(),
    };
    match condense(&mh.graph, from, to, budget) {
        Condensation::OddPath { length, trace, result } => {
            report.valid = true;
            report.outcome = Outcome::Valid;
            report.odd_path_length = Some(length);
            report.final_edges = mh.render(&result);
            report.trace = trace
                .iter()
                .map(|s| match s {
                    Step::EdgeDomination { removed, kept } => TraceStep::EdgeDomination {
                        removed: names(removed),
                        kept: names(kept),
                    },
                    Step::NodeDomination { removed, dominator } => TraceStep::NodeDomination {
                        removed: name(*removed),
                        dominator: name(*dominator),
                    },
                })
                .collect();
            report.steps = trace;
        }
        Condensation::Impossible => {
            report.reason = Some(if mh.graph.edges.is_empty() {
                "no matches in the completion".into()
            } else {
                "no condensation is an odd path from F_in to F_out".into()
            });
        }
        Condensation::Inconclusive { explored } => {
            report.outcome = Outcome::Inconclusive;
            report.reason = Some(format!("budget exhausted after {explored} states"));
        }
    }
    Ok(report)
}

/// An encoding together with the origin of its facts.
#[derive(Debug, Clone)]
pub struct Encoding {
    pub db: GraphDb,
    pub vertex_facts: BTreeMap<String, Fact>,
    /// Facts of the gadget copy for each edge, in edge order.
    pub copies: Vec<BTreeSet<Fact>>,
}

/// Encodes a directed graph: `s@u -a-> t@u` per vertex and a copy of the
/// pre-gadget per edge `(u, v)` with `t_in ↦ t@u`, `t_out ↦ t@v` and other
/// elements renamed to `e<i>@<name>`. Undirected graphs are oriented first.
pub fn encode_graph_detailed(g: &Graph, gadget: &PreGadget) -> Result<Encoding, GadgetError> {
    gadget.check()?;
    let mut db = GraphDb::new();
    let mut vertex_facts = BTreeMap::new();
    for u in &g.vertices {
        let f = Fact::new(&format!("s@{u}"), gadget.label.clone(), &format!("t@{u}"));
        db.add(f.clone(), 1)?;
        vertex_facts.insert(u.clone(), f);
    }
    let mut copies = Vec::new();
    for (i, (u, v)) in g.edges.iter().enumerate() {
        let rename = |x: &str| {
            if x == gadget.t_in {
                format!("t@{u}")
            } else if x == gadget.t_out {
                format!("t@{v}")
            } else {
                format!("e{i}@{x}")
            }
        };
        let mut copy = BTreeSet::new();
        for f in gadget.db.facts() {
            let f = Fact::new(&rename(&f.tail), f.label.clone(), &rename(&f.head));
            db.add(f.clone(), 1)?;
            copy.insert(f);
        }
        copies.push(copy);
    }
    Ok(Encoding {
        db,
        vertex_facts,
        copies,
    })
}

pub fn encode_graph(g: &Graph, gadget: &PreGadget) -> Result<GraphDb, GadgetError> {
    Ok(encode_graph_detailed(g, gadget)?.db)
}

#[derive(Debug, Clone, Serialize)]
pub struct Roundtrip {
    pub holds: bool,
    pub resilience: u64,
    pub vertex_cover: usize,
    pub edges: usize,
    pub odd_path_length: usize,
    pub expected: u64,
}

/// Validates the gadget, encodes `g` and compares exact resilience with
/// `vc(g) + m(ℓ-1)/2`.
pub fn hardness_roundtrip(
    l: &FiniteLanguage,
    gadget: &PreGadget,
    g: &Graph,
    limits: &Limits,
) -> Result<Roundtrip, GadgetError> {
    let report = validate_gadget(gadget, l)?;
    let Some(ell) = report.odd_path_length else {
        return Err(GadgetError::NotAGadget(report.summary()));
    };
    let db = encode_graph(&g.oriented(), gadget)?;
    let a: EpsNfa = crate::automata::finite_to_epsnfa(l);
    let answer = resilience_exact(&db, &a, limits)?;
    let resilience = answer.value.finite().expect("ε-free language");
    let vertex_cover = vertex_cover_bruteforce(g)?;
    let edges = g.num_edges();
    let expected = (vertex_cover + edges * (ell - 1) / 2) as u64;
    Ok(Roundtrip {
        holds: resilience == expected,
        resilience,
        vertex_cover,
        edges,
        odd_path_length: ell,
        expected,
    })
}

/// The pre-gadget for `aa`, also used for `aaa`.
pub fn aa_pregadget() -> PreGadget {
    let mut db = GraphDb::new();
    for (t, h) in [("t_in", "t1"), ("t1", "t2"), ("t2", "t3"), ("t_out", "t2")] {
        db.add_fact(t, 'a', h);
    }
    PreGadget::new(db, "t_in", "t_out", Letter::from('a')).unwrap()
}

pub struct BuiltinGadget {
    pub name: &'static str,
    pub languages: &'static [&'static str],
    pub gadget: PreGadget,
}

pub fn builtin_gadgets() -> Vec<BuiltinGadget> {
    vec![BuiltinGadget {
        name: "aa",
        languages: &["aa", "aaa"],
        gadget: aa_pregadget(),
    }]
}

/// Looks up a built-in gadget by language (`aa`, `aaa`) or gadget name.
pub fn lookup(key: &str) -> Option<PreGadget> {
    let key = key.trim();
    builtin_gadgets()
        .into_iter()
        .find(|b| b.name == key || b.languages.contains(&key))
        .map(|b| b.gadget)
}

/// On-disk gadget description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetFile {
    pub facts: Vec<(String, String, String)>,
    pub t_in: String,
    pub t_out: String,
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_odd_length: Option<usize>,
}

impl GadgetFile {
    pub fn parse(text: &str) -> Result<GadgetFile, GadgetError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_pregadget(&self) -> Result<PreGadget, GadgetError> {
        let mut db = GraphDb::new();
        for (t, l, h) in &self.facts {
            db.add(Fact::new(t, Letter::new(l), h), 1)?;
        }
        PreGadget::new(db, &self.t_in, &self.t_out, Letter::new(&self.label))
    }

    pub fn from_pregadget(g: &PreGadget, expected_odd_length: Option<usize>) -> GadgetFile {
        GadgetFile {
            facts: g
                .db
                .facts()
                .map(|f| (f.tail.clone(), f.label.name().to_string(), f.head.clone()))
                .collect(),
            t_in: g.t_in.clone(),
            t_out: g.t_out.clone(),
            label: g.label.name().to_string(),
            expected_odd_length,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::lang;

    #[test]
    fn completion_adds_two_facts() {
        let g = aa_pregadget();
        let c = completion(&g).unwrap();
        assert_eq!(g.db.len(), 4);
        assert_eq!(c.db.len(), 6);
        assert_eq!(c.f_in, Fact::new("s_in", 'a', "t_in"));
    }

    #[test]
    fn malformed_pregadgets() {
        let mut db = GraphDb::new();
        db.add_fact("x", 'a', "t_in");
        assert!(PreGadget::new(db.clone(), "t_in", "t_out", 'a'.into()).is_err());
        assert!(PreGadget::new(GraphDb::new(), "t", "t", 'a'.into()).is_err());
    }

    #[test]
    fn aa_gadget_is_a_path_of_five() {
        let r = validate_gadget(&aa_pregadget(), &lang("aa")).unwrap();
        assert_eq!(r.initial_edges.len(), 5);
        assert!(r.initial_edges.iter().all(|e| e.len() == 2));
        assert!(r.steps.is_empty());
        assert_eq!(r.odd_path_length, Some(5));
        assert_eq!(r.summary(), "VALID, odd path length 5");
    }

    #[test]
    fn aa_gadget_for_aaa() {
        let r = validate_gadget(&aa_pregadget(), &lang("aaa")).unwrap();
        assert!(r.valid);
        assert_eq!(r.odd_path_length, Some(3));
    }

    #[test]
    fn no_matches_is_invalid() {
        let mut db = GraphDb::new();
        db.add_fact("t_in", 'b', "x");
        let g = PreGadget::new(db, "t_in", "t_out", 'a'.into()).unwrap();
        let r = validate_gadget(&g, &lang("aa")).unwrap();
        assert!(!r.valid);
        assert_eq!(r.outcome, Outcome::NoOddPath);
        assert!(matches!(
            validate_gadget(&g, &lang("a|aa")),
            Err(GadgetError::NotReduced)
        ));
    }

    #[test]
    fn encoding_sizes() {
        let g = aa_pregadget();
        assert_eq!(encode_graph(&Graph::triangle(), &g).unwrap().len(), 15);
        assert!(encode_graph(&Graph::undirected(), &g).unwrap().is_empty());
        let mut e = Graph::directed();
        e.add_edge("u", "v").unwrap();
        let db = encode_graph(&e, &g).unwrap();
        assert_eq!(db.len(), 6);
        assert_eq!(match_hypergraph(&db, &lang("aa")).graph.edges.len(), 5);
    }

    #[test]
    fn roundtrips() {
        let l = lang("aa");
        let g = aa_pregadget();
        let limits = Limits {
            exact_fact_cap: 64,
            ..Limits::default()
        };
        let r = hardness_roundtrip(&l, &g, &Graph::triangle(), &limits).unwrap();
        assert!(r.holds);
        assert_eq!(r.resilience, 8);
        let mut e = Graph::undirected();
        e.add_edge("u", "v").unwrap();
        assert_eq!(hardness_roundtrip(&l, &g, &e, &limits).unwrap().resilience, 3);
        assert_eq!(
            hardness_roundtrip(&l, &g, &Graph::undirected(), &limits)
                .unwrap()
                .resilience,
            0
        );
    }

    #[test]
    fn builtins_and_files() {
        assert_eq!(lookup("aa"), Some(aa_pregadget()));
        assert_eq!(lookup("aaa"), Some(aa_pregadget()));
        assert_eq!(lookup("axb|cxd"), None);
        let file = GadgetFile::from_pregadget(&aa_pregadget(), Some(5));
        let back = GadgetFile::parse(&file.to_json()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_pregadget().unwrap(), aa_pregadget());
        let text = r#"{"facts": [["t_in","a","x"]], "t_in": "t_in", "t_out": "t_out", "label": "a"}"#;
        assert_eq!(GadgetFile::parse(text).unwrap().expected_odd_length, None);
    }
}
