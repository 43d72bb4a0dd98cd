use std::collections::{BTreeMap, BTreeSet};

use crate::automata::{eps_nfa_to_ro, is_local_language, EpsNfa};
use crate::flow::{min_cut, Capacity, FlowNetwork};
use crate::graphdb::GraphDb;

use super::{Limits, Method, ResilienceAnswer, SolverError};

/// Resilience for a local language via the product network of `D` and the
/// read-once automaton. `promise_local` skips the locality check.
pub fn resilience_local(
    db: &GraphDb,
    a: &EpsNfa,
    promise_local: bool,
    limits: &Limits,
) -> Result<ResilienceAnswer, SolverError> {
    if !promise_local && !is_local_language(a, limits.state_cap)? {
        return Err(SolverError::Refused(
            "language is not local; use the bcl, submod or exact solver".into(),
        ));
    }
    if a.accepts_epsilon() {
        return Ok(ResilienceAnswer::infinite(Method::Local));
    }
    let ro = eps_nfa_to_ro(a);
    let nodes: BTreeMap<&str, usize> = db.adom().into_iter().enumerate().map(|(i, v)| (v, i)).collect();
    let k = ro.num_states();
    let mut net = FlowNetwork::new();
    let base = net.num_vertices();
    for _ in 0..nodes.len() * k {
        net.add_vertex();
    }
    let vid = |v: usize, s: usize| base + v * k + s;
    let mut letter_edge = BTreeMap::new();
    for t in ro.transitions() {
        match &t.label {
            Some(l) => {
                letter_edge.insert(l.clone(), (t.from, t.to));
            }
            None => {
                for v in 0..nodes.len() {
                    net.add_edge(vid(v, t.from), vid(v, t.to), Capacity::Infinite);
                }
            }
        }
    }
    for v in 0..nodes.len() {
        for &s in ro.initial() {
            net.add_edge(net.source(), vid(v, s), Capacity::Infinite);
        }
        for &s in ro.finals() {
            net.add_edge(vid(v, s), net.target(), Capacity::Infinite);
        }
    }
    let mut edge_fact = BTreeMap::new();
    for (f, m) in db.entries() {
        if let Some(&(s, s2)) = letter_edge.get(&f.label) {
            let e = net.add_edge(
                vid(nodes[f.tail.as_str()], s),
                vid(nodes[f.head.as_str()], s2),
                Capacity::Finite(m),
            );
            edge_fact.insert(e, f);
        }
    }
    let cut = min_cut(&net)?;
    let Capacity::Finite(value) = cut.value else {
        unreachable!("every source-target path crosses a fact edge")
    };
    let facts: BTreeSet<_> = cut.edges.iter().map(|e| edge_fact[e].clone()).collect();
    Ok(ResilienceAnswer::finite(value, facts, Method::Local))
}
