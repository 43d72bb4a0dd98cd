use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashSet};

use crate::automata::EpsNfa;
use crate::graphdb::{Evaluator, GraphDb, GraphDbError};

use super::{Limits, Method, ResilienceAnswer, SolverError};

/// Exact resilience by best-first search over removal sets.
///
/// Sets are expanded by cost; each expansion branches on the facts of one
/// surviving walk, so the first set that falsifies the query is optimal.
pub fn resilience_exact(db: &GraphDb, a: &EpsNfa, limits: &Limits) -> Result<ResilienceAnswer, SolverError> {
    let ev = Evaluator::new(db, a);
    if ev.accepts_epsilon() {
        return Ok(ResilienceAnswer::infinite(Method::Exact));
    }
    if ev.find_walk(|_| false).is_none() {
        return Ok(ResilienceAnswer::finite(0, BTreeSet::new(), Method::Exact));
    }
    let n = db.len();
    if n > limits.exact_fact_cap || n > 64 {
        return Err(SolverError::CapExceeded {
            what: "facts for the exact solver",
            size: n,
            cap: limits.exact_fact_cap.min(64),
        });
    }
    let mults: Vec<u64> = ev.facts().iter().map(|f| db.mult(f)).collect();
    let mut heap = BinaryHeap::from([Reverse((0u64, 0u64))]);
    let mut seen: HashSet<u64> = HashSet::from([0]);
    while let Some(Reverse((cost, mask))) = heap.pop() {
        let Some(walk) = ev.find_walk(|i| mask >> i & 1 == 1) else {
            let facts = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| ev.facts()[i].clone())
                .collect();
            return Ok(ResilienceAnswer::finite(cost, facts, Method::Exact));
        };
        for i in walk {
            let next = mask | 1 << i;
            if seen.insert(next) {
                let c = cost.checked_add(mults[i]).ok_or(GraphDbError::Overflow)?;
                heap.push(Reverse((c, next)));
            }
        }
    }
    unreachable!("removing every fact falsifies an ε-free query")
}

/// Minimum total multiplicity of a hitting set, by subset enumeration.
/// Test oracle for small inputs.
pub fn min_hitting_set_bruteforce<T: Ord>(vertices: &[T], edges: &[BTreeSet<T>], weight: impl Fn(&T) -> u64) -> u64 {
    let n = vertices.len();
    assert!(n <= 24, "brute force limited to 24 vertices");
    let masks: Vec<u32> = edges
        .iter()
        .map(|e| {
            vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| e.contains(v))
                .fold(0u32, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let mut best = u64::MAX;
    for s in 0u32..(1 << n) {
        if masks.iter().all(|m| m & s != 0) {
            let w: u64 = (0..n).filter(|i| s >> i & 1 == 1).map(|i| weight(&vertices[i])).sum();
            best = best.min(w);
        }
    }
    best
}
