#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rpq_resilience::gadgets::Graph;
use rpq_resilience::graphdb::{Fact, GraphDb};
use rpq_resilience::lang::{FiniteLanguage, Letter, Regex, Word};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub struct DbShape {
    pub nodes: usize,
    pub max_facts: usize,
    pub max_mult: u64,
    /// Words of the query planted as walks.
    pub plants: usize,
}

/// A random database over `letters`, with some words of `words` planted as
/// walks so that matches are common.
pub fn random_db(rng: &mut StdRng, letters: &[Letter], words: &[Word], shape: &DbShape) -> GraphDb {
    let mut db = GraphDb::new();
    let node = |rng: &mut StdRng| format!("v{}", rng.gen_range(0..shape.nodes));
    let push = |db: &mut GraphDb, f: Fact, rng: &mut StdRng| {
        if db.len() < shape.max_facts && !db.contains(&f) {
            db.add(f, rng.gen_range(1..=shape.max_mult)).unwrap();
        }
    };
    for _ in 0..rng.gen_range(0..=shape.plants) {
        let Some(w) = words.choose(rng) else { break };
        let mut at = node(rng);
        for l in w.letters() {
            let next = node(rng);
            push(&mut db, Fact::new(&at, l.clone(), &next), rng);
            at = next;
        }
    }
    let noise = rng.gen_range(0..=shape.max_facts);
    for _ in 0..noise {
        let f = Fact::new(&node(rng), letters.choose(rng).unwrap().clone(), &node(rng));
        push(&mut db, f, rng);
    }
    db
}

pub fn letters(s: &str) -> Vec<Letter> {
    s.chars().map(Letter::from).collect()
}

pub fn random_regex(rng: &mut StdRng, letters: &[Letter], depth: usize) -> Regex {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..10) {
            0 => Regex::Epsilon,
            _ => Regex::Letter(letters.choose(rng).unwrap().clone()),
        };
    }
    match rng.gen_range(0..3) {
        0 => Regex::Concat(vec![
            random_regex(rng, letters, depth - 1),
            random_regex(rng, letters, depth - 1),
        ]),
        1 => Regex::Union(vec![
            random_regex(rng, letters, depth - 1),
            random_regex(rng, letters, depth - 1),
        ]),
        _ => Regex::star(random_regex(rng, letters, depth - 1)),
    }
}

pub fn random_finite_language(
    rng: &mut StdRng,
    letters: &[Letter],
    max_words: usize,
    max_len: usize,
) -> FiniteLanguage {
    let n = rng.gen_range(1..=max_words);
    FiniteLanguage::from_words((0..n).map(|_| {
        let len = rng.gen_range(1..=max_len);
        Word::from_letters((0..len).map(|_| letters.choose(rng).unwrap().clone()).collect())
    }))
}

pub fn all_words(letters: &[Letter], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                letters
                    .iter()
                    .map(move |l| w.concat(&Word::from_letters(vec![l.clone()])))
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// A random simple undirected graph.
pub fn random_graph(rng: &mut StdRng, max_vertices: usize, max_edges: usize) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let mut g = Graph::undirected();
    for v in 0..n {
        g.add_vertex(&v.to_string());
    }
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let m = rng.gen_range(0..=max_edges.min(pairs.len()));
    for &(u, v) in &pairs[..m] {
        g.add_edge(&u.to_string(), &v.to_string()).unwrap();
    }
    g
}

/// All subsets of `items` as sets.
pub fn subsets<'a>(items: &[&'a str]) -> Vec<BTreeSet<&'a str>> {
    (0u32..1 << items.len())
        .map(|m| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, v)| *v)
                .collect()
        })
        .collect()
}

pub fn words_of(s: &str) -> Word {
    Word::from_letters(letters(s))
}
