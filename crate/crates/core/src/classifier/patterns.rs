use std::collections::BTreeMap;

use serde::Serialize;

use crate::lang::{lang, mirror_finite, FiniteLanguage, Letter, Word};

/// `L = {a₁…aₙ, aₙ₋₁aₙ₊₁}` with pairwise distinct letters, or its mirror.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubmodPattern {
    pub n: usize,
    /// `a₁ … aₙ₊₁` of the (possibly mirrored) language.
    #[serde(serialize_with = "serialize_letters")]
    pub letters: Vec<Letter>,
    /// Whether `L` is the mirror of the pattern.
    pub mirrored: bool,
}

fn serialize_letters<S: serde::Serializer>(v: &[Letter], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(Letter::name))
}

impl SubmodPattern {
    pub fn word(&self) -> Word {
        Word::from_letters(self.letters[..self.n].to_vec())
    }

    pub fn extra(&self) -> &Letter {
        &self.letters[self.n]
    }
}

fn direct_pattern(l: &FiniteLanguage) -> Option<SubmodPattern> {
    if l.len() != 2 {
        return None;
    }
    let words: Vec<&Word> = l.words().collect();
    for (long, short) in [(words[0], words[1]), (words[1], words[0])] {
        let n = long.len();
        if n < 2 || short.len() != 2 {
            continue;
        }
        let mut letters = long.letters().to_vec();
        letters.push(short.letters()[1].clone());
        let distinct = letters.iter().collect::<std::collections::BTreeSet<_>>().len() == n + 1;
        if distinct && short.letters()[0] == long.letters()[n - 2] {
            return Some(SubmodPattern {
                n,
                letters,
                mirrored: false,
            });
        }
    }
    None
}

pub fn matches_submod_pattern(l: &FiniteLanguage) -> Option<SubmodPattern> {
    direct_pattern(l).or_else(|| direct_pattern(&mirror_finite(l)).map(|p| SubmodPattern { mirrored: true, ..p }))
}

/// Languages known to be hard, matched up to renaming and mirror.
pub fn hard_catalog() -> Vec<(&'static str, FiniteLanguage)> {
    ["ab|bc|ca", "abcd|be|ef", "abcd|bef", "abc|be|ef"]
        .into_iter()
        .map(|s| (s, lang(s)))
        .collect()
}

/// A letter bijection `σ` with `σ(l) = target`, if one exists.
pub fn isomorphism(l: &FiniteLanguage, target: &FiniteLanguage) -> Option<BTreeMap<Letter, Letter>> {
    if l.len() != target.len() || l.alphabet().len() != target.alphabet().len() {
        return None;
    }
    let mut ls: Vec<&Word> = l.words().collect();
    let ts: Vec<&Word> = target.words().collect();
    let mut lens_l: Vec<usize> = ls.iter().map(|w| w.len()).collect();
    let mut lens_t: Vec<usize> = ts.iter().map(|w| w.len()).collect();
    lens_l.sort();
    lens_t.sort();
    if lens_l != lens_t {
        return None;
    }
    ls.sort_by_key(|w| std::cmp::Reverse(w.len()));
    let mut used = vec![false; ts.len()];
    let mut map = BTreeMap::new();
    let mut inverse = BTreeMap::new();
    if assign(&ls, &ts, &mut used, &mut map, &mut inverse) {
        Some(map)
    } else {
        None
    }
}

fn assign(
    ls: &[&Word],
    ts: &[&Word],
    used: &mut [bool],
    map: &mut BTreeMap<Letter, Letter>,
    inverse: &mut BTreeMap<Letter, Letter>,
) -> bool {
    let Some((w, rest)) = ls.split_first() else {
        return true;
    };
    for i in 0..ts.len() {
        if used[i] || ts[i].len() != w.len() {
            continue;
        }
        let (saved_map, saved_inv) = (map.clone(), inverse.clone());
        let ok = w
            .letters()
            .iter()
            .zip(ts[i].letters())
            .all(|(a, b)| match (map.get(a), inverse.get(b)) {
                (None, None) => {
                    map.insert(a.clone(), b.clone());
                    inverse.insert(b.clone(), a.clone());
                    true
                }
                (Some(x), Some(y)) => x == b && y == a,
                _ => false,
            });
        if ok {
            used[i] = true;
            if assign(rest, ts, used, map, inverse) {
                return true;
            }
            used[i] = false;
        }
        *map = saved_map;
        *inverse = saved_inv;
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogHit {
    pub name: &'static str,
    pub mirrored: bool,
    #[serde(serialize_with = "serialize_renaming")]
    pub renaming: BTreeMap<Letter, Letter>,
}

fn serialize_renaming<S: serde::Serializer>(m: &BTreeMap<Letter, Letter>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|(k, v)| (k.name(), v.name())))
}

pub fn catalog_match(l: &FiniteLanguage) -> Option<CatalogHit> {
    let mirror = mirror_finite(l);
    for (name, target) in hard_catalog() {
        for (candidate, mirrored) in [(l, false), (&mirror, true)] {
            if let Some(renaming) = isomorphism(candidate, &target) {
                return Some(CatalogHit {
                    name,
                    mirrored,
                    renaming,
                });
            }
        }
    }
    None
}
