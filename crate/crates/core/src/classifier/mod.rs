//! Complexity classification of resilience for regular languages.

mod chain;
mod four_legged;
mod patterns;

pub use chain::{
    bcl_bipartition, chain_violation, endpoint_graph, is_bcl, is_chain_language, two_coloring, BclFailure,
    ChainViolation, EndpointGraph,
};
pub use four_legged::{four_legged_regular, is_four_legged_finite};
pub use patterns::{catalog_match, hard_catalog, isomorphism, matches_submod_pattern, CatalogHit, SubmodPattern};

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::automata::{
    aperiodicity, finite_to_epsnfa, is_letter_cartesian_finite, is_local_language, letter_cartesian_violation,
    neutral_letters, reduce_regular, regex_to_epsnfa, AutomataError, CartesianViolation, EpsNfa, DEFAULT_STATE_CAP,
};
use crate::lang::{maximal_gap_words, reduce_finite, FiniteLanguage, Letter, Regex, Word};
use crate::solvers::Method;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifierError {
    #[error("language {0} is not reduced")]
    NotReduced(String),
    #[error(transparent)]
    Automata(#[from] AutomataError),
}

/// A language given as a regex, an explicit word list, or an automaton.
#[derive(Debug, Clone)]
pub enum LanguageSpec {
    Regex(Regex),
    Finite(FiniteLanguage),
    Automaton(EpsNfa),
}

impl LanguageSpec {
    pub fn to_epsnfa(&self) -> EpsNfa {
        match self {
            LanguageSpec::Regex(r) => regex_to_epsnfa(r),
            LanguageSpec::Finite(l) => finite_to_epsnfa(l),
            LanguageSpec::Automaton(a) => a.clone(),
        }
    }

    /// The explicit word list when the language is finite.
    pub fn as_finite(&self) -> Option<FiniteLanguage> {
        match self {
            LanguageSpec::Finite(l) => Some(l.clone()),
            _ => self.to_epsnfa().finite_words(),
        }
    }
}

impl fmt::Display for LanguageSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LanguageSpec::Regex(r) => write!(f, "{r}"),
            LanguageSpec::Finite(l) => write!(f, "{l}"),
            LanguageSpec::Automaton(a) => write!(f, "<automaton with {} states>", a.num_states()),
        }
    }
}

impl From<Regex> for LanguageSpec {
    fn from(r: Regex) -> Self {
        LanguageSpec::Regex(r)
    }
}

impl From<FiniteLanguage> for LanguageSpec {
    fn from(l: FiniteLanguage) -> Self {
        LanguageSpec::Finite(l)
    }
}

impl From<EpsNfa> for LanguageSpec {
    fn from(a: EpsNfa) -> Self {
        LanguageSpec::Automaton(a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PTIME")]
    Ptime,
    #[serde(rename = "NP-hard")]
    NpHard,
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ptime => "PTIME",
            Status::NpHard => "NP-hard",
            Status::Unknown => "UNKNOWN",
        })
    }
}

/// Evidence attached to a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    RepeatedLetter {
        #[serde(serialize_with = "crate::serde_display")]
        word: Word,
        #[serde(serialize_with = "crate::serde_display")]
        letter: Letter,
        #[serde(serialize_with = "crate::serde_display")]
        beta: Word,
        #[serde(serialize_with = "crate::serde_display")]
        gamma: Word,
        #[serde(serialize_with = "crate::serde_display")]
        delta: Word,
    },
    FourLegged(CartesianViolation),
    NonStarFree {
        #[serde(serialize_with = "crate::serde_display")]
        sigma: Word,
        period: usize,
        legs: Option<CartesianViolation>,
    },
    NeutralLetter {
        #[serde(serialize_with = "crate::serde_display")]
        letter: Letter,
        legs: Option<CartesianViolation>,
    },
    Catalog(CatalogHit),
    Bipartition {
        #[serde(serialize_with = "serialize_letters")]
        source_side: Vec<Letter>,
        #[serde(serialize_with = "serialize_letters")]
        target_side: Vec<Letter>,
    },
    Submod(SubmodPattern),
}

fn serialize_letters<S: serde::Serializer>(v: &[Letter], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(Letter::name))
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |v: &[Letter]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        match self {
            Witness::RepeatedLetter {
                word,
                letter,
                beta,
                gamma,
                delta,
            } => write!(
                f,
                "word {word} = β{letter}γ{letter}δ with β={beta}, γ={gamma}, δ={delta}"
            ),
            Witness::FourLegged(v) => write!(f, "four-legged: {v}"),
            Witness::NonStarFree { sigma, period, legs } => {
                write!(f, "powers of {sigma} cycle with period {period}")?;
                if let Some(v) = legs {
                    write!(f, "; four-legged: {v}")?;
                }
                Ok(())
            }
            Witness::NeutralLetter { letter, legs } => {
                write!(f, "neutral letter {letter}")?;
                if let Some(v) = legs {
                    write!(f, "; reduced language four-legged: {v}")?;
                }
                Ok(())
            }
            Witness::Catalog(hit) => {
                let renaming: Vec<String> = hit.renaming.iter().map(|(a, b)| format!("{a}→{b}")).collect();
                write!(f, "isomorphic to {}", hit.name)?;
                if hit.mirrored {
                    f.write_str(" after mirroring")?;
                }
                write!(f, " via {}", renaming.join(" "))
            }
            Witness::Bipartition {
                source_side,
                target_side,
            } => write!(
                f,
                "endpoint sides {{{}}} / {{{}}}",
                names(source_side),
                names(target_side)
            ),
            Witness::Submod(p) => {
                write!(f, "α={} extra={} n={}", p.word(), p.extra(), p.n)?;
                if p.mirrored {
                    f.write_str(" (mirrored)")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub method: Option<Method>,
    /// Name of the deciding criterion.
    pub reason: String,
    pub witness: Option<Witness>,
    /// The reduced language, when finite.
    #[serde(serialize_with = "crate::serde_display_opt")]
    pub reduced: Option<FiniteLanguage>,
    pub notes: Vec<String>,
}

impl Verdict {
    fn new(status: Status, method: Option<Method>, reason: &str, witness: Option<Witness>) -> Verdict {
        Verdict {
            status,
            method,
            reason: reason.to_string(),
            witness,
            reduced: None,
            notes: Vec::new(),
        }
    }

    fn ptime(method: Method, witness: Option<Witness>) -> Verdict {
        Verdict::new(Status::Ptime, Some(method), &method.to_string(), witness)
    }

    fn hard(reason: &str, witness: Witness) -> Verdict {
        Verdict::new(Status::NpHard, None, reason, Some(witness))
    }

    fn unknown(reason: &str) -> Verdict {
        Verdict::new(Status::Unknown, None, reason, None)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            Status::Unknown => f.write_str("UNKNOWN")?,
            s => write!(f, "{s} ({})", self.reason)?,
        }
        if let Some(w) = &self.witness {
            write!(f, "\n  witness: {w}")?;
        }
        if let Some(r) = &self.reduced {
            write!(f, "\n  reduced: {r}")?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub state_cap: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            state_cap: DEFAULT_STATE_CAP,
        }
    }
}

pub fn classify(spec: &LanguageSpec) -> Verdict {
    classify_with(spec, ClassifyOptions::default())
}

pub fn classify_with(spec: &LanguageSpec, opts: ClassifyOptions) -> Verdict {
    if let Some(l) = spec.as_finite() {
        return classify_finite(&l);
    }
    match classify_infinite(&spec.to_epsnfa(), opts) {
        Ok(v) => v,
        Err(e) => {
            let mut v = Verdict::unknown("resource limit");
            v.notes.push(e.to_string());
            v
        }
    }
}

/// The finite-language pipeline, applied to `red(L)`.
pub fn classify_finite(l: &FiniteLanguage) -> Verdict {
    let red = reduce_finite(l);
    let mut v = classify_reduced_finite(&red);
    v.reduced = Some(red);
    v
}

fn classify_reduced_finite(l: &FiniteLanguage) -> Verdict {
    if is_letter_cartesian_finite(l) {
        return Verdict::ptime(Method::Local, None);
    }
    if let Ok(words) = maximal_gap_words(l) {
        let m = &words[0];
        let d = &m.decomposition;
        return Verdict::hard(
            "repeated letter",
            Witness::RepeatedLetter {
                word: m.word.clone(),
                letter: d.letter.clone(),
                beta: d.beta(&m.word),
                gamma: d.gamma(&m.word),
                delta: d.delta(&m.word),
            },
        );
    }
    if let Ok(Some(legs)) = is_four_legged_finite(l) {
        return Verdict::hard("four-legged", Witness::FourLegged(legs));
    }
    match bcl_bipartition(l) {
        Ok(sides) => {
            let (src, tgt): (Vec<_>, Vec<_>) = sides.into_iter().partition(|(_, s)| *s);
            Verdict::ptime(
                Method::Bcl,
                Some(Witness::Bipartition {
                    source_side: src.into_iter().map(|(l, _)| l).collect(),
                    target_side: tgt.into_iter().map(|(l, _)| l).collect(),
                }),
            )
        }
        Err(failure) => {
            if let Some(p) = matches_submod_pattern(l) {
                return Verdict::ptime(Method::Submod, Some(Witness::Submod(p)));
            }
            if let Some(hit) = catalog_match(l) {
                return Verdict::hard("known hard language", Witness::Catalog(hit));
            }
            let mut v = Verdict::unknown("unclassified");
            if let Some(c) = letter_cartesian_violation(l) {
                v.notes.push(format!("not local: {c}"));
            }
            if let BclFailure::OddCycle(_) = failure {
                v.notes.push(format!(
                    "chain language with {failure}; conjectured NP-hard, proven only for the triangle"
                ));
            }
            v
        }
    }
}

fn classify_infinite(a: &EpsNfa, opts: ClassifyOptions) -> Result<Verdict, AutomataError> {
    let cap = opts.state_cap;
    let red = reduce_regular(a, cap)?.to_eps_nfa();
    if let Some(l) = red.finite_words() {
        let mut v = classify_reduced_finite(&l);
        v.reduced = Some(l);
        return Ok(v);
    }
    if is_local_language(&red, cap)? {
        return Ok(Verdict::ptime(Method::Local, None));
    }
    let ap = aperiodicity(&red, cap)?;
    if !ap.aperiodic {
        return Ok(Verdict::hard(
            "not star-free",
            Witness::NonStarFree {
                sigma: ap.witness.unwrap(),
                period: ap.period.unwrap(),
                legs: four_legged_regular(&red, cap)?,
            },
        ));
    }
    if let Some(e) = neutral_letters(a, cap)?.into_iter().next() {
        return Ok(Verdict::hard(
            "neutral letter",
            Witness::NeutralLetter {
                letter: e,
                legs: four_legged_regular(&red, cap)?,
            },
        ));
    }
    if let Some(legs) = four_legged_regular(&red, cap)? {
        return Ok(Verdict::hard("four-legged", Witness::FourLegged(legs)));
    }
    Ok(Verdict::unknown("unclassified"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse_regex;

    fn classify_str(s: &str) -> Verdict {
        classify(&LanguageSpec::Regex(parse_regex(s).unwrap()))
    }

    #[test]
    fn spec_examples() {
        let v = classify_str("ax*b");
        assert_eq!((v.status, v.method), (Status::Ptime, Some(Method::Local)));
        assert_eq!(v.to_string(), "PTIME (local)");
        let v = classify_str("axb|cxd");
        assert_eq!(v.status, Status::NpHard);
        assert!(matches!(v.witness, Some(Witness::FourLegged(_))));
        assert_eq!(classify_str("abcd|be").status, Status::Unknown);
        assert!(classify_str("aa").to_string().starts_with("NP-hard (repeated letter)"));
    }

    #[test]
    fn conjecture_note() {
        let v = classify_str("ab|bc|cd|de|ea");
        assert_eq!(v.status, Status::Unknown);
        assert!(v.notes.iter().any(|n| n.contains("conjectured")));
    }

    #[test]
    fn neutral_branch() {
        let v = classify_str("e*be*ce*|e*de*fe*");
        assert_eq!(v.status, Status::NpHard);
        assert_eq!(v.reason, "neutral letter");
        let Some(Witness::NeutralLetter { legs: Some(legs), .. }) = v.witness else {
            panic!("{v:?}")
        };
        assert!(legs.legs_nonempty());
    }

    #[test]
    fn infinite_with_finite_reduction() {
        let v = classify_str("a|ab*");
        assert_eq!(v.status, Status::Ptime);
        assert_eq!(v.reduced.unwrap().to_string(), "a");
    }
}
