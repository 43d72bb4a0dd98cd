//! Words, finite languages and regular expressions.
//!
//! Letters are interned as shared strings: a letter is either a single
//! character (`a`) or a bracketed name (`[a1]`) when written in text.

mod regex;

pub use regex::{parse_regex, Regex, RegexParseError};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LangError {
    #[error("no word of the language has a repeated letter")]
    NoRepeatedLetter,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A symbol of the alphabet.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(Arc<str>);

impl Letter {
    pub fn new(name: &str) -> Self {
        Letter(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// Whether the letter prints as a bare character in regex/word syntax.
    fn is_simple(&self) -> bool {
        let mut chars = self.0.chars();
        matches!((chars.next(), chars.next()), (Some(c), None) if !is_reserved(c))
    }
}

pub(crate) fn is_reserved(c: char) -> bool {
    matches!(c, '(' | ')' | '|' | '*' | '~' | '[' | ']' | '∅' | '0' | '#') || c.is_whitespace()
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_simple() {
            f.write_str(&self.0)
        } else {
            write!(f, "[{}]", self.0)
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<char> for Letter {
    fn from(c: char) -> Self {
        let mut buf = [0u8; 4];
        Letter::new(c.encode_utf8(&mut buf))
    }
}

/// A finite sequence of letters; the empty word is ε.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<&Letter> {
        self.0.first()
    }

    pub fn last(&self) -> Option<&Letter> {
        self.0.last()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn alphabet(&self) -> BTreeSet<Letter> {
        self.0.iter().cloned().collect()
    }

    pub fn mirror(&self) -> Word {
        mirror_word(self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("~");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Word {
    type Err = String;

    /// Parses the letter syntax shared with regexes: bare characters,
    /// `[name]` for multi-character letters, `~` for the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "~" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            if c.is_whitespace() {
                continue;
            }
            if c == '[' {
                let mut name = String::new();
                loop {
                    match chars.next() {
                        Some(']') => break,
                        Some(c) => name.push(c),
                        None => return Err(format!("unterminated letter name in {s:?}")),
                    }
                }
                if name.is_empty() {
                    return Err("empty letter name".into());
                }
                letters.push(Letter::new(&name));
            } else if is_reserved(c) {
                return Err(format!("reserved character {c:?} in word {s:?}"));
            } else {
                letters.push(Letter::from(c));
            }
        }
        Ok(Word(letters))
    }
}

/// Shorthand used throughout the tests: `w("abc")`.
pub fn w(s: &str) -> Word {
    s.parse().expect("valid word literal")
}

/// A finite set of words.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FiniteLanguage {
    words: BTreeSet<Word>,
}

impl FiniteLanguage {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_words<I: IntoIterator<Item = Word>>(words: I) -> Self {
        FiniteLanguage {
            words: words.into_iter().collect(),
        }
    }

    /// `lang("ab|bc")`: words separated by `|`.
    pub fn parse_alternatives(s: &str) -> Result<Self, String> {
        s.split('|')
            .map(str::parse)
            .collect::<Result<BTreeSet<_>, _>>()
            .map(|words| FiniteLanguage { words })
    }

    pub fn insert(&mut self, word: Word) -> bool {
        self.words.insert(word)
    }

    pub fn contains(&self, word: &Word) -> bool {
        self.words.contains(word)
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> + '_ {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains_epsilon(&self) -> bool {
        self.words.contains(&Word::empty())
    }

    pub fn max_word_len(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn alphabet(&self) -> BTreeSet<Letter> {
        self.words.iter().flat_map(|w| w.0.iter().cloned()).collect()
    }

    pub fn is_reduced(&self) -> bool {
        reduce_finite(self) == *self
    }

    /// Newline-separated word list; `~` is the empty word, `#` starts a comment.
    pub fn parse_word_list(text: &str) -> Result<Self, LangError> {
        let mut words = BTreeSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let word = line.parse().map_err(|msg| LangError::Parse { line: i + 1, msg })?;
            words.insert(word);
        }
        Ok(FiniteLanguage { words })
    }

    pub fn to_word_list(&self) -> String {
        let mut out = String::new();
        for word in &self.words {
            out.push_str(&word.to_string());
            out.push('\n');
        }
        out
    }

    /// The language as a union regex (`∅` when empty).
    pub fn to_regex(&self) -> Regex {
        let alts: Vec<Regex> = self.words.iter().map(Regex::word).collect();
        match alts.len() {
            0 => Regex::Empty,
            1 => alts.into_iter().next().unwrap(),
            _ => Regex::Union(alts),
        }
    }
}

impl fmt::Display for FiniteLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.words.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self.words.iter().map(Word::to_string).collect();
        f.write_str(&parts.join("|"))
    }
}

impl fmt::Debug for FiniteLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromIterator<Word> for FiniteLanguage {
    fn from_iter<T: IntoIterator<Item = Word>>(iter: T) -> Self {
        Self::from_words(iter)
    }
}

/// Shorthand: `lang("ab|bc")`.
pub fn lang(s: &str) -> FiniteLanguage {
    FiniteLanguage::parse_alternatives(s).expect("valid language literal")
}

pub fn is_infix(alpha: &Word, beta: &Word) -> bool {
    let (a, b) = (alpha.letters(), beta.letters());
    if a.len() > b.len() {
        return false;
    }
    a.is_empty() || b.windows(a.len()).any(|win| win == a)
}

/// Infix with a non-empty surrounding context.
pub fn is_strict_infix(alpha: &Word, beta: &Word) -> bool {
    alpha.len() < beta.len() && is_infix(alpha, beta)
}

/// Keeps the words of `l` having no strict infix in `l`.
pub fn reduce_finite(l: &FiniteLanguage) -> FiniteLanguage {
    l.words
        .iter()
        .filter(|beta| !l.words.iter().any(|alpha| is_strict_infix(alpha, beta)))
        .cloned()
        .collect()
}

pub fn mirror_word(w: &Word) -> Word {
    Word(w.0.iter().rev().cloned().collect())
}

pub fn mirror_finite(l: &FiniteLanguage) -> FiniteLanguage {
    l.words.iter().map(mirror_word).collect()
}

/// A decomposition `β a γ a δ` of a word, stored as the two positions of `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepeatedLetter {
    pub letter: Letter,
    pub first: usize,
    pub second: usize,
}

impl RepeatedLetter {
    pub fn beta(&self, w: &Word) -> Word {
        w.slice(0, self.first)
    }

    pub fn gamma(&self, w: &Word) -> Word {
        w.slice(self.first + 1, self.second)
    }

    pub fn delta(&self, w: &Word) -> Word {
        w.slice(self.second + 1, w.len())
    }

    pub fn gap(&self) -> usize {
        self.second - self.first - 1
    }
}

fn repeated_decompositions(w: &Word) -> impl Iterator<Item = RepeatedLetter> + '_ {
    let n = w.len();
    (0..n).flat_map(move |i| {
        ((i + 1)..n)
            .filter(move |&j| w.0[i] == w.0[j])
            .map(move |j| RepeatedLetter {
                letter: w.0[i].clone(),
                first: i,
                second: j,
            })
    })
}

/// First repeated-letter decomposition of `w` (leftmost first occurrence,
/// then nearest second occurrence).
pub fn has_repeated_letter(w: &Word) -> Option<RepeatedLetter> {
    repeated_decompositions(w).next()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalGapWord {
    pub word: Word,
    pub decomposition: RepeatedLetter,
}

/// Words whose repeated-letter gap is maximal over `l`, and among those the
/// longest ones. Ordered lexicographically; each carries its leftmost
/// maximal-gap decomposition.
pub fn maximal_gap_words(l: &FiniteLanguage) -> Result<Vec<MaximalGapWord>, LangError> {
    let best: Vec<(Word, RepeatedLetter)> = l
        .words
        .iter()
        .filter_map(|w| {
            repeated_decompositions(w)
                .max_by(|x, y| x.gap().cmp(&y.gap()).then(y.first.cmp(&x.first)))
                .map(|d| (w.clone(), d))
        })
        .collect();
    let max_gap = best
        .iter()
        .map(|(_, d)| d.gap())
        .max()
        .ok_or(LangError::NoRepeatedLetter)?;
    let max_len = best
        .iter()
        .filter(|(_, d)| d.gap() == max_gap)
        .map(|(w, _)| w.len())
        .max()
        .unwrap_or(0);
    Ok(best
        .into_iter()
        .filter(|(w, d)| d.gap() == max_gap && w.len() == max_len)
        .map(|(word, decomposition)| MaximalGapWord { word, decomposition })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn infix_examples() {
        assert!(is_infix(&w("ab"), &w("xaby")));
        assert!(is_strict_infix(&w("ab"), &w("xaby")));
        assert!(is_infix(&w("ab"), &w("ab")));
        assert!(!is_strict_infix(&w("ab"), &w("ab")));
        assert!(!is_infix(&w("ba"), &w("ab")));
        assert!(is_infix(&Word::empty(), &w("ab")));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_finite(&lang("abbc|bb")), lang("bb"));
        assert_eq!(reduce_finite(&lang("a|aa")), lang("a"));
        assert_eq!(reduce_finite(&lang("aa")), lang("aa"));
        // ε is an infix of everything
        assert_eq!(reduce_finite(&lang("~|ab")), lang("~"));
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(mirror_word(&w("abc")), w("cba"));
        assert_eq!(mirror_word(&Word::empty()), Word::empty());
        assert_eq!(mirror_finite(&lang("ab|cd")), lang("ba|dc"));
    }

    #[test]
    fn repeated_letter_examples() {
        let d = has_repeated_letter(&w("aa")).unwrap();
        assert_eq!((d.first, d.second), (0, 1));
        let word = w("abca");
        let d = has_repeated_letter(&word).unwrap();
        assert_eq!(d.letter, Letter::from('a'));
        assert_eq!(d.gamma(&word), w("bc"));
        assert!(has_repeated_letter(&w("abc")).is_none());
    }

    #[test]
    fn maximal_gap_examples() {
        let r = maximal_gap_words(&lang("aa")).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].word, w("aa"));
        assert_eq!(r[0].decomposition.beta(&r[0].word), Word::empty());
        assert_eq!(r[0].decomposition.gamma(&r[0].word), Word::empty());

        assert_eq!(maximal_gap_words(&lang("abc|de")), Err(LangError::NoRepeatedLetter));
    }

    #[test]
    fn multi_char_letters_roundtrip() {
        let word: Word = "[a1]b[a2]".parse().unwrap();
        assert_eq!(word.len(), 3);
        assert_eq!(word.to_string(), "[a1]b[a2]");
        assert_eq!(word.to_string().parse::<Word>().unwrap(), word);
    }

    #[test]
    fn word_list_format() {
        let l = FiniteLanguage::parse_word_list("ab\n# comment\n~\n\nbc # trailing\n").unwrap();
        assert_eq!(l, lang("ab|~|bc"));
        assert_eq!(FiniteLanguage::parse_word_list(&l.to_word_list()).unwrap(), l);
        assert!(matches!(
            FiniteLanguage::parse_word_list("ab\na(b\n"),
            Err(LangError::Parse { line: 2, .. })
        ));
    }

    fn arb_lang() -> impl Strategy<Value = FiniteLanguage> {
        let word = proptest::collection::vec(prop_oneof![Just('a'), Just('b'), Just('c')], 0..5)
            .prop_map(|cs| Word::from_letters(cs.into_iter().map(Letter::from).collect()));
        proptest::collection::vec(word, 0..6).prop_map(FiniteLanguage::from_words)
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(l in arb_lang()) {
            let r = reduce_finite(&l);
            prop_assert_eq!(reduce_finite(&r), r.clone());
            prop_assert!(r.words().all(|w| l.contains(w)));
        }

        #[test]
        fn mirror_is_involution_and_keeps_reducedness(l in arb_lang()) {
            prop_assert_eq!(mirror_finite(&mirror_finite(&l)), l.clone());
            prop_assert_eq!(l.is_reduced(), mirror_finite(&l).is_reduced());
        }

        #[test]
        fn strict_infix_is_shorter_infix(a in "[ab]{0,3}", b in "[ab]{0,5}") {
            let (a, b) = (w(&a), w(&b));
            prop_assert_eq!(is_strict_infix(&a, &b), is_infix(&a, &b) && a.len() < b.len());
        }
    }
}
