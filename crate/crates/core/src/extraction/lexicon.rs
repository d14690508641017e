use std::collections::HashSet;
use std::path::Path;

use crate::text::{is_word_char, lower_aligned};

/// A set of lowercase terms matched on word boundaries, longest match first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    terms: HashSet<Vec<char>>,
    max_chars: usize,
}

impl Lexicon {
    pub fn from_terms<I, S>(terms: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut lex = Lexicon::default();
        for t in terms {
            let t = t.as_ref().split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase();
            if t.is_empty() {
                continue;
            }
            let chars: Vec<char> = t.chars().collect();
            lex.max_chars = lex.max_chars.max(chars.len());
            lex.terms.insert(chars);
        }
        lex
    }

    /// Parses a lexicon file: one term per line, `#` starts a comment.
    pub fn parse(text: &str) -> Self {
        Self::from_terms(text.lines().map(|l| l.split('#').next().unwrap_or("").trim()))
    }

    pub fn load(path: &Path) -> std::io::Result<Self> {
        Ok(Self::parse(&std::fs::read_to_string(path)?))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, term: &str) -> bool {
        self.terms.contains(&term.to_lowercase().chars().collect::<Vec<_>>())
    }

    /// Case-insensitive scan returning non-overlapping `[start, end)` char
    /// offsets. At each word start the longest entry ending on a word
    /// boundary wins; scanning resumes after the match.
    pub fn scan(&self, sentence: &str) -> Vec<(usize, usize)> {
        let chars = lower_aligned(sentence);
        let n = chars.len();
        let word_end: Vec<usize> = (0..n)
            .filter(|&i| is_word_char(chars[i]) && (i + 1 == n || !is_word_char(chars[i + 1])))
            .map(|i| i + 1)
            .collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < n {
            let at_word_start = is_word_char(chars[i]) && (i == 0 || !is_word_char(chars[i - 1]));
            if at_word_start {
                let found = word_end
                    .iter()
                    .rev()
                    .filter(|&&e| e > i && e - i <= self.max_chars)
                    .find(|&&e| self.terms.contains(&chars[i..e]));
                if let Some(&end) = found {
                    out.push((i, end));
                    i = end;
                    continue;
                }
            }
            i += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn longest_match_wins() {
        let lex = Lexicon::from_terms(["liver failure", "failure"]);
        assert_eq!(lex.scan("acute liver failure"), vec![(6, 19)]);
        assert_eq!(lex.scan("Renal FAILURE."), vec![(6, 13)]);
    }

    #[test]
    fn respects_word_boundaries() {
        let lex = Lexicon::from_terms(["rash"]);
        assert!(lex.scan("a crash occurred").is_empty());
        assert_eq!(lex.scan("rash/rash"), vec![(0, 4), (5, 9)]);
    }

    #[test]
    fn file_format() {
        let lex = Lexicon::parse("# drugs\nAspirin\n\nibuprofen  # nsaid\n");
        assert_eq!(lex.len(), 2);
        assert!(lex.contains("aspirin"));
    }
}
