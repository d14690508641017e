use serde::{Deserialize, Serialize};

/// One sentence of an abstract. `char_span` is a `[start, end)` range of
/// char offsets into the abstract.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub pmid: String,
    pub index: usize,
    pub text: String,
    pub char_span: (usize, usize),
}

/// Abbreviations that never end a sentence.
pub const ABBREVIATIONS: [&str; 6] = ["e.g.", "i.e.", "vs.", "Dr.", "Fig.", "et al."];

fn ends_with_abbreviation(chars: &[char], end: usize) -> bool {
    ABBREVIATIONS.iter().any(|abbr| {
        let a: Vec<char> = abbr.chars().collect();
        if a.len() > end {
            return false;
        }
        let start = end - a.len();
        chars[start..end].iter().zip(&a).all(|(x, y)| x.to_lowercase().eq(y.to_lowercase()))
            && (start == 0 || !chars[start - 1].is_alphanumeric())
    })
}

/// Returns `[start, end)` char ranges of the sentences in `text`.
///
/// A sentence ends after `.`, `!` or `?` when the terminator is followed by
/// whitespace and then an uppercase letter or digit, unless the text up to
/// the terminator ends with an abbreviation from [`ABBREVIATIONS`].
/// Leading and trailing whitespace belongs to no sentence.
pub fn sentence_bounds(text: &str) -> Vec<(usize, usize)> {
    let chars: Vec<char> = text.chars().collect();
    let n = chars.len();
    let mut out = Vec::new();
    let mut start = match chars.iter().position(|c| !c.is_whitespace()) {
        Some(s) => s,
        None => return out,
    };
    let mut i = start;
    while i < n {
        if matches!(chars[i], '.' | '!' | '?') && !(chars[i] == '.' && ends_with_abbreviation(&chars, i + 1)) {
            let mut j = i + 1;
            while j < n && chars[j].is_whitespace() {
                j += 1;
            }
            if j > i + 1 && j < n && (chars[j].is_uppercase() || chars[j].is_ascii_digit()) {
                out.push((start, i + 1));
                start = j;
                i = j;
                continue;
            }
        }
        i += 1;
    }
    let mut end = n;
    while end > start && chars[end - 1].is_whitespace() {
        end -= 1;
    }
    out.push((start, end));
    out
}

pub fn split_sentences(pmid: &str, abstract_text: &str) -> Vec<Sentence> {
    sentence_bounds(abstract_text)
        .into_iter()
        .enumerate()
        .map(|(index, (s, e))| Sentence {
            pmid: pmid.to_string(),
            index,
            text: crate::text::char_slice(abstract_text, s, e).to_string(),
            char_span: (s, e),
        })
        .collect()
}
