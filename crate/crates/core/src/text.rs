//! Character-offset helpers. All public offsets in this crate count Unicode
//! scalar values, not bytes.

/// Converts a byte offset (on a char boundary) to a char offset.
pub fn char_offset(s: &str, byte: usize) -> usize {
    s[..byte].chars().count()
}

/// Slices `s` by char offsets. Out-of-range offsets are clamped.
pub fn char_slice(s: &str, start: usize, end: usize) -> &str {
    let mut indices = s.char_indices().map(|(i, _)| i).chain(std::iter::once(s.len()));
    let b_start = indices.nth(start).unwrap_or(s.len());
    let b_end = if end > start { indices.nth(end - start - 1).unwrap_or(s.len()) } else { b_start };
    &s[b_start..b_end]
}

pub fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
}

/// Lowercases char by char, keeping a one-to-one char mapping so offsets in
/// the result are valid offsets into the input.
pub fn lower_aligned(s: &str) -> Vec<char> {
    s.chars().map(|c| c.to_lowercase().next().unwrap_or(c)).collect()
}

/// Finds non-overlapping, case-insensitive whole-word occurrences of
/// `needle` in `haystack`; returns char offset pairs.
pub fn find_word_occurrences(haystack: &str, needle: &str) -> Vec<(usize, usize)> {
    let hay = lower_aligned(haystack);
    let pat = lower_aligned(needle.trim());
    let mut out = Vec::new();
    if pat.is_empty() || pat.len() > hay.len() {
        return out;
    }
    let mut i = 0;
    while i + pat.len() <= hay.len() {
        let end = i + pat.len();
        let left_ok = i == 0 || !is_word_char(hay[i - 1]) || !is_word_char(pat[0]);
        let right_ok = end == hay.len() || !is_word_char(hay[end]) || !is_word_char(pat[pat.len() - 1]);
        if left_ok && right_ok && hay[i..end] == pat[..] {
            out.push((i, end));
            i = end;
        } else {
            i += 1;
        }
    }
    out
}
