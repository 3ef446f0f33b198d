//! Rule-based sentence segmentation.
//!
//! Boundaries are terminator runs (`.`, `!`, `?`, `…`) optionally
//! followed by closing quotes/brackets, then whitespace, then a
//! character that can start a sentence (uppercase, digit, or opening
//! quote/bracket). A period directly followed by an alphanumeric
//! character is internal (decimals, dotted tokens), and a known
//! abbreviation before the terminator suppresses the boundary.

/// Byte range of one sentence within the source text, trimmed of
/// surrounding whitespace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SentenceSpan {
    pub start: usize,
    pub end: usize,
}

impl SentenceSpan {
    pub fn slice<'a>(&self, text: &'a str) -> &'a str {
        &text[self.start..self.end]
    }
}

/// Abbreviations that never end a sentence, compared lowercased with
/// trailing dots stripped. Single letters are deliberately absent so
/// initials split; `p`/`pp` (page numbers) are the exception.
const ABBREVIATIONS: &[&str] = &[
    "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "rev", "gen", "rep", "sen", "gov",
    "capt", "sgt", "col", "lt", "maj", "etc", "e.g", "i.e", "vs", "cf", "al", "inc", "ltd",
    "corp", "co", "dept", "univ", "assn", "bros", "ph.d", "m.d", "b.a", "m.a", "b.sc",
    "m.sc", "d.c", "u.s", "u.k", "a.m", "p.m", "no", "nos", "vol", "fig", "eq", "sec",
    "approx", "est", "p", "pp", "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep",
    "sept", "oct", "nov", "dec", "mon", "tue", "wed", "thu", "fri", "sat", "sun",
];

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?' | '…')
}

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | '”' | '’' | ')' | ']' | '}' | '»')
}

fn is_opener(c: char) -> bool {
    matches!(c, '"' | '\'' | '“' | '‘' | '(' | '[' | '{' | '«')
}

fn starts_sentence(c: char) -> bool {
    c.is_uppercase() || c.is_numeric() || is_opener(c)
}

/// Splits `text` into ordered, non-overlapping sentence spans covering
/// all non-whitespace content. Text without any terminator yields a
/// single span; empty or whitespace-only text yields none.
pub fn segment_sentences(text: &str) -> Vec<SentenceSpan> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let n = chars.len();
    let mut spans = Vec::new();
    let mut i = 0;

    while i < n {
        while i < n && chars[i].1.is_whitespace() {
            i += 1;
        }
        if i >= n {
            break;
        }
        let start = chars[i].0;
        let mut j = i;
        let mut span_done = false;

        while j < n {
            let c = chars[j].1;
            if !is_terminator(c) {
                j += 1;
                continue;
            }
            // A period glued to an alphanumeric is internal: 3.30,
            // e.g., www.example.com.
            if c == '.' && j + 1 < n && chars[j + 1].1.is_alphanumeric() {
                j += 1;
                continue;
            }
            let run_start = j;
            while j < n && is_terminator(chars[j].1) {
                j += 1;
            }
            while j < n && is_closer(chars[j].1) {
                j += 1;
            }
            let end = if j < n { chars[j].0 } else { text.len() };

            if j >= n {
                spans.push(SentenceSpan { start, end });
                span_done = true;
                i = j;
                break;
            }
            if !chars[j].1.is_whitespace() {
                continue;
            }
            let mut next = j;
            while next < n && chars[next].1.is_whitespace() {
                next += 1;
            }
            let boundary_ok = next < n && starts_sentence(chars[next].1);
            if boundary_ok && !abbreviation_before(&chars, run_start) {
                spans.push(SentenceSpan { start, end });
                span_done = true;
                i = next;
                break;
            }
        }

        if !span_done {
            // No boundary found: the remainder is one span, trimmed.
            let mut last = n;
            while last > i && chars[last - 1].1.is_whitespace() {
                last -= 1;
            }
            let end = if last < n { chars[last].0 } else { text.len() };
            spans.push(SentenceSpan { start, end });
            break;
        }
    }
    spans
}

/// The sentence texts themselves.
pub fn sentence_slices(text: &str) -> Vec<&str> {
    segment_sentences(text)
        .iter()
        .map(|s| s.slice(text))
        .collect()
}

pub fn sentence_count(text: &str) -> usize {
    segment_sentences(text).len()
}

/// True when the dotted token ending at `run_start` is a known
/// abbreviation.
fn abbreviation_before(chars: &[(usize, char)], run_start: usize) -> bool {
    if run_start == 0 || chars[run_start].1 != '.' {
        return false;
    }
    let mut k = run_start;
    while k > 0 {
        let c = chars[k - 1].1;
        if c.is_alphanumeric() || c == '.' {
            k -= 1;
        } else {
            break;
        }
    }
    if k == run_start {
        return false;
    }
    let token: String = chars[k..run_start]
        .iter()
        .map(|&(_, c)| c)
        .collect::<String>()
        .trim_matches('.')
        .to_lowercase();
    ABBREVIATIONS.contains(&token.as_str())
}
