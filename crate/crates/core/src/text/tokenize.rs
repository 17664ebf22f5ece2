use serde::Serialize;

/// A surface token of a query or document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub text: String,
    pub lemma: String,
    pub index: usize,
}

/// Splits `raw` on whitespace and punctuation.
///
/// Punctuation is dropped, except that a word made of single letters joined by
/// periods ("M.B.A", "U.S.") is kept whole, without a trailing period.
pub fn tokenize(raw: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    for chunk in raw.split_whitespace() {
        let trimmed = chunk.trim_matches(|c: char| !c.is_alphanumeric() && c != '.');
        let trimmed = trimmed.trim_start_matches('.');
        if let Some(abbrev) = as_abbreviation(trimmed) {
            push(&mut tokens, abbrev);
            continue;
        }
        for piece in chunk.split(|c: char| !c.is_alphanumeric()) {
            if !piece.is_empty() {
                push(&mut tokens, piece);
            }
        }
    }
    tokens
}

/// Lowercased token texts of `raw`.
pub fn lemmas(raw: &str) -> Vec<String> {
    tokenize(raw).into_iter().map(|t| t.lemma).collect()
}

fn push(tokens: &mut Vec<Token>, text: &str) {
    let index = tokens.len();
    tokens.push(Token {
        text: text.to_string(),
        lemma: text.to_lowercase(),
        index,
    });
}

/// Returns the abbreviation without its trailing period when `word` has the
/// shape `L.L(.L)*` with single alphabetic letters.
fn as_abbreviation(word: &str) -> Option<&str> {
    let word = word.trim_end_matches('.');
    let parts: Vec<&str> = word.split('.').collect();
    if parts.len() < 2 {
        return None;
    }
    let single_letters = parts.iter().all(|p| {
        let mut chars = p.chars();
        matches!((chars.next(), chars.next()), (Some(c), None) if c.is_alphabetic())
    });
    single_letters.then_some(word)
}

pub(crate) fn is_abbreviation(word: &str) -> bool {
    word.contains('.') && as_abbreviation(word).is_some()
}
