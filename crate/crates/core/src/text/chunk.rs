use serde::Serialize;

use super::tagger::{PosTag, TaggedToken};

/// A contiguous `(DT)? (JJ)* (NN|NNS|NNP)+` span of a tagged query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NounPhrase {
    /// Index of the first token in the query.
    pub start: usize,
    /// One past the last token.
    pub end: usize,
    pub tokens: Vec<String>,
    pub tags: Vec<PosTag>,
}

impl NounPhrase {
    pub fn head(&self) -> &str {
        self.tokens.last().map(String::as_str).unwrap_or("")
    }

    pub fn text(&self) -> String {
        self.tokens.join(" ")
    }

    /// Lemmas without the leading determiner.
    pub fn content_tokens(&self) -> impl Iterator<Item = &str> {
        self.tokens
            .iter()
            .zip(&self.tags)
            .filter(|(_, tag)| **tag != PosTag::DT)
            .map(|(t, _)| t.as_str())
    }

    pub fn is_proper(&self) -> bool {
        let nouns: Vec<_> = self.tags.iter().filter(|t| t.is_noun()).collect();
        let proper = nouns.iter().filter(|t| ***t == PosTag::NNP).count();
        !nouns.is_empty() && proper * 2 >= nouns.len()
    }
}

/// Greedy left-to-right chunker producing maximal, non-overlapping phrases.
pub fn chunk_noun_phrases(tagged: &[TaggedToken]) -> Vec<NounPhrase> {
    let mut phrases = Vec::new();
    let mut i = 0;
    while i < tagged.len() {
        match phrase_at(tagged, i) {
            Some(end) => {
                let span = &tagged[i..end];
                phrases.push(NounPhrase {
                    start: i,
                    end,
                    tokens: span.iter().map(|t| t.token.lemma.clone()).collect(),
                    tags: span.iter().map(|t| t.tag).collect(),
                });
                i = end;
            }
            None => i += 1,
        }
    }
    phrases
}

fn phrase_at(tagged: &[TaggedToken], start: usize) -> Option<usize> {
    let mut j = start;
    if tagged[j].tag == PosTag::DT {
        j += 1;
    }
    while j < tagged.len() && tagged[j].tag == PosTag::JJ {
        j += 1;
    }
    let noun_start = j;
    while j < tagged.len() && tagged[j].tag.is_noun() {
        j += 1;
    }
    (j > noun_start).then_some(j)
}
