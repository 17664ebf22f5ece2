//! Query analysis: tokenizing, tagging, noun-phrase chunking, stop-word
//! removal, anchor detection and location classification.

mod chunk;
mod location;
mod stopwords;
mod tagger;
mod tokenize;

use serde::Serialize;

pub use chunk::{chunk_noun_phrases, NounPhrase};
pub use location::{classify_location, LocationTriggers, DEFAULT_TRIGGERS};
pub use stopwords::{remove_stop_words, StopList};
pub use tagger::{guess_tag, pos_tag, PosTag, TagLexicon, TaggedToken};
pub use tokenize::{lemmas, tokenize, Token};

/// Structured view of a raw query.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyzedQuery {
    pub raw: String,
    pub tokens: Vec<TaggedToken>,
    pub noun_phrases: Vec<NounPhrase>,
    /// Non-stop-word lemmas in query order, first occurrence only.
    pub content_terms: Vec<String>,
    /// Content terms that refined queries must keep verbatim.
    pub anchor_terms: Vec<String>,
    pub is_location_query: bool,
    pub location_terms: Vec<String>,
}

impl AnalyzedQuery {
    pub fn is_anchor(&self, term: &str) -> bool {
        self.anchor_terms.iter().any(|a| a == term)
    }

    /// Tag of the first token whose lemma is `term`.
    pub fn tag_of(&self, term: &str) -> Option<PosTag> {
        self.tokens.iter().find(|t| t.lemma() == term).map(|t| t.tag)
    }

    /// The noun phrase whose head token is the first occurrence of `term`.
    pub fn phrase_headed_by(&self, term: &str) -> Option<&NounPhrase> {
        let idx = self.tokens.iter().position(|t| t.lemma() == term)?;
        self.noun_phrases.iter().find(|p| p.end == idx + 1)
    }

    /// Noun phrases reduced to their content terms; empty phrases dropped.
    pub fn content_phrases(&self) -> Vec<Vec<String>> {
        self.noun_phrases
            .iter()
            .map(|p| {
                p.content_tokens()
                    .filter(|t| self.content_terms.iter().any(|c| c == t))
                    .map(str::to_string)
                    .collect::<Vec<_>>()
            })
            .filter(|p| !p.is_empty())
            .collect()
    }
}

/// Immutable query analyzer.
#[derive(Debug, Clone)]
pub struct Analyzer {
    lexicon: TagLexicon,
    stoplist: StopList,
    triggers: LocationTriggers,
    /// Token sequences of known named entities, longest first.
    entities: Vec<Vec<String>>,
}

impl Analyzer {
    pub fn new(lexicon: TagLexicon, stoplist: StopList) -> Self {
        Self {
            lexicon,
            stoplist,
            triggers: LocationTriggers::default(),
            entities: Vec::new(),
        }
    }

    pub fn with_location_triggers(mut self, triggers: LocationTriggers) -> Self {
        self.triggers = triggers;
        self
    }

    /// Registers entity names (e.g. ontology individual labels) whose
    /// occurrences become anchor terms.
    pub fn with_entities<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.entities
            .extend(names.into_iter().map(|n| lemmas(n.as_ref())).filter(|l| !l.is_empty()));
        self.entities
            .sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        self.entities.dedup();
        self
    }

    pub fn stoplist(&self) -> &StopList {
        &self.stoplist
    }

    pub fn tag_lexicon(&self) -> &TagLexicon {
        &self.lexicon
    }

    pub fn analyze(&self, raw: &str) -> AnalyzedQuery {
        let tokens = pos_tag(&tokenize(raw), &self.lexicon);
        let noun_phrases = chunk_noun_phrases(&tokens);
        let mut content_terms: Vec<String> = Vec::new();
        for t in remove_stop_words(&tokens, &self.stoplist) {
            if !content_terms.contains(&t.token.lemma) {
                content_terms.push(t.token.lemma);
            }
        }
        let (is_location_query, location_terms) = classify_location(&tokens, &noun_phrases, &self.triggers);

        let mut anchored = vec![false; tokens.len()];
        for p in noun_phrases.iter().filter(|p| p.is_proper()) {
            anchored[p.start..p.end].iter_mut().for_each(|a| *a = true);
        }
        for entity in &self.entities {
            for start in 0..tokens.len() {
                let end = start + entity.len();
                if end <= tokens.len() && tokens[start..end].iter().zip(entity).all(|(t, e)| t.lemma() == e) {
                    anchored[start..end].iter_mut().for_each(|a| *a = true);
                }
            }
        }
        let anchor_terms = content_terms
            .iter()
            .filter(|term| {
                location_terms.contains(term)
                    || tokens
                        .iter()
                        .zip(&anchored)
                        .any(|(t, a)| *a && t.lemma() == term.as_str())
            })
            .cloned()
            .collect();

        AnalyzedQuery {
            raw: raw.to_string(),
            tokens,
            noun_phrases,
            content_terms,
            anchor_terms,
            is_location_query,
            location_terms,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;

    fn analyzer() -> Analyzer {
        bundled::analyzer().with_entities(["anna university", "tagore university", "anna nagar"])
    }

    #[test]
    fn trace_query() {
        let q = analyzer().analyze("list the teaching staff in anna university");
        let tags: Vec<_> = q.tokens.iter().map(|t| t.tag.as_str()).collect();
        assert_eq!(tags, ["NN", "DT", "NN", "NN", "IN", "NN", "NN"]);
        assert_eq!(q.content_terms, ["teaching", "staff", "anna", "university"]);
        assert_eq!(q.anchor_terms, ["anna", "university"]);
        assert!(!q.is_location_query);
        assert_eq!(
            q.content_phrases(),
            vec![vec!["teaching", "staff"], vec!["anna", "university"]]
        );
        assert_eq!(q.phrase_headed_by("staff").unwrap().text(), "the teaching staff");
        assert!(q.phrase_headed_by("teaching").is_none());
    }

    #[test]
    fn empty_query() {
        let q = analyzer().analyze("");
        assert!(q.tokens.is_empty() && q.content_terms.is_empty() && q.anchor_terms.is_empty());
        assert!(!q.is_location_query);
        assert!(q.location_terms.is_empty());
    }

    #[test]
    fn location_query_anchors() {
        let q = analyzer().analyze("How far is tagore university located from anna nagar");
        assert!(q.is_location_query);
        assert_eq!(q.location_terms, ["anna", "nagar"]);
        for a in ["tagore", "university", "anna", "nagar"] {
            assert!(q.is_anchor(a), "{a} should be an anchor");
        }
    }

    #[test]
    fn proper_noun_chunks_are_anchors() {
        let q = bundled::analyzer().analyze("colleges for doing M.B.A");
        assert_eq!(q.content_terms, ["colleges", "doing", "m.b.a"]);
        assert_eq!(q.anchor_terms, ["m.b.a"]);
    }

    #[test]
    fn repeated_terms_listed_once() {
        let q = bundled::analyzer().analyze("university fees university hostel");
        assert_eq!(q.content_terms, ["university", "fees", "hostel"]);
    }
}
