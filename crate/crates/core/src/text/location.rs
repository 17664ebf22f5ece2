use std::collections::HashSet;

use super::chunk::NounPhrase;
use super::tagger::{PosTag, TaggedToken};

pub const DEFAULT_TRIGGERS: &[&str] = &[
    "near", "nearby", "located", "location", "distance", "map", "maps", "route", "how far",
];

/// Terms and phrases that mark a query as location-dependent.
#[derive(Debug, Clone)]
pub struct LocationTriggers {
    phrases: Vec<Vec<String>>,
}

impl Default for LocationTriggers {
    fn default() -> Self {
        Self::new(DEFAULT_TRIGGERS.iter().copied())
    }
}

impl LocationTriggers {
    pub fn new<I, S>(triggers: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let phrases = triggers
            .into_iter()
            .map(|t| t.as_ref().split_whitespace().map(str::to_lowercase).collect::<Vec<_>>())
            .filter(|p| !p.is_empty())
            .collect();
        Self { phrases }
    }

    /// Indices of tokens covered by some trigger.
    fn positions(&self, tokens: &[TaggedToken]) -> HashSet<usize> {
        let mut hits = HashSet::new();
        for i in 0..tokens.len() {
            for phrase in &self.phrases {
                let end = i + phrase.len();
                if end <= tokens.len() && tokens[i..end].iter().zip(phrase).all(|(t, p)| t.lemma() == p) {
                    hits.extend(i..end);
                }
            }
        }
        hits
    }
}

/// Returns whether the query asks about a place, and which terms name it.
///
/// The place is the first noun chunk after a trigger that directly follows a
/// preposition or trigger word; failing that, the last noun chunk with
/// non-trigger content. A trigger without any noun chunk is not a location
/// query, so the flag and the term list are always consistent.
pub fn classify_location(
    tokens: &[TaggedToken],
    phrases: &[NounPhrase],
    triggers: &LocationTriggers,
) -> (bool, Vec<String>) {
    let hits = triggers.positions(tokens);
    let Some(&first) = hits.iter().min() else {
        return (false, Vec::new());
    };
    let place_terms = |p: &NounPhrase| -> Vec<String> {
        (p.start..p.end)
            .filter(|i| tokens[*i].tag != PosTag::DT && !hits.contains(i))
            .map(|i| tokens[i].lemma().to_string())
            .collect()
    };
    let after_locative = phrases.iter().find(|p| {
        p.start > first
            && p.start > 0
            && (tokens[p.start - 1].tag == PosTag::IN || hits.contains(&(p.start - 1)))
            && !place_terms(p).is_empty()
    });
    let chosen = after_locative.or_else(|| phrases.iter().rev().find(|p| !place_terms(p).is_empty()));
    match chosen {
        Some(p) => (true, place_terms(p)),
        None => (false, Vec::new()),
    }
}
