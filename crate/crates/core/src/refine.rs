//! Expansion candidates per query term and refined-query generation.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::lexicon::{Lexicon, WordNetPos};
use crate::ontology::{ConceptMatch, DomainKeywordSet};
use crate::text::{lemmas, AnalyzedQuery, PosTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpansionSource {
    #[serde(rename = "self")]
    Original,
    Ontology,
    Wordnet,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Expansion {
    pub lemma: String,
    pub source: ExpansionSource,
    pub weight: f64,
}

impl Expansion {
    fn original(term: &str) -> Self {
        Self {
            lemma: term.to_string(),
            source: ExpansionSource::Original,
            weight: 1.0,
        }
    }
}

/// Ranked expansion candidates for each content term, in query order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExpansionMap {
    slots: Vec<(String, Vec<Expansion>)>,
}

impl ExpansionMap {
    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.slots.iter().map(|(t, _)| t.as_str())
    }

    pub fn get(&self, term: &str) -> Option<&[Expansion]> {
        self.slots.iter().find(|(t, _)| t == term).map(|(_, e)| e.as_slice())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[Expansion])> {
        self.slots.iter().map(|(t, e)| (t.as_str(), e.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Map in which every term expands only to itself.
    pub fn identity(terms: &[String]) -> Self {
        Self {
            slots: terms
                .iter()
                .map(|t| (t.clone(), vec![Expansion::original(t)]))
                .collect(),
        }
    }

    /// Builds a map from explicit candidate lists. Each list is sorted and
    /// the term's own entry is put first.
    pub fn from_lists(lists: Vec<(String, Vec<Expansion>)>, e_max: usize) -> Self {
        Self {
            slots: lists
                .into_iter()
                .map(|(t, extra)| {
                    let list = finish_list(&t, extra, e_max);
                    (t, list)
                })
                .collect(),
        }
    }
}

impl Serialize for ExpansionMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.slots.len()))?;
        for (t, e) in &self.slots {
            map.serialize_entry(t, e)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionOptions {
    /// Cap on each term's list, including the term itself.
    pub e_max: usize,
    pub ontology_scale: f64,
    pub wordnet_weight: f64,
    pub use_wordnet: bool,
}

impl Default for ExpansionOptions {
    fn default() -> Self {
        Self {
            e_max: 5,
            ontology_scale: 0.9,
            wordnet_weight: 0.8,
            use_wordnet: true,
        }
    }
}

/// Collects candidates for every content term. Anchors keep only
/// themselves. Ontology keywords reached from a concept attach to the head
/// term of the match; keywords made only of words already in the query are
/// skipped. WordNet synonyms come from the whole noun phrase (underscore
/// joined) when the lexicon knows it, else from the term alone.
pub fn build_expansion_map(
    analyzed: &AnalyzedQuery,
    lexicon: &Lexicon,
    matches: &[ConceptMatch],
    keywords: &DomainKeywordSet,
    options: &ExpansionOptions,
) -> ExpansionMap {
    let query_words: HashSet<&str> = analyzed.tokens.iter().map(|t| t.lemma()).collect();
    let redundant = |candidate: &str| {
        lemmas(&candidate.replace('_', " "))
            .iter()
            .all(|w| query_words.contains(w.as_str()))
    };

    let mut slots = Vec::new();
    for term in &analyzed.content_terms {
        if analyzed.is_anchor(term) {
            slots.push((term.clone(), vec![Expansion::original(term)]));
            continue;
        }
        let mut extra: Vec<Expansion> = Vec::new();
        for m in matches.iter().filter(|m| m.head() == term) {
            for (kw, entry) in keywords.iter() {
                if entry.origin == Some(m.concept) && !redundant(kw) {
                    extra.push(Expansion {
                        lemma: kw.to_string(),
                        source: ExpansionSource::Ontology,
                        weight: entry.weight * options.ontology_scale,
                    });
                }
            }
        }
        if options.use_wordnet {
            for syn in wordnet_candidates(analyzed, lexicon, term) {
                if !redundant(&syn) {
                    extra.push(Expansion {
                        lemma: syn.replace('_', " "),
                        source: ExpansionSource::Wordnet,
                        weight: options.wordnet_weight,
                    });
                }
            }
        }
        slots.push((term.clone(), extra));
    }
    ExpansionMap::from_lists(slots, options.e_max)
}

fn wordnet_candidates(analyzed: &AnalyzedQuery, lexicon: &Lexicon, term: &str) -> Vec<String> {
    let pos = match analyzed.tag_of(term) {
        Some(tag) if tag.is_noun() => WordNetPos::Noun,
        Some(tag) if tag.is_verb() => WordNetPos::Verb,
        _ => return Vec::new(),
    };
    if pos == WordNetPos::Noun {
        if let Some(phrase) = analyzed.phrase_headed_by(term) {
            let words: Vec<&str> = phrase.content_tokens().collect();
            if words.len() > 1 && !phrase.tags.contains(&PosTag::NNP) {
                let joined = words.join("_");
                let syns = lexicon.synonyms(&joined, pos);
                if !syns.is_empty() {
                    return syns.into_iter().map(|s| s.lemma).collect();
                }
            }
        }
    }
    lexicon.synonyms(term, pos).into_iter().map(|s| s.lemma).collect()
}

/// Self entry first, then the rest by weight (desc) and lemma, one entry
/// per lemma, truncated to `e_max`.
fn finish_list(term: &str, extra: Vec<Expansion>, e_max: usize) -> Vec<Expansion> {
    let mut rest: Vec<Expansion> = extra
        .into_iter()
        .filter(|e| e.lemma != term && !e.lemma.is_empty())
        .collect();
    rest.sort_by(|a, b| {
        b.weight
            .partial_cmp(&a.weight)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.lemma.cmp(&b.lemma))
            .then_with(|| a.source.cmp(&b.source))
    });
    let mut seen: HashSet<String> = HashSet::new();
    let mut list = vec![Expansion::original(term)];
    for e in rest {
        if seen.insert(e.lemma.clone()) {
            list.push(e);
        }
    }
    list.truncate(e_max.max(1));
    list
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlotChoice {
    pub term: String,
    #[serde(flatten)]
    pub chosen: Expansion,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RefinedQuery {
    pub id: usize,
    /// One entry per content term, in query order.
    pub terms: Vec<String>,
    pub prior: f64,
    pub provenance: Vec<SlotChoice>,
}

impl RefinedQuery {
    pub fn text(&self) -> String {
        self.terms.join(" ")
    }
}

/// Prior rounded for comparisons so that products of the same factors in a
/// different order compare equal.
fn prior_key(p: f64) -> i64 {
    (p * 1e12).round() as i64
}

struct Candidate {
    key: i64,
    terms: Vec<String>,
    choice: Vec<usize>,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    // max-heap: higher prior first, then lexicographically smaller terms
    fn cmp(&self, other: &Self) -> Ordering {
        self.key
            .cmp(&other.key)
            .then_with(|| other.terms.cmp(&self.terms))
            .then_with(|| other.choice.cmp(&self.choice))
    }
}

/// Enumerates substitutions of expansion candidates into the term slots in
/// descending prior order (ties by terms, lexicographically), dropping
/// queries whose term multiset was already emitted, up to `q_max` queries.
/// The unchanged query always comes first.
pub fn generate_refined_queries(map: &ExpansionMap, q_max: usize) -> Vec<RefinedQuery> {
    let lists: Vec<&[Expansion]> = map.slots.iter().map(|(_, l)| l.as_slice()).collect();
    let build = |choice: &[usize]| -> (f64, Vec<String>) {
        let mut prior = 1.0;
        let mut terms = Vec::with_capacity(choice.len());
        for (slot, &i) in choice.iter().enumerate() {
            prior *= lists[slot][i].weight;
            terms.push(lists[slot][i].lemma.clone());
        }
        (prior, terms)
    };
    let mut heap = BinaryHeap::new();
    let mut visited: HashSet<Vec<usize>> = HashSet::new();
    let root = vec![0; lists.len()];
    let (p, terms) = build(&root);
    visited.insert(root.clone());
    heap.push(Candidate {
        key: prior_key(p),
        terms,
        choice: root,
    });

    let mut emitted: Vec<RefinedQuery> = Vec::new();
    let mut multisets: HashSet<Vec<String>> = HashSet::new();
    while let Some(c) = heap.pop() {
        if emitted.len() >= q_max.max(1) {
            break;
        }
        for slot in 0..c.choice.len() {
            if c.choice[slot] + 1 < lists[slot].len() {
                let mut next = c.choice.clone();
                next[slot] += 1;
                if visited.insert(next.clone()) {
                    let (p, terms) = build(&next);
                    heap.push(Candidate {
                        key: prior_key(p),
                        terms,
                        choice: next,
                    });
                }
            }
        }
        let mut sorted = c.terms.clone();
        sorted.sort();
        if !multisets.insert(sorted) {
            continue;
        }
        let (prior, terms) = build(&c.choice);
        emitted.push(RefinedQuery {
            id: emitted.len(),
            terms,
            prior,
            provenance: c
                .choice
                .iter()
                .enumerate()
                .map(|(slot, &i)| SlotChoice {
                    term: map.slots[slot].0.clone(),
                    chosen: lists[slot][i].clone(),
                })
                .collect(),
        });
    }
    emitted
}
