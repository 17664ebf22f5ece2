use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::graph::{normalize_label, ConceptGraph, ConceptId, ConceptKind};
use super::matching::ConceptMatch;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    #[serde(rename = "self")]
    SelfLabel,
    Equivalent,
    Parent,
    Child,
    Sibling,
    Location,
}

impl Relation {
    pub fn weight(self) -> f64 {
        match self {
            Relation::SelfLabel | Relation::Location => 1.0,
            Relation::Equivalent => 0.9,
            Relation::Parent | Relation::Child => 0.6,
            Relation::Sibling => 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DomainKeyword {
    pub relation: Relation,
    pub weight: f64,
    /// IRI of the matched concept the keyword was reached from; `None` for
    /// keywords not derived from the ontology.
    pub source: Option<String>,
    #[serde(skip)]
    pub origin: Option<ConceptId>,
}

/// Keywords keyed by their normalized lemma sequence.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DomainKeywordSet {
    entries: BTreeMap<String, DomainKeyword>,
}

impl DomainKeywordSet {
    /// Inserts a keyword, keeping the existing entry unless the new weight is
    /// strictly higher.
    pub fn insert(&mut self, keyword: &str, entry: DomainKeyword) {
        let key = normalize_label(&keyword.replace('_', " "));
        if key.is_empty() {
            return;
        }
        match self.entries.get(&key) {
            Some(old) if old.weight >= entry.weight => {}
            _ => {
                self.entries.insert(key, entry);
            }
        }
    }

    pub fn get(&self, keyword: &str) -> Option<&DomainKeyword> {
        self.entries.get(keyword)
    }

    pub fn contains(&self, keyword: &str) -> bool {
        self.entries.contains_key(keyword)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &DomainKeyword)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn keywords(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.entries.values().map(|e| e.weight).fold(0.0, |a, w| a + w)
    }

    /// Adds place names at full weight.
    pub fn add_location_terms(&mut self, terms: &[String]) {
        for t in terms {
            self.insert(
                t,
                DomainKeyword {
                    relation: Relation::Location,
                    weight: Relation::Location.weight(),
                    source: None,
                    origin: None,
                },
            );
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeywordOptions {
    /// Hops followed along parent and child edges.
    pub depth: usize,
    pub siblings: bool,
}

impl Default for KeywordOptions {
    fn default() -> Self {
        Self {
            depth: 1,
            siblings: true,
        }
    }
}

/// Collects labels around each matched concept: its own labels and the
/// matched query terms, labels of equivalent classes, of ancestors and
/// descendants within `depth` hops, and of sibling classes when `depth`
/// is at least one.
pub fn extract_domain_keywords(
    matches: &[ConceptMatch],
    graph: &ConceptGraph,
    options: KeywordOptions,
) -> DomainKeywordSet {
    let mut set = DomainKeywordSet::default();
    for m in matches {
        let iri = graph.concept(m.concept).iri.clone();
        let add = |id: ConceptId, relation: Relation, set: &mut DomainKeywordSet| {
            for label in &graph.concept(id).labels {
                set.insert(label, entry(relation, &iri, m.concept));
            }
        };
        add(m.concept, Relation::SelfLabel, &mut set);
        for t in m.terms.iter().chain(&m.forms) {
            set.insert(t, entry(Relation::SelfLabel, &iri, m.concept));
        }

        let group: BTreeSet<ConceptId> = std::iter::once(m.concept)
            .chain(graph.concept(m.concept).equivalents.iter().copied())
            .collect();
        for &e in group.iter().filter(|e| **e != m.concept) {
            add(e, Relation::Equivalent, &mut set);
        }
        let up = reach(&group, options.depth, |c| &graph.concept(c).parents);
        let down = reach(&group, options.depth, |c| &graph.concept(c).children);
        for &c in &up {
            add(c, Relation::Parent, &mut set);
        }
        for &c in &down {
            add(c, Relation::Child, &mut set);
        }
        if options.siblings && options.depth >= 1 {
            let mut siblings = BTreeSet::new();
            for &g in &group {
                for p in &graph.concept(g).parents {
                    for &s in &graph.concept(*p).children {
                        if !group.contains(&s) && !up.contains(&s) && graph.concept(s).kind == ConceptKind::Class {
                            siblings.insert(s);
                        }
                    }
                }
            }
            for s in siblings {
                add(s, Relation::Sibling, &mut set);
            }
        }
    }
    set
}

fn entry(relation: Relation, iri: &str, origin: ConceptId) -> DomainKeyword {
    DomainKeyword {
        relation,
        weight: relation.weight(),
        source: Some(iri.to_string()),
        origin: Some(origin),
    }
}

/// Concepts within `depth` hops of `start` along `next`, excluding `start`,
/// in breadth-first order.
fn reach<'g, F>(start: &BTreeSet<ConceptId>, depth: usize, next: F) -> Vec<ConceptId>
where
    F: Fn(ConceptId) -> &'g Vec<ConceptId>,
{
    let mut seen: BTreeSet<ConceptId> = start.clone();
    let mut out = Vec::new();
    let mut queue: VecDeque<(ConceptId, usize)> = start.iter().map(|c| (*c, 0)).collect();
    while let Some((c, d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        for &n in next(c) {
            if seen.insert(n) {
                out.push(n);
                queue.push_back((n, d + 1));
            }
        }
    }
    out
}
