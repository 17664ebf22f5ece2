use std::collections::HashMap;

use serde::Serialize;

use super::graph::{normalize_label, ConceptGraph, ConceptId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchKind {
    ExactLabel,
    LabelToken,
}

/// A query term (or run of terms inside one noun phrase) tied to a concept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConceptMatch {
    /// The matched query text, e.g. "teaching staff".
    pub query_term: String,
    /// Content terms covered by the match, in query order.
    pub terms: Vec<String>,
    /// Forms that hit the label index (base forms where the surface missed).
    pub forms: Vec<String>,
    pub concept: ConceptId,
    pub kind: MatchKind,
}

impl ConceptMatch {
    /// The slot expansions attach to: the last covered term.
    pub fn head(&self) -> &str {
        self.terms.last().map(String::as_str).unwrap_or("")
    }
}

/// [`match_concepts_with_forms`] without morphological variants.
pub fn match_concepts(terms: &[String], phrases: &[Vec<String>], graph: &ConceptGraph) -> Vec<ConceptMatch> {
    match_concepts_with_forms(terms, phrases, graph, |_| Vec::new())
}

/// Matches query terms against concept labels, longest first: runs of two
/// or more terms inside a phrase against full labels, then single terms
/// against full labels, then single terms against label tokens. Each term
/// takes part in at most one match. `variants` yields alternative forms of a
/// term (typically noun base forms) tried after the surface form.
pub fn match_concepts_with_forms<F>(
    terms: &[String],
    phrases: &[Vec<String>],
    graph: &ConceptGraph,
    variants: F,
) -> Vec<ConceptMatch>
where
    F: Fn(&str) -> Vec<String>,
{
    let forms_of = |t: &str| -> Vec<String> {
        let mut forms = vec![t.to_string()];
        for v in variants(t) {
            let v = normalize_label(&v.replace('_', " "));
            if !v.is_empty() && !forms.contains(&v) {
                forms.push(v);
            }
        }
        forms
    };
    let mut covered: Vec<String> = Vec::new();
    let mut matches: Vec<(usize, ConceptMatch)> = Vec::new();
    let position = |t: &str| terms.iter().position(|x| x == t).unwrap_or(usize::MAX);

    let longest = graph.max_label_tokens();
    let mut base_of: HashMap<&str, String> = HashMap::new();
    for phrase in phrases {
        for t in phrase {
            base_of
                .entry(t.as_str())
                .or_insert_with(|| forms_of(t).pop().unwrap_or_else(|| t.clone()));
        }
        let mut n = phrase.len().min(longest);
        while n >= 2 {
            let mut start = 0;
            while start + n <= phrase.len() {
                let window = &phrase[start..start + n];
                let free = window.iter().all(|t| terms.contains(t) && !covered.contains(t));
                if free {
                    let surface = window.join(" ");
                    let based: Vec<&str> = window.iter().map(|t| base_of[t.as_str()].as_str()).collect();
                    let based = based.join(" ");
                    let hit = [surface.clone(), based]
                        .into_iter()
                        .find_map(|c| graph.concepts_with_label(&c).first().map(|id| (c, *id)));
                    if let Some((form, concept)) = hit {
                        covered.extend(window.iter().cloned());
                        matches.push((
                            position(&window[0]),
                            ConceptMatch {
                                query_term: surface,
                                terms: window.to_vec(),
                                forms: vec![form],
                                concept,
                                kind: MatchKind::ExactLabel,
                            },
                        ));
                        start += n;
                        continue;
                    }
                }
                start += 1;
            }
            n -= 1;
        }
    }

    let singles: Vec<&String> = terms.iter().filter(|t| !covered.contains(t)).collect();
    let mut unmatched: Vec<&String> = Vec::new();
    for term in singles {
        let hit = forms_of(term)
            .into_iter()
            .find_map(|f| graph.concepts_with_label(&f).first().map(|id| (f, *id)));
        match hit {
            Some((form, concept)) => matches.push((position(term), single(term, form, concept, MatchKind::ExactLabel))),
            None => unmatched.push(term),
        }
    }
    for term in unmatched {
        let hit = forms_of(term)
            .into_iter()
            .find_map(|f| graph.concepts_with_label_token(&f).first().map(|id| (f, *id)));
        if let Some((form, concept)) = hit {
            matches.push((position(term), single(term, form, concept, MatchKind::LabelToken)));
        }
    }
    matches.sort_by_key(|(pos, _)| *pos);
    matches.into_iter().map(|(_, m)| m).collect()
}

fn single(term: &str, form: String, concept: ConceptId, kind: MatchKind) -> ConceptMatch {
    ConceptMatch {
        query_term: term.to_string(),
        terms: vec![term.to_string()],
        forms: vec![form],
        concept,
        kind,
    }
}
