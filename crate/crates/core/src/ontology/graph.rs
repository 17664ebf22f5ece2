use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use super::turtle::{parse_document, Term, RDF_TYPE};
use super::OntologyError;
use crate::text::lemmas;

const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
const OWL: &str = "http://www.w3.org/2002/07/owl#";
const RDFS_SUBCLASS: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
const RDFS_CLASS: &str = "http://www.w3.org/2000/01/rdf-schema#Class";
const OWL_CLASS: &str = "http://www.w3.org/2002/07/owl#Class";
const OWL_EQUIVALENT: &str = "http://www.w3.org/2002/07/owl#equivalentClass";
const OWL_NAMED_INDIVIDUAL: &str = "http://www.w3.org/2002/07/owl#NamedIndividual";
const ANNOTATIONS: &[&str] = &[
    "http://www.w3.org/2000/01/rdf-schema#comment",
    "http://www.w3.org/2000/01/rdf-schema#seeAlso",
    "http://www.w3.org/2000/01/rdf-schema#isDefinedBy",
    "http://www.w3.org/2002/07/owl#versionInfo",
];

/// Index of a concept inside its graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ConceptId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConceptKind {
    Class,
    Individual,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Concept {
    pub iri: String,
    pub kind: ConceptKind,
    /// Lowercased labels, primary first. Never empty.
    pub labels: Vec<String>,
    /// Superclasses, or the classes an individual belongs to.
    pub parents: Vec<ConceptId>,
    pub children: Vec<ConceptId>,
    pub equivalents: Vec<ConceptId>,
}

/// Classes and individuals of an ontology with materialized edges.
#[derive(Debug, Clone, Default)]
pub struct ConceptGraph {
    concepts: Vec<Concept>,
    by_iri: HashMap<String, ConceptId>,
    prefixes: Vec<(String, String)>,
    warnings: Vec<String>,
    label_index: HashMap<String, Vec<ConceptId>>,
    token_index: HashMap<String, Vec<(usize, ConceptId)>>,
}

/// Facts about one IRI collected before the graph is materialized.
#[derive(Debug, Default, Clone)]
struct Record {
    declared_class: bool,
    typed: bool,
    labels: Vec<String>,
    parents: Vec<String>,
    equivalents: Vec<String>,
}

#[derive(Debug, Default)]
struct Builder {
    order: Vec<String>,
    records: HashMap<String, Record>,
    excluded: BTreeSet<String>,
    prefixes: Vec<(String, String)>,
    warnings: Vec<String>,
}

impl Builder {
    fn record(&mut self, iri: &str) -> &mut Record {
        if !self.records.contains_key(iri) {
            self.order.push(iri.to_string());
        }
        self.records.entry(iri.to_string()).or_default()
    }

    fn warn(&mut self, message: String) {
        if !self.warnings.contains(&message) {
            log::warn!("{message}");
            self.warnings.push(message);
        }
    }

    fn add_prefix(&mut self, prefix: &str, iri: &str) {
        if !self.prefixes.iter().any(|(p, _)| p == prefix) {
            self.prefixes.push((prefix.to_string(), iri.to_string()));
        }
    }

    fn absorb(&mut self, graph: &ConceptGraph) {
        for (p, iri) in &graph.prefixes {
            self.add_prefix(p, iri);
        }
        for w in &graph.warnings {
            self.warn(w.clone());
        }
        for c in &graph.concepts {
            let parents: Vec<String> = c.parents.iter().map(|p| graph.concepts[p.0].iri.clone()).collect();
            let equivalents: Vec<String> = c.equivalents.iter().map(|e| graph.concepts[e.0].iri.clone()).collect();
            let r = self.record(&c.iri);
            match c.kind {
                ConceptKind::Class => r.declared_class = true,
                ConceptKind::Individual => r.typed = true,
            }
            for l in &c.labels {
                if !r.labels.contains(l) {
                    r.labels.push(l.clone());
                }
            }
            r.parents.extend(parents);
            r.equivalents.extend(equivalents);
        }
    }

    fn finish(self) -> Result<ConceptGraph, OntologyError> {
        let mut graph = ConceptGraph {
            prefixes: self.prefixes,
            warnings: self.warnings,
            ..ConceptGraph::default()
        };
        let kept: Vec<&String> = self.order.iter().filter(|i| !self.excluded.contains(*i)).collect();
        for (n, iri) in kept.iter().enumerate() {
            graph.by_iri.insert((*iri).clone(), ConceptId(n));
        }
        for iri in &kept {
            let r = &self.records[*iri];
            let kind = if r.typed && !r.declared_class {
                ConceptKind::Individual
            } else {
                ConceptKind::Class
            };
            let mut labels: Vec<String> = Vec::new();
            for l in &r.labels {
                let l = l.trim().to_lowercase();
                if !l.is_empty() && !labels.contains(&l) {
                    labels.push(l);
                }
            }
            if labels.is_empty() {
                labels.push(label_from_iri(iri));
            }
            let resolve = |list: &[String]| -> Vec<ConceptId> {
                let mut ids: Vec<ConceptId> = Vec::new();
                for other in list {
                    if let Some(id) = graph.by_iri.get(other) {
                        if other != *iri && !ids.contains(id) {
                            ids.push(*id);
                        }
                    }
                }
                ids
            };
            graph.concepts.push(Concept {
                iri: (*iri).clone(),
                kind,
                labels,
                parents: resolve(&r.parents),
                children: Vec::new(),
                equivalents: resolve(&r.equivalents),
            });
        }
        for id in 0..graph.concepts.len() {
            for p in graph.concepts[id].parents.clone() {
                graph.concepts[p.0].children.push(ConceptId(id));
            }
            for e in graph.concepts[id].equivalents.clone() {
                if !graph.concepts[e.0].equivalents.contains(&ConceptId(id)) {
                    graph.concepts[e.0].equivalents.push(ConceptId(id));
                }
            }
        }
        graph.check_acyclic()?;
        graph.build_indexes();
        Ok(graph)
    }
}

/// "TeachingStaff" / "teaching_staff" → "teaching staff".
fn label_from_iri(iri: &str) -> String {
    let local = iri.rsplit(['#', '/']).next().unwrap_or(iri);
    let mut out = String::new();
    let mut prev_lower = false;
    for c in local.chars() {
        if c == '_' || c == '-' {
            out.push(' ');
            prev_lower = false;
        } else {
            if c.is_uppercase() && prev_lower {
                out.push(' ');
            }
            prev_lower = c.is_lowercase() || c.is_ascii_digit();
            out.extend(c.to_lowercase());
        }
    }
    let label = out.split_whitespace().collect::<Vec<_>>().join(" ");
    if label.is_empty() {
        iri.to_lowercase()
    } else {
        label
    }
}

/// Label as a space-joined lemma sequence, the form used for matching.
pub(crate) fn normalize_label(label: &str) -> String {
    lemmas(label).join(" ")
}

impl ConceptGraph {
    /// Parses a Turtle-subset document. Unsupported predicates are skipped
    /// with a warning.
    pub fn parse(text: &str) -> Result<Self, OntologyError> {
        let doc = parse_document(text)?;
        let mut b = Builder::default();
        for (p, iri) in &doc.prefixes {
            b.add_prefix(p, iri);
        }
        for t in &doc.triples {
            let Term::Iri(subject) = &t.subject else {
                continue;
            };
            match (t.predicate.as_str(), &t.object) {
                (RDF_TYPE, Term::Iri(class)) => match class.as_str() {
                    OWL_CLASS | RDFS_CLASS => b.record(subject).declared_class = true,
                    OWL_NAMED_INDIVIDUAL => b.record(subject).typed = true,
                    other if other.starts_with(OWL) || other.starts_with(RDFS) => {
                        // ontology headers, property declarations, restrictions
                        b.excluded.insert(subject.clone());
                    }
                    _ => {
                        b.record(subject).typed = true;
                        b.record(subject).parents.push(class.clone());
                        b.record(class).declared_class = true;
                    }
                },
                (RDFS_SUBCLASS, Term::Iri(parent)) => {
                    b.record(subject).declared_class = true;
                    b.record(subject).parents.push(parent.clone());
                    b.record(parent).declared_class = true;
                }
                (OWL_EQUIVALENT, Term::Iri(other)) => {
                    b.record(subject).declared_class = true;
                    b.record(subject).equivalents.push(other.clone());
                    b.record(other).declared_class = true;
                }
                (RDFS_LABEL, Term::Literal { value, .. }) => b.record(subject).labels.push(value.clone()),
                (RDFS_SUBCLASS | OWL_EQUIVALENT | RDF_TYPE, _) => {
                    b.warn(format!(
                        "line {}: skipped {} with a non-IRI object",
                        t.line, t.predicate
                    ));
                }
                (pred, _) if ANNOTATIONS.contains(&pred) => {}
                (pred, _) => b.warn(format!("skipped unsupported predicate <{pred}>")),
            }
        }
        b.finish()
    }

    /// Union of two graphs; concepts sharing an IRI get the union of their
    /// labels and edges.
    pub fn merge(&self, other: &ConceptGraph) -> Result<Self, OntologyError> {
        let mut b = Builder::default();
        b.absorb(self);
        b.absorb(other);
        b.finish()
    }

    fn check_acyclic(&self) -> Result<(), OntologyError> {
        // equivalence groups via union-find
        let n = self.concepts.len();
        let mut group: Vec<usize> = (0..n).collect();
        fn find(g: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while g[r] != r {
                r = g[r];
            }
            let mut x = x;
            while g[x] != r {
                let next = g[x];
                g[x] = r;
                x = next;
            }
            r
        }
        for (i, c) in self.concepts.iter().enumerate() {
            for e in &c.equivalents {
                let (a, b) = (find(&mut group, i), find(&mut group, e.0));
                group[a] = b;
            }
        }
        let roots: Vec<usize> = (0..n).map(|i| find(&mut group, i)).collect();
        let mut edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (i, c) in self.concepts.iter().enumerate() {
            for p in &c.parents {
                if roots[i] != roots[p.0] {
                    edges[roots[i]].push((roots[p.0], i));
                }
            }
        }
        // iterative DFS with colors; 0 white, 1 on stack, 2 done
        let mut color = vec![0u8; n];
        let mut parent_of = vec![usize::MAX; n];
        for start in 0..n {
            if roots[start] != start || color[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            color[start] = 1;
            while let Some((node, next)) = stack.pop() {
                if next < edges[node].len() {
                    stack.push((node, next + 1));
                    let (target, _) = edges[node][next];
                    match color[target] {
                        0 => {
                            color[target] = 1;
                            parent_of[target] = node;
                            stack.push((target, 0));
                        }
                        1 => {
                            let mut cycle = vec![self.concepts[target].iri.clone()];
                            let mut cur = node;
                            while cur != target {
                                cycle.push(self.concepts[cur].iri.clone());
                                cur = parent_of[cur];
                            }
                            cycle.reverse();
                            cycle.insert(0, self.concepts[target].iri.clone());
                            cycle.pop();
                            cycle.push(self.concepts[target].iri.clone());
                            return Err(OntologyError::Cycle(cycle));
                        }
                        _ => {}
                    }
                } else {
                    color[node] = 2;
                }
            }
        }
        Ok(())
    }

    fn build_indexes(&mut self) {
        for (i, c) in self.concepts.iter().enumerate() {
            for label in &c.labels {
                let norm = normalize_label(label);
                if norm.is_empty() {
                    continue;
                }
                let ids = self.label_index.entry(norm.clone()).or_default();
                if !ids.contains(&ConceptId(i)) {
                    ids.push(ConceptId(i));
                }
                let toks: Vec<&str> = norm.split(' ').collect();
                for tok in &toks {
                    let e = self.token_index.entry(tok.to_string()).or_default();
                    e.push((toks.len(), ConceptId(i)));
                }
            }
        }
        for v in self.token_index.values_mut() {
            v.sort();
            v.dedup_by_key(|(_, id)| *id);
        }
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn concept(&self, id: ConceptId) -> &Concept {
        &self.concepts[id.0]
    }

    pub fn concepts(&self) -> impl Iterator<Item = (ConceptId, &Concept)> {
        self.concepts.iter().enumerate().map(|(i, c)| (ConceptId(i), c))
    }

    pub fn id_of(&self, iri: &str) -> Option<ConceptId> {
        self.by_iri.get(iri).copied()
    }

    /// Looks up a concept by prefixed name (`:Faculty`) or full IRI.
    pub fn find(&self, name: &str) -> Option<ConceptId> {
        if let Some(id) = self.id_of(name) {
            return Some(id);
        }
        let (prefix, local) = name.split_once(':')?;
        let ns = self.prefixes.iter().find(|(p, _)| p == prefix)?;
        self.id_of(&format!("{}{local}", ns.1))
    }

    pub fn prefixes(&self) -> &[(String, String)] {
        &self.prefixes
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Token count of the longest label.
    pub fn max_label_tokens(&self) -> usize {
        self.label_index.keys().map(|l| l.split(' ').count()).max().unwrap_or(0)
    }

    /// Concepts with a label equal to `label` (normalized), lowest id first.
    pub fn concepts_with_label(&self, label: &str) -> &[ConceptId] {
        self.label_index
            .get(&normalize_label(label))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Concepts with a label containing `token`, ordered by label length
    /// in tokens, then id.
    pub fn concepts_with_label_token(&self, token: &str) -> Vec<ConceptId> {
        self.token_index
            .get(token)
            .map(|v| v.iter().map(|(_, id)| *id).collect())
            .unwrap_or_default()
    }

    /// Labels of every individual, for anchor detection.
    pub fn individual_labels(&self) -> impl Iterator<Item = &str> {
        self.concepts
            .iter()
            .filter(|c| c.kind == ConceptKind::Individual)
            .flat_map(|c| c.labels.iter().map(String::as_str))
    }

    /// Turtle serialization that re-parses to an isomorphic graph.
    pub fn to_turtle(&self) -> String {
        let mut out = String::new();
        for (p, iri) in &self.prefixes {
            let _ = writeln!(out, "@prefix {p}: <{iri}> .");
        }
        if !self.prefixes.is_empty() {
            out.push('\n');
        }
        for c in &self.concepts {
            let iri = |id: &ConceptId| format!("<{}>", self.concepts[id.0].iri);
            let _ = write!(out, "<{}>", c.iri);
            let mut parts: Vec<String> = Vec::new();
            match c.kind {
                ConceptKind::Class => {
                    parts.push(format!("a <{OWL_CLASS}>"));
                    if !c.parents.is_empty() {
                        let ps: Vec<String> = c.parents.iter().map(iri).collect();
                        parts.push(format!("<{RDFS_SUBCLASS}> {}", ps.join(", ")));
                    }
                }
                ConceptKind::Individual if c.parents.is_empty() => {
                    parts.push(format!("a <{OWL_NAMED_INDIVIDUAL}>"));
                }
                ConceptKind::Individual => {
                    let ps: Vec<String> = c.parents.iter().map(iri).collect();
                    parts.push(format!("a {}", ps.join(", ")));
                }
            }
            if !c.equivalents.is_empty() {
                let es: Vec<String> = c.equivalents.iter().map(iri).collect();
                parts.push(format!("<{OWL_EQUIVALENT}> {}", es.join(", ")));
            }
            let ls: Vec<String> = c.labels.iter().map(|l| quote(l)).collect();
            parts.push(format!("<{RDFS_LABEL}> {}", ls.join(", ")));
            let _ = writeln!(out, " {} .", parts.join(" ;\n    "));
        }
        out
    }
}

fn quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for c in s.chars() {
        match c {
            '"' => q.push_str("\\\""),
            '\\' => q.push_str("\\\\"),
            '\n' => q.push_str("\\n"),
            '\r' => q.push_str("\\r"),
            '\t' => q.push_str("\\t"),
            c => q.push(c),
        }
    }
    q.push('"');
    q
}
