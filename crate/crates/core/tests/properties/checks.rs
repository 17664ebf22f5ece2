#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::select;
use proptest::test_runner::{Config, FileFailurePersistence, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use sieu_core::backend::{CorpusDocument, CorpusIndex, SearchResult};
use sieu_core::bundled;
use sieu_core::eval::{evaluate, precision, relative_recall, JudgmentSet, RunFile};
use sieu_core::lexicon::{Lexicon, WordNetPos};
use sieu_core::ontology::{
    extract_domain_keywords, match_concepts, ConceptGraph, ConceptId, ConceptKind, DomainKeywordSet, KeywordOptions,
    Relation,
};
use sieu_core::rank::{fuse_and_rank, normalize_url, unique_urls, FusionOptions, RankedResult, ScoreWeights};
use sieu_core::refine::{generate_refined_queries, Expansion, ExpansionMap, ExpansionSource};
use sieu_core::Engine;

pub type Check = fn(u32) -> Result<(), String>;

/// Every property with its name, for harnesses that report per property.
pub const ALL: &[(&str, Check)] = &[
    ("bm25 equals brute force", bm25_matches_brute_force),
    (
        "rrf monotone under rank improvement",
        rrf_monotone_under_rank_improvement,
    ),
    (
        "ranking invariant under positive scaling",
        ranking_invariant_under_power_of_two_scaling,
    ),
    ("turtle round trip", turtle_round_trip),
    ("synonym symmetry", synonymy_is_symmetric),
    ("metric bounds", metrics_are_bounded),
    ("url uniqueness after fusion", fused_urls_are_unique),
    ("pipeline determinism", pipeline_is_deterministic),
    (
        "refinement equals exhaustive enumeration",
        refinement_matches_exhaustive_enumeration,
    ),
    ("keywords within graph distance", keywords_stay_within_graph_distance),
];

/// Runs `test` on `cases` inputs drawn with a fixed seed.
fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = Config {
        cases,
        failure_persistence: Some(Box::new(FileFailurePersistence::Off)),
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

const VOCAB: &[&str] = &[
    "anna", "faculty", "staff", "mba", "hostel", "fees", "iit", "road", "map", "people",
];

fn docs_strategy(max_docs: usize) -> impl Strategy<Value = Vec<Vec<&'static str>>> {
    prop::collection::vec(prop::collection::vec(select(VOCAB), 0..12), 1..=max_docs)
}

// --- BM25 ---------------------------------------------------------------

fn brute_force_bm25(docs: &[Vec<&str>], query: &[&str]) -> Vec<f64> {
    let n = docs.len() as f64;
    let avg = docs.iter().map(|d| d.len()).sum::<usize>() as f64 / n;
    let distinct: BTreeSet<&str> = query.iter().copied().collect();
    docs.iter()
        .map(|d| {
            let mut s = 0.0;
            for w in &distinct {
                let df = docs.iter().filter(|x| x.contains(w)).count() as f64;
                let tf = d.iter().filter(|x| *x == w).count() as f64;
                if tf == 0.0 {
                    continue;
                }
                let idf = (1.0 + (n - df + 0.5) / (df + 0.5)).ln();
                let norm = if avg > 0.0 { d.len() as f64 / avg } else { 0.0 };
                s += idf * tf * 2.2 / (tf + 1.2 * (0.25 + 0.75 * norm));
            }
            s
        })
        .collect()
}

pub fn bm25_matches_brute_force(cases: u32) -> Result<(), String> {
    run(
        cases,
        (docs_strategy(20), prop::collection::vec(select(VOCAB), 1..5)),
        |(docs, query)| {
            let index = CorpusIndex::build(
                docs.iter()
                    .enumerate()
                    .map(|(i, d)| CorpusDocument::new(format!("http://d{i}.test/"), "", d.join(" ")))
                    .collect(),
            )
            .unwrap();
            let expected = brute_force_bm25(&docs, &query);
            let got: BTreeMap<usize, f64> = index.score(&query.join(" ")).into_iter().collect();
            for (i, e) in expected.iter().enumerate() {
                let g = got.get(&i).copied().unwrap_or(0.0);
                prop_assert!(
                    (g - e).abs() <= 1e-9 * e.abs().max(1.0),
                    "doc {i}: index {g} vs oracle {e}"
                );
                prop_assert_eq!(
                    got.contains_key(&i),
                    *e > 0.0 || docs[i].iter().any(|w| query.contains(w))
                );
            }
            let ranked = index.score(&query.join(" "));
            prop_assert!(ranked
                .windows(2)
                .all(|w| w[0].1 > w[1].1 || (w[0].1 == w[1].1 && w[0].0 < w[1].0)));
            Ok(())
        },
    )
}

// --- fusion ---------------------------------------------------------------

fn result(url: &str, query_id: usize, backend_rank: usize) -> SearchResult {
    SearchResult {
        url: url.to_string(),
        title: String::new(),
        snippet: String::new(),
        backend_rank,
        query_id,
    }
}

/// Ranked lists over doc ids, one per query, each a permutation prefix.
fn lists_strategy() -> impl Strategy<Value = Vec<Vec<usize>>> {
    prop::collection::vec(
        Just((0..12).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_flat_map(|p| (1..=p.len()).prop_map(move |n| p[..n].to_vec())),
        1..6,
    )
}

fn to_results(lists: &[Vec<usize>]) -> Vec<Vec<SearchResult>> {
    lists
        .iter()
        .enumerate()
        .map(|(q, l)| {
            l.iter()
                .enumerate()
                .map(|(i, d)| result(&format!("http://doc{d}.test/p"), q, i + 1))
                .collect()
        })
        .collect()
}

fn rrf_only() -> ScoreWeights {
    ScoreWeights {
        rrf: 1.0,
        title: 0.0,
        snippet: 0.0,
        url: 0.0,
        phrase: 0.0,
    }
}

fn fused(lists: &[Vec<SearchResult>], weights: &ScoreWeights, keywords: &DomainKeywordSet) -> Vec<RankedResult> {
    fuse_and_rank(
        lists,
        keywords,
        &[],
        weights,
        &FusionOptions {
            rrf_k: 60.0,
            k_out: 1000,
        },
    )
}

fn rrf_of(results: &[RankedResult], doc: usize) -> f64 {
    let url = normalize_url(&format!("http://doc{doc}.test/p"));
    results.iter().find(|r| r.url == url).map(|r| r.breakdown.rrf).unwrap()
}

fn position_of(results: &[RankedResult], doc: usize) -> usize {
    let url = normalize_url(&format!("http://doc{doc}.test/p"));
    results.iter().position(|r| r.url == url).unwrap()
}

pub fn rrf_monotone_under_rank_improvement(cases: u32) -> Result<(), String> {
    run(
        cases,
        (
            lists_strategy(),
            any::<prop::sample::Index>(),
            any::<prop::sample::Index>(),
        ),
        |(lists, pick, which)| {
            let q = which.index(lists.len());
            prop_assume!(lists[q].len() >= 2);
            let pos = 1 + pick.index(lists[q].len() - 1);
            let doc = lists[q][pos];
            let mut improved = lists.clone();
            improved[q].swap(pos - 1, pos);

            let keywords = DomainKeywordSet::default();
            let before = fused(&to_results(&lists), &rrf_only(), &keywords);
            let after = fused(&to_results(&improved), &rrf_only(), &keywords);
            prop_assert!(rrf_of(&after, doc) >= rrf_of(&before, doc) - 1e-12);
            prop_assert!(position_of(&after, doc) <= position_of(&before, doc));
            Ok(())
        },
    )
}
pub fn ranking_invariant_under_power_of_two_scaling(cases: u32) -> Result<(), String> {
    run(
        cases,
        (lists_strategy(), prop::collection::vec(0u32..=20, 5), -6i32..=6),
        |(lists, w, exp)| {
            let weights = ScoreWeights {
                rrf: w[0] as f64 / 20.0,
                title: w[1] as f64 / 20.0,
                snippet: w[2] as f64 / 20.0,
                url: w[3] as f64 / 20.0,
                phrase: w[4] as f64 / 20.0,
            };
            let mut keywords = DomainKeywordSet::default();
            keywords.add_location_terms(&["doc3".to_string(), "test".to_string()]);
            let mut results = to_results(&lists);
            for (i, r) in results.iter_mut().flatten().enumerate() {
                r.title = if i % 3 == 0 { "doc3 test".into() } else { String::new() };
            }
            let base: Vec<String> = fused(&results, &weights, &keywords)
                .into_iter()
                .map(|r| r.url)
                .collect();
            let scaled: Vec<String> = fused(&results, &weights.scaled(2f64.powi(exp)), &keywords)
                .into_iter()
                .map(|r| r.url)
                .collect();
            prop_assert_eq!(base, scaled);
            Ok(())
        },
    )
}
pub fn fused_urls_are_unique(cases: u32) -> Result<(), String> {
    run(
        cases,
        (prop::collection::vec(
            (
                0usize..6,
                select(&["http://", "HTTP://"][..]),
                select(&["", "/", "#frag", ":80"][..]),
                1usize..10,
            ),
            0..40,
        ),),
        |(raw,)| {
            let results: Vec<SearchResult> = raw
                .iter()
                .enumerate()
                .map(|(i, (d, scheme, tail, rank))| {
                    let host = if i % 2 == 0 {
                        format!("Site{d}.test")
                    } else {
                        format!("site{d}.TEST")
                    };
                    let url = match *tail {
                        ":80" => format!("{scheme}{host}:80/x"),
                        t => format!("{scheme}{host}/x{t}"),
                    };
                    result(&url, i % 3, *rank)
                })
                .collect();
            let lists = vec![results];
            let ranked = fused(&lists, &ScoreWeights::default(), &DomainKeywordSet::default());
            prop_assert!(unique_urls(&ranked));
            let hosts: HashSet<usize> = raw.iter().map(|r| r.0).collect();
            prop_assert_eq!(ranked.len(), hosts.len());
            Ok(())
        },
    )
}

// --- refinement -----------------------------------------------------------

fn prior_key(p: f64) -> i64 {
    (p * 1e12).round() as i64
}

/// Every combination, sorted by prior then terms, first of each term
/// multiset kept, cut to `q_max`.
fn brute_force_refine(map: &ExpansionMap, q_max: usize) -> Vec<(Vec<String>, f64)> {
    let lists: Vec<&[Expansion]> = map.iter().map(|(_, l)| l).collect();
    let mut all: Vec<(Vec<String>, f64)> = vec![(Vec::new(), 1.0)];
    for list in &lists {
        all = all
            .into_iter()
            .flat_map(|(terms, p)| {
                list.iter().map(move |e| {
                    let mut t = terms.clone();
                    t.push(e.lemma.clone());
                    (t, p * e.weight)
                })
            })
            .collect();
    }
    all.sort_by(|a, b| prior_key(b.1).cmp(&prior_key(a.1)).then_with(|| a.0.cmp(&b.0)));
    let mut seen = HashSet::new();
    all.into_iter()
        .filter(|(t, _)| {
            let mut m = t.clone();
            m.sort();
            seen.insert(m)
        })
        .take(q_max.max(1))
        .collect()
}

fn map_strategy() -> impl Strategy<Value = ExpansionMap> {
    const WORDS: &[&str] = &["a", "b", "c", "d", "e", "f"];
    let slot = (select(WORDS), prop::collection::vec((select(WORDS), 1u32..20), 0..5));
    prop::collection::vec(slot, 0..4).prop_map(|slots| {
        ExpansionMap::from_lists(
            slots
                .into_iter()
                .map(|(t, extra)| {
                    let extra = extra
                        .into_iter()
                        .map(|(l, w)| Expansion {
                            lemma: l.to_string(),
                            source: ExpansionSource::Wordnet,
                            weight: w as f64 / 20.0,
                        })
                        .collect();
                    (t.to_string(), extra)
                })
                .collect(),
            5,
        )
    })
}

pub fn refinement_matches_exhaustive_enumeration(cases: u32) -> Result<(), String> {
    run(cases, (map_strategy(), 1usize..20), |(map, q_max)| {
        let got: Vec<(Vec<String>, f64)> = generate_refined_queries(&map, q_max)
            .into_iter()
            .map(|q| (q.terms, q.prior))
            .collect();
        let expected = brute_force_refine(&map, q_max);
        prop_assert_eq!(got.len(), expected.len());
        for (g, e) in got.iter().zip(&expected) {
            prop_assert_eq!(&g.0, &e.0);
            prop_assert_eq!(prior_key(g.1), prior_key(e.1));
        }
        prop_assert!(got[0].1 == 1.0);
        Ok(())
    })
}

// --- ontology ---------------------------------------------------------------

const LABEL_WORDS: &[&str] = &["dean", "lab", "course", "office", "board", "club", "hall", "desk"];

#[derive(Debug, Clone)]
struct RandomOntology {
    /// (parents among lower indices, labels) per class.
    classes: Vec<(Vec<usize>, Vec<String>)>,
    /// (class index, label) per individual.
    individuals: Vec<(usize, String)>,
    /// Classes with an equivalent alias class.
    aliased: Vec<usize>,
}

fn ontology_strategy() -> impl Strategy<Value = RandomOntology> {
    (1usize..8).prop_flat_map(|n| {
        let classes = (0..n)
            .map(|i| {
                let parents = if i == 0 {
                    Just(Vec::new()).boxed()
                } else {
                    prop::collection::vec(0..i, 0..3).boxed()
                };
                (
                    parents,
                    prop::collection::vec(select(LABEL_WORDS).prop_map(String::from), 1..3),
                )
            })
            .collect::<Vec<_>>();
        (
            classes,
            prop::collection::vec((0..n, select(LABEL_WORDS).prop_map(String::from)), 0..4),
            prop::collection::vec(0..n, 0..3),
        )
            .prop_map(|(classes, individuals, aliased)| RandomOntology {
                classes,
                individuals,
                aliased,
            })
    })
}

impl RandomOntology {
    fn turtle(&self) -> String {
        let mut out = String::from(
            "@prefix : <http://t.example/o#> .\n@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n@prefix owl: <http://www.w3.org/2002/07/owl#> .\n",
        );
        for (i, (parents, labels)) in self.classes.iter().enumerate() {
            out.push_str(&format!(":C{i} a owl:Class"));
            let ps: BTreeSet<usize> = parents.iter().copied().collect();
            if !ps.is_empty() {
                let ps: Vec<String> = ps.iter().map(|p| format!(":C{p}")).collect();
                out.push_str(&format!(" ;\n  rdfs:subClassOf {}", ps.join(", ")));
            }
            let ls: Vec<String> = labels
                .iter()
                .enumerate()
                .map(|(k, l)| format!("\"{l} {i}{k}\""))
                .collect();
            out.push_str(&format!(" ;\n  rdfs:label {} .\n", ls.join(", ")));
        }
        for (k, (class, label)) in self.individuals.iter().enumerate() {
            out.push_str(&format!(":I{k} a :C{class} ; rdfs:label \"{label} x{k}\"@en .\n"));
        }
        let aliased: BTreeSet<usize> = self.aliased.iter().copied().collect();
        for c in aliased {
            out.push_str(&format!(":A{c} owl:equivalentClass :C{c} .\n"));
        }
        out
    }
}

type Shape = BTreeMap<
    String,
    (
        bool,
        BTreeSet<String>,
        BTreeSet<String>,
        BTreeSet<String>,
        BTreeSet<String>,
    ),
>;

fn shape(g: &ConceptGraph) -> Shape {
    let iri = |id: &ConceptId| g.concept(*id).iri.clone();
    g.concepts()
        .map(|(_, c)| {
            (
                c.iri.clone(),
                (
                    c.kind == ConceptKind::Class,
                    c.labels.iter().cloned().collect(),
                    c.parents.iter().map(iri).collect(),
                    c.children.iter().map(iri).collect(),
                    c.equivalents.iter().map(iri).collect(),
                ),
            )
        })
        .collect()
}

pub fn turtle_round_trip(cases: u32) -> Result<(), String> {
    run(cases, (ontology_strategy(),), |(onto,)| {
        let g = ConceptGraph::parse(&onto.turtle()).unwrap();
        let text = g.to_turtle();
        let again = ConceptGraph::parse(&text).unwrap();
        prop_assert_eq!(shape(&g), shape(&again));
        prop_assert_eq!(
            g.len(),
            onto.classes.len() + onto.individuals.len() + onto.aliased.iter().collect::<BTreeSet<_>>().len()
        );
        Ok(())
    })
}

/// Concepts within `radius` hops over parent, child and equivalence edges.
fn neighbourhood(g: &ConceptGraph, start: ConceptId, radius: usize) -> BTreeSet<ConceptId> {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([(start, 0)]);
    while let Some((c, d)) = queue.pop_front() {
        if d == radius {
            continue;
        }
        let concept = g.concept(c);
        for n in concept
            .parents
            .iter()
            .chain(&concept.children)
            .chain(&concept.equivalents)
        {
            if seen.insert(*n) {
                queue.push_back((*n, d + 1));
            }
        }
    }
    seen
}

fn bundled_graph() -> &'static ConceptGraph {
    static G: OnceLock<ConceptGraph> = OnceLock::new();
    G.get_or_init(bundled::ontology)
}

fn label_vocabulary() -> Vec<String> {
    let mut words: BTreeSet<String> = BTreeSet::new();
    for (_, c) in bundled_graph().concepts() {
        for l in &c.labels {
            words.extend(l.split_whitespace().map(String::from));
        }
    }
    words.into_iter().collect()
}

pub fn keywords_stay_within_graph_distance(cases: u32) -> Result<(), String> {
    run(
        cases,
        (prop::collection::vec(select(label_vocabulary()), 1..4), 0usize..4),
        |(terms, depth)| {
            let g = bundled_graph();
            let matches = match_concepts(&terms, &[], g);
            let shallow = extract_domain_keywords(&matches, g, KeywordOptions { depth, siblings: true });
            let deep = extract_domain_keywords(
                &matches,
                g,
                KeywordOptions {
                    depth: depth + 1,
                    siblings: true,
                },
            );

            let mut allowed: BTreeSet<String> = BTreeSet::new();
            for m in &matches {
                allowed.extend(m.terms.iter().chain(&m.forms).cloned());
                for c in neighbourhood(g, m.concept, (depth + 1).max(1) + 1) {
                    allowed.extend(g.concept(c).labels.iter().cloned());
                }
            }
            for (k, e) in shallow.iter() {
                prop_assert!(allowed.contains(k), "{k} is not near any match");
                prop_assert!(deep.contains(k), "{k} lost at depth {}", depth + 1);
                prop_assert_eq!(e.weight, e.relation.weight());
                prop_assert!(e.relation != Relation::Location);
            }
            if matches.is_empty() {
                prop_assert!(shallow.is_empty());
            }
            Ok(())
        },
    )
}

// --- lexicon ----------------------------------------------------------------

fn lexicon() -> &'static Lexicon {
    static L: OnceLock<Lexicon> = OnceLock::new();
    L.get_or_init(bundled::wordnet)
}

fn index_lemmas(pos: &str) -> Vec<String> {
    let text = std::fs::read_to_string(bundled::data_dir().join("wordnet").join(format!("index.{pos}"))).unwrap();
    text.lines()
        .filter(|l| !l.starts_with(' ') && !l.trim().is_empty())
        .filter_map(|l| l.split(' ').next())
        .map(String::from)
        .collect()
}

pub fn synonymy_is_symmetric(cases: u32) -> Result<(), String> {
    run(
        cases,
        (select(index_lemmas("noun")), select(index_lemmas("verb"))),
        |(noun, verb)| {
            let wn = lexicon();
            for (lemma, pos) in [(noun, WordNetPos::Noun), (verb, WordNetPos::Verb)] {
                for e in wn.synonyms(&lemma, pos) {
                    let shares = wn.synset(e.synset).is_some_and(|s| s.lemmas.contains(&lemma));
                    if !shares {
                        continue;
                    }
                    let back: Vec<String> = wn.synonyms(&e.lemma, pos).into_iter().map(|s| s.lemma).collect();
                    prop_assert!(
                        back.contains(&lemma) || wn.base_forms(&e.lemma, pos).contains(&lemma),
                        "{} -> {} but not back",
                        lemma,
                        e.lemma
                    );
                }
            }
            Ok(())
        },
    )
}

// --- metrics ----------------------------------------------------------------

pub fn metrics_are_bounded(cases: u32) -> Result<(), String> {
    run(
        cases,
        (
            prop::collection::vec(0usize..15, 0..12),
            prop::collection::vec(0usize..15, 0..12),
            prop::collection::btree_set(0usize..15, 0..8),
        ),
        |(a, b, rel)| {
            let url = |d: &usize| format!("http://d{d}.test/x");
            let relevant: BTreeSet<String> = rel.iter().map(url).collect();
            let ra: Vec<String> = a.iter().map(url).collect();
            let p = precision(&ra, &relevant);
            prop_assert!((0.0..=1.0).contains(&p));
            if let Some(r) = relative_recall(&ra, &relevant) {
                prop_assert!((0.0..=1.0).contains(&r));
            } else {
                prop_assert!(relevant.is_empty());
            }

            let mut run_a = RunFile::new("a");
            let mut run_b = RunFile::new("b");
            let mut judgments = JudgmentSet::default();
            for d in &a {
                run_a.push("q", &url(d));
            }
            for d in &b {
                run_b.push("q", &url(d));
            }
            for d in &rel {
                judgments.insert("q", &url(d));
            }
            match evaluate(&run_a, &run_b, &judgments) {
                Ok(rows) => {
                    for r in rows {
                        prop_assert!((0.0..=1.0).contains(&r.precision) && (0.0..=1.0).contains(&r.recall));
                    }
                }
                Err(_) => {
                    let pooled = a.iter().chain(&b).any(|d| rel.contains(d));
                    prop_assert!(!pooled);
                }
            }
            Ok(())
        },
    )
}

// --- determinism ------------------------------------------------------------

fn engine() -> &'static Engine {
    static E: OnceLock<Engine> = OnceLock::new();
    E.get_or_init(|| Engine::bundled().unwrap())
}

const FIXTURE_QUERIES: &[&str] = &[
    "list the teaching staff in anna university",
    "Provide the Faculties in Computer Science Department Anna University",
    "colleges for doing M.B.A",
    "How far is tagore university located from anna nagar",
    "deadline for payment of fees in sastra university for M.B.A",
];

pub fn pipeline_is_deterministic(cases: u32) -> Result<(), String> {
    run(cases.min(10), (select(FIXTURE_QUERIES),), |(q,)| {
        let first = engine().search(q, None).unwrap();
        let second = Engine::bundled().unwrap().search(q, None).unwrap();
        prop_assert_eq!(
            serde_json::to_string(&first.results).unwrap(),
            serde_json::to_string(&second.results).unwrap()
        );
        prop_assert_eq!(
            serde_json::to_string(&first.refined_queries).unwrap(),
            serde_json::to_string(&second.refined_queries).unwrap()
        );
        prop_assert!(unique_urls(&first.results));
        Ok(())
    })
}
