//! Resources compiled into the library so the pipeline runs without any
//! files on disk (except the fixture corpus).

use std::path::PathBuf;

use crate::lexicon::{Lexicon, WordNetSources};
use crate::ontology::ConceptGraph;
use crate::text::{Analyzer, StopList, TagLexicon};

pub const TAG_LEXICON: &str = include_str!("../data/tag_lexicon.tsv");
pub const STOPLIST: &str = include_str!("../data/stoplist.txt");
pub const UNIVERSITY_TTL: &str = include_str!("../data/university.ttl");
pub const SAMPLE_SCORES: &str = include_str!("../data/eval/sample_scores.tsv");

const WORDNET: &[(&str, &str)] = &[
    ("index.noun", include_str!("../data/wordnet/index.noun")),
    ("data.noun", include_str!("../data/wordnet/data.noun")),
    ("noun.exc", include_str!("../data/wordnet/noun.exc")),
    ("index.verb", include_str!("../data/wordnet/index.verb")),
    ("data.verb", include_str!("../data/wordnet/data.verb")),
    ("verb.exc", include_str!("../data/wordnet/verb.exc")),
    ("index.adj", include_str!("../data/wordnet/index.adj")),
    ("data.adj", include_str!("../data/wordnet/data.adj")),
    ("adj.exc", include_str!("../data/wordnet/adj.exc")),
    ("index.adv", include_str!("../data/wordnet/index.adv")),
    ("data.adv", include_str!("../data/wordnet/data.adv")),
    ("adv.exc", include_str!("../data/wordnet/adv.exc")),
];

pub fn tag_lexicon() -> TagLexicon {
    TagLexicon::parse(TAG_LEXICON).expect("bundled tag lexicon is valid")
}

pub fn stoplist() -> StopList {
    StopList::parse(STOPLIST)
}

/// Analyzer over the bundled lexicon and stop list, without entity names.
pub fn analyzer() -> Analyzer {
    Analyzer::new(tag_lexicon(), stoplist())
}

pub fn wordnet() -> Lexicon {
    let mut sources = WordNetSources::default();
    for (name, text) in WORDNET {
        sources.insert(name, text);
    }
    Lexicon::from_sources(&sources).expect("bundled WordNet fixture is valid")
}

pub fn ontology() -> ConceptGraph {
    ConceptGraph::parse(UNIVERSITY_TTL).expect("bundled ontology is valid")
}

/// Directory holding the bundled data files in the source tree.
pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

/// Manifest of the fixture corpus.
pub fn corpus_manifest() -> PathBuf {
    data_dir().join("corpus").join("manifest.json")
}
