//! WordNet database reader: synset lookup and Morphy-style base forms.
//!
//! Reads the standard WordNet 3.x flat files (`index.<pos>`, `data.<pos>`,
//! `<pos>.exc`). Header lines in the data and index files start with a space
//! and are skipped.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WordNetPos {
    Noun,
    Verb,
    Adj,
    Adv,
}

impl WordNetPos {
    pub const ALL: [WordNetPos; 4] = [Self::Noun, Self::Verb, Self::Adj, Self::Adv];

    pub fn file_suffix(self) -> &'static str {
        match self {
            Self::Noun => "noun",
            Self::Verb => "verb",
            Self::Adj => "adj",
            Self::Adv => "adv",
        }
    }

    fn from_code(c: &str) -> Option<Self> {
        match c {
            "n" => Some(Self::Noun),
            "v" => Some(Self::Verb),
            "a" | "s" => Some(Self::Adj),
            "r" => Some(Self::Adv),
            _ => None,
        }
    }

    fn detachment_rules(self) -> &'static [(&'static str, &'static str)] {
        match self {
            Self::Noun => &[
                ("s", ""),
                ("ses", "s"),
                ("xes", "x"),
                ("zes", "z"),
                ("ches", "ch"),
                ("shes", "sh"),
                ("men", "man"),
                ("ies", "y"),
            ],
            Self::Verb => &[
                ("s", ""),
                ("ies", "y"),
                ("es", "e"),
                ("es", ""),
                ("ed", "e"),
                ("ed", ""),
                ("ing", "e"),
                ("ing", ""),
            ],
            Self::Adj => &[("er", ""), ("est", ""), ("er", "e"), ("est", "e")],
            Self::Adv => &[],
        }
    }
}

/// Synset identity: part of speech plus byte offset in `data.<pos>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SynsetId {
    pub pos: WordNetPos,
    pub offset: u64,
}

impl fmt::Display for SynsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{:08}", self.pos.file_suffix(), self.offset)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Synset {
    pub id: SynsetId,
    /// Lowercase lemmas, multi-word lemmas joined by underscores.
    pub lemmas: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SynonymEntry {
    pub lemma: String,
    pub synset: SynsetId,
}

#[derive(Debug, thiserror::Error)]
pub enum LexiconError {
    #[error("missing WordNet file {0}")]
    MissingFile(PathBuf),
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// In-memory WordNet file contents keyed by file name (`index.noun`, ...).
#[derive(Debug, Clone, Default)]
pub struct WordNetSources {
    files: HashMap<String, String>,
}

impl WordNetSources {
    pub fn insert(&mut self, name: &str, contents: &str) {
        self.files.insert(name.to_string(), contents.to_string());
    }

    fn get(&self, name: &str) -> Option<&str> {
        self.files.get(name).map(String::as_str)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    index: HashMap<(WordNetPos, String), Vec<SynsetId>>,
    synsets: HashMap<SynsetId, Synset>,
    exceptions: HashMap<(WordNetPos, String), Vec<String>>,
}

/// Loads a WordNet database directory.
pub fn load_wordnet(dir: &Path) -> Result<Lexicon, LexiconError> {
    Lexicon::load(dir)
}

impl Lexicon {
    /// Noun and verb index/data files are required; adjective and adverb
    /// files and all exception lists are optional.
    pub fn load(dir: &Path) -> Result<Self, LexiconError> {
        let mut sources = WordNetSources::default();
        for pos in WordNetPos::ALL {
            let required = matches!(pos, WordNetPos::Noun | WordNetPos::Verb);
            let index_name = format!("index.{}", pos.file_suffix());
            let data_name = format!("data.{}", pos.file_suffix());
            let index_path = dir.join(&index_name);
            if !required && !index_path.exists() {
                continue;
            }
            for name in [index_name, data_name] {
                let path = dir.join(&name);
                sources.insert(&name, &read(&path)?);
            }
            let exc_name = format!("{}.exc", pos.file_suffix());
            let exc_path = dir.join(&exc_name);
            if exc_path.exists() {
                sources.insert(&exc_name, &read(&exc_path)?);
            }
        }
        Self::from_sources(&sources)
    }

    pub fn from_sources(sources: &WordNetSources) -> Result<Self, LexiconError> {
        let mut lexicon = Lexicon::default();
        for pos in WordNetPos::ALL {
            let suffix = pos.file_suffix();
            let index_name = format!("index.{suffix}");
            let data_name = format!("data.{suffix}");
            let (index, data) = match (sources.get(&index_name), sources.get(&data_name)) {
                (Some(i), Some(d)) => (i, d),
                (None, None) if !matches!(pos, WordNetPos::Noun | WordNetPos::Verb) => continue,
                (None, _) => return Err(LexiconError::MissingFile(index_name.into())),
                (_, None) => return Err(LexiconError::MissingFile(data_name.into())),
            };
            lexicon.parse_data(pos, &data_name, data)?;
            lexicon.parse_index(pos, &index_name, &data_name, index)?;
            let exc_name = format!("{suffix}.exc");
            if let Some(exc) = sources.get(&exc_name) {
                lexicon.parse_exceptions(pos, &exc_name, exc)?;
            }
        }
        Ok(lexicon)
    }

    fn parse_data(&mut self, file_pos: WordNetPos, name: &str, text: &str) -> Result<(), ParseError> {
        for (n, line) in text.lines().enumerate() {
            if line.is_empty() || line.starts_with(' ') {
                continue;
            }
            let err = |msg: &str| ParseError::new(name, n + 1, msg);
            let head = line.split(" | ").next().unwrap_or(line);
            let fields: Vec<&str> = head.split_whitespace().collect();
            if fields.len() < 4 {
                return Err(err("truncated synset line"));
            }
            let offset: u64 = fields[0].parse().map_err(|_| err("bad synset offset"))?;
            fields[1]
                .parse::<u8>()
                .map_err(|_| err("bad lexicographer file number"))?;
            let pos = WordNetPos::from_code(fields[2]).ok_or_else(|| err("bad synset type"))?;
            if pos != file_pos {
                return Err(err("synset type does not match file"));
            }
            let w_cnt = usize::from_str_radix(fields[3], 16).map_err(|_| err("bad word count"))?;
            let words_end = 4 + 2 * w_cnt;
            if w_cnt == 0 || fields.len() < words_end + 1 {
                return Err(err("word list shorter than its count"));
            }
            let mut lemmas = Vec::with_capacity(w_cnt);
            for pair in fields[4..words_end].chunks(2) {
                u8::from_str_radix(pair[1], 16).map_err(|_| err("bad lex_id"))?;
                let word = pair[0].split('(').next().unwrap_or(pair[0]).to_lowercase();
                if word.is_empty() {
                    return Err(err("empty word"));
                }
                lemmas.push(word);
            }
            let p_cnt: usize = fields[words_end].parse().map_err(|_| err("bad pointer count"))?;
            let ptrs_end = words_end + 1 + 4 * p_cnt;
            if fields.len() < ptrs_end {
                return Err(err("pointer list shorter than its count"));
            }
            for ptr in fields[words_end + 1..ptrs_end].chunks(4) {
                ptr[1].parse::<u64>().map_err(|_| err("bad pointer offset"))?;
                WordNetPos::from_code(ptr[2]).ok_or_else(|| err("bad pointer pos"))?;
            }
            if file_pos == WordNetPos::Verb && fields.len() > ptrs_end {
                let f_cnt: usize = fields[ptrs_end].parse().map_err(|_| err("bad frame count"))?;
                if fields.len() < ptrs_end + 1 + 3 * f_cnt {
                    return Err(err("frame list shorter than its count"));
                }
            }
            let id = SynsetId { pos, offset };
            self.synsets.insert(id, Synset { id, lemmas });
        }
        Ok(())
    }

    fn parse_index(&mut self, pos: WordNetPos, name: &str, data_name: &str, text: &str) -> Result<(), ParseError> {
        for (n, line) in text.lines().enumerate() {
            if line.is_empty() || line.starts_with(' ') {
                continue;
            }
            let err = |msg: String| ParseError::new(name, n + 1, msg);
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() < 6 {
                return Err(err("truncated index line".into()));
            }
            let lemma = fields[0].to_lowercase();
            if WordNetPos::from_code(fields[1]) != Some(pos) {
                return Err(err(format!("pos `{}` does not match file", fields[1])));
            }
            let synset_cnt: usize = fields[2].parse().map_err(|_| err("bad synset_cnt".into()))?;
            let p_cnt: usize = fields[3].parse().map_err(|_| err("bad p_cnt".into()))?;
            let offsets_start = 4 + p_cnt + 2;
            if fields.len() != offsets_start + synset_cnt {
                return Err(err(format!(
                    "expected {} fields, found {}",
                    offsets_start + synset_cnt,
                    fields.len()
                )));
            }
            for f in &fields[4 + p_cnt..offsets_start] {
                f.parse::<usize>().map_err(|_| err("bad sense count".into()))?;
            }
            let mut ids = Vec::with_capacity(synset_cnt);
            for f in &fields[offsets_start..] {
                let offset: u64 = f.parse().map_err(|_| err(format!("bad offset `{f}`")))?;
                let id = SynsetId { pos, offset };
                if !self.synsets.contains_key(&id) {
                    return Err(err(format!("offset {f} not found in {data_name}")));
                }
                ids.push(id);
            }
            self.index.insert((pos, lemma), ids);
        }
        Ok(())
    }

    fn parse_exceptions(&mut self, pos: WordNetPos, name: &str, text: &str) -> Result<(), ParseError> {
        for (n, line) in text.lines().enumerate() {
            let mut fields = line.split_whitespace();
            let Some(inflected) = fields.next() else {
                continue;
            };
            let bases: Vec<String> = fields.map(str::to_lowercase).collect();
            if bases.is_empty() {
                return Err(ParseError::new(name, n + 1, "exception without base form"));
            }
            self.exceptions
                .entry((pos, inflected.to_lowercase()))
                .or_default()
                .extend(bases);
        }
        Ok(())
    }

    pub fn contains(&self, lemma: &str, pos: WordNetPos) -> bool {
        self.index.contains_key(&(pos, normalize(lemma)))
    }

    /// Number of index entries for `pos`.
    pub fn index_len(&self, pos: WordNetPos) -> usize {
        self.index.keys().filter(|(p, _)| *p == pos).count()
    }

    pub fn synset(&self, id: SynsetId) -> Option<&Synset> {
        self.synsets.get(&id)
    }

    /// Synsets listing `lemma` exactly (no morphology).
    pub fn lookup(&self, lemma: &str, pos: WordNetPos) -> Vec<&Synset> {
        self.index
            .get(&(pos, normalize(lemma)))
            .map(|ids| ids.iter().filter_map(|id| self.synsets.get(id)).collect())
            .unwrap_or_default()
    }

    /// Indexed base forms of `word`: exception-list entries first, then the
    /// word itself, then the detachment-rule candidates.
    pub fn base_forms(&self, word: &str, pos: WordNetPos) -> Vec<String> {
        let word = normalize(word);
        let mut forms: Vec<String> = Vec::new();
        let mut push = |form: String| {
            if self.index.contains_key(&(pos, form.clone())) && !forms.contains(&form) {
                forms.push(form);
            }
        };
        if let Some(bases) = self.exceptions.get(&(pos, word.clone())) {
            bases.iter().cloned().for_each(&mut push);
        }
        push(word.clone());
        for (suffix, ending) in pos.detachment_rules() {
            if let Some(stem) = word.strip_suffix(suffix) {
                if !stem.is_empty() {
                    push(format!("{stem}{ending}"));
                }
            }
        }
        forms
    }

    /// Co-members of every synset containing a base form of `lemma`,
    /// excluding the lemma and its base forms, ordered by synset then lemma.
    pub fn synonyms(&self, lemma: &str, pos: WordNetPos) -> Vec<SynonymEntry> {
        let bases = self.base_forms(lemma, pos);
        let own: HashSet<String> = bases.iter().cloned().chain([normalize(lemma)]).collect();
        let mut entries: Vec<SynonymEntry> = bases
            .iter()
            .filter_map(|b| self.index.get(&(pos, b.clone())))
            .flatten()
            .filter_map(|id| self.synsets.get(id))
            .flat_map(|s| {
                s.lemmas.iter().filter(|l| !own.contains(*l)).map(|l| SynonymEntry {
                    lemma: l.clone(),
                    synset: s.id,
                })
            })
            .collect();
        entries.sort_by(|a, b| a.synset.cmp(&b.synset).then_with(|| a.lemma.cmp(&b.lemma)));
        let mut seen = HashSet::new();
        entries.retain(|e| seen.insert(e.lemma.clone()));
        entries
    }
}

fn normalize(word: &str) -> String {
    word.trim().to_lowercase().replace(' ', "_")
}

fn read(path: &Path) -> Result<String, LexiconError> {
    if !path.exists() {
        return Err(LexiconError::MissingFile(path.to_path_buf()));
    }
    fs::read_to_string(path).map_err(|source| LexiconError::Io {
        path: path.to_path_buf(),
        source,
    })
}
