use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::tokenize::{is_abbreviation, Token};
use crate::error::ParseError;

/// Penn-Treebank-style part-of-speech tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PosTag {
    NN,
    NNS,
    NNP,
    VB,
    VBG,
    VBD,
    VBZ,
    DT,
    IN,
    JJ,
    CC,
    WRB,
    WP,
    TO,
    CD,
    OTHER,
}

impl PosTag {
    pub fn is_noun(self) -> bool {
        matches!(self, PosTag::NN | PosTag::NNS | PosTag::NNP)
    }

    pub fn is_verb(self) -> bool {
        matches!(self, PosTag::VB | PosTag::VBG | PosTag::VBD | PosTag::VBZ)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::NN => "NN",
            PosTag::NNS => "NNS",
            PosTag::NNP => "NNP",
            PosTag::VB => "VB",
            PosTag::VBG => "VBG",
            PosTag::VBD => "VBD",
            PosTag::VBZ => "VBZ",
            PosTag::DT => "DT",
            PosTag::IN => "IN",
            PosTag::JJ => "JJ",
            PosTag::CC => "CC",
            PosTag::WRB => "WRB",
            PosTag::WP => "WP",
            PosTag::TO => "TO",
            PosTag::CD => "CD",
            PosTag::OTHER => "OTHER",
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PosTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "NN" => PosTag::NN,
            "NNS" => PosTag::NNS,
            "NNP" => PosTag::NNP,
            "VB" => PosTag::VB,
            "VBG" => PosTag::VBG,
            "VBD" => PosTag::VBD,
            "VBZ" => PosTag::VBZ,
            "DT" => PosTag::DT,
            "IN" => PosTag::IN,
            "JJ" => PosTag::JJ,
            "CC" => PosTag::CC,
            "WRB" => PosTag::WRB,
            "WP" => PosTag::WP,
            "TO" => PosTag::TO,
            "CD" => PosTag::CD,
            "OTHER" => PosTag::OTHER,
            other => return Err(format!("unknown tag `{other}`")),
        })
    }
}

/// A token with its assigned tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TaggedToken {
    #[serde(flatten)]
    pub token: Token,
    pub tag: PosTag,
}

impl TaggedToken {
    pub fn lemma(&self) -> &str {
        &self.token.lemma
    }
}

/// Word to allowed tags, most preferred first.
#[derive(Debug, Clone, Default)]
pub struct TagLexicon {
    entries: HashMap<String, Vec<PosTag>>,
}

impl TagLexicon {
    /// Parses `word<TAB>TAG1,TAG2,...` lines. Blank lines and `#` comments are
    /// ignored; a repeated word appends its tags after the earlier ones.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut entries: HashMap<String, Vec<PosTag>> = HashMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let (word, tags) = line
                .split_once('\t')
                .ok_or_else(|| ParseError::new("tag lexicon", n + 1, "expected `word<TAB>tags`"))?;
            let word = word.trim().to_lowercase();
            if word.is_empty() {
                return Err(ParseError::new("tag lexicon", n + 1, "empty word"));
            }
            let slot = entries.entry(word).or_default();
            for tag in tags.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let tag = tag
                    .parse::<PosTag>()
                    .map_err(|e| ParseError::new("tag lexicon", n + 1, e))?;
                if !slot.contains(&tag) {
                    slot.push(tag);
                }
            }
            if slot.is_empty() {
                return Err(ParseError::new("tag lexicon", n + 1, "no tags"));
            }
        }
        Ok(Self { entries })
    }

    pub fn tags(&self, word: &str) -> Option<&[PosTag]> {
        self.entries.get(&word.to_lowercase()).map(Vec::as_slice)
    }

    pub fn preferred(&self, word: &str) -> Option<PosTag> {
        self.tags(word).and_then(|t| t.first().copied())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Assigns one tag per token: the lexicon's preferred tag when the word is
/// known, otherwise the unknown-word rules of [`guess_tag`].
pub fn pos_tag(tokens: &[Token], lexicon: &TagLexicon) -> Vec<TaggedToken> {
    tokens
        .iter()
        .map(|token| {
            let tag = lexicon.preferred(&token.lemma).unwrap_or_else(|| guess_tag(token));
            TaggedToken {
                token: token.clone(),
                tag,
            }
        })
        .collect()
}

/// Tag for a word missing from the lexicon.
pub fn guess_tag(token: &Token) -> PosTag {
    let word = token.lemma.as_str();
    let len = word.chars().count();
    if word.chars().all(|c| c.is_ascii_digit()) {
        return PosTag::CD;
    }
    if is_abbreviation(word) {
        return PosTag::NNP;
    }
    // Capitalised word in mid-query: a name the lexicon doesn't know.
    if token.index > 0 && token.text.chars().next().is_some_and(char::is_uppercase) {
        return PosTag::NNP;
    }
    if len > 4 && word.ends_with("ing") {
        PosTag::VBG
    } else if len > 3 && word.ends_with("ed") {
        PosTag::VBD
    } else if len > 3 && word.ends_with('s') && !word.ends_with("ss") {
        PosTag::NNS
    } else {
        PosTag::NN
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::tokenize::tokenize;

    fn tags(lex: &TagLexicon, raw: &str) -> Vec<PosTag> {
        pos_tag(&tokenize(raw), lex).into_iter().map(|t| t.tag).collect()
    }

    #[test]
    fn parses_lexicon_lines() {
        let lex = TagLexicon::parse("# comment\nlist\tNN,VB\n\nthe\tDT\nlist\tNNS\n").unwrap();
        assert_eq!(lex.len(), 2);
        assert_eq!(lex.tags("list").unwrap(), &[PosTag::NN, PosTag::VB, PosTag::NNS]);
        assert_eq!(lex.preferred("LIST"), Some(PosTag::NN));
    }

    #[test]
    fn rejects_bad_lines() {
        let err = TagLexicon::parse("ok\tNN\nbroken line\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(TagLexicon::parse("w\tXYZ\n").is_err());
        assert!(TagLexicon::parse("w\t\n").is_err());
    }

    #[test]
    fn first_tag_wins() {
        let lex = TagLexicon::parse("list\tNN,VB\nlists\tVBZ,NNS\n").unwrap();
        assert_eq!(tags(&lex, "list lists"), [PosTag::NN, PosTag::VBZ]);
    }

    #[test]
    fn unknown_word_rules() {
        let lex = TagLexicon::parse("teaching\tNN,VBG\n").unwrap();
        assert_eq!(tags(&lex, "doing"), [PosTag::VBG]);
        assert_eq!(tags(&lex, "teaching"), [PosTag::NN]);
        assert_eq!(tags(&lex, "colleges"), [PosTag::NNS]);
        assert_eq!(tags(&lex, "class"), [PosTag::NN]);
        assert_eq!(tags(&lex, "applied"), [PosTag::VBD]);
        assert_eq!(tags(&lex, "2012"), [PosTag::CD]);
        assert_eq!(tags(&lex, "M.B.A"), [PosTag::NNP]);
        assert_eq!(tags(&lex, "visit Chennai"), [PosTag::NN, PosTag::NNP]);
        assert_eq!(tags(&lex, "Chennai"), [PosTag::NN]);
        assert_eq!(tags(&lex, "is"), [PosTag::NN]);
        assert!(tags(&lex, "").is_empty());
    }
}
