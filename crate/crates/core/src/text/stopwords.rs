use std::collections::HashSet;

use super::tagger::TaggedToken;

/// Lemmas removed before expansion.
#[derive(Debug, Clone, Default)]
pub struct StopList {
    terms: HashSet<String>,
}

impl StopList {
    /// One term per line; `#` starts a comment.
    pub fn parse(text: &str) -> Self {
        let terms = text
            .lines()
            .map(|line| line.split('#').next().unwrap_or("").trim().to_lowercase())
            .filter(|t| !t.is_empty())
            .collect();
        Self { terms }
    }

    pub fn from_terms<I, S>(terms: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self {
            terms: terms.into_iter().map(|t| t.as_ref().to_lowercase()).collect(),
        }
    }

    pub fn contains(&self, lemma: &str) -> bool {
        self.terms.contains(lemma)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

pub fn remove_stop_words(tokens: &[TaggedToken], stoplist: &StopList) -> Vec<TaggedToken> {
    tokens
        .iter()
        .filter(|t| !stoplist.contains(t.lemma()))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::text::tagger::pos_tag;
    use crate::text::tokenize::tokenize;

    fn filtered(raw: &str, stop: &StopList) -> Vec<String> {
        let tagged = pos_tag(&tokenize(raw), &bundled::tag_lexicon());
        remove_stop_words(&tagged, stop)
            .into_iter()
            .map(|t| t.token.lemma)
            .collect()
    }

    #[test]
    fn bundled_list_filters_trace_query() {
        let stop = bundled::stoplist();
        assert_eq!(
            filtered("list the teaching staff in anna university", &stop),
            ["teaching", "staff", "anna", "university"]
        );
        assert!(filtered("", &stop).is_empty());
    }

    #[test]
    fn identity_without_stop_words() {
        let stop = bundled::stoplist();
        assert_eq!(
            filtered("faculty anna university", &stop),
            ["faculty", "anna", "university"]
        );
    }

    #[test]
    fn parse_handles_comments() {
        let stop = StopList::parse("# header\nThe\nof  # trailing\n\n");
        assert_eq!(stop.len(), 2);
        assert!(stop.contains("the"));
        assert!(stop.contains("of"));
    }
}
