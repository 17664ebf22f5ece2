//! Lexer and parser for the Turtle subset exported by ontology editors.
//!
//! Supports `@prefix`/`PREFIX` and `@base`/`BASE` directives, IRIs, prefixed
//! names, `a`, string literals (short and long form, language tags,
//! datatypes), numbers and booleans, `;`/`,` abbreviations, blank node
//! labels, blank node property lists and collections. Triples are produced
//! with fully expanded IRIs.

use std::collections::HashMap;

use super::OntologyError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Iri(String),
    Blank(String),
    Literal { value: String, lang: Option<String> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triple {
    pub subject: Term,
    pub predicate: String,
    pub object: Term,
    pub line: usize,
}

#[derive(Debug, Default)]
pub struct Document {
    pub prefixes: Vec<(String, String)>,
    pub triples: Vec<Triple>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Iri(String),
    PName(String, String),
    A,
    Literal(String),
    LangTag(String),
    DoubleCaret,
    Number(String),
    Bool(bool),
    Blank(String),
    PrefixKw { sparql: bool },
    BaseKw { sparql: bool },
    Dot,
    Semicolon,
    Comma,
    LBracket,
    RBracket,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    _src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
            _src: src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.chars.get(self.pos + n).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn error(&self, line: usize, col: usize, message: impl Into<String>) -> OntologyError {
        OntologyError::Syntax {
            line,
            column: col,
            message: message.into(),
        }
    }

    fn tokens(mut self) -> Result<Vec<Spanned>, OntologyError> {
        let mut out = Vec::new();
        loop {
            self.skip_trivia();
            let (line, col) = (self.line, self.col);
            let Some(c) = self.peek() else {
                return Ok(out);
            };
            let tok = match c {
                '<' => self.iri(line, col)?,
                '"' | '\'' => self.string(line, col)?,
                '@' => self.at_word(line, col)?,
                '.' if !self.peek_at(1).is_some_and(|d| d.is_ascii_digit()) => {
                    self.bump();
                    Tok::Dot
                }
                ';' => {
                    self.bump();
                    Tok::Semicolon
                }
                ',' => {
                    self.bump();
                    Tok::Comma
                }
                '[' => {
                    self.bump();
                    Tok::LBracket
                }
                ']' => {
                    self.bump();
                    Tok::RBracket
                }
                '(' => {
                    self.bump();
                    Tok::LParen
                }
                ')' => {
                    self.bump();
                    Tok::RParen
                }
                '^' if self.peek_at(1) == Some('^') => {
                    self.bump();
                    self.bump();
                    Tok::DoubleCaret
                }
                '_' if self.peek_at(1) == Some(':') => {
                    self.bump();
                    self.bump();
                    Tok::Blank(self.name_chars())
                }
                c if c.is_ascii_digit() || c == '+' || c == '-' || c == '.' => self.number(line, col)?,
                c if c.is_alphabetic() || c == ':' || c == '_' => self.word(line, col)?,
                other => return Err(self.error(line, col, format!("unexpected character `{other}`"))),
            };
            out.push(Spanned { tok, line, col });
        }
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn iri(&mut self, line: usize, col: usize) -> Result<Tok, OntologyError> {
        self.bump();
        let mut iri = String::new();
        loop {
            match self.bump() {
                Some('>') => return Ok(Tok::Iri(iri)),
                Some(c) if c.is_whitespace() => return Err(self.error(line, col, "whitespace inside IRI")),
                Some(c) => iri.push(c),
                None => return Err(self.error(line, col, "unterminated IRI")),
            }
        }
    }

    fn string(&mut self, line: usize, col: usize) -> Result<Tok, OntologyError> {
        let quote = self.bump().unwrap_or('"');
        let long = self.peek() == Some(quote) && self.peek_at(1) == Some(quote);
        if long {
            self.bump();
            self.bump();
        } else if self.peek() == Some(quote) {
            self.bump();
            return Ok(Tok::Literal(String::new()));
        }
        let mut value = String::new();
        loop {
            let Some(c) = self.bump() else {
                return Err(self.error(line, col, "unterminated string literal"));
            };
            match c {
                '\\' => {
                    let esc = self
                        .bump()
                        .ok_or_else(|| self.error(line, col, "unterminated escape"))?;
                    value.push(match esc {
                        'n' => '\n',
                        't' => '\t',
                        'r' => '\r',
                        'b' => '\u{8}',
                        'f' => '\u{c}',
                        'u' | 'U' => {
                            let len = if esc == 'u' { 4 } else { 8 };
                            let hex: String = (0..len).filter_map(|_| self.bump()).collect();
                            u32::from_str_radix(&hex, 16)
                                .ok()
                                .and_then(char::from_u32)
                                .ok_or_else(|| self.error(self.line, self.col, "bad unicode escape"))?
                        }
                        other => other,
                    });
                }
                '\n' if !long => return Err(self.error(line, col, "newline in short string")),
                c if c == quote => {
                    if !long {
                        return Ok(Tok::Literal(value));
                    }
                    if self.peek() == Some(quote) && self.peek_at(1) == Some(quote) {
                        self.bump();
                        self.bump();
                        return Ok(Tok::Literal(value));
                    }
                    value.push(c);
                }
                c => value.push(c),
            }
        }
    }

    fn at_word(&mut self, line: usize, col: usize) -> Result<Tok, OntologyError> {
        self.bump();
        let word = self.name_chars();
        match word.as_str() {
            "prefix" => Ok(Tok::PrefixKw { sparql: false }),
            "base" => Ok(Tok::BaseKw { sparql: false }),
            "" => Err(self.error(line, col, "empty language tag")),
            _ => Ok(Tok::LangTag(word)),
        }
    }

    fn number(&mut self, line: usize, col: usize) -> Result<Tok, OntologyError> {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            let is_dot_digit = c == '.' && self.peek_at(1).is_some_and(|d| d.is_ascii_digit());
            if c.is_ascii_digit() || c == '+' || c == '-' || c == 'e' || c == 'E' || is_dot_digit {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if s.chars().any(|c| c.is_ascii_digit()) {
            Ok(Tok::Number(s))
        } else {
            Err(self.error(line, col, format!("malformed number `{s}`")))
        }
    }

    /// Name characters; a trailing `.` is left for the statement terminator.
    fn name_chars(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            let continues = c.is_alphanumeric() || c == '_' || c == '-' || c == '%';
            let inner_dot = c == '.'
                && self
                    .peek_at(1)
                    .is_some_and(|d| d.is_alphanumeric() || d == '_' || d == '-');
            if continues || inner_dot {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        s
    }

    fn word(&mut self, line: usize, col: usize) -> Result<Tok, OntologyError> {
        let prefix = if self.peek() == Some(':') {
            String::new()
        } else {
            self.name_chars()
        };
        if self.peek() == Some(':') {
            self.bump();
            let mut local = String::new();
            loop {
                local.push_str(&self.name_chars());
                // colons are legal inside local names
                if self.peek() == Some(':') {
                    self.bump();
                    local.push(':');
                } else {
                    break;
                }
            }
            return Ok(Tok::PName(prefix, local));
        }
        match prefix.as_str() {
            "a" => Ok(Tok::A),
            "true" => Ok(Tok::Bool(true)),
            "false" => Ok(Tok::Bool(false)),
            w if w.eq_ignore_ascii_case("prefix") => Ok(Tok::PrefixKw { sparql: true }),
            w if w.eq_ignore_ascii_case("base") => Ok(Tok::BaseKw { sparql: true }),
            w => Err(self.error(line, col, format!("unexpected bare word `{w}`"))),
        }
    }
}

const RDF_FIRST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
const RDF_REST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";
const RDF_NIL: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil";
pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    prefixes: HashMap<String, String>,
    doc: Document,
    base: String,
    blank_counter: usize,
}

pub fn parse_document(src: &str) -> Result<Document, OntologyError> {
    let toks = Lexer::new(src).tokens()?;
    let mut parser = Parser {
        toks,
        pos: 0,
        prefixes: HashMap::new(),
        doc: Document::default(),
        base: String::new(),
        blank_counter: 0,
    };
    while parser.pos < parser.toks.len() {
        parser.statement()?;
    }
    Ok(parser.doc)
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|s| (s.line, s.col))
            .unwrap_or((1, 1))
    }

    fn error(&self, message: impl Into<String>) -> OntologyError {
        let (line, column) = self.here();
        OntologyError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), OntologyError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn statement(&mut self) -> Result<(), OntologyError> {
        match self.peek() {
            Some(Tok::PrefixKw { sparql }) => {
                let sparql = *sparql;
                self.pos += 1;
                let (prefix, local) = match self.next() {
                    Some(Tok::PName(p, l)) => (p, l),
                    _ => {
                        self.pos -= 1;
                        return Err(self.error("expected prefix name"));
                    }
                };
                if !local.is_empty() {
                    return Err(self.error("prefix name must end with `:`"));
                }
                let iri = match self.next() {
                    Some(Tok::Iri(i)) => self.resolve_relative(&i),
                    _ => {
                        self.pos -= 1;
                        return Err(self.error("expected IRI in prefix directive"));
                    }
                };
                if !sparql {
                    self.expect(Tok::Dot, "`.` after prefix directive")?;
                }
                self.prefixes.insert(prefix.clone(), iri.clone());
                self.doc.prefixes.retain(|(p, _)| *p != prefix);
                self.doc.prefixes.push((prefix, iri));
                Ok(())
            }
            Some(Tok::BaseKw { sparql }) => {
                let sparql = *sparql;
                self.pos += 1;
                match self.next() {
                    Some(Tok::Iri(i)) => self.base = self.resolve_relative(&i),
                    _ => {
                        self.pos -= 1;
                        return Err(self.error("expected IRI in base directive"));
                    }
                }
                if !sparql {
                    self.expect(Tok::Dot, "`.` after base directive")?;
                }
                Ok(())
            }
            _ => {
                let line = self.here().0;
                let subject = if self.peek() == Some(&Tok::LBracket) {
                    let s = self.blank_property_list(line)?;
                    if self.peek() == Some(&Tok::Dot) {
                        self.pos += 1;
                        return Ok(());
                    }
                    s
                } else {
                    self.subject()?
                };
                self.predicate_object_list(&subject, line)?;
                self.expect(Tok::Dot, "`.` at end of statement")
            }
        }
    }

    fn resolve_relative(&self, iri: &str) -> String {
        if iri.contains(':') || self.base.is_empty() {
            iri.to_string()
        } else {
            format!("{}{}", self.base, iri)
        }
    }

    fn pname(&self, prefix: &str, local: &str) -> Result<String, OntologyError> {
        match self.prefixes.get(prefix) {
            Some(ns) => Ok(format!("{ns}{local}")),
            None => {
                let (line, column) = self.here();
                Err(OntologyError::UndeclaredPrefix {
                    prefix: prefix.to_string(),
                    line,
                    column,
                })
            }
        }
    }

    fn fresh_blank(&mut self) -> Term {
        self.blank_counter += 1;
        Term::Blank(format!("genid{}", self.blank_counter))
    }

    fn subject(&mut self) -> Result<Term, OntologyError> {
        match self.peek().cloned() {
            Some(Tok::Iri(i)) => {
                self.pos += 1;
                Ok(Term::Iri(self.resolve_relative(&i)))
            }
            Some(Tok::PName(p, l)) => {
                let iri = self.pname(&p, &l)?;
                self.pos += 1;
                Ok(Term::Iri(iri))
            }
            Some(Tok::Blank(b)) => {
                self.pos += 1;
                Ok(Term::Blank(b))
            }
            Some(Tok::LParen) => {
                let line = self.here().0;
                self.collection(line)
            }
            _ => Err(self.error("expected subject")),
        }
    }

    fn predicate_object_list(&mut self, subject: &Term, line: usize) -> Result<(), OntologyError> {
        loop {
            let predicate = match self.peek().cloned() {
                Some(Tok::A) => {
                    self.pos += 1;
                    RDF_TYPE.to_string()
                }
                Some(Tok::Iri(i)) => {
                    self.pos += 1;
                    self.resolve_relative(&i)
                }
                Some(Tok::PName(p, l)) => {
                    let iri = self.pname(&p, &l)?;
                    self.pos += 1;
                    iri
                }
                _ => return Err(self.error("expected predicate")),
            };
            loop {
                let object = self.object(line)?;
                self.doc.triples.push(Triple {
                    subject: subject.clone(),
                    predicate: predicate.clone(),
                    object,
                    line,
                });
                if self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            // one or more `;`, possibly trailing before `.` or `]`
            let mut saw_semicolon = false;
            while self.peek() == Some(&Tok::Semicolon) {
                self.pos += 1;
                saw_semicolon = true;
            }
            if !saw_semicolon || matches!(self.peek(), Some(Tok::Dot) | Some(Tok::RBracket) | None) {
                return Ok(());
            }
        }
    }

    fn object(&mut self, line: usize) -> Result<Term, OntologyError> {
        match self.peek().cloned() {
            Some(Tok::Literal(value)) => {
                self.pos += 1;
                let mut lang = None;
                match self.peek().cloned() {
                    Some(Tok::LangTag(tag)) => {
                        self.pos += 1;
                        lang = Some(tag);
                    }
                    Some(Tok::DoubleCaret) => {
                        self.pos += 1;
                        match self.next() {
                            Some(Tok::Iri(_)) => {}
                            Some(Tok::PName(p, l)) => {
                                self.pos -= 1;
                                self.pname(&p, &l)?;
                                self.pos += 1;
                            }
                            _ => {
                                self.pos -= 1;
                                return Err(self.error("expected datatype IRI"));
                            }
                        }
                    }
                    _ => {}
                }
                Ok(Term::Literal { value, lang })
            }
            Some(Tok::Number(n)) => {
                self.pos += 1;
                Ok(Term::Literal { value: n, lang: None })
            }
            Some(Tok::Bool(b)) => {
                self.pos += 1;
                Ok(Term::Literal {
                    value: b.to_string(),
                    lang: None,
                })
            }
            Some(Tok::LBracket) => self.blank_property_list(line),
            Some(Tok::LParen) => self.collection(line),
            Some(Tok::Iri(_)) | Some(Tok::PName(..)) | Some(Tok::Blank(_)) => self.subject(),
            _ => Err(self.error("expected object")),
        }
    }

    fn blank_property_list(&mut self, line: usize) -> Result<Term, OntologyError> {
        self.expect(Tok::LBracket, "`[`")?;
        let node = self.fresh_blank();
        if self.peek() != Some(&Tok::RBracket) {
            self.predicate_object_list(&node, line)?;
        }
        self.expect(Tok::RBracket, "`]`")?;
        Ok(node)
    }

    fn collection(&mut self, line: usize) -> Result<Term, OntologyError> {
        self.expect(Tok::LParen, "`(`")?;
        let mut items = Vec::new();
        while self.peek() != Some(&Tok::RParen) {
            if self.peek().is_none() {
                return Err(self.error("unterminated collection"));
            }
            items.push(self.object(line)?);
        }
        self.pos += 1;
        let mut head = Term::Iri(RDF_NIL.to_string());
        for item in items.into_iter().rev() {
            let node = self.fresh_blank();
            self.doc.triples.push(Triple {
                subject: node.clone(),
                predicate: RDF_FIRST.to_string(),
                object: item,
                line,
            });
            self.doc.triples.push(Triple {
                subject: node.clone(),
                predicate: RDF_REST.to_string(),
                object: head,
                line,
            });
            head = node;
        }
        Ok(head)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: &str = "@prefix : <http://x/#> .\n@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n";

    fn parse(body: &str) -> Result<Document, OntologyError> {
        parse_document(&format!("{P}{body}"))
    }

    #[test]
    fn abbreviations_expand() {
        let doc = parse(":A rdfs:label \"a\", \"b\"@en ; rdfs:subClassOf :B ;\n .").unwrap();
        assert_eq!(doc.triples.len(), 3);
        assert_eq!(doc.triples[0].subject, Term::Iri("http://x/#A".into()));
        assert_eq!(
            doc.triples[1].object,
            Term::Literal {
                value: "b".into(),
                lang: Some("en".into())
            }
        );
        assert_eq!(
            doc.triples[2].predicate,
            "http://www.w3.org/2000/01/rdf-schema#subClassOf"
        );
        assert_eq!(doc.prefixes.len(), 2);
    }

    #[test]
    fn literals_and_escapes() {
        let doc = parse(":A rdfs:comment \"\"\"multi\nline \"quoted\" \"\"\" , 'single' , \"t\\u00e9\\n\" , 42 , -1.5 , true , \"x\"^^rdfs:Literal .").unwrap();
        let values: Vec<_> = doc
            .triples
            .iter()
            .map(|t| match &t.object {
                Term::Literal { value, .. } => value.clone(),
                other => panic!("{other:?}"),
            })
            .collect();
        assert_eq!(
            values,
            ["multi\nline \"quoted\" ", "single", "té\n", "42", "-1.5", "true", "x"]
        );
    }

    #[test]
    fn blank_nodes_and_collections() {
        let doc = parse(
            ":A rdfs:subClassOf [ a :Restriction ; :onProperty :p ] .\n[ :x :y ] .\n:C :members ( :D :E ) .\n_:b1 :q :R .",
        )
        .unwrap();
        assert!(doc.triples.iter().any(|t| matches!(t.object, Term::Blank(_))));
        assert_eq!(doc.triples.iter().filter(|t| t.predicate == RDF_FIRST).count(), 2);
    }

    #[test]
    fn sparql_prefix_and_base() {
        let doc = parse_document("PREFIX ex: <http://e/>\n@base <http://b/> .\n<rel> ex:p ex:o .").unwrap();
        assert_eq!(doc.triples[0].subject, Term::Iri("http://b/rel".into()));
    }

    #[test]
    fn comments_and_dotted_local_names() {
        let doc = parse("# c\n:M.B.A rdfs:label \"m.b.a\" . # trailing\n").unwrap();
        assert_eq!(doc.triples[0].subject, Term::Iri("http://x/#M.B.A".into()));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse(":A rdfs:label \"x\"") {
            Err(OntologyError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse(":A rdfs:label \"x\" .\n:B ? :C .") {
            Err(OntologyError::Syntax { line, column, .. }) => assert_eq!((line, column), (4, 4)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse(":A rdfs:label \"open"),
            Err(OntologyError::Syntax { .. })
        ));
        assert!(matches!(
            parse("<http://a b> :p :o ."),
            Err(OntologyError::Syntax { .. })
        ));
    }

    #[test]
    fn undeclared_prefix() {
        match parse(":A owl:equivalentClass :B .") {
            Err(OntologyError::UndeclaredPrefix { prefix, line, column }) => {
                assert_eq!(prefix, "owl");
                assert_eq!((line, column), (3, 4));
            }
            other => panic!("{other:?}"),
        }
    }
}
