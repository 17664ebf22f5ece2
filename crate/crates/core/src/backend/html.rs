use serde::Serialize;

/// Title and meta fields of a page; empty when absent.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PageMeta {
    pub title: String,
    pub meta_keywords: Vec<String>,
    pub meta_description: String,
}

/// Tolerant scan for `<title>` and `<meta name=keywords|description>`.
/// Tag and attribute names are case-insensitive; attribute values may be
/// double-quoted, single-quoted or bare. Never fails.
pub fn extract_page_meta(html: &str) -> PageMeta {
    let lower = html.to_ascii_lowercase();
    let mut meta = PageMeta::default();

    if let Some(open) = find_tag(&lower, "title", 0) {
        if let Some(gt) = lower[open..].find('>') {
            let start = open + gt + 1;
            let end = lower[start..].find("</title").map_or(lower.len(), |e| start + e);
            meta.title = clean_text(&html[start..end]);
        }
    }

    let mut from = 0;
    while let Some(open) = find_tag(&lower, "meta", from) {
        let end = lower[open..].find('>').map_or(lower.len(), |e| open + e);
        let attrs = parse_attributes(&html[open + 5..end]);
        from = end;
        let get = |name: &str| attrs.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_str());
        let (Some(name), Some(content)) = (get("name"), get("content")) else {
            continue;
        };
        match name.trim().to_ascii_lowercase().as_str() {
            "keywords" if meta.meta_keywords.is_empty() => {
                meta.meta_keywords = decode_entities(content)
                    .split(',')
                    .map(|k| k.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase())
                    .filter(|k| !k.is_empty())
                    .collect();
            }
            "description" if meta.meta_description.is_empty() => {
                meta.meta_description = clean_text(content);
            }
            _ => {}
        }
    }
    meta
}

/// Visible text of a page: tags, comments, scripts and styles removed,
/// entities decoded, whitespace collapsed.
pub fn html_to_text(html: &str) -> String {
    let lower = html.to_ascii_lowercase();
    let mut out = String::with_capacity(html.len());
    let mut i = 0;
    while i < html.len() {
        let rest = &lower[i..];
        if rest.starts_with("<!--") {
            i = rest.find("-->").map_or(html.len(), |e| i + e + 3);
        } else if let Some(skip) = ["script", "style", "head"].iter().find(|t| tag_at(rest, t)) {
            let close = format!("</{skip}");
            i = match rest.find(&close) {
                Some(e) => i + e + rest[e..].find('>').map_or(rest.len() - e, |g| g + 1),
                None => html.len(),
            };
        } else if rest.starts_with('<')
            && rest[1..].starts_with(|c: char| c.is_ascii_alphabetic() || c == '/' || c == '!')
        {
            i = rest.find('>').map_or(html.len(), |e| i + e + 1);
            out.push(' ');
        } else {
            let first = rest.chars().next().map_or(1, char::len_utf8);
            let next = rest[first..].find('<').map_or(html.len(), |e| i + first + e);
            out.push_str(&html[i..next]);
            i = next;
        }
    }
    clean_text(&out)
}

fn tag_at(lower: &str, name: &str) -> bool {
    lower
        .strip_prefix('<')
        .and_then(|r| r.strip_prefix(name))
        .is_some_and(|r| r.is_empty() || r.starts_with(|c: char| c == '>' || c == '/' || c.is_ascii_whitespace()))
}

/// Byte offset of the next `<name` tag at or after `from`, outside
/// comments, scripts and styles.
fn find_tag(lower: &str, name: &str, from: usize) -> Option<usize> {
    let mut at = from;
    while let Some(pos) = lower[at..].find('<') {
        let start = at + pos;
        let rest = &lower[start..];
        if tag_at(rest, name) {
            return Some(start);
        }
        at = if rest.starts_with("<!--") {
            start + rest.find("-->")? + 3
        } else if let Some(raw) = ["script", "style"].iter().find(|t| tag_at(rest, t)) {
            start + rest.find(&format!("</{raw}"))? + 2
        } else {
            start + 1
        };
    }
    None
}

fn parse_attributes(src: &str) -> Vec<(String, String)> {
    let bytes = src.as_bytes();
    let mut attrs = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        while i < bytes.len() && (bytes[i].is_ascii_whitespace() || bytes[i] == b'/') {
            i += 1;
        }
        let name_start = i;
        while i < bytes.len() && !bytes[i].is_ascii_whitespace() && !matches!(bytes[i], b'=' | b'/' | b'>') {
            i += 1;
        }
        if i == name_start {
            i += 1;
            continue;
        }
        let name = src[name_start..i].to_ascii_lowercase();
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i >= bytes.len() || bytes[i] != b'=' {
            attrs.push((name, String::new()));
            continue;
        }
        i += 1;
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        let value = match bytes.get(i) {
            Some(&q @ (b'"' | b'\'')) => {
                let start = i + 1;
                let end = src[start..].find(q as char).map_or(src.len(), |e| start + e);
                i = end + 1;
                &src[start..end]
            }
            _ => {
                let start = i;
                while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
                    i += 1;
                }
                &src[start..i]
            }
        };
        attrs.push((name, value.to_string()));
    }
    attrs
}

fn clean_text(s: &str) -> String {
    decode_entities(s).split_whitespace().collect::<Vec<_>>().join(" ")
}

fn decode_entities(s: &str) -> String {
    if !s.contains('&') {
        return s.to_string();
    }
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(amp) = rest.find('&') {
        out.push_str(&rest[..amp]);
        rest = &rest[amp..];
        let decoded = rest.find(';').filter(|e| *e <= 10).and_then(|e| {
            let entity = &rest[1..e];
            let c = match entity {
                "amp" => Some('&'),
                "lt" => Some('<'),
                "gt" => Some('>'),
                "quot" => Some('"'),
                "apos" => Some('\''),
                "nbsp" => Some(' '),
                _ => entity
                    .strip_prefix("#x")
                    .or_else(|| entity.strip_prefix("#X"))
                    .and_then(|h| u32::from_str_radix(h, 16).ok())
                    .or_else(|| entity.strip_prefix('#').and_then(|d| d.parse().ok()))
                    .and_then(char::from_u32),
            };
            c.map(|c| (c, e + 1))
        });
        match decoded {
            Some((c, len)) => {
                out.push(c);
                rest = &rest[len..];
            }
            None => {
                out.push('&');
                rest = &rest[1..];
            }
        }
    }
    out.push_str(rest);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn title_and_keywords() {
        let m =
            extract_page_meta(r#"<title>Dept of CSE</title><meta name="keywords" content="anna university, faculty">"#);
        assert_eq!(m.title, "Dept of CSE");
        assert_eq!(m.meta_keywords, ["anna university", "faculty"]);
        assert_eq!(m.meta_description, "");
    }

    #[test]
    fn empty_input() {
        assert_eq!(extract_page_meta(""), PageMeta::default());
    }

    #[test]
    fn case_and_quoting() {
        assert_eq!(extract_page_meta("<TITLE>X</TITLE>").title, "X");
        let m = extract_page_meta(
            "<META content='Faculty &amp; staff list' NAME=Description><meta name=keywords content=a,B>",
        );
        assert_eq!(m.meta_description, "Faculty & staff list");
        assert_eq!(m.meta_keywords, ["a", "b"]);
    }

    #[test]
    fn malformed_input() {
        for html in [
            "<title>",
            "<meta name=",
            "<meta name='x",
            "<<<>>>",
            "<title>a</tit",
            "&#xZZ; &",
            "<meta\u{e9}>",
        ] {
            let _ = extract_page_meta(html);
            let _ = html_to_text(html);
        }
        assert_eq!(extract_page_meta("<title>open").title, "open");
        assert_eq!(extract_page_meta("<titles>no</titles>").title, "");
    }

    #[test]
    fn visible_text() {
        let html = "<html><head><title>T</title></head><body><script>var x = 1;</script>\
                    <h1>Faculty</h1><!-- hidden --><p>Dr.&nbsp;A &lt;Professor&gt;</p>a < b</body></html>";
        assert_eq!(html_to_text(html), "Faculty Dr. A <Professor> a < b");
    }
}
