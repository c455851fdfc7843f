//! Reading and writing triple files and prefix files.
//!
//! Two triple formats are supported:
//!
//! * the angle-comma format (`.trp`), one `<subject, predicate, object>`
//!   statement per line. Bare names are compact IRIs (`lanl:marko`) expanded
//!   through the prefix map; full IRIs are wrapped in angle brackets
//!   (`<http://example.org/x>`); literals are quoted with an optional
//!   `^^datatype` suffix (`"1"^^xsd:integer`, default `xsd:string`); blank
//!   nodes are written `_:label`.
//! * an N-Triples subset (`.nt`): `<s> <p> <o> .` with full IRIs only.
//!
//! Prefix files (`.pfx`) hold `prefix label: namespace` lines. In every format
//! lines starting with `#` are comments and blank lines are skipped.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{ParseError, SyntaxErrorKind, TermError};
use crate::prefix::{PrefixError, PrefixMap};
use crate::term::{Blank, Datatype, Iri, Literal, Term, Triple};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// `<s, p, o>` lines (`.trp`).
    AngleComma,
    /// `<s> <p> <o> .` lines (`.nt`).
    NTriples,
    /// `prefix label: namespace` lines (`.pfx`).
    Prefixes,
}

impl Format {
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()? {
            "trp" => Some(Format::AngleComma),
            "nt" => Some(Format::NTriples),
            "pfx" => Some(Format::Prefixes),
            _ => None,
        }
    }
}

/// The text of one input file together with its format.
#[derive(Clone, Debug)]
pub struct Document {
    text: String,
    format: Format,
}

impl Document {
    pub fn new(text: impl Into<String>, format: Format) -> Self {
        Document {
            text: text.into(),
            format,
        }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// Content lines with their 1-based line numbers; blank and comment lines
    /// are skipped.
    pub fn lines(&self) -> impl Iterator<Item = (usize, &str)> {
        content_lines(&self.text)
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

/// Triples parsed from a document plus every error encountered on the way.
#[derive(Clone, Debug, Default)]
pub struct Parsed {
    pub triples: Vec<Triple>,
    pub errors: Vec<ParseError>,
}

/// Parses a prefix file. Stops at the first error.
pub fn parse_prefix_map(text: &str) -> Result<PrefixMap, ParseError> {
    let mut map = PrefixMap::new();
    extend_prefix_map(&mut map, text)?;
    Ok(map)
}

/// Adds the prefixes declared in `text` to `map`. Redeclaring a label with the
/// namespace it already has is accepted.
pub fn extend_prefix_map(map: &mut PrefixMap, text: &str) -> Result<(), ParseError> {
    let mut declared = std::collections::HashSet::new();
    for (line_no, line) in content_lines(text) {
        let (label, namespace) = parse_prefix_line(line)
            .map_err(|m| ParseError::new(line_no, SyntaxErrorKind::MalformedPrefixLine(m)))?;
        if !declared.insert(label.to_owned()) {
            return Err(ParseError::new(
                line_no,
                SyntaxErrorKind::DuplicatePrefix(label.to_owned()),
            ));
        }
        map.insert(label, namespace).map_err(|e| {
            let kind = match e {
                PrefixError::Duplicate(l) => SyntaxErrorKind::DuplicatePrefix(l),
                other => SyntaxErrorKind::MalformedPrefixLine(other.to_string()),
            };
            ParseError::new(line_no, kind)
        })?;
    }
    Ok(())
}

fn parse_prefix_line(line: &str) -> Result<(&str, &str), String> {
    let rest = line
        .strip_prefix("prefix")
        .filter(|r| r.starts_with(char::is_whitespace))
        .ok_or_else(|| format!("expected `prefix <label>: <iri>`, found {line:?}"))?
        .trim_start();
    let (label, rest) = rest
        .split_once(':')
        .ok_or_else(|| "missing ':' after prefix label".to_owned())?;
    if !rest.starts_with(char::is_whitespace) {
        return Err("expected whitespace after `label:`".to_owned());
    }
    let namespace = rest.trim();
    let namespace = match namespace.strip_prefix('<') {
        Some(inner) => inner
            .strip_suffix('>')
            .ok_or_else(|| "unterminated '<' in namespace".to_owned())?,
        None => namespace,
    };
    if namespace.is_empty() || namespace.contains(char::is_whitespace) {
        return Err(format!("invalid namespace {namespace:?}"));
    }
    Ok((label, namespace))
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn take_until(&mut self, stop: impl Fn(char) -> bool) -> &'a str {
        let rest = self.rest();
        let end = rest.find(stop).unwrap_or(rest.len());
        self.pos += end;
        &rest[..end]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }
}

/// Reads the body of a quoted string; the opening quote is already consumed.
fn quoted_body(cur: &mut Cursor<'_>) -> Result<String, String> {
    let mut out = String::new();
    loop {
        match cur.bump() {
            None => return Err("unterminated string literal".to_owned()),
            Some('"') => return Ok(out),
            Some('\\') => match cur.bump() {
                Some('"') => out.push('"'),
                Some('\\') => out.push('\\'),
                Some('n') => out.push('\n'),
                Some('r') => out.push('\r'),
                Some('t') => out.push('\t'),
                Some(c) => return Err(format!("unsupported escape sequence \\{c}")),
                None => return Err("unterminated escape sequence".to_owned()),
            },
            Some(c) => out.push(c),
        }
    }
}

fn escape_literal(lexical: &str, out: &mut String) {
    for c in lexical.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
}

enum LineError {
    Malformed(String),
    Term(TermError),
}

impl From<TermError> for LineError {
    fn from(e: TermError) -> Self {
        LineError::Term(e)
    }
}

impl LineError {
    fn at(self, line: usize) -> ParseError {
        match self {
            LineError::Malformed(m) => ParseError::malformed(line, m),
            LineError::Term(e) => ParseError::new(line, e),
        }
    }
}

fn malformed(message: impl Into<String>) -> LineError {
    LineError::Malformed(message.into())
}

fn is_angle_comma_delim(c: char) -> bool {
    c == ',' || c.is_whitespace()
}

/// Reads one IRI in angle-comma syntax: `<full-iri>` or `label:local`.
fn angle_comma_iri(cur: &mut Cursor<'_>, prefixes: &PrefixMap) -> Result<Iri, LineError> {
    if cur.eat("<") {
        let text = cur.take_until(|c| c == '>');
        if !cur.eat(">") {
            return Err(malformed("unterminated '<' in IRI"));
        }
        return Ok(Iri::new(text)?);
    }
    let token = cur.take_until(is_angle_comma_delim);
    if token.is_empty() {
        return Err(malformed("expected a term"));
    }
    if !token.contains(':') {
        return Err(malformed(format!(
            "bare token {token:?} is not a compact IRI; literals must be quoted"
        )));
    }
    Ok(prefixes.expand(token)?)
}

fn angle_comma_term(cur: &mut Cursor<'_>, prefixes: &PrefixMap) -> Result<Term, LineError> {
    cur.skip_ws();
    if cur.eat("\"") {
        let lexical = quoted_body(cur).map_err(malformed)?;
        if cur.eat("^^") {
            let datatype = angle_comma_iri(cur, prefixes)?;
            return Ok(Term::Literal(Literal::new(&lexical, &datatype)?));
        }
        return Ok(Term::Literal(Literal::string(&lexical)));
    }
    if cur.eat("_:") {
        let label = cur.take_until(is_angle_comma_delim);
        return Ok(Term::Blank(Blank::new(label)?));
    }
    Ok(Term::Iri(angle_comma_iri(cur, prefixes)?))
}

fn angle_comma_line(line: &str, prefixes: &PrefixMap) -> Result<Triple, LineError> {
    let inner = line
        .strip_prefix('<')
        .and_then(|l| l.strip_suffix('>'))
        .ok_or_else(|| malformed("statement must be wrapped in '<' ... '>'"))?;
    let mut cur = Cursor::new(inner);
    let mut terms = Vec::with_capacity(3);
    loop {
        terms.push(angle_comma_term(&mut cur, prefixes)?);
        cur.skip_ws();
        if cur.at_end() {
            break;
        }
        if !cur.eat(",") {
            return Err(malformed(format!("expected ',' before {:?}", cur.rest())));
        }
        if terms.len() == 3 {
            return Err(malformed("more than three terms"));
        }
    }
    if terms.len() != 3 {
        return Err(malformed(format!(
            "expected 3 terms, found {}",
            terms.len()
        )));
    }
    let o = terms.pop().unwrap();
    let p = terms.pop().unwrap();
    let s = terms.pop().unwrap();
    Ok(Triple::new(s, p, o)?)
}

/// Parses one `<subject, predicate, object>` line. The line number in any
/// returned error is 1.
pub fn parse_triple_line(line: &str, prefixes: &PrefixMap) -> Result<Triple, ParseError> {
    angle_comma_line(line.trim(), prefixes).map_err(|e| e.at(1))
}

/// Parses a single term written as in an angle-comma line.
pub fn parse_term(token: &str, prefixes: &PrefixMap) -> Result<Term, ParseError> {
    let mut cur = Cursor::new(token.trim());
    let term = angle_comma_term(&mut cur, prefixes).map_err(|e| e.at(1))?;
    if !cur.at_end() {
        return Err(malformed(format!("trailing input {:?}", cur.rest())).at(1));
    }
    Ok(term)
}

fn ntriples_term(cur: &mut Cursor<'_>) -> Result<Term, LineError> {
    cur.skip_ws();
    if cur.eat("<") {
        let text = cur.take_until(|c| c == '>');
        if !cur.eat(">") {
            return Err(malformed("unterminated '<' in IRI"));
        }
        return Ok(Term::Iri(Iri::new(text)?));
    }
    if cur.eat("\"") {
        let lexical = quoted_body(cur).map_err(malformed)?;
        if cur.eat("^^") {
            if !cur.eat("<") {
                return Err(malformed("datatype must be a full IRI in '<' '>'"));
            }
            let text = cur.take_until(|c| c == '>');
            if !cur.eat(">") {
                return Err(malformed("unterminated '<' in datatype IRI"));
            }
            return Ok(Term::Literal(Literal::new(&lexical, &Iri::new(text)?)?));
        }
        if cur.peek() == Some('@') {
            return Err(malformed("language-tagged literals are not supported"));
        }
        return Ok(Term::Literal(Literal::string(&lexical)));
    }
    if cur.eat("_:") {
        let label = cur.take_until(|c| c.is_whitespace());
        return Ok(Term::Blank(Blank::new(label)?));
    }
    Err(malformed(format!("unexpected input {:?}", cur.rest())))
}

fn ntriples_line(line: &str) -> Result<Triple, LineError> {
    let mut cur = Cursor::new(line);
    let s = ntriples_term(&mut cur)?;
    let p = ntriples_term(&mut cur)?;
    let o = ntriples_term(&mut cur)?;
    cur.skip_ws();
    if !cur.eat(".") {
        return Err(malformed("statement must end with '.'"));
    }
    cur.skip_ws();
    if !cur.at_end() && !cur.rest().starts_with('#') {
        return Err(malformed(format!("trailing input {:?}", cur.rest())));
    }
    Ok(Triple::new(s, p, o)?)
}

/// Parses an N-Triples document, stopping at the first error.
pub fn parse_ntriples(text: &str) -> Result<Vec<Triple>, ParseError> {
    content_lines(text)
        .map(|(n, line)| ntriples_line(line).map_err(|e| e.at(n)))
        .collect()
}

/// Parses an angle-comma document, stopping at the first error.
pub fn parse_angle_comma(text: &str, prefixes: &PrefixMap) -> Result<Vec<Triple>, ParseError> {
    content_lines(text)
        .map(|(n, line)| angle_comma_line(line, prefixes).map_err(|e| e.at(n)))
        .collect()
}

/// Parses every line of a triple document, collecting all errors instead of
/// stopping at the first one. Prefix documents yield no triples.
pub fn parse_document(doc: &Document, prefixes: &PrefixMap) -> Parsed {
    let mut parsed = Parsed::default();
    for (n, line) in doc.lines() {
        let result = match doc.format {
            Format::AngleComma => angle_comma_line(line, prefixes),
            Format::NTriples => ntriples_line(line),
            Format::Prefixes => return parsed,
        };
        match result {
            Ok(t) => parsed.triples.push(t),
            Err(e) => parsed.errors.push(e.at(n)),
        }
    }
    parsed
}

fn write_iri(out: &mut String, iri: &Iri, prefixes: &PrefixMap) {
    match prefixes.compress(iri.as_str()) {
        Some((label, local)) => {
            let _ = write!(out, "{label}:{local}");
        }
        None => {
            let _ = write!(out, "<{}>", iri.as_str());
        }
    }
}

fn write_term(out: &mut String, term: &Term, prefixes: &PrefixMap) {
    match term {
        Term::Iri(iri) => write_iri(out, iri, prefixes),
        Term::Blank(b) => {
            let _ = write!(out, "_:{}", b.label());
        }
        Term::Literal(lit) => {
            out.push('"');
            escape_literal(lit.lexical(), out);
            out.push('"');
            if lit.datatype() != Datatype::String {
                out.push_str("^^");
                write_iri(out, &lit.datatype().iri(), prefixes);
            }
        }
    }
}

/// Renders a term the way it appears in angle-comma files and result tables.
pub fn serialize_term(term: &Term, prefixes: &PrefixMap) -> String {
    let mut out = String::new();
    write_term(&mut out, term, prefixes);
    out
}

/// Renders a triple in angle-comma form, compressing IRIs where a namespace
/// matches (longest match wins).
pub fn serialize_triple(t: &Triple, prefixes: &PrefixMap) -> String {
    let mut out = String::from("<");
    write_term(&mut out, t.subject(), prefixes);
    out.push_str(", ");
    write_iri(&mut out, t.predicate(), prefixes);
    out.push_str(", ");
    write_term(&mut out, t.object(), prefixes);
    out.push('>');
    out
}

fn write_nt_term(out: &mut String, term: &Term) {
    match term {
        Term::Iri(iri) => {
            let _ = write!(out, "<{}>", iri.as_str());
        }
        Term::Blank(b) => {
            let _ = write!(out, "_:{}", b.label());
        }
        Term::Literal(lit) => {
            out.push('"');
            escape_literal(lit.lexical(), out);
            let _ = write!(out, "\"^^<{}>", lit.datatype().iri_str());
        }
    }
}

/// Renders a triple as one N-Triples statement.
pub fn serialize_ntriple(t: &Triple) -> String {
    let mut out = String::new();
    write_nt_term(&mut out, t.subject());
    out.push(' ');
    let _ = write!(out, "<{}>", t.predicate().as_str());
    out.push(' ');
    write_nt_term(&mut out, t.object());
    out.push_str(" .");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Position;

    fn prefixes() -> PrefixMap {
        parse_prefix_map(
            "prefix lanl: http://www.lanl.gov/people#\n\
             prefix xsd: http://www.w3.org/2001/XMLSchema#\n",
        )
        .unwrap()
    }

    fn lanl(local: &str) -> Term {
        Term::iri(&format!("http://www.lanl.gov/people#{local}")).unwrap()
    }

    #[test]
    fn prefix_file() {
        let map = parse_prefix_map("prefix lanl: http://www.lanl.gov/people#").unwrap();
        assert_eq!(map.get("lanl"), Some("http://www.lanl.gov/people#"));
        assert!(parse_prefix_map("").unwrap().is_empty());
        let with_comments = "# header\n\nprefix a: <urn:a:>\n";
        assert_eq!(
            parse_prefix_map(with_comments).unwrap().get("a"),
            Some("urn:a:")
        );
    }

    #[test]
    fn duplicate_prefix_reports_line() {
        let err = parse_prefix_map(
            "prefix lanl: http://www.lanl.gov/people#\nprefix lanl: http://www.lanl.gov/people#",
        )
        .unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.kind, SyntaxErrorKind::DuplicatePrefix("lanl".into()));
    }

    #[test]
    fn malformed_prefix_lines() {
        for bad in [
            "prefx lanl: urn:x",
            "prefix lanl urn:x",
            "prefix lanl:urn:x",
            "prefix 1a: urn:x",
        ] {
            let err = parse_prefix_map(bad).unwrap_err();
            assert_eq!(err.line, 1, "{bad}");
            assert!(
                matches!(err.kind, SyntaxErrorKind::MalformedPrefixLine(_)),
                "{bad}"
            );
        }
    }

    #[test]
    fn single_terms() {
        let p = prefixes();
        assert_eq!(
            parse_term(" lanl:marko ", &p).unwrap(),
            Term::Iri(Iri::new("http://www.lanl.gov/people#marko").unwrap())
        );
        assert_eq!(
            parse_term("\"007\"^^xsd:integer", &p).unwrap(),
            Term::Literal(Literal::integer(7))
        );
        assert!(parse_term("lanl:a lanl:b", &p).is_err());
        assert!(parse_term("nope:a", &p).is_err());
    }

    #[test]
    fn lanl_triple_line() {
        let t = parse_triple_line("<lanl:marko, lanl:worksWith, lanl:jhw>", &prefixes()).unwrap();
        assert_eq!(t.subject(), &lanl("marko"));
        assert_eq!(Term::Iri(t.predicate().clone()), lanl("worksWith"));
        assert_eq!(t.object(), &lanl("jhw"));
    }

    #[test]
    fn triple_line_errors() {
        let p = prefixes();
        let arity = parse_triple_line("<lanl:marko, lanl:worksWith>", &p).unwrap_err();
        assert!(matches!(arity.kind, SyntaxErrorKind::MalformedLine(_)));
        let four = parse_triple_line("<lanl:a, lanl:b, lanl:c, lanl:d>", &p).unwrap_err();
        assert!(matches!(four.kind, SyntaxErrorKind::MalformedLine(_)));
        let brackets = parse_triple_line("lanl:a, lanl:b, lanl:c", &p).unwrap_err();
        assert!(matches!(brackets.kind, SyntaxErrorKind::MalformedLine(_)));
        let unquoted = parse_triple_line("<lanl:a, lanl:b, 42>", &p).unwrap_err();
        assert!(matches!(unquoted.kind, SyntaxErrorKind::MalformedLine(_)));
        let unknown = parse_triple_line("<zzz:a, lanl:b, lanl:c>", &p).unwrap_err();
        assert_eq!(
            unknown.kind,
            SyntaxErrorKind::Term(TermError::UnknownPrefix("zzz".into()))
        );
        let literal_subject =
            parse_triple_line("<\"1\"^^xsd:integer, lanl:p, lanl:o>", &p).unwrap_err();
        assert!(matches!(
            literal_subject.kind,
            SyntaxErrorKind::Term(TermError::Eq1Violation {
                position: Position::Subject,
                ..
            })
        ));
        let literal_predicate = parse_triple_line("<lanl:s, \"p\", lanl:o>", &p).unwrap_err();
        assert!(matches!(
            literal_predicate.kind,
            SyntaxErrorKind::Term(TermError::Eq1Violation {
                position: Position::Predicate,
                ..
            })
        ));
    }

    #[test]
    fn literals_and_full_iris() {
        let p = prefixes();
        let t = parse_triple_line(
            r#"<<http://x.org/a,b>, lanl:says, "he said \"hi\", twice">"#,
            &p,
        )
        .unwrap();
        assert_eq!(t.subject(), &Term::iri("http://x.org/a,b").unwrap());
        assert_eq!(
            t.object(),
            &Term::Literal(Literal::string("he said \"hi\", twice"))
        );
        let typed = parse_triple_line(r#"<lanl:a, lanl:age, "+042"^^xsd:integer>"#, &p).unwrap();
        assert_eq!(typed.object(), &Term::Literal(Literal::integer(42)));
        let bad = parse_triple_line(r#"<lanl:a, lanl:age, "x"^^xsd:integer>"#, &p).unwrap_err();
        assert!(matches!(
            bad.kind,
            SyntaxErrorKind::Term(TermError::InvalidLexical { .. })
        ));
    }

    #[test]
    fn ntriples() {
        let doc = "<http://a/s> <http://a/p> \"1\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n\
                   # comment\n\
                   _:b1 <http://a/p> <http://a/o> .\n";
        let triples = parse_ntriples(doc).unwrap();
        assert_eq!(triples.len(), 2);
        assert_eq!(triples[0].object(), &Term::Literal(Literal::integer(1)));
        assert!(parse_ntriples("").unwrap().is_empty());
        let err = parse_ntriples("\n<http://a/s> <http://a/p> <http://a/o>").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(matches!(err.kind, SyntaxErrorKind::MalformedLine(_)));
        let lit_subject = parse_ntriples("\"x\" <http://a/p> <http://a/o> .").unwrap_err();
        assert!(matches!(
            lit_subject.kind,
            SyntaxErrorKind::Term(TermError::Eq1Violation { .. })
        ));
    }

    #[test]
    fn collect_all_errors() {
        let doc = Document::new(
            "<lanl:a, lanl:b, lanl:c>\n<lanl:a, lanl:b>\n# ok\n<zzz:a, lanl:b, lanl:c>\n<lanl:x, lanl:y, lanl:z>",
            Format::AngleComma,
        );
        let parsed = parse_document(&doc, &prefixes());
        assert_eq!(parsed.triples.len(), 2);
        let lines: Vec<_> = parsed.errors.iter().map(|e| e.line).collect();
        assert_eq!(lines, vec![2, 4]);
    }

    #[test]
    fn serialize_lanl_triple() {
        let p = prefixes();
        let t = parse_triple_line("<lanl:marko, lanl:hasBodyPart, lanl:markos_arm>", &p).unwrap();
        assert_eq!(
            serialize_triple(&t, &p),
            "<lanl:marko, lanl:hasBodyPart, lanl:markos_arm>"
        );
        let unprefixed = Triple::new(
            Term::iri("urn:x:s").unwrap(),
            lanl("p"),
            Term::Literal(Literal::integer(-3)),
        )
        .unwrap();
        let text = serialize_triple(&unprefixed, &p);
        assert_eq!(text, "<<urn:x:s>, lanl:p, \"-3\"^^xsd:integer>");
        assert_eq!(parse_triple_line(&text, &p).unwrap(), unprefixed);
        let nt = serialize_ntriple(&unprefixed);
        assert_eq!(parse_ntriples(&nt).unwrap(), vec![unprefixed]);
    }
}
