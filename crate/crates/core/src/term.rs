//! Terms, triples and triple patterns.
//!
//! A [`Term`] is an IRI, a typed literal, or a blank node. A [`Triple`] can
//! only be built with a non-literal subject and an IRI predicate, so every
//! triple that exists in the program is a member of
//! `IRI-or-blank × IRI × (IRI ∪ Literal ∪ blank)`.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::TermError;
use crate::vocab::xsd;

/// An absolute identifier of the form `scheme:hierarchical-part[#fragment]`.
///
/// Equality, ordering and hashing use the full text only, byte for byte.
#[derive(Clone)]
pub struct Iri {
    text: Box<str>,
    scheme_end: usize,
    fragment_start: Option<usize>,
}

impl Iri {
    pub fn new(text: impl Into<String>) -> Result<Self, TermError> {
        let text: String = text.into();
        let malformed = |reason: &'static str| TermError::MalformedIri {
            text: text.clone(),
            reason,
        };
        let scheme_end = text
            .find(':')
            .ok_or_else(|| malformed("missing ':' after scheme"))?;
        let scheme = &text[..scheme_end];
        let mut chars = scheme.chars();
        match chars.next() {
            None => return Err(malformed("empty scheme")),
            Some(c) if !c.is_ascii_alphabetic() => {
                return Err(malformed("scheme must begin with a letter"))
            }
            _ => {}
        }
        if !chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.')) {
            return Err(malformed("invalid character in scheme"));
        }
        if text
            .chars()
            .any(|c| c.is_whitespace() || c.is_control() || matches!(c, '<' | '>' | '"'))
        {
            return Err(malformed(
                "whitespace, control character, '<', '>' or '\"' in IRI",
            ));
        }
        let fragment_start = text[scheme_end + 1..].find('#').map(|i| scheme_end + 1 + i);
        Ok(Iri {
            text: text.into_boxed_str(),
            scheme_end,
            fragment_start,
        })
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn scheme(&self) -> &str {
        &self.text[..self.scheme_end]
    }

    pub fn hierarchical_part(&self) -> &str {
        let end = self.fragment_start.unwrap_or(self.text.len());
        &self.text[self.scheme_end + 1..end]
    }

    pub fn fragment(&self) -> Option<&str> {
        self.fragment_start.map(|i| &self.text[i + 1..])
    }
}

/// Parses an IRI, splitting out scheme, hierarchical part and fragment.
pub fn make_iri(text: &str) -> Result<Iri, TermError> {
    Iri::new(text)
}

impl PartialEq for Iri {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

impl Eq for Iri {}

impl Hash for Iri {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.text.hash(state)
    }
}

impl PartialOrd for Iri {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Iri {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.text.cmp(&other.text)
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.text)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// The literal datatypes the store understands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Datatype {
    String,
    Integer,
    Double,
    Boolean,
    Date,
}

impl Datatype {
    pub const ALL: [Datatype; 5] = [
        Datatype::String,
        Datatype::Integer,
        Datatype::Double,
        Datatype::Boolean,
        Datatype::Date,
    ];

    pub fn from_iri(iri: &str) -> Option<Self> {
        Some(match iri {
            xsd::STRING => Datatype::String,
            xsd::INTEGER => Datatype::Integer,
            xsd::DOUBLE => Datatype::Double,
            xsd::BOOLEAN => Datatype::Boolean,
            xsd::DATE => Datatype::Date,
            _ => return None,
        })
    }

    pub fn iri_str(self) -> &'static str {
        match self {
            Datatype::String => xsd::STRING,
            Datatype::Integer => xsd::INTEGER,
            Datatype::Double => xsd::DOUBLE,
            Datatype::Boolean => xsd::BOOLEAN,
            Datatype::Date => xsd::DATE,
        }
    }

    pub fn iri(self) -> Iri {
        Iri::new(self.iri_str()).expect("xsd datatype IRIs are valid")
    }

    /// Returns the canonical lexical form of `lexical`, or `None` if it is not
    /// in the lexical space of this datatype.
    pub fn canonicalize(self, lexical: &str) -> Option<String> {
        match self {
            Datatype::String => Some(lexical.to_owned()),
            Datatype::Integer => canonical_integer(lexical),
            Datatype::Double => canonical_double(lexical),
            Datatype::Boolean => match lexical {
                "true" | "1" => Some("true".to_owned()),
                "false" | "0" => Some("false".to_owned()),
                _ => None,
            },
            Datatype::Date => canonical_date(lexical),
        }
    }
}

fn canonical_integer(lexical: &str) -> Option<String> {
    let (negative, digits) = match lexical.as_bytes().first()? {
        b'+' => (false, &lexical[1..]),
        b'-' => (true, &lexical[1..]),
        _ => (false, lexical),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let trimmed = digits.trim_start_matches('0');
    if trimmed.is_empty() {
        return Some("0".to_owned());
    }
    Some(if negative {
        format!("-{trimmed}")
    } else {
        trimmed.to_owned()
    })
}

fn is_decimal_double(lexical: &str) -> bool {
    let s = lexical.strip_prefix(['+', '-']).unwrap_or(lexical);
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], Some(&s[i + 1..])),
        None => (s, None),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if int_part.is_empty() && frac_part.is_empty() {
        return false;
    }
    if !digits(int_part) || !digits(frac_part) {
        return false;
    }
    match exponent {
        None => true,
        Some(e) => {
            let e = e.strip_prefix(['+', '-']).unwrap_or(e);
            !e.is_empty() && digits(e)
        }
    }
}

fn canonical_double(lexical: &str) -> Option<String> {
    let value: f64 = match lexical {
        "INF" | "+INF" => f64::INFINITY,
        "-INF" => f64::NEG_INFINITY,
        "NaN" => f64::NAN,
        _ if is_decimal_double(lexical) => lexical.parse().ok()?,
        _ => return None,
    };
    Some(format_double(value))
}

/// Formats a double as `mantissa.fractionE<exponent>`, e.g. `1.034E0`.
pub(crate) fn format_double(value: f64) -> String {
    if value.is_nan() {
        return "NaN".to_owned();
    }
    if value.is_infinite() {
        return if value > 0.0 { "INF" } else { "-INF" }.to_owned();
    }
    let formatted = format!("{value:E}");
    let (mantissa, exponent) = formatted
        .split_once('E')
        .expect("LowerExp output always contains an exponent");
    if mantissa.contains('.') {
        formatted
    } else {
        format!("{mantissa}.0E{exponent}")
    }
}

fn canonical_date(lexical: &str) -> Option<String> {
    let bytes = lexical.as_bytes();
    if bytes.len() != 10 || bytes[4] != b'-' || bytes[7] != b'-' {
        return None;
    }
    let num = |s: &str| -> Option<u32> {
        if s.bytes().all(|b| b.is_ascii_digit()) {
            s.parse().ok()
        } else {
            None
        }
    };
    let year = num(&lexical[..4])?;
    let month = num(&lexical[5..7])?;
    let day = num(&lexical[8..10])?;
    if year == 0 || !(1..=12).contains(&month) {
        return None;
    }
    let leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    let days_in_month = match month {
        2 if leap => 29,
        2 => 28,
        4 | 6 | 9 | 11 => 30,
        _ => 31,
    };
    if day == 0 || day > days_in_month {
        return None;
    }
    Some(lexical.to_owned())
}

/// A typed literal value in canonical lexical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    lexical: Box<str>,
    datatype: Datatype,
}

impl Literal {
    pub fn new(lexical: &str, datatype: &Iri) -> Result<Self, TermError> {
        let dt = Datatype::from_iri(datatype.as_str())
            .ok_or_else(|| TermError::UnsupportedDatatype(datatype.as_str().to_owned()))?;
        Self::typed(lexical, dt)
    }

    pub fn typed(lexical: &str, datatype: Datatype) -> Result<Self, TermError> {
        let canonical =
            datatype
                .canonicalize(lexical)
                .ok_or_else(|| TermError::InvalidLexical {
                    lexical: lexical.to_owned(),
                    datatype: datatype.iri_str(),
                })?;
        Ok(Literal {
            lexical: canonical.into_boxed_str(),
            datatype,
        })
    }

    pub fn string(value: &str) -> Self {
        Literal {
            lexical: value.into(),
            datatype: Datatype::String,
        }
    }

    pub fn integer(value: i64) -> Self {
        Literal {
            lexical: value.to_string().into_boxed_str(),
            datatype: Datatype::Integer,
        }
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> Datatype {
        self.datatype
    }
}

/// Builds a literal, canonicalizing its lexical form.
pub fn make_literal(lexical: &str, datatype: &Iri) -> Result<Literal, TermError> {
    Literal::new(lexical, datatype)
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}^^<{}>", self.lexical, self.datatype.iri_str())
    }
}

/// A blank node, identified by a label local to one graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Blank(Box<str>);

impl Blank {
    pub fn new(label: &str) -> Result<Self, TermError> {
        if label.is_empty()
            || !label
                .chars()
                .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
        {
            return Err(TermError::MalformedBlank(label.to_owned()));
        }
        Ok(Blank(label.into()))
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Blank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "_:{}", self.0)
    }
}

/// An RDF term. Equality is kind-sensitive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(Iri),
    Literal(Literal),
    Blank(Blank),
}

impl Term {
    pub fn iri(text: &str) -> Result<Self, TermError> {
        Iri::new(text).map(Term::Iri)
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(t) => t.fmt(f),
            Term::Literal(t) => t.fmt(f),
            Term::Blank(t) => t.fmt(f),
        }
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<Literal> for Term {
    fn from(lit: Literal) -> Self {
        Term::Literal(lit)
    }
}

impl From<Blank> for Term {
    fn from(blank: Blank) -> Self {
        Term::Blank(blank)
    }
}

/// Kind-sensitive term equality. Literals are canonical by construction, so
/// `"01"^^xsd:integer` and `"1"^^xsd:integer` compare equal.
pub fn term_equals(a: &Term, b: &Term) -> bool {
    a == b
}

/// Which slot of a triple a term occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Position {
    Subject,
    Predicate,
    Object,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Position::Subject => "subject",
            Position::Predicate => "predicate",
            Position::Object => "object",
        })
    }
}

/// A statement `⟨subject, predicate, object⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    subject: Term,
    predicate: Iri,
    object: Term,
}

impl Triple {
    /// Builds a triple, rejecting literal subjects and non-IRI predicates.
    pub fn new(subject: Term, predicate: Term, object: Term) -> Result<Self, TermError> {
        if subject.is_literal() {
            return Err(TermError::Eq1Violation {
                position: Position::Subject,
                term: format!("{subject:?}"),
            });
        }
        let predicate = match predicate {
            Term::Iri(iri) => iri,
            other => {
                return Err(TermError::Eq1Violation {
                    position: Position::Predicate,
                    term: format!("{other:?}"),
                })
            }
        };
        Ok(Triple {
            subject,
            predicate,
            object,
        })
    }

    pub fn from_iris(subject: Iri, predicate: Iri, object: Term) -> Self {
        Triple {
            subject: Term::Iri(subject),
            predicate,
            object,
        }
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Iri {
        &self.predicate
    }

    pub fn object(&self) -> &Term {
        &self.object
    }

    pub fn into_parts(self) -> (Term, Iri, Term) {
        (self.subject, self.predicate, self.object)
    }

    /// Checks membership in `(IRI ∪ blank) × IRI × (IRI ∪ Literal ∪ blank)`.
    ///
    /// Always true for a constructed triple; kept as an executable check for
    /// tests and for data arriving from outside the type system.
    pub fn is_well_formed(&self) -> bool {
        is_well_formed_parts(
            &self.subject,
            &Term::Iri(self.predicate.clone()),
            &self.object,
        )
    }
}

pub fn is_well_formed_parts(subject: &Term, predicate: &Term, _object: &Term) -> bool {
    matches!(subject, Term::Iri(_) | Term::Blank(_)) && matches!(predicate, Term::Iri(_))
}

/// A query variable, written `?name`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable(Box<str>);

impl Variable {
    pub fn new(name: &str) -> Result<Self, TermError> {
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(TermError::MalformedVariable(name.to_owned()));
        }
        Ok(Variable(name.into()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "?{}", self.0)
    }
}

/// One slot of a [`TriplePattern`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    Any,
    Var(Variable),
    Term(Term),
}

impl Slot {
    pub fn as_term(&self) -> Option<&Term> {
        match self {
            Slot::Term(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_var(&self) -> Option<&Variable> {
        match self {
            Slot::Var(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_bound(&self) -> bool {
        matches!(self, Slot::Term(_))
    }

    fn accepts(&self, term: &Term) -> bool {
        match self {
            Slot::Term(t) => t == term,
            Slot::Any | Slot::Var(_) => true,
        }
    }
}

impl From<Term> for Slot {
    fn from(t: Term) -> Self {
        Slot::Term(t)
    }
}

impl From<Option<Term>> for Slot {
    fn from(t: Option<Term>) -> Self {
        t.map_or(Slot::Any, Slot::Term)
    }
}

impl From<Variable> for Slot {
    fn from(v: Variable) -> Self {
        Slot::Var(v)
    }
}

/// A triple whose slots may be left open. Variables act as wildcards when a
/// pattern is matched on its own; join consistency is the query engine's job.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriplePattern {
    pub subject: Slot,
    pub predicate: Slot,
    pub object: Slot,
}

impl TriplePattern {
    pub fn new(
        subject: impl Into<Slot>,
        predicate: impl Into<Slot>,
        object: impl Into<Slot>,
    ) -> Self {
        TriplePattern {
            subject: subject.into(),
            predicate: predicate.into(),
            object: object.into(),
        }
    }

    pub fn any() -> Self {
        TriplePattern::new(Slot::Any, Slot::Any, Slot::Any)
    }

    pub fn exact(t: &Triple) -> Self {
        TriplePattern::new(
            t.subject.clone(),
            Term::Iri(t.predicate.clone()),
            t.object.clone(),
        )
    }

    pub fn slots(&self) -> [&Slot; 3] {
        [&self.subject, &self.predicate, &self.object]
    }

    /// Number of open (wildcard or variable) slots.
    pub fn open_slots(&self) -> usize {
        self.slots().iter().filter(|s| !s.is_bound()).count()
    }

    pub fn matches(&self, t: &Triple) -> bool {
        self.matches_parts(&t.subject, &t.predicate, &t.object)
    }

    pub fn matches_parts(&self, s: &Term, p: &Iri, o: &Term) -> bool {
        let p_ok = match &self.predicate {
            Slot::Term(Term::Iri(iri)) => iri == p,
            Slot::Term(_) => false,
            _ => true,
        };
        p_ok && self.subject.accepts(s) && self.object.accepts(o)
    }

    pub fn variables(&self) -> impl Iterator<Item = &Variable> {
        self.slots().into_iter().filter_map(Slot::as_var)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xsd_integer() -> Iri {
        Datatype::Integer.iri()
    }

    #[test]
    fn iri_components() {
        let iri = make_iri("http://www.lanl.gov/people#marko").unwrap();
        assert_eq!(iri.scheme(), "http");
        assert_eq!(iri.hierarchical_part(), "//www.lanl.gov/people");
        assert_eq!(iri.fragment(), Some("marko"));
        assert_eq!(iri.as_str(), "http://www.lanl.gov/people#marko");

        let minimal = make_iri("a:b").unwrap();
        assert_eq!(minimal.scheme(), "a");
        assert_eq!(minimal.hierarchical_part(), "b");
        assert_eq!(minimal.fragment(), None);
    }

    #[test]
    fn malformed_iris() {
        for bad in [
            "no-colon-here",
            ":abc",
            "1abc:x",
            "",
            "a b:c",
            "ht tp://x",
            "urn:a<b",
        ] {
            assert!(
                matches!(make_iri(bad), Err(TermError::MalformedIri { .. })),
                "{bad:?} should be rejected"
            );
        }
    }

    #[test]
    fn iri_equality_is_bytewise() {
        assert_ne!(
            make_iri("http://a/B").unwrap(),
            make_iri("http://a/b").unwrap()
        );
        assert_ne!(
            make_iri("http://a/%41").unwrap(),
            make_iri("http://a/A").unwrap()
        );
    }

    #[test]
    fn literal_canonicalization() {
        let int = xsd_integer();
        assert_eq!(make_literal("1", &int).unwrap().lexical(), "1");
        assert_eq!(make_literal("+007", &int).unwrap().lexical(), "7");
        assert_eq!(make_literal("-000", &int).unwrap().lexical(), "0");
        assert_eq!(make_literal("-0012", &int).unwrap().lexical(), "-12");
        assert!(make_literal("1.5", &int).is_err());
        assert!(make_literal("", &int).is_err());
        assert!(make_literal("+", &int).is_err());

        let dbl = Datatype::Double.iri();
        assert_eq!(make_literal("1.034", &dbl).unwrap().lexical(), "1.034E0");
        assert_eq!(make_literal("100", &dbl).unwrap().lexical(), "1.0E2");
        assert_eq!(make_literal("-0.5e-3", &dbl).unwrap().lexical(), "-5.0E-4");
        assert_eq!(make_literal("INF", &dbl).unwrap().lexical(), "INF");
        assert_eq!(make_literal("NaN", &dbl).unwrap().lexical(), "NaN");
        assert!(make_literal("inf", &dbl).is_err());
        assert!(make_literal("1e", &dbl).is_err());
        assert!(make_literal(".", &dbl).is_err());

        let boolean = Datatype::Boolean.iri();
        assert_eq!(make_literal("1", &boolean).unwrap().lexical(), "true");
        assert!(make_literal("TRUE", &boolean).is_err());

        let date = Datatype::Date.iri();
        assert_eq!(
            make_literal("2007-11-30", &date).unwrap().lexical(),
            "2007-11-30"
        );
        assert_eq!(
            make_literal("2004-02-29", &date).unwrap().lexical(),
            "2004-02-29"
        );
        assert!(make_literal("2007-13-45", &date).is_err());
        assert!(make_literal("1900-02-29", &date).is_err());
        assert!(make_literal("2007-1-30", &date).is_err());

        let s = Datatype::String.iri();
        assert_eq!(make_literal(" +007 ", &s).unwrap().lexical(), " +007 ");
    }

    #[test]
    fn unsupported_datatype() {
        let float = make_iri("http://www.w3.org/2001/XMLSchema#decimal").unwrap();
        assert!(matches!(
            make_literal("1", &float),
            Err(TermError::UnsupportedDatatype(_))
        ));
    }

    #[test]
    fn term_equality() {
        let x = Term::iri("urn:x").unwrap();
        assert!(term_equals(&x, &Term::iri("urn:x").unwrap()));
        let iri = Term::iri("urn:1").unwrap();
        let lit = Term::Literal(Literal::string("urn:1"));
        assert!(!term_equals(&iri, &lit));
        let one = Term::Literal(make_literal("1", &xsd_integer()).unwrap());
        let zero_one = Term::Literal(make_literal("01", &xsd_integer()).unwrap());
        // oracle: both lexicals parse to the same integer
        assert_eq!("1".parse::<i64>().unwrap(), "01".parse::<i64>().unwrap());
        assert!(term_equals(&one, &zero_one));
        let blank = Term::Blank(Blank::new("urn").unwrap());
        assert!(!term_equals(&blank, &Term::Literal(Literal::string("urn"))));
    }

    #[test]
    fn triple_rejects_literal_subject_and_non_iri_predicate() {
        let p = Term::iri("urn:p").unwrap();
        let lit = Term::Literal(Literal::integer(1));
        let err = Triple::new(lit.clone(), p.clone(), p.clone()).unwrap_err();
        assert!(matches!(
            err,
            TermError::Eq1Violation {
                position: Position::Subject,
                ..
            }
        ));
        let blank = Term::Blank(Blank::new("b").unwrap());
        assert!(Triple::new(p.clone(), blank.clone(), p.clone()).is_err());
        assert!(Triple::new(p.clone(), lit.clone(), p.clone()).is_err());
        let t = Triple::new(blank, p.clone(), lit).unwrap();
        assert!(t.is_well_formed());
    }

    #[test]
    fn fully_bound_pattern_matches_only_its_triple() {
        let a = Term::iri("urn:a").unwrap();
        let p = Term::iri("urn:p").unwrap();
        let t1 = Triple::new(a.clone(), p.clone(), a.clone()).unwrap();
        let t2 = Triple::new(a.clone(), p.clone(), p.clone()).unwrap();
        let pat = TriplePattern::exact(&t1);
        assert_eq!(pat.open_slots(), 0);
        assert!(pat.matches(&t1));
        assert!(!pat.matches(&t2));
        assert!(TriplePattern::any().matches(&t2));
    }
}
