//! Prefix maps and compact IRIs (`prefix:local`).

use std::collections::HashMap;

use crate::error::TermError;
use crate::term::Iri;

/// Ordered mapping from prefix label to namespace text.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrefixMap {
    entries: Vec<(String, String)>,
    by_label: HashMap<String, usize>,
}

pub(crate) fn is_valid_label(label: &str) -> bool {
    let mut chars = label.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

/// Characters a local part may contain and still be written as `prefix:local`.
fn is_compressible_local(local: &str) -> bool {
    local
        .chars()
        .all(|c| !c.is_whitespace() && !c.is_control() && !matches!(c, ',' | '<' | '>' | '"' | ':'))
}

impl PrefixMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a prefix. Returns `Ok(false)` if the label is already bound to the
    /// same namespace, and an error if it is bound to a different one.
    pub fn insert(&mut self, label: &str, namespace: &str) -> Result<bool, PrefixError> {
        if !is_valid_label(label) {
            return Err(PrefixError::InvalidLabel(label.to_owned()));
        }
        Iri::new(namespace).map_err(PrefixError::InvalidNamespace)?;
        if let Some(&i) = self.by_label.get(label) {
            return if self.entries[i].1 == namespace {
                Ok(false)
            } else {
                Err(PrefixError::Duplicate(label.to_owned()))
            };
        }
        self.by_label.insert(label.to_owned(), self.entries.len());
        self.entries.push((label.to_owned(), namespace.to_owned()));
        Ok(true)
    }

    pub fn get(&self, label: &str) -> Option<&str> {
        self.by_label
            .get(label)
            .map(|&i| self.entries[i].1.as_str())
    }

    pub fn contains_label(&self, label: &str) -> bool {
        self.by_label.contains_key(label)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(l, n)| (l.as_str(), n.as_str()))
    }

    /// Expands `label:local` against this map.
    pub fn expand(&self, prefixed_name: &str) -> Result<Iri, TermError> {
        let (label, local) =
            prefixed_name
                .split_once(':')
                .ok_or_else(|| TermError::MalformedIri {
                    text: prefixed_name.to_owned(),
                    reason: "compact IRI has no ':'",
                })?;
        let namespace = self
            .get(label)
            .ok_or_else(|| TermError::UnknownPrefix(label.to_owned()))?;
        Iri::new(format!("{namespace}{local}"))
    }

    /// Finds the longest namespace that prefixes `iri` and whose remainder can
    /// be written as a local part. Returns `(label, local)`.
    pub fn compress<'a>(&'a self, iri: &'a str) -> Option<(&'a str, &'a str)> {
        self.entries
            .iter()
            .filter(|(_, ns)| iri.starts_with(ns.as_str()))
            .filter(|(_, ns)| is_compressible_local(&iri[ns.len()..]))
            .max_by_key(|(_, ns)| ns.len())
            .map(|(label, ns)| (label.as_str(), &iri[ns.len()..]))
    }

    /// Renders an IRI as `label:local` when possible, otherwise its full text.
    pub fn shorten(&self, iri: &Iri) -> String {
        match self.compress(iri.as_str()) {
            Some((label, local)) => format!("{label}:{local}"),
            None => iri.as_str().to_owned(),
        }
    }
}

/// Expands a compact IRI `label:local` through `prefixes`.
pub fn expand_curie(prefixed_name: &str, prefixes: &PrefixMap) -> Result<Iri, TermError> {
    prefixes.expand(prefixed_name)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PrefixError {
    #[error("invalid prefix label {0:?}")]
    InvalidLabel(String),
    #[error("invalid namespace: {0}")]
    InvalidNamespace(TermError),
    #[error("duplicate prefix {0:?}")]
    Duplicate(String),
}
