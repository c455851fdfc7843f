//! Batch session behind the `semstore` command line.

use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::error::{ParseError, QueryError, ReasonError};
use crate::prefix::PrefixMap;
use crate::query::{evaluate_naive, evaluate_with, parse_query, BindingTable, Query};
use crate::reasoner::{
    extract_ontology, saturate, InferenceResult, Ontology, SameAsPartition, DEFAULT_MAX_ROUNDS,
};
use crate::store::{Graph, Rule};
use crate::syntax::{extend_prefix_map, parse_document, serialize_term, Document, Format};
use crate::vocab::{owl, rdf, rdfs, xsd};

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: unknown file type (expected .trp, .nt or .pfx)", .0.display())]
    UnknownFormat(PathBuf),
    #[error("{}: {error}", path.display())]
    Prefix { path: PathBuf, error: ParseError },
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error(transparent)]
    Reason(#[from] ReasonError),
    #[error("oracle disagrees with the indexed evaluator ({indexed} vs {naive} rows)")]
    OracleMismatch { indexed: usize, naive: usize },
}

/// Per-file outcome of a load.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FileReport {
    pub path: PathBuf,
    pub parsed: usize,
    pub inserted: usize,
    pub errors: Vec<ParseError>,
}

impl FileReport {
    pub fn duplicates(&self) -> usize {
        self.parsed - self.inserted
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub files: Vec<FileReport>,
}

impl LoadReport {
    pub fn error_count(&self) -> usize {
        self.files.iter().map(|f| f.errors.len()).sum()
    }

    pub fn has_errors(&self) -> bool {
        self.error_count() > 0
    }
}

impl fmt::Display for LoadReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for file in &self.files {
            writeln!(
                f,
                "{}: parsed {}, inserted {}, duplicates {}, errors {}",
                file.path.display(),
                file.parsed,
                file.inserted,
                file.duplicates(),
                file.errors.len()
            )?;
            for e in &file.errors {
                writeln!(f, "  {}:{}: {}", file.path.display(), e.line, e.kind)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stats {
    pub triples: usize,
    pub asserted: usize,
    pub derived: usize,
    pub subjects: usize,
    pub predicates: usize,
    pub objects: usize,
    pub indexes_consistent: bool,
}

impl fmt::Display for Stats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "triples: {}", self.triples)?;
        writeln!(f, "asserted: {}", self.asserted)?;
        writeln!(f, "derived: {}", self.derived)?;
        writeln!(f, "subjects: {}", self.subjects)?;
        writeln!(f, "predicates: {}", self.predicates)?;
        writeln!(f, "objects: {}", self.objects)?;
        writeln!(f, "index-consistent: {}", self.indexes_consistent)
    }
}

/// Output of [`Session::infer`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InferenceReport {
    pub result: InferenceResult,
}

impl InferenceReport {
    pub fn render(&self, prefixes: &PrefixMap) -> String {
        let r = &self.result;
        let mut out = String::new();
        let _ = writeln!(out, "derived: {}", r.derived.len());
        for rule in Rule::ALL {
            let _ = writeln!(out, "  {rule}: {}", r.derived_by(rule));
        }
        let _ = writeln!(out, "merges: {}", r.merges.len());
        for (a, b) in &r.merges {
            let _ = writeln!(
                out,
                "  {} = {}",
                serialize_term(a, prefixes),
                serialize_term(b, prefixes)
            );
        }
        let _ = writeln!(out, "inconsistencies: {}", r.inconsistencies.len());
        for i in &r.inconsistencies {
            let objects: Vec<String> = i
                .objects
                .iter()
                .map(|o| serialize_term(o, prefixes))
                .collect();
            let _ = writeln!(
                out,
                "  {} {} has {} objects, at most {} allowed: {}",
                serialize_term(&i.subject, prefixes),
                prefixes.shorten(&i.property),
                i.objects.len(),
                i.max,
                objects.join(", ")
            );
        }
        out
    }
}

/// Graph, prefixes and inference state for one invocation.
#[derive(Clone, Debug)]
pub struct Session {
    pub graph: Graph,
    pub prefixes: PrefixMap,
    pub partition: SameAsPartition,
    pub ontology: Ontology,
    inferred: bool,
}

impl Default for Session {
    fn default() -> Self {
        Self::new()
    }
}

/// Prefix map pre-populated with the rdf, rdfs, owl and xsd namespaces.
pub fn standard_prefixes() -> PrefixMap {
    let mut p = PrefixMap::new();
    for (label, ns) in [
        ("rdf", rdf::NS),
        ("rdfs", rdfs::NS),
        ("owl", owl::NS),
        ("xsd", xsd::NS),
    ] {
        p.insert(label, ns).expect("standard namespaces are valid");
    }
    p
}

fn read(path: &Path) -> Result<String, SessionError> {
    std::fs::read_to_string(path).map_err(|source| SessionError::Io {
        path: path.to_owned(),
        source,
    })
}

impl Session {
    pub fn new() -> Self {
        Session {
            graph: Graph::new(),
            prefixes: standard_prefixes(),
            partition: SameAsPartition::new(),
            ontology: Ontology::default(),
            inferred: false,
        }
    }

    pub fn has_inferred(&self) -> bool {
        self.inferred
    }

    pub fn load_prefix_text(&mut self, path: &Path, text: &str) -> Result<(), SessionError> {
        extend_prefix_map(&mut self.prefixes, text).map_err(|error| SessionError::Prefix {
            path: path.to_owned(),
            error,
        })
    }

    /// Loads prefix and triple files. Prefix files are applied first, in the
    /// order given; triple files are then parsed concurrently and inserted in
    /// the order given. Parse errors are collected in the report rather than
    /// aborting the load.
    pub fn load<P: AsRef<Path>>(&mut self, paths: &[P]) -> Result<LoadReport, SessionError> {
        let mut documents = Vec::new();
        for path in paths {
            let path = path.as_ref();
            let format = Format::from_path(path)
                .ok_or_else(|| SessionError::UnknownFormat(path.to_owned()))?;
            let text = read(path)?;
            if format == Format::Prefixes {
                self.load_prefix_text(path, &text)?;
            } else {
                documents.push((path.to_owned(), Document::new(text, format)));
            }
        }

        let prefixes = &self.prefixes;
        let parsed: Vec<_> = std::thread::scope(|scope| {
            let handles: Vec<_> = documents
                .iter()
                .map(|(_, doc)| scope.spawn(move || parse_document(doc, prefixes)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("parser thread panicked"))
                .collect()
        });

        let mut report = LoadReport::default();
        for ((path, _), parsed) in documents.into_iter().zip(parsed) {
            let inserted = parsed
                .triples
                .iter()
                .filter(|t| self.graph.insert(t))
                .count();
            report.files.push(FileReport {
                path,
                parsed: parsed.triples.len(),
                inserted,
                errors: parsed.errors,
            });
        }
        Ok(report)
    }

    pub fn parse_query(&self, text: &str) -> Result<Query, SessionError> {
        Ok(parse_query(text, &self.prefixes)?)
    }

    /// Evaluates a query, comparing through sameAs classes once `infer` ran.
    pub fn query(&self, q: &Query) -> BindingTable {
        evaluate_with(q, &self.graph, self.partition_if_any())
    }

    /// Evaluates with both the indexed and the brute-force evaluator and
    /// fails unless they agree.
    pub fn query_checked(
        &self,
        q: &Query,
        oracle_budget: u128,
    ) -> Result<BindingTable, SessionError> {
        let indexed = self.query(q);
        let naive = evaluate_naive(q, &self.graph, self.partition_if_any(), oracle_budget)?;
        if indexed.row_set() != naive.row_set() {
            return Err(SessionError::OracleMismatch {
                indexed: indexed.len(),
                naive: naive.len(),
            });
        }
        Ok(indexed)
    }

    fn partition_if_any(&self) -> Option<&SameAsPartition> {
        (self.inferred && !self.partition.is_trivial()).then_some(&self.partition)
    }

    /// Extracts the ontology and saturates the graph.
    pub fn infer(&mut self) -> Result<InferenceReport, SessionError> {
        self.ontology = extract_ontology(&self.graph)?;
        let result = saturate(
            &mut self.graph,
            &self.ontology,
            &mut self.partition,
            DEFAULT_MAX_ROUNDS,
        )?;
        self.inferred = true;
        Ok(InferenceReport { result })
    }

    pub fn stats(&self) -> Stats {
        let g = &self.graph;
        Stats {
            triples: g.len(),
            asserted: g.asserted_len(),
            derived: g.derived_len(),
            subjects: g.distinct_subjects(),
            predicates: g.distinct_predicates(),
            objects: g.distinct_objects(),
            indexes_consistent: g.check_index_consistency(),
        }
    }
}
