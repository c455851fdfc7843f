//! Python bindings: a `Store` class wrapping a load/query/infer session.
//!
//! Terms are passed as strings in angle-comma syntax: `lanl:marko`,
//! `<http://example.org/x>`, `"42"^^xsd:integer`, `_:b0`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use semstore_core::query::DEFAULT_ORACLE_BUDGET;
use semstore_core::session::Session;
use semstore_core::store::Rule;
use semstore_core::syntax::{parse_term, serialize_term, serialize_triple};
use semstore_core::term::{Term, Triple};

create_exception!(semstore, SemstoreError, PyException);

fn err(e: impl std::fmt::Display) -> PyErr {
    SemstoreError::new_err(e.to_string())
}

/// Per-file load outcome.
#[pyclass(frozen, get_all)]
struct LoadResult {
    path: String,
    parsed: usize,
    inserted: usize,
    duplicates: usize,
    errors: Vec<String>,
}

#[pymethods]
impl LoadResult {
    fn __repr__(&self) -> String {
        format!(
            "LoadResult(path={:?}, parsed={}, inserted={}, duplicates={}, errors={})",
            self.path,
            self.parsed,
            self.inserted,
            self.duplicates,
            self.errors.len()
        )
    }
}

/// Outcome of `Store.infer`.
#[pyclass(frozen, get_all)]
struct Inference {
    derived: usize,
    by_rule: BTreeMap<String, usize>,
    merges: Vec<(String, String)>,
    inconsistencies: Vec<String>,
}

#[pymethods]
impl Inference {
    fn __repr__(&self) -> String {
        format!(
            "Inference(derived={}, merges={}, inconsistencies={})",
            self.derived,
            self.merges.len(),
            self.inconsistencies.len()
        )
    }
}

/// An in-memory triple store with the rdf, rdfs, owl and xsd prefixes
/// registered.
#[pyclass]
struct Store {
    session: Session,
}

impl Store {
    fn term(&self, text: &str) -> PyResult<Term> {
        parse_term(text, &self.session.prefixes).map_err(err)
    }

    fn triple(&self, s: &str, p: &str, o: &str) -> PyResult<Triple> {
        Triple::new(self.term(s)?, self.term(p)?, self.term(o)?).map_err(err)
    }

    fn show(&self, t: &Term) -> String {
        serialize_term(t, &self.session.prefixes)
    }
}

#[pymethods]
impl Store {
    #[new]
    fn new() -> Self {
        Store {
            session: Session::new(),
        }
    }

    /// Registers `label` for `namespace`.
    fn add_prefix(&mut self, label: &str, namespace: &str) -> PyResult<()> {
        self.session
            .prefixes
            .insert(label, namespace)
            .map_err(err)?;
        Ok(())
    }

    /// Loads `.pfx`, `.trp` and `.nt` files. Parse errors are reported per
    /// file rather than raised.
    fn load(&mut self, paths: Vec<PathBuf>) -> PyResult<Vec<LoadResult>> {
        let report = self.session.load(&paths).map_err(err)?;
        Ok(report
            .files
            .iter()
            .map(|f| LoadResult {
                path: f.path.display().to_string(),
                parsed: f.parsed,
                inserted: f.inserted,
                duplicates: f.duplicates(),
                errors: f.errors.iter().map(|e| e.to_string()).collect(),
            })
            .collect())
    }

    /// Inserts a triple; returns False if it was already asserted.
    fn add(&mut self, s: &str, p: &str, o: &str) -> PyResult<bool> {
        let t = self.triple(s, p, o)?;
        Ok(self.session.graph.insert(&t))
    }

    fn remove(&mut self, s: &str, p: &str, o: &str) -> PyResult<bool> {
        let t = self.triple(s, p, o)?;
        Ok(self.session.graph.remove(&t))
    }

    fn contains(&self, s: &str, p: &str, o: &str) -> PyResult<bool> {
        Ok(self.session.graph.contains(&self.triple(s, p, o)?))
    }

    fn __len__(&self) -> usize {
        self.session.graph.len()
    }

    /// All triples as angle-comma lines, sorted.
    fn triples(&self) -> Vec<String> {
        let mut lines: Vec<String> = self
            .session
            .graph
            .iter()
            .map(|t| serialize_triple(&t.to_triple(), &self.session.prefixes))
            .collect();
        lines.sort();
        lines
    }

    /// Runs a SELECT query. Each row maps variable names (without `?`) to
    /// terms. With `check`, the brute-force evaluator must agree.
    #[pyo3(signature = (text, check = false))]
    fn query(&self, text: &str, check: bool) -> PyResult<Vec<BTreeMap<String, String>>> {
        let q = self.session.parse_query(text).map_err(err)?;
        let table = if check {
            self.session
                .query_checked(&q, DEFAULT_ORACLE_BUDGET)
                .map_err(err)?
        } else {
            self.session.query(&q)
        };
        Ok(table
            .rows()
            .iter()
            .map(|row| {
                table
                    .header()
                    .iter()
                    .zip(row)
                    .map(|(v, t)| (v.name().to_owned(), self.show(t)))
                    .collect()
            })
            .collect())
    }

    /// The query result rendered as an ASCII table or as TSV.
    #[pyo3(signature = (text, format = "table"))]
    fn render(&self, text: &str, format: &str) -> PyResult<String> {
        let q = self.session.parse_query(text).map_err(err)?;
        let table = self.session.query(&q);
        match format {
            "table" => Ok(table.render_table(&self.session.prefixes)),
            "tsv" => Ok(table.render_tsv(&self.session.prefixes)),
            other => Err(err(format!("unknown format {other:?}"))),
        }
    }

    /// Saturates the store under its own schema triples.
    fn infer(&mut self) -> PyResult<Inference> {
        let report = self.session.infer().map_err(err)?;
        let r = &report.result;
        Ok(Inference {
            derived: r.derived.len(),
            by_rule: Rule::ALL
                .iter()
                .map(|&rule| (rule.to_string(), r.derived_by(rule)))
                .collect(),
            merges: r
                .merges
                .iter()
                .map(|(a, b)| (self.show(a), self.show(b)))
                .collect(),
            inconsistencies: r
                .inconsistencies
                .iter()
                .map(|i| {
                    format!(
                        "{} {} exceeds {}",
                        self.show(&i.subject),
                        self.session.prefixes.shorten(&i.property),
                        i.max
                    )
                })
                .collect(),
        })
    }

    /// Representative of the term's sameAs class.
    fn canonical(&self, term: &str) -> PyResult<String> {
        let t = self.term(term)?;
        Ok(self.show(&self.session.partition.canonical(&self.session.graph, &t)))
    }

    fn stats(&self) -> BTreeMap<String, usize> {
        let s = self.session.stats();
        BTreeMap::from([
            ("triples".to_owned(), s.triples),
            ("asserted".to_owned(), s.asserted),
            ("derived".to_owned(), s.derived),
            ("subjects".to_owned(), s.subjects),
            ("predicates".to_owned(), s.predicates),
            ("objects".to_owned(), s.objects),
        ])
    }

    fn check_indexes(&self) -> bool {
        self.session.graph.check_index_consistency()
    }
}

#[pymodule]
fn semstore(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Store>()?;
    m.add_class::<LoadResult>()?;
    m.add_class::<Inference>()?;
    m.add("SemstoreError", m.py().get_type::<SemstoreError>())?;
    Ok(())
}
