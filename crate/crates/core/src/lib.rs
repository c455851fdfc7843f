//! An embeddable in-memory RDF triple store.
//!
//! * [`term`] and [`prefix`]: IRIs, typed literals, blank nodes, triples,
//!   patterns and prefix maps.
//! * [`syntax`]: the angle-comma (`.trp`) and N-Triples (`.nt`) formats and
//!   prefix files (`.pfx`).
//! * [`store`]: a triple set with SPO, POS and OSP indexes over interned ids.
//! * [`query`]: `SELECT ... WHERE { ... }` basic graph pattern queries.
//! * [`reasoner`]: RDFS domain/range/subclass inference and
//!   cardinality-driven sameAs merging.
//! * [`session`]: the load/query/infer/stats workflow used by the CLI.

pub mod error;
pub mod prefix;
pub mod query;
pub mod reasoner;
pub mod session;
pub mod store;
pub mod syntax;
pub mod term;
pub mod vocab;

pub use error::{ParseError, QueryError, ReasonError, SyntaxErrorKind, TermError};
pub use prefix::{expand_curie, PrefixMap};
pub use query::{
    evaluate, evaluate_naive, evaluate_with, parse_query, plan, BindingTable, Plan, Query,
};
pub use reasoner::{
    canonical, extract_ontology, infer_cardinality_step, infer_rdfs_step, saturate,
    InferenceResult, Ontology, SameAsPartition,
};
pub use session::Session;
pub use store::{Graph, IndexKind, Rule};
pub use term::{
    make_iri, make_literal, term_equals, Blank, Datatype, Iri, Literal, Slot, Term, Triple,
    TriplePattern, Variable,
};
