//! Forward-chaining inference.
//!
//! Three RDFS rules are materialized into the graph:
//!
//! * domain: `⟨s p o⟩, p rdfs:domain C ⟹ ⟨s rdf:type C⟩`
//! * range: `⟨s p o⟩, p rdfs:range C, o not a literal ⟹ ⟨o rdf:type C⟩`
//! * subsumption: `⟨x rdf:type C⟩, C ⊑ D ⟹ ⟨x rdf:type D⟩`
//!
//! Cardinality restrictions are attached directly to properties
//! (`⟨p owl:maxCardinality n⟩`). When a subject has more than `n` distinct
//! objects for `p`, object resources are merged into sameAs classes kept in a
//! [`SameAsPartition`]; stored triples are never rewritten. Literals are
//! never merged, so a collision involving one is reported as an
//! [`Inconsistency`].

mod sameas;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

pub use sameas::{canonical, SameAsPartition};

use crate::error::ReasonError;
use crate::store::{Graph, Rule, TermId};
use crate::term::{Datatype, Iri, Term, Triple};
use crate::vocab::{owl, rdf, rdfs};

/// Default bound on saturation rounds.
pub const DEFAULT_MAX_ROUNDS: usize = 10_000;

/// Schema knowledge extracted from a graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ontology {
    pub subclass_edges: BTreeSet<(Term, Term)>,
    pub domains: BTreeMap<Iri, BTreeSet<Term>>,
    pub ranges: BTreeMap<Iri, BTreeSet<Term>>,
    pub max_cardinality: BTreeMap<Iri, u64>,
}

impl Ontology {
    pub fn is_empty(&self) -> bool {
        self.subclass_edges.is_empty()
            && self.domains.is_empty()
            && self.ranges.is_empty()
            && self.max_cardinality.is_empty()
    }

    /// Every class reachable from `class` along subclass edges, including
    /// `class` itself. Cycles are fine.
    pub fn superclasses(&self, class: &Term) -> BTreeSet<Term> {
        let mut adjacency: HashMap<&Term, Vec<&Term>> = HashMap::new();
        for (sub, sup) in &self.subclass_edges {
            adjacency.entry(sub).or_default().push(sup);
        }
        let mut seen = BTreeSet::from([class.clone()]);
        let mut queue = VecDeque::from([class]);
        while let Some(c) = queue.pop_front() {
            for &sup in adjacency.get(c).into_iter().flatten() {
                if seen.insert(sup.clone()) {
                    queue.push_back(sup);
                }
            }
        }
        seen
    }

    pub fn is_subclass(&self, sub: &Term, sup: &Term) -> bool {
        self.superclasses(sub).contains(sup)
    }

    /// Map from each class with outgoing edges to its strict superclasses.
    fn superclass_closure(&self) -> BTreeMap<Term, BTreeSet<Term>> {
        self.subclass_edges
            .iter()
            .map(|(sub, _)| sub)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .map(|sub| {
                let mut sups = self.superclasses(sub);
                sups.remove(sub);
                (sub.clone(), sups)
            })
            .filter(|(_, sups)| !sups.is_empty())
            .collect()
    }
}

fn iri(text: &str) -> Iri {
    Iri::new(text).expect("vocabulary IRIs are valid")
}

fn rdf_type() -> Iri {
    iri(rdf::TYPE)
}

fn cardinality_value(object: &Term) -> Option<u64> {
    let lit = object.as_literal()?;
    if lit.datatype() != Datatype::Integer || lit.lexical().starts_with('-') {
        return None;
    }
    Some(lit.lexical().parse().unwrap_or(u64::MAX))
}

/// Collects subclass, domain, range and cardinality declarations.
/// `owl:cardinality` contributes its value as an upper bound; several bounds
/// on one property keep the smallest.
pub fn extract_ontology(g: &Graph) -> Result<Ontology, ReasonError> {
    let mut o = Ontology::default();
    for t in g.iter() {
        let subject_iri = t.subject.as_iri();
        match t.predicate.as_str() {
            rdfs::SUB_CLASS_OF => {
                o.subclass_edges
                    .insert((t.subject.clone(), t.object.clone()));
            }
            rdfs::DOMAIN => {
                if let Some(p) = subject_iri {
                    o.domains
                        .entry(p.clone())
                        .or_default()
                        .insert(t.object.clone());
                }
            }
            rdfs::RANGE => {
                if let Some(p) = subject_iri {
                    o.ranges
                        .entry(p.clone())
                        .or_default()
                        .insert(t.object.clone());
                }
            }
            owl::MAX_CARDINALITY | owl::CARDINALITY => {
                let n = cardinality_value(t.object).ok_or_else(|| {
                    ReasonError::MalformedRestriction {
                        property: format!("{:?}", t.subject),
                        value: format!("{:?}", t.object),
                    }
                })?;
                if let Some(p) = subject_iri {
                    let bound = o.max_cardinality.entry(p.clone()).or_insert(n);
                    *bound = (*bound).min(n);
                }
            }
            _ => {}
        }
    }
    Ok(o)
}

/// A subject whose objects for a bounded property could not be merged below
/// the bound.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Inconsistency {
    pub property: Iri,
    pub subject: Term,
    pub objects: Vec<Term>,
    pub max: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InferenceResult {
    /// Newly materialized triples with the rule that produced each.
    pub derived: Vec<(Triple, Rule)>,
    /// Merged pairs, each as the smallest term of the two classes joined.
    pub merges: Vec<(Term, Term)>,
    pub inconsistencies: Vec<Inconsistency>,
}

impl InferenceResult {
    pub fn derived_by(&self, rule: Rule) -> usize {
        self.derived.iter().filter(|(_, r)| *r == rule).count()
    }
}

/// Ontology terms resolved against a graph's dictionary.
struct Resolved {
    rdf_type: Option<TermId>,
    domains: Vec<(TermId, Vec<Term>)>,
    ranges: Vec<(TermId, Vec<Term>)>,
    supers: Vec<(TermId, Vec<Term>)>,
}

impl Resolved {
    fn new(g: &Graph, o: &Ontology) -> Self {
        let by_property = |m: &BTreeMap<Iri, BTreeSet<Term>>| -> Vec<(TermId, Vec<Term>)> {
            m.iter()
                .filter_map(|(p, classes)| {
                    let id = g.id_of(&Term::Iri(p.clone()))?;
                    Some((id, classes.iter().cloned().collect()))
                })
                .collect()
        };
        Resolved {
            rdf_type: g.id_of(&Term::Iri(rdf_type())),
            domains: by_property(&o.domains),
            ranges: by_property(&o.ranges),
            supers: o
                .superclass_closure()
                .into_iter()
                .filter_map(|(sub, sups)| Some((g.id_of(&sub)?, sups.into_iter().collect())))
                .collect(),
        }
    }
}

/// One round of the domain, range and subsumption rules over the current
/// graph. Returns only triples not already present, each tagged with the
/// first rule (in that order) that produced it.
pub fn infer_rdfs_step(g: &Graph, o: &Ontology) -> Vec<(Triple, Rule)> {
    let resolved = Resolved::new(g, o);
    let type_iri = rdf_type();
    let mut seen: HashSet<Triple> = HashSet::new();
    let mut out = Vec::new();
    let mut emit = |subject_id: TermId, class: &Term, rule: Rule| {
        if let (Some(t), Some(c)) = (resolved.rdf_type, g.id_of(class)) {
            if g.contains_ids([subject_id, t, c]) {
                return;
            }
        }
        let triple = Triple::new(
            g.term(subject_id).clone(),
            Term::Iri(type_iri.clone()),
            class.clone(),
        )
        .expect("subjects of stored triples are never literals");
        if seen.insert(triple.clone()) {
            out.push((triple, rule));
        }
    };

    for (p, classes) in &resolved.domains {
        for [s, _, _] in g.match_ids([None, Some(*p), None]) {
            for c in classes {
                emit(s, c, Rule::Domain);
            }
        }
    }
    for (p, classes) in &resolved.ranges {
        for [_, _, obj] in g.match_ids([None, Some(*p), None]) {
            if g.term(obj).is_literal() {
                continue;
            }
            for c in classes {
                emit(obj, c, Rule::Range);
            }
        }
    }
    if let Some(t) = resolved.rdf_type {
        for (class, sups) in &resolved.supers {
            for [x, _, _] in g.match_ids([None, Some(t), Some(*class)]) {
                for d in sups {
                    emit(x, d, Rule::Subsumption);
                }
            }
        }
    }
    out
}

/// Smallest term (by term order) in `id`'s class; independent of id order.
fn class_key(g: &Graph, part: &SameAsPartition, id: TermId) -> Term {
    part.members(&id)
        .iter()
        .map(|&m| g.term(m))
        .min()
        .expect("classes are non-empty")
        .clone()
}

/// One pass over every cardinality-bounded property.
///
/// Subjects are grouped by sameAs class and visited in term order. For each
/// group whose distinct object classes exceed the bound `n ≥ 1`, resource
/// classes (ordered by their smallest term) are merged into the first one,
/// last first, until the bound holds or only one resource class is left.
/// If the bound still does not hold, or `n = 0`, an inconsistency is
/// recorded. Merges are applied to `part` as they are made.
pub fn infer_cardinality_step(
    g: &Graph,
    o: &Ontology,
    part: &mut SameAsPartition,
) -> InferenceResult {
    let mut result = InferenceResult::default();
    for (property, &max) in &o.max_cardinality {
        let Some(p) = g.id_of(&Term::Iri(property.clone())) else {
            continue;
        };
        let mut groups: HashMap<TermId, Vec<TermId>> = HashMap::new();
        for [s, _, obj] in g.match_ids([None, Some(p), None]) {
            groups.entry(part.canonical_id(s)).or_default().push(obj);
        }
        let mut ordered: Vec<(Term, Vec<TermId>)> = groups
            .into_iter()
            .map(|(s, objs)| (class_key(g, part, s), objs))
            .collect();
        ordered.sort();

        for (subject, objects) in ordered {
            let classes = |part: &SameAsPartition| -> Vec<(Term, TermId)> {
                let mut seen = HashSet::new();
                let mut cs: Vec<(Term, TermId)> = objects
                    .iter()
                    .map(|&obj| part.canonical_id(obj))
                    .filter(|&c| seen.insert(c))
                    .map(|c| (class_key(g, part, c), c))
                    .collect();
                cs.sort();
                cs
            };
            let current = classes(part);
            if current.len() as u64 <= max {
                continue;
            }
            if max > 0 {
                let resources: Vec<&(Term, TermId)> = current
                    .iter()
                    .filter(|(key, _)| !key.is_literal())
                    .collect();
                let excess = current.len() - max as usize;
                let merges = excess.min(resources.len().saturating_sub(1));
                if let Some(&&(ref keep_key, keep)) = resources.first() {
                    for &&(ref key, id) in resources.iter().rev().take(merges) {
                        part.union(keep, id);
                        result.merges.push((keep_key.clone(), key.clone()));
                    }
                }
            }
            let after = classes(part);
            if after.len() as u64 > max {
                result.inconsistencies.push(Inconsistency {
                    property: property.clone(),
                    subject: subject.clone(),
                    objects: after.into_iter().map(|(key, _)| key).collect(),
                    max,
                });
            }
        }
    }
    result
}

/// Alternates RDFS rounds and cardinality passes until neither derives a
/// new triple nor merges a class, materializing derived triples into `g`
/// and merges into `part`.
///
/// Inconsistencies in the result are those present at the fixpoint.
/// Running again with the same graph and partition is a no-op.
pub fn saturate(
    g: &mut Graph,
    o: &Ontology,
    part: &mut SameAsPartition,
    max_rounds: usize,
) -> Result<InferenceResult, ReasonError> {
    let mut result = InferenceResult::default();
    for _ in 0..max_rounds {
        let derived = infer_rdfs_step(g, o);
        for (t, rule) in &derived {
            g.insert_derived(t, *rule);
        }
        let card = infer_cardinality_step(g, o, part);
        let quiet = derived.is_empty() && card.merges.is_empty();
        result.derived.extend(derived);
        result.merges.extend(card.merges);
        if quiet {
            result.inconsistencies = card.inconsistencies;
            return Ok(result);
        }
    }
    Err(ReasonError::IterationLimitExceeded(max_rounds))
}
