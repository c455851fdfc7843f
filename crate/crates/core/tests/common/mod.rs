#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use semstore_core::query::Query;
use semstore_core::term::{
    Blank, Datatype, Iri, Literal, Slot, Term, Triple, TriplePattern, Variable,
};
use semstore_core::vocab::{owl, rdf, rdfs};

pub const EX: &str = "http://example.org/";

pub fn iri(text: &str) -> Iri {
    Iri::new(text).unwrap()
}

pub fn ex(local: &str) -> Term {
    Term::Iri(iri(&format!("{EX}{local}")))
}

pub fn var(name: &str) -> Variable {
    Variable::new(name).unwrap()
}

pub fn triple(s: Term, p: &Term, o: Term) -> Triple {
    Triple::new(s, p.clone(), o).unwrap()
}

pub fn random_literal(rng: &mut impl Rng) -> Term {
    let lit = match rng.random_range(0..5) {
        0 => Literal::string(&random_text(rng)),
        1 => Literal::integer(rng.random_range(-1000..1000)),
        2 => Literal::typed(
            &format!("{:.3}", rng.random_range(-1e3..1e3)),
            Datatype::Double,
        )
        .unwrap(),
        3 => Literal::typed(
            if rng.random() { "true" } else { "false" },
            Datatype::Boolean,
        )
        .unwrap(),
        _ => Literal::typed(
            &format!(
                "{:04}-{:02}-{:02}",
                rng.random_range(1900..2100),
                rng.random_range(1..=12),
                rng.random_range(1..=28)
            ),
            Datatype::Date,
        )
        .unwrap(),
    };
    Term::Literal(lit)
}

fn random_text(rng: &mut impl Rng) -> String {
    const ALPHABET: &[char] = &[
        'a', 'Z', ' ', '"', '\\', '\n', '\t', ',', '<', '>', 'é', '#', ':',
    ];
    let len = rng.random_range(0..8);
    (0..len).map(|_| *ALPHABET.choose(rng).unwrap()).collect()
}

/// A resource from a small vocabulary so that random graphs share terms.
pub fn random_resource(rng: &mut impl Rng, pool: usize) -> Term {
    if rng.random_ratio(1, 6) {
        Term::Blank(Blank::new(&format!("b{}", rng.random_range(0..pool))).unwrap())
    } else {
        ex(&format!("r{}", rng.random_range(0..pool)))
    }
}

pub fn random_triple(rng: &mut impl Rng, pool: usize, predicates: usize) -> Triple {
    let s = random_resource(rng, pool);
    let p = ex(&format!("p{}", rng.random_range(0..predicates)));
    let o = if rng.random_ratio(1, 4) {
        random_literal(rng)
    } else {
        random_resource(rng, pool)
    };
    triple(s, &p, o)
}

pub fn random_graph_triples(
    rng: &mut impl Rng,
    max: usize,
    pool: usize,
    predicates: usize,
) -> Vec<Triple> {
    let n = rng.random_range(0..=max);
    (0..n)
        .map(|_| random_triple(rng, pool, predicates))
        .collect()
}

/// Random query of 1 to 4 patterns over at most three variables. Patterns
/// are cut from triples of `triples`; most queries replace terms by
/// variables consistently, so that the chosen triples form an answer.
pub fn random_query(
    rng: &mut impl Rng,
    triples: &[Triple],
    pool: usize,
    predicates: usize,
) -> Query {
    let vars = [var("a"), var("b"), var("c")];
    loop {
        let k = rng.random_range(1..=4);
        let consistent = rng.random_ratio(3, 4);
        let mut mapping: Vec<(Term, Variable)> = Vec::new();
        let mut bgp = Vec::with_capacity(k);
        for _ in 0..k {
            let seed = triples
                .choose(rng)
                .cloned()
                .unwrap_or_else(|| random_triple(rng, pool, predicates));
            let (s, p, o) = seed.into_parts();
            let mut slot = |t: Term| -> Slot {
                if rng.random_ratio(1, 10) {
                    return Slot::Any;
                }
                if !consistent {
                    return match rng.random_range(0..3) {
                        0 => Slot::Term(t),
                        _ => Slot::Var(vars.choose(rng).unwrap().clone()),
                    };
                }
                if let Some((_, v)) = mapping.iter().find(|(m, _)| *m == t) {
                    if rng.random_ratio(4, 5) {
                        return Slot::Var(v.clone());
                    }
                } else if mapping.len() < vars.len() && rng.random_ratio(1, 2) {
                    let v = vars[mapping.len()].clone();
                    mapping.push((t, v.clone()));
                    return Slot::Var(v);
                }
                Slot::Term(t)
            };
            bgp.push(TriplePattern::new(slot(s), slot(Term::Iri(p)), slot(o)));
        }
        let used: BTreeSet<Variable> = bgp.iter().flat_map(|p| p.variables().cloned()).collect();
        if used.is_empty() {
            continue;
        }
        let mut select: Vec<Variable> = used
            .into_iter()
            .filter(|_| rng.random_ratio(3, 4))
            .collect();
        if select.is_empty() {
            select.push(
                bgp.iter()
                    .flat_map(|p| p.variables())
                    .next()
                    .unwrap()
                    .clone(),
            );
        }
        select.shuffle(rng);
        return Query::new(select, bgp).unwrap();
    }
}

fn class(i: usize) -> Term {
    ex(&format!("C{i}"))
}

/// Random schema plus instance data. Cardinality bounds are placed on data
/// properties only.
pub fn random_ontology_instance(rng: &mut impl Rng, max_triples: usize) -> Vec<Triple> {
    let sub_class_of = Term::Iri(iri(rdfs::SUB_CLASS_OF));
    let domain = Term::Iri(iri(rdfs::DOMAIN));
    let range = Term::Iri(iri(rdfs::RANGE));
    let rdf_type = Term::Iri(iri(rdf::TYPE));
    let classes = rng.random_range(2..8);
    let properties = rng.random_range(1..5);
    let resources = rng.random_range(3..20);
    let property = |i: usize| ex(&format!("p{i}"));

    let mut out = Vec::new();
    for _ in 0..rng.random_range(0..classes * 2) {
        out.push(triple(
            class(rng.random_range(0..classes)),
            &sub_class_of,
            class(rng.random_range(0..classes)),
        ));
    }
    for p in 0..properties {
        if rng.random_ratio(1, 2) {
            out.push(triple(
                property(p),
                &domain,
                class(rng.random_range(0..classes)),
            ));
        }
        if rng.random_ratio(1, 2) {
            out.push(triple(
                property(p),
                &range,
                class(rng.random_range(0..classes)),
            ));
        }
        if rng.random_ratio(1, 3) {
            let predicate = if rng.random() {
                owl::MAX_CARDINALITY
            } else {
                owl::CARDINALITY
            };
            let n = rng.random_range(0..3);
            out.push(triple(
                property(p),
                &Term::Iri(iri(predicate)),
                Term::Literal(Literal::integer(n)),
            ));
        }
    }
    let data = rng.random_range(0..max_triples.saturating_sub(out.len()).max(1));
    for _ in 0..data {
        let s = ex(&format!("r{}", rng.random_range(0..resources)));
        let t = if rng.random_ratio(1, 4) {
            triple(s, &rdf_type, class(rng.random_range(0..classes)))
        } else {
            let o = if rng.random_ratio(1, 8) {
                Term::Literal(Literal::integer(rng.random_range(0..3)))
            } else {
                ex(&format!("r{}", rng.random_range(0..resources)))
            };
            triple(s, &property(rng.random_range(0..properties)), o)
        };
        out.push(t);
    }
    out.truncate(max_triples);
    out
}

/// Result of the brute-force inference oracle.
#[derive(Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub triples: BTreeSet<Triple>,
    pub classes: BTreeSet<BTreeSet<Term>>,
    pub merges: usize,
    /// (property, subject class key, object class keys, bound)
    pub inconsistencies: BTreeSet<(Iri, Term, Vec<Term>, u64)>,
}

/// Term-level union-find with the smallest term of a class as its key.
#[derive(Default)]
struct Classes {
    parent: BTreeMap<Term, Term>,
}

impl Classes {
    fn find(&self, t: &Term) -> Term {
        let mut cur = t.clone();
        while let Some(p) = self.parent.get(&cur) {
            cur = p.clone();
        }
        cur
    }

    fn union(&mut self, a: &Term, b: &Term) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (small, large) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent.insert(large, small);
        }
    }

    fn groups(&self) -> BTreeSet<BTreeSet<Term>> {
        let mut by_root: BTreeMap<Term, BTreeSet<Term>> = BTreeMap::new();
        for t in self.parent.keys() {
            by_root.entry(self.find(t)).or_default().insert(t.clone());
        }
        by_root
            .into_iter()
            .map(|(root, mut members)| {
                members.insert(root);
                members
            })
            .collect()
    }
}

/// Applies every rule to the whole triple set until nothing changes.
///
/// The schema is read straight off the current triple set; subclass
/// reasoning follows one edge per iteration instead of a precomputed
/// closure. Cardinality handling follows the documented merge policy:
/// subject groups in key order; object classes sorted by key; resource
/// classes merged into the first, last first, until the bound holds.
pub fn brute_force_saturate(input: &[Triple]) -> OracleResult {
    let mut g: BTreeSet<Triple> = input.iter().cloned().collect();
    let rdf_type = Term::Iri(iri(rdf::TYPE));
    let mut classes = Classes::default();
    let mut merges = 0;

    let bound_of = |t: &Triple| -> Option<(Iri, u64)> {
        let p = t.predicate().as_str();
        if p != owl::MAX_CARDINALITY && p != owl::CARDINALITY {
            return None;
        }
        let lit = t.object().as_literal()?;
        assert_eq!(lit.datatype(), Datatype::Integer);
        Some((
            t.subject().as_iri()?.clone(),
            lit.lexical().parse().unwrap(),
        ))
    };

    loop {
        let mut changed = false;
        let snapshot: Vec<Triple> = g.iter().cloned().collect();
        for schema in &snapshot {
            let p = schema.predicate().as_str();
            for t in &snapshot {
                let new = match p {
                    rdfs::DOMAIN if Some(t.predicate()) == schema.subject().as_iri() => Some(
                        triple(t.subject().clone(), &rdf_type, schema.object().clone()),
                    ),
                    rdfs::RANGE
                        if Some(t.predicate()) == schema.subject().as_iri()
                            && !t.object().is_literal() =>
                    {
                        Some(triple(
                            t.object().clone(),
                            &rdf_type,
                            schema.object().clone(),
                        ))
                    }
                    rdfs::SUB_CLASS_OF
                        if t.predicate().as_str() == rdf::TYPE
                            && t.object() == schema.subject() =>
                    {
                        Some(triple(
                            t.subject().clone(),
                            &rdf_type,
                            schema.object().clone(),
                        ))
                    }
                    _ => None,
                };
                if let Some(new) = new {
                    changed |= g.insert(new);
                }
            }
        }

        let mut bounds: BTreeMap<Iri, u64> = BTreeMap::new();
        for t in &g {
            if let Some((p, n)) = bound_of(t) {
                let b = bounds.entry(p).or_insert(n);
                *b = (*b).min(n);
            }
        }
        let mut inconsistencies = BTreeSet::new();
        for (property, &max) in &bounds {
            let mut groups: BTreeMap<Term, Vec<Term>> = BTreeMap::new();
            for t in g.iter().filter(|t| t.predicate() == property) {
                groups
                    .entry(classes.find(t.subject()))
                    .or_default()
                    .push(t.object().clone());
            }
            for (subject, objects) in groups {
                let keys = |classes: &Classes| -> Vec<Term> {
                    let set: BTreeSet<Term> = objects.iter().map(|o| classes.find(o)).collect();
                    set.into_iter().collect()
                };
                let current = keys(&classes);
                if current.len() as u64 <= max {
                    continue;
                }
                if max > 0 {
                    let resources: Vec<&Term> =
                        current.iter().filter(|k| !k.is_literal()).collect();
                    let n = (current.len() - max as usize).min(resources.len().saturating_sub(1));
                    for k in resources.iter().rev().take(n) {
                        classes.union(resources[0], k);
                        merges += 1;
                        changed = true;
                    }
                }
                let after = keys(&classes);
                if after.len() as u64 > max {
                    inconsistencies.insert((property.clone(), subject.clone(), after, max));
                }
            }
        }
        if !changed {
            return OracleResult {
                triples: g,
                classes: classes.groups(),
                merges,
                inconsistencies,
            };
        }
    }
}
