//! In-memory triple store.
//!
//! Terms are interned to `u32` ids. Every triple is kept in three ordered
//! indexes, SPO, POS and OSP, so each combination of bound slots is a key
//! prefix of one of them:
//!
//! | bound   | index |
//! |---------|-------|
//! | -       | SPO (full scan) |
//! | S, SP, SPO | SPO |
//! | P, PO   | POS |
//! | O, SO   | OSP |

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::RangeInclusive;

use crate::term::{Blank, Iri, Slot, Term, Triple, TriplePattern};

pub type TermId = u32;

/// A triple of interned ids in subject, predicate, object order.
pub type IdTriple = [TermId; 3];

/// A pattern over interned ids; `None` is an open slot.
pub type IdPattern = [Option<TermId>; 3];

/// Bidirectional mapping between terms and dense ids.
#[derive(Clone, Debug, Default)]
pub struct Dictionary {
    terms: Vec<Term>,
    ids: HashMap<Term, TermId>,
}

impl Dictionary {
    pub fn intern(&mut self, term: &Term) -> TermId {
        if let Some(&id) = self.ids.get(term) {
            return id;
        }
        let id = TermId::try_from(self.terms.len()).expect("more than u32::MAX distinct terms");
        self.terms.push(term.clone());
        self.ids.insert(term.clone(), id);
        id
    }

    pub fn id(&self, term: &Term) -> Option<TermId> {
        self.ids.get(term).copied()
    }

    pub fn term(&self, id: TermId) -> &Term {
        &self.terms[id as usize]
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The inference rule that produced a materialized triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Domain,
    Range,
    Subsumption,
}

impl Rule {
    pub const ALL: [Rule; 3] = [Rule::Domain, Rule::Range, Rule::Subsumption];
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Domain => "domain",
            Rule::Range => "range",
            Rule::Subsumption => "subclass",
        })
    }
}

/// Which index serves a lookup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexKind {
    Spo,
    Pos,
    Osp,
}

impl IndexKind {
    /// Picks the index whose key order starts with the bound slots.
    pub fn for_bound(s: bool, p: bool, o: bool) -> Self {
        match (s, p, o) {
            (true, _, false) | (true, true, true) | (false, false, false) => IndexKind::Spo,
            (false, true, _) => IndexKind::Pos,
            (_, false, true) => IndexKind::Osp,
        }
    }

    fn triple_to_key(self, [s, p, o]: IdTriple) -> [TermId; 3] {
        match self {
            IndexKind::Spo => [s, p, o],
            IndexKind::Pos => [p, o, s],
            IndexKind::Osp => [o, s, p],
        }
    }

    fn key_to_triple(self, [a, b, c]: [TermId; 3]) -> IdTriple {
        match self {
            IndexKind::Spo => [a, b, c],
            IndexKind::Pos => [c, a, b],
            IndexKind::Osp => [b, c, a],
        }
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IndexKind::Spo => "SPO",
            IndexKind::Pos => "POS",
            IndexKind::Osp => "OSP",
        })
    }
}

/// Key range in `kind`'s order covering every triple that agrees with `pattern`.
fn key_range(kind: IndexKind, pattern: IdPattern) -> RangeInclusive<[TermId; 3]> {
    let [s, p, o] = pattern;
    let ordered = match kind {
        IndexKind::Spo => [s, p, o],
        IndexKind::Pos => [p, o, s],
        IndexKind::Osp => [o, s, p],
    };
    let mut lo = [0; 3];
    let mut hi = [TermId::MAX; 3];
    for (i, slot) in ordered.iter().enumerate() {
        match slot {
            Some(v) => {
                lo[i] = *v;
                hi[i] = *v;
            }
            None => break,
        }
    }
    lo..=hi
}

/// Borrowed view of a stored triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TripleRef<'a> {
    pub subject: &'a Term,
    pub predicate: &'a Iri,
    pub object: &'a Term,
}

impl TripleRef<'_> {
    pub fn to_triple(&self) -> Triple {
        Triple::new(
            self.subject.clone(),
            Term::Iri(self.predicate.clone()),
            self.object.clone(),
        )
        .expect("stored triples are well formed")
    }
}

/// Iterator over the id triples matching an [`IdPattern`], in index order.
pub struct IdMatches<'a> {
    range: std::collections::btree_set::Range<'a, [TermId; 3]>,
    kind: IndexKind,
}

impl Iterator for IdMatches<'_> {
    type Item = IdTriple;

    fn next(&mut self) -> Option<IdTriple> {
        self.range.next().map(|k| self.kind.key_to_triple(*k))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.range.size_hint()
    }
}

/// A set of triples with SPO, POS and OSP indexes.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    dict: Dictionary,
    spo: BTreeSet<[TermId; 3]>,
    pos: BTreeSet<[TermId; 3]>,
    osp: BTreeSet<[TermId; 3]>,
    derived: HashMap<IdTriple, Rule>,
    blank_counter: u64,
    stale: bool,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_triples<'a>(triples: impl IntoIterator<Item = &'a Triple>) -> Self {
        let mut g = Graph::new();
        for t in triples {
            g.insert(t);
        }
        g
    }

    pub fn dictionary(&self) -> &Dictionary {
        &self.dict
    }

    pub fn term(&self, id: TermId) -> &Term {
        self.dict.term(id)
    }

    pub fn id_of(&self, term: &Term) -> Option<TermId> {
        self.dict.id(term)
    }

    fn intern_triple(&mut self, t: &Triple) -> IdTriple {
        let s = self.dict.intern(t.subject());
        let p = self.dict.intern(&Term::Iri(t.predicate().clone()));
        let o = self.dict.intern(t.object());
        [s, p, o]
    }

    fn lookup_triple(&self, t: &Triple) -> Option<IdTriple> {
        let s = self.dict.id(t.subject())?;
        let p = self.dict.id(&Term::Iri(t.predicate().clone()))?;
        let o = self.dict.id(t.object())?;
        Some([s, p, o])
    }

    fn insert_ids(&mut self, ids: IdTriple) -> bool {
        if !self.spo.insert(IndexKind::Spo.triple_to_key(ids)) {
            return false;
        }
        self.pos.insert(IndexKind::Pos.triple_to_key(ids));
        self.osp.insert(IndexKind::Osp.triple_to_key(ids));
        true
    }

    /// Inserts an asserted triple. Returns true iff it was not already present.
    /// A triple that was only present as a derived one becomes asserted.
    pub fn insert(&mut self, t: &Triple) -> bool {
        let ids = self.intern_triple(t);
        let added = self.insert_ids(ids);
        if !added {
            self.derived.remove(&ids);
        }
        added
    }

    /// Inserts a triple produced by `rule`. Existing triples keep their tag.
    pub fn insert_derived(&mut self, t: &Triple, rule: Rule) -> bool {
        let ids = self.intern_triple(t);
        self.insert_derived_ids(ids, rule)
    }

    pub(crate) fn insert_derived_ids(&mut self, ids: IdTriple, rule: Rule) -> bool {
        let added = self.insert_ids(ids);
        if added {
            self.derived.insert(ids, rule);
        }
        added
    }

    /// Removes a triple. Returns true iff it was present. Removing an asserted
    /// triple marks any materialized inferences as stale.
    pub fn remove(&mut self, t: &Triple) -> bool {
        let Some(ids) = self.lookup_triple(t) else {
            return false;
        };
        if !self.spo.remove(&IndexKind::Spo.triple_to_key(ids)) {
            return false;
        }
        self.pos.remove(&IndexKind::Pos.triple_to_key(ids));
        self.osp.remove(&IndexKind::Osp.triple_to_key(ids));
        if self.derived.remove(&ids).is_none() && !self.derived.is_empty() {
            self.stale = true;
        }
        true
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.lookup_triple(t)
            .is_some_and(|ids| self.spo.contains(&ids))
    }

    pub(crate) fn contains_ids(&self, ids: IdTriple) -> bool {
        self.spo.contains(&ids)
    }

    pub fn len(&self) -> usize {
        self.spo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spo.is_empty()
    }

    pub fn derived_len(&self) -> usize {
        self.derived.len()
    }

    pub fn asserted_len(&self) -> usize {
        self.len() - self.derived.len()
    }

    /// The rule that produced `t`, or `None` for asserted or absent triples.
    pub fn derivation(&self, t: &Triple) -> Option<Rule> {
        self.lookup_triple(t)
            .and_then(|ids| self.derived.get(&ids).copied())
    }

    /// True once an asserted triple has been removed after inference ran.
    pub fn materialization_stale(&self) -> bool {
        self.stale
    }

    /// Drops every derived triple, leaving only asserted data.
    pub fn clear_derived(&mut self) {
        for ids in std::mem::take(&mut self.derived).into_keys() {
            self.spo.remove(&IndexKind::Spo.triple_to_key(ids));
            self.pos.remove(&IndexKind::Pos.triple_to_key(ids));
            self.osp.remove(&IndexKind::Osp.triple_to_key(ids));
        }
        self.stale = false;
    }

    /// Returns a blank node whose label is not used in this graph.
    pub fn fresh_blank(&mut self) -> Blank {
        loop {
            self.blank_counter += 1;
            let blank = Blank::new(&format!("b{}", self.blank_counter)).expect("valid label");
            if self.dict.id(&Term::Blank(blank.clone())).is_none() {
                self.dict.intern(&Term::Blank(blank.clone()));
                return blank;
            }
        }
    }

    /// Resolves a pattern's constants to ids. Returns `None` when some
    /// constant cannot match anything (unknown term, or a non-IRI predicate).
    pub fn resolve(&self, pattern: &TriplePattern) -> Option<IdPattern> {
        let slot = |s: &Slot| -> Option<Option<TermId>> {
            match s {
                Slot::Term(t) => self.dict.id(t).map(Some),
                _ => Some(None),
            }
        };
        if matches!(&pattern.predicate, Slot::Term(t) if t.as_iri().is_none()) {
            return None;
        }
        Some([
            slot(&pattern.subject)?,
            slot(&pattern.predicate)?,
            slot(&pattern.object)?,
        ])
    }

    pub fn match_ids(&self, pattern: IdPattern) -> IdMatches<'_> {
        let [s, p, o] = pattern;
        let kind = IndexKind::for_bound(s.is_some(), p.is_some(), o.is_some());
        let index = match kind {
            IndexKind::Spo => &self.spo,
            IndexKind::Pos => &self.pos,
            IndexKind::Osp => &self.osp,
        };
        IdMatches {
            range: index.range(key_range(kind, pattern)),
            kind,
        }
    }

    pub fn count_ids(&self, pattern: IdPattern) -> usize {
        match pattern {
            [Some(s), Some(p), Some(o)] => usize::from(self.spo.contains(&[s, p, o])),
            [None, None, None] => self.len(),
            _ => self.match_ids(pattern).count(),
        }
    }

    pub fn triple_ref(&self, [s, p, o]: IdTriple) -> TripleRef<'_> {
        TripleRef {
            subject: self.dict.term(s),
            predicate: self
                .dict
                .term(p)
                .as_iri()
                .expect("predicate ids always name IRIs"),
            object: self.dict.term(o),
        }
    }

    /// Triples unifying with `pattern`, in index order. Variables are treated
    /// as wildcards.
    pub fn matches<'a>(
        &'a self,
        pattern: &TriplePattern,
    ) -> impl Iterator<Item = TripleRef<'a>> + 'a {
        self.resolve(pattern)
            .map(|ids| self.match_ids(ids))
            .into_iter()
            .flatten()
            .map(move |ids| self.triple_ref(ids))
    }

    /// Number of triples unifying with `pattern`, without materializing them.
    pub fn count(&self, pattern: &TriplePattern) -> usize {
        self.resolve(pattern).map_or(0, |ids| self.count_ids(ids))
    }

    pub fn iter(&self) -> impl Iterator<Item = TripleRef<'_>> {
        self.spo.iter().map(move |k| self.triple_ref(*k))
    }

    pub fn iter_ids(&self) -> impl Iterator<Item = IdTriple> + '_ {
        self.spo.iter().copied()
    }

    /// True iff the three indexes enumerate the same triple set.
    pub fn check_index_consistency(&self) -> bool {
        self.spo.len() == self.pos.len()
            && self.spo.len() == self.osp.len()
            && self
                .pos
                .iter()
                .all(|k| self.spo.contains(&IndexKind::Pos.key_to_triple(*k)))
            && self
                .osp
                .iter()
                .all(|k| self.spo.contains(&IndexKind::Osp.key_to_triple(*k)))
            && self.derived.keys().all(|ids| self.spo.contains(ids))
    }

    fn distinct_leading(index: &BTreeSet<[TermId; 3]>) -> usize {
        let mut n = 0;
        let mut next = index.iter().next().copied();
        while let Some([lead, _, _]) = next {
            n += 1;
            next = match lead.checked_add(1) {
                Some(l) => index.range([l, 0, 0]..).next().copied(),
                None => None,
            };
        }
        n
    }

    pub fn distinct_subjects(&self) -> usize {
        Self::distinct_leading(&self.spo)
    }

    pub fn distinct_predicates(&self) -> usize {
        Self::distinct_leading(&self.pos)
    }

    pub fn distinct_objects(&self) -> usize {
        Self::distinct_leading(&self.osp)
    }

    #[cfg(test)]
    pub(crate) fn corrupt_index_for_test(&mut self) {
        if let Some(first) = self.pos.iter().next().copied() {
            self.pos.remove(&first);
        }
    }
}

/// Free-function form of [`Graph::insert`].
pub fn insert(g: &mut Graph, t: &Triple) -> bool {
    g.insert(t)
}

/// Free-function form of [`Graph::remove`].
pub fn remove(g: &mut Graph, t: &Triple) -> bool {
    g.remove(t)
}

/// Free-function form of [`Graph::count`].
pub fn count(g: &Graph, p: &TriplePattern) -> usize {
    g.count(p)
}

/// Free-function form of [`Graph::check_index_consistency`].
pub fn check_index_consistency(g: &Graph) -> bool {
    g.check_index_consistency()
}
