use std::collections::{BTreeSet, HashMap};

use crate::store::{Graph, TermId};
use crate::term::Term;

/// Equivalence classes of terms inferred to denote the same resource.
///
/// Only merged terms are tracked; every other term is its own singleton
/// class. Each class is represented by its smallest interned id, so the
/// partition is tied to the dictionary of the graph it was built against.
#[derive(Clone, Debug, Default)]
pub struct SameAsPartition {
    class_of: HashMap<TermId, usize>,
    classes: Vec<Class>,
}

#[derive(Clone, Debug)]
struct Class {
    representative: TermId,
    members: Vec<TermId>,
}

impl SameAsPartition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn canonical_id(&self, id: TermId) -> TermId {
        self.class_of
            .get(&id)
            .map_or(id, |&c| self.classes[c].representative)
    }

    /// Members of `id`'s class, including `id` itself.
    pub fn members<'a>(&'a self, id: &'a TermId) -> &'a [TermId] {
        match self.class_of.get(id) {
            Some(&c) => &self.classes[c].members,
            None => std::slice::from_ref(id),
        }
    }

    pub fn same(&self, a: TermId, b: TermId) -> bool {
        self.canonical_id(a) == self.canonical_id(b)
    }

    /// Merges the classes of `a` and `b`. Returns false if they were already
    /// in the same class.
    pub fn union(&mut self, a: TermId, b: TermId) -> bool {
        let ca = self.class_index(a);
        let cb = self.class_index(b);
        if ca == cb {
            return false;
        }
        // relabel the smaller class
        let (keep, absorb) = if self.classes[ca].members.len() >= self.classes[cb].members.len() {
            (ca, cb)
        } else {
            (cb, ca)
        };
        let moved = std::mem::take(&mut self.classes[absorb].members);
        for &m in &moved {
            self.class_of.insert(m, keep);
        }
        let absorbed_rep = self.classes[absorb].representative;
        let class = &mut self.classes[keep];
        class.members.extend(moved);
        class.representative = class.representative.min(absorbed_rep);
        true
    }

    fn class_index(&mut self, id: TermId) -> usize {
        if let Some(&c) = self.class_of.get(&id) {
            return c;
        }
        self.classes.push(Class {
            representative: id,
            members: vec![id],
        });
        let c = self.classes.len() - 1;
        self.class_of.insert(id, c);
        c
    }

    /// Number of classes with more than one member.
    pub fn merged_class_count(&self) -> usize {
        self.classes.iter().filter(|c| c.members.len() > 1).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.merged_class_count() == 0
    }

    /// Representative term of `term`'s class; `term` itself if unmerged or
    /// unknown to the graph.
    pub fn canonical(&self, graph: &Graph, term: &Term) -> Term {
        match graph.id_of(term) {
            Some(id) => graph.term(self.canonical_id(id)).clone(),
            None => term.clone(),
        }
    }

    /// The non-singleton classes as sets of terms, independent of id order.
    pub fn classes(&self, graph: &Graph) -> BTreeSet<BTreeSet<Term>> {
        self.classes
            .iter()
            .filter(|c| c.members.len() > 1)
            .map(|c| c.members.iter().map(|&m| graph.term(m).clone()).collect())
            .collect()
    }
}

/// Free-function form of [`SameAsPartition::canonical`].
pub fn canonical(part: &SameAsPartition, graph: &Graph, term: &Term) -> Term {
    part.canonical(graph, term)
}
