//! The connection relation on the support of a grading.
//!
//! A sequence `g_1, ..., g_n` of elements of `Σ ∪ Σ^-1` connects `g` to `h`
//! when `g_1 = g`, every proper prefix product `g_1 ⋯ g_i` (`i < n`) stays in
//! `Σ ∪ Σ^-1`, and the full product is `h` or `h^-1`. Connection is an
//! equivalence relation on `Σ`; its classes drive the ideal decomposition.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{GroupElement, GroupSignature};
use crate::ring::GradedRing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectionError {
    #[error("{0} is not in the support")]
    NotInSupport(GroupElement),
}

/// A connection `{g_1, ..., g_n}` from `from` to `to`. Stores the steps `g_i`,
/// not their prefix products.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionPath {
    pub from: GroupElement,
    pub to: GroupElement,
    pub elements: Vec<GroupElement>,
}

impl ConnectionPath {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// `Σ` together with `Σ ∪ Σ^-1`, the data the connection relation depends on.
#[derive(Debug, Clone)]
pub struct SupportGraph {
    sig: GroupSignature,
    support: BTreeSet<GroupElement>,
    extended: Vec<GroupElement>,
    extended_set: BTreeSet<GroupElement>,
}

impl SupportGraph {
    pub fn of(ring: &GradedRing) -> Self {
        Self::from_support(ring.signature().clone(), ring.support())
    }

    pub fn from_support(sig: GroupSignature, support: BTreeSet<GroupElement>) -> Self {
        let mut extended_set = support.clone();
        for g in &support {
            extended_set.insert(sig.invert(g).expect("support conforms"));
        }
        let extended = extended_set.iter().cloned().collect();
        SupportGraph { sig, support, extended, extended_set }
    }

    pub fn support(&self) -> &BTreeSet<GroupElement> {
        &self.support
    }

    pub fn signature(&self) -> &GroupSignature {
        &self.sig
    }

    fn compose(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.sig.compose(a, b).expect("support conforms")
    }

    fn inverse(&self, a: &GroupElement) -> GroupElement {
        self.sig.invert(a).expect("support conforms")
    }

    /// Breadth-first search over prefix products. Returns a shortest
    /// connection; ties go to the lexicographically smallest step.
    pub fn connected(&self, g: &GroupElement, h: &GroupElement) -> Result<Option<ConnectionPath>, ConnectionError> {
        for x in [g, h] {
            if !self.support.contains(x) {
                return Err(ConnectionError::NotInSupport(x.clone()));
            }
        }
        let targets = [h.clone(), self.inverse(h)];
        let path = |elements| ConnectionPath { from: g.clone(), to: h.clone(), elements };
        if targets.contains(g) {
            return Ok(Some(path(vec![g.clone()])));
        }
        let mut parent: BTreeMap<GroupElement, (GroupElement, GroupElement)> = BTreeMap::new();
        let mut visited = BTreeSet::from([g.clone()]);
        let mut queue = VecDeque::from([g.clone()]);
        while let Some(state) = queue.pop_front() {
            for step in &self.extended {
                let next = self.compose(&state, step);
                if targets.contains(&next) {
                    let mut steps = vec![step.clone()];
                    let mut cur = state.clone();
                    while let Some((prev, s)) = parent.get(&cur) {
                        steps.push(s.clone());
                        cur = prev.clone();
                    }
                    steps.push(g.clone());
                    steps.reverse();
                    return Ok(Some(path(steps)));
                }
                if self.extended_set.contains(&next) && visited.insert(next.clone()) {
                    parent.insert(next.clone(), (state.clone(), step.clone()));
                    queue.push_back(next);
                }
            }
        }
        Ok(None)
    }

    /// Re-derives the three defining conditions from the stored steps.
    pub fn verify(&self, path: &ConnectionPath) -> bool {
        let conforming = |x: &GroupElement| self.sig.conforms(x);
        if !conforming(&path.from) || !conforming(&path.to) || !path.elements.iter().all(conforming) {
            return false;
        }
        if !self.support.contains(&path.from) || !self.support.contains(&path.to) {
            return false;
        }
        let Some((first, _)) = path.elements.split_first() else {
            return false;
        };
        if *first != path.from || !path.elements.iter().all(|x| self.extended_set.contains(x)) {
            return false;
        }
        let mut product = self.sig.identity();
        let last = path.elements.len() - 1;
        for (i, x) in path.elements.iter().enumerate() {
            product = self.compose(&product, x);
            if i < last && !self.extended_set.contains(&product) {
                return false;
            }
        }
        product == path.to || product == self.inverse(&path.to)
    }

    pub fn classes(&self) -> ConnectionClasses {
        let mut unassigned: BTreeSet<GroupElement> = self.support.clone();
        let mut classes = Vec::new();
        while let Some(rep) = unassigned.pop_first() {
            let mut members = vec![rep.clone()];
            let mut certificates = vec![self.connected(&rep, &rep).unwrap().expect("reflexive")];
            let candidates: Vec<GroupElement> = unassigned.iter().cloned().collect();
            for h in candidates {
                if let Some(path) = self.connected(&rep, &h).expect("both in support") {
                    unassigned.remove(&h);
                    members.push(h);
                    certificates.push(path);
                }
            }
            classes.push(ConnectionClass { representative: rep, members, certificates });
        }
        ConnectionClasses { classes }
    }

    /// Some `g ∈ Σ` with `g^-1 ∉ Σ`, if any.
    pub fn asymmetry_witness(&self) -> Option<GroupElement> {
        self.support.iter().find(|g| !self.support.contains(&self.inverse(g))).cloned()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionClass {
    /// Smallest member in lexicographic order.
    pub representative: GroupElement,
    /// Sorted ascending, representative first.
    pub members: Vec<GroupElement>,
    /// `certificates[i]` connects the representative to `members[i]`.
    pub certificates: Vec<ConnectionPath>,
}

impl ConnectionClass {
    pub fn contains(&self, g: &GroupElement) -> bool {
        self.members.binary_search(g).is_ok()
    }
}

/// The partition `Σ/∼`, classes ordered by representative.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionClasses {
    pub classes: Vec<ConnectionClass>,
}

impl ConnectionClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, g: &GroupElement) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(g))
    }

    pub fn blocks(&self) -> Vec<BTreeSet<GroupElement>> {
        self.classes.iter().map(|c| c.members.iter().cloned().collect()).collect()
    }
}

pub fn connected(ring: &GradedRing, g: &GroupElement, h: &GroupElement) -> Result<Option<ConnectionPath>, ConnectionError> {
    SupportGraph::of(ring).connected(g, h)
}

pub fn verify_certificate(ring: &GradedRing, path: &ConnectionPath) -> bool {
    SupportGraph::of(ring).verify(path)
}

pub fn connection_classes(ring: &GradedRing) -> ConnectionClasses {
    SupportGraph::of(ring).classes()
}

/// `(Σ = Σ^-1, witness g ∈ Σ with g^-1 ∉ Σ)`
pub fn is_symmetric_support(ring: &GradedRing) -> (bool, Option<GroupElement>) {
    let witness = SupportGraph::of(ring).asymmetry_witness();
    (witness.is_none(), witness)
}
