//! Finitely generated abelian groups `Z^k x Z/m_1 x ... x Z/m_t`, written
//! multiplicatively. Elements are canonical exponent vectors.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("malformed element: expected {expected} coordinates, found {found}")]
    MalformedElement { expected: usize, found: usize },
    #[error("torsion modulus {0} is smaller than 2")]
    BadModulus(i64),
    #[error("torsion moduli must be sorted ascending, got {0:?}")]
    UnsortedTorsion(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSignature {
    free_rank: usize,
    torsion: Vec<i64>,
}

impl GroupSignature {
    pub fn new(free_rank: usize, torsion: Vec<i64>) -> Result<Self, GroupError> {
        if let Some(&m) = torsion.iter().find(|&&m| m < 2) {
            return Err(GroupError::BadModulus(m));
        }
        if torsion.windows(2).any(|w| w[0] > w[1]) {
            return Err(GroupError::UnsortedTorsion(torsion));
        }
        Ok(GroupSignature { free_rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        GroupSignature { free_rank: rank, torsion: Vec::new() }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    /// Number of exponent coordinates.
    pub fn len(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order for finite signatures.
    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().map(|&m| m as u64).product())
    }

    fn modulus(&self, coord: usize) -> Option<i64> {
        coord.checked_sub(self.free_rank).map(|t| self.torsion[t])
    }

    /// Builds an element from raw exponents, reducing torsion coordinates.
    pub fn element(&self, exponents: Vec<i64>) -> Result<GroupElement, GroupError> {
        self.check(&exponents)?;
        let mut e = exponents;
        for (c, x) in e.iter_mut().enumerate() {
            if let Some(m) = self.modulus(c) {
                *x = x.rem_euclid(m);
            }
        }
        Ok(GroupElement(e))
    }

    fn check(&self, exponents: &[i64]) -> Result<(), GroupError> {
        if exponents.len() != self.len() {
            return Err(GroupError::MalformedElement { expected: self.len(), found: exponents.len() });
        }
        Ok(())
    }

    pub fn conforms(&self, a: &GroupElement) -> bool {
        a.0.len() == self.len()
            && a.0.iter().enumerate().all(|(c, &x)| self.modulus(c).is_none_or(|m| (0..m).contains(&x)))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.len()])
    }

    pub fn compose(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(&a.0)?;
        self.check(&b.0)?;
        self.element(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn invert(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(&a.0)?;
        self.element(a.0.iter().map(|x| -x).collect())
    }

    /// All elements of a finite group, in lexicographic order.
    pub fn enumerate(&self) -> Option<Vec<GroupElement>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for &m in &self.torsion {
            out = out.into_iter().flat_map(|p| (0..m).map(move |x| [p.clone(), vec![x]].concat())).collect();
        }
        Some(out.into_iter().map(GroupElement).collect())
    }
}

/// Canonical exponent vector; `Ord` is lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<i64>);

impl GroupElement {
    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Wraps raw exponents without reduction. Use [`GroupSignature::element`] for checked construction.
    pub fn from_raw(exponents: Vec<i64>) -> Self {
        GroupElement(exponents)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}
